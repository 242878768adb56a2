"""Maximality of the hyperelliptic curves y^2 = phi_d(x), phi_d a Chebyshev polynomial."""

from .classify import Status, Verdict, classify, classify_odd, classify_prime, descent_certificate
from .cmgal import decomposition_group, slopes2_multiset, slopes_multiset
from .curve import CurveSpec, count_points, genus, is_maximal_by_count, is_permutation
from .ff import BudgetExceeded, make_field
from .intpoly import chebyshev
from .zeta import LPoly, SlopeMultiset, counts_from_lpoly, lpoly_from_counts, newton_slopes

__version__ = "0.1.0"
