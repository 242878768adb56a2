"""CM types, decomposition groups and slope predictions.

The Galois group of Q(i, zeta_d + zeta_d^-1) is (Z/4)^x x (Z/d)^x/(+-1).
Elements are pairs (sign, rep) with rep the least positive representative
of {a, -a} mod d. For the Jacobian pieces of H_d the CM type consists of the
pairs ((-1)^(m+1), m), 1 <= m <= (d-1)/2, gcd(m, d) = 1, so (sign, rep) lies
in it exactly when sign == (-1)^(rep+1).

At a prime p not dividing 2d the Newton slopes of Frobenius are
#(Phi cap D_p tau) / #D_p over the cosets D_p tau, each coset contributing
length #D_p.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple

from sympy import isprime, totient

from .ff import crt, mult_order, pm_order, primroots
from .zeta import SlopeMultiset

HALF = Fraction(1, 2)


def mg(m, n):
    r = m % n
    return min(r, n - r)


class GalEl(NamedTuple):
    sign: int
    rep: int


def group_mul(a, b, d):
    return GalEl(a.sign * b.sign, mg(a.rep * b.rep, d))


def galois_group(d):
    reps = [m for m in range(1, d // 2 + 1) if gcd(m, d) == 1]
    return [GalEl(s, r) for s in (1, -1) for r in reps]


def cm_type(d):
    return frozenset(GalEl((-1) ** (m + 1), m) for m in range(1, (d - 1) // 2 + 1) if gcd(m, d) == 1)


def in_cm_type(el):
    return el.sign == (1 if el.rep % 2 else -1)


def frobenius(d, p):
    """The Frobenius class ((-1)^((p-1)/2), <<p>>) for p coprime to 2d."""
    if gcd(p, 2 * d) != 1:
        raise ValueError(f"p = {p} must be coprime to 2d = {2 * d}")
    return GalEl(1 if p % 4 == 1 else -1, mg(p, d))


def decomposition_group(d, p):
    """Cyclic closure of the Frobenius class, identity first."""
    gen = frobenius(d, p)
    elems = [GalEl(1, 1)]
    cur = gen
    while cur != elems[0]:
        elems.append(cur)
        cur = group_mul(cur, gen, d)
    return frozenset(elems)


def _coset_slopes(d, dp):
    """Slope multiset of the CM piece of level d for the subgroup dp."""
    seen = set()
    size = len(dp)
    pairs = []
    for tau in galois_group(d):
        if tau in seen:
            continue
        coset = {group_mul(x, tau, d) for x in dp}
        seen |= coset
        hits = sum(1 for x in coset if in_cm_type(x))
        pairs.append((Fraction(hits, size), size))
    return SlopeMultiset.from_pairs(pairs)


def _check_odd(d):
    if d < 3 or d % 2 == 0:
        raise ValueError(f"d must be odd and at least 3, got {d}")


def slopes_multiset(ell, p):
    """CM-predicted Newton slopes of the p-Frobenius on J(H_ell)."""
    if not isprime(ell) or ell == 2:
        raise ValueError(f"ell must be an odd prime, got {ell}")
    return _coset_slopes(ell, decomposition_group(ell, p))


def slopes_set(ell, p):
    return slopes_multiset(ell, p).slopes()


def slopes2_multiset(d, p):
    """Slopes for the new CM piece of J(H_d) (the varieties A or B for d = l1 l2 or l^n)."""
    _check_odd(d)
    return _coset_slopes(d, decomposition_group(d, p))


def slopes2_set(d, p):
    return slopes2_multiset(d, p).slopes()


def truncated_slopes(d, p):
    """Literal transcription of the classic set-valued routine.

    D_p is built from the first Modorder(p, d) powers of the Frobenius, which
    is the true subgroup only when p = 1 mod 4; for p = 3 mod 4 with odd
    multiplicative order it differs from :func:`decomposition_group`.
    """
    enns = [m for m in range(1, (d - 1) // 2 + 1) if gcd(m, d) == 1]
    phi = {(((-1) ** (m + 1)), mg(m, d)) for m in enns}
    order = mult_order(p, d)
    dp = {((-1) ** (((p - 1) // 2) * k), mg(pow(p, k, d), d)) for k in range(1, order + 1)}
    out = set()
    for m in enns:
        plus = {(x[0], mg(m * x[1], d)) for x in dp}
        out.add(Fraction(len(plus & phi), len(dp)))
        minus = {(-x[0], mg(m * x[1], d)) for x in dp}
        out.add(Fraction(len(minus & phi), len(dp)))
    return out


def check_pair(ell1, ell2):
    """Classes p mod 4 ell1 ell2 (p = 1 mod 4, primitive mod both) where the A-piece is supersingular."""
    if ell1 == ell2 or not (isprime(ell1) and isprime(ell2)) or 2 in (ell1, ell2):
        raise ValueError("need two distinct odd primes")
    d = ell1 * ell2
    classes = {crt([a, b, 1], [ell1, ell2, 4]) for a in primroots(ell1) for b in primroots(ell2)}
    # slopes depend only on the subgroup <+-p>, which is cyclic of order pm_order(p, d)
    # only when it is generated; cache on the element set itself
    cache = {}
    found = set()
    for p in sorted(classes):
        dp = decomposition_group(d, p)
        if dp not in cache:
            cache[dp] = _coset_slopes(d, dp).is_supersingular()
        if cache[dp]:
            found.add(p)
    return found


def prime_power_group_order(d):
    return int(totient(d)) // 2


def supersingular_by_pm_order(d, p, _cache={}):
    """Supersingularity of the B-piece for d = l^n and p = 1 mod 4, cached per subgroup order.

    For p = 1 mod 4 the decomposition group is {1} x <+-p>, and (Z/l^n)^x/(+-1) is
    cyclic, so the subgroup is determined by its order.
    """
    k = pm_order(p, d)
    key = (d, k)
    if key not in _cache:
        _cache[key] = _coset_slopes(d, decomposition_group(d, p)).is_supersingular()
    return _cache[key]
