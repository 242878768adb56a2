"""L-polynomials from point counts, and Newton polygon slopes.

For a genus g curve over F_q with N_m points over F_{q^m}, the power sums
S_m = q^m + 1 - N_m of the Frobenius eigenvalues determine the numerator
P(T) = 1 + c_1 T + ... + c_{2g} T^{2g} of the zeta function: c_1..c_g from
Newton's identities, the rest from c_{2g-i} = q^{g-i} c_i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import factorint

from .curve import CurveSpec, count_points, genus
from .ff import check_budget


class InvalidCounts(ValueError):
    """Point counts that cannot come from a curve of the stated genus."""


def prime_power(q):
    """Return (p, n) with q = p^n."""
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, n),) = f.items()
    return int(p), int(n)


def valuation(x, p):
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class LPoly:
    q: int
    g: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != 2 * self.g + 1 or self.coeffs[0] != 1:
            raise ValueError("an L-polynomial has 2g + 1 coefficients and constant term 1")

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def satisfies_functional_equation(self):
        c, q, g = self.coeffs, self.q, self.g
        return all(c[2 * g - i] == q ** (g - i) * c[i] for i in range(g + 1))

    def to_json(self):
        return {"q": str(self.q), "g": self.g, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["q"]), int(obj["g"]), tuple(int(c) for c in obj["coeffs"]))


@dataclass
class SlopeMultiset:
    """Exact rational slopes with positive integer lengths."""

    lengths: dict = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, pairs):
        out = {}
        for s, n in pairs:
            s = Fraction(s)
            out[s] = out.get(s, 0) + n
        return cls(dict(sorted(out.items())))

    @property
    def total_length(self):
        return sum(self.lengths.values())

    def slopes(self):
        return set(self.lengths)

    def is_supersingular(self):
        return self.slopes() == {Fraction(1, 2)}

    def is_symmetric(self):
        return all(self.lengths.get(1 - s) == n for s, n in self.lengths.items())

    def to_json(self):
        return {f"{s.numerator}/{s.denominator}": n for s, n in sorted(self.lengths.items())}

    def __str__(self):
        return "{" + ", ".join(f"{k}: {v}" for k, v in self.to_json().items()) + "}"


def _power_sums(counts, q):
    return [q**m + 1 - n for m, n in enumerate(counts, start=1)]


def lpoly_from_counts(counts, q, g):
    counts = [int(n) for n in counts]
    if len(counts) != g:
        raise InvalidCounts(f"need exactly g = {g} counts, got {len(counts)}")
    sums = _power_sums(counts, q)
    for m, s in enumerate(sums, start=1):
        if s * s > 4 * g * g * q**m:
            raise InvalidCounts(f"N_{m} = {counts[m - 1]} violates the Weil bound")
    c = [1]
    for k in range(1, g + 1):
        num = sums[k - 1] + sum(c[i] * sums[k - i - 1] for i in range(1, k))
        if num % k:
            raise InvalidCounts(f"Newton identity at k = {k} is not integral")
        c.append(-num // k)
    for i in range(g - 1, -1, -1):
        c.append(q ** (g - i) * c[i])
    return LPoly(q, g, tuple(c))


def power_sum(P, m):
    c = list(P.coeffs)
    sums = []
    for k in range(1, m + 1):
        ck = c[k] if k < len(c) else 0
        s = -k * ck - sum(sums[i - 1] * (c[k - i] if k - i < len(c) else 0) for i in range(1, k))
        sums.append(s)
    return sums[m - 1]


def counts_from_lpoly(P, m):
    if m < 1:
        raise ValueError("m must be positive")
    return P.q**m + 1 - power_sum(P, m)


def _lower_hull(points):
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_slopes(P):
    p, n = prime_power(P.q)
    pts = [(j, Fraction(valuation(c, p), n)) for j, c in enumerate(P.coeffs) if c != 0]
    hull = _lower_hull(pts)
    pairs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        pairs.append(((y2 - y1) / (x2 - x1), x2 - x1))
    return SlopeMultiset.from_pairs(pairs)


def is_maximal_from_lpoly(P, e):
    if e < 2 or e % 2:
        raise ValueError("maximality exponent must be a positive even integer")
    return counts_from_lpoly(P, e) == P.q**e + 1 + 2 * P.g * P.q ** (e // 2)


def curve_counts(d, p, n, m_max, *, workers=1, budget=None):
    """[#H_d(F_{p^(n m)}) for m = 1..m_max]."""
    return [count_points(CurveSpec(d, p, n * m), workers=workers, budget=budget) for m in range(1, m_max + 1)]


def lpoly_of_curve(d, p, n=1, *, workers=1, budget=None):
    g = genus(d)
    if g == 0:
        return LPoly(p**n, 0, (1,))
    check_budget(p ** (n * g) * d, budget, what=f"L-polynomial of H_{d} over F_{p}^{n}")
    return lpoly_from_counts(curve_counts(d, p, n, g, workers=workers, budget=budget), p**n, g)


def factor_display(P):
    """Write P as a product of (p^a x^b + 1) factors when it has that shape, else None."""
    p, _ = prime_power(P.q)
    rest = list(P.coeffs)
    factors = []
    while len(rest) > 1:
        b = next(j for j in range(1, len(rest)) if rest[j])
        c = rest[b]
        if c <= 0:
            return None
        a = valuation(c, p)
        if p**a != c:
            return None
        quot = _divide_binomial(rest, b, c)
        if quot is None:
            return None
        factors.append((a, b))
        rest = quot
    if rest != [1]:
        return None
    return "".join(_binomial_str(a, b) for a, b in factors) if factors else "1"


def _divide_binomial(coeffs, b, c):
    """Exact quotient of coeffs by 1 + c x^b, or None."""
    rem = list(coeffs)
    deg = len(rem) - 1
    if deg < b:
        return None
    quot = [0] * (deg - b + 1)
    for k in range(deg - b + 1):
        quot[k] = rem[k]
        rem[k] -= quot[k]
        rem[k + b] -= c * quot[k]
    if any(rem):
        return None
    while len(quot) > 1 and quot[-1] == 0:
        quot.pop()
    return quot


def _binomial_str(a, b):
    pp = "" if a == 0 else ("p " if a == 1 else f"p^{a} ")
    xx = "x" if b == 1 else f"x^{b}"
    return f"({pp}{xx} + 1)"
