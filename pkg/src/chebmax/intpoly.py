"""Dense integer and prime-field polynomials.

Polynomials are stored lowest degree first. ``ZPoly`` holds arbitrary
precision integer coefficients (Chebyshev polynomials outgrow 64 bits for
degrees around 70); ``FpPoly`` holds residues modulo an odd prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from sympy import factorint


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class ZPoly:
    """Polynomial with integer coefficients, lowest degree first."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return ZPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self):
        return ZPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ZPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return ZPoly(out)

    __rmul__ = __mul__

    def derivative(self):
        return ZPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner):
        """Return ``self(inner(x))``."""
        acc = ZPoly(())
        for c in reversed(self.coeffs):
            acc = acc * inner + ZPoly([c])
        return acc

    def __str__(self):
        return format_poly(self.coeffs)


@dataclass(frozen=True)
class FpPoly:
    """Polynomial over F_p, coefficients reduced into [0, p)."""

    p: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) % self.p for c in self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __str__(self):
        return format_poly(self.coeffs)


def format_poly(coeffs, var="x", descending=True):
    """Render coefficients as ``x^5 - 5*x^3 + 5*x``."""
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        terms.append((c < 0, body))
    if not terms:
        return "0"
    if descending:
        terms.reverse()
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


@lru_cache(maxsize=None)
def chebyshev(d):
    """The Chebyshev polynomial with Phi_d(x + 1/x) = x^d + x^-d."""
    if d < 1:
        raise ValueError(f"Chebyshev degree must be positive, got {d}")
    prev, cur = ZPoly([0, 1]), ZPoly([-2, 0, 1])
    if d == 1:
        return prev
    x = ZPoly([0, 1])
    for _ in range(d - 2):
        prev, cur = cur, x * cur - prev
    return cur


def eval_at_zero(d):
    if d < 1:
        raise ValueError("d must be positive")
    if d % 2:
        return 0
    return -2 if d % 4 == 2 else 2


def derivative_at_zero(d):
    if d < 1:
        raise ValueError("d must be positive")
    if d % 2 == 0:
        return 0
    return d if d % 4 == 1 else -d


def odd_part(ell):
    """psi with x * psi(x) = Phi_ell(x), for odd ell."""
    if ell < 1 or ell % 2 == 0:
        raise ValueError(f"odd_part needs an odd degree, got {ell}")
    coeffs = chebyshev(ell).coeffs
    assert coeffs[0] == 0
    return ZPoly(coeffs[1:])


def reduce_mod(poly, p):
    return FpPoly(p, poly.coeffs)


def is_separable(d, q):
    return d == 1 or gcd(q, 2 * d) == 1


# -- arithmetic on coefficient lists over F_p ------------------------------


def _norm(a, p):
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    return _norm([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _norm(out, p)


def poly_divmod(a, b, p):
    b = _norm(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _norm(a, p)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    if len(a) <= db:
        return [], a
    quot = [0] * (len(a) - db)
    rem = list(a)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k] * inv % p
        if c:
            quot[k - db] = c
            for j in range(db + 1):
                rem[k - db + j] -= c * b[j]
    return _norm(quot, p), _norm(rem[:db], p)


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, p):
    a, b = _norm(a, p), _norm(b, p)
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def poly_powmod(base, e, mod, p):
    result = [1]
    base = poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = poly_mod(poly_mul(base, base, p), mod, p)
    return result


def is_irreducible(f):
    """Rabin's test: x^(p^n) = x mod f and gcd(x^(p^(n/t)) - x, f) = 1 for primes t | n."""
    p, coeffs = f.p, list(f.coeffs)
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("irreducibility is undefined for constant polynomials")
    if n == 1:
        return True
    x = [0, 1]
    # frob[k] = x^(p^k) mod f
    frob = [poly_mod(x, coeffs, p)]
    for _ in range(n):
        frob.append(poly_powmod(frob[-1], p, coeffs, p))
    if poly_sub(frob[n], x, p):
        return False
    for t in factorint(n):
        g = poly_gcd(poly_sub(frob[n // t], x, p), coeffs, p)
        if len(g) > 1:
            return False
    return True
