"""Finite fields F_{p^n}, p odd, plus the small number-theory helpers.

Elements of F_{p^n} are coefficient vectors in F_p[x]/(f) where f is the
lexicographically smallest monic irreducible of degree n (coefficients
compared from the constant term up). The same element ordering is used by
:func:`enumerate` and by the numpy batch kernel: element ``i`` has base-p
digits of ``i`` as its coefficients, constant term first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
import builtins
from math import gcd, prod

import numpy as np
from sympy import factorint, isprime, totient

from .intpoly import FpPoly, is_irreducible, poly_divmod, poly_mul, poly_sub

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """Raised when a computation would visit more elements than allowed."""

    def __init__(self, cost, budget, what="enumeration"):
        self.cost = cost
        self.budget = budget
        super().__init__(f"{what} needs ~{cost:.3e} element visits, budget is {budget:.3e}")


def check_budget(cost, budget=None, what="enumeration"):
    budget = DEFAULT_BUDGET if budget is None else budget
    if cost > budget:
        raise BudgetExceeded(cost, budget, what)


@dataclass(frozen=True)
class FieldCtx:
    p: int
    n: int
    modulus: tuple  # monic, length n + 1, lowest degree first

    @property
    def order(self):
        return self.p**self.n

    def __call__(self, value):
        """Coerce an int or coefficient sequence to a field element."""
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.n - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.n:
            coeffs = poly_divmod(coeffs, list(self.modulus), self.p)[1]
        coeffs = list(coeffs) + [0] * (self.n - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def element(self, index):
        return FieldElement(self, tuple(index // self.p**i % self.p for i in range(self.n)))

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        """The class of x (equal to the constant -f(0) when n = 1)."""
        return self([0, 1])

    def __repr__(self):
        return f"GF({self.p}^{self.n})"


@lru_cache(maxsize=None)
def make_field(p, n=1):
    if p == 2 or not isprime(p):
        raise ValueError(f"characteristic must be an odd prime, got {p}")
    if n < 1:
        raise ValueError(f"extension degree must be positive, got {n}")
    for low in itertools.product(range(p), repeat=n):
        if n > 1 and low[0] == 0:
            continue
        modulus = low + (1,)
        if is_irreducible(FpPoly(p, modulus)):
            return FieldCtx(p, n, modulus)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldElement:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def _wrap(self, coeffs):
        return self.ctx(coeffs)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("elements of different fields")
            return other
        return self.ctx(other)

    def __add__(self, other):
        other = self._other(other)
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        ctx = self.ctx
        prod_ = poly_mul(list(self.coeffs), list(other.coeffs), ctx.p)
        return self._wrap(poly_divmod(prod_, list(ctx.modulus), ctx.p)[1])

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p, f = self.ctx.p, list(self.ctx.modulus)
        # extended Euclid: track s with s*self = r mod f
        r0, r1 = f, [c for c in self.coeffs]
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [], [1]
        while r1:
            q, r = poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
        # r0 is a nonzero constant
        inv = pow(r0[0], -1, p)
        return self._wrap([c * inv for c in s0])

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.ctx.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self):
        return not any(self.coeffs)

    def index(self):
        idx = 0
        for c in reversed(self.coeffs):
            idx = idx * self.ctx.p + c
        return idx

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx(other)
        return isinstance(other, FieldElement) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.n, self.coeffs))

    def __repr__(self):
        return f"{self.ctx!r}{list(self.coeffs)}"


def legendre(a, p):
    """Legendre symbol via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def quad_char(a):
    ctx = a.ctx
    if a.is_zero():
        return 0
    if ctx.n == 1:
        return legendre(a.coeffs[0], ctx.p)
    r = a ** ((ctx.order - 1) // 2)
    return 1 if r == ctx.one() else -1


@lru_cache(maxsize=4096)
def _totient_factors(m):
    return int(totient(m)), tuple(factorint(int(totient(m))))


def mult_order(a, m):
    if m < 2:
        raise ValueError("modulus must be at least 2")
    a %= m
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    order, primes = _totient_factors(m)
    for r in primes:
        while order % r == 0 and pow(a, order // r, m) == 1:
            order //= r
    return order


def pm_order(a, m):
    """Least k >= 1 with a^k = +-1 mod m."""
    if m < 3:
        raise ValueError("modulus must be at least 3")
    o = mult_order(a, m)
    if o % 2 == 0 and pow(a, o // 2, m) == m - 1:
        return o // 2
    return o


def primroots(p):
    """Set of primitive roots modulo the prime p."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return {1}
    return {a for a in range(1, p) if mult_order(a, p) == p - 1}


def crt(residues, moduli):
    residues, moduli = list(residues), list(moduli)
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli differ in length")
    for i, j in itertools.combinations(range(len(moduli)), 2):
        if gcd(moduli[i], moduli[j]) != 1:
            raise ValueError(f"moduli {moduli[i]} and {moduli[j]} are not coprime")
    total = prod(moduli)
    x = 0
    for r, m in zip(residues, moduli):
        rest = total // m
        x += r * rest * pow(rest, -1, m)
    return x % total


def enumerate(ctx, start=0, stop=None, budget=None):
    """Yield elements with indices in [start, stop), in index order."""
    stop = ctx.order if stop is None else min(stop, ctx.order)
    check_budget(max(0, stop - start), budget)
    for i in range(start, stop):
        yield ctx.element(i)


# -- numpy batch kernel ----------------------------------------------------
# Batches are int64 arrays of shape (n, N): row i holds the x^i coefficients
# of N elements, so every vector op touches contiguous memory.


def batch_from_indices(ctx, idx):
    rest = np.array(idx, dtype=np.int64)
    out = np.empty((ctx.n, rest.shape[0]), dtype=np.int64)
    for i in range(ctx.n):
        out[i] = rest % ctx.p
        rest //= ctx.p
    return out


def batch_to_indices(ctx, batch):
    idx = batch[ctx.n - 1].copy()
    for i in range(ctx.n - 2, -1, -1):
        idx *= ctx.p
        idx += batch[i]
    return idx


def batch_mul(ctx, a, b):
    p, n = ctx.p, ctx.n
    if n == 1:
        return a * b % p
    prod_ = np.zeros((2 * n - 1, a.shape[1]), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            prod_[i + j] += a[i] * b[j]
    for k in range(2 * n - 2, n - 1, -1):
        top = prod_[k] % p
        for j, f in builtins.enumerate(ctx.modulus[:n]):
            if f:
                prod_[k - n + j] -= f * top
    return prod_[:n] % p


def batch_poly_eval(ctx, coeffs, xs):
    """Evaluate an F_p-polynomial (lowest degree first) at every column of ``xs`` by Horner."""
    p = ctx.p
    coeffs = [int(c) % p for c in coeffs]
    acc = np.zeros_like(xs)
    acc[0] = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = batch_mul(ctx, acc, xs)
        if c:
            acc[0] = (acc[0] + c) % p
    return acc
