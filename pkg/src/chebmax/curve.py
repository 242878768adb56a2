"""The hyperelliptic curve H_d : y^2 = phi_d(x) over F_{p^n}.

Point counts are exact character sums evaluated with the numpy batch kernel
from :mod:`chebmax.ff`. The x-range is cut into contiguous index chunks;
each chunk returns an integer partial sum, so any grouping of chunks over
any number of workers gives the same total.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np
from sympy import isprime

from . import ff
from .intpoly import chebyshev

CHUNK = 1 << 16


def genus(d):
    if d < 1:
        raise ValueError("d must be positive")
    return (d - 1) // 2


@dataclass(frozen=True)
class CurveSpec:
    d: int
    p: int
    n: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"d must be positive, got {self.d}")
        if self.p == 2 or not isprime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if gcd(self.p, 2 * self.d) != 1:
            raise ValueError(f"phi_{self.d} is not separable in characteristic {self.p}")

    @property
    def q(self):
        return self.p**self.n

    @property
    def genus(self):
        return genus(self.d)

    @property
    def points_at_infinity(self):
        return 1 if self.d % 2 else 2

    @property
    def cost(self):
        return self.q * self.d


def _square_table(ctx, workers):
    """Boolean table over element indices: True at nonzero squares."""
    q = ctx.order
    table = np.zeros(q, dtype=bool)
    if ctx.n == 1:
        xs = np.arange(q, dtype=np.int64)
        table[xs * xs % ctx.p] = True
    else:
        def mark(start):
            xs = ff.batch_from_indices(ctx, np.arange(start, min(start + CHUNK, q)))
            table[ff.batch_to_indices(ctx, ff.batch_mul(ctx, xs, xs))] = True

        _run(mark, range(0, q, CHUNK), workers)
    table[0] = False
    return table


def _run(fn, items, workers):
    if workers <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _chunk_sum(spec, ctx, table, coeffs, start, stop):
    xs = ff.batch_from_indices(ctx, np.arange(start, stop, dtype=np.int64))
    vals = ff.batch_to_indices(ctx, ff.batch_poly_eval(ctx, coeffs, xs))
    nonzero = vals != 0
    squares = int(np.count_nonzero(table[vals]))
    return 2 * squares - int(np.count_nonzero(nonzero))


def character_sum(spec, start=0, stop=None, *, workers=1, table=None):
    """Sum of chi(phi_d(x)) over x with element index in [start, stop)."""
    ctx = ff.make_field(spec.p, spec.n)
    stop = ctx.order if stop is None else min(stop, ctx.order)
    if table is None:
        table = _square_table(ctx, workers)
    coeffs = chebyshev(spec.d).coeffs
    bounds = [(a, min(a + CHUNK, stop)) for a in range(start, stop, CHUNK)]
    parts = _run(lambda ab: _chunk_sum(spec, ctx, table, coeffs, *ab), bounds, workers)
    return sum(parts)


def count_points(spec, *, workers=1, budget=None):
    """Number of points of the smooth projective model of H_d over F_{p^n}."""
    ff.check_budget(spec.cost, budget, what=f"counting H_{spec.d} over F_{spec.p}^{spec.n}")
    ctx = ff.make_field(spec.p, spec.n)
    table = _square_table(ctx, workers)
    return spec.q + character_sum(spec, workers=workers, table=table) + spec.points_at_infinity


def is_permutation(d, p, n=1):
    """Dickson's criterion: phi_d permutes F_{p^n} iff gcd(p^(2n) - 1, d) = 1."""
    return gcd(p ** (2 * n) - 1, d) == 1


def is_permutation_exhaustive(d, p, n=1, budget=None):
    ctx = ff.make_field(p, n)
    ff.check_budget(ctx.order * d, budget)
    coeffs = chebyshev(d).coeffs
    seen = np.zeros(ctx.order, dtype=bool)
    for start in range(0, ctx.order, CHUNK):
        xs = ff.batch_from_indices(ctx, np.arange(start, min(start + CHUNK, ctx.order)))
        seen[ff.batch_to_indices(ctx, ff.batch_poly_eval(ctx, coeffs, xs))] = True
    return bool(seen.all())


def maximal_count(g, q):
    """q + 1 + 2 g sqrt(q) for a square q."""
    r = isqrt(q)
    if r * r != q:
        raise ValueError(f"{q} is not a square")
    return q + 1 + 2 * g * r


def is_maximal_by_count(spec, *, workers=1, budget=None):
    if spec.n % 2:
        raise ValueError("maximality is only defined over F_{q^2}; n must be even")
    return count_points(spec, workers=workers, budget=budget) == maximal_count(spec.genus, spec.q)


def within_weil_bound(count, g, q):
    """|count - (q + 1)| <= 2 g sqrt(q), decided on squares."""
    dev = count - (q + 1)
    return dev * dev <= 4 * g * g * q
