import json
from fractions import Fraction
from math import comb, gcd

import pytest
from hypothesis import given, settings, strategies as st

from chebmax.curve import CurveSpec, count_points, genus
from chebmax.ff import BudgetExceeded
from chebmax.zeta import (
    InvalidCounts,
    LPoly,
    SlopeMultiset,
    counts_from_lpoly,
    curve_counts,
    factor_display,
    is_maximal_from_lpoly,
    lpoly_from_counts,
    lpoly_of_curve,
    newton_slopes,
    power_sum,
    prime_power,
    valuation,
)

from oracles import lower_hull_slopes, naive_count

H5 = LPoly(13, 2, (1, 0, 0, 0, 169))
HALF = Fraction(1, 2)


def maximal_lpoly(r, g):
    """(1 + r T)^(2g) over q = r^2."""
    return LPoly(r * r, g, tuple(comb(2 * g, i) * r**i for i in range(2 * g + 1)))


def test_lpoly_from_counts_h5():
    assert naive_count(5, 13, 1) == 14 and naive_count(5, 13, 2) == 170
    assert lpoly_from_counts([14, 170], 13, 2) == H5


def test_lpoly_from_counts_elliptic():
    assert lpoly_from_counts([8], 7, 1).coeffs == (1, 0, 7)


@pytest.mark.parametrize("r,g", [(3, 1), (5, 2), (7, 3), (9, 2)])
def test_lpoly_from_maximal_counts(r, g):
    q = r * r
    counts = [q**m + 1 - g * 2 * (-r) ** m for m in range(1, g + 1)]
    assert lpoly_from_counts(counts, q, g) == maximal_lpoly(r, g)


def test_invalid_counts():
    with pytest.raises(InvalidCounts, match="Weil"):
        lpoly_from_counts([100], 7, 1)
    with pytest.raises(InvalidCounts, match="integral"):
        # S1 = 1, S2 = 0 forces c2 = (S1^2 - S2) / 2 = 1/2
        lpoly_from_counts([13, 170], 13, 2)
    with pytest.raises(InvalidCounts):
        lpoly_from_counts([14], 13, 2)


def test_counts_from_lpoly_examples():
    assert counts_from_lpoly(H5, 4) == 29238 == 13**4 + 1 + 4 * 169
    assert counts_from_lpoly(H5, 1) == 14
    P25 = LPoly(13, 12, _product_coeffs(13, [(2, 4), (10, 20)]))
    assert counts_from_lpoly(P25, 3) == 2198
    assert count_points(CurveSpec(25, 13, 3)) == 2198


def _product_coeffs(p, factors):
    coeffs = [1]
    for a, b in factors:
        nxt = [0] * (len(coeffs) + b)
        for i, c in enumerate(coeffs):
            nxt[i] += c
            nxt[i + b] += c * p**a
        coeffs = nxt
    return tuple(coeffs)


def test_power_sum_matches_roots():
    # 1 - 3T + 7T^2 has reciprocal roots with sum 3 and product 7
    P = LPoly(7, 1, (1, -3, 7))
    assert power_sum(P, 1) == 3
    assert power_sum(P, 2) == 3 * 3 - 2 * 7
    assert power_sum(P, 3) == 3 * power_sum(P, 2) - 7 * power_sum(P, 1)


ROUND_TRIP = [(d, p) for d in (3, 5, 7, 9) for p in (3, 5, 7, 11, 13)
              if gcd(p, 2 * d) == 1 and p ** (genus(d) + 2) <= 3 * 10**6]


@pytest.mark.parametrize("d,p", ROUND_TRIP)
def test_round_trip_against_direct_counts(d, p):
    g = genus(d)
    counts = curve_counts(d, p, 1, g + 2)
    P = lpoly_from_counts(counts[:g], p, g)
    assert P.satisfies_functional_equation()
    for m in range(1, g + 3):
        assert counts_from_lpoly(P, m) == counts[m - 1]
    for m in range(1, 2 * g + 1):
        s = power_sum(P, m)
        assert s * s <= 4 * g * g * p**m
    ns = newton_slopes(P)
    assert ns.total_length == 2 * g and ns.is_symmetric()


def test_newton_slopes_examples():
    assert newton_slopes(H5).lengths == {HALF: 4}
    assert newton_slopes(LPoly(7, 1, (1, 0, 7))).lengths == {HALF: 2}
    assert newton_slopes(maximal_lpoly(5, 3)).lengths == {HALF: 6}


def test_newton_slopes_ordinary_and_mixed():
    # ordinary elliptic curve: 1 - T + 7T^2
    assert newton_slopes(LPoly(7, 1, (1, -1, 7))).lengths == {0: 1, 1: 1}
    # q = 9 uses the vertical scale v_3(9) = 2
    assert newton_slopes(LPoly(9, 1, (1, 3, 9))).lengths == {HALF: 2}
    assert newton_slopes(LPoly(9, 1, (1, 1, 9))).lengths == {0: 1, 1: 1}


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5, 7, 9, 25, 27]), st.integers(1, 4), st.data())
def test_newton_hull_matches_quadratic_oracle(q, g, data):
    p, n = prime_power(q)
    low = [1] + [data.draw(st.integers(-q**i, q**i)) for i in range(1, g + 1)]
    coeffs = low + [q ** (g - i) * low[i] for i in range(g - 1, -1, -1)]
    P = LPoly(q, g, coeffs)
    pts = [(j, Fraction(valuation(c, p), n)) for j, c in enumerate(coeffs) if c]
    expect = SlopeMultiset.from_pairs(lower_hull_slopes(pts))
    got = newton_slopes(P)
    assert got == expect
    assert got.total_length == 2 * g and got.is_symmetric()


def test_is_maximal_from_lpoly_examples():
    assert is_maximal_from_lpoly(H5, 4)
    assert not is_maximal_from_lpoly(H5, 2)
    assert not is_maximal_from_lpoly(H5, 8)
    assert is_maximal_from_lpoly(H5, 12)
    with pytest.raises(ValueError):
        is_maximal_from_lpoly(H5, 3)


def test_lpoly_json_round_trip():
    s = json.dumps(H5.to_json())
    assert json.loads(s)["coeffs"] == ["1", "0", "0", "0", "169"]
    assert LPoly.from_json(s) == H5
    big = maximal_lpoly(13**10, 12)
    assert LPoly.from_json(json.dumps(big.to_json())) == big


def test_lpoly_validation():
    with pytest.raises(ValueError):
        LPoly(13, 2, (1, 0, 169))
    with pytest.raises(ValueError):
        LPoly(13, 1, (2, 0, 13))


def test_slope_json():
    ms = SlopeMultiset.from_pairs([(Fraction(1, 4), 8), (Fraction(3, 4), 8)])
    assert ms.to_json() == {"1/4": 8, "3/4": 8}


def test_factor_display():
    assert factor_display(H5) == "(p^2 x^4 + 1)"
    P25 = LPoly(13, 12, _product_coeffs(13, [(2, 4), (10, 20)]))
    assert factor_display(P25) == "(p^2 x^4 + 1)(p^10 x^20 + 1)"
    assert factor_display(LPoly(7, 1, (1, -1, 7))) is None


def test_lpoly_of_curve():
    assert lpoly_of_curve(5, 13) == H5
    assert lpoly_of_curve(3, 7).coeffs == (1, 0, 7)
    with pytest.raises(BudgetExceeded):
        lpoly_of_curve(25, 13)


def test_prime_power():
    assert prime_power(169) == (13, 2)
    with pytest.raises(ValueError):
        prime_power(12)
