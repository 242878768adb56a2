import itertools

import pytest
from hypothesis import given, settings, strategies as st
from sympy import primerange

from chebmax.intpoly import (
    FpPoly,
    ZPoly,
    chebyshev,
    derivative_at_zero,
    eval_at_zero,
    format_poly,
    is_irreducible,
    is_separable,
    odd_part,
    poly_gcd,
    reduce_mod,
)

from oracles import brute_force_irreducible

ODD_PRIMES_31 = list(primerange(3, 32))


def test_chebyshev_base_cases():
    assert chebyshev(1).coeffs == (0, 1)
    assert chebyshev(2).coeffs == (-2, 0, 1)


def test_chebyshev_five():
    assert chebyshev(5).coeffs == (0, 5, 0, -5, 0, 1)
    assert str(chebyshev(5)) == "x^5 - 5*x^3 + 5*x"


def test_chebyshev_rejects_zero():
    with pytest.raises(ValueError):
        chebyshev(0)


@pytest.mark.parametrize("d", range(1, 31))
def test_monic_of_degree_d(d):
    P = chebyshev(d)
    assert P.degree == d and P.coeffs[-1] == 1


@pytest.mark.parametrize("d", range(1, 29))
def test_recursion(d):
    x = ZPoly((0, 1))
    assert chebyshev(d + 2) == x * chebyshev(d + 1) - chebyshev(d)


def test_large_coefficients_are_exact():
    # the x^2 coefficient of Phi_d for even d is (-1)^(d/2 + 1) d^2 / 4
    d = 100
    assert chebyshev(d).coeffs[2] == (-1) ** (d // 2 + 1) * d * d // 4
    assert max(abs(c) for c in chebyshev(d).coeffs) > 2**63


def test_defining_identity_over_rationals():
    from fractions import Fraction

    t = Fraction(3, 7)
    for d in range(1, 25):
        assert chebyshev(d)(t + 1 / t) == t**d + t ** (-d)


@pytest.mark.parametrize("d,e", [(d, e) for d in range(2, 13) for e in range(2, 13)])
def test_composition(d, e):
    assert chebyshev(d * e) == chebyshev(d).compose(chebyshev(e))


@pytest.mark.parametrize("d", range(1, 31))
def test_parity(d):
    P = chebyshev(d)
    neg = ZPoly([(-1) ** i * c for i, c in enumerate(P.coeffs)])
    assert neg == P * (-1) ** d


@pytest.mark.parametrize("d,expected", [(7, 0), (6, -2), (4, 2)])
def test_eval_at_zero_examples(d, expected):
    assert eval_at_zero(d) == expected


@pytest.mark.parametrize("d,expected", [(5, 5), (7, -7), (8, 0)])
def test_derivative_at_zero_examples(d, expected):
    assert derivative_at_zero(d) == expected


@pytest.mark.parametrize("d", range(1, 61))
def test_zero_tables_match_polynomial(d):
    P = chebyshev(d)
    assert eval_at_zero(d) == P(0)
    assert derivative_at_zero(d) == P.derivative()(0)


def test_odd_part_examples():
    assert odd_part(5).coeffs == (5, 0, -5, 0, 1)
    assert odd_part(3).coeffs == (-3, 0, 1)
    psi = odd_part(13)
    assert psi.degree == 12 and psi(0) == 13


def test_odd_part_rejects_even():
    with pytest.raises(ValueError):
        odd_part(4)


@pytest.mark.parametrize("ell", list(primerange(3, 102)))
def test_odd_part_constant_is_derivative(ell):
    psi = odd_part(ell)
    assert ZPoly((0, 1)) * psi == chebyshev(ell)
    assert psi(0) == derivative_at_zero(ell)


def test_reduce_mod_examples():
    assert reduce_mod(chebyshev(5), 5).coeffs == (0, 0, 0, 0, 0, 1)
    assert reduce_mod(chebyshev(2), 7).coeffs == (5, 0, 1)
    assert reduce_mod(chebyshev(1), 13).coeffs == (0, 1)
    assert str(reduce_mod(chebyshev(5), 5)) == "x^5"


def test_format_poly():
    assert format_poly((-2, 0, 1)) == "x^2 - 2"
    assert format_poly((0, 5, 0, -5, 0, 1), descending=False) == "5*x - 5*x^3 + x^5"


def test_is_separable_examples():
    assert is_separable(15, 7)
    assert not is_separable(15, 5)
    assert is_separable(1, 4)


@pytest.mark.parametrize("p", ODD_PRIMES_31)
def test_separability_matches_gcd_with_derivative(p):
    for d in range(1, 31):
        f = list(reduce_mod(chebyshev(d), p).coeffs)
        df = list(reduce_mod(chebyshev(d).derivative(), p).coeffs)
        coprime = len(poly_gcd(f, df, p)) == 1 if df else False
        assert coprime == is_separable(d, p), (d, p)


def test_is_irreducible_examples():
    psi5 = odd_part(5)
    assert reduce_mod(psi5, 13).coeffs == (5, 0, 8, 0, 1)
    assert is_irreducible(reduce_mod(psi5, 13))
    assert brute_force_irreducible((5, 0, 8, 0, 1), 13)
    assert not is_irreducible(FpPoly(7, (-1, 0, 1)))
    assert not is_irreducible(reduce_mod(psi5, 29))
    assert not brute_force_irreducible(reduce_mod(psi5, 29).coeffs, 29)


def test_is_irreducible_rejects_constants():
    with pytest.raises(ValueError):
        is_irreducible(FpPoly(5, (3,)))


@pytest.mark.parametrize("p,max_deg", [(3, 6), (5, 4), (7, 3)])
def test_irreducible_exhaustive_small(p, max_deg):
    for deg in range(1, max_deg + 1):
        for low in itertools.product(range(p), repeat=deg):
            f = low + (1,)
            assert is_irreducible(FpPoly(p, f)) == brute_force_irreducible(f, p), f


def test_irreducible_count_matches_necklace_formula():
    # number of monic irreducibles of degree 4 over F_5 is (5^4 - 5^2) / 4
    count = sum(is_irreducible(FpPoly(5, low + (1,))) for low in itertools.product(range(5), repeat=4))
    assert count == (5**4 - 5**2) // 4


@settings(max_examples=300, deadline=None)
@given(p=st.sampled_from([3, 5, 7, 11, 13]), data=st.data())
def test_irreducible_matches_brute_force(p, data):
    deg = data.draw(st.integers(1, 6))
    low = data.draw(st.lists(st.integers(0, p - 1), min_size=deg, max_size=deg))
    lead = data.draw(st.integers(1, p - 1))
    f = tuple(low) + (lead,)
    assert is_irreducible(FpPoly(p, f)) == brute_force_irreducible(f, p)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-50, 50), max_size=6), st.lists(st.integers(-50, 50), max_size=6),
       st.integers(-20, 20))
def test_zpoly_ring_homomorphism(a, b, x):
    A, B = ZPoly(a), ZPoly(b)
    assert (A * B)(x) == A(x) * B(x)
    assert (A + B)(x) == A(x) + B(x)
    assert A.compose(B)(x) == A(B(x))
