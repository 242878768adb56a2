"""Rule engine deciding for which exponents H_d is maximal in characteristic p.

A verdict with status MAXIMAL_FOR_EXPONENTS and parameter k means: H_d is
maximal over F_{p^(2n)} exactly when n is an odd multiple of k.

Rule tags are stable strings:

    ell3-p1              l = 3 mod 4, p = 1 mod 4: never maximal
    ell3-p3              l = 3 mod 4, p = 3 mod 4: k = order of +-p mod l
    ell1-p3              l = 1 mod 4, p = 3 mod 4: k = order of +-p if odd, else never
    primitive-root       l = p = 1 mod 4, p primitive mod l: k = (l - 1)/2
    slope-obstruction    a CM slope different from 1/2 rules maximality out
    p3-subgroup          odd d, p = 3 mod 4: <p mod 4d> must contain -1 or 1 + 2d
    prime-factor-3mod4   odd d, p = 1 mod 4, some prime factor of d is 3 mod 4
    quotient-never       H_d covers some H_l that is never maximal
    two-adic-valuation   H_l1, H_l2 maximal at exponents of different 2-adic valuation
    open                 no rule applies
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import gcd

from sympy import factorint, isprime

from . import cmgal
from .ff import legendre, mult_order, pm_order
from .intpoly import is_irreducible, odd_part, reduce_mod


class Status(str, Enum):
    MAXIMAL_FOR_EXPONENTS = "MAXIMAL_FOR_EXPONENTS"
    NEVER_MAXIMAL = "NEVER_MAXIMAL"
    UNDECIDED = "UNDECIDED"
    CONSISTENT_WITH_MAXIMAL = "CONSISTENT_WITH_MAXIMAL"


@dataclass
class Verdict:
    status: Status
    rule: str
    k: int | None = None
    evidence: list = field(default_factory=list)

    def __post_init__(self):
        if self.status is Status.MAXIMAL_FOR_EXPONENTS and not (self.k and self.k > 0):
            raise ValueError("a maximal verdict needs a positive k")

    def predicts_maximal(self, n):
        """Prediction for maximality over F_{p^n}: True, False, or None if unknown."""
        if self.status is Status.NEVER_MAXIMAL:
            return False
        if self.status is not Status.MAXIMAL_FOR_EXPONENTS:
            return None
        if n % 2:
            return False
        half = n // 2
        return half % self.k == 0 and (half // self.k) % 2 == 1

    def to_json(self):
        return {
            "status": self.status.value,
            "rule": self.rule,
            "k": self.k,
            "exponents": None if self.k is None else f"n = {self.k} * odd (maximal over F_(p^(2n)))",
            "evidence": self.evidence,
        }


def _validate(d, p):
    if p == 2 or not isprime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if gcd(p, 2 * d) != 1:
        raise ValueError(f"p = {p} must not divide 2d = {2 * d}")


def classify_prime(ell, p):
    if ell == 2 or not isprime(ell):
        raise ValueError(f"ell must be an odd prime, got {ell}")
    if p == ell:
        raise ValueError("p must differ from ell")
    _validate(ell, p)
    if ell % 4 == 3 and p % 4 == 1:
        return Verdict(Status.NEVER_MAXIMAL, "ell3-p1")
    if ell % 4 == 3:
        return Verdict(Status.MAXIMAL_FOR_EXPONENTS, "ell3-p3", k=pm_order(p, ell))
    if p % 4 == 3:
        m = pm_order(p, ell)
        if m % 2:
            return Verdict(Status.MAXIMAL_FOR_EXPONENTS, "ell1-p3", k=m)
        return Verdict(Status.NEVER_MAXIMAL, "ell1-p3", evidence=[f"order of +-p mod {ell} is {m}, even"])
    if mult_order(p, ell) == ell - 1:
        return Verdict(Status.MAXIMAL_FOR_EXPONENTS, "primitive-root", k=(ell - 1) // 2)
    slopes = cmgal.slopes_multiset(ell, p)
    if not slopes.is_supersingular():
        return Verdict(Status.NEVER_MAXIMAL, "slope-obstruction", evidence=[f"CM slopes {slopes}"])
    return Verdict(Status.UNDECIDED, "open", evidence=[f"CM slopes {slopes}", "p is not a primitive root"])


def subgroup_test(d, p):
    """Elements of <p mod 4d>; returns (order, contains -1 or 1 + 2d)."""
    m = 4 * d
    elems, x = [], 1
    while True:
        x = x * p % m
        elems.append(x)
        if x == 1:
            break
    return len(elems), (m - 1) in elems or (1 + 2 * d) in elems


def classify_odd(d, p):
    if d < 3 or d % 2 == 0:
        raise ValueError(f"d must be odd and at least 3, got {d}")
    _validate(d, p)
    if p % 4 == 3:
        order, ok = subgroup_test(d, p)
        if ok:
            return Verdict(Status.MAXIMAL_FOR_EXPONENTS, "p3-subgroup", k=order // 2)
        return Verdict(Status.NEVER_MAXIMAL, "p3-subgroup", evidence=[f"<p> mod {4 * d} has order {order}"])
    factors = factorint(d)
    bad = [ell for ell in factors if ell % 4 == 3]
    if bad:
        return Verdict(Status.NEVER_MAXIMAL, "prime-factor-3mod4", evidence=[f"{bad[0]} divides d"])
    if len(factors) == 1 and factors[next(iter(factors))] == 1:
        return classify_prime(d, p)

    evidence = []
    prime_verdicts = {}
    for ell in sorted(factors):
        v = classify_prime(ell, p)
        prime_verdicts[ell] = v
        evidence.append(f"H_{ell}: {v.status.value} ({v.rule})")
        if v.status is Status.NEVER_MAXIMAL:
            return Verdict(Status.NEVER_MAXIMAL, "quotient-never", evidence=evidence)
    maximal = {ell: v.k for ell, v in prime_verdicts.items() if v.status is Status.MAXIMAL_FOR_EXPONENTS}
    for l1, l2 in combinations(sorted(maximal), 2):
        if _v2(maximal[l1]) != _v2(maximal[l2]):
            evidence.append(f"v2({maximal[l1]}) != v2({maximal[l2]}) for H_{l1}, H_{l2}")
            return Verdict(Status.NEVER_MAXIMAL, "two-adic-valuation", evidence=evidence)
    for e in _cm_levels(factors):
        slopes = cmgal.slopes2_multiset(e, p)
        evidence.append(f"CM piece of level {e}: slopes {slopes}")
        if not slopes.is_supersingular():
            return Verdict(Status.NEVER_MAXIMAL, "slope-obstruction", evidence=evidence)
    if all(v.status is Status.MAXIMAL_FOR_EXPONENTS for v in prime_verdicts.values()):
        return Verdict(Status.CONSISTENT_WITH_MAXIMAL, "open", evidence=evidence)
    return Verdict(Status.UNDECIDED, "open", evidence=evidence)


def _v2(n):
    return (n & -n).bit_length() - 1


def _cm_levels(factors):
    """Levels l^i (2 <= i <= v_l(d)) and l1 l2 whose CM pieces sit inside J(H_d)."""
    levels = []
    for ell, e in sorted(factors.items()):
        levels += [ell**i for i in range(2, e + 1)]
    levels += [a * b for a, b in combinations(sorted(factors), 2)]
    return levels


def classify(d, p):
    if d >= 3 and isprime(d):
        return classify_prime(d, p)
    return classify_odd(d, p)


@dataclass
class DescentCertificate:
    ell: int
    p: int
    legendre_value: int
    psi_irreducible: bool
    slopes_all_half: bool
    middle_candidates: list
    char_poly_middle: int | None
    conclusion: bool

    def to_json(self):
        return {
            "ell": self.ell,
            "p": self.p,
            "legendre_value": self.legendre_value,
            "psi_irreducible": self.psi_irreducible,
            "slopes_all_half": self.slopes_all_half,
            "middle_candidates": self.middle_candidates,
            "char_poly_middle": self.char_poly_middle,
            "conclusion": self.conclusion,
            "char_poly": f"X^{self.ell - 1} + {self.p}^{(self.ell - 1) // 2}" if self.conclusion else None,
        }


class FailedPrecondition(ValueError):
    pass


def descent_certificate(ell, p):
    """Certificate that the p-Frobenius on J(H_ell) has char poly X^(2g) + p^g.

    Frobenius has the shape X^(2g) + m p^(g/2) X^g + p^g with |m| <= 2, and
    #J(F_p) = 1 + m p^(g/2) + p^g = 2 + m mod 4. The 2-torsion point
    (0,0) - oo is the only one (psi_ell is irreducible) and is not divisible by 2
    because its descent image is ell mod squares, a non-square. So #J(F_p) = 2 mod 4
    and m = 0.
    """
    if not (isprime(ell) and ell % 4 == 1):
        raise FailedPrecondition(f"ell = {ell} is not a prime = 1 mod 4")
    if not (isprime(p) and p % 4 == 1 and p != ell):
        raise FailedPrecondition(f"p = {p} is not a prime = 1 mod 4 distinct from ell")
    order = mult_order(p, ell)
    if order != ell - 1:
        raise FailedPrecondition(f"p = {p} has order {order} mod {ell}, not a primitive root")
    leg = legendre(ell, p)
    irreducible = is_irreducible(reduce_mod(odd_part(ell), p))
    half = cmgal.slopes_multiset(ell, p).is_supersingular()
    candidates = [m for m in range(-2, 3) if m * m <= 4]
    descent_ok = leg == -1 and irreducible
    if descent_ok:
        candidates = [m for m in candidates if (2 + m) % 4 == 2]
    middle = candidates[0] if len(candidates) == 1 else None
    conclusion = descent_ok and half and middle == 0
    return DescentCertificate(ell, p, leg, irreducible, half, candidates, middle, conclusion)


def jacobian_order_mod4(P):
    return P(1) % 4


# -- surveys ------------------------------------------------------------------

SURVEY_LIMIT = 1000


def _primes_1mod4(limit):
    return [ell for ell in range(5, limit + 1, 4) if isprime(ell)]


def prime_sweep(ell_max):
    rows = []
    for ell in _primes_1mod4(ell_max):
        for p in range(1, 4 * ell, 4):
            if p % ell == 0:
                continue
            ss = cmgal.slopes_multiset(ell, p).is_supersingular()
            prim = mult_order(p, ell) == ell - 1
            rows.append({"ell": ell, "p_class": p, "supersingular": ss, "primitive_root": prim})
    return {"mode": "prime-sweep", "ell_max": ell_max, "rows": rows,
            "holds": all(r["supersingular"] == r["primitive_root"] for r in rows)}


def admissible_pairs(ell_max):
    ps = _primes_1mod4(ell_max)
    return [(a, b) for a, b in combinations(ps, 2) if _v2(a - 1) == _v2(b - 1)]


def pair_sweep(ell_max):
    rows = [{"ell1": a, "ell2": b, "classes": sorted(cmgal.check_pair(a, b))} for a, b in admissible_pairs(ell_max)]
    return {"mode": "pair-sweep", "ell_max": ell_max, "rows": rows, "all_empty": all(not r["classes"] for r in rows)}


def prime_power_sweep(ell_max, n_max=2):
    rows = []
    for ell in _primes_1mod4(ell_max):
        for n in range(2, n_max + 1):
            d = ell**n
            phi = d - d // ell
            hits, generators = [], 0
            base = {c: cmgal.slopes_multiset(ell, c).is_supersingular() for c in range(1, 4 * ell, 4) if c % ell}
            for p in range(1, 4 * d, 4):
                if p % ell == 0 or not base[p % (4 * ell)]:
                    continue
                if not cmgal.supersingular_by_pm_order(d, p):
                    continue
                gen = mult_order(p, d) == phi
                generators += gen
                hits.append({"p_class": p, "generator": gen})
            rows.append({"ell": ell, "n": n, "d": d, "classes": len(hits),
                         "all_generators": generators == len(hits), "hits": hits})
    return {"mode": "prime-power-sweep", "ell_max": ell_max, "n_max": n_max, "rows": rows,
            "holds": all(r["all_generators"] for r in rows)}


def survey(ell_max, mode, n_max=2):
    if ell_max > SURVEY_LIMIT:
        raise ValueError(f"ell_max {ell_max} exceeds the survey limit {SURVEY_LIMIT}")
    if mode == "prime-sweep":
        return prime_sweep(ell_max)
    if mode == "pair-sweep":
        return pair_sweep(ell_max)
    if mode == "prime-power-sweep":
        return prime_power_sweep(ell_max, n_max)
    raise ValueError(f"unknown survey mode {mode!r}")
