import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jescert import laurent, rigor
from jescert.laurent import (A_COEFF, SPECIALIZED_PARAMS, ChainConfig, HypothesisError, LaurentParams, LinearForm,
                             derive_params, laurent_lower_bound, specialized_bound)
from jescert.rigor import Interval, Precision

from helpers import convergent_instances, direct_log_abs, mpf_fraction, random_instances, specialized_instances
from oracles import log_bounds

BITS = 192


@pytest.mark.parametrize("q, mu, delta, lam", [
    ("1.575", Fraction(1, 3), Fraction(7, 9), Fraction("1.225")),
    (1, 1, 1, 1),
    (2, Fraction(1, 3), Fraction(7, 9), Fraction(14, 9)),
])
def test_derive_params(q, mu, delta, lam):
    d = derive_params(LaurentParams.from_exponent(q, mu))
    assert d.delta_exact == delta
    assert d.lam_exact == lam
    assert d.lam.contains(lam)


def test_rational_rho_gives_interval_lambda():
    d = derive_params(LaurentParams(mu=1, rho=Fraction(5)))
    assert d.lam_exact is None
    assert d.lam.contains(log_bounds(5)[0]) or d.lam.lo_fraction() <= log_bounds(5)[1]


@pytest.mark.parametrize("kwargs", [dict(mu=Fraction(1, 4), log_rho=1), dict(mu=1, log_rho=0),
                                    dict(mu=1, rho=1), dict(mu=2, log_rho=1)])
def test_params_out_of_range(kwargs):
    with pytest.raises(HypothesisError):
        LaurentParams(**kwargs)


def test_linear_form_validation():
    with pytest.raises(HypothesisError):
        LinearForm(2704, 2704, 1, 1)
    with pytest.raises(HypothesisError):
        LinearForm(6, 4, 1, 1)
    with pytest.raises(HypothesisError):
        LinearForm(1, 3, 1, 1)


def floor_terms(a_floor=None, bits=BITS):
    d = derive_params(SPECIALIZED_PARAMS, bits)
    A = Interval.exact(a_floor, bits) if a_floor is not None else A_COEFF * rigor.log(2704, bits)
    B = laurent.B_CONST + rigor.log(480, bits)
    return laurent.terms_from(A, A, B, d, SPECIALIZED_PARAMS.log_rho_interval(bits), SPECIALIZED_PARAMS.mu)


def test_boundary_terms():
    t = floor_terms()
    assert t.B.lo > Fraction("9.7617") and t.H.lo > Fraction("7.9688")
    assert t.omega.hi < Fraction("4.0040") and t.theta.hi < Fraction("1.0648")


def test_minimal_b_at_boundary_exceeds_display():
    # the smallest admissible B (not the rounded 3.5880 form) still clears 9.7617
    d = derive_params(SPECIALIZED_PARAMS)
    B = laurent.minimal_B(Interval.exact(480), d, SPECIALIZED_PARAMS.log_rho_interval(BITS))
    assert B.lo > Fraction("9.7617")


def test_constants_at_displayed_a_floor():
    t = floor_terms(Fraction("46.0803"))
    assert t.C0.hi < Fraction("1.8706")
    assert t.C.hi < Fraction("0.4361")
    assert t.Cprime.hi < Fraction("2.0829")


def test_c_needs_tight_c0():
    # feeding the rounded display C0 = 1.8706 overshoots 0.4361; the chain must use the enclosure
    lam, delta = Fraction("1.225"), Fraction(7, 9)
    assert Fraction("1.8706") / 3 / (lam**3 * delta) > Fraction("0.4361")


def test_bound_small_instance():
    inst = LinearForm(3, 2, 1, 1)
    L = laurent_lower_bound(inst)
    lo, _ = log_bounds(log_bounds(3)[0] - log_bounds(2)[1])
    assert L.hi_fraction() <= lo
    assert L.hi_fraction() < Fraction("-0.902")


def test_bound_convergent_2707_2703():
    cs = [c for c in laurent.log_ratio_convergents(2707, 2703) if c.denominator > 240 * 6 * 8]
    c = cs[0]
    inst = LinearForm(2707, 2703, c.numerator, c.denominator)
    L = laurent_lower_bound(inst)
    assert L.lo_fraction() <= mpf_fraction(direct_log_abs(inst, 512))


def test_bound_general_rejects_small_override():
    with pytest.raises(HypothesisError):
        laurent_lower_bound(LinearForm(3, 2, 1, 1), a_coeff_override=Fraction(5))


def test_specialized_rejects_small_bases():
    with pytest.raises(HypothesisError, match="2704"):
        specialized_bound(LinearForm(100, 2703, 10**6, 10**6))


def test_specialized_rejects_small_ratio():
    with pytest.raises(HypothesisError, match="240"):
        specialized_bound(LinearForm(2707, 2705, 101, 100))


def test_specialized_rejects_wrong_order():
    with pytest.raises(HypothesisError, match="b1/A2 > b2/A1"):
        specialized_bound(LinearForm(2707, 2705, 20000, 30000))


def smallest_admissible(a1, a2):
    with mpmath.workprec(256):
        A1 = mpmath.mpf(58314) / 10000 * mpmath.log(a1)
        b2 = int(mpmath.floor(240 * A1)) + 1
        b1 = int(mpmath.floor(b2 * mpmath.log(a2) / mpmath.log(a1))) + 1
    return b1, b2


def test_specialized_smallest_admissible_instance():
    b1, b2 = smallest_admissible(2707, 2705)
    inst = LinearForm(2707, 2705, b1, b2)
    L = specialized_bound(inst)
    with mpmath.workprec(512):
        l1, l2 = mpmath.log(2707), mpmath.log(2705)
        ref = -mpmath.mpf(148365) / 10000 * l1 * l2 * (mpmath.mpf(18248) / 10000 + mpmath.log(b1 / l2 + b2 / l1)) ** 2
    assert L.hi < 0
    assert L.contains(mpf_fraction(ref)) or abs(L.mid - mpf_fraction(ref)) <= L.width + Fraction(1, 10**100)
    assert L.lo_fraction() <= mpf_fraction(direct_log_abs(inst, 512))


def test_coefficient_identity():
    assert abs(Fraction("0.4363") * A_COEFF**2 - Fraction("14.8365")) < Fraction(1, 1000)


def test_chain_all_certified():
    rep = laurent.verify_lemma_2_8_chain()
    assert rep.ok
    for slug in ("a-floor", "b-floor", "h-floor", "omega-ceiling", "theta-ceiling", "c0-ceiling",
                 "c-ceiling", "cprime-ceiling", "sqrt-term", "log-term", "aggregate"):
        assert rep.get(slug).verdict == "CertifiedTrue", slug


def test_chain_with_weakened_floor_fails():
    rep = laurent.verify_lemma_2_8_chain(ChainConfig(a_min=100))
    assert not rep.ok
    assert rep.get("a-floor").verdict == "CertifiedFalse"


def test_chain_verdicts_precision_independent():
    base = [r.verdict for r in laurent.verify_lemma_2_8_chain().records]
    low = [r.verdict for r in laurent.verify_lemma_2_8_chain(precision=Precision(64, 1024)).records]
    assert base == low


def test_continued_fraction_round_trip():
    x = Fraction(415, 93)
    assert laurent.continued_fraction(x) == [4, 2, 6, 7]
    assert list(laurent.convergents([4, 2, 6, 7]))[-1] == x


def test_certified_convergents_are_best_approximations():
    with mpmath.workprec(1024):
        r = mpmath.log(2703) / mpmath.log(2707)
        for c in laurent.log_ratio_convergents(2707, 2703):
            # convergents satisfy |r - p/q| < 1/q^2
            assert abs(r - mpmath.mpf(c.numerator) / c.denominator) < mpmath.mpf(1) / c.denominator**2


# -- properties -------------------------------------------------------------

def test_soundness_random_sample():
    rng = random.Random(7)
    insts = random_instances(rng, 120) + convergent_instances(rng, 15)
    for inst in insts:
        L = laurent_lower_bound(inst)
        assert L.lo_fraction() <= mpf_fraction(direct_log_abs(inst, 2 * BITS)), inst


def test_specialization_consistency():
    rng = random.Random(11)
    for inst in specialized_instances(rng, 20):
        general = laurent_lower_bound(inst, a_coeff_override=A_COEFF)
        assert general.lo >= specialized_bound(inst).hi, inst


def test_specialized_monotone_in_exponents():
    rng = random.Random(3)
    for inst in specialized_instances(rng, 10):
        base = specialized_bound(inst, check=False)
        up1 = specialized_bound(LinearForm(inst.a1, inst.a2, inst.b1 + 1, inst.b2), check=False)
        up2 = specialized_bound(LinearForm(inst.a1, inst.a2, inst.b1, inst.b2 + 1), check=False)
        assert up1.hi < base.lo and up2.hi < base.lo


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=Fraction(1, 3), max_value=1, max_denominator=1000),
       st.fractions(min_value=Fraction(1, 100), max_value=20, max_denominator=1000))
def test_delta_lambda_exact(mu, q):
    d = derive_params(LaurentParams.from_exponent(q, mu))
    assert d.delta_exact == (1 + 2 * mu - mu * mu) / 2
    assert d.lam_exact == d.delta_exact * q


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 10**6), st.integers(2, 10**6), st.integers(1, 10**9), st.integers(1, 10**9),
       st.sampled_from([Fraction(1, 3), Fraction(1, 2), Fraction(1)]),
       st.sampled_from([Fraction(1, 2), Fraction("1.575"), Fraction(3)]))
def test_soundness_property(a1, a2, b1, b2, mu, q):
    if a1 == a2 or math.gcd(a1, a2) != 1:
        return
    inst = LinearForm(a1, a2, b1, b2)
    L = laurent_lower_bound(inst, LaurentParams.from_exponent(q, mu))
    assert L.lo_fraction() <= mpf_fraction(direct_log_abs(inst, 2 * BITS))
