"""Instance generators shared by the bound tests and the acceptance suite."""

import math
import random
from fractions import Fraction

import mpmath

from jescert import laurent
from jescert.laurent import LinearForm


def direct_log_abs(inst: LinearForm, bits: int) -> mpmath.mpf:
    """log|b1 log a1 - b2 log a2| evaluated by mpmath, independent of the interval kernel."""
    with mpmath.workprec(bits):
        lam = inst.b1 * mpmath.log(inst.a1) - inst.b2 * mpmath.log(inst.a2)
        return mpmath.log(abs(lam))


def mpf_fraction(v) -> Fraction:
    sign, man, exp, _ = v._mpf_
    f = Fraction(int(man)) * Fraction(2) ** exp
    return -f if sign else f


def coprime_pair(rng: random.Random, lo: int, hi: int) -> tuple[int, int]:
    while True:
        a1, a2 = rng.randint(lo, hi), rng.randint(lo, hi)
        if a1 != a2 and math.gcd(a1, a2) == 1:
            return a1, a2


def convergent_instances(rng: random.Random, count: int, lo=2704, hi=10**6, max_abs=Fraction(1, 1000)):
    """Instances ``(a1, a2, b1, b2)`` with ``b1/b2`` a convergent of ``log a2/log a1`` and ``|Lambda| < max_abs``.

    Half of them (the ones with ``Lambda > 0`` and large enough ``b2``) also
    satisfy the specialized-bound hypotheses.
    """
    out = []
    while len(out) < count:
        a1, a2 = coprime_pair(rng, lo, hi)
        for c in laurent.log_ratio_convergents(a1, a2, bits=512):
            b1, b2 = c.numerator, c.denominator
            if b1 < 1 or b2 < 1:
                continue
            inst = LinearForm(a1, a2, b1, b2)
            if direct_log_abs(inst, 256) < mpmath.log(mpmath.mpf(max_abs.numerator) / max_abs.denominator):
                out.append(inst)
                break
    return out


def specialized_instances(rng: random.Random, count: int, lo=2704, hi=10**6):
    """Convergent instances that satisfy ``b1/A2 > b2/A1 > 240``."""
    out = []
    while len(out) < count:
        a1, a2 = coprime_pair(rng, lo, hi)
        need = 240 * laurent.A_COEFF * Fraction(math.log(a1)) + 1
        for c in laurent.log_ratio_convergents(a1, a2, bits=512):
            b1, b2 = c.numerator, c.denominator
            if b2 <= need:
                continue
            inst = LinearForm(a1, a2, b1, b2)
            try:
                laurent.check_specialized_hypotheses(inst)
            except laurent.HypothesisError:
                continue
            out.append(inst)
            break
    return out


def random_instances(rng: random.Random, count: int):
    out = []
    while len(out) < count:
        a1, a2 = coprime_pair(rng, 2, rng.choice([50, 10**4, 10**6]))
        b1, b2 = rng.randint(1, 10**rng.randint(1, 7)), rng.randint(1, 10**rng.randint(1, 7))
        out.append(LinearForm(a1, a2, b1, b2))
    return out
