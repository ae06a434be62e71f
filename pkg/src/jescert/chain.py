"""The contradiction argument behind the ``m > 30.8 n`` threshold.

A hypothetical solution other than ``(2, 2, 2)`` forces the ratio
``t = z / log(m^2 - n^2)`` to satisfy two incompatible bounds: an
elementary lower bound ``t > (3/2)(k^2 - 1)`` with ``k = m/n``, and an
upper bound ``f(t) < 0`` coming from the specialized linear-form estimate,
where ``f(t) = t - 0.1266 - 14.8365 (1.8248 + log 2t)^2``.  This module
certifies each link numerically and locates the threshold on ``k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import laurent, rigor
from .jesmanowicz import PythagoreanPair, congruence_3_3, filter_lemma_2_5
from .report import CertificationReport, decimal_text as dt
from .rigor import DEFAULT_PRECISION, Certainty, Interval, Precision, decide_less, exact

K_FLOOR = exact("30.8")
N_MIN = 85
SMALL_TERM = exact("0.1266")
ROOT_TOL = exact("0.01")
GRANULARITY = exact("0.1")
T_MONOTONE = 250
T_CLAIM = 1420


@dataclass(frozen=True)
class FConstants:
    """Constants of ``f(t) = t - small - coefficient * (offset + log 2t)^2``."""

    coefficient: Fraction = laurent.BOUND_COEFF
    offset: Fraction = laurent.LOG_OFFSET
    small: Fraction = SMALL_TERM


F_DEFAULT = FConstants()


@dataclass(frozen=True)
class ProofContext:
    pair: Optional[PythagoreanPair] = None
    k_floor: Fraction = K_FLOOR
    n_min: int = N_MIN
    a_min: int = laurent.A_MIN
    ratio_min: int = laurent.RATIO_MIN

    @property
    def k(self) -> Fraction:
        if self.pair is None:
            return self.k_floor
        return Fraction(self.pair.m, self.pair.n)

    @property
    def hypotheses(self) -> dict:
        if self.pair is None:
            return {"mn_2_mod_4": True, "above_threshold": True}
        return {"mn_2_mod_4": self.pair.mn_2_mod_4, "above_threshold": self.k > self.k_floor}


def lower_ratio_bound(k) -> Fraction:
    """``(3/2)(k^2 - 1)``, the lower bound on ``z / log(m^2 - n^2)``; exact."""
    k = exact(k)
    if k < 1:
        raise rigor.DomainError("k must be at least 1")
    return Fraction(3, 2) * (k * k - 1)


def verify_lemma_2_4(n_floor: int = N_MIN, k_floor=K_FLOOR) -> CertificationReport:
    """``m^2 + n^2 > m^2 - n^2 >= m + n > (k+1) n`` and the integer floor it gives."""
    k_floor = exact(k_floor)
    if n_floor < 1 or k_floor < 1:
        raise ValueError("need n_floor >= 1 and k_floor >= 1")
    rep = CertificationReport("base floor")
    rep.check("2.1", "n-floor-residues",
              "unsettled pairs with n < 85 are impossible (residues mod 16)", _n_floor_by_residues())
    bound = (k_floor + 1) * n_floor
    a_min = math.floor(bound) + 1
    rep.check("2.2", "sum-floor", f"m + n > {dt(k_floor + 1)} * {n_floor}", True, bound)
    rep.check("2.2", "difference-vs-sum", "m^2 - n^2 = (m+n)(m-n) >= m + n since m - n >= 1", True)
    rep.check("2.2", "a-min", f"m^2 - n^2 >= {laurent.A_MIN} over the integers",
              a_min >= laurent.A_MIN, a_min, laurent.A_MIN)
    return rep


def _n_floor_by_residues() -> bool:
    # If lemma_2_3 does not apply, m + n = 1 mod 16.  Check that every such
    # residue class with mn = 2 mod 4 is caught by lemma_2_1 (n = 2 mod 4,
    # n < 600) or lemma_2_2 (m = 2 mod 4, n != 1 mod 8, n < 85).
    for m in range(16):
        for n in range(16):
            if (m * n) % 4 != 2 or (m + n) % 16 != 1:
                continue
            if n % 4 == 2:
                continue
            if m % 4 == 2 and n % 8 != 1:
                continue
            return False
    return True


def verify_x_z_gap(p: PythagoreanPair) -> CertificationReport:
    """Why ``x > z`` and ``x - z >= 3`` for a hypothetical solution of shape (even, 1, odd)."""
    rep = CertificationReport(f"x - z gap for (m, n) = ({p.m}, {p.n})")
    a, b, c = p.triple
    rep.check("3.2", "identity", "c^2 - a^2 = b^2", c * c - a * a == b * b, c * c - a * a, b * b)
    rep.check("3.2", "x-le-z-excluded", "(2mn)^2 > 2mn, so x <= z is impossible", b * b > b, b * b, b)
    rep.check("3.2", "parity", "x even and z odd make x - z odd", True)
    d1 = congruence_3_3(p, 1)
    if d1:
        # c = 1 mod 2mn: the pair is settled outright, which rules out any second solution
        rep.check("3.4", "x-z-ne-1", "c = 1 (mod 2mn): pair settled by lemma_2_5",
                  filter_lemma_2_5(p).settled, p.c % p.b, 1)
    else:
        rep.check("3.4", "x-z-ne-1", "c != 1 (mod 2mn): x - z = 1 contradicts c^(x-z) = 1 (mod 2mn)",
                  True, p.c % p.b, 1)
    return rep


def ratio_3_16(m: int, n: int, bits: int = rigor.DEFAULT_BITS) -> Interval:
    """``log(4mn) / (log(m^2+n^2) log(m^2-n^2))`` for a concrete pair."""
    return rigor.log(4 * m * n, bits) / (rigor.log(m * m + n * n, bits) * rigor.log(m * m - n * n, bits))


def _display_3_16(s: int, bits: int) -> Interval:
    L = rigor.log(s, bits)
    return (rigor.log(2, bits) / L + 1) / L


def verify_inequality_3_16(ctx: ProofContext = ProofContext(),
                           precision: Precision = DEFAULT_PRECISION) -> CertificationReport:
    """Certify ``log(4mn)/(log(m^2+n^2) log(m^2-n^2)) < 0.1266`` under the floors.

    The ratio is at most ``g(a) = (log 2 / log a + 1) / log a`` with
    ``a = m^2 - n^2``, and ``g`` decreases in ``a``.  Writing
    ``a = (m+n)(m-n)`` with ``m + n >= s_min`` and ``m - n > (k-1) n_min``
    gives an integer floor for ``a``.
    """
    rep = CertificationReport("small term")
    k = ctx.k_floor
    s_min = math.floor((k + 1) * ctx.n_min) + 1
    d_min = math.floor((k - 1) * ctx.n_min) + 1
    a_floor = s_min * d_min
    rep.check("3.16", "a-floor", f"m^2 - n^2 >= (m+n)(m-n) >= {s_min} * {d_min}", True, a_floor)
    rep.less("3.16", "bound", f"(log 2/log a + 1)/log a < {dt(SMALL_TERM)} at a = {a_floor}",
             lambda bits: (_display_3_16(a_floor, bits), SMALL_TERM), precision)
    rep.less("3.16", "monotone", "log a > log 2, so the bound decreases in a",
             lambda bits: (rigor.log(2, bits), rigor.log(a_floor, bits)), precision)
    m0 = math.floor(k * ctx.n_min) + 1
    while math.gcd(m0, ctx.n_min) != 1 or (m0 * ctx.n_min) % 4 != 2:
        m0 += 1
    rep.less("3.16", "boundary-pair", f"direct ratio at (m, n) = ({m0}, {ctx.n_min})",
             lambda bits: (ratio_3_16(m0, ctx.n_min, bits), SMALL_TERM), precision)
    # the intermediate display with m + n in place of m^2 - n^2 does not reach 0.1266
    rep.less("3.16", "display-with-sum", f"(log 2/log s + 1)/log s < {dt(SMALL_TERM)} at s = m + n = {s_min}",
             lambda bits: (_display_3_16(s_min, bits), SMALL_TERM), precision, blocking=False)
    return rep


def f_eval(t, bits: int = rigor.DEFAULT_BITS, consts: FConstants = F_DEFAULT) -> Interval:
    t = exact(t)
    if t <= 0:
        raise rigor.DomainError("f is defined for t > 0")
    inner = consts.offset + rigor.log(2 * t, bits)
    return Interval.exact(t, bits) - consts.small - consts.coefficient * inner**2


def f_sign(t, precision: Precision = DEFAULT_PRECISION, consts: FConstants = F_DEFAULT) -> Certainty:
    """TRUE if ``f(t) > 0`` is certified, FALSE if ``f(t) < 0``, else INDETERMINATE."""
    d = decide_less(lambda bits: (0, f_eval(t, bits, consts)), precision)
    if d.verdict is Certainty.TRUE:
        return Certainty.TRUE
    if d.rhs.hi < 0:
        return Certainty.FALSE
    return Certainty.INDETERMINATE


def verify_f_monotone(t_min=T_MONOTONE, consts: FConstants = F_DEFAULT,
                      precision: Precision = DEFAULT_PRECISION) -> CertificationReport:
    """``f'(t) = 1 - 2c (offset + log 2t)/t > 0`` for every ``t >= t_min``."""
    t_min = exact(t_min)
    if t_min < T_MONOTONE:
        raise ValueError(f"monotonicity is only claimed for t >= {T_MONOTONE}")
    rep = CertificationReport("f monotone")
    two_c = 2 * consts.coefficient
    rep.check("3.18", "derivative-coefficient", f"2 * {dt(consts.coefficient)} = {dt(two_c)}",
              two_c == 2 * consts.coefficient, two_c)
    if consts == F_DEFAULT:
        rep.exact_equal("3.18", "coefficient-identity", "29.6730 = 2 * 14.8365", two_c, exact("29.6730"))
    rep.less("3.18", "derivative-at-floor", f"{dt(two_c)} (offset + log 2t)/t < 1 at t = {dt(t_min)}",
             lambda bits: (two_c * (consts.offset + rigor.log(2 * t_min, bits)) / t_min, 1), precision)
    # (offset + log 2t)/t has derivative (1 - offset - log 2t)/t^2
    rep.less("3.18", "ratio-decreasing", f"1 - offset < log 2t for t >= {dt(t_min)}",
             lambda bits: (1 - consts.offset, rigor.log(2 * t_min, bits)), precision)
    return rep


class RootNotBracketed(RuntimeError):
    pass


def find_f_root(lo=T_MONOTONE, hi=T_CLAIM, tol=ROOT_TOL, consts: FConstants = F_DEFAULT,
                precision: Precision = DEFAULT_PRECISION, hi_limit=10**7) -> tuple[Fraction, Fraction]:
    """Certified bracket ``(t_lo, t_hi)`` around the zero of ``f`` above ``lo``.

    ``f`` is increasing on ``[250, inf)``; ``hi`` is doubled if ``f(hi) > 0``
    cannot be certified (possible under perturbed constants).  Bisection then
    narrows the bracket to width ``<= tol`` with every sign certified.
    """
    lo, hi, tol = exact(lo), exact(hi), exact(tol)
    if f_sign(lo, precision, consts) is not Certainty.FALSE:
        raise RootNotBracketed(f"f({dt(lo)}) < 0 not certified")
    while f_sign(hi, precision, consts) is not Certainty.TRUE:
        lo, hi = hi, 2 * hi
        if hi > hi_limit:
            raise RootNotBracketed("no sign change below the search limit")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = f_sign(mid, precision, consts)
        if s is Certainty.INDETERMINATE:
            # nudge off an unresolvable point; the bracket stays certified
            mid = mid + tol / 7
            s = f_sign(mid, precision, consts)
            if s is Certainty.INDETERMINATE:
                break
        if s is Certainty.TRUE:
            hi = mid
        else:
            lo = mid
    return lo, hi


def derive_threshold(bracket: tuple, granularity=GRANULARITY) -> Fraction:
    """Smallest multiple ``k`` of ``granularity`` with ``(3/2)(k^2 - 1) > t_hi``."""
    t_hi = exact(bracket[1])
    g = exact(granularity)
    need = 2 * t_hi / 3 + 1
    # k^2 > need  <=>  K^2 > need / g^2 with k = K g
    target = need / (g * g)
    K = math.isqrt(target.numerator // target.denominator)
    while Fraction(K * K) <= target:
        K += 1
    while K > 1 and Fraction((K - 1) ** 2) > target:
        K -= 1
    return K * g


@dataclass
class ContradictionReport:
    lower_bound_3_7: Fraction
    f_root_bracket: tuple[Fraction, Fraction]
    k_star: Optional[Fraction]
    report: CertificationReport
    verdict: bool = field(init=False)

    def __post_init__(self):
        self.verdict = self.report.ok and self.lower_bound_3_7 > self.f_root_bracket[1]

    @property
    def records(self):
        return self.report.records


def verify_full_chain(k_floor=K_FLOOR, consts: FConstants = F_DEFAULT, a_coeff=laurent.A_COEFF,
                      root_tol=ROOT_TOL, granularity=GRANULARITY,
                      precision: Precision = DEFAULT_PRECISION) -> ContradictionReport:
    """Run every link of the argument at the hypothesis floor."""
    k_floor = exact(k_floor)
    ctx = ProofContext(k_floor=k_floor)
    rep = CertificationReport("threshold chain")
    rep.extend(verify_lemma_2_4(ctx.n_min, k_floor))
    a_min = math.floor((k_floor + 1) * ctx.n_min) + 1

    lb = lower_ratio_bound(k_floor)
    rep.check("3.7", "ratio-lower-bound", f"(3/2)(k^2 - 1) at k = {dt(k_floor)}", True, lb)
    if k_floor == K_FLOOR:
        rep.exact_equal("3.7", "ratio-1421.46", "(3/2)(30.8^2 - 1) = 1421.46", lb, exact("1421.46"))

    # x / log(m^2+n^2) trails z / log(m^2-n^2) by less than 1/((m+n)^2 log(m+n)^2)
    gap = exact("5e-8")
    rep.less("3.12", "ratio-gap", f"1/((m+n)^2 log(m+n)^2) < 5e-8 at m + n = {a_min}",
             lambda bits: (1 / (Interval.exact(a_min, bits)**2 * rigor.log(a_min, bits)**2), gap), precision)
    rep.less("3.13", "ratio-floor", f"({dt(lb)} - 5e-8)/{dt(exact(a_coeff))} > {laurent.RATIO_MIN}",
             lambda bits: (laurent.RATIO_MIN, (lb - gap) / exact(a_coeff)), precision)

    chain_cfg = laurent.ChainConfig(a_min=max(a_min, 2), a_coeff=exact(a_coeff),
                                    coefficient=consts.coefficient, offset=consts.offset)
    rep.extend(laurent.verify_lemma_2_8_chain(chain_cfg, precision))
    rep.extend(verify_inequality_3_16(ctx, precision))
    rep.extend(verify_f_monotone(T_MONOTONE, consts, precision))

    try:
        bracket = find_f_root(T_MONOTONE, T_CLAIM, root_tol, consts, precision)
    except RootNotBracketed as exc:
        rep.check("3.18", "root-bracket", f"root of f bracketed: {exc}", False)
        return ContradictionReport(lb, (Fraction(0), Fraction(10**9)), None, rep)
    t_lo, t_hi = bracket
    rep.check("3.18", "root-bracket", f"f({dt(t_lo)}) < 0 < f({dt(t_hi)}), width <= {dt(exact(root_tol))}",
              t_hi - t_lo <= exact(root_tol), t_hi - t_lo, exact(root_tol))
    rep.check("3.18", "root-below-1420", f"t_hi <= {T_CLAIM}", t_hi <= T_CLAIM, t_hi, T_CLAIM)
    rep.less("3.18", "f-1420-positive", f"f({T_CLAIM}) > 0",
             lambda bits: (0, f_eval(T_CLAIM, bits, consts)), precision)

    k_star = derive_threshold(bracket, granularity)
    below = k_star - exact(granularity)
    rep.check("3.7", "threshold", f"smallest k (step {dt(exact(granularity))}) with (3/2)(k^2-1) > t_hi "
              f"is within the hypothesis k >= {dt(k_floor)}", k_star <= k_floor, k_star, k_floor)
    rep.check("3.7", "threshold-tight", f"k = {dt(below)} gives (3/2)(k^2-1) below the root bracket",
              lower_ratio_bound(below) < t_lo if below >= 1 else True, lower_ratio_bound(max(below, Fraction(1))),
              t_lo, blocking=False)
    rep.check("3.18", "contradiction", "(3/2)(k^2 - 1) exceeds t_hi", lb > t_hi, lb, t_hi)
    return ContradictionReport(lb, bracket, k_star, rep)
