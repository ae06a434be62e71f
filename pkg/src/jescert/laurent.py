"""Lower bounds for linear forms in two logarithms.

``Lambda = b1*log(a1) - b2*log(a2)`` with coprime integers ``a1, a2 >= 2``.
The general bound is Laurent's two-logarithm estimate with free parameters
``rho > 1`` and ``1/3 <= mu <= 1``; :func:`specialized_bound` is the closed
form obtained with ``rho = e**1.575`` and ``mu = 1/3`` once both bases are at
least 2704 and the scaled exponents exceed 240.

All quantities are carried as :class:`~jescert.rigor.Interval` values at a
caller-chosen working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional

from . import rigor
from .report import CertificationReport, decimal_text as dt
from .rigor import DEFAULT_PRECISION, Certainty, Interval, Precision, decide_less, exact, imax

# Constants of the specialized bound, exact decimals.
RHO_EXPONENT = exact("1.575")
MU = Fraction(1, 3)
A_COEFF = exact("5.8314")
B_CONST = exact("3.5880")
LOG_OFFSET = exact("1.8248")
BOUND_COEFF = exact("14.8365")
AGGREGATE_COEFF = exact("0.4363")
LAURENT_B_CONST = exact("1.81")
A_MIN = 2704
RATIO_MIN = 240


class HypothesisError(ValueError):
    """Inputs fail a hypothesis the bound depends on."""


@dataclass(frozen=True)
class LaurentParams:
    """Free parameters ``(rho, mu)``.

    ``rho`` is given either as ``exp(log_rho)`` with rational ``log_rho``
    (the usual case, keeping ``lambda`` exact) or as an exact rational.
    """

    mu: Fraction
    log_rho: Optional[Fraction] = None
    rho: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "mu", exact(self.mu))
        if (self.log_rho is None) == (self.rho is None):
            raise ValueError("give exactly one of log_rho and rho")
        if self.log_rho is not None:
            object.__setattr__(self, "log_rho", exact(self.log_rho))
            if self.log_rho <= 0:
                raise HypothesisError("rho must exceed 1")
        else:
            object.__setattr__(self, "rho", exact(self.rho))
            if self.rho <= 1:
                raise HypothesisError("rho must exceed 1")
        if not Fraction(1, 3) <= self.mu <= 1:
            raise HypothesisError(f"mu={self.mu} outside [1/3, 1]")

    @classmethod
    def from_exponent(cls, q, mu) -> LaurentParams:
        return cls(mu=exact(mu), log_rho=exact(q))

    def rho_interval(self, bits: int) -> Interval:
        if self.log_rho is not None:
            return rigor.exp(self.log_rho, bits)
        return Interval.exact(self.rho, bits)

    def log_rho_interval(self, bits: int) -> Interval:
        if self.log_rho is not None:
            return Interval.exact(self.log_rho, bits)
        return rigor.log(self.rho, bits)


SPECIALIZED_PARAMS = LaurentParams.from_exponent(RHO_EXPONENT, MU)


@dataclass(frozen=True)
class DerivedParams:
    delta: Interval
    lam: Interval
    delta_exact: Fraction
    lam_exact: Optional[Fraction]


def derive_params(p: LaurentParams, bits: int = rigor.DEFAULT_BITS) -> DerivedParams:
    delta = (1 + 2 * p.mu - p.mu**2) / 2
    if p.log_rho is not None:
        lam = delta * p.log_rho
        return DerivedParams(Interval.exact(delta, bits), Interval.exact(lam, bits), delta, lam)
    return DerivedParams(Interval.exact(delta, bits), delta * rigor.log(p.rho, bits), delta, None)


@dataclass(frozen=True)
class LinearForm:
    a1: int
    a2: int
    b1: int
    b2: int

    def __post_init__(self):
        if min(self.a1, self.a2) < 2:
            raise HypothesisError("bases must be at least 2")
        if min(self.b1, self.b2) < 1:
            raise HypothesisError("exponents must be positive")
        if gcd(self.a1, self.a2) != 1:
            raise HypothesisError(f"gcd({self.a1}, {self.a2}) != 1")

    def value(self, bits: int) -> Interval:
        return self.b1 * rigor.log(self.a1, bits) - self.b2 * rigor.log(self.a2, bits)

    def log_abs(self, bits: int) -> Interval:
        """Enclosure of log|Lambda|, raising the precision until Lambda's sign is known."""
        while True:
            lam = self.value(bits)
            if lam.lo > 0:
                return rigor.log(lam)
            if lam.hi < 0:
                return rigor.log(-lam)
            bits *= 2


@dataclass(frozen=True)
class BoundTerms:
    delta: Interval
    lam: Interval
    log_rho: Interval
    A1: Interval
    A2: Interval
    B: Interval
    H: Interval
    omega: Interval
    theta: Interval
    C0: Interval
    C: Interval
    Cprime: Interval

    def lower_bound(self) -> Interval:
        AAB2 = self.A1 * self.A2 * self.B**2
        return -self.C * AAB2 - rigor.sqrt(self.omega * self.theta) * self.B - rigor.log(self.Cprime * AAB2)


def omega_theta(H: Interval) -> tuple[Interval, Interval]:
    root = rigor.sqrt(1 + 1 / (4 * H**2))
    return 2 + 2 * root, 1 / (2 * H) + root


def c0_value(A1: Interval, A2: Interval, H: Interval, lam: Interval,
             omega: Interval, theta: Interval) -> Interval:
    """The constant ``C0`` as a function of its inputs.

    Increasing in ``lam``, ``omega`` and ``theta``; decreasing in ``A1``,
    ``A2`` and ``H``.  Callers exploit this to evaluate at extreme points.
    """
    w54 = omega * rigor.sqrt(rigor.sqrt(omega))
    t14 = rigor.sqrt(rigor.sqrt(theta))
    inner = (omega**2 / 9
             + 8 * lam * w54 * t14 / (3 * rigor.sqrt(A1 * A2 * H))
             + Fraction(4, 3) * (1 / A1 + 1 / A2) * lam * omega / H)
    return (omega / 6 + rigor.sqrt(inner) / 2) ** 2


def terms_from(A1: Interval, A2: Interval, B: Interval, derived: DerivedParams,
               log_rho: Interval, mu: Fraction) -> BoundTerms:
    """Derived constants ``H, omega, theta, C0, C, C'`` from ``A1, A2, B``."""
    lam, delta = derived.lam, derived.delta
    H = B / lam
    omega, theta = omega_theta(H)
    C0 = c0_value(A1, A2, H, lam, omega, theta)
    C = C0 * mu / (lam**3 * delta)
    Cprime = rigor.sqrt(C0 * omega * theta) / lam**3
    return BoundTerms(delta, lam, log_rho, A1, A2, B, H, omega, theta, C0, C, Cprime)


def minimal_B(ratio_sum: Interval, derived: DerivedParams, log_rho: Interval) -> Interval:
    lam = derived.lam
    half_log2 = rigor.log(2, lam.prec) / 2
    return log_rho + imax(half_log2, lam, LAURENT_B_CONST + rigor.log(lam) + rigor.log(ratio_sum))


def _certified(a, b, bits) -> bool:
    return rigor.certify_less(a, b) is Certainty.TRUE


def assemble_terms(inst: LinearForm, p: LaurentParams, a_coeff_override=None,
                   bits: int = rigor.DEFAULT_BITS) -> BoundTerms:
    """Evaluate every constant of the general bound for one instance.

    ``A_j`` is ``(rho + 1) log a_j`` unless ``a_coeff_override`` supplies a
    larger coefficient (5.8314 reproduces the specialized bound).  ``B`` is
    the smallest admissible value.
    """
    derived = derive_params(p, bits)
    log_rho = p.log_rho_interval(bits)
    if a_coeff_override is None:
        coeff = p.rho_interval(bits) + 1
    else:
        coeff = Interval.exact(exact(a_coeff_override), bits)
        if not _certified(p.rho_interval(bits) + 1, coeff, bits):
            raise HypothesisError(f"A coefficient {a_coeff_override} is not above rho + 1")
    one = Interval.exact(1, bits)
    A1 = imax(one, coeff * rigor.log(inst.a1, bits))
    A2 = imax(one, coeff * rigor.log(inst.a2, bits))
    if not _certified(derived.lam**2, A1 * A2, bits):
        raise HypothesisError("A1*A2 >= lambda^2 fails")
    B = minimal_B(inst.b1 / A2 + inst.b2 / A1, derived, log_rho)
    return terms_from(A1, A2, B, derived, log_rho, p.mu)


def laurent_lower_bound(inst: LinearForm, p: LaurentParams = SPECIALIZED_PARAMS,
                        bits: int = rigor.DEFAULT_BITS, a_coeff_override=None) -> Interval:
    """Enclosure ``L`` of the right-hand side; ``log|Lambda| >= L.lo``."""
    return assemble_terms(inst, p, a_coeff_override, bits).lower_bound()


def check_specialized_hypotheses(inst: LinearForm, precision: Precision = DEFAULT_PRECISION) -> None:
    if min(inst.a1, inst.a2) < A_MIN:
        raise HypothesisError(f"min(a1, a2) >= {A_MIN} fails")

    def ratios(bits):
        A1 = A_COEFF * rigor.log(inst.a1, bits)
        A2 = A_COEFF * rigor.log(inst.a2, bits)
        return inst.b1 / A2, inst.b2 / A1

    d = decide_less(lambda bits: (ratios(bits)[1], ratios(bits)[0]), precision)
    if d.verdict is not Certainty.TRUE:
        raise HypothesisError("b1/A2 > b2/A1 fails")
    d = decide_less(lambda bits: (RATIO_MIN, ratios(bits)[1]), precision)
    if d.verdict is not Certainty.TRUE:
        raise HypothesisError(f"b2/A1 > {RATIO_MIN} fails")


def specialized_bound(inst: LinearForm, bits: int = rigor.DEFAULT_BITS, *,
                      coefficient=BOUND_COEFF, offset=LOG_OFFSET,
                      check: bool = True) -> Interval:
    """Closed-form bound ``-c log a1 log a2 (offset + log(b1/log a2 + b2/log a1))**2``."""
    if check:
        check_specialized_hypotheses(inst, Precision(bits, max(bits, rigor.DEFAULT_MAX_BITS)))
    l1, l2 = rigor.log(inst.a1, bits), rigor.log(inst.a2, bits)
    inner = exact(offset) + rigor.log(inst.b1 / l2 + inst.b2 / l1)
    return -exact(coefficient) * l1 * l2 * inner**2


# -- certification of the specialized constants ---------------------------

@dataclass(frozen=True)
class ChainConfig:
    """Floor configuration from which the specialized constants are derived."""

    a_min: int = A_MIN
    ratio_min: int = RATIO_MIN
    a_coeff: Fraction = A_COEFF
    b_const: Fraction = B_CONST
    coefficient: Fraction = BOUND_COEFF
    offset: Fraction = LOG_OFFSET
    params: LaurentParams = SPECIALIZED_PARAMS


def verify_lemma_2_8_chain(config: ChainConfig = ChainConfig(),
                           precision: Precision = DEFAULT_PRECISION) -> CertificationReport:
    """Certify each displayed constant of the specialized bound in order.

    Each step is evaluated at the hypothesis floor (``a = a_min``,
    ``b1/A2 + b2/A1 = 2 * ratio_min``) where the quantity is extremal by
    monotonicity, using the tightest upstream enclosures rather than the
    rounded displays.
    """
    cfg = config
    p = cfg.params
    rep = CertificationReport("specialized-bound constants")

    derived = derive_params(p)
    rep.exact_equal("2.12", "delta", "delta = 7/9", derived.delta_exact, Fraction(7, 9))
    rep.exact_equal("2.12", "lambda", "lambda = 1.225", derived.lam_exact, exact("1.225"))

    def floor_terms(bits):
        d = derive_params(p, bits)
        log_rho = p.log_rho_interval(bits)
        A = cfg.a_coeff * rigor.log(cfg.a_min, bits)
        B = cfg.b_const + rigor.log(Interval.exact(2 * cfg.ratio_min, bits))
        return terms_from(A, A, B, d, log_rho, p.mu)

    rep.less("2.13", "a-coeff-admissible", f"rho + 1 < {dt(cfg.a_coeff)}",
             lambda bits: (p.rho_interval(bits) + 1, cfg.a_coeff), precision)
    rep.less("2.15", "b-const-admissible", f"log(rho) + 1.81 + log(lambda) < {dt(cfg.b_const)}",
             lambda bits: (p.log_rho_interval(bits) + LAURENT_B_CONST
                           + rigor.log(derive_params(p, bits).lam), cfg.b_const), precision)
    rep.less("2.15", "b-dominant-branch", "max(log(2)/2, lambda) < 1.81 + log(lambda) + log(2*ratio_min)",
             lambda bits: (imax(rigor.log(2, bits) / 2, derive_params(p, bits).lam),
                           LAURENT_B_CONST + rigor.log(derive_params(p, bits).lam)
                           + rigor.log(2 * cfg.ratio_min, bits)), precision)
    rep.less("2.5", "lambda-squared", "lambda^2 < A1*A2",
             lambda bits: (derive_params(p, bits).lam**2, floor_terms(bits).A1**2), precision)
    rep.less("2.14", "a-floor", "A_j > 46.0803",
             lambda bits: (exact("46.0803"), floor_terms(bits).A1), precision)
    rep.less("2.16", "b-floor", "B > 9.7617",
             lambda bits: (exact("9.7617"), floor_terms(bits).B), precision)
    rep.less("2.17", "h-floor", "H > 7.9688",
             lambda bits: (exact("7.9688"), floor_terms(bits).H), precision)
    rep.less("2.18", "omega-ceiling", "omega < 4.0040",
             lambda bits: (floor_terms(bits).omega, exact("4.0040")), precision)
    rep.less("2.18", "theta-ceiling", "theta < 1.0648",
             lambda bits: (floor_terms(bits).theta, exact("1.0648")), precision)
    rep.less("2.19", "c0-ceiling", "C0 < 1.8706",
             lambda bits: (floor_terms(bits).C0, exact("1.8706")), precision)
    rep.less("2.20", "c-ceiling", "C < 0.4361",
             lambda bits: (floor_terms(bits).C, exact("0.4361")), precision)
    rep.less("2.20", "cprime-ceiling", "C' < 2.0829",
             lambda bits: (floor_terms(bits).Cprime, exact("2.0829")), precision)

    def sqrt_term(bits):
        t = floor_terms(bits)
        return rigor.sqrt(t.omega * t.theta) / (t.A1 * t.A2 * t.B)

    def log_term(bits):
        # log(C' X)/X is decreasing once C' X > e, so the floor of X gives the ceiling
        t = floor_terms(bits)
        X = t.A1 * t.A2 * t.B**2
        return rigor.log(t.Cprime * X) / X

    rep.less("2.22", "sqrt-term", "sqrt(omega*theta)/(A1*A2*B) < 1.0026e-4",
             lambda bits: (sqrt_term(bits), exact("1.0026e-4")), precision)
    rep.less("2.23", "log-term-monotone", "e < C' A1 A2 B^2 at the floor",
             lambda bits: (rigor.exp(1, bits), (lambda t: t.Cprime * t.A1 * t.A2 * t.B**2)(floor_terms(bits))),
             precision)
    rep.less("2.23", "log-term", "log(C' A1 A2 B^2)/(A1 A2 B^2) < 0.6401e-4",
             lambda bits: (log_term(bits), exact("0.6401e-4")), precision)
    rep.less("2.24", "aggregate", f"C + small terms < {dt(AGGREGATE_COEFF)}",
             lambda bits: (floor_terms(bits).C + sqrt_term(bits) + log_term(bits), AGGREGATE_COEFF), precision)
    rep.less("2.24", "closed-form-coefficient", f"{dt(AGGREGATE_COEFF)} * a_coeff^2 <= {dt(cfg.coefficient)}",
             lambda bits: (AGGREGATE_COEFF * cfg.a_coeff**2, cfg.coefficient), precision, strict=False)
    rep.less("2.24", "closed-form-offset", f"b_const - log(a_coeff) <= {dt(cfg.offset)}",
             lambda bits: (cfg.b_const - rigor.log(cfg.a_coeff, bits), cfg.offset), precision, strict=False)
    return rep


# -- stress instances ------------------------------------------------------

def continued_fraction(x: Fraction, max_terms: int = 64) -> list[int]:
    terms = []
    while len(terms) < max_terms:
        a = x.numerator // x.denominator
        terms.append(a)
        frac = x - a
        if frac == 0:
            break
        x = 1 / frac
    return terms


def convergents(terms) -> Iterator[Fraction]:
    p0, q0, p1, q1 = 1, 0, terms[0], 1
    yield Fraction(p1, q1)
    for a in terms[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield Fraction(p1, q1)


def log_ratio_convergents(a1: int, a2: int, bits: int = 512, max_terms: int = 40) -> list[Fraction]:
    """Convergents ``b1/b2`` of ``log a2 / log a1``, only those the precision certifies.

    A convergent is kept while the enclosure of the ratio lies strictly
    inside a single cylinder of the expansion, i.e. the partial quotients
    computed from both endpoints agree.
    """
    r = rigor.log(a2, bits) / rigor.log(a1, bits)
    lo_terms = continued_fraction(r.lo_fraction(), max_terms)
    hi_terms = continued_fraction(r.hi_fraction(), max_terms)
    agreed = []
    for s, t in zip(lo_terms, hi_terms):
        if s != t:
            break
        agreed.append(s)
    # the last agreed quotient may still be truncated; drop it
    agreed = agreed[:-1]
    return list(convergents(agreed)) if agreed else []
