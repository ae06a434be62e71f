"""Exact arithmetic for ``(m^2 - n^2)^x + (2mn)^y = (m^2 + n^2)^z``.

Pair validation, the exhaustive exponent search, and the congruence and
divisor criteria that settle the equation for whole families of pairs.
Everything here is integer arithmetic; no floating point is involved.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional

TRIAL_LIMIT = 10**6
DEFAULT_CAP = 100
DEFAULT_BIT_BUDGET = 10**6

CRITERIA = ("lemma_2_5", "lemma_2_3", "lemma_2_1", "lemma_2_2", "theorem_30_8")

# Earlier partial results for mn = 2 (mod 4) and how they are handled here.
SURVEY_ITEMS = {
    "i": "not implemented (m^2+n^2 odd prime power)",
    "ii": "not implemented ((m, n) = (5, 2) mod 8)",
    "iii": "not implemented (m + n = 1 mod 16 with y = 1)",
    "iv": "used as lemma_2_6 search pruning",
    "v": "not implemented",
    "vi": "not implemented",
    "vii": "not implemented",
    "viii": "subsumed by lemma_2_1",
    "ix": "lemma_2_1",
    "x": "superseded by theorem_30_8",
    "xi": "not implemented",
    "xii": "not implemented",
}


class InvalidPair(ValueError):
    pass


class HypothesisError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, z: int, bits: int):
        super().__init__(f"c^{z} has {bits} bits, over the search budget")
        self.z = z
        self.bits = bits


@dataclass(frozen=True)
class PythagoreanPair:
    m: int
    n: int

    def __post_init__(self):
        m, n = self.m, self.n
        if not (isinstance(m, int) and isinstance(n, int)):
            raise InvalidPair("m and n must be integers")
        if n < 1:
            raise InvalidPair(f"n = {n} must be positive")
        if m <= n:
            raise InvalidPair(f"m = {m} must exceed n = {n}")
        if math.gcd(m, n) != 1:
            raise InvalidPair(f"gcd({m}, {n}) = {math.gcd(m, n)}")
        if (m - n) % 2 == 0:
            raise InvalidPair(f"m = {m} and n = {n} have the same parity")

    @property
    def a(self) -> int:
        return self.m * self.m - self.n * self.n

    @property
    def b(self) -> int:
        return 2 * self.m * self.n

    @property
    def c(self) -> int:
        return self.m * self.m + self.n * self.n

    @property
    def triple(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c

    @property
    def mn_2_mod_4(self) -> bool:
        return self.m * self.n % 4 == 2


def make_pair(m: int, n: int) -> PythagoreanPair:
    return PythagoreanPair(m, n)


class Exponents(NamedTuple):
    x: int
    y: int
    z: int


TRIVIAL = Exponents(2, 2, 2)


def check_solution(p: PythagoreanPair, e: Exponents) -> bool:
    x, y, z = e
    return p.a**x + p.b**y == p.c**z


def is_exact_power_of(N: int, base: int) -> Optional[int]:
    """Return ``x`` with ``base**x == N``, or None.

    The candidate exponent comes from a floating estimate of
    ``log N / log base``; only an exact power check can accept it.
    """
    if N < 1 or base < 2:
        raise ValueError("need N >= 1 and base >= 2")
    if N == 1:
        return 0
    if N % base:
        return None
    est = round(math.log(N) / math.log(base))
    for x in (est, est - 1, est + 1):
        if x >= 1 and base**x == N:
            return x
    return None


def exhaustive_search(p: PythagoreanPair, max_z: int = DEFAULT_CAP, max_y: int = DEFAULT_CAP,
                      bit_budget: int = DEFAULT_BIT_BUDGET, prune: bool = False) -> list[Exponents]:
    """All solutions with ``z <= max_z`` and ``y <= max_y``, sorted.

    For each ``(z, y)`` the remaining term ``c^z - b^y`` is tested for being
    a power of ``a``.  With ``prune=True`` only ``(2, 2, 2)`` and exponent
    shapes allowed by :func:`prune_lemma_2_6` are kept; this is only
    meaningful when ``mn = 2 (mod 4)``.
    """
    if max_z < 2 or max_y < 2:
        raise ValueError("caps must be at least 2")
    a, b, c = p.triple
    found = []
    cz = 1
    for z in range(1, max_z + 1):
        cz *= c
        if cz.bit_length() > bit_budget:
            raise SearchBudgetExceeded(z, cz.bit_length())
        if prune and z % 2 == 0 and z != 2:
            continue
        by = 1
        for y in range(1, max_y + 1):
            by *= b
            if by >= cz:
                break
            if prune and y != 1 and (y, z) != (2, 2):
                continue
            x = is_exact_power_of(cz - by, a)
            if x:
                e = Exponents(x, y, z)
                if not prune or e == TRIVIAL or prune_lemma_2_6(e):
                    found.append(e)
    return sorted(found)


# -- number theory helpers ---------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, finishing large cofactors with sympy."""
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n and d <= TRIAL_LIMIT:
        for q in (d, d + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        d += 6
    if n > 1:
        if d * d > n or is_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            from sympy import factorint

            for q, k in factorint(n).items():
                out[int(q)] = out.get(int(q), 0) + k
    return dict(sorted(out.items()))


def carmichael(n: int) -> int:
    lam = 1
    for p, k in factorize(n).items():
        if p == 2:
            part = 1 if k == 1 else 2 if k == 2 else 2 ** (k - 2)
        else:
            part = (p - 1) * p ** (k - 1)
        lam = lam * part // math.gcd(lam, part)
    return lam


def multiplicative_order(c: int, M: int) -> int:
    if math.gcd(c, M) != 1:
        raise ValueError(f"{c} is not a unit mod {M}")
    if M == 1:
        return 1
    order = carmichael(M)
    for p in factorize(order):
        while order % p == 0 and pow(c, order // p, M) == 1:
            order //= p
    return order


# -- criteria ---------------------------------------------------------------

@dataclass(frozen=True)
class FilterVerdict:
    criterion: str
    settled: bool
    witness: Optional[int] = None


def filter_lemma_2_1(p: PythagoreanPair) -> FilterVerdict:
    return FilterVerdict("lemma_2_1", p.n % 4 == 2 and p.n < 600)


def filter_lemma_2_2(p: PythagoreanPair) -> FilterVerdict:
    return FilterVerdict("lemma_2_2", p.m % 4 == 2 and p.n % 8 != 1 and p.n < 85)


def filter_lemma_2_3(p: PythagoreanPair) -> FilterVerdict:
    """Settled when ``m + n`` has a prime factor not congruent to 1 mod 16.

    The witness is the smallest such prime.
    """
    if not p.mn_2_mod_4:
        raise HypothesisError(f"mn = {p.m * p.n} is not 2 mod 4")
    for q in factorize(p.m + p.n):
        if q % 16 != 1:
            return FilterVerdict("lemma_2_3", True, q)
    return FilterVerdict("lemma_2_3", False)


def filter_lemma_2_5(p: PythagoreanPair) -> FilterVerdict:
    return FilterVerdict("lemma_2_5", p.c % p.b == 1)


def filter_theorem(p: PythagoreanPair) -> FilterVerdict:
    # m > 30.8 n, compared over the integers
    return FilterVerdict("theorem_30_8", p.mn_2_mod_4 and 10 * p.m > 308 * p.n)


def prune_lemma_2_6(e: Exponents) -> bool:
    """Exponent shape any solution other than (2,2,2) must have when mn = 2 mod 4."""
    return e.x % 2 == 0 and e.y == 1 and e.z % 2 == 1


def congruence_3_3(p: PythagoreanPair, d: int) -> bool:
    """``c^d = 1 (mod 2mn)``."""
    if d < 1:
        raise ValueError("d must be positive")
    return pow(p.c, d, p.b) == 1 % p.b


def order_of_c(p: PythagoreanPair) -> int:
    return multiplicative_order(p.c, p.b)


_FILTERS = {
    "lemma_2_5": filter_lemma_2_5,
    "lemma_2_3": filter_lemma_2_3,
    "lemma_2_1": filter_lemma_2_1,
    "lemma_2_2": filter_lemma_2_2,
    "theorem_30_8": filter_theorem,
}


# -- survey -----------------------------------------------------------------

@dataclass(frozen=True)
class SurveyRecord:
    pair: PythagoreanPair
    verdicts: tuple[FilterVerdict, ...]

    @property
    def first_settling_criterion(self) -> Optional[str]:
        for v in self.verdicts:
            if v.settled:
                return v.criterion
        return None

    def to_dict(self) -> dict:
        p = self.pair
        row = {"m": p.m, "n": p.n, "a": p.a, "b": p.b, "c": p.c}
        for v in self.verdicts:
            row[v.criterion] = v.settled
        witness = next((v.witness for v in self.verdicts if v.witness is not None), None)
        row["witness"] = witness
        row["first_settling_criterion"] = self.first_settling_criterion
        return row


SURVEY_FIELDS = ("m", "n", "a", "b", "c", *CRITERIA, "witness", "first_settling_criterion")


def survey_pairs(m_max: int, m_min: int = 2) -> Iterator[PythagoreanPair]:
    """Valid pairs with ``mn = 2 (mod 4)``, ordered by ``m`` then ``n``."""
    for m in range(max(m_min, 2), m_max + 1):
        for n in range(1, m):
            if m * n % 4 == 2 and math.gcd(m, n) == 1:
                yield PythagoreanPair(m, n)


def survey_record(p: PythagoreanPair) -> SurveyRecord:
    return SurveyRecord(p, tuple(_FILTERS[name](p) for name in CRITERIA))


def _survey_block(bounds: tuple[int, int]) -> list[SurveyRecord]:
    lo, hi = bounds
    return [survey_record(p) for p in survey_pairs(hi, lo)]


def _blocks(m_max: int, size: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + size - 1, m_max)) for lo in range(2, m_max + 1, size)]


def survey(m_max: int, workers: int = 1, block: int = 25) -> Iterator[SurveyRecord]:
    """Apply every criterion to every pair with ``m <= m_max``.

    With ``workers > 1`` blocks of consecutive ``m`` values are evaluated in
    a process pool; ``Executor.map`` yields blocks in submission order, so the
    stream is identical for any worker count.
    """
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    blocks = _blocks(m_max, block)
    if workers <= 1:
        for b in blocks:
            yield from _survey_block(b)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk in pool.map(_survey_block, blocks):
            yield from chunk


def _search_one(args) -> tuple[PythagoreanPair, list[Exponents]]:
    p, max_z, max_y, bit_budget = args
    return p, exhaustive_search(p, max_z, max_y, bit_budget)


def search_many(pairs: Iterable[PythagoreanPair], max_z: int = DEFAULT_CAP, max_y: int = DEFAULT_CAP,
                bit_budget: int = DEFAULT_BIT_BUDGET,
                workers: int = 1) -> Iterator[tuple[PythagoreanPair, list[Exponents]]]:
    """Run :func:`exhaustive_search` over many pairs, results in input order."""
    jobs = [(p, max_z, max_y, bit_budget) for p in pairs]
    if workers <= 1:
        yield from map(_search_one, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_search_one, jobs, chunksize=8)
