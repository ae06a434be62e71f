"""Directed-rounding intervals and adaptive comparisons.

Every transcendental value is carried as a pair of MPFR numbers rounded
outward, so a comparison either certifies or admits it cannot decide yet.
"""

from fractions import Fraction

from jescert import rigor
from jescert.rigor import Interval, Precision

# log 2703 at 128 bits: a tight enclosure, printed with outward rounding
iv = rigor.enclose_log(2703, Precision(128))
print("log 2703 in", iv.format(20))

# exp(1.575) enters exactly; the decimal is never rounded to binary first
rho = rigor.enclose_exp("1.575")
print("exp(1.575) in", rho.format(12))

# arithmetic stays sound across sign changes
print("[-1, 2] * [3, 4] =", (Interval.hull(-1, 2) * Interval.hull(3, 4)).format(4))

# log 3 against a bound 1e-70 above it: 64 bits cannot tell, so precision doubles
upper = rigor.log(3, 1024).hi_fraction() + Fraction(1, 10**70)
d = rigor.decide_less(lambda bits: (rigor.log(3, bits), upper), Precision(64, 1024))
print("log 3 < log 3 + 1e-70:", d.verdict.value, "at", d.bits, "bits")

d = rigor.decide_less(lambda bits: (rigor.log(2, bits), rigor.log(2, bits)), Precision(64, 256))
print("log 2 < log 2:", d.verdict.value, "after reaching", d.bits, "bits")
