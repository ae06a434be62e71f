"""Lower bounds for |b1 log a1 - b2 log a2| on tiny linear forms.

Continued-fraction convergents of log a2 / log a1 give exponent pairs where
the form nearly cancels.  Both bounds must sit below the true value.
"""

from jescert import laurent
from jescert.laurent import LinearForm

a1, a2 = 2707, 2705
for c in laurent.log_ratio_convergents(a1, a2)[4:9]:
    inst = LinearForm(a1, a2, c.numerator, c.denominator)
    direct = inst.log_abs(384)
    general = laurent.laurent_lower_bound(inst)
    line = f"b = ({inst.b1}, {inst.b2}): log|Lambda| = {float(direct.mid):9.3f}  general >= {float(general.mid):12.1f}"
    try:
        line += f"  closed form >= {float(laurent.specialized_bound(inst).mid):12.1f}"
    except laurent.HypothesisError as exc:
        line += f"  closed form n/a ({exc})"
    print(line)
