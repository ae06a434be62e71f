"""The contradiction at k = 30.8, and how it fails under perturbation."""

from fractions import Fraction

from jescert import chain
from jescert.report import decimal_text

res = chain.verify_full_chain()
lo, hi = res.f_root_bracket
print(f"(3/2)(30.8^2 - 1) = {decimal_text(res.lower_bound_3_7)}  root of f in [{float(lo):.5f}, {float(hi):.5f}]")
print("k* =", decimal_text(res.k_star), " verdict:", res.verdict)
print("k = 30.7 gives", float(chain.lower_ratio_bound("30.7")), "which is below the root")

for label, kwargs in [("k floor 30", dict(k_floor=30)),
                      ("coefficient 20", dict(consts=chain.FConstants(coefficient=Fraction(20))))]:
    r = chain.verify_full_chain(**kwargs)
    failed = [x.id for x in r.records if not x.ok]
    print(f"{label}: verdict {r.verdict}, failing records {failed}")
