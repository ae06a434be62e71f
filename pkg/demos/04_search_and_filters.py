"""Exhaustive exponent search and the divisibility criteria on a few pairs."""

from jescert import jesmanowicz as jz

for m, n in [(2, 1), (3, 2), (6, 1), (15, 2), (14, 3), (94, 3)]:
    p = jz.make_pair(m, n)
    sols = jz.exhaustive_search(p, 40, 40)
    rec = jz.survey_record(p) if p.mn_2_mod_4 else None
    first = rec.first_settling_criterion if rec else "-"
    print(f"({m}, {n}) triple {p.triple}: solutions {sols}, order of c mod 2mn = {jz.order_of_c(p)}, "
          f"first criterion {first}")

counts = {}
for r in jz.survey(300):
    counts[r.first_settling_criterion] = counts.get(r.first_settling_criterion, 0) + 1
print("first settling criterion, m <= 300:", counts)
