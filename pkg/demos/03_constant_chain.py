"""Certify every constant of the closed-form bound at the hypothesis floor."""

from jescert import laurent
from jescert.laurent import ChainConfig

rep = laurent.verify_lemma_2_8_chain()
for r in rep.records:
    print(f"{r.verdict:15} {r.id:30} {r.claim}")
print("all certified:", rep.ok)

# lowering the base floor breaks the chain where it should
weak = laurent.verify_lemma_2_8_chain(ChainConfig(a_min=100))
print("a_min = 100:", [r.id for r in weak.records if not r.ok])
