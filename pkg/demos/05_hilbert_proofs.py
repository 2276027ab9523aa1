"""Hilbert-style proof objects and the independent proof checker.

A proof is a sequence of steps: axiom-schema instances, modus ponens, and
necessitation.  The checker recomputes every justification, so a proof file
is a self-contained certificate.
"""

from glprover import (
    Box, FALSE, Imp, NecStep, HilbertProof,
    check_proof, check_proof_detailed, imp_refl_proof, match_axiom,
    proof_to_json, verum_proof, parse,
)

# schema recognition: least matching schema id
for text in ("p --> q --> p", "True <-> False --> False", "Box (Box p --> p) --> Box p", "p && q"):
    print(f"match_axiom({text!r}) = {match_axiom(parse(text))}")

# the classical derivation of p --> p, in five steps
pf = imp_refl_proof(parse("p"))
print("\np --> p proof checks to:", check_proof(pf))

# extend it by necessitation: |- Box (p --> p)
boxed = HilbertProof(pf.steps + (NecStep(len(pf.steps) - 1, Box(Imp(parse("p"), parse("p")))),))
print("after necessitation:", check_proof(boxed))

# tampering is caught with a step-level report
from glprover import AxiomStep
broken = HilbertProof((AxiomStep(12, parse("Box p --> p")),))
print("tampered proof:", check_proof_detailed(broken))

# proofs serialize to JSON certificates (see the shipped files in proofs/)
print("\nJSON certificate of |- True:\n")
print(proof_to_json(verum_proof()))
