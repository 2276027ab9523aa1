"""Countermodel extraction from failed proof search.

The reflection principle Box(Box p || Box Not p) --> (Box p || Box Not p) is
not a theorem of GL: provable decidability of p does not yield decidability
of p.  Proof search saturates an open branch, and the branch is read off as
a finite irreflexive transitive model, which the semantic evaluator then
confirms.
"""

from glprover import Refuted, holds, is_itf, model_to_dot, model_to_json, parse, search

f = parse("Box (Box p || Box (Not p)) --> (Box p || Box (Not p))")
result = search(f)
assert isinstance(result, Refuted)

m, w = result.countermodel, result.falsified_at
print("countermodel, falsified at world", w)
print(model_to_json(m, w))

# the witness: the root sees two worlds that disagree on p
print("ITF frame:", is_itf(m.frame))
print("formula false at root:", not holds(m, f, w))
for world in sorted(m.frame.worlds):
    mark = "p" if world in m.true_worlds("p") else "not p"
    print(f"  world {world}: {mark}")

print("\ngraph form (render with graphviz):\n")
print(model_to_dot(m, w))
