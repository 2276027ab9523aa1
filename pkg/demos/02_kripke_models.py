"""Finite Kripke models: forcing, frame classes, and the exhaustive oracle.

GL is the logic of finite irreflexive transitive (ITF) frames.  On finite
frames, "transitive + conversely well-founded" is the same as "transitive +
acyclic", and the Loeb scheme is valid on a frame exactly when the frame has
those properties.
"""

from glprover import (
    Falsified, make_model, holds, frame_valid, is_itf, is_transnt_finite,
    oracle_valid, parse, model_to_json,
)

# A three-world model: the root 0 sees 1 and 2, and p is true only at 2.
m = make_model(worlds=[0, 1, 2], rel=[(0, 1), (0, 2)], val={"p": [2]})

print("Box (Box p || Box Not p) at 0:", holds(m, parse("Box (Box p || Box (Not p))"), 0))
print("Box p || Box Not p      at 0:", holds(m, parse("Box p || Box (Not p)"), 0))

print("\nframe is ITF:", is_itf(m.frame))
print("frame is transitive+Noetherian:", is_transnt_finite(m.frame))

# Frame validity quantifies over every valuation and every world.
lob = parse("Box (Box p --> p) --> Box p")
print("Loeb scheme valid on this frame:", frame_valid(m.frame, lob))

# The oracle enumerates every ITF frame up to a world bound.  It is a
# necessary condition for theoremhood, and a countermodel factory for
# non-theorems.
print("\noracle on the Loeb scheme:", oracle_valid(lob, 3))

verdict = oracle_valid(parse("Box False"), 2)
assert isinstance(verdict, Falsified)
print("oracle countermodel for Box False, falsified at world", verdict.world)
print(model_to_json(verdict.model, verdict.world))
