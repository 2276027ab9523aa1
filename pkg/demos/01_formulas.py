"""Working with modal formulas: parsing, printing, subformulas.

The concrete syntax follows the usual code-level notation for GL:
False, True, Not, &&, ||, -->, <->, Box, Diam.
"""

from glprover import Diam, Not, Box, parse, pretty, sort_key, subformulas, subsentences

# The Loeb axiom, the heart of provability logic.
lob = parse("Box (Box p --> p) --> Box p")
print("parsed:   ", lob)

# Printing is canonical and minimally parenthesized; parse(pretty(f)) == f.
print("reprints: ", pretty(lob))
assert parse(pretty(lob)) == lob

# Diam is sugar: Diam A abbreviates Not (Box (Not A)).
consistency = parse("Diam True")
print("Diam True desugars to:", Not(Box(Not(parse("True")))) == consistency)

# Subformulas are computed as the reflexive-transitive closure of the
# immediate subterm relation; subsentences add the single negations.
print("\nsubformulas of the Loeb axiom:")
for f in sorted(subformulas(lob), key=sort_key):
    print("   ", f)

print("\nsubsentences of Box p:")
for f in sorted(subsentences(parse("Box p")), key=sort_key):
    print("   ", f)
