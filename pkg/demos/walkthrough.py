"""
Building a general concept lattice
==================================

Load the bundled six-object context, group its objects into classes with
identical rows, and read every general concept off the class minterms.
"""

from importlib.resources import files

import gcl

ctx = gcl.read_context(files("gcl") / "data" / "sample.cxt")
lat = gcl.build(ctx)

# Objects 3 and 4 share a row, so five classes remain.
for k, cls in enumerate(lat.quotient.classes, 1):
    print(f"D{k} = {set(cls.members)}  minterm {lat.eta_atoms[k - 1]}")

print("n_F =", lat.n_F, " rank =", lat.rank, " members per intent = 2 **", lat.intent_exponent)

###############################################################################
# Any attribute expression lands in exactly one general intent. The mask
# names the classes it covers, class 1 leftmost.

text = "a*~e + c"
mask = lat.extent_of(lat.alphabet.fn(text))
print(text, "->", mask, sorted(lat.quotient.objects_of(mask)))

concept = lat.concept(mask)
print("lower bound:", gcl.format_dnf(concept.eta))
print("upper bound:", gcl.format_cnf(concept.rho))

###############################################################################
# The same lower bound arises as a product of irreducible disjunctions.

cover = gcl.irreducible_covers(lat.quotient, lat.top)
print(len(cover), "irreducible disjunctions with extent G:")
for clause in cover:
    print("  ", clause)
