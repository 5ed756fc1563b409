"""
Checking implications against a context
=======================================

A rule ``lhs -> rhs`` holds when every class with ``lhs`` also has ``rhs``.
Refuted rules come back with a class that breaks them.
"""

from importlib.resources import files

import gcl

lat = gcl.build(gcl.read_context(files("gcl") / "data" / "sample.cxt"))

rules = """
c -> a
~e -> a + ~b*~d
d <-> a*c*e
b + c*d <-> e
c -> e
e -> c
"""

for result in gcl.check_rules(lat, rules):
    v = result.forward
    if v.allowed:
        note = f"{v.t_class}, {v.informative_class}"
    else:
        note = f"broken by class {set(lat.quotient.classes[v.witness_class].members)}"
    if result.bidirectional:
        note += f" / backward {result.backward.t_class or 'refuted'}"
    print(f"{result.text:20s} holds={result.holds!s:5s} {note}")

###############################################################################
# Formal-concept and rough-set nodes sit inside the general lattice.

for c in gcl.fcl_concepts(lat):
    print("FCL", sorted(c.extent), sorted(c.intent), "(appended)" if c.appended else "")
for c in gcl.rsl_concepts(lat):
    print("RSL", sorted(c.extent), sorted(c.intent), "(appended)" if c.appended else "")
