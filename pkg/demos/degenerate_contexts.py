"""
Degenerate contexts and the brute-force oracle
==============================================

Dropping attributes can make every attribute combination occupied; then each
general intent holds a single function and contextual truth is plain truth.
"""

from importlib.resources import files

import numpy as np

import gcl
from gcl.oracle import random_context

ctx = gcl.read_context(files("gcl") / "data" / "sample.cxt")

small = gcl.build(gcl.restrict(ctx, ["c", "e"]))
print(gcl.degeneracy_report(small))
print("bounds for {2,5}:", small.eta({"2", "5"}), "|", small.rho({"2", "5"}))

# Padding with one fictitious object per empty minterm also gives a degenerate context.
ref = gcl.referential_context(gcl.build(ctx))
print(len(ref.objects) - len(ctx.objects), "objects added;",
      "degenerate:", gcl.degeneracy_report(gcl.build(ref)).degenerate)

###############################################################################
# The oracle enumerates every function over up to four attributes and
# compares object sets computed row by row against the lattice formulas.

rng = np.random.default_rng(7)
for _ in range(3):
    lat = gcl.build(random_context(5, 3, rng))
    report = gcl.verify(lat)
    print(f"n_F={lat.n_F}: {report.functions_checked} functions, "
          f"{report.pairs_checked} pairs, passed={report.passed}")
