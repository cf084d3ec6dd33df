"""Walk through a doubled 2x3 grid: Hilbert function, separators, levels.

Run with ``python demos/01_hilbert_and_separators.py``.
"""

from __future__ import annotations

from fatsep.cischeme import load_fixture
from fatsep.scheme import delta_hf, hilbert_function, reduce_multiplicity
from fatsep.separator import minimal_separators, separating_set

# Six points of a 2x3 grid, each taken with multiplicity 2 (degree 18).
Z = load_fixture("example2")
print("points:", Z.points)
print("multiplicities:", Z.mults)

H = hilbert_function(Z)
print("H_Z  :", H.values)
print("ΔH_Z :", delta_hf(H))

# Lowering the first point to multiplicity 1 loses two conditions; the
# degrees where H drops are exactly the separator degrees.
Zp = reduce_multiplicity(Z, 0)
print("H_Z' :", hilbert_function(Zp).values)

S = minimal_separators(Z, 0)
print("separator degrees:", S.profile)
for F in S.forms:
    print("  ", F)

# The separating set peels the point one multiplicity level at a time.
print("separating set:", separating_set(Z, 0))
