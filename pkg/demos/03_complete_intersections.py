"""Powers of complete intersections: closed forms against direct computation.

Run with ``python demos/03_complete_intersections.py``.
"""

from __future__ import annotations

from fatsep.cischeme import CIType, GridSpec, ci_power_shifts, ci_rank, ci_separator_profile, grid_ci, power_scheme
from fatsep.resolution import last_betti_shifts
from fatsep.separator import separator_degrees

for degrees, m in [((2, 3), 2), ((2, 2, 3), 2), ((2, 3), 3)]:
    ct = CIType(degrees)
    X, _ = grid_ci(GridSpec.default(ct))
    Z = power_scheme(X, m)
    formula = tuple(ci_power_shifts(ct, m))
    computed = tuple(last_betti_shifts(Z))
    print(f"CI{degrees} power {m}: deg = {Z.degree}, rank = {ci_rank(m, Z.n)}")
    print("  shifts  formula:", formula, " computed:", computed)
    print("  profile formula:", ci_separator_profile(ct, m), " at P_1:", separator_degrees(Z, 0))
