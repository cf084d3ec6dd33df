"""Last syzygy shifts from an artinian reduction, compared with separators.

Run with ``python demos/02_last_syzygies.py``.
"""

from __future__ import annotations

from fatsep.cischeme import CI37_POINT, load_fixture
from fatsep.resolution import artinian_reduction, last_betti_shifts, permissible_check, socle_dims, socle_vectors
from fatsep.scheme import hilbert_function
from fatsep.separator import separator_degrees

# A 3x7 grid minus one point, doubled (degree 40).
Z = load_fixture("ci37")
A = artinian_reduction(Z, seed=0)
print("general linear form:", A.linear_form)
print("dim A_t            :", A.dims)
print("socle dims         :", socle_dims(Z))

B = last_betti_shifts(Z)
print("last shifts B      :", B)

# Every separator profile is one of the candidate socle vectors, and every
# candidate passes the permissibility test.
i = CI37_POINT
d = separator_degrees(Z, i)
vecs = socle_vectors(B, len(d), Z.n)
print(f"profile at point {i + 1}:", d)
print("candidates          :", sorted(vecs))
print("profile among them  :", tuple(d) in vecs)
H = hilbert_function(Z)
print("all permissible     :", all(permissible_check(H, v) for v in vecs))
