"""Last syzygy shifts of I_Z through an artinian reduction.

For a general linear form L, A = R/(I_Z, L) is artinian with
dim A_t = ΔH_Z(t).  Its socle in degree t has the same dimension as the
multiplicity of R(-(t+n)) in the last module of a minimal free resolution of
I_Z, so the shift multiset B_{n-1} falls out of graded linear algebra alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .exactlin import DenseMatrix, FieldSpec, Subspace
from .polyring import HomogeneousForm, basis_size, monomial_basis, monomial_index, shift_map
from .scheme import FatPointScheme, HilbertFunction, SchemeError, delta_hf, hilbert_function, ideal_matrix
from .separator import nu, separator_degrees

MAX_ATTEMPTS = 32


class GenericityError(RuntimeError):
    """No sampled linear form gave an artinian reduction with the right dimensions."""


@dataclass(frozen=True)
class ArtinianAlgebra:
    """A = R'/J with R' = k[x_1..x_n] after eliminating x_0 through L.

    ``ideal[t]`` is J_t as a subspace of R'_t and ``dims[t] = dim A_t`` for
    t = 0..top+1 (the last entry is 0).
    """

    field: FieldSpec
    n: int
    linear_form: HomogeneousForm
    ideal: tuple
    dims: tuple
    top: int
    attempts: int

    def standard_monomials(self, t: int) -> list[tuple]:
        basis = monomial_basis(self.n, t)
        return [basis[c] for c in self.ideal[t].standard_coords()]


@dataclass(frozen=True)
class ShiftMultiset:
    shifts: tuple

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(sorted(int(j) for j in self.shifts)))
        if any(j < 1 for j in self.shifts):
            raise ValueError("shifts must be positive")

    def __len__(self):
        return len(self.shifts)

    def __iter__(self):
        return iter(self.shifts)

    def __str__(self):
        return "(" + ",".join(map(str, self.shifts)) + ")"


@dataclass(frozen=True)
class OSequence:
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))


def _lin_power(field: FieldSpec, lin: tuple, a: int) -> dict:
    """Coefficients of (sum lin[k] x_{k+1})^a as {exponents: coeff}."""
    nv = len(lin)
    out = {(0,) * nv: field(1)}
    for _ in range(a):
        nxt: dict = {}
        for mono, c in out.items():
            for k, lk in enumerate(lin):
                e = list(mono)
                e[k] += 1
                e = tuple(e)
                nxt[e] = field(nxt.get(e, 0) + c * lk)
        out = nxt
    return out


@lru_cache(maxsize=512)
def substitution_matrix(field: FieldSpec, coeffs: tuple, t: int) -> DenseMatrix:
    """R_t -> R'_t, x_0 -> -(c_1 x_1 + ... + c_n x_n)/c_0, on monomial bases."""
    c0 = field(coeffs[0])
    lin = tuple(field(-field(c) / c0) if field.is_rational else field(-c * pow(c0, -1, field.p)) for c in coeffs[1:])
    nv = len(coeffs)
    n = nv - 1
    target = monomial_index(n, t)
    N = len(target)
    powers = [_lin_power(field, lin, a) for a in range(t + 1)]
    flat = []
    for beta in monomial_basis(nv, t):
        row = [0] * N
        rest = beta[1:]
        for mono, c in powers[beta[0]].items():
            row[target[tuple(a + b for a, b in zip(mono, rest))]] = c
        flat.extend(row)
    return DenseMatrix.trusted(field, basis_size(nv, t), N, flat)


def _sample(field: FieldSpec, rng: random.Random, nv: int) -> tuple:
    hi = min(field.p - 1, 10**6) if not field.is_rational else 1000
    return tuple(rng.randint(1, hi) for _ in range(nv))


def _reduce(Z: FatPointScheme, coeffs: tuple, top: int) -> tuple[tuple, tuple]:
    pieces, dims = [], []
    for t in range(top + 1):
        Phi = substitution_matrix(Z.field, coeffs, t)
        K = ideal_matrix(Z, t)
        J = Subspace.span(K @ Phi) if K.rows else Subspace.span(DenseMatrix.zeros(Z.field, 0, Phi.cols))
        pieces.append(J)
        dims.append(J.codim)
    return tuple(pieces), tuple(dims)


@lru_cache(maxsize=256)
def artinian_reduction(Z: FatPointScheme, seed: int = 0) -> ArtinianAlgebra:
    """Reduce by a seeded random linear form, certified by dim A_t = ΔH_Z(t)."""
    if Z.s == 0:
        raise SchemeError("artinian reduction of the empty scheme")
    H = hilbert_function(Z)
    want = tuple(delta_hf(H))
    rng = random.Random(seed)
    for attempt in range(1, MAX_ATTEMPTS + 1):
        coeffs = _sample(Z.field, rng, Z.nvars)
        pieces, dims = _reduce(Z, coeffs, H.t_stab + 1)
        if dims == want:
            L = HomogeneousForm.linear(Z.field, coeffs)
            return ArtinianAlgebra(Z.field, Z.n, L, pieces, dims, H.t_stab, attempt)
    raise GenericityError(f"no nonzerodivisor found in {MAX_ATTEMPTS} samples over {Z.field}; try a larger field or another seed")


def socle_dims(Z: FatPointScheme, seed: int = 0) -> dict[int, int]:
    """Nonzero socle dimensions of the artinian reduction, by degree."""
    A = artinian_reduction(Z, seed)
    out = {}
    for t in range(A.top + 1):
        std = A.ideal[t].standard_coords()
        Q = A.ideal[t + 1].quotient_map()
        if Q.rows == 0:
            s = len(std)
        else:
            blocks = []
            for l in range(A.n):
                sh = shift_map(A.n, t, l)
                blocks.append(Q.select_columns([sh[c] for c in std]))
            s = len(std) - DenseMatrix.vstack(A.field, blocks, len(std)).rank()
        if s:
            out[t] = s
    return out


def last_betti_shifts(Z: FatPointScheme, seed: int = 0) -> ShiftMultiset:
    """{t + n repeated socle_dims[t] times}."""
    return ShiftMultiset(tuple(t + Z.n for t, s in socle_dims(Z, seed).items() for _ in range(s)))


def socle_vectors(B: ShiftMultiset | Sequence[int], tau: int, n: int) -> set[tuple]:
    """All nondecreasing tau-subsets of B (as a multiset), each shifted down by n."""
    shifts = sorted(B)
    if tau < 1:
        raise ValueError("tau must be positive")
    if tau > len(shifts):
        raise ValueError(f"tau = {tau} exceeds the {len(shifts)} available shifts")
    return {tuple(j - n for j in c) for c in combinations(shifts, tau)}


def macaulay_bound(a: int, t: int) -> int:
    """a^<t>: the largest possible next value after a in degree t."""
    if a < 0 or t < 1:
        raise ValueError("macaulay_bound needs a >= 0 and t >= 1")
    out = 0
    i = t
    while a > 0 and i > 0:
        k = i
        while comb(k + 1, i) <= a:
            k += 1
        a -= comb(k, i)
        out += comb(k + 1, i + 1)
        i -= 1
    return out


def is_o_sequence(h: OSequence | Sequence[int]) -> bool:
    vals = tuple(h.values if isinstance(h, OSequence) else h)
    if not vals or vals[0] != 1 or any(v < 0 for v in vals):
        return False
    for t in range(1, len(vals) - 1):
        if vals[t + 1] > macaulay_bound(vals[t], t):
            return False
    return True


def permissible_check(H: HilbertFunction, d: Sequence[int]) -> bool:
    """Whether H_d(t) = H(t) - #{d_j <= t} is a differentiable O-sequence.

    The all-zero H_d (the empty scheme) counts as permissible.
    """
    d = sorted(d)
    top = max([H.t_stab] + d) + 1
    Hd = [H(t) - sum(1 for x in d if x <= t) for t in range(top + 1)]
    if any(v < 0 for v in Hd):
        return False
    if not any(Hd):
        return True
    delta = [Hd[0]] + [Hd[t] - Hd[t - 1] for t in range(1, top + 1)]
    return is_o_sequence(delta)


def verify_teofat(Z: FatPointScheme, i: int, seed: int = 0) -> bool:
    """{d_j + n} is contained in the last syzygy shifts, with multiplicity."""
    B = list(last_betti_shifts(Z, seed))
    for d in separator_degrees(Z, i):
        if d + Z.n not in B:
            return False
        B.remove(d + Z.n)
    return True


def verify_rank_bound(Z: FatPointScheme, seed: int = 0) -> bool:
    m = max(Z.mults)
    return len(last_betti_shifts(Z, seed)) >= comb(m + Z.n - 2, Z.n - 1)


def verify_socle_subset_permissible(Z: FatPointScheme, i: int, seed: int = 0) -> bool:
    H = hilbert_function(Z)
    vecs = socle_vectors(last_betti_shifts(Z, seed), nu(Z, i), Z.n)
    return tuple(separator_degrees(Z, i)) in vecs and all(permissible_check(H, v) for v in vecs)
