"""Separators of fat points.

Lowering the multiplicity of P_i by one turns Z into Z'.  A separator is a
form in I_{Z'} but not in I_Z.  I_{Z'}/I_Z is minimally generated by
nu = C(m_i+n-2, n-1) separators, and their sorted degrees (the separator
profile) can be read off the two Hilbert functions alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .exactlin import DenseMatrix, Subspace
from .polyring import HomogeneousForm, basis_size, coeff_vector, evaluate, monomial_basis, monomial_index, shift_map
from .scheme import (
    FatPointScheme,
    HilbertFunction,
    InconsistencyError,
    hilbert_function,
    ideal_matrix,
    jet_matrix,
    membership,
    reduce_multiplicity,
)


@dataclass(frozen=True)
class SeparatorProfile:
    """Sorted degrees (d_1 <= ... <= d_nu) of a minimal set of separators."""

    degrees: tuple

    def __post_init__(self):
        degs = tuple(int(d) for d in self.degrees)
        if any(d < 0 for d in degs) or list(degs) != sorted(degs):
            raise ValueError(f"profile must be nondecreasing and nonnegative: {degs}")
        object.__setattr__(self, "degrees", degs)

    def __len__(self):
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def count(self, t: int) -> int:
        return self.degrees.count(t)

    def count_upto(self, t: int) -> int:
        return sum(1 for d in self.degrees if d <= t)

    def __str__(self):
        return "(" + ",".join(map(str, self.degrees)) + ")"


@dataclass(frozen=True)
class SeparatorSet:
    forms: tuple
    profile: SeparatorProfile


@dataclass(frozen=True)
class SeparatingSet:
    """Profiles at levels h = 1..m_i, i.e. of Z_{m_i}, Z_{m_i-1}, ..., Z_1."""

    levels: tuple

    def __str__(self):
        return "{" + ",".join(str(p) for p in reversed(self.levels)) + "}"


def nu(Z: FatPointScheme, i: int) -> int:
    """deg Z - deg Z' = C(m_i+n-2, n-1)."""
    Z.check_index(i)
    return comb(Z.mults[i] + Z.n - 2, Z.n - 1)


def quotient_dim(Z: FatPointScheme, i: int, t: int) -> int:
    """dim (I_{Z'}/I_Z)_t = H_Z(t) - H_{Z'}(t)."""
    return hilbert_function(Z)(t) - hilbert_function(reduce_multiplicity(Z, i, 1))(t)


def profile_from_hfs(HZ: HilbertFunction, HZp: HilbertFunction) -> SeparatorProfile:
    """Entries equal to t number (H_Z - H_Z')(t) - (H_Z - H_Z')(t-1)."""
    top = max(HZ.t_stab, HZp.t_stab)
    degrees = []
    prev = 0
    for t in range(top + 1):
        q = HZ(t) - HZp(t)
        c = q - prev
        if c < 0 or q < 0:
            raise ValueError(f"inconsistent Hilbert functions at t={t}: quotient dimension {prev} -> {q}")
        degrees.extend([t] * c)
        prev = q
    return SeparatorProfile(tuple(degrees))


@lru_cache(maxsize=1024)
def separator_degrees(Z: FatPointScheme, i: int) -> SeparatorProfile:
    prof = profile_from_hfs(hilbert_function(Z), hilbert_function(reduce_multiplicity(Z, i, 1)))
    if len(prof) != nu(Z, i):
        raise InconsistencyError(f"profile {prof} has length {len(prof)}, expected {nu(Z, i)}")
    return prof


@lru_cache(maxsize=4096)
def normal_form_map(Z: FatPointScheme, t: int) -> tuple[DenseMatrix, tuple]:
    """RREF of the degree-t jet matrix and its pivot columns.

    As a map R_t -> k^{H_Z(t)} it has kernel (I_Z)_t, and unit vector k is the
    class of the pivot monomial ``pivots[k]``; all computations modulo I_Z
    use these coordinates.
    """
    return jet_matrix(Z, t).rref()


@lru_cache(maxsize=4096)
def quotient_mult_maps(Z: FatPointScheme, t: int) -> tuple:
    """x_l : (R/I_Z)_{t-1} -> (R/I_Z)_t for each variable, one row per source basis element."""
    Qt, _ = normal_form_map(Z, t)
    _, piv = normal_form_map(Z, t - 1)
    return tuple(Qt.select_columns([shift_map(Z.nvars, t - 1, l)[p] for p in piv]).transpose() for l in range(Z.nvars))


def project(Z: FatPointScheme, t: int, rows: DenseMatrix) -> DenseMatrix:
    """Classes modulo (I_Z)_t of the given degree-t rows."""
    Qt, _ = normal_form_map(Z, t)
    return rows @ Qt.transpose()


def times_form(F: HomogeneousForm, monomials: Sequence[tuple]) -> DenseMatrix:
    """Rows mu * F for the given monomials mu (all of one degree)."""
    nv = F.nvars
    t = sum(monomials[0]) if monomials else 0
    target = monomial_index(nv, t + F.degree)
    N = len(target)
    terms = list(F.coeffs.items())
    flat = []
    for mu in monomials:
        row = [0] * N
        for nu_, c in terms:
            row[target[tuple(a + b for a, b in zip(mu, nu_))]] = c
        flat.extend(row)
    return DenseMatrix.trusted(F.field, len(monomials), N, flat)


def _lift_products(Z: FatPointScheme, prev: Subspace | None, t: int) -> list[DenseMatrix]:
    if prev is None or prev.dim == 0:
        return []
    return [prev.basis @ M for M in quotient_mult_maps(Z, t)]


def _span(Z: FatPointScheme, t: int, parts: list[DenseMatrix]) -> Subspace:
    H = hilbert_function(Z)(t)
    return Subspace.span(DenseMatrix.vstack(Z.field, parts, H)) if parts else Subspace.span(DenseMatrix.zeros(Z.field, 0, H))


@lru_cache(maxsize=256)
def quotient_pieces(Z: FatPointScheme, forms: tuple, top: int) -> tuple:
    """(I_Z + (forms))_t / (I_Z)_t inside (R/I_Z)_t, for t = 0..top."""
    pieces = []
    prev = None
    for t in range(top + 1):
        parts = _lift_products(Z, prev, t)
        own = [F for F in forms if F.degree == t]
        if own:
            parts.append(project(Z, t, DenseMatrix.from_rows(Z.field, [coeff_vector(F) for F in own], basis_size(Z.nvars, t))))
        prev = _span(Z, t, parts)
        pieces.append(prev)
    return tuple(pieces)


@lru_cache(maxsize=256)
def minimal_separators(Z: FatPointScheme, i: int, reverse: bool = False) -> SeparatorSet:
    """Explicit minimal separators of P_i of multiplicity m_i.

    Degree by degree, candidates are the basis of (I_{Z'})_t (scanned in
    graded-lex order of their free monomial, or the reverse).  A candidate is
    kept when it is independent, modulo (I_Z)_t, of all variable multiples of
    the part of I_{Z'} already generated.
    """
    Zp = reduce_multiplicity(Z, i, 1)
    profile = separator_degrees(Z, i)
    field = Z.field
    forms: list[HomogeneousForm] = []
    prev: Subspace | None = None
    for t in range(hilbert_function(Z).t_stab + 1):
        W = _span(Z, t, _lift_products(Z, prev, t))
        rows = ideal_matrix(Zp, t).tolist()
        if reverse:
            rows = rows[::-1]
        picked_rows, picked = [], []
        if rows:
            C = project(Z, t, DenseMatrix.from_rows(field, rows, basis_size(Z.nvars, t)))
            # Greedy first-fit: pivot columns of Q_W * C^T.
            _, piv = (W.quotient_map() @ C.transpose()).rref()
            picked = [rows[c] for c in piv]
            picked_rows = [C.tolist()[c] for c in piv]
        if len(picked) != profile.count(t):
            raise InconsistencyError(f"degree {t}: extracted {len(picked)} separators, profile says {profile.count(t)}")
        forms.extend(HomogeneousForm.from_vector(field, Z.nvars, t, r) for r in picked)
        V = W + Subspace.span_rows(field, W.dim_ambient, picked_rows) if picked else W
        if V.dim != quotient_dim(Z, i, t):
            raise InconsistencyError(f"degree {t}: separators span {V.dim} dims of (I_Z'/I_Z)_t, expected {quotient_dim(Z, i, t)}")
        prev = V
    return SeparatorSet(tuple(forms), profile)


def is_separator(Z: FatPointScheme, i: int, F: HomogeneousForm) -> bool:
    """F in I_{Z'} and F not in I_Z."""
    return membership(F, reduce_multiplicity(Z, i, 1)) and not membership(F, Z)


def separating_set(Z: FatPointScheme, i: int) -> SeparatingSet:
    """Level h profile is the separator profile of P_i in Z_{m_i - h + 1}."""
    Z.check_index(i)
    return SeparatingSet(tuple(separator_degrees(reduce_multiplicity(Z, i, h - 1), i) for h in range(1, Z.mults[i] + 1)))


def _first_forms(Z: FatPointScheme, i: int, j: int, separators: SeparatorSet | None) -> tuple:
    seps = separators or minimal_separators(Z, i)
    if not 0 <= j <= len(seps.forms):
        raise ValueError(f"j={j} outside 0..{len(seps.forms)}")
    return seps.forms[:j], seps


def intermediate_hf(Z: FatPointScheme, i: int, j: int, separators: SeparatorSet | None = None) -> HilbertFunction:
    """Hilbert function of R/(I_Z, F_1, ..., F_j); it stabilizes at deg Z - j."""
    forms, _ = _first_forms(Z, i, j, separators)
    H = hilbert_function(Z)
    pieces = quotient_pieces(Z, forms, H.t_stab)
    values = [H(t) - U.dim for t, U in enumerate(pieces)]
    stable = Z.degree - j
    if values[-1] != stable or any(b < a for a, b in zip(values, values[1:])):
        raise InconsistencyError(f"intermediate Hilbert function {values} does not settle at {stable}")
    t_stab = values.index(stable)
    return HilbertFunction(tuple(values[: t_stab + 1]), stable, t_stab)


def _point_values(Z: FatPointScheme, i: int, t: int) -> list:
    """Values at P_i of the standard monomials of (R/I_Z)_t (evaluation factors through I_Z)."""
    _, piv = normal_form_map(Z, t)
    basis = monomial_basis(Z.nvars, t)
    return [evaluate(HomogeneousForm(Z.field, Z.nvars, t, {basis[p]: 1}), Z.points[i].coords) for p in piv]


def colon_check(Z: FatPointScheme, i: int, j: int, t_max: int | None = None, separators: SeparatorSet | None = None) -> bool:
    """Whether (I_Z, F_1..F_{j-1}) : F_j agrees with I_{P_i} in degrees 0..t_max.

    Both sides contain (I_Z)_t, so the comparison runs in (R/I_Z)_t, where
    (I_{P_i})_t / (I_Z)_t is the kernel of evaluation at P_i.
    """
    if j < 1:
        raise ValueError("colon_check needs j >= 1")
    forms, _ = _first_forms(Z, i, j, separators)
    Fj = forms[-1]
    d = Fj.degree
    if t_max is None:
        t_max = hilbert_function(Z).t_stab + 1
    pieces = quotient_pieces(Z, forms[:-1], t_max + d)
    for t in range(t_max + 1):
        basis = monomial_basis(Z.nvars, t)
        _, piv = normal_form_map(Z, t)
        H = len(piv)
        Qu = pieces[t + d].quotient_map()
        if Qu.rows == 0:
            return False
        T = project(Z, t + d, times_form(Fj, [basis[p] for p in piv]))
        A = T @ Qu.transpose()
        e = DenseMatrix.from_rows(Z.field, [[v] for v in _point_values(Z, i, t)], 1)
        if A.rank() != 1 or DenseMatrix.vstack(Z.field, [A.transpose(), e.transpose()], H).rank() != 1:
            return False
    return True


def saturation_check(Z: FatPointScheme, i: int, j: int, t_max: int | None = None, separators: SeparatorSet | None = None) -> bool:
    """Whether (I_Z, F_1..F_j) is saturated in degrees 0..t_max.

    Checks {G : x_l G in the ideal for all l} = the ideal, degree by degree,
    modulo I_Z.
    """
    forms, _ = _first_forms(Z, i, j, separators)
    if t_max is None:
        t_max = hilbert_function(Z).t_stab + 1
    pieces = quotient_pieces(Z, forms, t_max + 1)
    for t in range(t_max + 1):
        Qu = pieces[t + 1].quotient_map()
        H = pieces[t].dim_ambient
        if Qu.rows == 0 or H == 0:
            continue
        blocks = [(M @ Qu.transpose()).transpose() for M in quotient_mult_maps(Z, t + 1)]
        colon_dim = H - DenseMatrix.vstack(Z.field, blocks, H).rank()
        if colon_dim != pieces[t].dim:
            return False
    return True
