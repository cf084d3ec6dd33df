"""Complete intersections of points realized as grids, and their fat powers.

A grid CI of type (δ_1, ..., δ_n) is cut out by the totally reducible forms
G_i = Π_j (x_i - c_ij x_0).  For Z = m X with X a CI, I_Z = I_X^m and the last
syzygy shifts are the sums a_1 δ_1 + ... + a_n δ_n with every a_i >= 1 and
a_1 + ... + a_n = m + n - 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from math import comb, prod
from typing import Sequence

from .exactlin import FieldSpec
from .polyring import HomogeneousForm, product
from .resolution import ShiftMultiset
from .scheme import FatPointScheme, SchemeError, hilbert_function, reduce_multiplicity
from .separator import SeparatorProfile, separator_degrees

FIXTURES = ("example2", "1P", "2P", "3P", "4P", "ci37", "ci234")


@dataclass(frozen=True)
class CIType:
    deltas: tuple

    def __post_init__(self):
        d = tuple(int(x) for x in self.deltas)
        if not d or any(x < 1 for x in d):
            raise ValueError(f"CI type needs positive degrees, got {d}")
        if list(d) != sorted(d):
            raise ValueError(f"CI type must be nondecreasing, got {d}")
        object.__setattr__(self, "deltas", d)

    @property
    def n(self) -> int:
        return len(self.deltas)

    @classmethod
    def parse(cls, text: str) -> CIType:
        """``"2,3,4"`` -> CIType((2, 3, 4))."""
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError as exc:
            raise ValueError(f"bad CI type {text!r}: {exc}") from exc


@dataclass(frozen=True)
class GridSpec:
    """Axis values c_i1, ..., c_iδ_i for each of the n affine coordinates."""

    axis_values: tuple

    def __post_init__(self):
        axes = tuple(tuple(ax) for ax in self.axis_values)
        if not axes or any(not ax for ax in axes):
            raise ValueError("every axis needs at least one value")
        for ax in axes:
            if len(set(ax)) != len(ax):
                raise ValueError(f"repeated value on axis {list(ax)}")
        object.__setattr__(self, "axis_values", axes)

    @classmethod
    def default(cls, ci_type: CIType) -> GridSpec:
        return cls(tuple(tuple(range(1, d + 1)) for d in ci_type.deltas))

    @classmethod
    def parse(cls, text: str) -> GridSpec:
        """``"1,2;1,2,3"`` -> axes (1, 2) and (1, 2, 3); entries may be fractions."""
        return cls(tuple(tuple(v.strip() for v in ax.split(",")) for ax in text.split(";")))

    def ci_type(self) -> CIType:
        return CIType(tuple(sorted(len(ax) for ax in self.axis_values)))


def grid_ci(spec: GridSpec, field: FieldSpec | None = None) -> tuple[FatPointScheme, list[HomogeneousForm]]:
    """Points (1 : c_1 : ... : c_n) over the product of the axes, and the n generators.

    The first axis varies slowest.
    """
    field = field or FieldSpec.prime()
    axes = [tuple(field(v) for v in ax) for ax in spec.axis_values]
    for ax in axes:
        if len(set(ax)) != len(ax):
            raise ValueError(f"axis values collide in {field}")
    n = len(axes)
    points = [()]
    for ax in axes:
        points = [p + (c,) for p in points for c in ax]
    X = FatPointScheme(n, field, tuple((1,) + p for p in points), (1,) * len(points))
    gens = []
    for i, ax in enumerate(axes, start=1):
        factors = []
        for c in ax:
            coeffs = [0] * (n + 1)
            coeffs[i] = 1
            coeffs[0] = -c
            factors.append(HomogeneousForm.linear(field, coeffs))
        gens.append(product(factors))
    return X, gens


def power_scheme(X: FatPointScheme, m: int) -> FatPointScheme:
    """Same support, every multiplicity m."""
    if not X.is_reduced():
        raise SchemeError("power_scheme needs a reduced scheme")
    if m < 1:
        raise SchemeError("multiplicity must be positive")
    return FatPointScheme(X.n, X.field, X.points, (m,) * X.s)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for a in range(1, total - parts + 2):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def ci_power_shifts(ci_type: CIType, m: int) -> ShiftMultiset:
    if m < 1:
        raise ValueError("m must be positive")
    d = ci_type.deltas
    return ShiftMultiset(tuple(sum(a * x for a, x in zip(c, d)) for c in _compositions(m + ci_type.n - 1, ci_type.n)))


def ci_rank(m: int, n: int) -> int:
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return comb(m + n - 2, n - 1)


def ci_separator_profile(ci_type: CIType, m: int) -> SeparatorProfile:
    return SeparatorProfile(tuple(j - ci_type.n for j in ci_power_shifts(ci_type, m)))


def infer_grid_type(Z: FatPointScheme) -> CIType:
    """Type of a grid support: distinct values per affine coordinate."""
    if any(P.coords[0] == 0 for P in Z.points):
        raise SchemeError("grid support must lie in x_0 != 0")
    counts = [len({P.coords[k] for P in Z.points}) for k in range(1, Z.nvars)]
    if prod(counts) != Z.s:
        raise SchemeError(f"support is not a full grid: axis sizes {counts}, {Z.s} points")
    return CIType(tuple(sorted(counts)))


def verify_degCI(Z: FatPointScheme, seed: int = 0) -> bool:
    """Every point of a homogeneous grid-CI scheme has the closed-form profile.

    ``seed`` is accepted for a uniform verifier signature; the check is
    deterministic.
    """
    if not Z.is_homogeneous() or Z.s == 0:
        raise SchemeError("verify_degCI needs a nonempty homogeneous scheme")
    expected = ci_separator_profile(infer_grid_type(Z), Z.mults[0])
    return all(separator_degrees(Z, i) == expected for i in range(Z.s))


def cbp_check(X: FatPointScheme) -> bool:
    """Cayley-Bacharach: all separator degrees deg_X(P_i) coincide.

    The equivalent condition (all H_{X minus P} equal) is computed too, and a
    disagreement is reported as an error.
    """
    if not X.is_reduced():
        raise SchemeError("cbp_check needs a reduced scheme")
    if X.s < 2:
        raise SchemeError("cbp_check needs at least two points")
    by_degree = len({separator_degrees(X, i) for i in range(X.s)}) == 1
    by_hf = len({hilbert_function(reduce_multiplicity(X, i, 1)) for i in range(X.s)}) == 1
    if by_degree != by_hf:
        from .scheme import InconsistencyError

        raise InconsistencyError("separator degrees and removed-point Hilbert functions disagree")
    return by_degree


def cbp_fat_removed_check(Z: FatPointScheme, seed: int = 0) -> bool:
    """All Y_i = Z with the whole fat point m P_i removed share one Hilbert function."""
    if not Z.is_homogeneous():
        raise SchemeError("cbp_fat_removed_check needs a homogeneous scheme")
    if Z.s < 2:
        raise SchemeError("cbp_fat_removed_check needs at least two points")
    return len({hilbert_function(reduce_multiplicity(Z, i, Z.mults[i])) for i in range(Z.s)}) == 1


# ---------------------------------------------------------------- fixtures


def build_fixture(name: str, field: FieldSpec | None = None) -> FatPointScheme:
    """Construct a named fixture from scratch.

    example2: doubled CI(2,3) grid in P^2.  kP (k = 1..4): k(1:0:0) in P^2.
    ci37: CI(3,7) grid minus (1:3:7), doubled.  ci234: CI(2,3,4) grid, tripled.
    """
    field = field or FieldSpec.prime()
    if name == "example2":
        return power_scheme(grid_ci(GridSpec.default(CIType((2, 3))), field)[0], 2)
    if name in ("1P", "2P", "3P", "4P"):
        return FatPointScheme(2, field, ((1, 0, 0),), (int(name[0]),))
    if name == "ci37":
        X, _ = grid_ci(GridSpec.default(CIType((3, 7))), field)
        drop = X.points.index(FatPointScheme(2, field, ((1, 3, 7),), (1,)).points[0])
        return power_scheme(reduce_multiplicity(X, drop, 1), 2)
    if name == "ci234":
        return power_scheme(grid_ci(GridSpec.default(CIType((2, 3, 4))), field)[0], 3)
    raise SchemeError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")


def load_fixture(name: str, field: FieldSpec | None = None) -> FatPointScheme:
    """Read a shipped fixture file (``fixtures/<name>.json``)."""
    if name not in FIXTURES:
        raise SchemeError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    text = resources.files("fatsep").joinpath("fixtures", f"{name}.json").read_text()
    return FatPointScheme.from_json(json.loads(text), field)


CI37_POINT = 19
"""0-based index of P_36 = (1:3:6) in the ci37 fixture."""
