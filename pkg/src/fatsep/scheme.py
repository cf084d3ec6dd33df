"""Fat point schemes, their jet matrices, ideals and Hilbert functions.

A form F lies in I_P^m exactly when every partial derivative of F of order
m-1 vanishes at P (for deg F >= m-1; Euler's relation takes care of the lower
orders when the characteristic is 0 or exceeds deg F).  Stacking those
evaluation functionals over all points gives the jet matrix, whose kernel in
degree t is (I_Z)_t.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Sequence

from .exactlin import DenseMatrix, FieldSpec, Subspace, format_scalar
from .polyring import (
    HomogeneousForm,
    basis_size,
    coeff_vector,
    falling,
    monomial_basis,
)


class SchemeError(ValueError):
    """Malformed scheme input (bad JSON, duplicate points, bad index...)."""


class FieldTooSmallError(ValueError):
    """Prime-field mode needs p larger than every working degree."""


class InconsistencyError(RuntimeError):
    """A computed quantity contradicts a guaranteed identity."""


def _normalize(field: FieldSpec, coords: Sequence) -> tuple:
    vals = tuple(field(c) for c in coords)
    lead = next((v for v in vals if v != 0), None)
    if lead is None:
        raise SchemeError("the zero vector is not a projective point")
    if field.is_rational:
        return tuple(v / lead for v in vals)
    inv = pow(lead, -1, field.p)
    return tuple(v * inv % field.p for v in vals)


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of P^n, scaled so its first nonzero coordinate is 1."""

    coords: tuple

    @classmethod
    def make(cls, field: FieldSpec, coords: Sequence) -> ProjectivePoint:
        return cls(_normalize(field, coords))

    def integer_representative(self) -> tuple[int, ...]:
        """Primitive integer coordinates for rational points (same projective point)."""
        den = lcm(*(Fraction(c).denominator for c in self.coords))
        return tuple(int(Fraction(c) * den) for c in self.coords)

    def __str__(self):
        return "(" + ":".join(format_scalar(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class FatPointScheme:
    """Z = m_1 P_1 + ... + m_s P_s in P^n.

    Points are normalized on construction; a repeated point is an error, not a
    merge.  The empty scheme (s = 0) is allowed.
    """

    n: int
    field: FieldSpec
    points: tuple = ()
    mults: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise SchemeError("ambient dimension must be at least 1")
        pts = []
        for P in self.points:
            coords = P.coords if isinstance(P, ProjectivePoint) else P
            if len(coords) != self.n + 1:
                raise SchemeError(f"point {list(coords)} needs {self.n + 1} coordinates")
            pts.append(ProjectivePoint.make(self.field, coords))
        mults = tuple(int(m) for m in self.mults)
        if len(pts) != len(mults):
            raise SchemeError(f"{len(pts)} points but {len(mults)} multiplicities")
        if any(m < 1 for m in mults):
            raise SchemeError("multiplicities must be positive")
        if len(set(pts)) != len(pts):
            raise SchemeError("duplicate points in scheme")
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "mults", mults)

    @property
    def s(self) -> int:
        return len(self.points)

    @property
    def nvars(self) -> int:
        return self.n + 1

    @property
    def degree(self) -> int:
        return scheme_degree(self)

    def is_reduced(self) -> bool:
        return all(m == 1 for m in self.mults)

    def is_homogeneous(self) -> bool:
        return len(set(self.mults)) <= 1

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.s:
            raise SchemeError(f"point index {i} out of range for {self.s} points")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field": self.field.to_json(),
            "points": [[format_scalar(c) for c in P.coords] for P in self.points],
            "multiplicities": list(self.mults),
        }

    @classmethod
    def from_json(cls, obj: dict, field: FieldSpec | None = None) -> FatPointScheme:
        """Decode scheme JSON; ``field`` overrides the file's field when given."""
        if not isinstance(obj, dict):
            raise SchemeError("scheme JSON must be an object")
        try:
            n = int(obj["n"])
            if field is None:
                field = FieldSpec.from_json(obj.get("field", {"kind": "prime"}))
            points = [[Fraction(str(c)) for c in P] for P in obj["points"]]
            mults = [int(m) for m in obj["multiplicities"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, SchemeError):
                raise
            raise SchemeError(f"bad scheme JSON: {exc!r}") from exc
        return cls(n, field, tuple(points), tuple(mults))

    def __str__(self):
        if not self.points:
            return f"empty scheme in P^{self.n}"
        return " + ".join(f"{m}{P}" if m > 1 else str(P) for P, m in zip(self.points, self.mults))


def load_scheme(path: str, field: FieldSpec | None = None) -> FatPointScheme:
    with open(path) as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemeError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return FatPointScheme.from_json(obj, field)


@dataclass(frozen=True)
class HilbertFunction:
    """H(0..t_stab); H(t) = stable_value for every t >= t_stab."""

    values: tuple
    stable_value: int
    t_stab: int = dc_field(default=0)

    def __call__(self, t: int) -> int:
        if t < 0:
            return 0
        if t >= len(self.values):
            return self.stable_value
        return self.values[t]

    def delta(self, t: int) -> int:
        return self(t) - self(t - 1)

    def __str__(self):
        return ", ".join(map(str, self.values)) + " ->"


def scheme_degree(Z: FatPointScheme) -> int:
    """sum_i C(m_i + n - 1, n)."""
    return sum(comb(m + Z.n - 1, Z.n) for m in Z.mults)


def reduce_multiplicity(Z: FatPointScheme, i: int, h: int = 1) -> FatPointScheme:
    """The scheme with m_i lowered by h; P_i leaves the support when h = m_i."""
    Z.check_index(i)
    if not 0 <= h <= Z.mults[i]:
        raise SchemeError(f"cannot lower multiplicity {Z.mults[i]} by {h}")
    if h == 0:
        return Z
    if h == Z.mults[i]:
        return FatPointScheme(Z.n, Z.field, Z.points[:i] + Z.points[i + 1:], Z.mults[:i] + Z.mults[i + 1:])
    mults = list(Z.mults)
    mults[i] -= h
    return FatPointScheme(Z.n, Z.field, Z.points, tuple(mults))


def check_field(field: FieldSpec, t: int) -> None:
    if not field.is_rational and field.p <= t:
        raise FieldTooSmallError(f"prime {field.p} must exceed working degree {t}; need p > {t}")


@lru_cache(maxsize=8192)
def _jet_block(field: FieldSpec, P: ProjectivePoint, m: int, t: int) -> tuple[int, tuple]:
    """Rows of order-min(m-1, t) partials of the degree-t monomials at P, flattened."""
    nv = len(P.coords)
    order = min(m - 1, t)
    if field.is_rational:
        coords = P.integer_representative()
        red = None
    else:
        coords = P.coords
        red = field.p
    pw = []
    for c in coords:
        row = [1]
        for _ in range(t):
            row.append(row[-1] * c if red is None else row[-1] * c % red)
        pw.append(row)
    ff = [[falling(b, a) for a in range(order + 1)] for b in range(t + 1)]
    basis = monomial_basis(nv, t)
    flat = []
    for alpha in monomial_basis(nv, order):
        for beta in basis:
            v = 1
            for k in range(nv):
                a = alpha[k]
                b = beta[k]
                if a > b:
                    v = 0
                    break
                v *= pw[k][b - a] if not a else ff[b][a] * pw[k][b - a]
            flat.append(v if red is None else v % red)
    return basis_size(nv, order), tuple(flat)


def jet_matrix(Z: FatPointScheme, t: int) -> DenseMatrix:
    """Rows (i, alpha) evaluate d^alpha at P_i on the degree-t monomial basis; kernel = (I_Z)_t.

    Derivative conditions need p > t in prime mode; plain evaluation (every
    m_i = 1) does not.
    """
    if any(m > 1 for m in Z.mults):
        check_field(Z.field, t)
    ncols = basis_size(Z.nvars, t)
    flat: list = []
    nrows = 0
    for P, m in zip(Z.points, Z.mults):
        r, block = _jet_block(Z.field, P, m, t)
        nrows += r
        flat.extend(block)
    return DenseMatrix.trusted(Z.field, nrows, ncols, flat)


@lru_cache(maxsize=4096)
def ideal_matrix(Z: FatPointScheme, t: int) -> DenseMatrix:
    """Basis of (I_Z)_t as the rows of a matrix in monomial coordinates."""
    return jet_matrix(Z, t).kernel()


def ideal_space(Z: FatPointScheme, t: int) -> Subspace:
    return Subspace.span(ideal_matrix(Z, t))


def ideal_basis(Z: FatPointScheme, t: int) -> list[HomogeneousForm]:
    """Basis of (I_Z)_t; its size is C(t+n, n) - H_Z(t)."""
    K = ideal_matrix(Z, t)
    return [HomogeneousForm.from_vector(Z.field, Z.nvars, t, row) for row in K.tolist()]


def membership(F: HomogeneousForm, Z: FatPointScheme) -> bool:
    """Whether F lies in I_Z."""
    if F.nvars != Z.nvars or F.field != Z.field:
        raise SchemeError("form and scheme live in different rings")
    if F.is_zero():
        return True
    J = jet_matrix(Z, F.degree)
    return not any(J.apply(coeff_vector(F)))


@lru_cache(maxsize=1024)
def hilbert_function(Z: FatPointScheme) -> HilbertFunction:
    """H_Z(t) = rank of the degree-t jet matrix, computed until it reaches deg Z."""
    if Z.s == 0:
        return HilbertFunction((0,), 0, 0)
    target = Z.degree
    t_cap = sum(Z.mults) + 1
    values = []
    for t in range(t_cap + 1):
        values.append(jet_matrix(Z, t).rank())
        if values[-1] == target:
            return HilbertFunction(tuple(values), target, t)
    raise InconsistencyError(f"Hilbert function stuck at {values[-1]} < deg Z = {target} by t = {t_cap}")


def delta_hf(H: HilbertFunction) -> list[int]:
    """First difference over t = 0..t_stab+1 (H(-1) = 0); the last entry is 0."""
    return [H.delta(t) for t in range(H.t_stab + 2)]
