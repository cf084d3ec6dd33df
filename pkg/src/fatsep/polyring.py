"""Homogeneous forms in k[x_0, ..., x_n].

Monomials are exponent tuples.  Within a degree they are ordered
graded-lexicographically with x_0 > x_1 > ... > x_n, so ``x_0^t`` always
occupies slot 0 of a coefficient vector.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .exactlin import FieldSpec, Scalar, format_scalar

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, t: int) -> tuple[Monomial, ...]:
    """All degree-``t`` monomials in ``nvars`` variables, x_0 greatest first."""
    if nvars < 1 or t < 0:
        raise ValueError(f"bad basis request nvars={nvars} t={t}")
    if nvars == 1:
        return ((t,),)
    out = []
    for a in range(t, -1, -1):
        out.extend((a,) + rest for rest in monomial_basis(nvars - 1, t - a))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, t: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(nvars, t))}


@lru_cache(maxsize=None)
def shift_map(nvars: int, t: int, var: int) -> tuple[int, ...]:
    """Position in degree ``t+1`` of ``x_var * mu`` for each ``mu`` of degree ``t``."""
    idx = monomial_index(nvars, t + 1)
    out = []
    for m in monomial_basis(nvars, t):
        e = list(m)
        e[var] += 1
        out.append(idx[tuple(e)])
    return tuple(out)


def basis_size(nvars: int, t: int) -> int:
    return comb(t + nvars - 1, nvars - 1) if t >= 0 else 0


def falling(b: int, a: int) -> int:
    """b (b-1) ... (b-a+1); zero when a > b."""
    out = 1
    for k in range(a):
        out *= b - k
    return out


class HomogeneousForm:
    """A homogeneous polynomial with exact coefficients.

    The zero form still carries a degree, so degree bookkeeping never needs a
    special case.
    """

    __slots__ = ("field", "nvars", "degree", "coeffs")

    def __init__(self, field: FieldSpec, nvars: int, degree: int, coeffs: Mapping[Sequence[int], object] = ()):
        if degree < 0:
            raise ValueError("negative degree")
        clean: dict[Monomial, object] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for mono, c in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for {nvars} variables")
            if sum(mono) != degree:
                raise ValueError(f"monomial {mono} is not of degree {degree}")
            v = field(c)
            if mono in clean:
                v = field(clean[mono] + v)
            if v:
                clean[mono] = v
            else:
                clean.pop(mono, None)
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self.coeffs = clean

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, c=1) -> HomogeneousForm:
        return cls(field, nvars, 0, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: FieldSpec, nvars: int, i: int) -> HomogeneousForm:
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, 1, {tuple(e): 1})

    @classmethod
    def linear(cls, field: FieldSpec, coeffs: Sequence) -> HomogeneousForm:
        """``sum coeffs[i] * x_i``."""
        n = len(coeffs)
        return cls(field, n, 1, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def from_vector(cls, field: FieldSpec, nvars: int, degree: int, vec: Sequence) -> HomogeneousForm:
        basis = monomial_basis(nvars, degree)
        if len(vec) != len(basis):
            raise ValueError(f"vector length {len(vec)} != {len(basis)}")
        return cls(field, nvars, degree, {m: c for m, c in zip(basis, vec) if c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: HomogeneousForm):
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("forms over different rings")

    def __add__(self, other: HomogeneousForm) -> HomogeneousForm:
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("sum of forms of different degrees is not homogeneous")
        merged = dict(self.coeffs)
        for m, c in other.coeffs.items():
            merged[m] = merged.get(m, 0) + c
        return HomogeneousForm(self.field, self.nvars, self.degree, merged)

    def __neg__(self) -> HomogeneousForm:
        return self.scale(-1)

    def __sub__(self, other: HomogeneousForm) -> HomogeneousForm:
        return self + (-other)

    def scale(self, c) -> HomogeneousForm:
        c = self.field(c)
        return HomogeneousForm(self.field, self.nvars, self.degree, {m: v * c for m, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HomogeneousForm):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return (self.field, self.nvars, self.degree, self.coeffs) == (other.field, other.nvars, other.degree, other.coeffs)

    def __hash__(self):
        return hash((self.field, self.nvars, self.degree, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"HomogeneousForm({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for m in monomial_basis(self.nvars, self.degree):
            if m not in self.coeffs:
                continue
            v = self.coeffs[m]
            if not self.field.is_rational and v > self.field.p // 2:
                v -= self.field.p  # symmetric residue reads better
            c = format_scalar(v)
            mono = "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m) if e)
            if not mono:
                terms.append(c)
            elif c == "1":
                terms.append(mono)
            elif c == "-1":
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def partial(F: HomogeneousForm, alpha: Sequence[int]) -> HomogeneousForm:
    """Iterated partial derivative d^alpha F (plain partials, no divided powers)."""
    alpha = tuple(alpha)
    if len(alpha) != F.nvars:
        raise ValueError("multi-index length must equal nvars")
    order = sum(alpha)
    if order > F.degree:
        return HomogeneousForm(F.field, F.nvars, 0)
    out = {}
    for m, c in F.coeffs.items():
        k = 1
        for b, a in zip(m, alpha):
            k *= falling(b, a)
        if k:
            out[tuple(b - a for b, a in zip(m, alpha))] = c * k
    return HomogeneousForm(F.field, F.nvars, F.degree - order, out)


def evaluate(F: HomogeneousForm, P: Sequence) -> Fraction | int:
    """Value of F at the given coordinate representative."""
    if isinstance(P, Scalar) or len(P) != F.nvars:
        raise ValueError("coordinate count must equal nvars")
    field = F.field
    coords = [field(x) for x in P]
    total = 0
    for m, c in F.coeffs.items():
        term = c
        for x, e in zip(coords, m):
            if e:
                term *= x**e if field.is_rational else pow(x, e, field.p)
        total += term
    return field(total)


def multiply(F: HomogeneousForm, G: HomogeneousForm) -> HomogeneousForm:
    F._check(G)
    out: dict[Monomial, object] = {}
    for m1, c1 in F.coeffs.items():
        for m2, c2 in G.coeffs.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return HomogeneousForm(F.field, F.nvars, F.degree + G.degree, out)


def product(forms: Iterable[HomogeneousForm]) -> HomogeneousForm:
    forms = list(forms)
    out = HomogeneousForm.constant(forms[0].field, forms[0].nvars)
    for f in forms:
        out = multiply(out, f)
    return out


def coeff_vector(F: HomogeneousForm) -> tuple:
    """Coefficients in :func:`monomial_basis` order."""
    return tuple(F.coeffs.get(m, 0) for m in monomial_basis(F.nvars, F.degree))


def from_coeff_vector(field: FieldSpec, nvars: int, degree: int, vec: Sequence) -> HomogeneousForm:
    return HomogeneousForm.from_vector(field, nvars, degree, vec)


def form_to_json(F: HomogeneousForm) -> list:
    """``[[exponents, "coeff"], ...]`` in basis order."""
    return [[list(m), format_scalar(F.coeffs[m])] for m in monomial_basis(F.nvars, F.degree) if m in F.coeffs]


def form_from_json(data: list, field: FieldSpec, nvars: int, degree: int | None = None) -> HomogeneousForm:
    if degree is None:
        if not data:
            raise ValueError("degree is required to decode the zero form")
        degree = sum(data[0][0])
    return HomogeneousForm(field, nvars, degree, [(tuple(e), str(c)) for e, c in data])

