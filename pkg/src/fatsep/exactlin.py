"""Exact scalars and dense linear algebra over Q or GF(p).

Matrices wrap python-flint objects (``fmpq_mat`` for the rationals,
``nmod_mat`` for a word-size prime).  Every result that depends on a choice of
basis is read off the reduced row echelon form, which is unique, so outputs do
not depend on the pivoting strategy of the backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

DEFAULT_PRIME = 2147483647


class FieldMismatchError(ValueError):
    """Operands live over different fields."""


class ContainmentError(ValueError):
    """A subspace is not contained in the ambient span it was checked against."""


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals or a prime field GF(p) with p > 2."""

    kind: str = "prime"
    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                object.__setattr__(self, "p", None)
        elif self.kind == "prime":
            if self.p is None or self.p <= 2 or not flint.fmpz(self.p).is_prime():
                raise ValueError(f"prime field needs an odd prime, got p={self.p}")
            if self.p >= 2**63:
                raise ValueError("prime must fit in a machine word")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls("rational", None)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> FieldSpec:
        return cls("prime", p)

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def __call__(self, x) -> Fraction | int:
        """Coerce ``x`` (int, Fraction, ``"a/b"`` string, Scalar) to a field value."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatchError(f"{x.field} scalar used over {self}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x.strip())
        elif isinstance(x, flint.fmpq):
            x = Fraction(int(x.p), int(x.q))
        elif isinstance(x, (flint.nmod, flint.fmpz)):
            x = int(x)
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot coerce {x!r} to a field element")
        if self.is_rational:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def scalar(self, x) -> Scalar:
        return Scalar(self(x), self)

    def to_json(self) -> dict:
        if self.is_rational:
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        kind = obj.get("kind")
        if kind == "rational":
            return cls.rational()
        if kind == "prime":
            return cls.prime(int(obj.get("p", DEFAULT_PRIME)))
        raise ValueError(f"unknown field kind {kind!r}")

    def __str__(self):
        return "QQ" if self.is_rational else f"GF({self.p})"


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field; arithmetic refuses to mix fields."""

    value: Fraction | int
    field: FieldSpec

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def _wrap(self, v):
        return Scalar(self.field(v), self.field)

    def __add__(self, other):
        return self._wrap(self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._other(other))

    def __rsub__(self, other):
        return self._wrap(self._other(other) - self.value)

    def __mul__(self, other):
        return self._wrap(self.value * self._other(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def inverse(self) -> Scalar:
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.field.is_rational:
            return Scalar(1 / self.value, self.field)
        return Scalar(pow(self.value, -1, self.field.p), self.field)

    def __truediv__(self, other):
        return self * Scalar(self._other(other), self.field).inverse()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return False

    def __hash__(self):
        return hash((self.value, self.field))

    def __str__(self):
        return str(self.value)


def format_scalar(x) -> str:
    """Exact decimal string: ``"7"``, ``"-3/4"``."""
    if isinstance(x, Scalar):
        x = x.value
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _from_flint(field: FieldSpec, x):
    if field.is_rational:
        return Fraction(int(x.p), int(x.q))
    return int(x)


def _backend(field: FieldSpec, nrows: int, ncols: int, flat: list):
    if field.is_rational:
        if nrows == 0 or ncols == 0:
            return flint.fmpq_mat(nrows, ncols)
        return flint.fmpq_mat(nrows, ncols, [flint.fmpq(v.numerator, v.denominator) if isinstance(v, Fraction) else v for v in flat])
    return flint.nmod_mat(nrows, ncols, flat, field.p)


class DenseMatrix:
    """Immutable dense matrix over a :class:`FieldSpec`.

    ``rows`` and ``cols`` give the shape; ``entries`` is the row-major list of
    field values.
    """

    __slots__ = ("field", "rows", "cols", "_m")

    def __init__(self, field: FieldSpec, rows: int, cols: int, entries: Iterable = ()):
        entries = [field(e) for e in entries]
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self._m = _backend(field, rows, cols, entries)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> DenseMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int) -> DenseMatrix:
        return cls.from_rows(field, columns, rows).transpose()

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> DenseMatrix:
        return cls._wrap(field, _backend(field, rows, cols, [0] * (rows * cols)))

    @classmethod
    def trusted(cls, field: FieldSpec, rows: int, cols: int, flat: list) -> DenseMatrix:
        """Wrap already-normalized row-major values without re-coercing them."""
        return cls._wrap(field, _backend(field, rows, cols, flat))

    @classmethod
    def _wrap(cls, field: FieldSpec, m) -> DenseMatrix:
        obj = cls.__new__(cls)
        obj.field = field
        obj.rows = m.nrows()
        obj.cols = m.ncols()
        obj._m = m
        return obj

    @property
    def entries(self) -> list:
        return [_from_flint(self.field, x) for x in self._m.entries()] if self.rows and self.cols else []

    def tolist(self) -> list[list]:
        e = self.entries
        return [e[r * self.cols:(r + 1) * self.cols] for r in range(self.rows)]

    def __getitem__(self, rc):
        return _from_flint(self.field, self._m[rc])

    def _check(self, other: DenseMatrix):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def transpose(self) -> DenseMatrix:
        if self.rows == 0 or self.cols == 0:
            return DenseMatrix.zeros(self.field, self.cols, self.rows)
        return DenseMatrix._wrap(self.field, self._m.transpose())

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return DenseMatrix.zeros(self.field, self.rows, other.cols)
        return DenseMatrix._wrap(self.field, self._m * other._m)

    def apply(self, v: Sequence) -> list:
        """Matrix-vector product."""
        col = DenseMatrix(self.field, len(v), 1, v)
        return (self @ col).entries if self.rows else []

    def select_columns(self, idx: Sequence[int]) -> DenseMatrix:
        rows = self.tolist()
        return DenseMatrix._wrap(self.field, _backend(self.field, self.rows, len(idx), [r[j] for r in rows for j in idx]))

    def scatter_columns(self, idx: Sequence[int], ncols: int) -> DenseMatrix:
        """Place column ``j`` of ``self`` at column ``idx[j]`` of a zero matrix."""
        out = [[0] * ncols for _ in range(self.rows)]
        for r, row in enumerate(self.tolist()):
            target = out[r]
            for j, v in zip(idx, row):
                target[j] = v
        return DenseMatrix._wrap(self.field, _backend(self.field, self.rows, ncols, [v for r in out for v in r]))

    @staticmethod
    def vstack(field: FieldSpec, mats: Sequence[DenseMatrix], cols: int) -> DenseMatrix:
        flat: list = []
        nrows = 0
        for m in mats:
            m_field = m.field
            if m_field != field:
                raise FieldMismatchError(f"{m_field} vs {field}")
            if m.cols != cols:
                raise ValueError("column count mismatch in vstack")
            flat.extend(m.entries)
            nrows += m.rows
        return DenseMatrix._wrap(field, _backend(field, nrows, cols, flat))

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return self._m.rank()

    def rref(self) -> tuple[DenseMatrix, tuple[int, ...]]:
        """Reduced row echelon form with zero rows dropped, plus pivot columns."""
        if self.rows == 0 or self.cols == 0:
            return DenseMatrix.zeros(self.field, 0, self.cols), ()
        R, r = self._m.rref()
        flat = R.entries()
        pivots = []
        c = 0
        for i in range(r):
            base = i * self.cols
            while flat[base + c] == 0:
                c += 1
            pivots.append(c)
        if self.field.is_rational:
            top = flint.fmpq_mat(r, self.cols, flat[: r * self.cols]) if r else flint.fmpq_mat(0, self.cols)
        else:
            top = flint.nmod_mat(r, self.cols, flat[: r * self.cols], self.field.p) if r else flint.nmod_mat(0, self.cols, [], self.field.p)
        return DenseMatrix._wrap(self.field, top), tuple(pivots)

    def kernel(self) -> DenseMatrix:
        """Kernel basis as the rows of a matrix, one per free column in increasing order."""
        R, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        rows = R.tolist()
        out = []
        for f in free:
            v = [0] * self.cols
            v[f] = 1
            for i, pc in enumerate(pivots):
                v[pc] = -rows[i][f]
            out.append(v)
        return DenseMatrix.from_rows(self.field, out, self.cols)

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (self.field, self.rows, self.cols, self.entries) == (other.field, other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, tuple(self.entries)))

    def __repr__(self):
        return f"DenseMatrix({self.field}, {self.rows}x{self.cols}, {self.tolist()})"


def matrix(field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> DenseMatrix:
    """Build a matrix from nested rows.  Tagged :class:`Scalar` entries must match ``field``."""
    return DenseMatrix.from_rows(field, rows, cols)


def rank(M: DenseMatrix) -> int:
    return M.rank()


def rref(M: DenseMatrix) -> tuple[DenseMatrix, tuple[int, ...]]:
    return M.rref()


def kernel_basis(M: DenseMatrix) -> list[tuple]:
    """Basis of the right null space; ``len == M.cols - rank(M)``.

    Vector ``k`` has a 1 in the ``k``-th free column and zeros in the other
    free columns, so the basis is canonical.
    """
    return [tuple(r) for r in M.kernel().tolist()]


def _infer_field(vectors: Iterable[Sequence]) -> FieldSpec | None:
    for v in vectors:
        for x in v:
            if isinstance(x, Scalar):
                return x.field
    return None


def complement_basis(ambient: Sequence[Sequence], sub: Sequence[Sequence], field: FieldSpec | None = None) -> list[tuple]:
    """First-fit vectors of ``ambient`` extending ``sub`` to a basis of span(ambient).

    Ambient vectors are scanned in the given order and kept when they are not
    in the span of ``sub`` plus the vectors kept so far.

    Raises:
        ContainmentError: if span(sub) is not inside span(ambient).
    """
    ambient = [tuple(v) for v in ambient]
    sub = [tuple(v) for v in sub]
    field = field or _infer_field(ambient + sub) or FieldSpec.rational()
    if not ambient:
        if any(field(x) != 0 for v in sub for x in v):
            raise ContainmentError("nonzero sub-vectors but empty ambient list")
        return []
    dim = len(ambient[0])
    # Columns [sub | ambient]: pivot columns of the RREF are the greedy choice.
    M = DenseMatrix.from_rows(field, sub + ambient, dim).transpose()
    _, pivots = M.rref()
    amb_rank = DenseMatrix.from_rows(field, ambient, dim).rank()
    if len(pivots) != amb_rank:
        raise ContainmentError("span(sub) is not contained in span(ambient)")
    k = len(sub)
    return [ambient[c - k] for c in pivots if c >= k]


class Subspace:
    """Subspace of k^dim held as the rows of its reduced echelon form."""

    __slots__ = ("field", "dim_ambient", "basis", "pivots")

    def __init__(self, field: FieldSpec, dim_ambient: int, basis: DenseMatrix, pivots: tuple[int, ...]):
        self.field = field
        self.dim_ambient = dim_ambient
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, spanning: DenseMatrix) -> Subspace:
        R, piv = spanning.rref()
        return cls(spanning.field, spanning.cols, R, piv)

    @classmethod
    def span_rows(cls, field: FieldSpec, dim: int, rows: Sequence[Sequence]) -> Subspace:
        return cls.span(DenseMatrix.from_rows(field, rows, dim))

    @classmethod
    def whole(cls, field: FieldSpec, dim: int) -> Subspace:
        ident = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        return cls(field, dim, DenseMatrix.from_rows(field, ident, dim), tuple(range(dim)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def codim(self) -> int:
        return self.dim_ambient - self.dim

    def standard_coords(self) -> list[int]:
        """Non-pivot coordinates; their unit vectors span a complement."""
        piv = set(self.pivots)
        return [c for c in range(self.dim_ambient) if c not in piv]

    def quotient_map(self) -> DenseMatrix:
        """Matrix ``Q`` (codim x dim_ambient) with kernel exactly this subspace.

        ``Q v`` is the coordinate vector of ``v`` modulo the subspace in the
        basis of standard (non-pivot) unit vectors.
        """
        free = self.standard_coords()
        pos = {c: i for i, c in enumerate(free)}
        Q = [[0] * self.dim_ambient for _ in free]
        for c in free:
            Q[pos[c]][c] = 1
        for r, row in enumerate(self.basis.tolist()):
            pc = self.pivots[r]
            for c in free:
                if row[c]:
                    Q[pos[c]][pc] = -row[c]
        return DenseMatrix.from_rows(self.field, Q, self.dim_ambient)

    def contains(self, vectors: DenseMatrix) -> bool:
        if vectors.rows == 0:
            return True
        return DenseMatrix.vstack(self.field, [self.basis, vectors], self.dim_ambient).rank() == self.dim

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(DenseMatrix.vstack(self.field, [self.basis, other.basis], self.dim_ambient))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.pivots == other.pivots and self.basis == other.basis

    def __hash__(self):
        return hash((self.field, self.pivots))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.dim_ambient}, {self.field})"
