from __future__ import annotations

from fractions import Fraction

import pytest

from fatsep.exactlin import FieldSpec

ACCEPTANCE_LINES: list[str] = []

FIELDS = [FieldSpec.prime(), FieldSpec.rational()]


@pytest.fixture(params=FIELDS, ids=["prime", "rational"])
def field(request):
    return request.param


@pytest.fixture
def QQ():
    return FieldSpec.rational()


@pytest.fixture
def GF():
    return FieldSpec.prime()


def fraction_rref(rows, p=None):
    """Plain Gauss-Jordan elimination over Fractions (or integers mod p).

    Independent of the library backend; returns (nonzero RREF rows, pivots).
    """
    def norm(x):
        return x % p if p else Fraction(x)

    def inv(x):
        return pow(x, -1, p) if p else 1 / x

    A = [[norm(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(A)) if A[k][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        s = inv(A[r][c])
        A[r] = [norm(x * s) for x in A[r]]
        for k in range(len(A)):
            if k != r and A[k][c] != 0:
                f = A[k][c]
                A[k] = [norm(a - f * b) for a, b in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], tuple(pivots)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
