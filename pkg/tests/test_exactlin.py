from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from gorenstein.exactlin import (
    Matrix,
    NoSolution,
    PrimeField,
    Rationals,
    inverse,
    kernel_basis,
    kronecker,
    parse_field,
    rank,
    rref,
    solve,
)

FIELDS = [PrimeField(2), PrimeField(5), Rationals()]


@st.composite
def matrices(draw, field=None, rows=None, cols=None):
    F = field if field is not None else draw(st.sampled_from(FIELDS))
    r = rows if rows is not None else draw(st.integers(0, 6))
    c = cols if cols is not None else draw(st.integers(0, 6))
    lo, hi = (0, F.p - 1) if isinstance(F, PrimeField) else (-3, 3)
    vals = draw(st.lists(st.integers(lo, hi), min_size=r * c, max_size=r * c))
    return Matrix.of(F, [vals[i * c:(i + 1) * c] for i in range(r)], shape=(r, c))


def oracle_rank(m: Matrix) -> int:
    F = m.field
    dom = GF(F.p) if isinstance(F, PrimeField) else QQ
    rows = [[dom(int(x)) if isinstance(F, PrimeField) else dom(Fraction(x).numerator, Fraction(x).denominator)
             for x in row] for row in m.a.tolist()]
    if m.rows == 0 or m.cols == 0:
        return 0
    return DomainMatrix(rows, (m.rows, m.cols), dom).rank()


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == oracle_rank(m)


@given(matrices())
def test_rref_idempotent(m):
    r, _, _ = rref(m)
    assert rref(r)[0] == r


@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero()


@given(st.data())
def test_solve_returns_a_solution(data):
    m = data.draw(matrices())
    x = data.draw(matrices(field=m.field, rows=m.cols, cols=data.draw(st.integers(1, 3))))
    b = m @ x
    assert m @ solve(m, b) == b


@given(st.data())
def test_kronecker_mixed_product(data):
    F = data.draw(st.sampled_from(FIELDS))
    p, q, r, s, t, u = (data.draw(st.integers(1, 3)) for _ in range(6))
    a = data.draw(matrices(F, p, q))
    c = data.draw(matrices(F, q, r))
    b = data.draw(matrices(F, s, t))
    d = data.draw(matrices(F, t, u))
    assert kronecker(a, b) @ kronecker(c, d) == kronecker(a @ c, b @ d)


def test_rational_rref_is_exact():
    Q = Rationals()
    m = Matrix.of(Q, [[3, 1], [1, Fraction(1, 3)]])
    assert rank(m) == 1
    assert rref(m)[0] == Matrix.of(Q, [[1, Fraction(1, 3)], [0, 0]])


def test_gf2_arithmetic():
    F = PrimeField(2)
    m = Matrix.of(F, [[1, 1], [1, 0]])
    assert inverse(m) @ m == Matrix.identity(F, 2)
    assert (m + m).is_zero()


def test_solve_inconsistent():
    F = PrimeField(2)
    with pytest.raises(NoSolution):
        solve(Matrix.of(F, [[1], [1]]), Matrix.of(F, [[1], [0]]))


def test_entry_growth_stays_exact():
    Q = Rationals()
    n = 7
    hilbert = Matrix.of(Q, [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)])
    inv = inverse(hilbert)
    assert inv @ hilbert == Matrix.identity(Q, n)
    assert inv.a[n - 1, n - 1] == sympy.Rational(sympy.Matrix(n, n, lambda i, j: sympy.Rational(1, i + j + 1)).inv()[n - 1, n - 1])


@pytest.mark.parametrize("text,char", [("GF(2)", 2), ("2", 2), ("GF(5)", 5), ("Q", 0)])
def test_parse_field(text, char):
    assert parse_field(text).characteristic == char


def test_parse_field_rejects_composite():
    with pytest.raises(ValueError):
        parse_field("GF(4)")


@settings(max_examples=30)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_inverse_random_invertible(n, seed):
    rng = np.random.default_rng(seed)
    F = PrimeField(5)
    while True:
        m = Matrix(F, F.random((n, n), rng))
        if rank(m) == n:
            break
    assert m @ inverse(m) == Matrix.identity(F, n)
