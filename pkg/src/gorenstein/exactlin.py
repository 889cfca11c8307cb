"""Exact dense linear algebra over GF(p) and the rationals.

Matrices are immutable wrappers around numpy arrays.  Prime fields with a
small enough characteristic use ``int64`` storage (products are reduced
after every operation); larger primes and the rationals use ``object``
arrays holding Python ints or :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class NoSolution(ValueError):
    """Raised by :func:`solve` when the right-hand side is not in the image."""


class FieldMismatch(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """GF(p) for a prime ``p <= 2**31``."""

    kind = "prime"

    def __init__(self, p: int):
        if not _is_prime(p) or p > 2**31:
            raise ValueError(f"{p} is not a prime <= 2^31")
        self.p = int(p)
        # dot products of length <= 2**12 must not overflow int64
        self.dtype = np.int64 if (self.p - 1) ** 2 * 4096 < 2**62 else object

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    @property
    def characteristic(self) -> int:
        return self.p

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def element(self, x) -> int:
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def encode(self, x):
        return int(x)

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        if arr.size:
            arr = np.vectorize(self.element, otypes=[object])(arr)
        return arr.astype(self.dtype)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def inv(self, x) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return pow(x, self.p - 2, self.p)

    def random(self, shape, rng: np.random.Generator) -> np.ndarray:
        if self.dtype is object:
            flat = [int(rng.integers(0, self.p)) for _ in range(int(np.prod(shape)))]
            return np.array(flat, dtype=object).reshape(shape)
        return rng.integers(0, self.p, size=shape).astype(np.int64)

    def elements(self):
        return range(self.p)


class Rationals:
    kind = "rationals"
    characteristic = 0
    dtype = object

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rationals")

    def to_json(self) -> dict:
        return {"kind": "rationals"}

    def element(self, x) -> Fraction:
        return Fraction(x)

    def encode(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        if arr.size:
            arr = np.vectorize(Fraction, otypes=[object])(arr)
        return arr

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def inv(self, x) -> Fraction:
        return 1 / Fraction(x)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product through integer matrices over common denominators; Fraction
        arithmetic in the inner loop is several times slower."""
        ia, da = _integer_form(a)
        ib, db = _integer_form(b)
        prod = ia @ ib
        d = da * db
        if d == 1:
            return np.frompyfunc(_int_fraction, 1, 1)(prod) if prod.size else prod
        return np.frompyfunc(lambda v: Fraction(v, d), 1, 1)(prod) if prod.size else prod

    def random(self, shape, rng: np.random.Generator, bound: int = 10) -> np.ndarray:
        flat = [Fraction(int(v)) for v in rng.integers(-bound, bound + 1, size=int(np.prod(shape)))]
        return np.array(flat, dtype=object).reshape(shape)


QQ = Rationals()


def _int_fraction(v) -> Fraction:
    return Fraction(v, 1, _normalize=False) if isinstance(v, int) else Fraction(v)


def _integer_form(a: np.ndarray) -> tuple[np.ndarray, int]:
    """``(M, d)`` with ``a = M / d`` and ``M`` an object array of Python ints."""
    flat = a.ravel()
    d = 1
    for x in flat:
        if x.denominator != 1:
            d = math.lcm(d, x.denominator)
    if d == 1:
        ints = [x.numerator for x in flat]
    else:
        ints = [x.numerator * (d // x.denominator) for x in flat]
    out = np.empty(a.shape, dtype=object)
    out.ravel()[:] = ints
    return out, d


def field_from_json(d: dict):
    kind = d.get("kind")
    if kind == "prime":
        return PrimeField(int(d["p"]))
    if kind == "rationals":
        return QQ
    raise ValueError(f"unknown field kind {kind!r}")


def parse_field(text: str):
    """Parse ``"GF(2)"``, ``"2"``, ``"QQ"`` or ``"Q"``."""
    t = text.strip().upper()
    if t in ("Q", "QQ", "RATIONALS"):
        return QQ
    if t.startswith("GF(") and t.endswith(")"):
        t = t[3:-1]
    return PrimeField(int(t))


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("a", "field")

    def __init__(self, field, a: np.ndarray, *, _trusted: bool = False):
        if not _trusted:
            a = field.array(a)
            if a.ndim != 2:
                raise ValueError("Matrix needs a 2-dimensional array")
        a.setflags(write=False)
        self.a = a
        self.field = field

    @classmethod
    def of(cls, field, rows: Sequence[Sequence], shape=None) -> "Matrix":
        arr = field.array(rows)
        if arr.ndim != 2:
            if shape is None:
                raise ValueError("cannot infer shape of an empty matrix")
            arr = field.zeros(shape)
        return cls(field, arr, _trusted=True)

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        return cls(field, field.zeros((rows, cols)), _trusted=True)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        a = field.zeros((n, n))
        for i in range(n):
            a[i, i] = field.element(1)
        return cls(field, a, _trusted=True)

    @classmethod
    def column(cls, field, entries: Sequence) -> "Matrix":
        arr = field.array(list(entries)).reshape(len(entries), 1) if len(entries) else field.zeros((0, 1))
        return cls(field, arr, _trusted=True)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    @property
    def entries(self) -> list:
        return list(self.a.flatten())

    def _wrap(self, arr) -> "Matrix":
        return Matrix(self.field, self.field.reduce(arr), _trusted=True)

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        if isinstance(self.field, Rationals):
            return Matrix(self.field, self.field.matmul(self.a, other.a), _trusted=True)
        return self._wrap(self.a @ other.a)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return self._wrap(self.a + other.a)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return self._wrap(self.a - other.a)

    def __neg__(self) -> "Matrix":
        return self._wrap(-self.a)

    def scale(self, c) -> "Matrix":
        return self._wrap(self.a * self.field.element(c))

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.a.T.copy(), _trusted=True)

    def __getitem__(self, key) -> "Matrix":
        sub = self.a[key]
        if sub.ndim != 2:
            raise IndexError("Matrix indexing must keep two dimensions")
        return Matrix(self.field, sub.copy(), _trusted=True)

    def take_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, self.a[list(idx), :].reshape(len(idx), self.cols), _trusted=True)

    def take_cols(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, self.a[:, list(idx)].reshape(self.rows, len(idx)), _trusted=True)

    def is_zero(self) -> bool:
        return not np.any(self.a != 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and not np.any(self.a != other.a)

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.field.encode(x) for x in self.a.flat)))

    def __repr__(self):
        body = "; ".join(" ".join(str(self.field.encode(x)) for x in row) for row in self.a)
        return f"Matrix[{self.field}]({self.rows}x{self.cols}: {body})"

    def tolist(self) -> list:
        return [[self.field.encode(x) for x in row] for row in self.a]

    def flat(self) -> "Matrix":
        """Row-major flattening to a single column."""
        return Matrix(self.field, self.a.reshape(-1, 1).copy(), _trusted=True)


def hstack(field, mats: Sequence[Matrix], rows: int | None = None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, rows or 0, 0)
    return Matrix(field, np.hstack([m.a for m in mats]), _trusted=True)


def vstack(field, mats: Sequence[Matrix], cols: int | None = None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, 0, cols or 0)
    return Matrix(field, np.vstack([m.a for m in mats]), _trusted=True)


def block_diag(field, mats: Sequence[Matrix]) -> Matrix:
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = field.zeros((r, c))
    i = j = 0
    for m in mats:
        out[i:i + m.rows, j:j + m.cols] = m.a
        i += m.rows
        j += m.cols
    return Matrix(field, out, _trusted=True)


def _rref_array(field, a: np.ndarray):
    a = a.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = field.reduce(a[r] * field.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col != 0)
        if hit.size:
            a[hit] = field.reduce(a[hit] - np.outer(col[hit], a[r]))
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form with leftmost pivots and unit leading entries."""
    a, piv = _rref_array(m.field, m.a)
    return Matrix(m.field, a, _trusted=True), len(piv), piv


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    if m.rows < m.cols:
        return len(_rref_array(m.field, m.a)[1])
    return len(_rref_array(m.field, m.a.T.copy())[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the right null space, ordered by free column."""
    field = m.field
    n = m.cols
    if m.rows == 0:
        return Matrix.identity(field, n)
    r, _, piv = rref(m)
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    out = field.zeros((n, len(free)))
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, p in enumerate(piv):
            out[p, k] = -r.a[i, f]
    return Matrix(field, field.reduce(out), _trusted=True)


def solve(m: Matrix, b: Matrix) -> Matrix:
    """Particular solution of ``m @ x = b`` with zeros in free coordinates."""
    if m.rows != b.rows:
        raise ValueError("solve: row count mismatch")
    field = m.field
    n = m.cols
    aug = np.hstack([m.a, b.a]) if m.rows else field.zeros((0, n + b.cols))
    r, piv = _rref_array(field, aug)
    for i, p in enumerate(piv):
        if p >= n:
            raise NoSolution("right-hand side is not in the column space")
    x = field.zeros((n, b.cols))
    for i, p in enumerate(piv):
        x[p] = r[i, n:]
    return Matrix(field, x, _trusted=True)


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    a._check(b)
    return Matrix(a.field, a.field.reduce(np.kron(a.a, b.a)), _trusted=True)


def colspace(m: Matrix) -> Matrix:
    """Canonical basis (reduced, as columns) of the column space."""
    if m.cols == 0:
        return Matrix.zeros(m.field, m.rows, 0)
    r, k, _ = rref(m.T)
    return r[:k, :].T


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    if rank(m) < m.rows:
        raise ZeroDivisionError("singular matrix")
    return solve(m, Matrix.identity(m.field, m.rows))


def in_span(basis: Matrix, v: Matrix) -> bool:
    try:
        solve(basis, v)
        return True
    except NoSolution:
        return False


def extend_to_basis(sub: Matrix, candidates: Matrix) -> list[int]:
    """Greedy choice of candidate columns independent modulo ``sub``."""
    field = sub.field
    chosen: list[int] = []
    current = sub
    r0 = rank(current)
    for j in range(candidates.cols):
        trial = hstack(field, [current, candidates.take_cols([j])])
        r1 = rank(trial)
        if r1 > r0:
            chosen.append(j)
            current, r0 = trial, r1
    return chosen


class Coordinates:
    """Coordinates with respect to a fixed column basis.

    ``coords(v)`` returns the unique ``c`` with ``basis @ c == v``; raises
    :class:`NoSolution` for vectors outside the span.
    """

    def __init__(self, basis: Matrix):
        self.basis = basis
        field = basis.field
        n, k = basis.shape
        r, piv = _rref_array(field, np.hstack([basis.a, Matrix.identity(field, n).a]))
        if len(piv) < k or any(p >= k for p in piv[:k]):
            raise ValueError("basis columns are linearly dependent")
        # rows 0..k-1 of r give c = r[:k, k:] @ v ; remaining rows give constraints
        self._left = Matrix(field, r[:k, k:].copy(), _trusted=True)
        self._constraints = Matrix(field, r[k:, k:].copy(), _trusted=True)

    def __call__(self, v: Matrix) -> Matrix:
        if self._constraints.rows and not (self._constraints @ v).is_zero():
            raise NoSolution("vector outside the span")
        return self._left @ v

    def unchecked(self, v: Matrix) -> Matrix:
        return self._left @ v


def random_matrix(field, rows: int, cols: int, rng: np.random.Generator) -> Matrix:
    return Matrix(field, field.random((rows, cols), rng), _trusted=True)


def from_columns(field, cols: Iterable[Matrix], rows: int) -> Matrix:
    return hstack(field, list(cols), rows=rows)
