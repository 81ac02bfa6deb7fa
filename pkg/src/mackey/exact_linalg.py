"""
Exact linear algebra over the rationals.

Entries are Python ints or Fractions (ints whenever the denominator is 1, which
keeps the common integer case fast).  Elimination works on sparse rows and
always produces the reduced row echelon form, so every basis handed out here is
canonical: leftmost-nonzero pivots, free variables set to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence


def q(x) -> int | Fraction:
    """Normalize a number to an exact rational (int when integral)."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return q(Fraction(x))
    if isinstance(x, float):
        raise TypeError("floating point entries are not allowed")
    return q(Fraction(x))


def qstr(x) -> str:
    x = q(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


class RatMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data = tuple((0,) * cols for _ in range(rows))
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError(f"data does not have shape {rows}x{cols}")
            self._data = tuple(tuple(q(x) for x in r) for r in data)
        self._hash = None

    @classmethod
    def _raw(cls, rows, cols, data):
        m = cls.__new__(cls)
        m.rows, m.cols, m._data, m._hash = rows, cols, data, None
        return m

    # -- constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = list(rows)
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence], rows: int) -> "RatMatrix":
        cols = list(cols)
        return cls(rows, len(cols), [[c[i] for c in cols] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls._raw(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._raw(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def column(cls, vec: Sequence) -> "RatMatrix":
        return cls(len(vec), 1, [[x] for x in vec])

    # -- access
    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    # -- algebra
    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(qstr(x) for x in r) for r in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same(other)
        return RatMatrix._raw(self.rows, self.cols, tuple(
            tuple(q(a + b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same(other)
        return RatMatrix._raw(self.rows, self.cols, tuple(
            tuple(q(a - b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._raw(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self._data))

    def scale(self, c) -> "RatMatrix":
        c = q(c)
        return RatMatrix._raw(self.rows, self.cols, tuple(tuple(q(c * a) for a in r) for r in self._data))

    def __mul__(self, c):
        if isinstance(c, RatMatrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        n = other.cols
        odata = other._data
        out = []
        for r in self._data:
            acc = [0] * n
            for k, a in enumerate(r):
                if a == 0:
                    continue
                ok = odata[k]
                for j in range(n):
                    b = ok[j]
                    if b != 0:
                        acc[j] += a * b
            out.append(tuple(q(x) for x in acc))
        return RatMatrix._raw(self.rows, n, tuple(out))

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(q(sum(a * v for a, v in zip(r, vec) if a != 0 and v != 0)) for r in self._data)

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._raw(self.cols, self.rows, tuple(zip(*self._data)) if self.rows else
                              tuple(() for _ in range(self.cols)))

    def rank(self) -> int:
        return len(_rref_rows(self._sparse_rows(), self.cols)[1])

    def _sparse_rows(self) -> list[dict]:
        return [{j: x for j, x in enumerate(r) if x != 0} for r in self._data]

    def flatten(self) -> tuple:
        """Row-major entries."""
        return tuple(x for r in self._data for x in r)

    @classmethod
    def unflatten(cls, vec: Sequence, rows: int, cols: int) -> "RatMatrix":
        if len(vec) != rows * cols:
            raise ValueError("vector length mismatch")
        return cls(rows, cols, [vec[i * cols:(i + 1) * cols] for i in range(rows)])

    def to_json(self) -> list[list[str]]:
        return [[qstr(x) for x in r] for r in self._data]

    @classmethod
    def from_json(cls, data, rows: int | None = None, cols: int | None = None) -> "RatMatrix":
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(rows, cols, [[q(x) for x in r] for r in data])


# ---------------------------------------------------------------------------
# elimination

def _rref_rows(rows: Iterable[dict], ncols: int) -> tuple[dict[int, dict], list[int]]:
    """Reduced row echelon form of the span of sparse rows.

    Returns (pivot_col -> normalized row, sorted pivot columns).  The RREF of a
    row space is unique, so the result does not depend on insertion order.
    """
    piv: dict[int, dict] = {}
    for row in rows:
        r = dict(row)
        for p in [p for p in r if p in piv]:
            c = r.get(p, 0)
            if c == 0:
                continue
            for j, x in piv[p].items():
                v = r.get(j, 0) - c * x
                if v == 0:
                    r.pop(j, None)
                else:
                    r[j] = q(v)
        r = {j: x for j, x in r.items() if x != 0}
        if not r:
            continue
        p = min(r)
        inv = Fraction(1) / r[p] if r[p] != 1 else 1
        if inv != 1:
            r = {j: q(x * inv) for j, x in r.items()}
        for p2, other in piv.items():
            c = other.get(p, 0)
            if c == 0:
                continue
            for j, x in r.items():
                v = other.get(j, 0) - c * x
                if v == 0:
                    other.pop(j, None)
                else:
                    other[j] = q(v)
        piv[p] = r
    return piv, sorted(piv)


def rref(A: RatMatrix) -> tuple[RatMatrix, list[int]]:
    piv, cols = _rref_rows(A._sparse_rows(), A.cols)
    data = [[piv[p].get(j, 0) for j in range(A.cols)] for p in cols]
    return RatMatrix(len(cols), A.cols, data), cols


def rank(A: RatMatrix) -> int:
    return A.rank()


def solve(A: RatMatrix, B: RatMatrix) -> RatMatrix | None:
    """Some X with A @ X == B, or None.  Free variables are set to zero."""
    if A.rows != B.rows:
        raise ValueError(f"row mismatch: A has {A.rows} rows, B has {B.rows}")
    n, m = A.cols, B.cols
    rows = []
    for i in range(A.rows):
        r = {j: x for j, x in enumerate(A.row(i)) if x != 0}
        r.update({n + j: x for j, x in enumerate(B.row(i)) if x != 0})
        rows.append(r)
    piv, cols = _rref_rows(rows, n + m)
    if cols and cols[-1] >= n:
        return None
    X = [[0] * m for _ in range(n)]
    for p in cols:
        for j, x in piv[p].items():
            if j >= n:
                X[p][j - n] = x
    return RatMatrix(n, m, X)


def kernel_basis(A: RatMatrix) -> RatMatrix:
    """Columns form the canonical basis of {x : A x = 0}."""
    n = A.cols
    piv, cols = _rref_rows(A._sparse_rows(), n)
    pset = set(cols)
    free = [j for j in range(n) if j not in pset]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for p in cols:
            c = piv[p].get(f, 0)
            if c != 0:
                v[p] = -c
        basis.append(v)
    return RatMatrix.from_cols(basis, n)


def inverse(A: RatMatrix) -> RatMatrix | None:
    if A.rows != A.cols:
        return None
    return solve(A, RatMatrix.identity(A.rows))


def is_invertible(A: RatMatrix) -> bool:
    return A.rows == A.cols and A.rank() == A.rows


@dataclass(frozen=True)
class QuotientSpace:
    """A quotient V / span(relations) with a chosen basis.

    The basis is the set of non-pivot ambient coordinates of the RREF of the
    relation span; ``section`` embeds them back as standard basis vectors.
    """

    ambient_dim: int
    projection: RatMatrix  # ambient -> quotient
    section: RatMatrix  # quotient -> ambient

    @property
    def dim(self) -> int:
        return self.projection.rows

    def project(self, vec: Sequence) -> tuple:
        return self.projection.apply(vec)

    def lift(self, vec: Sequence) -> tuple:
        return self.section.apply(vec)

    @cached_property
    def _proj_cols(self) -> list[dict]:
        P = self.projection
        return [{i: P[i, j] for i in range(P.rows) if P[i, j] != 0} for j in range(P.cols)]

    def project_sparse(self, vec: dict) -> list:
        """Project an ambient vector given as {coordinate: value}."""
        out = [0] * self.dim
        cols = self._proj_cols
        for j, x in vec.items():
            if x:
                for i, p in cols[j].items():
                    out[i] += p * x
        return [q(x) for x in out]


def quotient_by(relations: RatMatrix) -> QuotientSpace:
    return _quotient_from_rows(relations.T._sparse_rows(), relations.rows)


def _quotient_from_rows(rows: Iterable[dict], n: int) -> QuotientSpace:
    piv, cols = _rref_rows(rows, n)
    pset = set(cols)
    free = [j for j in range(n) if j not in pset]
    fidx = {f: i for i, f in enumerate(free)}
    P = [[0] * n for _ in free]
    for f, i in fidx.items():
        P[i][f] = 1
    for p in cols:
        for j, x in piv[p].items():
            if j != p:
                P[fidx[j]][p] = -x
    S = [[0] * len(free) for _ in range(n)]
    for f, i in fidx.items():
        S[f][i] = 1
    return QuotientSpace(n, RatMatrix(len(free), n, P), RatMatrix(n, len(free), S))


def kron(*mats: RatMatrix) -> RatMatrix:
    """Kronecker product; the first factor's indices are outermost."""
    if not mats:
        return RatMatrix.identity(1)
    out = mats[0]
    for B in mats[1:]:
        out = _kron2(out, B)
    return out


def _kron2(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    rows = []
    for i in range(A.rows):
        ar = A.row(i)
        for k in range(B.rows):
            br = B.row(k)
            rows.append(tuple(q(a * b) if a and b else 0 for a in ar for b in br))
    return RatMatrix._raw(A.rows * B.rows, A.cols * B.cols, tuple(rows))


def direct_sum(*mats: RatMatrix) -> RatMatrix:
    R = sum(m.rows for m in mats)
    C = sum(m.cols for m in mats)
    data = []
    c0 = 0
    for m in mats:
        for i in range(m.rows):
            data.append((0,) * c0 + m.row(i) + (0,) * (C - c0 - m.cols))
        c0 += m.cols
    return RatMatrix._raw(R, C, tuple(data))


def hstack(mats: Sequence[RatMatrix], rows: int | None = None) -> RatMatrix:
    mats = list(mats)
    if not mats:
        return RatMatrix.zeros(rows or 0, 0)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise ValueError("hstack row mismatch")
    return RatMatrix._raw(r, sum(m.cols for m in mats),
                          tuple(sum((m.row(i) for m in mats), ()) for i in range(r)))


def vstack(mats: Sequence[RatMatrix], cols: int | None = None) -> RatMatrix:
    mats = list(mats)
    if not mats:
        return RatMatrix.zeros(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise ValueError("vstack column mismatch")
    return RatMatrix._raw(sum(m.rows for m in mats), c, tuple(r for m in mats for r in m._data))


class SparseColumns:
    """Accumulates sparse column vectors of a fixed height (large relation systems)."""

    def __init__(self, height: int):
        self.height = height
        self.columns: list[dict] = []

    def add(self, col: dict):
        col = {i: q(x) for i, x in col.items() if x != 0}
        if col:
            self.columns.append(col)

    def quotient(self) -> QuotientSpace:
        return _quotient_from_rows(self.columns, self.height)


def sparse_kernel(rows: Iterable[dict], ncols: int) -> list[list]:
    """Canonical kernel basis of a system given as sparse equation rows."""
    piv, cols = _rref_rows(rows, ncols)
    pset = set(cols)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [0] * ncols
        v[f] = 1
        for p in cols:
            c = piv[p].get(f, 0)
            if c != 0:
                v[p] = -c
        basis.append(v)
    return basis
