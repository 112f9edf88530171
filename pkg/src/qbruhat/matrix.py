"""Dense matrices over a division-ring scalar, with 1-based public indexing.

Every formula this package implements is stated with 1-based rows and
columns, so the public surface is 1-based throughout: ``x[i, j]`` addresses
row i, column j with ``1 <= i <= x.rows``.  Off-by-one drift is the main
implementation hazard in this domain and a single convention at the boundary
keeps it contained.

Matrices are immutable; all operations return new matrices and are safe to
share across threads.  Scalar multiplication is never assumed commutative:
row operations multiply on the left, column operations on the right.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IndexOutOfRange, NotGeneric, ShapeMismatch
from .scalars import (
    RationalQuaternion,
    format_scalar,
    inv,
    is_zero,
    parse_scalar,
)


def _coerce_entry(e):
    if isinstance(e, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(e, int):
        return Fraction(e)
    return e


def interval(a: int, b: int) -> tuple:
    """The index interval {a, a+1, ..., b}; empty when a > b."""
    return tuple(range(a, b + 1))


def check_index_set(indices, bound: int) -> tuple:
    """Validate a strictly increasing 1-based index set within [1, bound]."""
    out = tuple(indices)
    for pos, idx in enumerate(out):
        if not isinstance(idx, int):
            raise IndexOutOfRange(f"index {idx!r} is not an integer")
        if idx < 1 or idx > bound:
            raise IndexOutOfRange(f"index {idx} outside [1, {bound}]")
        if pos > 0 and out[pos - 1] >= idx:
            raise IndexOutOfRange(f"index set {out} is not strictly increasing")
    return out


class Matrix:
    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries):
        data = tuple(tuple(_coerce_entry(e) for e in row) for row in entries)
        if not data or not data[0]:
            raise ShapeMismatch("matrices must have at least one row and column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ShapeMismatch("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_e", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls([[0] * m for _ in range(n)])

    @classmethod
    def diagonal(cls, entries) -> "Matrix":
        entries = list(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int, value=1) -> "Matrix":
        """The matrix unit E_{ij}: `value` at (i, j), zero elsewhere."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexOutOfRange(f"unit position ({i}, {j}) outside [1, {n}]^2")
        return cls(
            [[value if (r, c) == (i - 1, j - 1) else 0 for c in range(n)] for r in range(n)]
        )

    # -- access ---------------------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexOutOfRange(
                f"entry ({i}, {j}) outside [1, {self.rows}] x [1, {self.cols}]"
            )
        return self._e[i - 1][j - 1]

    def row(self, i: int) -> tuple:
        if not 1 <= i <= self.rows:
            raise IndexOutOfRange(f"row {i} outside [1, {self.rows}]")
        return self._e[i - 1]

    def col(self, j: int) -> tuple:
        if not 1 <= j <= self.cols:
            raise IndexOutOfRange(f"column {j} outside [1, {self.cols}]")
        return tuple(r[j - 1] for r in self._e)

    def to_lists(self) -> list:
        """Plain 0-based list-of-lists copy of the entries."""
        return [list(row) for row in self._e]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- algebra --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            is_zero(a - b) for ra, rb in zip(self._e, other._e) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch(f"{self.shape_str()} + {other.shape_str()}")
        return Matrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._e, other._e)]
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch(f"{self.shape_str()} - {other.shape_str()}")
        return Matrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._e, other._e)]
        )

    def __neg__(self):
        return Matrix([[-a for a in row] for row in self._e])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape_str()} * {other.shape_str()}")
        cols = list(zip(*other._e))
        return Matrix(
            [[_dot(row, col) for col in cols] for row in self._e]
        )

    __matmul__ = __mul__

    def scale_left(self, s) -> "Matrix":
        """s * x, the scalar acting from the left on every entry."""
        return Matrix([[s * a for a in row] for row in self._e])

    def scale_right(self, s) -> "Matrix":
        """x * s, the scalar acting from the right on every entry."""
        return Matrix([[a * s for a in row] for row in self._e])

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self._e)))

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(a) for a in row] for row in self._e])

    def submatrix(self, I, J) -> "Matrix":
        I = check_index_set(I, self.rows)
        J = check_index_set(J, self.cols)
        if not I or not J:
            raise ShapeMismatch("empty submatrix")
        return Matrix([[self._e[i - 1][j - 1] for j in J] for i in I])

    def delete(self, i: int, j: int) -> "Matrix":
        """The submatrix with row i and column j removed."""
        I = tuple(r for r in range(1, self.rows + 1) if r != i)
        J = tuple(c for c in range(1, self.cols + 1) if c != j)
        return self.submatrix(I, J)

    def inverse(self) -> "Matrix":
        """Exact inverse by Gauss-Jordan elimination with first-nonzero pivoting.

        Row operations apply coefficients on the left, which is the order
        that is correct over a skew field.  Raises NotGeneric naming the
        column where no pivot could be found.
        """
        if not self.is_square:
            raise ShapeMismatch(f"cannot invert {self.shape_str()}")
        n = self.rows
        m = [list(row) + [1 if r == c else 0 for c in range(n)] for r, row in enumerate(self._e)]
        for k in range(n):
            pivot_row = next((r for r in range(k, n) if not is_zero(m[r][k])), None)
            if pivot_row is None:
                raise NotGeneric(
                    f"matrix is singular: no pivot in column {k + 1}",
                    witness=("pivot", k + 1),
                )
            m[k], m[pivot_row] = m[pivot_row], m[k]
            p = inv(m[k][k])
            m[k] = [p * a for a in m[k]]
            for r in range(n):
                if r != k and not is_zero(m[r][k]):
                    f = m[r][k]
                    m[r] = [a - f * b for a, b in zip(m[r], m[k])]
        return Matrix([row[n:] for row in m])

    # -- shape predicates -----------------------------------------------------

    def is_upper_triangular(self) -> bool:
        return all(
            is_zero(self._e[i][j]) for i in range(self.rows) for j in range(min(i, self.cols))
        )

    def is_lower_triangular(self) -> bool:
        return all(
            is_zero(self._e[i][j])
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_diagonal(self) -> bool:
        return self.is_upper_triangular() and self.is_lower_triangular()

    def is_unitriangular(self, kind: str = "upper") -> bool:
        if not self.is_square:
            return False
        shape_ok = self.is_upper_triangular() if kind == "upper" else self.is_lower_triangular()
        return shape_ok and all(is_zero(self._e[i][i] - 1) for i in range(self.rows))

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.rows)

    # -- io -------------------------------------------------------------------

    def shape_str(self) -> str:
        return f"{self.rows}x{self.cols}"

    def __repr__(self):
        body = "; ".join(
            " ".join(format_scalar(a) if _formattable(a) else repr(a) for a in row)
            for row in self._e
        )
        return f"Matrix[{self.shape_str()}]({body})"


def _dot(row, col):
    it = zip(row, col)
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def _formattable(a):
    return isinstance(a, (int, Fraction, RationalQuaternion))


# -- spec-level operation aliases ---------------------------------------------


def submatrix(x: Matrix, I, J) -> Matrix:
    return x.submatrix(I, J)


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    return x * y


def mat_inv(x: Matrix) -> Matrix:
    return x.inverse()


def sigma(x: Matrix) -> Matrix:
    """The 180-degree rotation sigma(x)[i, j] = x[n+1-i, n+1-j]; involutive."""
    if not x.is_square:
        raise ShapeMismatch("sigma needs a square matrix")
    n = x.rows
    return Matrix([[x[n + 1 - i, n + 1 - j] for j in range(1, n + 1)] for i in range(1, n + 1)])


def alternating_signs(n: int) -> Matrix:
    """diag(-1, 1, -1, ..., (-1)^n), the sign matrix conjugating the inverse."""
    return Matrix.diagonal([(-1) ** i for i in range(1, n + 1)])


def _sign_conjugate(x: Matrix) -> Matrix:
    # J x J without the matrix products: flip the odd-parity positions
    return Matrix(
        [
            [a if (i + j) % 2 == 0 else -a for j, a in enumerate(row)]
            for i, row in enumerate(x.to_lists())
        ]
    )


def iota(x: Matrix) -> Matrix:
    """The positive inverse J x^{-1} J, an involutive antiautomorphism.

    Fixes the elementary unitriangular generators and inverts diagonal
    matrices entrywise.
    """
    return _sign_conjugate(x.inverse())


def iota_inverse_free(x: Matrix) -> Matrix:
    """(x^iota)^{-1} = J x J, computed without inverting anything."""
    return _sign_conjugate(x)


def rank(x: Matrix) -> int:
    """Rank over the scalar's division ring, by left-row reduction."""
    m = x.to_lists()
    n_rows, n_cols = x.rows, x.cols
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if not is_zero(m[i][c])), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        p = inv(m[r][c])
        m[r] = [p * a for a in m[r]]
        for i in range(n_rows):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == n_rows:
            break
    return r


# -- JSON wire format ---------------------------------------------------------


def matrix_to_json(x: Matrix) -> dict:
    """{"n": rows, "m": cols, "entries": [[scalar strings]]}, bit-exact."""
    return {
        "n": x.rows,
        "m": x.cols,
        "entries": [[format_scalar(a) for a in row] for row in x.to_lists()],
    }


def matrix_from_json(payload: dict) -> Matrix:
    try:
        n, m, entries = payload["n"], payload["m"], payload["entries"]
    except (TypeError, KeyError) as exc:
        raise ValueError("matrix JSON needs keys n, m, entries") from exc
    parsed = [[parse_scalar(s) for s in row] for row in entries]
    if len(parsed) != n or any(len(row) != m for row in parsed):
        raise ShapeMismatch(f"entries do not match declared shape {n}x{m}")
    if any(isinstance(a, RationalQuaternion) for row in parsed for a in row):
        parsed = [
            [a if isinstance(a, RationalQuaternion) else RationalQuaternion(a) for a in row]
            for row in parsed
        ]
    return Matrix(parsed)
