"""Quasideterminants, positive quasiminors and quasi-Plucker coordinates.

The quasideterminant of a square matrix A marked at (p, q) is

    |A|_pq = a_pq - r_p (A^pq)^{-1} c_q

where A^pq deletes row p and column q, and r_p, c_q are the punctured row
and column.  It exists exactly when the inner submatrix is invertible, and
it replaces a *ratio* of determinants, not a determinant: over a
commutative scalar |A|_pq = (-1)^{p+q} det A / det A^pq.

All marks are given in the indexing of the ambient matrix ("global"
positions): a positive quasiminor of x is specified by row set I, column
set J and a marked position (i, j) with i in I, j in J.  The sign
(-1)^{d_i(I) + d_j(J)} counts the members of I above i and of J above j,
which is what makes the commutative specialization a positive ratio of
minors.

Permutation-indexed quasiminors carry a level k and a pair (u, v); they
equal the positive quasiminor with I = u[1,k], J = v[1,k] marked at
(u(k), v(k)), and also the principal quasiminor of ubar^{-1} x vbar where
ubar, vbar are the signed representatives.  `quasiminor_indexed` computes
both and insists they agree; `quasiminor_uv` is the fast single-route
version used in inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRange, NotGeneric, QBruhatError
from .matrix import Matrix, check_index_set, interval
from .scalars import inv, is_zero
from .weyl import Permutation, representative


def quasideterminant(A: Matrix, p: int, q: int):
    """|A|_pq, exact; NotGeneric when the inner submatrix is singular."""
    if not A.is_square:
        raise IndexOutOfRange(f"quasideterminant needs a square matrix, got {A.shape_str()}")
    n = A.rows
    a_pq = A[p, q]
    if n == 1:
        return a_pq
    inner = A.delete(p, q)
    try:
        inner_inv = inner.inverse()
    except NotGeneric as exc:
        raise NotGeneric(
            f"quasideterminant |A|_({p},{q}) undefined: inner {n - 1}x{n - 1} submatrix singular",
            witness=("inner", p, q),
        ) from exc
    row = Matrix([[A[p, c] for c in range(1, n + 1) if c != q]])
    col = Matrix([[A[r, q]] for r in range(1, n + 1) if r != p])
    return a_pq - (row * inner_inv * col)[1, 1]


def quasidet_expansion(A: Matrix, p: int, q: int):
    """|A|_pq via the expansion over inverted quasiminors of A^pq.

    Cross-check only: needs every |A^pq|_{p',q'} defined and invertible,
    a much stronger genericity requirement than the definition itself.
    """
    n = A.rows
    if n == 1:
        return A[p, q]
    inner = A.delete(p, q)
    rows = [r for r in range(1, n + 1) if r != p]
    cols = [c for c in range(1, n + 1) if c != q]
    acc = A[p, q]
    for pr, r in enumerate(rows, start=1):
        for pc, c in enumerate(cols, start=1):
            m = quasideterminant(inner, pr, pc)
            if is_zero(m):
                raise NotGeneric(
                    f"expansion term |A^({p}{q})|_({r},{c}) is zero",
                    witness=("expansion", r, c),
                )
            acc = acc - A[p, c] * inv(m) * A[r, q]
    return acc


def boxed_quasiminor(x: Matrix, rows, cols, p: int, q: int):
    """|x_{rows,cols}|_{p,q} with the mark given in global coordinates."""
    rows = check_index_set(rows, x.rows)
    cols = check_index_set(cols, x.cols)
    try:
        pi = rows.index(p) + 1
        qi = cols.index(q) + 1
    except ValueError:
        raise IndexOutOfRange(f"mark ({p}, {q}) not inside {rows} x {cols}") from None
    return quasideterminant(x.submatrix(rows, cols), pi, qi)


@dataclass(frozen=True)
class MinorSpec:
    """A positioned quasiminor: row set I, column set J, mark (i, j)."""

    I: tuple
    J: tuple
    i: int
    j: int

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(self.I))
        object.__setattr__(self, "J", tuple(self.J))
        if len(self.I) != len(self.J):
            raise IndexOutOfRange(f"|I| = {len(self.I)} != |J| = {len(self.J)}")
        if self.i not in self.I or self.j not in self.J:
            raise IndexOutOfRange(f"mark ({self.i}, {self.j}) not in {self.I} x {self.J}")


def count_greater(indices, pivot: int) -> int:
    return sum(1 for a in indices if a > pivot)


def positive_quasiminor(x: Matrix, spec: MinorSpec):
    """(-1)^{d_i(I) + d_j(J)} |x_{I,J}|_{i,j}."""
    sign = (-1) ** (count_greater(spec.I, spec.i) + count_greater(spec.J, spec.j))
    value = boxed_quasiminor(x, spec.I, spec.J, spec.i, spec.j)
    return value if sign == 1 else -value


def principal_quasiminor(x: Matrix, i: int):
    """The principal i x i quasiminor, marked at its lower-right corner."""
    return boxed_quasiminor(x, interval(1, i), interval(1, i), i, i)


@dataclass(frozen=True)
class SnMinorSpec:
    """A quasiminor addressed by a pair of permutations and a level k."""

    u: Permutation
    v: Permutation
    k: int

    def minor_spec(self) -> MinorSpec:
        if not 1 <= self.k <= self.u.n:
            raise IndexOutOfRange(f"level {self.k} outside [1, {self.u.n}]")
        rng = interval(1, self.k)
        return MinorSpec(
            self.u.act_set(rng), self.v.act_set(rng), self.u(self.k), self.v(self.k)
        )


def quasiminor_uv(x: Matrix, u: Permutation, v: Permutation, k: int):
    """The positive quasiminor at level k for (u, v), direct route only."""
    return positive_quasiminor(x, SnMinorSpec(u, v, k).minor_spec())


def quasiminor_indexed(x: Matrix, spec: SnMinorSpec):
    """Permutation-indexed quasiminor, evaluated along both defining routes.

    Direct route: the signed quasiminor of the (I, J, i, j) translation.
    Conjugation route: the principal level-k quasiminor of ubar^{-1} x vbar.
    The two must agree exactly; a mismatch means the sign bookkeeping broke
    and is reported as a hard error, never as a value.
    """
    direct = positive_quasiminor(x, spec.minor_spec())
    conj = principal_quasiminor(
        representative(spec.u).inverse() * x * representative(spec.v), spec.k
    )
    if not is_zero(direct - conj):
        raise QBruhatError(
            f"quasiminor routes disagree at level {spec.k}: {direct!r} vs {conj!r}"
        )
    return direct


def quasi_plucker_left(A: Matrix, i: int, j: int, I):
    """Left quasi-Plucker coordinate q^I_{ij} of a k x n matrix, k < n.

    Ratio of two column-selected quasideterminants sharing the auxiliary
    row s; the value does not depend on s, and this is asserted by
    evaluating at the two smallest usable choices.
    """
    k = A.rows
    I = check_index_set(I, A.cols)
    if len(I) != k - 1:
        raise IndexOutOfRange(f"need |I| = {k - 1}, got {len(I)}")
    if i in I:
        raise IndexOutOfRange(f"column {i} must avoid I = {I}")
    if not (1 <= i <= A.cols and 1 <= j <= A.cols):
        raise IndexOutOfRange(f"columns ({i}, {j}) outside [1, {A.cols}]")
    first = Matrix([[A[r, c] for c in (i,) + I] for r in range(1, k + 1)])
    second = Matrix([[A[r, c] for c in (j,) + I] for r in range(1, k + 1)])
    found = []
    for s in range(1, k + 1):
        try:
            denom = quasideterminant(first, s, 1)
            if is_zero(denom):
                continue
            value = inv(denom) * quasideterminant(second, s, 1)
        except NotGeneric:
            continue
        found.append((s, value))
        if len(found) == 2:
            break
    if not found:
        raise NotGeneric(
            f"left quasi-Plucker q^{I}_({i},{j}) undefined for every auxiliary row",
            witness=("plucker-left", I, i, j),
        )
    if len(found) == 2 and not is_zero(found[0][1] - found[1][1]):
        raise QBruhatError(
            f"left quasi-Plucker depends on the auxiliary row: {found!r}"
        )
    return found[0][1]


def quasi_plucker_right(B: Matrix, i: int, j: int, I):
    """Right quasi-Plucker coordinate r^I_{ij} of an n x k matrix, k < n."""
    k = B.cols
    I = check_index_set(I, B.rows)
    if len(I) != k - 1:
        raise IndexOutOfRange(f"need |I| = {k - 1}, got {len(I)}")
    if j in I:
        raise IndexOutOfRange(f"row {j} must avoid I = {I}")
    if not (1 <= i <= B.rows and 1 <= j <= B.rows):
        raise IndexOutOfRange(f"rows ({i}, {j}) outside [1, {B.rows}]")
    first = Matrix([[B[r, c] for c in range(1, k + 1)] for r in (i,) + I])
    second = Matrix([[B[r, c] for c in range(1, k + 1)] for r in (j,) + I])
    found = []
    for t in range(1, k + 1):
        try:
            denom = quasideterminant(second, 1, t)
            if is_zero(denom):
                continue
            value = quasideterminant(first, 1, t) * inv(denom)
        except NotGeneric:
            continue
        found.append((t, value))
        if len(found) == 2:
            break
    if not found:
        raise NotGeneric(
            f"right quasi-Plucker r^{I}_({i},{j}) undefined for every auxiliary column",
            witness=("plucker-right", I, i, j),
        )
    if len(found) == 2 and not is_zero(found[0][1] - found[1][1]):
        raise QBruhatError(
            f"right quasi-Plucker depends on the auxiliary column: {found!r}"
        )
    return found[0][1]


def sylvester_reduce(A: Matrix, I0, J0) -> Matrix:
    """Sylvester reduction of A by the pivot submatrix A_{I0,J0}.

    Returns B indexed by the complements of I0 and J0 in their original
    order, with b_pq the quasideterminant of the bordered pivot block
    marked at (p, q); |A|_st = |B|_st for every surviving position.  An
    empty pivot returns A itself; the pivot {2..n-1} is the noncommutative
    Lewis Carroll setup.
    """
    if not A.is_square:
        raise IndexOutOfRange("sylvester_reduce needs a square matrix")
    n = A.rows
    I0 = check_index_set(I0, n)
    J0 = check_index_set(J0, n)
    if len(I0) != len(J0):
        raise IndexOutOfRange(f"|I0| = {len(I0)} != |J0| = {len(J0)}")
    if len(I0) >= n:
        raise IndexOutOfRange("pivot must be a proper submatrix")
    if not I0:
        return A
    try:
        A.submatrix(I0, J0).inverse()
    except NotGeneric as exc:
        raise NotGeneric(
            f"pivot submatrix A_{I0},{J0} is singular",
            witness=("pivot-block", I0, J0),
        ) from exc
    comp_rows = tuple(r for r in range(1, n + 1) if r not in I0)
    comp_cols = tuple(c for c in range(1, n + 1) if c not in J0)
    entries = []
    for p in comp_rows:
        row = []
        for q in comp_cols:
            rows = tuple(sorted(I0 + (p,)))
            cols = tuple(sorted(J0 + (q,)))
            row.append(boxed_quasiminor(A, rows, cols, p, q))
        entries.append(row)
    return Matrix(entries)


class MinorCache:
    """Memoizes positive quasiminors of one fixed matrix.

    The identity grids evaluate the same quasiminor over and over; NotGeneric
    outcomes are cached too, so repeated failures cost nothing.
    """

    def __init__(self, x: Matrix):
        self.x = x
        self._memo = {}

    def spec(self, spec: MinorSpec):
        key = (spec.I, spec.J, spec.i, spec.j)
        hit = self._memo.get(key)
        if hit is None:
            try:
                hit = ("ok", positive_quasiminor(self.x, spec))
            except NotGeneric as exc:
                hit = ("err", exc)
            self._memo[key] = hit
        if hit[0] == "err":
            raise hit[1]
        return hit[1]

    def uv(self, u: Permutation, v: Permutation, k: int):
        return self.spec(SnMinorSpec(u, v, k).minor_spec())
