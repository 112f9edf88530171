"""Bruhat cell classification, reduced-cell membership and twist maps.

Classification reduces x to a signed, scaled permutation matrix using only
operations from the upper Borel on both sides: row operations may add a
*lower* row to a higher one (left multiplication by B), column operations
may add an *earlier* column to a later one (right multiplication by B).
The pivot of each column is its bottom-most surviving nonzero entry; the
pivot pattern is the permutation u with x in B u B.  The opposite cell
datum comes from the same procedure applied to the 180-degree rotation of
x, conjugating by the longest permutation.

The twist of a reduced cell point is

    psi(x) = ([x vbar']_-)^iota (x^iota)^{-1} ([ubar^{-1} x]_+)^iota

with vbar' the signed representative of v^{-1} and iota the positive
inverse; (x^iota)^{-1} collapses to J x J and costs no inversion.  The
general twist prepends the permuted torus part of [ubar^{-1} x]_0 and is
left H-equivariant.  Errors distinguish "wrong cell" (WrongCell) from "a
Gauss projection failed" (NotGeneric), because the harness treats them
differently.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import NotGeneric, QBruhatError, ShapeMismatch, WrongCell
from .gauss import gauss_parts
from .matrix import Matrix, iota, iota_inverse_free, rank, sigma
from .quasidet import quasiminor_uv
from .scalars import inv, is_zero
from .weyl import Permutation, representative


def _pivot_pattern(x: Matrix, track: bool):
    """Reduce x by upper-Borel actions on both sides.

    Returns (u, M, L, R) with L x R = M a signed scaled permutation matrix
    whose column-j pivot sits in row u(j).  L and R are upper
    unitriangular, tracked only when `track` is set.
    """
    if not x.is_square:
        raise ShapeMismatch("classification needs a square matrix")
    n = x.rows
    m = x.to_lists()
    lam = [[1 if r == c else 0 for c in range(n)] for r in range(n)] if track else None
    rho = [[1 if r == c else 0 for c in range(n)] for r in range(n)] if track else None
    used = [False] * n
    images = [0] * n
    for j in range(n):
        candidates = [r for r in range(n) if not used[r] and not is_zero(m[r][j])]
        if not candidates:
            raise NotGeneric(
                f"matrix is singular: column {j + 1} has no usable pivot",
                witness=("column", j + 1),
            )
        r = max(candidates)
        used[r] = True
        images[j] = r + 1
        pinv = inv(m[r][j])
        for i in range(r):
            if not used[i] and not is_zero(m[i][j]):
                f = m[i][j] * pinv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                if track:
                    lam[i] = [a - f * b for a, b in zip(lam[i], lam[r])]
        for c in range(j + 1, n):
            if not is_zero(m[r][c]):
                g = pinv * m[r][c]
                for i in range(n):
                    m[i][c] = m[i][c] - m[i][j] * g
                if track:
                    for i in range(n):
                        rho[i][c] = rho[i][c] - rho[i][j] * g
    return (
        Permutation(images),
        Matrix(m),
        Matrix(lam) if track else None,
        Matrix(rho) if track else None,
    )


class CellLabel(NamedTuple):
    """The double Bruhat cell datum of a matrix; compares equal to (u, v)."""

    u: Permutation
    v: Permutation


def classify(x: Matrix) -> CellLabel:
    """The unique (u, v) with x in BuB and x in B^- v B^-."""
    u = _pivot_pattern(x, track=False)[0]
    n = x.rows
    w0 = Permutation.longest(n)
    v_rot = _pivot_pattern(sigma(x), track=False)[0]
    return CellLabel(u, w0 * v_rot * w0)


def bruhat_factor(x: Matrix):
    """(b1, u, b2) with x = b1 * representative(u) * b2 and b1, b2 upper."""
    u, m, lam, rho = _pivot_pattern(x, track=True)
    h0 = m * representative(u).inverse()
    if not h0.is_diagonal():
        raise QBruhatError("pivot normal form did not reduce to a diagonal twist")
    return lam.inverse() * h0, u, rho.inverse()


def in_bruhat_cell(x: Matrix, u: Permutation) -> bool:
    """Rank-profile membership oracle for x in BuB.

    x lies in BuB iff every lower-left corner block has the rank forced by
    the pivot pattern of u; computed by row reduction, independently of
    the classification routine.
    """
    n = x.rows
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            expected = sum(1 for k in range(1, j + 1) if u(k) >= i)
            block = x.submatrix(tuple(range(i, n + 1)), tuple(range(1, j + 1)))
            if rank(block) != expected:
                return False
    return True


def in_opposite_cell(x: Matrix, v: Permutation) -> bool:
    """Rank-profile membership oracle for x in B^- v B^-."""
    w0 = Permutation.longest(x.rows)
    return in_bruhat_cell(sigma(x), w0 * v * w0)


def schubert_support(u: Permutation) -> frozenset:
    """Positions (i, j), i < j, where u U^- u^{-1} meets U."""
    uinv = u.inverse()
    return frozenset(
        (i, j)
        for i in range(1, u.n + 1)
        for j in range(i + 1, u.n + 1)
        if uinv(i) > uinv(j)
    )


def bruhat_factor_schubert(x: Matrix, u: Permutation | None = None):
    """(n_u, b) with x = n_u * representative(u) * b, n_u in U(u), b upper.

    Constructive form of BuB = U(u) u B: the unipotent part of the Borel
    factor is split into its U(u) and u U u^{-1} components by peeling
    superdiagonals, and the complementary piece is conjugated across the
    representative into the right-hand Borel factor.
    """
    b1, u_found, b2 = bruhat_factor(x)
    if u is None:
        u = u_found
    elif u != u_found:
        raise WrongCell(f"x lies in the cell of {u_found!r}", expected=u, actual=u_found)
    n = x.rows
    support = schubert_support(u)
    h = Matrix.diagonal([b1[i, i] for i in range(1, n + 1)])
    nt = h.inverse() * b1
    part = Matrix.identity(n)
    for dist in range(1, n):
        resid = part.inverse() * nt
        patch = [[0] * n for _ in range(n)]
        changed = False
        for i in range(1, n):
            j = i + dist
            if j <= n and (i, j) in support and not is_zero(resid[i, j]):
                patch[i - 1][j - 1] = resid[i, j]
                changed = True
        if changed:
            part = part * (Matrix.identity(n) + Matrix(patch))
    rest = part.inverse() * nt
    if any(not is_zero(rest[i, j]) for (i, j) in support):
        raise QBruhatError("unipotent splitting failed to clear the Schubert support")
    ubar = representative(u)
    n_u = h * part * h.inverse()
    b = ubar.inverse() * (h * rest) * ubar * b2
    return n_u, b


def in_reduced_cell(x: Matrix, u: Permutation, v: Permutation) -> bool:
    """True iff the level-i quasiminors at (u, e) all equal 1.

    Raises WrongCell when x is not in the double cell of (u, v) at all;
    within the cell this is the torus-normalization test cutting out the
    reduced cell.
    """
    actual = classify(x)
    if actual != (u, v):
        raise WrongCell(
            f"x lies in the cell of {actual!r}, not ({u!r}, {v!r})",
            expected=(u, v),
            actual=actual,
        )
    e = Permutation.identity(x.rows)
    return all(
        is_zero(quasiminor_uv(x, u, e, i) - 1) for i in range(1, x.rows + 1)
    )


def _projection(kind: str, m: Matrix, label: str) -> Matrix:
    try:
        low, mid, up = gauss_parts(m)
    except NotGeneric as exc:
        raise NotGeneric(
            f"Gauss projection {label} failed: {exc}", witness=("projection", label)
        ) from exc
    return {"-": low, "0": mid, "+": up}[kind]


def twist_reduced(x: Matrix, u: Permutation, v: Permutation, check: bool = True) -> Matrix:
    """The twist of a reduced cell point; lands in the opposite reduced cell."""
    if check and not in_reduced_cell(x, u, v):
        raise WrongCell(
            f"x is in the double cell of ({u!r}, {v!r}) but not in its reduced cell"
        )
    vinv_bar = representative(v.inverse())
    ubar_inv = representative(u).inverse()
    left = _projection("-", x * vinv_bar, "[x vbar']_-")
    right = _projection("+", ubar_inv * x, "[ubar^-1 x]_+")
    return iota(left) * iota_inverse_free(x) * iota(right)


def torus_twist(u: Permutation, h: Matrix) -> Matrix:
    """u(h) = ubar h ubar^{-1}; permutes the diagonal entries by u."""
    if not h.is_diagonal():
        raise ShapeMismatch("torus_twist needs a diagonal matrix")
    ubar = representative(u)
    out = ubar * h * ubar.inverse()
    if not out.is_diagonal():
        raise QBruhatError("conjugated torus element is not diagonal")
    return out


def twist_general(
    x: Matrix,
    u: Permutation,
    v: Permutation,
    check: bool = True,
    cross_check: bool = False,
) -> Matrix:
    """Left H-equivariant twist on the full double cell.

    With `cross_check`, the two alternative closed forms are evaluated as
    well and must agree exactly.
    """
    if check:
        actual = classify(x)
        if actual != (u, v):
            raise WrongCell(
                f"x lies in the cell of {actual!r}, not ({u!r}, {v!r})",
                expected=(u, v),
                actual=actual,
            )
    ubar = representative(u)
    ubar_inv = ubar.inverse()
    vbar = representative(v)
    vinv_bar = representative(v.inverse())
    try:
        _, mid0, up0 = gauss_parts(ubar_inv * x)
    except NotGeneric as exc:
        raise NotGeneric(
            f"Gauss projection [ubar^-1 x] failed: {exc}",
            witness=("projection", "[ubar^-1 x]"),
        ) from exc
    torus = torus_twist(u, mid0)
    left = _projection("-", x * vinv_bar, "[x vbar']_-")
    core = iota_inverse_free(x)
    result = torus * iota(left) * core * iota(up0)
    if cross_check:
        alt1 = torus * _projection("+", core * vbar.inverse(), "[(vbar x^iota)^-1]_+") * vbar * iota(up0)
        uinv_bar = representative(u.inverse())
        alt2 = torus * iota(left) * uinv_bar.inverse() * _projection(
            "-", uinv_bar * core, "[ubar' (x^iota)^-1]_-"
        )
        if result != alt1 or result != alt2:
            raise QBruhatError("the three twist formulas disagree")
    return result
