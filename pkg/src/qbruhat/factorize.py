"""Elementary generators, product maps, and the factorization algorithms.

Three families of factorization live here:

* the direct unipotent/upper factorizations driven by boxed quasiminors of
  the input itself (``solve_standard_unipotent``, ``upper_factorize``);
* parameter recovery through the twist: the diagonal part comes from
  level quasiminors of x at (u, e), the one-parameter factors from
  quasiminor ratios of y = psi(x) indexed by subwords of the double word.
  Each parameter has two stated equal forms per branch; both are evaluated
  and must agree, and the recovered parameters are replayed through the
  product map and must reproduce x exactly;
* the block factorizations of cells against the longest element, each with
  a direct quasiminor route and a twisted route that must agree.

Sign conventions follow the closed formulas, with stages defined by
``x(m, k) = x(m, k+1) (1 - t_{m,k} E_k)`` so that the ascending replay
``x(m,k) * prod (1 + t E)`` reconstructs the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cells import classify, in_reduced_cell, twist_general
from .errors import (
    IndexOutOfRange,
    NotGeneric,
    QBruhatError,
    ShapeMismatch,
    WrongCell,
    ZeroInverse,
)
from .matrix import Matrix, interval
from .quasidet import MinorCache, MinorSpec, boxed_quasiminor, quasiminor_uv
from .scalars import inv, is_zero
from .weyl import DoubleWord, Permutation, simple_representative


@dataclass(frozen=True)
class Generator:
    """One elementary factor: kind in {x, y, h, xneg, sbar}, index i, parameter t."""

    kind: str
    i: int
    t: object = None


def generator_matrix(gen: Generator, n: int) -> Matrix:
    if not 1 <= gen.i <= n - 1:
        raise IndexOutOfRange(f"generator index {gen.i} outside [1, {n - 1}]")
    i, t = gen.i, gen.t
    if gen.kind == "x":
        return Matrix.identity(n) + Matrix.unit(n, i, i + 1, t)
    if gen.kind == "y":
        return Matrix.identity(n) + Matrix.unit(n, i + 1, i, t)
    if gen.kind == "h":
        if is_zero(t):
            raise ZeroInverse(f"h_{i}(t) needs invertible t")
        entries = [1] * n
        entries[i - 1] = t
        entries[i] = inv(t)
        return Matrix.diagonal(entries)
    if gen.kind == "xneg":
        if is_zero(t):
            raise ZeroInverse(f"x_-{i}(t) needs invertible t")
        rows = Matrix.identity(n).to_lists()
        rows[i - 1][i - 1] = inv(t)
        rows[i][i - 1] = 1
        rows[i][i] = t
        return Matrix(rows)
    if gen.kind == "sbar":
        return simple_representative(i, n)
    raise ValueError(f"unknown generator kind {gen.kind!r}")


def letter_matrix(letter: int, t, n: int) -> Matrix:
    """The factor for one signed letter: x_i(t) or x_{-i}(t)."""
    if letter > 0:
        return generator_matrix(Generator("x", letter, t), n)
    return generator_matrix(Generator("xneg", -letter, t), n)


def product_map(word: DoubleWord, params, h=None) -> Matrix:
    """h * x_{i_1}(t_1) * ... * x_{i_m}(t_m) for a double word.

    All parameters must be nonzero; `h` may be a list of diagonal scalars
    or a diagonal matrix.
    """
    params = list(params)
    if len(params) != word.length:
        raise ShapeMismatch(f"{len(params)} parameters for a word of length {word.length}")
    n = word.n
    for pos, t in enumerate(params, start=1):
        if is_zero(t):
            raise ZeroInverse(f"parameter {pos} is zero")
    if h is None:
        acc = Matrix.identity(n)
    elif isinstance(h, Matrix):
        if not h.is_diagonal():
            raise ShapeMismatch("h must be diagonal")
        acc = h
    else:
        acc = Matrix.diagonal(list(h))
    for letter, t in zip(word.letters, params):
        acc = acc * letter_matrix(letter, t, n)
    return acc


def commute_neg_pos(j: int, i: int, s, t):
    """Rewrite x_{-j}(s) x_i(t) as x_i(t') x_{-j}(s'); returns (t', s').

    The same-index case hits the singular locus s + t = 0, where the
    rewrite does not exist.
    """
    if abs(i - j) > 1:
        return t, s
    if i - j == 1:
        return s * t, s
    if i - j == -1:
        return t * s, s
    total = s + t
    if is_zero(total):
        raise ZeroInverse(f"x_-{j}(s) x_{i}(t) with s + t = 0 cannot be rewritten")
    if is_zero(s):
        raise ZeroInverse("x_-j(s) needs invertible s")
    return inv(s) * t * inv(total), total


# -- the standard unipotent factorization --------------------------------------


def standard_word(n: int) -> DoubleWord:
    """(1, ..., n-1; 1, ..., n-2; ...; 1, 2; 1), a reduced word for the longest element."""
    letters = []
    for top in range(n - 1, 0, -1):
        letters.extend(range(1, top + 1))
    return DoubleWord(n, tuple(letters))


def standard_position(i: int, j: int, n: int) -> int:
    """1-based position of the parameter t_{ij} inside the standard word."""
    if not 1 <= i < j <= n:
        raise IndexOutOfRange(f"need 1 <= i < j <= n, got ({i}, {j})")
    return n * (i - 1) - (i + 1) * i // 2 + j


def solve_standard_unipotent(x: Matrix):
    """Parameters of the standard-word factorization of an upper unitriangular x.

    t_{ij} is a ratio of two boxed quasiminors of trailing-column blocks;
    the returned list is aligned with the letters of ``standard_word``.
    Raises NotGeneric naming the (i, j) whose denominator quasiminor is
    undefined or singular.
    """
    if not x.is_square:
        raise ShapeMismatch("solve_standard_unipotent needs a square matrix")
    if not x.is_unitriangular("upper"):
        raise ShapeMismatch("input must be upper unitriangular")
    n = x.rows
    out = [None] * (n * (n - 1) // 2)
    for i in range(1, n):
        cols = interval(n - i + 1, n)
        for j in range(i + 1, n + 1):
            try:
                num = boxed_quasiminor(x, interval(j - i, j - 1), cols, j - i, n - i + 1)
                den = boxed_quasiminor(x, interval(j - i + 1, j), cols, j - i + 1, n - i + 1)
            except NotGeneric as exc:
                raise NotGeneric(
                    f"standard factorization blocked at (i, j) = ({i}, {j}): {exc}",
                    witness=("standard", i, j),
                ) from exc
            if is_zero(den):
                raise NotGeneric(
                    f"standard factorization denominator at ({i}, {j}) is zero",
                    witness=("standard", i, j),
                )
            out[standard_position(i, j, n) - 1] = num * inv(den)
    return out


# -- the upper factorization ----------------------------------------------------


def upper_pairs(n: int) -> tuple:
    """All (m, k), 1 <= m <= k <= n-1, in processing order (row by row, k descending)."""
    return tuple((m, k) for m in range(1, n) for k in range(n - 1, m - 1, -1))


@dataclass(frozen=True)
class UpperFactorization:
    source: Matrix
    pairs: tuple
    t: dict
    stages: dict

    def stage(self, m: int, k: int) -> Matrix:
        return self.stages[(m, k)]

    def final_stage(self) -> Matrix:
        if not self.pairs:
            return self.source
        return self.stages[self.pairs[-1]]

    def replay(self) -> Matrix:
        """final stage times the ascending product of (1 + t E); equals the source."""
        n = self.source.rows
        acc = self.final_stage()
        for m, k in reversed(self.pairs):
            acc = acc * (Matrix.identity(n) + Matrix.unit(n, k, k + 1, self.t[(m, k)]))
        return acc


def upper_factorize(x: Matrix) -> UpperFactorization:
    """Clear the strict upper part of x column by column from the right.

    Stage (m, k) kills the (m, k+1) entry with a right factor
    (1 - t_{m,k} E_k); the final stage is lower triangular.  A zero pivot
    with a zero target is benign (t = 0); a zero pivot with a nonzero
    target is NotGeneric.
    """
    if not x.is_square:
        raise ShapeMismatch("upper_factorize needs a square matrix")
    n = x.rows
    if n < 2:
        return UpperFactorization(x, (), {}, {})
    y = x
    t, stages = {}, {}
    for m, k in upper_pairs(n):
        den = y[m, k]
        num = y[m, k + 1]
        if is_zero(den):
            if not is_zero(num):
                raise NotGeneric(
                    f"stage ({m}, {k}): pivot ({m}, {k}) vanished but ({m}, {k + 1}) did not",
                    witness=("stage", m, k),
                )
            tv = Fraction(0)
        else:
            tv = inv(den) * num
        t[(m, k)] = tv
        y = y * (Matrix.identity(n) - Matrix.unit(n, k, k + 1, tv))
        stages[(m, k)] = y
    return UpperFactorization(x, upper_pairs(n), t, stages)


def upper_t_quasiminor(x: Matrix, m: int, k: int):
    """The closed form for t_{m,k}: a ratio of two boxed quasiminors of x."""
    den = boxed_quasiminor(x, interval(1, m), interval(k - m + 1, k), m, k)
    if is_zero(den):
        raise NotGeneric(
            f"upper factorization quasiminor at ({m}, {k}) is zero",
            witness=("upper-t", m, k),
        )
    num = boxed_quasiminor(x, interval(1, m), interval(k - m + 2, k + 1), m, k + 1)
    return inv(den) * num


def stage_entry_formula(x: Matrix, m: int, k: int, i: int, j: int):
    """Closed form for entry (i, j) of stage (m, k), as a quasiminor of x.

    The entry depends only on how many row passes have already touched
    column j; zero entries are part of the statement.
    """
    n = x.rows
    if j - 1 >= k and j - 1 >= m:
        m_eff = min(j - 1, m)
    else:
        m_eff = min(j - 1, m - 1)
    if m_eff == 0:
        return x[i, j]
    if i <= m_eff:
        return Fraction(0)
    rows = interval(1, m_eff) + (i,)
    cols = interval(j - m_eff, j)
    return boxed_quasiminor(x, rows, cols, i, j)


# -- parameter recovery through the twist ---------------------------------------


@dataclass(frozen=True)
class FactorizationOutput:
    """Recovered diagonal part and one-parameter coefficients of a product."""

    h: tuple
    t: tuple

    def replay(self, word: DoubleWord) -> Matrix:
        return product_map(word, list(self.t), list(self.h))


def _ratio(den, num, label):
    if is_zero(den):
        raise NotGeneric(f"quasiminor denominator vanished at {label}", witness=label)
    return inv(den) * num


def recover_params(x: Matrix, word: DoubleWord, verify_replay: bool = True) -> FactorizationOutput:
    """Recover (h, t) with x = h * x_{i_1}(t_1) ... x_{i_m}(t_m).

    The diagonal entries are level quasiminors of x at (u, e); each t_k is
    a quasiminor ratio of the twist y, indexed by the subword permutations
    at position k.  Both equal forms of the branch are evaluated and must
    agree; the replay must reproduce x exactly.
    """
    u, v = word.u(), word.v()
    if x.rows != word.n:
        raise ShapeMismatch(f"{x.shape_str()} matrix against a word for n = {word.n}")
    actual = classify(x)
    if actual != (u, v):
        raise WrongCell(
            f"x lies in the cell of {actual!r}, not ({u!r}, {v!r})",
            expected=(u, v),
            actual=actual,
        )
    n = x.rows
    e = Permutation.identity(n)
    uinv = u.inverse()
    h = tuple(quasiminor_uv(x, u, e, uinv(i)) for i in range(1, n + 1))
    y = twist_general(x, u, v, check=False)
    cache = MinorCache(y)
    t = []
    for k in range(1, word.length + 1):
        letter = word.letters[k - 1]
        i = abs(letter)
        u_ge, u_gt, v_le, v_lt = word.subword_perms(k)
        if letter < 0:
            first = _ratio(cache.uv(v_lt, u_gt, i), cache.uv(v_lt, u_ge, i), ("branch-", k))
            second = _ratio(
                cache.uv(v_lt, u_ge, i + 1), cache.uv(v_lt, u_gt, i + 1), ("branch-", k)
            )
        else:
            first = _ratio(cache.uv(v_le, u_gt, i), cache.uv(v_lt, u_gt, i + 1), ("branch+", k))
            second = _ratio(
                cache.uv(v_lt, u_gt, i), cache.uv(v_le, u_gt, i + 1), ("branch+", k)
            )
        if not is_zero(first - second):
            raise NotGeneric(
                f"the two forms for t_{k} disagree; x is not factorizable along this word",
                witness=("branch-agreement", k),
            )
        t.append(first)
    out = FactorizationOutput(h=h, t=tuple(t))
    if verify_replay:
        if any(is_zero(tk) for tk in t):
            raise NotGeneric(
                "a recovered parameter is zero; x is on the boundary of the word's image",
                witness=("zero-parameter",),
            )
        if out.replay(word) != x:
            raise NotGeneric(
                "replay of recovered parameters does not reproduce x",
                witness=("replay",),
            )
    return out


# -- block factorizations against the longest element ---------------------------


@dataclass(frozen=True)
class UW0Factorization:
    """x = x_minus * X^(n-1) ... X^(1) with X^(m) = prod_k x_k(t[m,k])."""

    t: dict
    x_minus: Matrix
    u: Permutation
    v: Permutation

    def replay(self) -> Matrix:
        n = self.x_minus.rows
        acc = self.x_minus
        for m in range(n - 1, 0, -1):
            for k in range(m, n):
                tv = self.t[(m, k)]
                if not is_zero(tv):
                    acc = acc * (Matrix.identity(n) + Matrix.unit(n, k, k + 1, tv))
        return acc


def factor_u_w0(x: Matrix, check_twist: bool = True) -> UW0Factorization:
    """Peel the standard positive blocks off x, leaving a point of G^{u,e}.

    The stage parameters are verified against their closed quasiminor
    forms, and (for x with longest-element column datum) against the
    twisted quasiminor expressions; both agreements are exact.
    """
    u, v = classify(x)
    uf = upper_factorize(x)
    x_minus = uf.final_stage() if uf.pairs else x
    if not x_minus.is_lower_triangular():
        raise QBruhatError("upper factorization did not reach a lower triangular stage")
    for m, k in uf.pairs:
        try:
            closed = upper_t_quasiminor(x, m, k)
        except NotGeneric:
            continue
        if not is_zero(closed - uf.t[(m, k)]):
            raise QBruhatError(
                f"stage parameter ({m}, {k}) disagrees with its quasiminor form"
            )
    n = x.rows
    w0 = Permutation.longest(n)
    if check_twist and v == w0:
        y = twist_general(x, u, w0, check=False)
        cache = MinorCache(y)
        for i in range(1, n):
            for j in range(i, n):
                den = cache.spec(
                    MinorSpec(interval(1, i) + interval(n + i + 1 - j, n), interval(1, j), i, j)
                )
                num = cache.spec(
                    MinorSpec(
                        interval(1, i) + interval(n + i - j, n), interval(1, j + 1), i, j + 1
                    )
                )
                twisted = _ratio(den, num, ("u-w0-twist", i, j))
                if not is_zero(twisted - uf.t[(i, j)]):
                    raise QBruhatError(
                        f"twisted expression for t_({i},{j}) disagrees with the direct one"
                    )
    return UW0Factorization(t=dict(uf.t), x_minus=x_minus, u=u, v=v)


@dataclass(frozen=True)
class W0VFactorization:
    """x = diag(h) * Xneg^(n-1) ... Xneg^(1) * x_plus with Xneg^(m) = prod_k x_{-k}(tau[m,k])."""

    h: tuple
    tau: dict
    x_plus: Matrix
    v: Permutation

    def negative_prefix(self) -> Matrix:
        n = len(self.h)
        acc = Matrix.diagonal(list(self.h))
        for m in range(n - 1, 0, -1):
            for k in range(m, n):
                acc = acc * letter_matrix(-k, self.tau[(m, k)], n)
        return acc

    def replay(self) -> Matrix:
        return self.negative_prefix() * self.x_plus


def factor_w0_v(x: Matrix, check_twist: bool = True) -> W0VFactorization:
    """Factor a point with longest-element row datum into torus, negative blocks, and x_plus.

    h and tau come from boxed quasiminors of lower-left blocks of x; the
    residual must land in the reduced cell of (e, v).  The twisted
    expressions for tau through y = psi(x) are checked for agreement.
    """
    n = x.rows
    w0 = Permutation.longest(n)
    u, v = classify(x)
    if u != w0:
        raise WrongCell(
            f"x has row datum {u!r}, not the longest element", expected=w0, actual=u
        )
    cache_x = MinorCache(x)
    h = []
    for m in range(1, n + 1):
        h.append(
            cache_x.spec(MinorSpec(interval(m, n), interval(1, n + 1 - m), m, n + 1 - m))
        )
    tau = {}
    for m in range(1, n):
        for k in range(m, n):
            den = cache_x.spec(
                MinorSpec(interval(m, k), interval(1, k + 1 - m), m, k + 1 - m)
            )
            tau[(m, k)] = _ratio(den, h[m - 1], ("tau", m, k))
            if is_zero(tau[(m, k)]):
                raise NotGeneric(
                    f"tau_({m},{k}) is zero; x is degenerate for the negative blocks",
                    witness=("tau-zero", m, k),
                )
    partial = W0VFactorization(h=tuple(h), tau=tau, x_plus=Matrix.identity(n), v=v)
    x_plus = partial.negative_prefix().inverse() * x
    if not x_plus.is_unitriangular("upper"):
        raise QBruhatError("residual of the negative blocks is not upper unitriangular")
    if not in_reduced_cell(x_plus, Permutation.identity(n), v):
        raise QBruhatError("residual is unitriangular but not in the reduced cell of (e, v)")
    if check_twist:
        y = twist_general(x, w0, v, check=False)
        cache_y = MinorCache(y)
        for i in range(1, n):
            for j in range(i, n):
                den = cache_y.spec(
                    MinorSpec(
                        interval(1, j),
                        interval(1, j + 1 - i) + interval(n + 2 - i, n),
                        j,
                        j + 1 - i,
                    )
                )
                num = cache_y.spec(
                    MinorSpec(
                        interval(1, j),
                        interval(1, j - i) + interval(n + 1 - i, n),
                        j,
                        n + 1 - i,
                    )
                )
                twisted = _ratio(den, num, ("w0-v-twist", i, j))
                if not is_zero(twisted - tau[(i, j)]):
                    raise QBruhatError(
                        f"twisted expression for tau_({i},{j}) disagrees with the direct one"
                    )
    return W0VFactorization(h=tuple(h), tau=tau, x_plus=x_plus, v=v)


# -- the maximal twist identity families -----------------------------------------


def _anti_spec(n: int, i: int) -> MinorSpec:
    return MinorSpec(interval(n + 1 - i, n), interval(1, i), n + 1 - i, i)


def _spec_a(n, i, j):
    return MinorSpec(interval(1, i) + interval(n + i + 1 - j, n), interval(1, j), i, j)


def _spec_a_next(n, i, j):
    return MinorSpec(interval(1, i) + interval(n + i - j, n), interval(1, j + 1), i, j + 1)


def _spec_b(n, i, j):
    return MinorSpec(interval(1, i), interval(j + 1 - i, j), i, j)


def _spec_b_next(n, i, j):
    return MinorSpec(interval(1, i), interval(j - i + 2, j + 1), i, j + 1)


def _spec_c(n, i, j):
    return MinorSpec(
        interval(1, j), interval(1, j + 1 - i) + interval(n + 2 - i, n), j, j + 1 - i
    )


def _spec_c_next(n, i, j):
    return MinorSpec(
        interval(1, j), interval(1, j - i) + interval(n + 1 - i, n), j, n + 1 - i
    )


def _spec_d(n, i, j):
    return MinorSpec(interval(i, j), interval(1, j + 1 - i), i, j + 1 - i)


def _spec_d_next(n, i, j):
    return MinorSpec(interval(i, n), interval(1, n + 1 - i), i, n + 1 - i)


@dataclass
class DoubleRatiosReport:
    n: int
    counts: dict
    failures: list
    extended: bool

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        lines = []
        for name, total in self.counts.items():
            failed = sum(1 for f in self.failures if f["family"] == name)
            status = "ok" if failed == 0 else f"{failed} FAILED"
            lines.append(f"{name}: {total} checks, {status}")
        return "\n".join(lines)


def verify_double_ratios(x: Matrix, include_extended: bool = False) -> DoubleRatiosReport:
    """Check every identity family relating quasiminors of x and its maximal twist.

    Families: anti-diagonal invariance, the two block-parameter transfers,
    and their involution images, plus the product formula of the corollary.
    The two remaining corollary displays carry suspected misprints; their
    best-read interpretations run only under `include_extended` and are
    excluded from acceptance.
    """
    n = x.rows
    w0 = Permutation.longest(n)
    actual = classify(x)
    if actual != (w0, w0):
        raise WrongCell(
            f"x lies in the cell of {actual!r}, not the maximal cell",
            expected=(w0, w0),
            actual=actual,
        )
    y = twist_general(x, w0, w0, check=False)
    cx, cy = MinorCache(x), MinorCache(y)
    counts: dict = {}
    failures: list = []

    def record(family, params, lhs, rhs):
        counts[family] = counts.get(family, 0) + 1
        if not is_zero(lhs - rhs):
            failures.append({"family": family, "params": params})

    for i in range(1, n + 1):
        record("anti-diagonal", (i,), cy.spec(_anti_spec(n, i)), cx.spec(_anti_spec(n, i)))
    for i in range(1, n):
        for j in range(i, n):
            lhs = _ratio(cy.spec(_spec_a(n, i, j)), cy.spec(_spec_a_next(n, i, j)), ("a", i, j))
            rhs = _ratio(cx.spec(_spec_b(n, i, j)), cx.spec(_spec_b_next(n, i, j)), ("b", i, j))
            record("positive-transfer", (i, j), lhs, rhs)
            lhs = _ratio(cy.spec(_spec_b(n, i, j)), cy.spec(_spec_b_next(n, i, j)), ("b'", i, j))
            rhs = _ratio(cx.spec(_spec_a(n, i, j)), cx.spec(_spec_a_next(n, i, j)), ("a'", i, j))
            record("positive-transfer-swapped", (i, j), lhs, rhs)
            lhs = _ratio(cy.spec(_spec_c(n, i, j)), cy.spec(_spec_c_next(n, i, j)), ("c", i, j))
            rhs = _ratio(cx.spec(_spec_d(n, i, j)), cx.spec(_spec_d_next(n, i, j)), ("d", i, j))
            record("negative-transfer", (i, j), lhs, rhs)
            lhs = _ratio(cy.spec(_spec_d(n, i, j)), cy.spec(_spec_d_next(n, i, j)), ("d'", i, j))
            rhs = _ratio(cx.spec(_spec_c(n, i, j)), cx.spec(_spec_c_next(n, i, j)), ("c'", i, j))
            record("negative-transfer-swapped", (i, j), lhs, rhs)
            lhs = cy.spec(_spec_d(n, i, j))
            rhs = (
                cx.spec(_spec_d_next(n, i, j))
                * inv(cx.spec(_spec_c_next(n, i, j)))
                * cx.spec(_spec_c(n, i, j))
            )
            record("corollary-product", (i, j), lhs, rhs)
            if include_extended:
                lhs = _ratio(cy.spec(_spec_a(n, i, i)), cy.spec(_spec_a(n, i, j)), ("a0", i, j))
                rhs = _ratio(cx.spec(_spec_b(n, i, i)), cx.spec(_spec_b(n, i, j)), ("b0", i, j))
                record("corollary-telescoped", (i, j), lhs, rhs)
                lhs = _ratio(cy.spec(_spec_b(n, i, i)), cy.spec(_spec_b(n, i, j)), ("b1", i, j))
                rhs = _ratio(cx.spec(_spec_a(n, i, i)), cx.spec(_spec_a(n, i, j)), ("a1", i, j))
                record("corollary-telescoped-swapped", (i, j), lhs, rhs)
    return DoubleRatiosReport(n=n, counts=counts, failures=failures, extended=include_extended)
