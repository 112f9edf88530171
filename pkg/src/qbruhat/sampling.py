"""Seeded samplers for the property harness, the CLI and the tests.

Everything is driven by an explicit ``random.Random`` so that reports are
reproducible from (seed, flags) alone.  Genericity failures are expected
with small integer samples; ``with_retries`` resamples a NotGeneric
computation up to a budget and only then gives up.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .errors import NotGeneric, RetriesExhausted
from .matrix import Matrix
from .scalars import RationalQuaternion, random_quaternion
from .weyl import Permutation, all_permutations, random_double_word

DEFAULT_RETRY_BUDGET = 100


def retry_budget() -> int:
    raw = os.environ.get("QBRUHAT_RETRY_BUDGET", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return DEFAULT_RETRY_BUDGET


def with_retries(fn, budget: int | None = None):
    """Run fn() until it stops raising NotGeneric, within the retry budget."""
    budget = retry_budget() if budget is None else budget
    last = None
    for _ in range(budget):
        try:
            return fn()
        except NotGeneric as exc:
            last = exc
    raise RetriesExhausted(f"still NotGeneric after {budget} attempts: {last}")


def rational(rng: random.Random, bound: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound))


def nonzero_rational(rng: random.Random, bound: int = 3) -> Fraction:
    while True:
        value = rational(rng, bound)
        if value != 0:
            return value


def quaternion(rng: random.Random, bound: int = 2) -> RationalQuaternion:
    return random_quaternion(rng, bound)


def scalar(rng: random.Random, kind: str, bound: int = 2):
    if kind == "rat":
        return rational(rng, bound)
    if kind == "quat":
        comps = [rng.randint(-bound, bound) for _ in range(4)]
        return RationalQuaternion(*comps)
    raise ValueError(f"unknown scalar kind {kind!r}")


def nonzero_scalar(rng: random.Random, kind: str, bound: int = 2):
    if kind == "rat":
        return nonzero_rational(rng, bound)
    return quaternion(rng, bound)


def matrix(rng: random.Random, n: int, m: int | None = None, kind: str = "quat", bound: int = 2) -> Matrix:
    m = n if m is None else m
    return Matrix([[scalar(rng, kind, bound) for _ in range(m)] for _ in range(n)])


def invertible_matrix(rng: random.Random, n: int, kind: str = "quat", bound: int = 2) -> Matrix:
    def attempt():
        x = matrix(rng, n, n, kind, bound)
        x.inverse()
        return x

    return with_retries(attempt)


def upper_triangular(rng: random.Random, n: int, kind: str = "quat", bound: int = 2) -> Matrix:
    """Random invertible upper triangular matrix."""
    rows = []
    for i in range(n):
        row = [scalar(rng, kind, bound) if j > i else 0 for j in range(n)]
        row[i] = nonzero_scalar(rng, kind, bound)
        rows.append(row)
    return Matrix(rows)


def upper_unitriangular(rng: random.Random, n: int, kind: str = "quat", bound: int = 2) -> Matrix:
    rows = []
    for i in range(n):
        row = [scalar(rng, kind, bound) if j > i else 0 for j in range(n)]
        row[i] = 1
        rows.append(row)
    return Matrix(rows)


def diagonal(rng: random.Random, n: int, kind: str = "quat", bound: int = 2) -> Matrix:
    return Matrix.diagonal([nonzero_scalar(rng, kind, bound) for _ in range(n)])


def random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(images)


def reduced_cell_point(rng: random.Random, u: Permutation, v: Permutation, bound: int = 2):
    """(x, word, t) with x = product over a random double word; x lies in L^{u,v}."""
    from .factorize import product_map

    word = random_double_word(u, v, rng)
    params = [quaternion(rng, bound) for _ in range(word.length)]
    return product_map(word, params), word, params


def cell_point(rng: random.Random, u: Permutation, v: Permutation, bound: int = 2):
    """(x, word, h, t) with x = diag(h) * product; x lies in G^{u,v}."""
    from .factorize import product_map

    word = random_double_word(u, v, rng)
    params = [quaternion(rng, bound) for _ in range(word.length)]
    h = [quaternion(rng, bound) for _ in range(u.n)]
    return product_map(word, params, h), word, h, params


def maximal_cell_point(rng: random.Random, n: int, bound: int = 2) -> Matrix:
    """A generic point of the maximal double cell, sampled densely."""
    from .cells import classify

    w0 = Permutation.longest(n)

    def attempt():
        x = invertible_matrix(rng, n, "quat", bound)
        if classify(x) != (w0, w0):
            raise NotGeneric("sampled matrix missed the maximal cell")
        return x

    return with_retries(attempt)


def s_n_pairs(n: int):
    perms = all_permutations(n)
    return [(u, v) for u in perms for v in perms]
