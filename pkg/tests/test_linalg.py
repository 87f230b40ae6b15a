"""Exact sparse linear algebra against a dense sympy oracle."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hochhom.errors import NotASubspace
from hochhom.linalg import SparseMatrix, rank_kernel, span_rank, subquotient_dim
from hochhom.scalar import RationalScalar


def _sparse_from_lists(rows):
    entries = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                entries[(i, j)] = RationalScalar(Fraction(v))
    return SparseMatrix(len(rows), len(rows[0]) if rows else 0, entries)


def _random_rows(rng, nrows, ncols, density=0.5):
    return [
        [rng.choice([-2, -1, 1, 2, 3]) if rng.random() < density else 0 for _ in range(ncols)]
        for _ in range(nrows)
    ]


def test_rank_kernel_small_example():
    m = _sparse_from_lists([[1, 2], [2, 4]])
    rank, kernel = rank_kernel(m)
    assert rank == 1
    assert len(kernel) == 1
    vec = kernel[0]
    # kernel vector must satisfy the equations exactly
    assert vec.get(0, RationalScalar(0)).value * 1 + vec.get(1, RationalScalar(0)).value * 2 == 0


@pytest.mark.parametrize("seed", range(8))
def test_rank_matches_sympy(seed):
    rng = random.Random(seed)
    rows = _random_rows(rng, rng.randint(1, 7), rng.randint(1, 7))
    ours, kernel = rank_kernel(_sparse_from_lists(rows))
    theirs = sympy.Matrix(rows).rank()
    assert ours == theirs
    assert len(kernel) == len(rows[0]) - theirs


@pytest.mark.parametrize("seed", range(8))
def test_kernel_vectors_annihilated(seed):
    rng = random.Random(100 + seed)
    rows = _random_rows(rng, rng.randint(1, 6), rng.randint(1, 6))
    matrix = _sparse_from_lists(rows)
    _, kernel = rank_kernel(matrix)
    for vec in kernel:
        assert not matrix.apply(vec)


def test_span_rank_matches_sympy():
    rng = random.Random(5)
    for _ in range(6):
        rows = _random_rows(rng, rng.randint(1, 6), 5)
        vectors = [
            {j: RationalScalar(Fraction(v)) for j, v in enumerate(row) if v} for row in rows
        ]
        assert span_rank(vectors) == sympy.Matrix(rows).rank()


def test_subquotient_dim_exact():
    # cycles = span{e0, e1, e2}, boundaries = span{e0 + e1} -> dim 2
    one = RationalScalar(1)
    cycles = [{0: one}, {1: one}, {2: one}]
    boundaries = [{0: one, 1: one}]
    dim, reps = subquotient_dim(cycles, boundaries)
    assert dim == 2
    assert len(reps) == 2


def test_subquotient_rejects_non_subspace():
    one = RationalScalar(1)
    cycles = [{0: one}]
    boundaries = [{1: one}]
    with pytest.raises(NotASubspace):
        subquotient_dim(cycles, boundaries)


def test_subquotient_matches_sympy_quotient():
    rng = random.Random(11)
    for _ in range(6):
        ncols = 6
        cycle_rows = _random_rows(rng, 4, ncols)
        # boundaries: random combinations of the cycles, so containment holds
        combo = _random_rows(rng, 3, 4)
        boundary_rows = [
            [
                sum(c * cycle_rows[k][j] for k, c in enumerate(row))
                for j in range(ncols)
            ]
            for row in combo
        ]
        cycles = [
            {j: RationalScalar(Fraction(v)) for j, v in enumerate(r) if v} for r in cycle_rows
        ]
        boundaries = [
            {j: RationalScalar(Fraction(v)) for j, v in enumerate(r) if v}
            for r in boundary_rows
        ]
        boundaries = [b for b in boundaries if b]
        dim, reps = subquotient_dim(cycles, boundaries)
        expected = sympy.Matrix(cycle_rows).rank() - sympy.Matrix(
            boundary_rows if boundary_rows else [[0] * ncols]
        ).rank()
        assert dim == expected
        assert len(reps) == dim


def test_compose_and_transpose():
    a = _sparse_from_lists([[1, 0], [2, 1]])
    b = _sparse_from_lists([[1, 1], [0, 3]])
    ab = a.compose(b)
    assert ab.entries[(0, 0)].value == 1
    assert ab.entries[(1, 1)].value == 5
    t = a.transpose()
    assert t.entries[(0, 1)].value == 2


@settings(max_examples=40, deadline=None)
@given(
    data=st.lists(
        st.lists(st.integers(min_value=-4, max_value=4), min_size=4, max_size=4),
        min_size=1,
        max_size=6,
    )
)
def test_rank_property_random(data):
    ours, kernel = rank_kernel(_sparse_from_lists(data))
    assert ours == sympy.Matrix(data).rank()
    assert ours + len(kernel) == 4
