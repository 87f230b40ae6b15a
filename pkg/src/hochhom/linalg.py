"""Exact sparse linear algebra over the coefficient field.

All matrices and vectors hold exact scalars (rationals or cyclotomics); rank,
kernel and subquotient computations are ordinary Gaussian elimination with a
fill-minimizing pivot heuristic.  Exactness makes the pivot order a pure
performance choice.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import NotASubspace
from .scalar import RationalScalar, Scalar

Vector = dict[int, Scalar]


@dataclass(frozen=True)
class SparseMatrix:
    """A rows x cols matrix storing only nonzero entries."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), v in list(self.entries.items()):
            assert 0 <= i < self.rows and 0 <= j < self.cols
            if v.is_zero():
                del self.entries[(i, j)]

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def apply(self, vec: Vector) -> Vector:
        """Matrix-vector product; vec maps column index to scalar."""
        out: Vector = {}
        for (i, j), v in self.entries.items():
            if j in vec:
                c = v * vec[j]
                out[i] = out[i] + c if i in out else c
        return {i: c for i, c in out.items() if not c.is_zero()}

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """The product self * other (apply other first)."""
        assert self.cols == other.rows
        out: dict[tuple[int, int], Scalar] = {}
        by_row: dict[int, list[tuple[int, Scalar]]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        for (i, k), v in self.entries.items():
            for j, w in by_row.get(k, ()):
                c = v * w
                out[(i, j)] = out[(i, j)] + c if (i, j) in out else c
        return SparseMatrix(self.rows, other.cols, {k: v for k, v in out.items() if not v.is_zero()})


def _subtract_multiple(row: Vector, factor: Scalar, pivot_row: Vector) -> Vector:
    out = dict(row)
    for j, v in pivot_row.items():
        c = factor * v
        if j in out:
            s = out[j] - c
            if s.is_zero():
                del out[j]
            else:
                out[j] = s
        else:
            out[j] = -c
    return out


def _eliminate(rows: Sequence[Vector]) -> list[tuple[int, Vector]]:
    """Reduced row echelon form of a list of sparse row vectors.

    Returns (pivot column, row) pairs; each row is normalized to pivot value 1
    and its pivot column is cleared from every other returned row.  Pivots are
    chosen to approximately minimize fill (Markowitz-style count).
    """
    pending = [dict(r) for r in rows if r]
    done: list[tuple[int, Vector]] = []
    while pending:
        col_count: dict[int, int] = {}
        for r in pending:
            for j in r:
                col_count[j] = col_count.get(j, 0) + 1
        best = None
        for ri, r in enumerate(pending):
            for j in r:
                score = (len(r) - 1) * (col_count[j] - 1)
                if best is None or score < best[0]:
                    best = (score, ri, j)
        _, ri, pj = best
        pivot_row = pending.pop(ri)
        inv = pivot_row[pj].inv()
        pivot_row = {j: v * inv for j, v in pivot_row.items()}
        pending = [
            _subtract_multiple(r, r[pj], pivot_row) if pj in r else r for r in pending
        ]
        pending = [r for r in pending if r]
        done = [
            (q, _subtract_multiple(r, r[pj], pivot_row) if pj in r else r) for q, r in done
        ]
        done.append((pj, pivot_row))
    return done


def rank_kernel(matrix: SparseMatrix, one: Optional[Scalar] = None) -> tuple[int, list[Vector]]:
    """Exact rank and a basis of the right kernel.

    The kernel basis has one vector per free column: the free coordinate is 1
    and the pivot coordinates are read off the reduced echelon form.  ``one``
    supplies the unit scalar when the matrix has no entries to borrow it from.
    """
    rows_by_index: dict[int, Vector] = {}
    for (i, j), v in matrix.entries.items():
        rows_by_index.setdefault(i, {})[j] = v
    reduced = _eliminate(list(rows_by_index.values()))
    if one is None:
        if reduced:
            some = next(iter(reduced[0][1].values()))
            one = some * some.inv()
        else:
            one = RationalScalar(1)
    pivot_cols = {pj for pj, _ in reduced}
    kernel: list[Vector] = []
    for j in range(matrix.cols):
        if j in pivot_cols:
            continue
        vec: Vector = {j: one}
        for pj, r in reduced:
            if j in r:
                vec[pj] = -r[j]
        kernel.append(vec)
    return len(reduced), kernel


def span_rank(vectors: Sequence[Vector]) -> int:
    return len(_eliminate(vectors))


def subquotient_dim(
    cycles: Sequence[Vector], boundaries: Sequence[Vector]
) -> tuple[int, list[Vector]]:
    """dim span(cycles)/span(boundaries), with representative cycle vectors.

    Raises NotASubspace unless span(boundaries) is contained in span(cycles).
    Representatives are chosen greedily among the given cycle vectors, reduced
    against the boundary span so they are honest coset representatives.
    """
    reduced_b = _eliminate(boundaries)
    rank_b = len(reduced_b)
    rank_c = span_rank(cycles)
    rank_cb = len(_eliminate(list(cycles) + list(boundaries)))
    if rank_cb != rank_c:
        raise NotASubspace("boundaries are not contained in the cycle space")
    target = rank_c - rank_b
    reps: list[Vector] = []
    basis: list[Vector] = [r for _, r in reduced_b]
    current = rank_b
    for v in cycles:
        if len(reps) == target:
            break
        trial = _eliminate(basis + [v])
        if len(trial) > current:
            reps.append(_reduce_against(v, reduced_b))
            basis = [r for _, r in trial]
            current = len(trial)
    return target, reps


def _reduce_against(vec: Vector, reduced: list[tuple[int, Vector]]) -> Vector:
    """Subtract the projection of vec onto a reduced echelon row set."""
    out = dict(vec)
    for pj, r in reduced:
        if pj in out:
            out = _subtract_multiple(out, out[pj], r)
    return out
