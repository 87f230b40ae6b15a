"""Strand-wise Hochschild homology via the small complex.

Homology is computed only on the small complex K_C, whose differential is
weight-homogeneous, so each weight strand is an independent finite complex.
The module also carries the theorem-based expected-dimension oracles for the
regimes with known closed answers, and the acyclicity witness for the
quotient strands that justifies computing on K_C in the first place.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ComplexBroken, NotASubspace, RhoInC
from .koszul import (
    ChainElement,
    ChainGenerator,
    StrandComplex,
    diff_symmetric,
    enumerate_strand,
    is_in_C,
)
from .linalg import SparseMatrix, Vector, rank_kernel, subquotient_dim
from .scalar import AlgebraSpec, CyclotomicModel, RationalModel, Scalar


@dataclass(frozen=True)
class StrandHomology:
    weight: int
    dimensions: dict[int, int]
    representatives: dict[int, list[ChainElement]]
    chain_dimensions: dict[int, int]


@dataclass(frozen=True)
class HomologyReport:
    spec: AlgebraSpec
    w_min: int
    w_max: int
    strands: dict[int, StrandHomology]

    def dimension(self, w: int, k: int) -> int:
        return self.strands[w].dimensions.get(k, 0)

    def nonzero_entries(self) -> list[tuple[int, int, int]]:
        out = []
        for w in sorted(self.strands):
            for k in sorted(self.strands[w].dimensions):
                d = self.strands[w].dimensions[k]
                if d:
                    out.append((w, k, d))
        return out


def _vector_to_chain(
    spec: AlgebraSpec, vec: Vector, basis: list[ChainGenerator]
) -> ChainElement:
    return ChainElement(spec, {basis[j]: c for j, c in vec.items()})


def strand_homology(
    spec: AlgebraSpec, w: int, representatives: bool = True
) -> StrandHomology:
    """Per-degree homology dimensions of the weight-w strand of K_C."""
    strand = enumerate_strand(spec, w)
    return homology_of_strand(spec, strand, representatives=representatives)


def homology_of_strand(
    spec: AlgebraSpec, strand: StrandComplex, representatives: bool = True
) -> StrandHomology:
    m = spec.num_generators
    dims: dict[int, int] = {}
    reps: dict[int, list[ChainElement]] = {}
    chain_dims = {k: len(strand.generators[k]) for k in range(m + 1)}
    kernels: dict[int, list[Vector]] = {}
    for k in range(m + 1):
        ncols = chain_dims[k]
        if k == 0:
            kernels[0] = [{j: spec.one()} for j in range(ncols)]
        else:
            _, kernels[k] = rank_kernel(strand.matrices[k], one=spec.one())
    for k in range(m + 1):
        boundaries: list[Vector] = []
        if k + 1 <= m:
            mat = strand.matrices[k + 1]
            cols: dict[int, Vector] = {}
            for (i, j), v in mat.entries.items():
                cols.setdefault(j, {})[i] = v
            boundaries = list(cols.values())
        try:
            dim, rep_vectors = subquotient_dim(kernels[k], boundaries)
        except NotASubspace as exc:
            raise ComplexBroken(
                f"boundaries escape the cycles at w={strand.weight}, k={k}"
            ) from exc
        dims[k] = dim
        if representatives:
            reps[k] = [
                _vector_to_chain(spec, v, strand.generators[k]) for v in rep_vectors
            ]
        else:
            reps[k] = []
    return StrandHomology(strand.weight, dims, reps, chain_dims)


def hh_report(
    spec: AlgebraSpec, w_min: int, w_max: int, representatives: bool = True
) -> HomologyReport:
    if w_min < -spec.num_generators:
        w_min = -spec.num_generators
    strands = {
        w: strand_homology(spec, w, representatives=representatives)
        for w in range(w_min, w_max + 1)
    }
    return HomologyReport(spec, w_min, w_max, strands)


# ---------------------------------------------------------------------------
# Expected-dimension oracles for the closed regimes.
# ---------------------------------------------------------------------------


def detect_regime(spec: AlgebraSpec) -> str:
    """Classify the spec into one of the closed-answer regimes, if any.

    Returns one of "semiclassical", "free", "mixed-minimal-root", or
    "unsupported".
    """
    if spec.r == spec.n:
        return "semiclassical"
    if spec.is_free():
        return "free"
    if spec.n == 2 and spec.r == 1:
        order = spec.root_of_unity_order(2, 1)
        if order is not None and order >= 2:
            return "mixed-minimal-root"
    return "unsupported"


def expected_hh_oracle(spec: AlgebraSpec, w: int) -> dict[int, int] | None:
    """Per-degree homology dimensions predicted at weight w, or None.

    Translates the closed structure results (semi-classical concentration,
    free-parameter towers, mixed root-of-unity four-family basis) into
    per-(w, k) counts; returns None for regimes without a closed answer.
    """
    regime = detect_regime(spec)
    n, r = spec.n, spec.r
    dims: dict[int, int] = {k: 0 for k in range(spec.num_generators + 1)}
    if regime == "semiclassical":
        if w == -2 * n:
            dims[2 * n] = 1
        return dims
    if regime == "free":
        if r == 0:
            # HH_0: the unit (w = 0) and the towers y_i^s, s >= 1;
            # HH_1: the towers y_i^s (x) y_i, s >= 0 (weight s - 1).
            if w == 0:
                dims[0] = 1
            elif w >= 1:
                dims[0] = n
            if w >= -1:
                dims[1] = n
        else:
            # The Weyl pairs contribute only the fundamental class in degree
            # 2r; the n - r free quantum variables contribute the towers.
            if w == -2 * r:
                dims[2 * r] = 1
            if w >= 1:
                dims[0] = n - r
            if w >= -1:
                dims[1] = n - r
        return dims
    if regime == "mixed-minimal-root":
        order = spec.root_of_unity_order(2, 1)
        # Bases: z^s (s not divisible by order) in degree 0; z^s (x) z with
        # s+1 not divisible in degree 1; z^s (x) x^y with s divisible in
        # degree 2; z^{s*order - 1} (x) x^y^z in degree 3.
        if w >= 1 and w % order != 0:
            dims[0] = 1
        if w >= -1 and (w + 2) % order != 0:
            dims[1] = 1
        if w >= -2 and (w + 2) % order == 0:
            dims[2] = 1
        if w >= order - 4 and (w + 4) % order == 0:
            dims[3] = 1
        return dims
    return None


# ---------------------------------------------------------------------------
# Quotient-strand acyclicity (the reduction witness).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AcyclicityResult:
    rho: tuple[int, ...]
    passed: bool
    failing_degree: int | None = None
    witness: ChainElement | None = None


def quotient_strand_acyclicity(spec: AlgebraSpec, rho) -> AcyclicityResult:
    """Verify that the degree-rho quotient strand is exact in every degree.

    The strand collects every splitting mono + wedge = rho and carries the
    symmetric-algebra differential, which preserves rho.  For rho outside C
    this complex must be acyclic including degree 0; a failure returns the
    offending degree together with a non-bounding cycle.
    """
    rho = tuple(rho)
    if is_in_C(spec, rho):
        raise RhoInC(f"rho={rho} lies in C; the quotient strand excludes it")
    m = spec.num_generators
    generators: dict[int, list[ChainGenerator]] = {k: [] for k in range(m + 1)}
    for bits in range(1 << m):
        wedge = tuple((bits >> t) & 1 for t in range(m))
        if any(b > e for b, e in zip(wedge, rho)):
            continue
        mono = tuple(e - b for e, b in zip(rho, wedge))
        generators[sum(wedge)].append(ChainGenerator(mono, wedge))
    for k in generators:
        generators[k].sort(key=lambda g: (g.mono, g.wedge))
    matrices: dict[int, SparseMatrix] = {}
    for k in range(1, m + 1):
        index = {g: i for i, g in enumerate(generators[k - 1])}
        entries: dict[tuple[int, int], Scalar] = {}
        for col, g in enumerate(generators[k]):
            for tgt, coeff in diff_symmetric(spec, g).terms.items():
                entries[(index[tgt], col)] = coeff
        matrices[k] = SparseMatrix(len(generators[k - 1]), len(generators[k]), entries)
    for k in range(m + 1):
        if k == 0:
            cycles: list[Vector] = [{j: spec.one()} for j in range(len(generators[0]))]
        else:
            _, cycles = rank_kernel(matrices[k], one=spec.one())
        boundaries: list[Vector] = []
        if k + 1 <= m:
            cols: dict[int, Vector] = {}
            for (i, j), v in matrices[k + 1].entries.items():
                cols.setdefault(j, {})[i] = v
            boundaries = list(cols.values())
        dim, reps = subquotient_dim(cycles, boundaries)
        if dim != 0:
            witness = _vector_to_chain(spec, reps[0], generators[k]) if reps else None
            return AcyclicityResult(rho, False, k, witness)
    return AcyclicityResult(rho, True)
