"""Koszul-type chain complexes for A_{n,r}^Lambda.

Four differentials live here:

* ``diff_full`` — the full complex K on generators x^alpha y^beta (x) wedge,
  computed by the generic coefficient formula driven through PBW
  multiplication (the authoritative route), with an optimized closed-form
  expansion as a second path that must agree term by term.
* ``diff_small`` — the small complex K_C: only the exponent-lowering terms,
  defined on generators whose total degree rho lies in the set C.
* ``diff_symmetric`` — the quantum symmetric algebra complex, used for the
  quotient strands that witness the K -> K_C reduction.
* ``diff_weyl`` — the classical Weyl-algebra Koszul differential, the target
  of the semi-classical comparison maps f and g.

The module also provides the membership test for C, weight-strand
enumeration, the comparison scalar R with the maps f/g, and the braided
antisymmetry check (the alternating contraction f' that must vanish).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .algebra import PbwElement, generator_name, monomial_str
from .errors import (
    IndexOutOfRange,
    ModelMismatch,
    NotInSmallComplex,
    NotSemiClassical,
    WordTooLong,
)
from .linalg import SparseMatrix
from .scalar import AlgebraSpec, Scalar

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class ChainGenerator:
    """Basis element x^alpha y^beta (x) x^gamma y^delta of a Koszul complex.

    ``mono`` stores (alpha, beta) and ``wedge`` stores (gamma, delta), both as
    tuples of length n + r; wedge entries are 0/1.
    """

    mono: Exponents
    wedge: Exponents

    def __post_init__(self):
        if any(e < 0 for e in self.mono) or any(e not in (0, 1) for e in self.wedge):
            raise IndexOutOfRange(f"bad chain generator ({self.mono}, {self.wedge})")
        if len(self.mono) != len(self.wedge):
            raise IndexOutOfRange("mono and wedge lengths differ")

    @property
    def degree(self) -> int:
        """Homological degree: the number of wedge factors."""
        return sum(self.wedge)

    @property
    def poly_degree(self) -> int:
        return sum(self.mono)

    @property
    def weight(self) -> int:
        return self.poly_degree - self.degree

    @property
    def rho(self) -> Exponents:
        """Total multidegree (alpha + gamma, beta + delta)."""
        return tuple(a + g for a, g in zip(self.mono, self.wedge))

    def quantum_degree(self, spec: AlgebraSpec) -> Exponents:
        """The purely-quantum part (beta_j + delta_j) for j > r."""
        t = 2 * spec.r
        return tuple(self.rho[t:])


def chain_generator_str(spec: AlgebraSpec, g: ChainGenerator) -> str:
    wedge_names = [generator_name(spec, i + 1) for i, b in enumerate(g.wedge) if b]
    wedge = "^".join(wedge_names) if wedge_names else "1"
    return f"{monomial_str(spec, g.mono)} (x) {wedge}"


class ChainElement:
    """A finite scalar combination of chain generators."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: dict[ChainGenerator, Scalar] | None = None):
        self.spec = spec
        self.terms = {g: c for g, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def zero(cls, spec: AlgebraSpec) -> "ChainElement":
        return cls(spec)

    @classmethod
    def single(cls, spec: AlgebraSpec, g: ChainGenerator, coeff=None) -> "ChainElement":
        return cls(spec, {g: spec.one() if coeff is None else coeff})

    def _check(self, other: "ChainElement"):
        if other.spec != self.spec:
            raise ModelMismatch("cannot combine chains over different algebras")

    def __add__(self, other: "ChainElement") -> "ChainElement":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out[g] + c if g in out else c
        return ChainElement(self.spec, out)

    def __sub__(self, other: "ChainElement") -> "ChainElement":
        return self + (-other)

    def __neg__(self) -> "ChainElement":
        return ChainElement(self.spec, {g: -c for g, c in self.terms.items()})

    def scale(self, coeff: Union[Scalar, int]) -> "ChainElement":
        if isinstance(coeff, int):
            coeff = self.spec.scalar(coeff)
        return ChainElement(self.spec, {g: c * coeff for g, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, ChainElement):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms, key=lambda t: (t.mono, t.wedge)):
            parts.append(f"{self.terms[g]}*{chain_generator_str(self.spec, g)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ChainElement({self})"


def _without(vec: Exponents, index0: int) -> Exponents:
    return vec[:index0] + (0,) + vec[index0 + 1 :]


def _lower(vec: Exponents, index0: int) -> Exponents:
    return vec[:index0] + (vec[index0] - 1,) + vec[index0 + 1 :]


# ---------------------------------------------------------------------------
# Membership in C.
# ---------------------------------------------------------------------------


def is_in_C(spec: AlgebraSpec, rho: Iterable[int]) -> bool:
    """Whether a total multidegree lies in the set C.

    Definition: for every column i, rho_i = 0 or the column product
    prod_k lambda~_{k,i}^{rho_k} equals 1.  An equivalent characterization
    (pair each Weyl column with its partner) is evaluated as a cross-check.
    """
    rho = tuple(rho)
    m = spec.num_generators
    if len(rho) != m or any(e < 0 for e in rho):
        raise IndexOutOfRange(f"bad multidegree {rho}")

    def column_is_one(i: int) -> bool:
        return spec.monomial_is_one((k, i, rho[k - 1]) for k in range(1, m + 1) if rho[k - 1])

    primary = all(rho[i - 1] == 0 or column_is_one(i) for i in range(1, m + 1))
    paired = all(
        column_is_one(i) or (rho[i - 1] == 0 and rho[i - 1 + spec.r] == 0)
        for i in range(1, spec.r + 1)
    ) and all(
        column_is_one(i) or rho[i - 1] == 0 for i in range(2 * spec.r + 1, m + 1)
    )
    assert primary == paired, f"membership characterizations disagree at rho={rho}"
    return primary


# ---------------------------------------------------------------------------
# Differentials.
# ---------------------------------------------------------------------------


def diff_full(spec: AlgebraSpec, g: ChainGenerator) -> ChainElement:
    """The full differential, by the generic coefficient formula.

    d(v^A (x) v^G) = sum_i Omega(G;i) (v^A . v_i) (x) v^{G-[i]}
                   + sum_i Theta(G;i) (v_i . v^A) (x) v^{G-[i]}

    with the braided coefficients Omega, Theta over the extended parameter
    matrix, and both products evaluated through PBW multiplication.
    """
    m = spec.num_generators
    G = g.wedge
    k_total = sum(G)
    poly = PbwElement.monomial(spec, g.mono)
    out: dict[ChainGenerator, Scalar] = {}

    def accumulate(product: PbwElement, coeff: Scalar, new_wedge: Exponents):
        for mono, c in product.terms.items():
            gen = ChainGenerator(mono, new_wedge)
            contrib = coeff * c
            out[gen] = out[gen] + contrib if gen in out else contrib

    for i in range(1, m + 1):
        if not G[i - 1]:
            continue
        v_i = PbwElement.generator(spec, i)
        new_wedge = _without(G, i - 1)
        sign_omega = (-1) ** sum(G[: i - 1])
        omega = spec.lambda_tilde_power_product(
            (k, i, G[k - 1]) for k in range(1, i) if G[k - 1]
        ) * sign_omega
        accumulate(poly * v_i, omega, new_wedge)
        sign_theta = (-1) ** (k_total + sum(G[i:]))
        theta = spec.lambda_tilde_power_product(
            (i, k, G[k - 1]) for k in range(i + 1, m + 1) if G[k - 1]
        ) * sign_theta
        accumulate(v_i * poly, theta, new_wedge)
    return ChainElement(spec, out)


def _epsilon_1(gamma: Exponents, i: int) -> int:
    return (-1) ** sum(gamma[: i - 1])


def _epsilon_2(gamma: Exponents, delta: Exponents, j: int) -> int:
    return (-1) ** (sum(gamma) + sum(delta[: j - 1]))


def _closed_form_terms(spec: AlgebraSpec, g: ChainGenerator, lowering_only: bool):
    """Terms of the differential by the closed coefficient formulas.

    Yields (generator, scalar) pairs.  With lowering_only=True only the
    exponent-lowering (Weyl contraction) terms are produced — that is the
    small-complex differential.
    """
    r, n = spec.r, spec.n
    lam = spec.model.lambda_power_product
    alpha, beta = g.mono[:r], g.mono[r:]
    gamma, delta = g.wedge[:r], g.wedge[r:]

    for i in range(1, r + 1):
        if not gamma[i - 1]:
            continue
        eps = _epsilon_1(gamma, i)
        if not lowering_only:
            base = lam(
                [(k, i, gamma[k - 1]) for k in range(1, i)]
                + [(k, i, -beta[k - 1]) for k in range(1, n + 1)]
                + [(k, i, alpha[k - 1]) for k in range(i + 1, r + 1)]
            )
            bracket = spec.one() - lam(
                [(i, k, alpha[k - 1] + gamma[k - 1]) for k in range(1, r + 1)]
                + [(i, k, -(beta[k - 1] + delta[k - 1])) for k in range(1, n + 1)]
            )
            coeff = base * bracket * eps
            if not coeff.is_zero():
                mono = tuple(a + (1 if t == i - 1 else 0) for t, a in enumerate(alpha)) + beta
                yield ChainGenerator(mono, _without(g.wedge, i - 1)), coeff
        if beta[i - 1]:
            coeff = lam(
                [(k, i, gamma[k - 1]) for k in range(1, i)]
                + [(k, i, -beta[k - 1]) for k in range(i + 1, n + 1)]
            ) * (-eps * beta[i - 1])
            mono = alpha + _lower(beta, i - 1)
            yield ChainGenerator(mono, _without(g.wedge, i - 1)), coeff

    for j in range(1, n + 1):
        if not delta[j - 1]:
            continue
        eps = _epsilon_2(gamma, delta, j)
        if not lowering_only:
            base = lam(
                [(k, j, delta[k - 1]) for k in range(1, j)]
                + [(k, j, -gamma[k - 1]) for k in range(1, r + 1)]
                + [(k, j, beta[k - 1]) for k in range(j + 1, n + 1)]
            )
            bracket = spec.one() - lam(
                [(j, k, -(alpha[k - 1] + gamma[k - 1])) for k in range(1, r + 1)]
                + [(j, k, beta[k - 1] + delta[k - 1]) for k in range(1, n + 1)]
            )
            coeff = base * bracket * eps
            if not coeff.is_zero():
                mono = alpha + tuple(b + (1 if t == j - 1 else 0) for t, b in enumerate(beta))
                yield ChainGenerator(mono, _without(g.wedge, r + j - 1)), coeff
        if j <= r and alpha[j - 1]:
            coeff = lam(
                [(j, k, delta[k - 1]) for k in range(j + 1, n + 1)]
                + [(j, k, -alpha[k - 1]) for k in range(1, j)]
            ) * (eps * alpha[j - 1])
            mono = _lower(alpha, j - 1) + beta
            yield ChainGenerator(mono, _without(g.wedge, r + j - 1)), coeff


def diff_full_closed(spec: AlgebraSpec, g: ChainGenerator) -> ChainElement:
    """The full differential via the closed coefficient formulas.

    Optimized second path; must agree with diff_full on every generator.
    """
    out: dict[ChainGenerator, Scalar] = {}
    for gen, coeff in _closed_form_terms(spec, g, lowering_only=False):
        out[gen] = out[gen] + coeff if gen in out else coeff
    return ChainElement(spec, out)


def diff_small(spec: AlgebraSpec, g: ChainGenerator) -> ChainElement:
    """The small-complex differential: only the exponent-lowering terms.

    Defined on generators with rho in C; the output stays in the small
    complex and has the same weight and purely-quantum multidegree.
    """
    if not is_in_C(spec, g.rho):
        raise NotInSmallComplex(f"rho={g.rho} is not in C")
    out: dict[ChainGenerator, Scalar] = {}
    for gen, coeff in _closed_form_terms(spec, g, lowering_only=True):
        out[gen] = out[gen] + coeff if gen in out else coeff
    return ChainElement(spec, out)


def diff_symmetric(spec: AlgebraSpec, g: ChainGenerator) -> ChainElement:
    """The quantum symmetric algebra differential; preserves rho exactly."""
    m = spec.num_generators
    A, G = g.mono, g.wedge
    out: dict[ChainGenerator, Scalar] = {}
    for i in range(1, m + 1):
        if not G[i - 1]:
            continue
        sign = (-1) ** sum(G[: i - 1])
        base = spec.lambda_tilde_power_product(
            [(k, i, G[k - 1]) for k in range(1, i)]
            + [(k, i, A[k - 1]) for k in range(i + 1, m + 1)]
        )
        bracket = spec.one() - spec.lambda_tilde_power_product(
            (i, k, A[k - 1] + G[k - 1]) for k in range(1, m + 1)
        )
        coeff = base * bracket * sign
        if coeff.is_zero():
            continue
        gen = ChainGenerator(
            tuple(a + (1 if t == i - 1 else 0) for t, a in enumerate(A)), _without(G, i - 1)
        )
        out[gen] = out[gen] + coeff if gen in out else coeff
    return ChainElement(spec, out)


def diff_weyl(spec: AlgebraSpec, g: ChainGenerator) -> ChainElement:
    """The classical Weyl-algebra Koszul differential (all parameters 1)."""
    if spec.r != spec.n:
        raise NotSemiClassical("the Weyl complex needs r = n")
    r = spec.r
    alpha, beta = g.mono[:r], g.mono[r:]
    gamma, delta = g.wedge[:r], g.wedge[r:]
    out: dict[ChainGenerator, Scalar] = {}

    def add(gen: ChainGenerator, c: int):
        coeff = spec.scalar(c)
        out[gen] = out[gen] + coeff if gen in out else coeff

    for i in range(1, r + 1):
        if gamma[i - 1] and beta[i - 1]:
            add(
                ChainGenerator(alpha + _lower(beta, i - 1), _without(g.wedge, i - 1)),
                -_epsilon_1(gamma, i) * beta[i - 1],
            )
    for j in range(1, r + 1):
        if delta[j - 1] and alpha[j - 1]:
            add(
                ChainGenerator(_lower(alpha, j - 1) + beta, _without(g.wedge, r + j - 1)),
                _epsilon_2(gamma, delta, j) * alpha[j - 1],
            )
    return ChainElement(spec, out)


# ---------------------------------------------------------------------------
# Weight strands of the small complex.
# ---------------------------------------------------------------------------


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _bit_vectors(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in (0, 1):
        if first <= total:
            for rest in _bit_vectors(total - first, parts - 1):
                yield (first,) + rest


@dataclass(frozen=True)
class StrandComplex:
    """The weight-w strand of the small complex, with differential matrices.

    generators[k] lists the degree-k basis in lexicographic (mono, wedge)
    order; matrices[k] maps degree-k coordinates to degree-(k-1) coordinates.
    """

    weight: int
    generators: dict[int, list[ChainGenerator]]
    matrices: dict[int, SparseMatrix]


def enumerate_strand(spec: AlgebraSpec, w: int) -> StrandComplex:
    m = spec.num_generators
    generators: dict[int, list[ChainGenerator]] = {}
    for k in range(0, m + 1):
        p = w + k
        gens: list[ChainGenerator] = []
        if p >= 0:
            for wedge in _bit_vectors(k, m):
                for mono in _compositions(p, m):
                    g = ChainGenerator(mono, wedge)
                    if is_in_C(spec, g.rho):
                        gens.append(g)
            gens.sort(key=lambda g: (g.mono, g.wedge))
        generators[k] = gens
    matrices: dict[int, SparseMatrix] = {}
    for k in range(1, m + 1):
        index = {g: i for i, g in enumerate(generators[k - 1])}
        entries: dict[tuple[int, int], Scalar] = {}
        for col, g in enumerate(generators[k]):
            for tgt, coeff in diff_small(spec, g).terms.items():
                entries[(index[tgt], col)] = coeff
        matrices[k] = SparseMatrix(len(generators[k - 1]), len(generators[k]), entries)
    return StrandComplex(w, generators, matrices)


# ---------------------------------------------------------------------------
# Semi-classical comparison with the Weyl complex.
# ---------------------------------------------------------------------------


def weyl_compare_R(spec: AlgebraSpec, g: ChainGenerator) -> Scalar:
    """The comparison scalar R(alpha, beta, gamma, delta).

    R = prod_{u<v} lambda_{u,v}^{gamma_u beta_v + alpha_u delta_v}.  This is
    the unique natural rescaling making the identity map a chain isomorphism
    between the small complex of a semi-classical algebra and the classical
    Weyl-algebra Koszul complex: it satisfies

        Omega'_1(g) R(d_1 g) = -eps_1(i) beta_i R(g)
        Omega'_2(g) R(d_2 g) =  eps_2(j) alpha_j R(g)

    exactly, which is the statement that f (multiplication by R) intertwines
    the two differentials.
    """
    if spec.r != spec.n:
        raise NotSemiClassical("comparison maps need r = n")
    n = spec.n
    alpha, beta = g.mono[:n], g.mono[n:]
    gamma, delta = g.wedge[:n], g.wedge[n:]
    factors = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            e = gamma[u - 1] * beta[v - 1] + alpha[u - 1] * delta[v - 1]
            if e:
                factors.append((u, v, e))
    return spec.model.lambda_power_product(factors)


def weyl_compare_maps(
    spec: AlgebraSpec, g: ChainGenerator
) -> tuple[Scalar, ChainElement, ChainElement]:
    """(R, f(g), g(g)): the mutually inverse maps between K_C and the Weyl complex.

    f carries a small-complex generator to R times the same exponent data in
    the Weyl complex; g carries a Weyl generator back with R^{-1} when its
    rho lies in C and to zero otherwise.
    """
    R = weyl_compare_R(spec, g)
    in_c = is_in_C(spec, g.rho)
    if not in_c:
        raise NotInSmallComplex(f"f is only defined on K_C; rho={g.rho} not in C")
    f_image = ChainElement.single(spec, g, R)
    g_image = ChainElement.single(spec, g, R.inv())
    return R, f_image, g_image


def weyl_g_map(spec: AlgebraSpec, g: ChainGenerator) -> ChainElement:
    """The section g: Weyl complex -> K_C (zero off the small complex)."""
    if spec.r != spec.n:
        raise NotSemiClassical("comparison maps need r = n")
    if not is_in_C(spec, g.rho):
        return ChainElement.zero(spec)
    return ChainElement.single(spec, g, weyl_compare_R(spec, g).inv())


# ---------------------------------------------------------------------------
# Braided antisymmetry check.
# ---------------------------------------------------------------------------

Word = tuple[int, ...]
WordElement = dict[Word, Scalar]


def _braid_at(spec: AlgebraSpec, elem: WordElement, pos: int) -> WordElement:
    """Apply the braiding at positions (pos, pos+1), 1-based."""
    out: WordElement = {}
    for word, c in elem.items():
        a, b = word[pos - 1], word[pos]
        if a != b:
            c = c * spec.lambda_tilde(a, b)
            word = word[: pos - 1] + (b, a) + word[pos + 1 :]
        out[word] = out[word] + c if word in out else c
    return {w: c for w, c in out.items() if not c.is_zero()}


def _pi_front(spec: AlgebraSpec, elem: WordElement, i: int) -> WordElement:
    """Bring letter i to the front: the composite c_1 ... c_{i-1}."""
    for t in range(i - 1, 0, -1):
        elem = _braid_at(spec, elem, t)
    return elem


def _pi_back(spec: AlgebraSpec, elem: WordElement, k: int, length: int) -> WordElement:
    """Bring letter k to the end of a length-`length` prefix: c_{L-1} ... c_k."""
    for t in range(k, length):
        elem = _braid_at(spec, elem, t)
    return elem


def _pair_form(spec: AlgebraSpec, a: int, b: int) -> int:
    """The bilinear form pairing each Weyl generator with its partner."""
    if a <= spec.r and b == a + spec.r:
        return 1
    if b <= spec.r and a == b + spec.r:
        return -1
    return 0


def braiding_f_prime(
    spec: AlgebraSpec, word: Word, bound: int = 6
) -> WordElement:
    """The alternating contraction f' on a tensor word; expected to vanish.

    f' = sum_{i<j} (-1)^{i+j+1} [ (f (x) I)(I (x) Pi_{j-1}) Pi_i
                                - (I (x) f)(PiBack_i (x) I) PiBack_j ]

    where Pi_i braids letter i to the front, PiBack_k braids letter k to the
    end, and f pairs v_i with v_{r+i} (value 1) and v_{r+i} with v_i
    (value -1).
    """
    p = len(word)
    if p > bound:
        raise WordTooLong(f"word length {p} exceeds bound {bound}")
    if p < 2:
        raise WordTooLong("need a word of length at least 2")
    for a in word:
        if not (1 <= a <= spec.num_generators):
            raise IndexOutOfRange(f"letter {a} out of range")
    total: WordElement = {}

    def accumulate(elem: WordElement, sign: int, drop_front: bool):
        for w, c in elem.items():
            if drop_front:
                pair = _pair_form(spec, w[0], w[1])
                rest = w[2:]
            else:
                pair = _pair_form(spec, w[-2], w[-1])
                rest = w[:-2]
            if pair == 0:
                continue
            contrib = c * (pair * sign)
            total[rest] = total[rest] + contrib if rest in total else contrib

    start: WordElement = {word: spec.one()}
    for i in range(1, p + 1):
        for j in range(i + 1, p + 1):
            sign = (-1) ** (i + j + 1)
            # (f (x) I) (I_1 (x) Pi_{j-1}) Pi_i
            elem = _pi_front(spec, start, i)
            shifted: WordElement = {}
            for w, c in elem.items():
                sub = {w[1:]: c}
                for ww, cc in _pi_front(spec, sub, j - 1).items():
                    nw = (w[0],) + ww
                    shifted[nw] = shifted[nw] + cc if nw in shifted else cc
            accumulate(shifted, sign, drop_front=True)
            # (I (x) f) (PiBack_i (x) I_1) PiBack_j
            elem = _pi_back(spec, start, j, p)
            moved: WordElement = {}
            for w, c in elem.items():
                sub = {w[: p - 1]: c}
                for ww, cc in _pi_back(spec, sub, i, p - 1).items():
                    nw = ww + (w[-1],)
                    moved[nw] = moved[nw] + cc if nw in moved else cc
            accumulate(moved, -sign, drop_front=False)
    return {w: c for w, c in total.items() if not c.is_zero()}
