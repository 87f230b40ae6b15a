"""Koszul-type complexes: differentials, comparison maps, braiding."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest

from hochhom.errors import (
    IndexOutOfRange,
    NotInSmallComplex,
    NotSemiClassical,
    WordTooLong,
)
from hochhom.koszul import (
    ChainElement,
    ChainGenerator,
    braiding_f_prime,
    chain_generator_str,
    diff_full,
    diff_full_closed,
    diff_small,
    diff_symmetric,
    diff_weyl,
    enumerate_strand,
    is_in_C,
    weyl_compare_maps,
    weyl_g_map,
    _bit_vectors,
    _closed_form_terms,
    _compositions,
)
from hochhom.scalar import AlgebraSpec, CyclotomicModel, RationalModel


def weyl_spec():
    return AlgebraSpec(1, 1, RationalModel([[Fraction(1)]]))


def mixed_rational_spec():
    return AlgebraSpec(
        2, 1, RationalModel([[Fraction(1), Fraction(1, 2)], [Fraction(2), Fraction(1)]])
    )


def mixed_root_spec(order=2):
    return AlgebraSpec(2, 1, CyclotomicModel(order, [[0, -1], [1, 0]]))


def semiclassical_spec():
    return AlgebraSpec(
        2, 2, RationalModel([[Fraction(1), Fraction(2)], [Fraction(1, 2), Fraction(1)]])
    )


def quantum_plane_spec():
    return AlgebraSpec(
        2, 0, RationalModel([[Fraction(1), Fraction(1, 2)], [Fraction(2), Fraction(1)]])
    )


ALL_SPECS = [weyl_spec, mixed_rational_spec, mixed_root_spec, semiclassical_spec, quantum_plane_spec]


def generators_up_to(spec, max_degree):
    m = spec.num_generators
    for p in range(max_degree + 1):
        for mono in _compositions(p, m):
            for size in range(m + 1):
                for wedge in _bit_vectors(size, m):
                    yield ChainGenerator(mono, wedge)


def apply_diff(spec, diff, elem):
    out = ChainElement.zero(spec)
    for g, c in elem.terms.items():
        out = out + diff(spec, g).scale(c)
    return out


# ---------------------------------------------------------------------------
# Membership in the small complex.
# ---------------------------------------------------------------------------


def test_membership_examples():
    spec = mixed_root_spec(2)
    assert is_in_C(spec, (1, 1, 2))
    assert not is_in_C(spec, (1, 1, 1))
    assert is_in_C(spec, (0, 0, 0))


def test_membership_weyl_pairs():
    spec = semiclassical_spec()
    # x_i-degree must match y_i-degree unless the column product is 1
    assert is_in_C(spec, (1, 0, 1, 0))
    assert is_in_C(spec, (2, 1, 2, 1))
    assert not is_in_C(spec, (1, 1, 0, 0))


# ---------------------------------------------------------------------------
# d . d = 0 and agreement between the generic and closed-form routes.
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("make_spec", ALL_SPECS)
def test_full_differential_squares_to_zero(make_spec):
    spec = make_spec()
    for g in generators_up_to(spec, 3):
        assert apply_diff(spec, diff_full, diff_full(spec, g)).is_zero(), (
            chain_generator_str(spec, g)
        )


@pytest.mark.parametrize("make_spec", ALL_SPECS)
def test_closed_form_agrees_with_generic(make_spec):
    spec = make_spec()
    for g in generators_up_to(spec, 3):
        assert diff_full_closed(spec, g) == diff_full(spec, g), chain_generator_str(spec, g)


@pytest.mark.parametrize("make_spec", ALL_SPECS)
def test_small_differential_squares_and_stays_in_C(make_spec):
    spec = make_spec()
    for g in generators_up_to(spec, 3):
        if not is_in_C(spec, g.rho):
            continue
        image = diff_small(spec, g)
        for h in image.terms:
            assert is_in_C(spec, h.rho)
            assert h.weight == g.weight
            assert h.quantum_degree(spec) == g.quantum_degree(spec)
        assert apply_diff(spec, diff_small, image).is_zero()


@pytest.mark.parametrize("make_spec", ALL_SPECS)
def test_symmetric_differential_squares_and_preserves_rho(make_spec):
    spec = make_spec()
    for g in generators_up_to(spec, 3):
        image = diff_symmetric(spec, g)
        for h in image.terms:
            assert h.rho == g.rho
        assert apply_diff(spec, diff_symmetric, image).is_zero()


def test_weyl_differential_squares_to_zero():
    for make_spec in (weyl_spec, semiclassical_spec):
        spec = make_spec()
        for g in generators_up_to(spec, 3):
            assert apply_diff(spec, diff_weyl, diff_weyl(spec, g)).is_zero()


def test_small_diff_rejects_outside_C():
    spec = mixed_root_spec(2)
    g = ChainGenerator((1, 0, 1), (0, 0, 0))
    assert not is_in_C(spec, g.rho)
    with pytest.raises(NotInSmallComplex):
        diff_small(spec, g)


def test_weyl_diff_needs_semiclassical():
    spec = mixed_rational_spec()
    with pytest.raises(NotSemiClassical):
        diff_weyl(spec, ChainGenerator((0, 0, 0), (0, 0, 0)))


# ---------------------------------------------------------------------------
# Worked examples.
# ---------------------------------------------------------------------------


def test_weyl_differential_basic_values():
    spec = weyl_spec()
    y_wedge_x = ChainGenerator((0, 1), (1, 0))
    image = diff_weyl(spec, y_wedge_x)
    assert image == ChainElement.single(
        spec, ChainGenerator((0, 0), (0, 0)), spec.scalar(-1)
    )
    x_wedge_y = ChainGenerator((1, 0), (0, 1))
    assert diff_weyl(spec, x_wedge_y) == ChainElement.single(
        spec, ChainGenerator((0, 0), (0, 0)), spec.one()
    )


def test_top_wedge_with_no_paired_degrees_dies():
    """The lowering-only image of z^2 (x) x^y^z vanishes identically."""
    spec = mixed_root_spec(2)
    g = ChainGenerator((0, 0, 2), (1, 1, 1))
    assert not is_in_C(spec, g.rho)
    assert list(_closed_form_terms(spec, g, lowering_only=True)) == []


def test_full_differential_top_wedge_example():
    spec = weyl_spec()
    # only the Weyl-pair lowering survives: d(y (x) x^y) = -1 (x) y
    g = ChainGenerator((0, 1), (1, 1))
    assert diff_full(spec, g) == ChainElement.single(
        spec, ChainGenerator((0, 0), (0, 1)), spec.scalar(-1)
    )


# ---------------------------------------------------------------------------
# Strand enumeration.
# ---------------------------------------------------------------------------


def test_strand_weight_and_composition():
    spec = weyl_spec()
    strand = enumerate_strand(spec, -2)
    for k, gens in strand.generators.items():
        for g in gens:
            assert g.weight == -2
            assert is_in_C(spec, g.rho)
    for k, matrix in strand.matrices.items():
        lower = strand.matrices.get(k - 1)
        if lower is not None:
            assert lower.compose(matrix).is_zero()


def test_strand_top_degree_generator():
    spec = weyl_spec()
    strand = enumerate_strand(spec, -2)
    assert [chain_generator_str(spec, g) for g in strand.generators[2]] == ["1 (x) x1^y1"]


# ---------------------------------------------------------------------------
# Comparison maps for the semi-classical case.
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("make_spec", [weyl_spec, semiclassical_spec])
def test_comparison_maps_intertwine_and_retract(make_spec):
    spec = make_spec()

    def f_map(elem):
        out = ChainElement.zero(spec)
        for g, c in elem.terms.items():
            _, image, _ = weyl_compare_maps(spec, g)
            out = out + image.scale(c)
        return out

    def g_map(elem):
        out = ChainElement.zero(spec)
        for g, c in elem.terms.items():
            out = out + weyl_g_map(spec, g).scale(c)
        return out

    for g in generators_up_to(spec, 3):
        if not is_in_C(spec, g.rho):
            continue
        one = ChainElement.single(spec, g)
        # f: small -> Weyl intertwines; g: Weyl -> small intertwines on K_C
        assert f_map(diff_small(spec, g)) == apply_diff(spec, diff_weyl, f_map(one))
        assert g_map(diff_weyl(spec, g)) == apply_diff(spec, diff_small, g_map(one))
        assert g_map(f_map(one)) == one


def test_g_map_kills_complement_of_C():
    spec = semiclassical_spec()
    g = ChainGenerator((1, 1, 0, 0), (0, 0, 0, 0))
    assert not is_in_C(spec, g.rho)
    assert weyl_g_map(spec, g).is_zero()


def test_comparison_maps_reject_outside_C():
    spec = semiclassical_spec()
    g = ChainGenerator((1, 1, 0, 0), (0, 0, 0, 0))
    with pytest.raises(NotInSmallComplex):
        weyl_compare_maps(spec, g)


# ---------------------------------------------------------------------------
# Braiding.
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("make_spec", [weyl_spec, mixed_rational_spec, mixed_root_spec])
def test_braiding_pairing_vanishes_on_short_words(make_spec):
    spec = make_spec()
    m = spec.num_generators
    for length in (2, 3):
        for word in product(range(1, m + 1), repeat=length):
            image = braiding_f_prime(spec, word)
            assert all(c.is_zero() for c in image.values()), word


def test_braiding_word_bounds():
    spec = weyl_spec()
    with pytest.raises(WordTooLong):
        braiding_f_prime(spec, (1,) * 9, bound=4)
    with pytest.raises(IndexOutOfRange):
        braiding_f_prime(spec, (1, 5))
