"""Strand homology, closed-answer oracles, and the quotient reduction witness."""

from __future__ import annotations

from fractions import Fraction

import pytest

from hochhom.errors import RhoInC
from hochhom.homology import (
    detect_regime,
    expected_hh_oracle,
    hh_report,
    quotient_strand_acyclicity,
    strand_homology,
)
from hochhom.koszul import _compositions, is_in_C
from hochhom.scalar import AlgebraSpec, CyclotomicModel, RationalModel


def weyl_spec():
    return AlgebraSpec(1, 1, RationalModel([[Fraction(1)]]))


def mixed_rational_spec():
    return AlgebraSpec(
        2, 1, RationalModel([[Fraction(1), Fraction(1, 2)], [Fraction(2), Fraction(1)]])
    )


def mixed_root_spec(order):
    return AlgebraSpec(2, 1, CyclotomicModel(order, [[0, -1], [1, 0]]))


def quantum_plane_spec():
    return AlgebraSpec(
        2, 0, RationalModel([[Fraction(1), Fraction(1, 2)], [Fraction(2), Fraction(1)]])
    )


def test_weyl_homology_single_class():
    report = hh_report(weyl_spec(), -2, 3)
    assert report.nonzero_entries() == [(-2, 2, 1)]
    rep = report.strands[-2].representatives[2]
    assert len(rep) == 1
    assert str(rep[0]) == "1*1 (x) x1^y1"


def test_strand_homology_zero_weight_weyl():
    strand = strand_homology(weyl_spec(), 0)
    assert all(d == 0 for d in strand.dimensions.values())


def test_regime_detection():
    assert detect_regime(weyl_spec()) == "semiclassical"
    assert detect_regime(mixed_rational_spec()) == "free"
    assert detect_regime(mixed_root_spec(3)) == "mixed-minimal-root"


def test_free_case_matches_oracle():
    spec = mixed_rational_spec()
    report = hh_report(spec, -2, 3, representatives=False)
    for w in range(-2, 4):
        expected = expected_hh_oracle(spec, w)
        assert expected is not None
        for k in range(4):
            assert report.dimension(w, k) == expected.get(k, 0), (w, k)


def test_quantum_plane_matches_oracle():
    spec = quantum_plane_spec()
    report = hh_report(spec, 0, 3, representatives=False)
    for w in range(0, 4):
        expected = expected_hh_oracle(spec, w)
        for k in range(3):
            assert report.dimension(w, k) == expected.get(k, 0), (w, k)


@pytest.mark.parametrize("order", [2, 3])
def test_mixed_root_matches_oracle(order):
    spec = mixed_root_spec(order)
    report = hh_report(spec, -2, 4, representatives=False)
    for w in range(-2, 5):
        expected = expected_hh_oracle(spec, w)
        for k in range(4):
            assert report.dimension(w, k) == expected.get(k, 0), (w, k)


def test_oracle_none_for_unsupported():
    # root-of-unity semiclassical entries but n > 2 blocks the minimal form
    spec = AlgebraSpec(
        2,
        1,
        RationalModel([[Fraction(1), Fraction(-1)], [Fraction(-1), Fraction(1)]]),
    )
    if detect_regime(spec) == "unsupported":
        assert expected_hh_oracle(spec, 0) is None


def test_report_clamps_weight_floor():
    report = hh_report(weyl_spec(), -10, -2)
    assert report.w_min == -2


def test_quotient_acyclicity_small_strands():
    spec = mixed_root_spec(2)
    checked = 0
    for total in range(1, 5):
        for rho in _compositions(total, 3):
            if is_in_C(spec, rho):
                continue
            result = quotient_strand_acyclicity(spec, rho)
            assert result.passed, rho
            checked += 1
    assert checked > 0


def test_quotient_acyclicity_rejects_C_strand():
    spec = mixed_root_spec(2)
    assert is_in_C(spec, (0, 0, 2))
    with pytest.raises(RhoInC):
        quotient_strand_acyclicity(spec, (0, 0, 2))
