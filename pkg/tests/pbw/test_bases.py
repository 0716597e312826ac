"""Tests for the PBW basis and its transitions against the canonical basis."""
from __future__ import annotations

from fractions import Fraction

import pytest

from qgroups.pbw.bases import (
    PBWCombo,
    PBWIndex,
    TransitionMatrix,
    cb_to_pbw,
    dual_pbw_scale,
    expand_in_pbw,
    ladder_matrices,
    pairing_pbw,
    pairing_via_pbw,
    pbw_combo_to_cb,
    pbw_to_cb,
    positivity_report,
    wall_consistency,
)
from qgroups.pbw.qarith import LaurentPoly, RationalFunction
from qgroups.pbw.udot1 import Orientation, UdotElement, canonical_indices, pairing_cb


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _one_minus_q(e: int) -> RationalFunction:
    return RationalFunction.from_laurent(LaurentPoly.from_dict({0: 1, e: -1}))


def _geom(e: int) -> RationalFunction:
    """q^e / (1 - q^-2)."""
    return RationalFunction.q_power(e) / _one_minus_q(-2)


def _cb(a: int, b: int, m: int):
    return UdotElement.basis(a, b, m).terms[0][0]


# ---------------------------------------------------------------------------
# CB -> PBW
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("a, m", [(0, 0), (2, -3), (3, 1), (1, 5)])
def test_cb_to_pbw_pure_e(a: int, m: int) -> None:
    combo = cb_to_pbw(_cb(a, 0, m))
    assert combo.terms == ((PBWIndex(m, a, 0), RationalFunction.one()),)


@pytest.mark.parametrize("m", [0, -1, -2, -5])
def test_cb_to_pbw_ef_rank_one(m: int) -> None:
    combo = cb_to_pbw(_cb(1, 1, m))
    assert combo.as_dict() == {
        PBWIndex(m, 1, 1): RationalFunction.one(),
        PBWIndex(m, 0, 0): _geom(m - 1),
    }


@pytest.mark.parametrize("m", [1, 2, 4])
def test_cb_to_pbw_fe_rank_one(m: int) -> None:
    combo = cb_to_pbw(_cb(1, 1, m))
    assert combo.as_dict() == {
        PBWIndex(m, 1, 1): RationalFunction.one(),
        PBWIndex(m, 0, 0): _geom(-m - 1),
    }


@pytest.mark.parametrize("a, b, m", [(3, 2, -4), (2, 4, 0), (4, 4, 3), (5, 1, 6)])
def test_cb_to_pbw_triangular(a: int, b: int, m: int) -> None:
    i = _cb(a, b, m)
    combo = cb_to_pbw(i)
    ladder = {PBWIndex(m, a - s, b - s) for s in range(min(a, b) + 1)}
    assert set(combo.as_dict()) == ladder
    assert combo.coefficient(PBWIndex(m, a, b)) == RationalFunction.one()


def test_cb_to_pbw_wrong_branch_off_wall() -> None:
    with pytest.raises(ValueError):
        cb_to_pbw(_cb(1, 1, -1), Orientation.FE)


# ---------------------------------------------------------------------------
# PBW -> CB
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("b, m", [(0, 0), (2, 1), (3, -2), (1, 4)])
def test_pbw_to_cb_pure_f(b: int, m: int) -> None:
    assert pbw_to_cb(PBWIndex(m, 0, b)) == UdotElement.basis(0, b, m)


def test_pbw_to_cb_w11_on_wall() -> None:
    expected = UdotElement.basis(1, 1, 0) - UdotElement.idempotent(0).scale(_geom(-1))
    assert pbw_to_cb(PBWIndex(0, 1, 1)) == expected


def test_pbw_to_cb_w11_negative_weight() -> None:
    expected = UdotElement.basis(1, 1, -2) - UdotElement.idempotent(-2).scale(_geom(-3))
    assert pbw_to_cb(PBWIndex(-2, 1, 1)) == expected


def test_pbw_to_cb_w11_positive_weight() -> None:
    expected = UdotElement.basis(1, 1, 3) - UdotElement.idempotent(3).scale(_geom(-4))
    assert pbw_to_cb(PBWIndex(3, 1, 1)) == expected


@pytest.mark.parametrize("a, b, m", [(2, 2, 0), (3, 1, -3), (1, 3, 4), (3, 3, 2)])
def test_expansions_invert(a: int, b: int, m: int) -> None:
    w = PBWIndex(m, a, b)
    assert expand_in_pbw(pbw_to_cb(w)) == PBWCombo.from_dict(m, {w: RationalFunction.one()})
    x = UdotElement.basis(a, b, m)
    assert pbw_combo_to_cb(expand_in_pbw(x)) == x


# ---------------------------------------------------------------------------
# Ladder matrices
# ---------------------------------------------------------------------------

def test_ladder_trivial() -> None:
    c2p, p2c = ladder_matrices(0, 0, 5)
    assert c2p.is_identity()
    assert p2c.is_identity()


def test_ladder_rank_one() -> None:
    c2p, p2c = ladder_matrices(1, 1, 0)
    assert c2p.ladder == ((1, 1), (0, 0))
    assert c2p.entries[1][0] == _geom(-1)
    assert p2c.entries[1][0] == -_geom(-1)
    assert c2p.entries[0][1].is_zero()


@pytest.mark.parametrize("a, b, m", [
    (2, 2, 0), (3, 2, -4), (2, 5, 7), (4, 4, -12), (4, 3, 12), (5, 5, 1),
])
def test_ladder_mutual_inverse(a: int, b: int, m: int) -> None:
    c2p, p2c = ladder_matrices(a, b, m)
    assert c2p.is_unital_triangular()
    assert p2c.is_unital_triangular()
    assert p2c.matmul(c2p).is_identity()
    assert c2p.matmul(p2c).is_identity()


def test_ladder_mutual_inverse_largest() -> None:
    c2p, p2c = ladder_matrices(8, 8, -3)
    assert c2p.size == 9
    assert p2c.matmul(c2p).is_identity()


def test_ladder_matches_expansions() -> None:
    c2p, _ = ladder_matrices(3, 2, -2)
    for i, (a, b) in enumerate(c2p.ladder):
        combo = cb_to_pbw(_cb(a, b, -2))
        for j, (a2, b2) in enumerate(c2p.ladder):
            assert c2p.entries[j][i] == combo.coefficient(PBWIndex(-2, a2, b2))


def test_transition_matrix_json() -> None:
    c2p, _ = ladder_matrices(1, 1, 0)
    data = c2p.to_json()
    assert data["ladder"] == [[1, 1], [0, 0]]
    assert TransitionMatrix.from_json(data) == c2p


# ---------------------------------------------------------------------------
# Form
# ---------------------------------------------------------------------------

def test_pairing_pbw() -> None:
    w11 = PBWIndex(0, 1, 1)
    assert pairing_pbw(w11, w11) == RationalFunction.one() / (_one_minus_q(-2) * _one_minus_q(-2))
    assert pairing_pbw(w11, PBWIndex(0, 2, 2)).is_zero()
    assert pairing_pbw(PBWIndex(4, 0, 0), PBWIndex(4, 0, 0)) == RationalFunction.one()
    assert pairing_pbw(w11, PBWIndex(1, 1, 1)).is_zero()


def test_dual_pbw_scale() -> None:
    assert dual_pbw_scale(PBWIndex(0, 2, 1)) == _one_minus_q(-2) * _one_minus_q(-4) * _one_minus_q(-2)


def test_pairing_via_pbw_examples() -> None:
    ef = UdotElement.basis(1, 1, 0)
    expected = (RationalFunction.one() + RationalFunction.q_power(-2)) / (_one_minus_q(-2) * _one_minus_q(-2))
    assert pairing_via_pbw(ef, ef) == expected
    one = UdotElement.idempotent(2)
    assert pairing_via_pbw(one, one) == RationalFunction.one()
    e2 = UdotElement.basis(2, 0, 3)
    assert pairing_via_pbw(e2, e2) == RationalFunction.one() / (_one_minus_q(-2) * _one_minus_q(-4))


@pytest.mark.parametrize("m", [-3, -1, 0, 1, 2])
def test_orthogonality_transfer(m: int) -> None:
    indices = list(canonical_indices(2, 2, m))
    for i1 in indices:
        for i2 in indices:
            x = UdotElement.basis(i1.a, i1.b, m, i1.orient)
            y = UdotElement.basis(i2.a, i2.b, m, i2.orient)
            assert pairing_via_pbw(x, y) == pairing_cb(i1, i2)


# ---------------------------------------------------------------------------
# Positivity and wall
# ---------------------------------------------------------------------------

def test_positivity_rank_one_series() -> None:
    report = positivity_report(_cb(1, 1, 0), order=7)
    assert report.passed
    ((idx, series),) = report.series
    assert idx == PBWIndex(0, 0, 0)
    assert [k for k, c in series if c != 0] == [1, 3, 5, 7]
    assert all(c == Fraction(1) for k, c in series if c != 0)


@pytest.mark.parametrize("a, b, m", [(3, 3, -1), (4, 2, 3), (2, 5, -6), (6, 6, 8)])
def test_positivity_passes(a: int, b: int, m: int) -> None:
    assert positivity_report(_cb(a, b, m), order=30).passed


def test_positivity_vacuous() -> None:
    report = positivity_report(_cb(3, 0, 1))
    assert report.passed
    assert report.series == ()


@pytest.mark.parametrize("a", range(0, 4))
@pytest.mark.parametrize("b", range(0, 4))
def test_wall_consistency(a: int, b: int) -> None:
    wall = wall_consistency(a, b)
    assert wall.consistent
    assert wall.cb_ef.weight == b - a
