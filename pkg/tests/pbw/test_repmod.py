"""Tests for the tensor modules ωL(p) ⊗ L(p+m) and their limits."""
from __future__ import annotations

import pytest

from qgroups.pbw.bases import PBWIndex, pbw_to_cb
from qgroups.pbw.qarith import (
    LaurentPoly,
    RationalFunction,
    Unbounded,
    UPoly,
    q_minus_q_inv,
    qq_pochhammer,
    upoly_eval_u0,
)
from qgroups.pbw.repmod import (
    TensorVector,
    UHalfElement,
    WeightMismatch,
    WeightParam,
    act_divpow,
    act_gen,
    apply_udot,
    approx_E_step,
    approx_F_step,
    closed_action_EF,
    closed_action_FE,
    gram,
    limit_vector,
    pairing_half,
    pure_norm,
    unfuse,
    vacuum,
)
from qgroups.pbw.udot1 import UdotElement, pairing


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _inv() -> RationalFunction:
    return RationalFunction.one() / q_minus_q_inv()


def _one_minus_q(e: int) -> RationalFunction:
    return RationalFunction.from_laurent(LaurentPoly.from_dict({0: 1, e: -1}))


def _word(letters: str, v: TensorVector) -> TensorVector:
    for g in reversed(letters):
        v = act_gen(g, v)  # type: ignore[arg-type]
    return v


# ---------------------------------------------------------------------------
# Weight parameters
# ---------------------------------------------------------------------------

def test_weight_param_modes() -> None:
    assert WeightParam.symbolic(3).mode == "symbolic"
    assert WeightParam.concrete(2, 1).mode == "concrete"
    assert WeightParam.concrete(2, 1).admits((2, 3))
    assert not WeightParam.concrete(2, 1).admits((3, 0))
    assert not WeightParam.concrete(2, 1).admits((0, 4))
    assert WeightParam.symbolic(-5).admits((40, 40))


@pytest.mark.parametrize("p, m", [(0, -1), (2, -3), (-1, 0)])
def test_weight_param_rejects_small_p(p: int, m: int) -> None:
    with pytest.raises(ValueError):
        WeightParam.concrete(p, m)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", [-2, 0, 3])
def test_k_acts_by_weight(m: int) -> None:
    param = WeightParam.symbolic(m)
    v = TensorVector.pure(param, 2, 1)
    assert act_gen("K", v) == v.scale(param.scalar(RationalFunction.q_power(m + 2)))
    assert act_gen("Kinv", act_gen("K", v)) == v


def test_ef_on_vacuum_symbolic() -> None:
    param = WeightParam.symbolic(0)
    got = act_gen("E", act_gen("F", vacuum(param)))
    expected = TensorVector.from_dict(param, {
        (1, 1): UPoly.one(),
        (0, 0): UPoly.from_dict({0: _inv(), 2: -_inv()}),
    })
    assert got == expected


def test_e_on_vacuum() -> None:
    param = WeightParam.concrete(3, 0)
    assert act_gen("E", vacuum(param)) == TensorVector.pure(param, 1, 0)


def test_unknown_generator() -> None:
    with pytest.raises(ValueError):
        act_gen("H", vacuum(WeightParam.symbolic(0)))  # type: ignore[arg-type]


def test_divided_powers_truncate_concretely() -> None:
    param = WeightParam.concrete(2, 0)
    v0 = vacuum(param)
    assert act_divpow("F", 2, v0) == TensorVector.pure(param, 0, 2)
    assert act_divpow("F", 3, v0).is_zero()
    assert act_divpow("E", 2, v0) == TensorVector.pure(param, 2, 0)
    assert act_divpow("E", 3, v0).is_zero()
    assert act_divpow("E", 0, v0) == v0


def test_divided_power_negative() -> None:
    with pytest.raises(ValueError):
        act_divpow("E", -1, vacuum(WeightParam.symbolic(0)))


# ---------------------------------------------------------------------------
# Closed actions
# ---------------------------------------------------------------------------

def test_closed_ef_rank_one() -> None:
    param = WeightParam.symbolic(0)
    got = closed_action_EF(1, 1, vacuum(param))
    remainder = (UPoly.one() - UPoly.monomial(2)) * (RationalFunction.q_power(-1) / _one_minus_q(-2))
    assert got == TensorVector.from_dict(param, {(1, 1): UPoly.one(), (0, 0): remainder})


@pytest.mark.parametrize("m", [-2, -1, 0, 1, 2])
@pytest.mark.parametrize("a, b", [(0, 0), (1, 0), (0, 2), (1, 1), (2, 1), (1, 2), (2, 2)])
def test_closed_matches_iterated(a: int, b: int, m: int) -> None:
    v0 = vacuum(WeightParam.symbolic(m))
    assert closed_action_EF(a, b, v0) == act_divpow("E", a, act_divpow("F", b, v0))
    assert closed_action_FE(a, b, v0) == act_divpow("F", b, act_divpow("E", a, v0))


def test_closed_action_needs_vacuum() -> None:
    param = WeightParam.symbolic(0)
    with pytest.raises(ValueError):
        closed_action_EF(1, 1, TensorVector.pure(param, 1, 0))


@pytest.mark.parametrize("a, b, m, p", [(2, 1, -1, 6), (1, 2, 1, 4), (2, 2, 0, 5)])
def test_specialize_matches_concrete(a: int, b: int, m: int, p: int) -> None:
    symbolic = closed_action_EF(a, b, vacuum(WeightParam.symbolic(m)))
    w0 = vacuum(WeightParam.concrete(p, m))
    assert symbolic.specialize(p) == act_divpow("E", a, act_divpow("F", b, w0))


def test_apply_udot_weight_mismatch() -> None:
    with pytest.raises(WeightMismatch) as info:
        apply_udot(UdotElement.basis(1, 1, 0), vacuum(WeightParam.symbolic(1)))
    assert info.value.expected == 1
    assert info.value.actual == 0


def test_apply_udot_fe_branch() -> None:
    x = UdotElement.basis(1, 1, 2)
    v0 = vacuum(WeightParam.symbolic(2))
    assert apply_udot(x, v0) == closed_action_FE(1, 1, v0)


@pytest.mark.parametrize("word", ["EF", "FFE", "EEFF", "FEFE", "EFFEF"])
def test_words_stay_bounded(word: str) -> None:
    assert _word(word, vacuum(WeightParam.symbolic(-1))).is_bounded()


# ---------------------------------------------------------------------------
# Form
# ---------------------------------------------------------------------------

def test_vacuum_norm() -> None:
    v0 = vacuum(WeightParam.symbolic(3))
    assert gram(v0, v0) == UPoly.one()


@pytest.mark.parametrize("p, m", [(2, 1), (4, -1), (3, 0)])
def test_concrete_eta_norm(p: int, m: int) -> None:
    n = p + m
    expected = _one_minus_q(-2 * n) / _one_minus_q(-2)
    assert pure_norm(WeightParam.concrete(p, m), 0, 1) == expected


@pytest.mark.parametrize("a, b, m", [(0, 0, 0), (1, 0, 2), (2, 1, -1), (3, 2, 0)])
def test_symbolic_norm_limit(a: int, b: int, m: int) -> None:
    v = TensorVector.pure(WeightParam.symbolic(m), a, b)
    value = gram(v, v)
    assert isinstance(value, UPoly) and value.is_bounded()
    assert upoly_eval_u0(value) == RationalFunction.one() / (qq_pochhammer(a) * qq_pochhammer(b))


def test_pure_tensors_orthogonal() -> None:
    param = WeightParam.symbolic(0)
    assert gram(TensorVector.pure(param, 1, 1), TensorVector.pure(param, 0, 0)).is_zero()


def test_gram_rejects_unbounded() -> None:
    param = WeightParam.symbolic(0)
    v = TensorVector.from_dict(param, {(0, 0): UPoly.monomial(-1)})
    with pytest.raises(Unbounded):
        gram(v, v)


def test_gram_mismatch() -> None:
    with pytest.raises(WeightMismatch):
        gram(vacuum(WeightParam.symbolic(0)), vacuum(WeightParam.symbolic(1)))


@pytest.mark.parametrize("m", [-1, 0, 1])
def test_gram_limit_is_pairing(m: int) -> None:
    elements = [UdotElement.basis(a, b, m) for a in range(2) for b in range(3)]
    param = WeightParam.symbolic(m)
    for x in elements:
        for y in elements:
            value = gram(apply_udot(x, vacuum(param)), apply_udot(y, vacuum(param)))
            assert isinstance(value, UPoly)
            assert upoly_eval_u0(value) == pairing(x, y)


def test_pairing_half() -> None:
    e2 = UHalfElement.divpow("plus", 2)
    assert pairing_half(e2, e2) == RationalFunction.one() / qq_pochhammer(2)
    assert pairing_half(e2, UHalfElement.divpow("plus", 1)).is_zero()
    with pytest.raises(ValueError):
        pairing_half(e2, UHalfElement.divpow("minus", 2))
    with pytest.raises(ValueError):
        UHalfElement.divpow("middle", 1)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Limits
# ---------------------------------------------------------------------------

def test_limit_vector_rank_one() -> None:
    v = closed_action_EF(1, 1, vacuum(WeightParam.symbolic(0)))
    assert limit_vector(v) == {(1, 1): RationalFunction.one(), (0, 0): _inv()}


def test_limit_vector_names_label() -> None:
    param = WeightParam.symbolic(0)
    v = TensorVector.from_dict(param, {(2, 0): UPoly.monomial(-2), (0, 0): UPoly.one()})
    with pytest.raises(Unbounded) as info:
        limit_vector(v)
    assert info.value.label == (2, 0)
    assert info.value.exponents == (-2,)


def test_limit_vector_concrete_rejected() -> None:
    with pytest.raises(ValueError):
        limit_vector(vacuum(WeightParam.concrete(1, 0)))


def test_unfuse_canonical() -> None:
    assert unfuse(UdotElement.basis(1, 1, 0)) == [
        (0, 0, _inv()),
        (1, 1, RationalFunction.one()),
    ]


@pytest.mark.parametrize("a, b, m", [(1, 1, 0), (1, 1, -2), (2, 1, 1), (2, 2, -1), (1, 2, 3)])
def test_unfuse_pbw_is_pure(a: int, b: int, m: int) -> None:
    assert unfuse(pbw_to_cb(PBWIndex(m, a, b))) == [(a, b, RationalFunction.one())]


# ---------------------------------------------------------------------------
# Approximation steps
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", [-2, 0, 1])
@pytest.mark.parametrize("a, b", [(0, 0), (1, 0), (0, 1), (2, 3)])
def test_approx_steps_match_action(a: int, b: int, m: int) -> None:
    param = WeightParam.symbolic(m)
    v = TensorVector.pure(param, a, b)
    assert approx_E_step(a, b, param) == act_gen("E", v)
    assert approx_F_step(a, b, param) == act_gen("F", v)


def test_json_roundtrip_symbolic_vector() -> None:
    v = closed_action_EF(2, 1, vacuum(WeightParam.symbolic(-1)))
    assert TensorVector.from_json(v.to_json()) == v
    assert v.to_json()["mode"] == "symbolic"
    assert "p" not in v.to_json()
