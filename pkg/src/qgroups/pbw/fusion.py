"""The fusion product E^(a) ⋆_m F^(b) by recursion on a, and its defining limit."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cache

from qgroups.pbw.qarith import RationalFunction, UPoly, q_integer, q_minus_q_inv, upoly_eval_u0
from qgroups.pbw.repmod import (
    TensorVector,
    UHalfElement,
    WeightMismatch,
    WeightParam,
    apply_udot,
    gram,
    vacuum,
)
from qgroups.pbw.udot1 import UdotElement, mul_gen

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FusionResult:
    a: int
    b: int
    m: int
    value: UdotElement

    def __str__(self) -> str:
        return f"E^({self.a}) *_{self.m} F^({self.b}) = {self.value}"


def fusion_step_constant(a: int, b: int, m: int) -> RationalFunction:
    """q^{2a+m-b-1}/(q - q^-1), the coefficient of E^(a-1) ⋆_m F^(b-1) when peeling one E."""
    return RationalFunction.q_power(2 * a + m - b - 1) / q_minus_q_inv()


@cache
def fuse(a: int, b: int, m: int) -> FusionResult:
    """E^(a) ⋆_m F^(b).

    fuse(0, b, m) = F^(b)1_m, and for a > 0

        fuse(a, b, m) = [a]^-1 (E·fuse(a-1, b, m) - c·fuse(a-1, b-1, m))

    with c from :func:`fusion_step_constant`; the second term is absent when b = 0.
    """
    if a < 0 or b < 0:
        raise ValueError(f"fuse needs a, b >= 0, got ({a}, {b})")
    if a == 0:
        return FusionResult(0, b, m, UdotElement.basis(0, b, m))
    logger.debug("fuse(%d, %d, %d)", a, b, m)
    value = mul_gen("E", fuse(a - 1, b, m).value)
    if b > 0:
        value = value - fuse(a - 1, b - 1, m).value.scale(fusion_step_constant(a, b, m))
    value = value.scale(RationalFunction.one() / RationalFunction.from_laurent(q_integer(a)))
    return FusionResult(a, b, m, value)


def fuse_product(x: UHalfElement, y: UHalfElement, m: int) -> UdotElement:
    """Bilinear extension of :func:`fuse` to x ∈ U^+, y ∈ U^-."""
    if x.side != "plus" or y.side != "minus":
        raise ValueError("fuse_product expects x in U^+ and y in U^-")
    out = UdotElement.zero(m)
    for a, ca in x.terms:
        for b, cb in y.terms:
            out = out + fuse(a, b, m).value.scale(ca * cb)
    return out


def defining_limit_remainder(a: int, b: int, m: int) -> TensorVector:
    """(E^(a) ⋆_m F^(b))(ξ ⊗ η) - E^(a)ξ ⊗ F^(b)η in symbolic mode."""
    param = WeightParam.symbolic(m)
    return apply_udot(fuse(a, b, m).value, vacuum(param)) - TensorVector.pure(param, a, b)


def verify_defining_limit(a: int, b: int, m: int) -> bool:
    return defining_limit_remainder(a, b, m).is_asympt_zero()


def pairing_module_limit(x: UdotElement, y: UdotElement) -> RationalFunction:
    """(x, y) as the p -> ∞ limit of the module form on x(ξ⊗η) and y(ξ⊗η).

    Raises:
        WeightMismatch: if x and y lie in different blocks.
    """
    if x.weight != y.weight:
        raise WeightMismatch(
            f"pairing of blocks 1_{x.weight} and 1_{y.weight}", expected=x.weight, actual=y.weight
        )
    v0 = vacuum(WeightParam.symbolic(x.weight))
    value = gram(apply_udot(x, v0), apply_udot(y, v0))
    assert isinstance(value, UPoly)
    return upoly_eval_u0(value)
