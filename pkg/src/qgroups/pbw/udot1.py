"""Modified quantum sl2 in canonical-basis coordinates.

An element of the block U̇1_m is stored as a combination of canonical basis
symbols E^(a)F^(b)1_m (m <= b-a) and F^(b)E^(a)1_m (m >= b-a); on the wall
m = b-a the two coincide and the EF form is stored. Left multiplication is
carried out in the monomial basis {E^(a)F^(b)1_m : a, b >= 0} and converted
back with the standard commutation formulas for divided powers.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cache
from typing import Any, Iterable, Literal, Mapping

from qgroups.pbw.qarith import (
    RationalFunction,
    gaussian_binomial,
    q_factorial,
    q_integer,
    qq_pochhammer,
)


Generator = Literal["E", "F"]


class Orientation(str, Enum):
    EF = "EF"
    FE = "FE"


class OrientationInvalid(ValueError):
    """Raised for a symbol that is not a canonical basis element."""

    def __init__(self, message: str, index: tuple[int, int, int, str] | None = None) -> None:
        super().__init__(message)
        self.index = index


@dataclass(frozen=True, order=True)
class CBIndex:
    """Canonical basis element E^(a)F^(b)1_m (EF) or F^(b)E^(a)1_m (FE)."""

    m: int
    a: int
    b: int
    orient: Orientation = Orientation.EF

    @property
    def left_weight(self) -> int:
        return left_weight(self)

    def __str__(self) -> str:
        e = _divpow_text("E", self.a)
        f = _divpow_text("F", self.b)
        body = e + f if self.orient is Orientation.EF else f + e
        return f"{body}1_{self.m}" if body else f"1_{self.m}"


def _divpow_text(name: str, n: int) -> str:
    if n == 0:
        return ""
    if n == 1:
        return name
    return f"{name}^({n})"


def cb_canonicalize(a: int, b: int, m: int, orient: Orientation | str) -> CBIndex:
    """Rewrite a symbol to its canonical orientation.

    Raises:
        OrientationInvalid: if the symbol lies strictly on the wrong side of
            the wall m = b - a, or a divided power is negative.
    """
    orient = Orientation(orient)
    if a < 0 or b < 0:
        raise OrientationInvalid(f"negative divided power in ({a}, {b}, {m})", (a, b, m, orient.value))
    wall = b - a
    if orient is Orientation.EF and m > wall:
        raise OrientationInvalid(
            f"E^({a})F^({b})1_{m} is not canonical: m > b-a", (a, b, m, orient.value)
        )
    if orient is Orientation.FE and m < wall:
        raise OrientationInvalid(
            f"F^({b})E^({a})1_{m} is not canonical: m < b-a", (a, b, m, orient.value)
        )
    if m == wall:
        return CBIndex(m, a, b, Orientation.EF)
    return CBIndex(m, a, b, orient)


def left_weight(i: CBIndex) -> int:
    """Weight λ with K̃ i = q^λ i."""
    return i.m + 2 * i.a - 2 * i.b


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UdotElement:
    """Finite combination of canonical basis elements of one block U̇1_m."""

    weight: int
    terms: tuple[tuple[CBIndex, RationalFunction], ...] = ()

    @classmethod
    def from_dict(cls, weight: int, coeffs: Mapping[CBIndex, RationalFunction]) -> UdotElement:
        for idx in coeffs:
            if idx.m != weight:
                raise ValueError(f"index {idx} does not lie in block 1_{weight}")
        return cls(weight, tuple(sorted((i, c) for i, c in coeffs.items() if not c.is_zero())))

    @classmethod
    def basis(cls, a: int, b: int, m: int, orient: Orientation | str | None = None) -> UdotElement:
        """Single canonical basis element; ``orient=None`` picks the canonical side."""
        if orient is None:
            orient = Orientation.EF if m <= b - a else Orientation.FE
        return cls(m, ((cb_canonicalize(a, b, m, orient), RationalFunction.one()),))

    @classmethod
    def idempotent(cls, m: int) -> UdotElement:
        return cls.basis(0, 0, m)

    @classmethod
    def zero(cls, m: int) -> UdotElement:
        return cls(m, ())

    def as_dict(self) -> dict[CBIndex, RationalFunction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, i: CBIndex) -> RationalFunction:
        return self.as_dict().get(i, RationalFunction.zero())

    def _check_block(self, other: UdotElement) -> None:
        if self.weight != other.weight:
            raise ValueError(f"cannot add elements of blocks 1_{self.weight} and 1_{other.weight}")

    def __add__(self, other: UdotElement) -> UdotElement:
        self._check_block(other)
        out = self.as_dict()
        for i, c in other.terms:
            out[i] = out[i] + c if i in out else c
        return UdotElement.from_dict(self.weight, out)

    def __neg__(self) -> UdotElement:
        return UdotElement(self.weight, tuple((i, -c) for i, c in self.terms))

    def __sub__(self, other: UdotElement) -> UdotElement:
        return self + (-other)

    def scale(self, c: RationalFunction | int) -> UdotElement:
        rf = c if isinstance(c, RationalFunction) else RationalFunction.from_scalar(c)
        if rf.is_zero():
            return UdotElement.zero(self.weight)
        return UdotElement(self.weight, tuple((i, v * rf) for i, v in self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"[{c}]*{i}" for i, c in self.terms)

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.weight,
            "terms": [
                {"a": i.a, "b": i.b, "orient": i.orient.value, "coeff": c.to_json()}
                for i, c in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> UdotElement:
        m = int(data["m"])
        out: dict[CBIndex, RationalFunction] = {}
        for t in data["terms"]:
            idx = cb_canonicalize(int(t["a"]), int(t["b"]), m, t["orient"])
            coeff = RationalFunction.from_json(t["coeff"])
            out[idx] = out[idx] + coeff if idx in out else coeff
        return cls.from_dict(m, out)


# ---------------------------------------------------------------------------
# Monomial coordinates E^(a)F^(b)1_m
# ---------------------------------------------------------------------------

_Monomials = dict[tuple[int, int], RationalFunction]


def _accumulate(out: _Monomials, key: tuple[int, int], c: RationalFunction) -> None:
    if c.is_zero():
        return
    out[key] = out[key] + c if key in out else c


@cache
def _fe_in_monomials(a: int, b: int, m: int) -> tuple[tuple[tuple[int, int], RationalFunction], ...]:
    """F^(b)E^(a)1_m = Σ_t [b-a-m, t] E^(a-t)F^(b-t)1_m."""
    return tuple(
        ((a - t, b - t), RationalFunction.from_laurent(gaussian_binomial(b - a - m, t)))
        for t in range(min(a, b) + 1)
        if not gaussian_binomial(b - a - m, t).is_zero()
    )


@cache
def _ef_in_canonical(a: int, b: int, m: int) -> tuple[tuple[CBIndex, RationalFunction], ...]:
    """E^(a)F^(b)1_m in the canonical basis; off the EF side use Σ_t [a-b+m, t] F^(b-t)E^(a-t)1_m."""
    if m <= b - a:
        return ((CBIndex(m, a, b, Orientation.EF), RationalFunction.one()),)
    return tuple(
        (cb_canonicalize(a - t, b - t, m, Orientation.FE),
         RationalFunction.from_laurent(gaussian_binomial(a - b + m, t)))
        for t in range(min(a, b) + 1)
        if not gaussian_binomial(a - b + m, t).is_zero()
    )


def _to_monomials(x: UdotElement) -> _Monomials:
    out: _Monomials = {}
    for i, c in x.terms:
        if i.orient is Orientation.EF:
            _accumulate(out, (i.a, i.b), c)
            continue
        for key, coeff in _fe_in_monomials(i.a, i.b, i.m):
            _accumulate(out, key, c * coeff)
    return out


def _from_monomials(m: int, mono: _Monomials) -> UdotElement:
    out: dict[CBIndex, RationalFunction] = {}
    for (a, b), c in mono.items():
        for idx, coeff in _ef_in_canonical(a, b, m):
            prod = c * coeff
            out[idx] = out[idx] + prod if idx in out else prod
    return UdotElement.from_dict(m, out)


# ---------------------------------------------------------------------------
# Left multiplication
# ---------------------------------------------------------------------------


def mul_gen(g: Generator, x: UdotElement) -> UdotElement:
    """Left multiplication by E or F.

    E·E^(a)F^(b)1_m = [a+1] E^(a+1)F^(b)1_m and
    F·E^(a)F^(b)1_m = [b+1] E^(a)F^(b+1)1_m - [a-1+m-2b] E^(a-1)F^(b)1_m.
    """
    m = x.weight
    out: _Monomials = {}
    for (a, b), c in _to_monomials(x).items():
        if g == "E":
            _accumulate(out, (a + 1, b), c * RationalFunction.from_laurent(q_integer(a + 1)))
        elif g == "F":
            _accumulate(out, (a, b + 1), c * RationalFunction.from_laurent(q_integer(b + 1)))
            if a > 0:
                _accumulate(out, (a - 1, b), -c * RationalFunction.from_laurent(q_integer(a - 1 + m - 2 * b)))
        else:
            raise ValueError(f"unknown generator {g!r}")
    return _from_monomials(m, out)


def mul_divpow(g: Generator, n: int, x: UdotElement) -> UdotElement:
    """Left multiplication by E^(n) or F^(n)."""
    if n < 0:
        raise ValueError(f"divided power must be >= 0, got {n}")
    y = x
    for _ in range(n):
        y = mul_gen(g, y)
    if n <= 1:
        return y
    return y.scale(RationalFunction.one() / RationalFunction.from_laurent(q_factorial(n)))


def mul_k(x: UdotElement, sign: int = 1) -> UdotElement:
    """Left multiplication by K̃^sign."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return UdotElement.from_dict(
        x.weight,
        {i: c * RationalFunction.q_power(sign * left_weight(i)) for i, c in x.terms},
    )


def rho_action(g: Generator, y: UdotElement) -> UdotElement:
    """Left multiplication by ρ(E) = qK̃F or ρ(F) = q^-1 E K̃^-1."""
    if g == "E":
        return mul_k(mul_gen("F", y), 1).scale(RationalFunction.q_power(1))
    if g == "F":
        return mul_gen("E", mul_k(y, -1)).scale(RationalFunction.q_power(-1))
    raise ValueError(f"unknown generator {g!r}")


# ---------------------------------------------------------------------------
# Bilinear form
# ---------------------------------------------------------------------------


@cache
def pairing_cb(i1: CBIndex, i2: CBIndex) -> RationalFunction:
    """Closed-form pairing of two canonical basis elements.

    Zero across blocks or when b - a differs; otherwise a single sum over the
    shared part of the two ladders, with the sign of the (a-b+m) exponent
    following the orientation.
    """
    if i1.m != i2.m or i1.b - i1.a != i2.b - i2.a:
        return RationalFunction.zero()
    a, b, m, a2 = i1.a, i1.b, i1.m, i2.a
    d = a - b + m
    sign = 1 if m <= b - a else -1
    total = RationalFunction.zero()
    for s in range(max(0, a - a2), min(a, b) + 1):
        t = a2 - a + s
        exponent = -s * s - t * t + sign * (s + t) * d
        den = qq_pochhammer(a - s) * qq_pochhammer(b - s) * qq_pochhammer(s) * qq_pochhammer(t)
        total = total + RationalFunction.q_power(exponent) / den
    return total


def pairing(x: UdotElement, y: UdotElement) -> RationalFunction:
    """Bilinear extension of :func:`pairing_cb`; blocks of different weight are orthogonal."""
    if x.weight != y.weight:
        return RationalFunction.zero()
    total = RationalFunction.zero()
    for i1, c1 in x.terms:
        for i2, c2 in y.terms:
            value = pairing_cb(i1, i2)
            if not value.is_zero():
                total = total + c1 * c2 * value
    return total


def canonical_indices(max_a: int, max_b: int, m: int) -> Iterable[CBIndex]:
    """All canonical indices of block m with a <= max_a, b <= max_b."""
    for a in range(max_a + 1):
        for b in range(max_b + 1):
            yield cb_canonicalize(a, b, m, Orientation.EF if m <= b - a else Orientation.FE)
