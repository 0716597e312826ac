"""Tensor modules ωL(p) ⊗ L(p+m) with concrete or symbolic highest weight.

A label (a, b) stands for the pure tensor E^(a)ξ_{-p} ⊗ F^(b)η_{p+m}. In
symbolic mode p is formal: coefficients are :class:`UPoly` in u = q^-p and
labels are unrestricted. In concrete mode coefficients are
:class:`RationalFunction` and labels past the top of either factor vanish.

Single-factor conventions:

* ωL(p): E·E^(a)ξ = [a+1]E^(a+1)ξ, F·E^(a)ξ = [p-a+1]E^(a-1)ξ
* L(n):  F·F^(b)η = [b+1]F^(b+1)η, E·F^(b)η = [n-b+1]F^(b-1)η

and Δ(E) = E⊗1 + K̃⊗E, Δ(F) = F⊗K̃^-1 + 1⊗F.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from typing import Any, Literal, Mapping, Union

from qgroups.pbw.qarith import (
    RationalFunction,
    Unbounded,
    UPoly,
    q_factorial,
    q_integer,
    q_integer_shifted,
    q_minus_q_inv,
    qq_pochhammer,
    upoly_eval_u0,
)
from qgroups.pbw.udot1 import Orientation, UdotElement


Coefficient = Union[UPoly, RationalFunction]
Label = tuple[int, int]
Action = Literal["E", "F", "K", "Kinv"]


class WeightMismatch(ValueError):
    """Raised when an element of U̇1_m meets a module vector of another weight."""

    def __init__(self, message: str, expected: int, actual: int) -> None:
        super().__init__(message)
        self.expected = expected
        self.actual = actual


@dataclass(frozen=True)
class WeightParam:
    """Weights of ωL(p) ⊗ L(p+m); ``p = None`` selects symbolic mode."""

    m: int
    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None and self.p < max(0, -self.m):
            raise ValueError(f"concrete mode needs p >= max(0, -m), got p={self.p}, m={self.m}")

    @classmethod
    def symbolic(cls, m: int) -> WeightParam:
        return cls(m, None)

    @classmethod
    def concrete(cls, p: int, m: int) -> WeightParam:
        return cls(m, p)

    @property
    def mode(self) -> Literal["symbolic", "concrete"]:
        return "symbolic" if self.p is None else "concrete"

    @property
    def is_symbolic(self) -> bool:
        return self.p is None

    def scalar(self, c: RationalFunction) -> Coefficient:
        return UPoly.constant(c) if self.p is None else c

    def zero(self) -> Coefficient:
        return UPoly.zero() if self.p is None else RationalFunction.zero()

    def u(self, k: int) -> Coefficient:
        """u^k, i.e. q^{-pk}."""
        if self.p is None:
            return UPoly.monomial(k)
        return RationalFunction.q_power(-self.p * k)

    def shifted_integer(self, k: int) -> Coefficient:
        """Quantum integer [p + k]."""
        if self.p is None:
            return q_integer_shifted(k, 1)
        return RationalFunction.from_laurent(q_integer(self.p + k))

    def admits(self, label: Label) -> bool:
        a, b = label
        if a < 0 or b < 0:
            return False
        if self.p is None:
            return True
        return a <= self.p and b <= self.p + self.m


def _coefficient_to_json(c: Coefficient) -> Any:
    return c.to_json()


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorVector:
    param: WeightParam
    terms: tuple[tuple[Label, Coefficient], ...] = ()

    @classmethod
    def from_dict(cls, param: WeightParam, coeffs: Mapping[Label, Coefficient]) -> TensorVector:
        kept = []
        for label, c in coeffs.items():
            if c.is_zero() or not param.admits(label):
                continue
            kept.append((label, c))
        return cls(param, tuple(sorted(kept, key=lambda t: t[0])))

    @classmethod
    def pure(cls, param: WeightParam, a: int, b: int) -> TensorVector:
        return cls.from_dict(param, {(a, b): param.scalar(RationalFunction.one())})

    def as_dict(self) -> dict[Label, Coefficient]:
        return dict(self.terms)

    def coefficient(self, label: Label) -> Coefficient:
        return self.as_dict().get(label, self.param.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def is_bounded(self) -> bool:
        return all(isinstance(c, UPoly) and c.is_bounded() for _, c in self.terms)

    def is_asympt_zero(self) -> bool:
        return all(isinstance(c, UPoly) and c.is_asympt_zero() for _, c in self.terms)

    def _check(self, other: TensorVector) -> None:
        if self.param != other.param:
            raise WeightMismatch(
                f"vectors of different modules: {self.param} vs {other.param}",
                expected=self.param.m,
                actual=other.param.m,
            )

    def __add__(self, other: TensorVector) -> TensorVector:
        self._check(other)
        out = self.as_dict()
        for label, c in other.terms:
            out[label] = out[label] + c if label in out else c
        return TensorVector.from_dict(self.param, out)

    def __neg__(self) -> TensorVector:
        return TensorVector(self.param, tuple((label, -c) for label, c in self.terms))

    def __sub__(self, other: TensorVector) -> TensorVector:
        return self + (-other)

    def scale(self, c: Coefficient) -> TensorVector:
        return TensorVector.from_dict(self.param, {label: v * c for label, v in self.terms})

    def specialize(self, p: int) -> TensorVector:
        """Substitute u = q^-p into a symbolic vector."""
        if not self.param.is_symbolic:
            raise ValueError("specialize expects a symbolic vector")
        target = WeightParam.concrete(p, self.param.m)
        return TensorVector.from_dict(
            target, {label: c.substitute(p) for label, c in self.terms if isinstance(c, UPoly)}
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"[{c}]*({a},{b})" for (a, b), c in self.terms)

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"mode": self.param.mode, "m": self.param.m}
        if self.param.p is not None:
            data["p"] = self.param.p
        data["terms"] = [
            {"a": a, "b": b, "coeff": _coefficient_to_json(c)} for (a, b), c in self.terms
        ]
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> TensorVector:
        symbolic = data["mode"] == "symbolic"
        param = WeightParam(int(data["m"]), None if symbolic else int(data["p"]))
        out: dict[Label, Coefficient] = {}
        for t in data["terms"]:
            coeff = UPoly.from_json(t["coeff"]) if symbolic else RationalFunction.from_json(t["coeff"])
            out[(int(t["a"]), int(t["b"]))] = coeff
        return cls.from_dict(param, out)


def vacuum(param: WeightParam) -> TensorVector:
    """ξ_{-p} ⊗ η_{p+m}."""
    return TensorVector.pure(param, 0, 0)


@dataclass(frozen=True)
class UHalfElement:
    """Element of U^+ (side ``plus``, coordinates E^(a)) or U^- (``minus``, F^(b))."""

    side: Literal["plus", "minus"]
    terms: tuple[tuple[int, RationalFunction], ...] = ()

    @classmethod
    def from_dict(cls, side: Literal["plus", "minus"], coeffs: Mapping[int, RationalFunction]) -> UHalfElement:
        if side not in ("plus", "minus"):
            raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
        return cls(side, tuple(sorted((n, c) for n, c in coeffs.items() if not c.is_zero())))

    @classmethod
    def divpow(cls, side: Literal["plus", "minus"], n: int) -> UHalfElement:
        return cls.from_dict(side, {n: RationalFunction.one()})


def pairing_half(x: UHalfElement, y: UHalfElement) -> RationalFunction:
    """Form on U^±: (E^(a), E^(a')) = δ_{a,a'} / (q^-2; q^-2)_a, likewise for F."""
    if x.side != y.side:
        raise ValueError("pairing_half needs two elements of the same half")
    ys = dict(y.terms)
    total = RationalFunction.zero()
    for n, c in x.terms:
        if n in ys:
            total = total + c * ys[n] / qq_pochhammer(n)
    return total


# ---------------------------------------------------------------------------
# Actions
# ---------------------------------------------------------------------------


def _accumulate(out: dict[Label, Coefficient], label: Label, c: Coefficient) -> None:
    if c.is_zero():
        return
    out[label] = out[label] + c if label in out else c


def _rf(n: int) -> RationalFunction:
    return RationalFunction.from_laurent(q_integer(n))


def act_gen(g: Action, v: TensorVector) -> TensorVector:
    """Action of E, F, K̃ or K̃^-1 through the comultiplication."""
    param = v.param
    m = param.m
    out: dict[Label, Coefficient] = {}
    for (a, b), c in v.terms:
        if g == "E":
            # E^(a)ξ ⊗ F^(b)η -> [a+1](a+1, b) + q^{-p+2a}[p+m-b+1](a, b-1)
            _accumulate(out, (a + 1, b), c * _rf(a + 1))
            if b > 0:
                k_left = param.u(1) * RationalFunction.q_power(2 * a)
                _accumulate(out, (a, b - 1), c * k_left * param.shifted_integer(m - b + 1))
        elif g == "F":
            # -> [b+1](a, b+1) + [p-a+1] q^{-(p+m-2b)} (a-1, b)
            _accumulate(out, (a, b + 1), c * _rf(b + 1))
            if a > 0:
                k_right = param.u(1) * RationalFunction.q_power(2 * b - m)
                _accumulate(out, (a - 1, b), c * k_right * param.shifted_integer(1 - a))
        elif g == "K":
            _accumulate(out, (a, b), c * RationalFunction.q_power(m + 2 * a - 2 * b))
        elif g == "Kinv":
            _accumulate(out, (a, b), c * RationalFunction.q_power(-(m + 2 * a - 2 * b)))
        else:
            raise ValueError(f"unknown generator {g!r}")
    return TensorVector.from_dict(param, out)


def act_divpow(g: Literal["E", "F"], n: int, v: TensorVector) -> TensorVector:
    if n < 0:
        raise ValueError(f"divided power must be >= 0, got {n}")
    w = v
    for _ in range(n):
        w = act_gen(g, w)
    if n <= 1:
        return w
    return w.scale(RationalFunction.one() / RationalFunction.from_laurent(q_factorial(n)))


def _require_vacuum(v0: TensorVector) -> WeightParam:
    if v0 != vacuum(v0.param):
        raise ValueError("closed action formulas start from the vacuum vector")
    return v0.param


def _closed_factor(param: WeightParam, s: int, shift: int) -> Coefficient:
    """∏_{d=1}^{s} (1 - q^{shift-2d} u^2) / (1 - q^{-2d})."""
    out: Coefficient = param.scalar(RationalFunction.one())
    u2 = param.u(2)
    for d in range(1, s + 1):
        out = out * (param.scalar(RationalFunction.one()) - u2 * RationalFunction.q_power(shift - 2 * d))
    return out * (RationalFunction.one() / qq_pochhammer(s))


def closed_action_EF(a: int, b: int, v0: TensorVector) -> TensorVector:
    """E^(a)F^(b) on the vacuum as a single sum over the ladder of (a, b)."""
    param = _require_vacuum(v0)
    m = param.m
    out: dict[Label, Coefficient] = {}
    for s in range(min(a, b) + 1):
        c = _closed_factor(param, s, 2 * b - 2 * m) * RationalFunction.q_power(-s * s + s * (a - b + m))
        _accumulate(out, (a - s, b - s), c)
    return TensorVector.from_dict(param, out)


def closed_action_FE(a: int, b: int, v0: TensorVector) -> TensorVector:
    """F^(b)E^(a) on the vacuum; mirror of :func:`closed_action_EF`."""
    param = _require_vacuum(v0)
    m = param.m
    out: dict[Label, Coefficient] = {}
    for s in range(min(a, b) + 1):
        c = _closed_factor(param, s, 2 * a) * RationalFunction.q_power(-s * s - s * (a - b + m))
        _accumulate(out, (a - s, b - s), c)
    return TensorVector.from_dict(param, out)


def apply_udot(x: UdotElement, v0: TensorVector) -> TensorVector:
    """Act by x ∈ U̇1_m on the vacuum of ωL(p) ⊗ L(p+m).

    Raises:
        WeightMismatch: if x does not lie in the block of the module's weight.
    """
    if x.weight != v0.param.m:
        raise WeightMismatch(
            f"element of U̇1_{x.weight} applied to a module of weight {v0.param.m}",
            expected=v0.param.m,
            actual=x.weight,
        )
    out = TensorVector(v0.param)
    for i, c in x.terms:
        closed = closed_action_EF if i.orient is Orientation.EF else closed_action_FE
        out = out + closed(i.a, i.b, v0).scale(v0.param.scalar(c))
    return out


# ---------------------------------------------------------------------------
# Form
# ---------------------------------------------------------------------------


@cache
def _xi_norm(a: int, p: int | None, m: int) -> Coefficient:
    """(E^(a)ξ, E^(a)ξ) with (ξ, ξ) = 1.

    (E^(a)ξ, E^(a)ξ) = [a]^-1 (E^(a-1)ξ, ρ(E)E^(a)ξ) and
    ρ(E)E^(a)ξ = q^{2a-1} u [p-a+1] E^(a-1)ξ.
    """
    param = WeightParam(m, p)
    if a == 0:
        return param.scalar(RationalFunction.one())
    step = param.u(1) * param.shifted_integer(1 - a) * (RationalFunction.q_power(2 * a - 1) / _rf(a))
    return _xi_norm(a - 1, p, m) * step


@cache
def _eta_norm(b: int, p: int | None, m: int) -> Coefficient:
    """(F^(b)η, F^(b)η) with (η, η) = 1.

    ρ(F)F^(b)η = q^{-1-(p+m-2b)} [p+m-b+1] F^(b-1)η.
    """
    param = WeightParam(m, p)
    if b == 0:
        return param.scalar(RationalFunction.one())
    step = param.u(1) * param.shifted_integer(m - b + 1) * (
        RationalFunction.q_power(2 * b - 1 - m) / _rf(b)
    )
    return _eta_norm(b - 1, p, m) * step


def pure_norm(param: WeightParam, a: int, b: int) -> Coefficient:
    if not param.admits((a, b)):
        return param.zero()
    return _xi_norm(a, param.p, param.m) * _eta_norm(b, param.p, param.m)


def gram(v: TensorVector, w: TensorVector) -> Coefficient:
    """Form on ωL(p) ⊗ L(p+m); distinct pure tensors are orthogonal.

    Raises:
        Unbounded: if a symbolic value leaves Q(q)[u^2].
    """
    if v.param != w.param:
        raise WeightMismatch(
            f"gram of vectors from {v.param} and {w.param}", expected=v.param.m, actual=w.param.m
        )
    ws = w.as_dict()
    total = v.param.zero()
    for label, c in v.terms:
        if label in ws:
            total = total + c * ws[label] * pure_norm(v.param, *label)
    if isinstance(total, UPoly) and not total.is_bounded():
        raise Unbounded(f"gram value {total} is not in Q(q)[u^2]", exponents=total.exponents())
    return total


# ---------------------------------------------------------------------------
# Limits
# ---------------------------------------------------------------------------


def limit_vector(v: TensorVector) -> dict[Label, RationalFunction]:
    """u -> 0 coefficient-wise; zero limits are omitted.

    Raises:
        Unbounded: naming the first label whose coefficient is not in Q(q)[u^2].
    """
    if not v.param.is_symbolic:
        raise ValueError("limit_vector expects a symbolic vector")
    out: dict[Label, RationalFunction] = {}
    for label, c in v.terms:
        assert isinstance(c, UPoly)
        try:
            value = upoly_eval_u0(c)
        except Unbounded as exc:
            raise Unbounded(
                f"coefficient at {label} is unbounded: {c}", exponents=exc.exponents, label=label
            ) from exc
        if not value.is_zero():
            out[label] = value
    return out


def unfuse(x: UdotElement) -> list[tuple[int, int, RationalFunction]]:
    """Pure-tensor expansion Σ E^(a) ⊗ F^(b) of x in divided-power coordinates."""
    v = apply_udot(x, vacuum(WeightParam.symbolic(x.weight)))
    return [(a, b, c) for (a, b), c in sorted(limit_vector(v).items())]


# ---------------------------------------------------------------------------
# Approximation steps
# ---------------------------------------------------------------------------


def approx_E_step(a: int, b: int, param: WeightParam) -> TensorVector:
    """E(E^(a)ξ ⊗ F^(b)η) as the three-term expansion through ir and r_i.

    With ir(F^(b)) = r_i(F^(b)) = q^{b-1}F^(b-1):
    [a+1](a+1, b) + q^{m+2a-b+1}/(q-q^-1) (a, b-1) - u^2 q^{2a+b-m-1}/(q-q^-1) (a, b-1).
    """
    m = param.m
    inv = RationalFunction.one() / q_minus_q_inv()
    out: dict[Label, Coefficient] = {}
    _accumulate(out, (a + 1, b), param.scalar(_rf(a + 1)))
    if b > 0:
        ir_part = param.scalar(RationalFunction.q_power(m + 2 * a - b + 1) * inv)
        r_part = param.u(2) * (RationalFunction.q_power(2 * a + b - m - 1) * inv)
        _accumulate(out, (a, b - 1), ir_part - r_part)
    return TensorVector.from_dict(param, out)


def approx_F_step(a: int, b: int, param: WeightParam) -> TensorVector:
    """F(E^(a)ξ ⊗ F^(b)η), mirror of :func:`approx_E_step` with ir(E^(a)) = r_i(E^(a)) = q^{a-1}E^(a-1)."""
    m = param.m
    inv = RationalFunction.one() / q_minus_q_inv()
    out: dict[Label, Coefficient] = {}
    _accumulate(out, (a, b + 1), param.scalar(_rf(b + 1)))
    if a > 0:
        ir_part = param.scalar(RationalFunction.q_power(2 * b - m - a + 1) * inv)
        r_part = param.u(2) * (RationalFunction.q_power(2 * b - m + a - 1) * inv)
        _accumulate(out, (a - 1, b), ir_part - r_part)
    return TensorVector.from_dict(param, out)
