"""Exact arithmetic in Q(q) and Q(q)[u, u^-1], plus the q-combinatorial primitives.

Everything here is immutable and exact. Laurent polynomials in ``q`` carry
``Fraction`` coefficients; rational functions are kept in a canonical reduced
form so that equality of values is equality of representations. The auxiliary
variable ``u`` stands for ``q^-p`` when the weight ``p`` of a tensor module is
treated symbolically (``t = u^2``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import gcd, lcm
from typing import Any, Mapping, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import ring


_POLY_RING, _ = ring("q", QQ)

Scalar = Union[int, Fraction]

DEFAULT_SERIES_ORDER = 30


class NotExpandable(ArithmeticError):
    """Raised when a rational function has no expansion in ascending powers of q^-1."""


class Unbounded(ValueError):
    """Raised when an element of Q(q)[u, u^-1] does not lie in Q(q)[t], t = u^2."""

    def __init__(
        self,
        message: str,
        exponents: tuple[int, ...] = (),
        label: tuple[int, int] | None = None,
    ) -> None:
        super().__init__(message)
        self.exponents = exponents
        self.label = label


def _fraction_to_json(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _format_power(name: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return name
    return f"{name}^{e}"


# ---------------------------------------------------------------------------
# Laurent polynomials in q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse Laurent polynomial in ``q`` with exact rational coefficients.

    ``terms`` is sorted by exponent and never stores a zero coefficient; use
    :meth:`from_dict` rather than the raw constructor.
    """

    terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, Scalar]) -> LaurentPoly:
        return cls(tuple(sorted((e, Fraction(c)) for e, c in coeffs.items() if c != 0)))

    @classmethod
    def zero(cls) -> LaurentPoly:
        return _LAURENT_ZERO

    @classmethod
    def one(cls) -> LaurentPoly:
        return _LAURENT_ONE

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> LaurentPoly:
        if coeff == 0:
            return _LAURENT_ZERO
        return cls(((exponent, Fraction(coeff)),))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == _LAURENT_ONE.terms

    @property
    def min_exp(self) -> int:
        return self.terms[0][0]

    @property
    def max_exp(self) -> int:
        return self.terms[-1][0]

    def leading_coeff(self) -> Fraction:
        return self.terms[-1][1]

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``q^k``."""
        if k == 0:
            return self
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def scale(self, c: Scalar) -> LaurentPoly:
        if c == 0:
            return _LAURENT_ZERO
        return LaurentPoly(tuple((e, v * c) for e, v in self.terms))

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __add__(self, other: Any) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.monomial(0, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return LaurentPoly.from_dict(out)

    __radd__ = __add__

    def __sub__(self, other: Any) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.monomial(0, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: Any) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative powers of a Laurent polynomial are not Laurent polynomials")
        out = _LAURENT_ONE
        for _ in range(n):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e, c in self.terms:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            power = _format_power("q", e)
            if not power:
                body = str(mag)
            elif mag == 1:
                body = power
            else:
                body = f"{mag}*{power}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json(self) -> list[list[Any]]:
        return [[e, _fraction_to_json(c)] for e, c in self.terms]

    @classmethod
    def from_json(cls, data: list[list[Any]]) -> LaurentPoly:
        return cls.from_dict({int(e): Fraction(c) for e, c in data})


_LAURENT_ZERO = LaurentPoly(())
_LAURENT_ONE = LaurentPoly(((0, Fraction(1)),))


def _to_ring(p: LaurentPoly):
    return _POLY_RING.from_dict(
        {(e,): QQ(c.numerator, c.denominator) for e, c in p.terms}
    )


def _from_ring(p) -> LaurentPoly:
    return LaurentPoly.from_dict(
        {e: Fraction(int(c.numerator), int(c.denominator)) for (e,), c in p.terms()}
    )


def _denominator_scale(den: LaurentPoly) -> Fraction:
    """Factor turning ``den`` into an integer polynomial of content 1 and positive leading term."""
    common = lcm(*(c.denominator for _, c in den.terms))
    content = gcd(*(int(c * common) for _, c in den.terms))
    scale = Fraction(common, content)
    return -scale if den.leading_coeff() < 0 else scale


def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return _LAURENT_ZERO, _LAURENT_ONE
    offset = num.min_exp - den.min_exp
    n = num.shift(-num.min_exp)
    d = den.shift(-den.min_exp)
    if d.max_exp > 0 and n.max_exp > 0:
        _, n_ring, d_ring = _to_ring(n).cofactors(_to_ring(d))
        n, d = _from_ring(n_ring), _from_ring(d_ring)
    scale = _denominator_scale(d)
    return n.scale(scale).shift(offset), d.scale(scale)


# ---------------------------------------------------------------------------
# The field Q(q)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """Element of Q(q) in canonical reduced form.

    The denominator is an integer polynomial of content 1 with lowest
    exponent 0 and positive leading coefficient, coprime to the numerator.
    Build values with :meth:`fraction`, :meth:`from_laurent` or
    :meth:`q_power`; the raw constructor skips normalization.
    """

    num: LaurentPoly
    den: LaurentPoly = _LAURENT_ONE

    @classmethod
    def fraction(cls, num: LaurentPoly, den: LaurentPoly) -> RationalFunction:
        if den.is_one():
            return cls(num, _LAURENT_ONE)
        return cls(*_normalize(num, den))

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> RationalFunction:
        return cls(p, _LAURENT_ONE)

    @classmethod
    def from_scalar(cls, c: Scalar) -> RationalFunction:
        return cls(LaurentPoly.monomial(0, c), _LAURENT_ONE)

    @classmethod
    def q_power(cls, exponent: int, coeff: Scalar = 1) -> RationalFunction:
        return cls(LaurentPoly.monomial(exponent, coeff), _LAURENT_ONE)

    @classmethod
    def zero(cls) -> RationalFunction:
        return _RF_ZERO

    @classmethod
    def one(cls) -> RationalFunction:
        return _RF_ONE

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __add__(self, other: Any) -> RationalFunction:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num + other.num, _LAURENT_ONE)
        if self.den == other.den:
            return RationalFunction.fraction(self.num + other.num, self.den)
        return RationalFunction.fraction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other: Any) -> RationalFunction:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> RationalFunction:
        return (-self) + other

    def __mul__(self, other: Any) -> RationalFunction:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return _RF_ZERO
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num * other.num, _LAURENT_ONE)
        return RationalFunction.fraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> RationalFunction:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction.fraction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Any) -> RationalFunction:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> RationalFunction:
        if n < 0:
            return _RF_ONE / (self ** (-n))
        return RationalFunction.fraction(self.num ** n, self.den ** n)

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def to_json(self) -> dict[str, Any]:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> RationalFunction:
        return cls.fraction(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


_RF_ZERO = RationalFunction(_LAURENT_ZERO, _LAURENT_ONE)
_RF_ONE = RationalFunction(_LAURENT_ONE, _LAURENT_ONE)


def _coerce(value: Any) -> RationalFunction | None:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalFunction.from_scalar(value)
    if isinstance(value, LaurentPoly):
        return RationalFunction.from_laurent(value)
    return None


# ---------------------------------------------------------------------------
# Q(q)[u, u^-1]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UPoly:
    """Laurent polynomial in ``u = q^-p`` with coefficients in Q(q).

    Bounded elements are those in Q(q)[t], ``t = u^2``; they converge in
    Q((q^-1)) as ``p`` grows, to their ``u^0`` coefficient.
    """

    terms: tuple[tuple[int, RationalFunction], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, RationalFunction]) -> UPoly:
        return cls(tuple(sorted((k, c) for k, c in coeffs.items() if not c.is_zero())))

    @classmethod
    def constant(cls, c: RationalFunction | Scalar) -> UPoly:
        return cls.monomial(0, c)

    @classmethod
    def monomial(cls, exponent: int, coeff: RationalFunction | Scalar = 1) -> UPoly:
        rf = _coerce(coeff)
        if rf is None or rf.is_zero():
            return cls(())
        return cls(((exponent, rf),))

    @classmethod
    def zero(cls) -> UPoly:
        return cls(())

    @classmethod
    def one(cls) -> UPoly:
        return cls.constant(_RF_ONE)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponent: int) -> RationalFunction:
        for k, c in self.terms:
            if k == exponent:
                return c
        return _RF_ZERO

    def exponents(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.terms)

    def is_bounded(self) -> bool:
        return all(k >= 0 and k % 2 == 0 for k, _ in self.terms)

    def is_asympt_zero(self) -> bool:
        return self.is_bounded() and self.coefficient(0).is_zero()

    def substitute(self, p: int) -> RationalFunction:
        """Evaluate at ``u = q^-p``."""
        total = _RF_ZERO
        for k, c in self.terms:
            total = total + c * RationalFunction.q_power(-p * k)
        return total

    def __neg__(self) -> UPoly:
        return UPoly(tuple((k, -c) for k, c in self.terms))

    def __add__(self, other: Any) -> UPoly:
        other = _coerce_upoly(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms:
            out[k] = out[k] + c if k in out else c
        return UPoly.from_dict(out)

    __radd__ = __add__

    def __sub__(self, other: Any) -> UPoly:
        other = _coerce_upoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> UPoly:
        return (-self) + other

    def __mul__(self, other: Any) -> UPoly:
        other = _coerce_upoly(other)
        if other is None:
            return NotImplemented
        out: dict[int, RationalFunction] = {}
        for k1, c1 in self.terms:
            for k2, c2 in other.terms:
                prod = c1 * c2
                out[k1 + k2] = out[k1 + k2] + prod if k1 + k2 in out else prod
        return UPoly.from_dict(out)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms:
            power = _format_power("u", k)
            parts.append(f"[{c}]*{power}" if power else f"[{c}]")
        return " + ".join(parts)

    def to_json(self) -> list[list[Any]]:
        return [[k, c.to_json()] for k, c in self.terms]

    @classmethod
    def from_json(cls, data: list[list[Any]]) -> UPoly:
        return cls.from_dict({int(k): RationalFunction.from_json(c) for k, c in data})


def _coerce_upoly(value: Any) -> UPoly | None:
    if isinstance(value, UPoly):
        return value
    rf = _coerce(value)
    return None if rf is None else UPoly.constant(rf)


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------


@cache
def q_integer(n: int) -> LaurentPoly:
    """Balanced quantum integer [n] = (q^n - q^-n)/(q - q^-1)."""
    if n < 0:
        return -q_integer(-n)
    return LaurentPoly.from_dict({n - 1 - 2 * k: 1 for k in range(n)})


@cache
def q_factorial(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError(f"q_factorial needs n >= 0, got {n}")
    out = LaurentPoly.one()
    for k in range(1, n + 1):
        out = out * q_integer(k)
    return out


@cache
def gaussian_binomial(top: int, k: int) -> LaurentPoly:
    """Quantum binomial ∏_{d=1}^{k} [top-d+1]/[d] for any integer ``top``.

    Non-negative tops build the q-Pascal rows up to ``top`` iteratively;
    negative tops reduce through [-n, k] = (-1)^k [n+k-1, k].
    """
    if k < 0:
        raise ValueError(f"gaussian_binomial needs k >= 0, got {k}")
    if k == 0:
        return LaurentPoly.one()
    if top < 0:
        return gaussian_binomial(-top + k - 1, k).scale((-1) ** k)
    if k > top:
        return LaurentPoly.zero()
    k = min(k, top - k)
    row = [LaurentPoly.one()] + [LaurentPoly.zero()] * k
    for n in range(1, top + 1):
        # [n, j] = q^-j [n-1, j] + q^(n-j) [n-1, j-1]
        row = [LaurentPoly.one()] + [
            row[j].shift(-j) + row[j - 1].shift(n - j) for j in range(1, k + 1)
        ]
    return row[k]


def q_binomial_identity_sum(k: int) -> LaurentPoly:
    """Σ_{s=0}^{k} (-1)^s q^{s(1-k)} [k, s]; zero for every k >= 1."""
    total = LaurentPoly.zero()
    for s in range(k + 1):
        total = total + gaussian_binomial(k, s).shift(s * (1 - k)).scale((-1) ** s)
    return total


def pochhammer_q2(a: UPoly, m: int) -> UPoly:
    """(a; q^-2)_m = ∏_{s=0}^{m-1} (1 - a q^{-2s}) for a single monomial ``a``."""
    if len(a.terms) != 1 or not a.terms[0][1].is_laurent() or len(a.terms[0][1].num.terms) != 1:
        raise ValueError(f"pochhammer_q2 expects a monomial c*q^e*u^f, got {a}")
    if m < 0:
        raise ValueError(f"pochhammer_q2 needs m >= 0, got {m}")
    out = UPoly.one()
    for s in range(m):
        out = out * (UPoly.one() - a * RationalFunction.q_power(-2 * s))
    return out


@cache
def qq_pochhammer(m: int) -> RationalFunction:
    """(q^-2; q^-2)_m as an element of Q(q)."""
    return pochhammer_q2(UPoly.constant(RationalFunction.q_power(-2)), m).coefficient(0)


@cache
def q_minus_q_inv() -> RationalFunction:
    return RationalFunction.from_laurent(LaurentPoly.from_dict({1: 1, -1: -1}))


def q_integer_shifted(k: int, sign: int) -> UPoly:
    """Symbolic quantum integer [sign*p + k] with ``u = q^-p``.

    [±p + k] = (q^k u^∓1 - q^-k u^±1)/(q - q^-1).
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    scale = _RF_ONE / q_minus_q_inv()
    return UPoly.from_dict({
        -sign: RationalFunction.q_power(k) * scale,
        sign: RationalFunction.q_power(-k) * -scale,
    })


def upoly_eval_u0(x: UPoly) -> RationalFunction:
    """Limit ``p -> ∞`` of a bounded element: its ``u^0`` coefficient.

    Raises:
        Unbounded: if ``x`` has a negative or odd ``u``-exponent.
    """
    if not x.is_bounded():
        raise Unbounded(f"element {x} is not in Q(q)[u^2]", exponents=x.exponents())
    return x.coefficient(0)


# ---------------------------------------------------------------------------
# Expansion in Q((q^-1))
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QSeries:
    """Truncated expansion Σ_k coeffs[k - lowest] q^{-k} for k = lowest..order."""

    order: int
    lowest: int
    coeffs: tuple[Fraction, ...]

    def coefficient(self, k: int) -> Fraction:
        if k < self.lowest or k > self.order:
            return Fraction(0)
        return self.coeffs[k - self.lowest]

    def items(self) -> list[tuple[int, Fraction]]:
        return [(self.lowest + j, c) for j, c in enumerate(self.coeffs)]


def series_expand(r: RationalFunction, order: int = DEFAULT_SERIES_ORDER) -> QSeries:
    """Exact expansion of ``r`` in ascending powers of q^-1 through q^-order.

    Raises:
        NotExpandable: if the denominator is zero.
    """
    if r.den.is_zero():
        raise NotExpandable("zero denominator has no expansion")
    if r.is_zero():
        return QSeries(order=order, lowest=0, coeffs=tuple(Fraction(0) for _ in range(order + 1)))
    # With x = q^-1: num = q^top_n * N(x), den = q^top_d * D(x), D(0) != 0.
    top_n, top_d = r.num.max_exp, r.den.max_exp
    n = {top_n - e: c for e, c in r.num.terms}
    d = {top_d - e: c for e, c in r.den.terms}
    lowest = top_d - top_n
    length = order - lowest + 1
    out: list[Fraction] = []
    d0 = d[0]
    for j in range(max(length, 0)):
        acc = n.get(j, Fraction(0))
        for i in range(1, j + 1):
            if i in d:
                acc -= d[i] * out[j - i]
        out.append(acc / d0)
    return QSeries(order=order, lowest=lowest, coeffs=tuple(out))
