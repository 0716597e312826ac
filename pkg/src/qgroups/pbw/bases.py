"""PBW basis w_m(a,b) of U̇ and its transitions against the canonical basis."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from typing import Any, Mapping

from qgroups.pbw.qarith import (
    DEFAULT_SERIES_ORDER,
    RationalFunction,
    qq_pochhammer,
    series_expand,
)
from qgroups.pbw.udot1 import (
    CBIndex,
    Orientation,
    UdotElement,
    cb_canonicalize,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class PBWIndex:
    """PBW basis element w_m(a,b) = E^(a) ⋆_m F^(b)."""

    m: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0:
            raise ValueError(f"PBW index needs a, b >= 0, got ({self.a}, {self.b})")

    def __str__(self) -> str:
        return f"w_{self.m}({self.a},{self.b})"


@dataclass(frozen=True)
class PBWCombo:
    """Finite combination of PBW basis elements of one block."""

    weight: int
    terms: tuple[tuple[PBWIndex, RationalFunction], ...] = ()

    @classmethod
    def from_dict(cls, weight: int, coeffs: Mapping[PBWIndex, RationalFunction]) -> PBWCombo:
        return cls(weight, tuple(sorted((i, c) for i, c in coeffs.items() if not c.is_zero())))

    def as_dict(self) -> dict[PBWIndex, RationalFunction]:
        return dict(self.terms)

    def coefficient(self, i: PBWIndex) -> RationalFunction:
        return self.as_dict().get(i, RationalFunction.zero())

    def __add__(self, other: PBWCombo) -> PBWCombo:
        if self.weight != other.weight:
            raise ValueError(f"cannot add combinations of blocks {self.weight} and {other.weight}")
        out = self.as_dict()
        for i, c in other.terms:
            out[i] = out[i] + c if i in out else c
        return PBWCombo.from_dict(self.weight, out)

    def scale(self, c: RationalFunction) -> PBWCombo:
        return PBWCombo.from_dict(self.weight, {i: v * c for i, v in self.terms})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"[{c}]*{i}" for i, c in self.terms)

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.weight,
            "terms": [{"a": i.a, "b": i.b, "coeff": c.to_json()} for i, c in self.terms],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> PBWCombo:
        m = int(data["m"])
        out: dict[PBWIndex, RationalFunction] = {}
        for t in data["terms"]:
            idx = PBWIndex(m, int(t["a"]), int(t["b"]))
            coeff = RationalFunction.from_json(t["coeff"])
            out[idx] = out[idx] + coeff if idx in out else coeff
        return cls.from_dict(m, out)


# ---------------------------------------------------------------------------
# Ladder coefficients
# ---------------------------------------------------------------------------


def _orientation_sign(a: int, b: int, m: int) -> int:
    return 1 if m <= b - a else -1


@cache
def cb_pbw_coefficient(s: int, d: int, sign: int) -> RationalFunction:
    """q^{-s^2 + sign*s*d} / (q^-2; q^-2)_s, with d = a - b + m."""
    return RationalFunction.q_power(-s * s + sign * s * d) / qq_pochhammer(s)


@cache
def pbw_cb_coefficient(s: int, d: int, sign: int) -> RationalFunction:
    """(-1)^s q^{-s + sign*s*d} / (q^-2; q^-2)_s."""
    return RationalFunction.q_power(-s + sign * s * d, (-1) ** s) / qq_pochhammer(s)


def ladder(a: int, b: int) -> list[tuple[int, int]]:
    return [(a - s, b - s) for s in range(min(a, b) + 1)]


def cb_to_pbw(i: CBIndex, orient: Orientation | None = None) -> PBWCombo:
    """Expand a canonical basis element in the PBW basis.

    Args:
        i: canonical index.
        orient: branch override, only meaningful on the wall m = b - a where
            both expansions apply.
    """
    orient = i.orient if orient is None else orient
    if orient is not i.orient and i.m != i.b - i.a:
        raise ValueError(f"{orient.value} expansion does not apply to {i}")
    sign = 1 if orient is Orientation.EF else -1
    d = i.a - i.b + i.m
    return PBWCombo.from_dict(
        i.m,
        {
            PBWIndex(i.m, a, b): cb_pbw_coefficient(s, d, sign)
            for s, (a, b) in enumerate(ladder(i.a, i.b))
        },
    )


def pbw_to_cb(i: PBWIndex, orient: Orientation | None = None) -> UdotElement:
    """Expand w_m(a,b) in the canonical basis.

    The EF branch applies for m <= b - a and the FE branch for m >= b - a;
    by default the EF branch is used on the wall.
    """
    if orient is None:
        orient = Orientation.EF if i.m <= i.b - i.a else Orientation.FE
    sign = 1 if orient is Orientation.EF else -1
    d = i.a - i.b + i.m
    return UdotElement.from_dict(
        i.m,
        {
            cb_canonicalize(a, b, i.m, orient): pbw_cb_coefficient(s, d, sign)
            for s, (a, b) in enumerate(ladder(i.a, i.b))
        },
    )


def expand_in_pbw(x: UdotElement) -> PBWCombo:
    """Linear extension of :func:`cb_to_pbw`."""
    out = PBWCombo(x.weight)
    for i, c in x.terms:
        out = out + cb_to_pbw(i).scale(c)
    return out


def pbw_combo_to_cb(x: PBWCombo) -> UdotElement:
    """Linear extension of :func:`pbw_to_cb`."""
    out = UdotElement.zero(x.weight)
    for i, c in x.terms:
        out = out + pbw_to_cb(i).scale(c)
    return out


# ---------------------------------------------------------------------------
# Transition matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransitionMatrix:
    """Square matrix over Q(q) indexed by a ladder.

    Column ``i`` holds the expansion of the source element at ``ladder[i]``,
    so ``entries[j][i]`` is the coefficient of the target element at
    ``ladder[j]``.
    """

    m: int
    ladder: tuple[tuple[int, int], ...]
    entries: tuple[tuple[RationalFunction, ...], ...] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.ladder)

    def matmul(self, other: TransitionMatrix) -> TransitionMatrix:
        if self.ladder != other.ladder or self.m != other.m:
            raise ValueError("transition matrices live on different ladders")
        n = self.size
        rows = []
        for j in range(n):
            row = []
            for i in range(n):
                acc = RationalFunction.zero()
                for k in range(n):
                    if not self.entries[j][k].is_zero() and not other.entries[k][i].is_zero():
                        acc = acc + self.entries[j][k] * other.entries[k][i]
                row.append(acc)
            rows.append(tuple(row))
        return TransitionMatrix(self.m, self.ladder, tuple(rows))

    def is_identity(self) -> bool:
        one = RationalFunction.one()
        return all(
            self.entries[j][i] == (one if i == j else RationalFunction.zero())
            for j in range(self.size)
            for i in range(self.size)
        )

    def is_unital_triangular(self) -> bool:
        """Ones on the diagonal and zeros above it."""
        one = RationalFunction.one()
        for j in range(self.size):
            if self.entries[j][j] != one:
                return False
            if any(not self.entries[j][i].is_zero() for i in range(j + 1, self.size)):
                return False
        return True

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "ladder": [list(x) for x in self.ladder],
            "entries": [[c.to_json() for c in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> TransitionMatrix:
        return cls(
            m=int(data["m"]),
            ladder=tuple((int(a), int(b)) for a, b in data["ladder"]),
            entries=tuple(tuple(RationalFunction.from_json(c) for c in row) for row in data["entries"]),
        )


def _ladder_matrix(a: int, b: int, m: int, coefficient) -> TransitionMatrix:
    steps = ladder(a, b)
    n = len(steps)
    sign = _orientation_sign(a, b, m)
    d = a - b + m
    rows = [[RationalFunction.zero()] * n for _ in range(n)]
    for i in range(n):
        for s in range(n - i):
            rows[i + s][i] = coefficient(s, d, sign)
    return TransitionMatrix(m, tuple(steps), tuple(tuple(r) for r in rows))


def ladder_matrices(a: int, b: int, m: int) -> tuple[TransitionMatrix, TransitionMatrix]:
    """CB→PBW and PBW→CB matrices over the ladder of (a, b) in block m.

    Both are unital lower triangular; ``d = a - b + m`` is constant along the
    ladder so every column is the same coefficient sequence shifted down.
    """
    if a < 0 or b < 0:
        raise ValueError(f"ladder needs a, b >= 0, got ({a}, {b})")
    return (
        _ladder_matrix(a, b, m, cb_pbw_coefficient),
        _ladder_matrix(a, b, m, pbw_cb_coefficient),
    )


# ---------------------------------------------------------------------------
# Form and dual basis
# ---------------------------------------------------------------------------


def dual_pbw_scale(i: PBWIndex) -> RationalFunction:
    """(q^-2; q^-2)_a (q^-2; q^-2)_b, the rescaling taking w_m(a,b) to its dual."""
    return qq_pochhammer(i.a) * qq_pochhammer(i.b)


def pairing_pbw(i1: PBWIndex, i2: PBWIndex) -> RationalFunction:
    if i1 != i2:
        return RationalFunction.zero()
    return RationalFunction.one() / dual_pbw_scale(i1)


def pairing_pbw_combo(x: PBWCombo, y: PBWCombo) -> RationalFunction:
    if x.weight != y.weight:
        return RationalFunction.zero()
    ys = y.as_dict()
    total = RationalFunction.zero()
    for i, c in x.terms:
        if i in ys:
            total = total + c * ys[i] * pairing_pbw(i, i)
    return total


def pairing_via_pbw(x: UdotElement, y: UdotElement) -> RationalFunction:
    """Pair two elements through their PBW expansions and the diagonal PBW norms."""
    return pairing_pbw_combo(expand_in_pbw(x), expand_in_pbw(y))


# ---------------------------------------------------------------------------
# Positivity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PositivityReport:
    index: CBIndex
    order: int
    leading_is_one: bool
    failures: tuple[str, ...] = ()
    series: tuple[tuple[PBWIndex, tuple[tuple[int, Fraction], ...]], ...] = field(
        default=(), repr=False
    )

    @property
    def passed(self) -> bool:
        return self.leading_is_one and not self.failures

    def __str__(self) -> str:
        if self.passed:
            return f"{self.index}: positive through q^-{self.order}"
        lines = [f"{self.index}: {len(self.failures)} failure(s)"]
        lines.extend(f"  {f}" for f in self.failures)
        return "\n".join(lines)


def _non_positive(coeffs: list[tuple[int, Fraction]]) -> str | None:
    for k, c in coeffs:
        if c == 0:
            continue
        if k < 1:
            return f"nonzero coefficient {c} at q^{-k}"
        if c < 0 or c.denominator != 1:
            return f"coefficient {c} at q^-{k} is not a nonnegative integer"
    return None


def positivity_report(i: CBIndex, order: int = DEFAULT_SERIES_ORDER) -> PositivityReport:
    """Expand every CB→PBW coefficient of ``i`` in q^-1 and check positivity.

    Raises:
        NotExpandable: propagated from :func:`series_expand`.
    """
    combo = cb_to_pbw(i)
    top = PBWIndex(i.m, i.a, i.b)
    leading_is_one = combo.coefficient(top) == RationalFunction.one()
    failures: list[str] = []
    series = []
    for idx, c in combo.terms:
        if idx == top:
            continue
        items = series_expand(c, order).items()
        series.append((idx, tuple(items)))
        problem = _non_positive(items)
        if problem is not None:
            failures.append(f"{idx}: {problem}")
    if failures:
        logger.debug("Positivity failed for %s: %s", i, failures)
    return PositivityReport(i, order, leading_is_one, tuple(failures), tuple(series))


# ---------------------------------------------------------------------------
# Wall
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WallCheck:
    a: int
    b: int
    cb_ef: PBWCombo
    cb_fe: PBWCombo
    pbw_ef: UdotElement
    pbw_fe: UdotElement

    @property
    def consistent(self) -> bool:
        return self.cb_ef == self.cb_fe and self.pbw_ef == self.pbw_fe


def wall_consistency(a: int, b: int) -> WallCheck:
    """Both branches of each transition at m = b - a."""
    m = b - a
    i = cb_canonicalize(a, b, m, Orientation.EF)
    w = PBWIndex(m, a, b)
    return WallCheck(
        a=a,
        b=b,
        cb_ef=cb_to_pbw(i, Orientation.EF),
        cb_fe=cb_to_pbw(i, Orientation.FE),
        pbw_ef=pbw_to_cb(w, Orientation.EF),
        pbw_fe=pbw_to_cb(w, Orientation.FE),
    )
