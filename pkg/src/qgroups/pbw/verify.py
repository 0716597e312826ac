"""Exact verification suites over configurable ranges."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cache
from typing import Any, Callable, Iterator

from qgroups.pbw.bases import (
    PBWIndex,
    ladder_matrices,
    pairing_pbw,
    pairing_via_pbw,
    pbw_to_cb,
    positivity_report,
    wall_consistency,
)
from qgroups.pbw.config import SuiteRange
from qgroups.pbw.fusion import fuse, verify_defining_limit
from qgroups.pbw.qarith import RationalFunction, UPoly, q_binomial_identity_sum, upoly_eval_u0
from qgroups.pbw.repmod import (
    TensorVector,
    WeightParam,
    act_divpow,
    act_gen,
    apply_udot,
    approx_E_step,
    approx_F_step,
    closed_action_EF,
    closed_action_FE,
    gram,
    unfuse,
    vacuum,
)
from qgroups.pbw.udot1 import CBIndex, UdotElement, canonical_indices, mul_gen, pairing

logger = logging.getLogger(__name__)

Check = Callable[[], "str | None"]
Case = tuple[dict[str, Any], Check]


@dataclass(frozen=True)
class CaseFailure:
    suite: str
    case: dict[str, Any]
    detail: str

    def to_json(self) -> dict[str, Any]:
        return {"suite": self.suite, "case": self.case, "detail": self.detail}

    def __str__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.case.items())
        return f"{self.suite}({params}): {self.detail}"


@dataclass
class SuiteResult:
    suite: str
    cases_run: int = 0
    failures: list[CaseFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> CaseFailure | None:
        return self.failures[0] if self.failures else None

    def __str__(self) -> str:
        if self.passed:
            return f"✓ {self.suite}: {self.cases_run} cases passed"
        return f"✗ {self.suite}: {len(self.failures)}/{self.cases_run} cases failed"


def _weights(r: SuiteRange) -> range:
    return range(-r.max_m, r.max_m + 1)


def _differ(label: str, left: Any, right: Any) -> str | None:
    if left == right:
        return None
    return f"{label}: {left} != {right}"


@cache
def _module_vector(x: UdotElement) -> TensorVector:
    return apply_udot(x, vacuum(WeightParam.symbolic(x.weight)))


def _module_pairing(x: UdotElement, y: UdotElement) -> RationalFunction:
    value = gram(_module_vector(x), _module_vector(y))
    assert isinstance(value, UPoly)
    return upoly_eval_u0(value)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def _inverse_cases(r: SuiteRange) -> Iterator[Case]:
    def check(a: int, b: int, m: int) -> str | None:
        c2p, p2c = ladder_matrices(a, b, m)
        if not (c2p.is_unital_triangular() and p2c.is_unital_triangular()):
            return "transition matrix is not unital triangular"
        if not p2c.matmul(c2p).is_identity():
            return "PBW->CB * CB->PBW is not the identity"
        if not c2p.matmul(p2c).is_identity():
            return "CB->PBW * PBW->CB is not the identity"
        return None

    for m in _weights(r):
        for a in range(r.max_a + 1):
            for b in range(r.max_b + 1):
                yield {"a": a, "b": b, "m": m}, lambda a=a, b=b, m=m: check(a, b, m)


def _pairing_cases(r: SuiteRange) -> Iterator[Case]:
    def check(i1: CBIndex, i2: CBIndex) -> str | None:
        x = UdotElement.basis(i1.a, i1.b, i1.m, i1.orient)
        y = UdotElement.basis(i2.a, i2.b, i2.m, i2.orient)
        closed = pairing(x, y)
        return _differ("closed vs pbw", closed, pairing_via_pbw(x, y)) or _differ(
            "closed vs module-limit", closed, _module_pairing(x, y)
        )

    for m in _weights(r):
        indices = list(canonical_indices(r.max_a, r.max_b, m))
        for i1 in indices:
            for i2 in indices:
                key = {"a": i1.a, "b": i1.b, "a2": i2.a, "b2": i2.b, "m": m}
                yield key, lambda i1=i1, i2=i2: check(i1, i2)


def _orthogonality_cases(r: SuiteRange) -> Iterator[Case]:
    def check(w1: PBWIndex, w2: PBWIndex) -> str | None:
        return _differ(
            "module-limit vs norm",
            _module_pairing(pbw_to_cb(w1), pbw_to_cb(w2)),
            pairing_pbw(w1, w2),
        )

    for m in _weights(r):
        ws = [PBWIndex(m, a, b) for a in range(r.max_a + 1) for b in range(r.max_b + 1)]
        for w1 in ws:
            for w2 in ws:
                key = {"a": w1.a, "b": w1.b, "a2": w2.a, "b2": w2.b, "m": m}
                yield key, lambda w1=w1, w2=w2: check(w1, w2)


def _limits_cases(r: SuiteRange) -> Iterator[Case]:
    def check(a: int, b: int, m: int) -> str | None:
        if not verify_defining_limit(a, b, m):
            return "remainder is not asymptotically zero"
        return None

    for m in _weights(r):
        for a in range(r.max_a + 1):
            for b in range(r.max_b + 1):
                yield {"a": a, "b": b, "m": m}, lambda a=a, b=b, m=m: check(a, b, m)


def _fusion_cases(r: SuiteRange) -> Iterator[Case]:
    def check(a: int, b: int, m: int) -> str | None:
        value = fuse(a, b, m).value
        return _differ("fuse vs pbw_to_cb", value, pbw_to_cb(PBWIndex(m, a, b))) or _differ(
            "unfuse", unfuse(value), [(a, b, RationalFunction.one())]
        )

    for m in _weights(r):
        for a in range(r.max_a + 1):
            for b in range(r.max_b + 1):
                yield {"a": a, "b": b, "m": m}, lambda a=a, b=b, m=m: check(a, b, m)


def _closed_action_cases(r: SuiteRange) -> Iterator[Case]:
    def check(a: int, b: int, m: int) -> str | None:
        param = WeightParam.symbolic(m)
        v0 = vacuum(param)
        ef = closed_action_EF(a, b, v0)
        fe = closed_action_FE(a, b, v0)
        problem = (
            _differ("EF closed vs iterated", ef, act_divpow("E", a, act_divpow("F", b, v0)))
            or _differ("FE closed vs iterated", fe, act_divpow("F", b, act_divpow("E", a, v0)))
            or _differ("E step", approx_E_step(a, b, param), act_gen("E", TensorVector.pure(param, a, b)))
            or _differ("F step", approx_F_step(a, b, param), act_gen("F", TensorVector.pure(param, a, b)))
        )
        if problem:
            return problem
        for p in r.p_values:
            if p < max(0, -m):
                continue
            w0 = vacuum(WeightParam.concrete(p, m))
            problem = _differ(
                f"EF specialized at p={p}",
                ef.specialize(p),
                act_divpow("E", a, act_divpow("F", b, w0)),
            ) or _differ(
                f"FE specialized at p={p}",
                fe.specialize(p),
                act_divpow("F", b, act_divpow("E", a, w0)),
            )
            if problem:
                return problem
        return None

    for m in _weights(r):
        for a in range(r.max_a + 1):
            for b in range(r.max_b + 1):
                yield {"a": a, "b": b, "m": m}, lambda a=a, b=b, m=m: check(a, b, m)


def _positivity_cases(r: SuiteRange) -> Iterator[Case]:
    def check(i: CBIndex) -> str | None:
        report = positivity_report(i, r.order)
        if report.passed:
            return None
        if not report.leading_is_one:
            return "leading coefficient is not 1"
        return "; ".join(report.failures)

    for m in _weights(r):
        for i in canonical_indices(r.max_a, r.max_b, m):
            yield {"a": i.a, "b": i.b, "m": m, "orient": i.orient.value}, lambda i=i: check(i)


def _homomorphism_cases(r: SuiteRange) -> Iterator[Case]:
    def check(i: CBIndex, g: str, p: int) -> str | None:
        x = UdotElement.basis(i.a, i.b, i.m, i.orient)
        v0 = vacuum(WeightParam.concrete(p, i.m))
        return _differ(
            f"{g}*x on module",
            apply_udot(mul_gen(g, x), v0),  # type: ignore[arg-type]
            act_gen(g, apply_udot(x, v0)),  # type: ignore[arg-type]
        )

    for m in _weights(r):
        for i in canonical_indices(r.max_a, r.max_b, m):
            for g in ("E", "F"):
                for p in r.p_values:
                    if p < max(0, -m):
                        continue
                    key = {"a": i.a, "b": i.b, "m": m, "orient": i.orient.value, "g": g, "p": p}
                    yield key, lambda i=i, g=g, p=p: check(i, g, p)


def _wall_cases(r: SuiteRange) -> Iterator[Case]:
    def check(a: int, b: int) -> str | None:
        wall = wall_consistency(a, b)
        return _differ("CB->PBW branches", wall.cb_ef, wall.cb_fe) or _differ(
            "PBW->CB branches", wall.pbw_ef, wall.pbw_fe
        )

    for a in range(r.max_a + 1):
        for b in range(r.max_b + 1):
            yield {"a": a, "b": b, "m": b - a}, lambda a=a, b=b: check(a, b)


def _qbinom_cases(r: SuiteRange) -> Iterator[Case]:
    def check(k: int) -> str | None:
        total = q_binomial_identity_sum(k)
        return None if total.is_zero() else f"sum is {total}"

    for k in range(1, r.max_k + 1):
        yield {"k": k}, lambda k=k: check(k)


SUITES: dict[str, Callable[[SuiteRange], Iterator[Case]]] = {
    "inverse": _inverse_cases,
    "orthogonality": _orthogonality_cases,
    "pairing": _pairing_cases,
    "limits": _limits_cases,
    "fusion": _fusion_cases,
    "closed-action": _closed_action_cases,
    "positivity": _positivity_cases,
    "homomorphism": _homomorphism_cases,
    "wall": _wall_cases,
    "qbinom-identity": _qbinom_cases,
}


def _run_case(check: Check) -> str | None:
    try:
        return check()
    except Exception as exc:  # noqa: BLE001
        return f"{type(exc).__name__}: {exc}"


def run_suite(name: str, ranges: SuiteRange, threads: int = 1) -> SuiteResult:
    """Run every case of a suite; failures keep the enumeration order.

    Raises:
        ValueError: if the suite name is unknown.
    """
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    cases = list(SUITES[name](ranges))
    logger.info("Running suite %s: %d cases on %d thread(s)", name, len(cases), threads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(_run_case, [check for _, check in cases]))
    else:
        outcomes = [_run_case(check) for _, check in cases]
    result = SuiteResult(name, cases_run=len(cases))
    for (key, _), detail in zip(cases, outcomes):
        if detail is not None:
            result.failures.append(CaseFailure(name, key, detail))
    logger.info("%s", result)
    return result
