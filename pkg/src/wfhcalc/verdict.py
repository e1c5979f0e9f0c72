"""Theorem hypotheses as checkable gates.

A verdict is a conditional statement: the analytic theorems do the work, this
module only checks their hypotheses against computed data and records how
each one was decided.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .graded import Ball
from .mbss import InsufficientData, WfhReport, growth_slope
from .models import (
    AkMilnor,
    CrossCotangent,
    Homogeneous,
    HypersurfaceComplement,
    ModelError,
    ModelFamily,
    ProjectiveComplement,
    build,
    complement_mu,
    real_lagrangian_components,
)
from .rational import fmt

SLOW_VOLUME = "s_n(phi) >= 1 for all [phi] = [tau^k], k != 0"
INFINITE_ORDER = "[tau] has infinite order"


@dataclass(frozen=True)
class Conclusion:
    applies: bool
    statement: str

    def to_json(self) -> dict:
        return {"applies": self.applies, "conclusion": self.statement}


@dataclass(frozen=True)
class TraceEntry:
    hypothesis: str
    status: str  # holds | fails | unknown
    source: str

    def to_json(self) -> list:
        return [self.hypothesis, self.status, self.source]


@dataclass(frozen=True)
class GateResult:
    name: str
    condition: str
    applies: bool
    computed: bool
    agreement: str  # agree | computed route finer | disagree

    def to_json(self) -> dict:
        return {"name": self.name, "condition": self.condition, "gate_applies": self.applies,
                "computed_applies": self.computed, "agreement": self.agreement}


@dataclass(frozen=True)
class FiniteOrderStatement:
    forced_infinite: bool
    lower_total: int
    bound: int
    statement: str

    def to_json(self) -> dict:
        return {"forced_infinite": self.forced_infinite, "lower_total": self.lower_total,
                "bound": self.bound, "statement": self.statement}


@dataclass(frozen=True)
class Verdict:
    label: str
    status: str  # conclusive | inconclusive
    theorem_a: Conclusion
    theorem_b: Conclusion
    finite_order_bound: FiniteOrderStatement
    hypothesis_trace: tuple[TraceEntry, ...]
    gates: tuple[GateResult, ...]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "status": self.status,
            "theorem_a": self.theorem_a.to_json(),
            "theorem_b": self.theorem_b.to_json(),
            "finite_order_bound": self.finite_order_bound.to_json(),
            "hypothesis_trace": [t.to_json() for t in self.hypothesis_trace],
            "gates": [g.to_json() for g in self.gates],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def finite_order_consistency(report: WfhReport, n: int | None = None) -> FiniteOrderStatement:
    """Contrapositive of the finite-order bound dim WFH <= dim H_*(B^n, S^(n-1)) = 1."""
    del n  # the relative homology of a ball pair is one-dimensional in every dimension
    bound = 1
    lower = report.lower_total
    if lower > bound:
        return FiniteOrderStatement(True, lower, bound,
                                    f"infinite order forced: determined dimension >= {lower} exceeds {bound}, "
                                    "so tau cannot have finite order")
    return FiniteOrderStatement(False, lower, bound, "no obstruction from this test")


def certified_survival(report: WfhReport) -> bool:
    """Every generator survives, in the window and in every later column."""
    return (report.fully_degenerate and report.periodic
            and report.stationary_survivors is not None
            and report.stationary_survivors == report.column_size)


def _gate(name: str, condition: str, applies: bool, computed: bool) -> GateResult:
    if applies == computed:
        agreement = "agree"
    elif computed:
        agreement = "computed route finer"
    else:
        agreement = "disagree"
    return GateResult(name, condition, applies, computed, agreement)


def parameter_gates(model: ModelFamily | None, computed: bool) -> tuple[GateResult, ...]:
    """Closed-form degeneration criteria for the model, compared with the computed route."""
    match model:
        case AkMilnor(n=n, k=k):
            return (_ak_gate(n, k, computed),)
        case CrossCotangent(base="sphere", n=n) if n >= 3:
            return (_ak_gate(n, 1, computed),)
        case ProjectiveComplement(n=n, k=k):
            mu = complement_mu(model)
            if k % 2 == 1:
                cor = _gate("degree gate", f"k odd and k > 2n-1 = {2 * n - 1}", k > 2 * n - 1, computed)
            else:
                cor = _gate("degree gate", f"k even and k > floor(3n/2) = {3 * n // 2}", k > 3 * n // 2, computed)
            return cor, _index_gate(mu, n, computed)
        case HypersurfaceComplement(n=n, d=d):
            mu = complement_mu(model)
            if d % 2 == 1:
                cor = _gate("degree gate", f"d odd and d > 2n-2 = {2 * n - 2}", d > 2 * n - 2, computed)
            else:
                cor = _gate("degree gate", f"d even and d > floor(3n/2)-1 = {3 * n // 2 - 1}",
                            d > 3 * n // 2 - 1, computed)
            return cor, _index_gate(mu, n, computed)
        case Homogeneous(n=n, k=k):
            mu = n + 1 - k
            return (_index_gate(mu, n, computed),
                    _gate("vanishing index", f"mu = {mu} = 0", mu == 0, computed))
    return ()


def _ak_gate(n: int, k: int, computed: bool) -> GateResult:
    q_top = (n - 2) * (k + 1) + 1
    q_bot = 2 * (n - 2) * (k + 1) - n + 3
    return _gate("gap gate", f"q_top = {q_top} < q_bot = {q_bot}", q_top < q_bot, computed)


def _index_gate(mu: int, n: int, computed: bool) -> GateResult:
    return _gate("index gate", f"mu = {mu} > n = {n} or mu < 2-n = {2 - n}", mu > n or mu < 2 - n, computed)


def _ball_component(model: ModelFamily | None, n: int | None) -> TraceEntry:
    if model is None:
        return TraceEntry("admissible Lagrangian ball", "unknown", "no model given")
    if isinstance(model, CrossCotangent):
        return TraceEntry("admissible Lagrangian ball", "holds", "cotangent fiber is a ball")
    try:
        count, parts = real_lagrangian_components(model)
    except ModelError as exc:
        return TraceEntry("admissible Lagrangian ball", "unknown", str(exc))
    ok = any(p == Ball(n) for p in parts)
    return TraceEntry("admissible Lagrangian ball", "holds" if ok else "fails",
                      f"real Lagrangian has {count} component(s): " + ", ".join(map(str, parts)))


def evaluate(model: ModelFamily | None, report: WfhReport) -> Verdict:
    """Check the hypotheses of the growth and infinite-order theorems against ``report``."""
    trace: list[TraceEntry] = []
    if model is not None:
        system = build(model)
        h1c = system.h1c_vanishes
        trace.append(TraceEntry("H^1_c(W;R) = 0", "holds" if h1c else "fails", "model topology"))
    else:
        h1c = False
        trace.append(TraceEntry("H^1_c(W;R) = 0", "unknown", "no model given"))
    n = report.n if report.n is not None else getattr(model, "n", None)

    ball = _ball_component(model, n)
    trace.append(ball)

    survival = certified_survival(report)
    if survival:
        trace.append(TraceEntry("E1 page degenerates", "holds", "degree gaps, window and periodic tail"))
    elif not report.periodic:
        trace.append(TraceEntry("E1 page degenerates", "unknown", "no periodic column structure to extend"))
    else:
        where = ", ".join(map(str, report.undetermined_degrees)) or "beyond the window"
        trace.append(TraceEntry("E1 page degenerates", "unknown",
                                f"degree gaps leave generators undetermined ({where})"))

    slope = Fraction(0)
    if survival:
        try:
            growth = growth_slope(report)
            slope = growth.slope
            status = "holds" if slope > 0 and report.column_count > 0 else "unknown"
            detail = f"slope {fmt(slope)} per pi from periodic columns"
            if growth.warnings:
                detail += "; " + "; ".join(growth.warnings)
        except InsufficientData as exc:
            status, detail = "unknown", str(exc)
        trace.append(TraceEntry("linear growth", status, detail))
    else:
        trace.append(TraceEntry("linear growth", "unknown", "requires certified degeneration"))
    linear = trace[-1].status == "holds"

    infinite = survival and (report.stationary_survivors or 0) > 0
    trace.append(TraceEntry("WFH infinite dimensional", "holds" if infinite else "unknown",
                            "surviving generators in every periodic column" if infinite
                            else "not certified from the computed page"))

    a = h1c and ball.status == "holds" and linear
    b = h1c and infinite
    reason_a = _first_gap(trace, ("H^1_c(W;R) = 0", "admissible Lagrangian ball", "linear growth"))
    reason_b = _first_gap(trace, ("H^1_c(W;R) = 0", "WFH infinite dimensional"))
    gates = parameter_gates(model, survival)
    return Verdict(
        label=report.label,
        status="conclusive" if report.fully_degenerate else "inconclusive",
        theorem_a=Conclusion(True, SLOW_VOLUME) if a else Conclusion(False, f"not applicable: {reason_a}"),
        theorem_b=Conclusion(True, INFINITE_ORDER) if b else Conclusion(False, f"not applicable: {reason_b}"),
        finite_order_bound=finite_order_consistency(report, n),
        hypothesis_trace=tuple(trace),
        gates=gates,
    )


def _first_gap(trace: list[TraceEntry], names: tuple[str, ...]) -> str:
    for t in trace:
        if t.hypothesis in names and t.status != "holds":
            return f"{t.hypothesis} {t.status}"
    return "all hypotheses hold"
