"""E1 page of the Morse-Bott spectral sequence and what can be read off it.

Everything is indexed by total degree. A differential lowers total degree by
one and moves to a strictly lower column, so a generator is safe when nothing
one degree below sits to its left and nothing one degree above sits to its
right. That test is sufficient, not necessary: when it fails we report
intervals instead of guessing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .graded import BallPair, GradedDims, homology, shift_degrees
from .models import ChordSystem, IndexUnavailable
from .rational import fmt


class InsufficientData(ValueError):
    """Too few filtered points to say anything about growth."""


@dataclass(frozen=True)
class Generator:
    degree: int
    survives: bool | None = None  # None until degeneration_check has run


@dataclass(frozen=True)
class Column:
    p: int
    action: Fraction
    graded: GradedDims
    generators: tuple[Generator, ...]

    @classmethod
    def of(cls, p: int, action: Fraction | int, graded: GradedDims) -> Column:
        gens = tuple(Generator(d) for d, dim in graded.items() for _ in range(dim))
        return cls(p, Fraction(action), graded, gens)

    def degrees(self) -> frozenset[int]:
        return frozenset(self.graded)

    def survivors(self) -> int:
        return sum(1 for g in self.generators if g.survives)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "action_pi": fmt(self.action),
            "generators": [{"degree": g.degree, "survives": bool(g.survives)} for g in self.generators],
        }


@dataclass(frozen=True)
class SpectralPage:
    """Columns inside the action window plus lookahead columns past it.

    The lookahead (``tail``) only feeds the survival test of in-window
    generators; it is never reported as part of the page.
    """

    columns: tuple[Column, ...]
    tail: tuple[Column, ...] = ()
    label: str = "page"
    n: int | None = None
    max_action: Fraction | None = None
    column_gap: Fraction | None = None
    unit_index: int | None = None
    component_offsets: GradedDims | None = None  # homology of one component, shifted so the top sits at 0
    checked: bool = False
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        actions = [c.action for c in self.columns[1:] + self.tail]
        if any(b <= a for a, b in zip(actions, actions[1:])):
            raise ValueError("column actions must strictly increase")

    @classmethod
    def from_degrees(cls, columns: Sequence[Iterable[int]], label: str = "fabricated") -> SpectralPage:
        """Page with one generator per listed degree; column p sits at action p."""
        cols = tuple(Column.of(p, p, GradedDims({d: 1 for d in degs})) for p, degs in enumerate(columns))
        return cls(cols, label=label)

    @property
    def periodic(self) -> bool:
        return self.unit_index is not None and self.column_gap is not None

    @property
    def fully_degenerate(self) -> bool:
        return self.checked and all(g.survives for c in self.columns for g in c.generators)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "max_action_pi": None if self.max_action is None else fmt(self.max_action),
            "columns": [c.to_json() for c in self.columns],
            "degenerate_at_e1": self.fully_degenerate,
        }


def _column_for(system: ChordSystem, N: int) -> Column:
    n = system.n
    graded = shift_degrees(homology(system.component_topology), system.index_of_iterate(N) - n + 1)
    return Column.of(N, system.column_action(N), graded)


def assemble_e1(system: ChordSystem, max_action: Fraction | int, n: int | None = None) -> SpectralPage:
    """E1 page for all admitted iterates with action at most ``max_action`` (units of pi)."""
    if not system.index_data_available:
        raise IndexUnavailable(f"{system.label}: index data unavailable, cannot assemble the E1 page")
    max_action = Fraction(max_action)
    if max_action <= 0:
        raise ValueError("max_action must be positive")
    n = system.n if n is None else n
    if n != system.n:
        raise ValueError(f"dimension mismatch: system has n={system.n}, got n={n}")
    zero = Column.of(0, 0, shift_degrees(homology(BallPair(n)), -n))
    columns = [zero]
    N = 1
    while system.column_action(N) <= max_action:
        columns.append(_column_for(system, N))
        N += 1

    # lookahead: later columns that could still hit an in-window generator
    mu = system.unit_index
    lo = min(min(c.graded) for c in columns)
    hi = max(max(c.graded) for c in columns)
    tail = []
    while True:
        col = _column_for(system, N)
        if mu > 0 and min(col.graded) > hi + 1:
            break
        if mu < 0 and max(col.graded) < lo + 1:
            break
        tail.append(col)
        N += 1
        if mu == 0:
            break

    offsets = shift_degrees(homology(system.component_topology), -(n - 1))
    return SpectralPage(
        tuple(columns), tuple(tail), label=system.label, n=n, max_action=max_action,
        column_gap=system.column_gap, unit_index=mu, component_offsets=offsets,
    )


def _survives(m: int, p: int, cols: Sequence[Column]) -> bool:
    left = any(m - 1 in c.graded for c in cols if c.p < p)
    right = any(m + 1 in c.graded for c in cols if c.p > p)
    return not (left or right)


def degeneration_check(page: SpectralPage) -> SpectralPage:
    """Return the page with a survival flag on every in-window generator."""
    everything = page.columns + page.tail
    cols = []
    for col in page.columns:
        flags = {m: _survives(m, col.p, everything) for m in col.graded}
        cols.append(replace(col, generators=tuple(Generator(g.degree, flags[g.degree]) for g in col.generators)))
    return replace(page, columns=tuple(cols), checked=True)


def stationary_survivors(page: SpectralPage) -> int:
    """Surviving generators per column far out, where column 0 no longer matters.

    Only the index differences between columns enter, so the count is the
    same for every column beyond the first few.
    """
    if not page.periodic or page.component_offsets is None:
        raise InsufficientData("page has no periodic column structure")
    mu = page.unit_index
    offsets = list(page.component_offsets)
    reach = (max(offsets) - min(offsets) + 2) // abs(mu) + 1 if mu else 1
    count = 0
    for d, dim in page.component_offsets.items():
        # column N - j holds e + mu (N - j); column N + j holds e + mu (N + j)
        hit = any(e - mu * j == d - 1 or e + mu * j == d + 1 for j in range(1, reach + 1) for e in offsets)
        if not hit:
            count += dim
    return count


# --- reports ---------------------------------------------------------------------


@dataclass(frozen=True)
class WfhReport:
    label: str
    n: int | None
    wfh: GradedDims  # surviving generators
    wfh_upper: GradedDims  # every generator in the window
    determined: dict[int, bool]
    filtered_dims: tuple[tuple[Fraction, int, int], ...]
    fully_degenerate: bool
    periodic: bool
    column_gap: Fraction | None
    max_action: Fraction | None
    stationary_survivors: int | None
    column_size: int | None  # generators per chord column
    column_count: int
    warnings: tuple[str, ...] = ()

    @property
    def undetermined_degrees(self) -> tuple[int, ...]:
        return tuple(d for d, ok in sorted(self.determined.items()) if not ok)

    @property
    def lower_total(self) -> int:
        return self.wfh.total

    def to_json(self, growth: GrowthEstimate | None = None) -> dict:
        out = {
            "label": self.label,
            "wfh": self.wfh.to_json(),
            "wfh_upper": self.wfh_upper.to_json(),
            "undetermined_degrees": list(self.undetermined_degrees),
            "filtered": [[fmt(c), lo, up] for c, lo, up in self.filtered_dims],
            "degenerate_at_e1": self.fully_degenerate,
            "max_action_pi": None if self.max_action is None else fmt(self.max_action),
            "warnings": list(self.warnings),
        }
        if growth is not None:
            out["slope_per_pi"] = fmt(growth.slope)
            out["slope_upper_per_pi"] = fmt(growth.slope_upper)
            out["empirical_slope_per_pi"] = fmt(growth.empirical)
            out["warnings"] = list(self.warnings) + [w for w in growth.warnings if w not in self.warnings]
        return out


def extract_wfh(page: SpectralPage) -> WfhReport:
    if not page.checked:
        page = degeneration_check(page)
    lower: dict[int, int] = {}
    upper: dict[int, int] = {}
    determined: dict[int, bool] = {}
    for col in page.columns:
        for g in col.generators:
            upper[g.degree] = upper.get(g.degree, 0) + 1
            if g.survives:
                lower[g.degree] = lower.get(g.degree, 0) + 1
            determined[g.degree] = determined.get(g.degree, True) and bool(g.survives)

    cutoffs = sorted({c.action for c in page.columns[1:]} | ({page.max_action} if page.max_action else set()))
    cutoffs = [c for c in cutoffs if c > 0]
    filtered = []
    for c in cutoffs:
        below = [col for col in page.columns if col.action < c]
        filtered.append((c, sum(col.survivors() for col in below), sum(len(col.generators) for col in below)))

    warnings = []
    if len(page.columns) == 1:
        warnings.append("window too small: no admitted chord columns below max_action")
    if not page.fully_degenerate:
        warnings.append("some generators undetermined by degree gaps; dimensions are intervals")
    return WfhReport(
        label=page.label,
        n=page.n,
        wfh=GradedDims(lower),
        wfh_upper=GradedDims(upper),
        determined=dict(sorted(determined.items())),
        filtered_dims=tuple(filtered),
        fully_degenerate=page.fully_degenerate,
        periodic=page.periodic,
        column_gap=page.column_gap,
        max_action=page.max_action,
        stationary_survivors=stationary_survivors(page) if page.periodic else None,
        column_size=page.component_offsets.total if page.component_offsets is not None else None,
        column_count=len(page.columns) - 1,
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class GrowthEstimate:
    slope: Fraction  # generators per pi of action, from the periodic structure
    slope_upper: Fraction
    empirical: Fraction  # min of lower(c)/c over the upper half of the window
    warnings: tuple[str, ...] = ()


def empirical_slope(report: WfhReport) -> Fraction:
    """min of lower(c)/c over cutoffs in the upper half of the window; 0 with no columns."""
    if report.column_count == 0 or report.max_action is None:
        return Fraction(0)
    top = report.max_action
    return min(Fraction(lo) / c for c, lo, _ in report.filtered_dims if c > top / 2)


def growth_slope(report: WfhReport) -> GrowthEstimate:
    """Asymptotic growth of the filtered dimension, per unit pi of action."""
    if report.column_count == 0:
        return GrowthEstimate(Fraction(0), Fraction(0), Fraction(0),
                              ("window too small: no admitted chord columns below max_action",))
    if len(report.filtered_dims) < 3:
        raise InsufficientData(
            f"{report.label}: need at least 3 filtered points, have {len(report.filtered_dims)}; raise max_action")
    if not report.periodic:
        raise InsufficientData(f"{report.label}: no periodic column structure to extrapolate from")
    gap = report.column_gap
    empirical = empirical_slope(report)
    per_column = report.stationary_survivors
    upper_per_column = report.column_size
    warnings = ()
    if per_column < upper_per_column:
        warnings = ("slope is a lower bound: some generators are undetermined",)
    return GrowthEstimate(Fraction(per_column) / gap, Fraction(upper_per_column) / gap, empirical, warnings)


def page_dumps(page: SpectralPage, report: WfhReport | None = None, growth: GrowthEstimate | None = None) -> str:
    data = page.to_json()
    if report is not None:
        data.update(report.to_json(growth))
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
