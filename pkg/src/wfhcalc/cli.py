"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 the model refuses the query.
Errors are written to stderr as one JSON object with a ``code`` field.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .graded import space_to_json
from .mbss import InsufficientData, assemble_e1, degeneration_check, extract_wfh, growth_slope
from .models import (
    AkMilnor,
    CrossCotangent,
    IndexUnavailable,
    ModelError,
    PeriodConvention,
    build,
    chord_spectrum_from_flow,
    morse_bott_validity,
    parse_model,
    real_lagrangian_components,
    rs_chord_index,
)
from .rational import fmt, parse_pi
from .render import ascii_page, growth_figure, page_figure
from .rsindex import (
    Boundary,
    RotationPath,
    UnresolvedCrossings,
    half_chord_index,
    parse_blocks,
    rs_index,
    rs_index_numeric,
    suggested_samples,
    weighted_homogeneous_orbit_index,
)
from .verdict import evaluate

EXIT_OK, EXIT_USAGE, EXIT_REFUSED = 0, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _max_action(text: str) -> Fraction:
    value = parse_pi(text)
    if value <= 0:
        raise ValueError("--max-action must be positive")
    return value


def _weights(text: str) -> tuple[int, ...]:
    try:
        weights = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ValueError(f"weights must be comma-separated positive integers, got {text!r}") from None
    if not weights or any(a < 1 for a in weights):
        raise ValueError(f"weights must be comma-separated positive integers, got {text!r}")
    return weights


def _require_format(args, allowed: Sequence[str]) -> None:
    if args.format not in allowed:
        raise UsageError(f"{args.command} does not support --format {args.format} (use {'|'.join(allowed)})")


def _pipeline(args):
    model = parse_model(args.model)
    system = build(model, args.period_convention)
    page = degeneration_check(assemble_e1(system, args.max_action))
    return model, system, page, extract_wfh(page)


# --- subcommands -------------------------------------------------------------------


def cmd_model(args) -> str:
    _require_format(args, ("json", "ascii"))
    model = parse_model(args.model)
    system = build(model, args.period_convention)
    data = system.to_json()
    try:
        count, parts = real_lagrangian_components(model)
        data["real_lagrangian"] = {"count": count, "components": [space_to_json(p) for p in parts]}
    except ModelError as exc:
        data["real_lagrangian"] = {"note": str(exc)}
    data["morse_bott_validity"] = [c.to_json() for c in morse_bott_validity(system)]
    if args.format == "json":
        return dumps(data)
    lines = [f"model            {system.label}",
             f"chord period     {fmt(system.minimal_chord_period)}pi ({system.convention.value})",
             f"orbit period     {fmt(system.orbit_period)}pi",
             f"component        {system.component_topology}",
             f"contractible     iterates divisible by {system.contractible_iff_divisible_by}",
             f"index            {'N*' + str(system.unit_index) if system.index_data_available else 'unavailable'}"]
    rl = data["real_lagrangian"]
    lines.append("real Lagrangian  " + (f"{rl['count']} component(s)" if "count" in rl else rl["note"]))
    for c in morse_bott_validity(system):
        lines.append(f"check            {c.name}: {'pass' if c.passed else 'FAIL'} ({c.detail})")
    return "\n".join(lines) + "\n"


def cmd_spectrum(args) -> str:
    _require_format(args, ("json", "ascii"))
    if args.weights:
        weights = _weights(args.weights)
        data = {"weights": list(weights),
                "flow_derived_pi": fmt(chord_spectrum_from_flow(weights, PeriodConvention.FLOW_DERIVED)),
                "paper_pi": fmt(chord_spectrum_from_flow(weights, PeriodConvention.PAPER)),
                "selected_pi": fmt(chord_spectrum_from_flow(weights, args.period_convention))}
    elif args.model:
        system = build(parse_model(args.model), args.period_convention)
        last = int(args.max_action // system.minimal_chord_period)
        data = {"label": system.label,
                "convention": system.convention.value,
                "minimal_chord_period_pi": fmt(system.minimal_chord_period),
                "chords": [{"l": l, "action_pi": fmt(l * system.minimal_chord_period),
                            "contractible": system.is_admitted(l)} for l in range(1, last + 1)]}
        if system.paper_period is not None:
            data["paper_period_pi"] = fmt(system.paper_period)
    else:
        raise UsageError("spectrum needs a model preset or --weights")
    if args.format == "json":
        return dumps(data)
    if "weights" in data:
        return (f"weights {','.join(map(str, data['weights']))}: flow-derived {data['flow_derived_pi']}pi, "
                f"paper {data['paper_pi']}pi\n")
    rows = [f"{c['l']:>4}  {c['action_pi']:>8}pi  {'contractible' if c['contractible'] else '-'}"
            for c in data["chords"]]
    return f"{data['label']}  T0 = {data['minimal_chord_period_pi']}pi\n" + "\n".join(rows) + "\n"


def cmd_index(args) -> str:
    _require_format(args, ("json", "ascii"))
    if args.weights:
        weights = _weights(args.weights)
        data = {"weights": list(weights), "cover": args.cover,
                "orbit_index": str(weighted_homogeneous_orbit_index(weights, args.cover)),
                "half_chord_index": str(half_chord_index(weights, args.cover))}
        if args.format == "json":
            return dumps(data)
        return f"orbit {data['orbit_index']}  half-chord {data['half_chord_index']}\n"
    if not args.model:
        raise UsageError("index needs a model preset or --weights")
    model = parse_model(args.model)
    system = build(model, args.period_convention)
    rows = []
    for N in range(1, args.iterates + 1):
        row = {"N": N, "action_pi": fmt(system.column_action(N)), "index": system.index_of_iterate(N)}
        try:
            row["crossing_count"] = rs_chord_index(model if not isinstance(model, CrossCotangent)
                                                   else AkMilnor(model.n, 1), N)
        except IndexUnavailable:
            pass
        rows.append(row)
    data = {"label": system.label, "iterates": rows}
    if args.format == "json":
        return dumps(data)
    return "".join(f"N={r['N']:<3} action {r['action_pi']}pi  index {r['index']}"
                   + (f"  (crossing count {r['crossing_count']})" if "crossing_count" in r else "") + "\n"
                   for r in rows)


def cmd_rs_index(args) -> str:
    _require_format(args, ("json", "ascii"))
    path = RotationPath(parse_blocks(args.blocks), parse_pi(args.duration), Boundary.parse(args.type),
                        Fraction(args.start) if args.start else Fraction(0))
    value = rs_index(path)
    data = {"path": path.describe(), "index": str(value)}
    if args.numeric:
        samples = args.samples or suggested_samples(path)
        data["numeric_index"] = str(rs_index_numeric(path, samples, seed=args.seed))
        data["numeric_samples"] = samples
    if args.format == "json":
        return dumps(data)
    out = f"{value}\n"
    if args.numeric:
        out += f"numeric oracle: {data['numeric_index']} ({samples} samples)\n"
    return out


def cmd_ss_page(args) -> str | bytes:
    _require_format(args, ("json", "ascii", "svg"))
    _, _, page, _ = _pipeline(args)
    if args.format == "json":
        return dumps(page.to_json())
    if args.format == "svg":
        return page_figure(page, "svg")
    return ascii_page(page)


def _growth_or_none(report):
    try:
        return growth_slope(report)
    except InsufficientData:
        return None


def cmd_wfh(args) -> str:
    _require_format(args, ("json", "ascii"))
    _, _, _, report = _pipeline(args)
    growth = _growth_or_none(report)
    if args.format == "json":
        return dumps(report.to_json(growth))
    lines = [f"{report.label}  up to action {fmt(report.max_action)}pi"]
    for d in sorted(set(report.wfh_upper)):
        lo, up = report.wfh.dim(d), report.wfh_upper.dim(d)
        lines.append(f"  degree {d:>5}: {lo}" if lo == up else f"  degree {d:>5}: [{lo}, {up}]")
    lines.extend(f"  warning: {w}" for w in report.warnings)
    return "\n".join(lines) + "\n"


def cmd_growth(args) -> str | bytes:
    _require_format(args, ("json", "ascii", "svg"))
    _, _, _, report = _pipeline(args)
    growth = growth_slope(report)
    if args.format == "svg":
        return growth_figure(report, growth.slope, "svg")
    data = {"label": report.label, "slope_per_pi": fmt(growth.slope),
            "slope_upper_per_pi": fmt(growth.slope_upper), "empirical_slope_per_pi": fmt(growth.empirical),
            "column_gap_pi": fmt(report.column_gap), "basis": "periodic column structure",
            "filtered": [[fmt(c), lo, up] for c, lo, up in report.filtered_dims],
            "warnings": list(growth.warnings)}
    if args.format == "json":
        return dumps(data)
    lines = [f"{report.label}: slope {data['slope_per_pi']} per pi (empirical {data['empirical_slope_per_pi']})"]
    lines += [f"  c < {c}pi: [{lo}, {up}]" for c, lo, up in data["filtered"]]
    lines += [f"  warning: {w}" for w in growth.warnings]
    return "\n".join(lines) + "\n"


def cmd_verdict(args) -> str:
    _require_format(args, ("json", "ascii"))
    model, _, _, report = _pipeline(args)
    v = evaluate(model, report)
    if args.format == "json":
        return v.dumps()
    w = max(len(t.hypothesis) for t in v.hypothesis_trace)
    lines = [f"{v.label}  ({v.status})",
             f"  growth theorem:       {'applies: ' if v.theorem_a.applies else ''}{v.theorem_a.statement}",
             f"  infinite-order:       {'applies: ' if v.theorem_b.applies else ''}{v.theorem_b.statement}",
             f"  finite-order test:    {v.finite_order_bound.statement}", "", "  hypothesis trace:"]
    lines += [f"    {t.hypothesis:<{w}}  {t.status:<8} {t.source}" for t in v.hypothesis_trace]
    if v.gates:
        lines += ["", "  parameter gates:"]
        lines += [f"    {g.name:<16} {'yes' if g.applies else 'no ':<4} {g.condition}  [{g.agreement}]"
                  for g in v.gates]
    return "\n".join(lines) + "\n"


def cmd_report(args) -> str:
    model, system, page, report = _pipeline(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    growth = _growth_or_none(report)
    v = evaluate(model, report)
    bundle = {"model": system.to_json(), "page": page.to_json(), "wfh": report.to_json(growth),
              "verdict": v.to_json()}
    written = {"report.json": dumps(bundle).encode(), "page.txt": ascii_page(page).encode(),
               "page.svg": page_figure(page, "svg"), "page.png": page_figure(page, "png")}
    if growth is not None:
        written["growth.svg"] = growth_figure(report, growth.slope, "svg")
    for name, data in written.items():
        (out / name).write_bytes(data)
    return dumps({"out": str(out), "files": sorted(written)})


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "ascii", "svg"), default="json")
    common.add_argument("--max-action", type=_max_action, default=Fraction(40), metavar="Xpi",
                        help="action window as a multiple of pi, e.g. 20pi (default 40pi)")
    common.add_argument("--period-convention", type=PeriodConvention.parse, default=PeriodConvention.FLOW_DERIVED,
                        metavar="{paper,flow-derived}")
    common.add_argument("--seed", type=int, default=None, help="jitter seed for the numeric oracle")

    parser = _Parser(prog="wfhcalc", description="Chord indices, E1 pages and growth for periodic Reeb flows.")
    parser.add_argument("--version", action="version", version=f"wfhcalc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text, model="required"):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if model == "required":
            p.add_argument("model", help="preset such as ak:n=3,k=2")
        elif model == "optional":
            p.add_argument("model", nargs="?", help="preset such as ak:n=3,k=2")
        p.set_defaults(func=fn)
        return p

    add("model", cmd_model, "chord system of a model")
    p = add("spectrum", cmd_spectrum, "chord spectrum", model="optional")
    p.add_argument("--weights", help="comma-separated weights, e.g. 3,2,2,2")
    p = add("index", cmd_index, "indices of chord iterates", model="optional")
    p.add_argument("--weights", help="comma-separated weights, e.g. 3,2,2,2")
    p.add_argument("--cover", type=int, default=1, help="cover multiplicity N for --weights")
    p.add_argument("--iterates", type=int, default=5, help="number of iterates listed for a preset (default 5)")
    p = add("rs-index", cmd_rs_index, "index of a rotation path", model=None)
    p.add_argument("--blocks", required=True, help="comma-separated speeds, e.g. 1/3,1/2,-1")
    p.add_argument("--duration", required=True, help="duration such as 12pi")
    p.add_argument("--type", default="lagrangian", choices=("lagrangian", "graph"))
    p.add_argument("--start", default=None, help="start time (multiple of pi, no suffix)")
    p.add_argument("--numeric", action="store_true", help="also run the sampled oracle")
    p.add_argument("--samples", type=int, default=None)
    add("ss-page", cmd_ss_page, "E1 page")
    add("wfh", cmd_wfh, "wrapped Floer homology in a window")
    add("growth", cmd_growth, "growth slope of filtered dimensions")
    add("verdict", cmd_verdict, "theorem gates")
    p = add("report", cmd_report, "write JSON and figures to a directory")
    p.add_argument("--out", required=True, help="output directory")
    return parser


def _fail(code: str, message: str, status: int) -> int:
    sys.stderr.write(json.dumps({"code": code, "message": message}, sort_keys=True) + "\n")
    return status


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        output = args.func(args)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    except (ModelError, IndexUnavailable) as exc:
        return _fail("model-refusal", str(exc), EXIT_REFUSED)
    except InsufficientData as exc:
        return _fail("insufficient-data", str(exc), EXIT_USAGE)
    except UnresolvedCrossings as exc:
        return _fail("unresolved-crossings", str(exc), EXIT_USAGE)
    except ValueError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    if isinstance(output, bytes):
        sys.stdout.buffer.write(output)
        sys.stdout.flush()
    else:
        sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
