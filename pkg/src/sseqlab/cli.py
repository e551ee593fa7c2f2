"""Command-line interface: config ingestion, dispatch, report emission.

Every artifact is plain text, CSV, SVG, or TikZ with no timestamps;
re-running a command on the same inputs is byte-identical.  Exit codes:
0 success, 1 validation error, 2 internal invariant breach.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Optional, Sequence

from .chart import build_chart, render
from .config import WorkbenchConfig, load_config
from .errors import InvariantBreach, SseqlabError, ValidationError
from .gauge import gauge_report
from .graded import format_monomial
from .homotopy import fibre_truncation_dims, hurewicz_homology, loopspace_shift
from .specseq import (
    FibrationSpec,
    build_e2,
    resolve_assignment,
    run_to_einfty,
    sweep_unknowns,
    total_dims,
)
from .steenrod import format_violations, hit_quotient, validate_table


class _Parser(argparse.ArgumentParser):
    """argparse, but usage problems exit 1 (2 is reserved for breaches)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"{self.prog}: error: {message}") from None


class _Emitter:
    """Writes named artifacts to an output directory or to stdout."""

    def __init__(self, out_dir: Optional[str]):
        self.out_dir = Path(out_dir) if out_dir else None
        if self.out_dir:
            self.out_dir.mkdir(parents=True, exist_ok=True)

    def emit(self, name: str, text: str) -> None:
        if self.out_dir:
            (self.out_dir / name).write_text(text)
        else:
            sys.stdout.write(f"# ==== {name} ====\n")
            sys.stdout.write(text)


def _csv(rows: Sequence[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for row in rows:
        writer.writerow(list(row))
    return buffer.getvalue()


# ------------------------------------------------------------- constraints


REASON_NEGATIVE = "negative_fibre_degree"
REASON_BASE = "base_zero"
REASON_FIBRE = "fibre_zero"
REASON_WINDOW = "window_exceeded"
STATUS_ADMISSIBLE = "admissible"
STATUS_REJECTED = "rejected"


def constraint_rows(spec: FibrationSpec):
    """Admit/reject every (page, source) pair with a machine-checkable reason.

    Sources are the nonzero starting-page groups of positive fibre
    degree inside the window; pages above fibre degree + 1 are
    summarized in one negative-fibre row per source.
    """
    rows = []
    for t in spec.fibre_degrees():
        if t < 1:
            continue
        for s in range(spec.degree_bound - t + 1):
            if spec.e2_dim(s, t) == 0:
                continue
            for r in range(2, t + 2):
                tgt = (s + r, t - r + 1)
                if sum(tgt) > spec.degree_bound + 1:
                    rows.append((str(r), s, t, tgt[0], tgt[1], STATUS_REJECTED, REASON_WINDOW))
                elif spec.base_dim(tgt[0]) == 0:
                    rows.append((str(r), s, t, tgt[0], tgt[1], STATUS_REJECTED, REASON_BASE))
                elif spec.fibre_dim(tgt[1]) == 0:
                    rows.append((str(r), s, t, tgt[0], tgt[1], STATUS_REJECTED, REASON_FIBRE))
                else:
                    rows.append((str(r), s, t, tgt[0], tgt[1], STATUS_ADMISSIBLE, ""))
            rows.append((f">={t + 2}", s, t, "", "", STATUS_REJECTED, REASON_NEGATIVE))
    return rows


def _constraints_log(spec: FibrationSpec) -> str:
    lines = [
        f"admissible-differential analysis, total degree <= {spec.degree_bound}",
        "base-row classes are permanent cycles: every differential out of "
        "fibre degree 0 lands in negative fibre degree",
        "",
    ]
    rows = constraint_rows(spec)
    current = None
    for page, s, t, ts, tt, status, reason in rows:
        if (s, t) != current:
            current = (s, t)
            lines.append(f"source ({s},{t}):")
        if status == STATUS_ADMISSIBLE:
            lines.append(f"  r={page}: target ({ts},{tt}) admissible")
        elif reason == REASON_NEGATIVE:
            lines.append(f"  r{page}: negative fibre degree, no target")
        elif reason == REASON_BASE:
            lines.append(f"  r={page}: target ({ts},{tt}) vanishes, base degree {ts} is zero")
        elif reason == REASON_FIBRE:
            lines.append(f"  r={page}: target ({ts},{tt}) vanishes, fibre degree {tt} is zero")
        else:
            lines.append(f"  r={page}: target ({ts},{tt}) beyond the window")
    admitted = [row for row in rows if row[5] == STATUS_ADMISSIBLE]
    lines.append("")
    lines.append(f"admissible arrows: {len(admitted)}")
    for page, s, t, ts, tt, _status, _reason in admitted:
        lines.append(f"  d_{page}: ({s},{t}) -> ({ts},{tt})")
    return "\n".join(lines) + "\n"


def cmd_constraints(cfg: WorkbenchConfig, emitter: _Emitter) -> int:
    spec = cfg.fibration_spec()
    header = ["page", "source_s", "source_t", "target_s", "target_t", "status", "reason"]
    emitter.emit("constraints.csv", _csv([header] + constraint_rows(spec)))
    emitter.emit("constraints_log.txt", _constraints_log(spec))
    return 0


# ------------------------------------------------------------- e2 / einfty


def cmd_e2(cfg: WorkbenchConfig, emitter: _Emitter) -> int:
    spec = cfg.fibration_spec()
    basis = build_e2(spec)
    rows = [["s", "t", "dim", "labels"]]
    for s, t in basis.bidegrees():
        labels = " ".join(spec.format_label(lab) for lab in basis.labels(s, t))
        rows.append([s, t, basis.dim(s, t), labels])
    emitter.emit("e2.csv", _csv(rows))
    return 0


def _parse_set_flags(pairs: list[str]) -> dict[str, int]:
    values: dict[str, int] = {}
    for pair in pairs:
        name, eq, value = pair.partition("=")
        if not eq or value not in ("0", "1"):
            raise ValidationError(f"--set expects name=0 or name=1, got {pair!r}")
        values[name] = int(value)
    return values


def cmd_einfty(cfg: WorkbenchConfig, emitter: _Emitter, set_flags: list[str]) -> int:
    spec = cfg.fibration_spec()
    values = _parse_set_flags(set_flags)
    assignment = resolve_assignment(spec, values)
    page, report = run_to_einfty(spec, assignment)
    rows = [["s", "t", "dim", "survivors"]]
    for s, t in page.reported_bidegrees():
        rows.append([s, t, page.dim(s, t), " ".join(page.describe(s, t))])
    emitter.emit("einfty.csv", _csv(rows))
    totals = [["degree", "dim"]] + [
        [j, d] for j, d in enumerate(total_dims(report, spec.degree_bound))
    ]
    emitter.emit("einfty_totals.csv", _csv(totals))
    lines = [f"limit page (r = {page.r}) for " + ", ".join(
        f"{name}={value}" for name, value in sorted(values.items())
    )]
    if page.unevaluated:
        lines.append("differentials not evaluated (target beyond the window):")
        for r, (s, t), (ts, tt) in page.unevaluated:
            lines.append(f"  d_{r}: ({s},{t}) -> ({ts},{tt})")
    else:
        lines.append("all admissible differentials evaluated inside the window")
    emitter.emit("einfty_log.txt", "\n".join(lines) + "\n")
    return 0


def cmd_sweep(cfg: WorkbenchConfig, emitter: _Emitter) -> int:
    spec = cfg.fibration_spec()
    names = list(spec.unknown_names())
    rows = [names + [f"deg{j}" for j in range(spec.degree_bound + 1)]]
    for key, report in sweep_unknowns(spec).items():
        values = [value for _name, value in key]
        rows.append(values + total_dims(report, spec.degree_bound))
    emitter.emit("sweep.csv", _csv(rows))
    return 0


# ------------------------------------------------------------- gauge


def cmd_gauge(
    cfg: WorkbenchConfig, emitter: _Emitter, k: int, overrides: list[str]
) -> int:
    parsed: dict[str, int] = {}
    for pair in overrides:
        label, eq, value = pair.partition("=")
        if not eq or value not in ("0", "1"):
            raise ValidationError(
                f"--epsilon expects label=0 or label=1, got {pair!r}"
            )
        parsed[label] = int(value)
    spec = cfg.fibration_spec()
    report = gauge_report(k, parsed, rule=cfg.epsilon_rule, spec=spec)
    header = ["k", "class", "branch"] + [
        name for name, _ in report.branches[0].values
    ] + [f"deg{j}" for j in range(spec.degree_bound + 1)]
    rows = [header]
    for index, branch in enumerate(report.branches):
        rows.append(
            [report.k, report.epsilon_label, index]
            + [value for _name, value in branch.values]
            + list(branch.total_dims)
        )
    emitter.emit("gauge_dims.csv", _csv(rows))
    lines = [
        f"bundle class k = {report.k}",
        f"residue class: {report.epsilon_label} (mod {cfg.epsilon_rule.modulus})",
        (
            f"scalar proved: eps = {report.epsilon_known}"
            if report.epsilon_known is not None
            else "scalar not proved for this class"
        ),
        "",
    ]
    lines.extend(report.notes)
    lines.append("")
    lines.append("admissible differentials on the tracked module:")
    for r, (s, t), (ts, tt) in report.admissible:
        lines.append(f"  d_{r}: ({s},{t}) -> ({ts},{tt})")
    lines.append("")
    lines.append(_constraints_log(spec))
    emitter.emit("gauge_log.txt", "\n".join(lines))
    return 0


# ------------------------------------------------------------- uct


def cmd_uct(cfg: WorkbenchConfig, emitter: _Emitter) -> int:
    if cfg.homotopy is None:
        raise ValidationError("the uct command needs a homotopy section")
    rows = [["step", "degree", "value", "provenance"]]
    for degree, entry in cfg.homotopy.items():
        text = ("contains " if not entry.exact else "") + str(entry.group)
        rows.append(["input", degree, text, entry.citation])
    shifted = loopspace_shift(cfg.homotopy, 3)
    for degree, entry in shifted.items():
        text = ("contains " if not entry.exact else "") + str(entry.group)
        rows.append(["shifted", degree, text, entry.citation])
    homology = hurewicz_homology(shifted, 5)
    for degree in sorted(homology):
        entry = homology[degree]
        text = ("contains " if not entry.exact else "") + str(entry.group)
        rows.append(["homology", degree, text, entry.citation])
    dims = fibre_truncation_dims(shifted)
    for degree, entry in dims.items():
        if degree == 0:
            provenance = "unit class of a path-connected fibre"
        else:
            provenance = (
                f"ext of homology degree {degree - 1} plus hom of degree {degree}"
            )
        rows.append(["cohomology_dim", degree, str(entry), provenance])
    emitter.emit("uct.csv", _csv(rows))
    return 0


# ------------------------------------------------------------- hit


def cmd_hit(cfg: WorkbenchConfig, emitter: _Emitter, bound: int) -> int:
    if cfg.steenrod is None:
        raise ValidationError("the hit command needs a steenrod section")
    violations = validate_table(cfg.steenrod)
    if violations:
        raise ValidationError(
            "squaring table is invalid:\n" + format_violations(violations)
        )
    report = hit_quotient(cfg.steenrod, bound)
    rows = [["degree", "total_dim", "hit_dim", "quotient_dim", "representatives"]]
    for row in report.rows:
        reps = " ".join(format_monomial(cfg.base, m) for m in row.representatives)
        rows.append([row.degree, row.total_dim, row.hit_dim, row.quotient_dim, reps])
    emitter.emit("hit.csv", _csv(rows))
    return 0


# ------------------------------------------------------------- chart


def cmd_chart(cfg: WorkbenchConfig, emitter: _Emitter, page: int, fmt: str) -> int:
    spec = cfg.fibration_spec()
    chart = build_chart(spec, page)
    emitter.emit(f"chart_p{page}.{fmt}", render(chart, fmt))
    return 0


# ------------------------------------------------------------- dispatch


def build_parser() -> _Parser:
    parser = _Parser(prog="sseqlab", description=__doc__)
    parser.add_argument("--config", default="g2.cfg", help="configuration file")
    parser.add_argument("--out", default=None, help="artifact output directory")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("constraints", help="admissible-differential table and proof log")
    sub.add_parser("e2", help="starting-page basis per bidegree")
    einfty = sub.add_parser("einfty", help="limit page for a resolved assignment")
    einfty.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="NAME=BIT",
        help="resolve an unknown scalar (repeatable)",
    )
    sub.add_parser("sweep", help="limit pages for every unknown assignment")
    gauge = sub.add_parser("gauge", help="per-class report for a bundle class")
    gauge.add_argument("--k", type=int, required=True, help="bundle class")
    gauge.add_argument(
        "--epsilon",
        action="append",
        default=[],
        metavar="LABEL=BIT",
        help="override the scalar on a residue class (repeatable)",
    )
    sub.add_parser("uct", help="fibre cohomology derivation chain")
    hit = sub.add_parser("hit", help="hit subspaces and indecomposable quotients")
    hit.add_argument("--bound", type=int, required=True, help="top degree")
    chart = sub.add_parser("chart", help="render one page as SVG or TikZ")
    chart.add_argument("--page", type=int, required=True)
    chart.add_argument("--format", choices=["svg", "tikz"], required=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 1
        return exc.code if isinstance(exc.code, int) else 1
    try:
        cfg = load_config(args.config)
        emitter = _Emitter(args.out)
        if args.command == "constraints":
            return cmd_constraints(cfg, emitter)
        if args.command == "e2":
            return cmd_e2(cfg, emitter)
        if args.command == "einfty":
            return cmd_einfty(cfg, emitter, args.set)
        if args.command == "sweep":
            return cmd_sweep(cfg, emitter)
        if args.command == "gauge":
            return cmd_gauge(cfg, emitter, args.k, args.epsilon)
        if args.command == "uct":
            return cmd_uct(cfg, emitter)
        if args.command == "hit":
            return cmd_hit(cfg, emitter, args.bound)
        if args.command == "chart":
            return cmd_chart(cfg, emitter, args.page, args.format)
        raise AssertionError(f"unhandled command {args.command}")
    except InvariantBreach as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return 2
    except SseqlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
