"""Command-line interface: entropy, curve, phase-scan and classify subcommands.

Exit codes: 0 success, 1 input or domain error, 2 numerical failure.
"""

import argparse
import json
import sys

from .curves import (
    FORMATION_KINDS,
    CurveKind,
    InformationCurve,
    PointKind,
    ProtocolPoint,
    formation_endpoints,
    build_lower_envelope,
    phase_scan,
    pure_extraction_line,
)
from .ensembles import ensemble_average, ensemble_from_dict
from .families import (
    FamilySpec,
    bell_formation_points,
    bell_mixture,
    classically_correlated,
    classify,
    pure_schmidt,
)
from .linalg import DensityOperator, EigenConvergenceError, PureState
from .measures import information_content, measure_report, pure_state_entanglement
from .serialize import dump_state, fmt, fnum, load_state, points_csv, scan_csv
from .svgplot import RenderSpec, render_chart

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERIC = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse defaults to exit code 2, which is reserved for numerical failure
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ValueError(f"expected comma-separated numbers, got {text!r}") from exc


def _family_spec(args) -> FamilySpec:
    family = getattr(args, "family", None)
    state = getattr(args, "state", None)
    if family is None:
        if state is None:
            raise ValueError("select an input with --family or --state")
        family = "raw"
    if family == "bell-mixture":
        if args.p is None:
            raise ValueError("family bell-mixture needs --p")
        return FamilySpec(kind=family, p=args.p)
    if family == "pure-schmidt":
        if args.coeffs is None:
            raise ValueError("family pure-schmidt needs --coeffs")
        return FamilySpec(kind=family, coeffs=tuple(_parse_floats(args.coeffs)))
    if family == "classical":
        if args.probs is None:
            raise ValueError("family classical needs --probs")
        return FamilySpec(kind=family, probs=tuple(_parse_floats(args.probs)))
    if state is None:
        raise ValueError("family raw needs --state FILE")
    return FamilySpec(kind="raw", path=state)


def _resolve_state(spec: FamilySpec) -> tuple[DensityOperator, PureState | None]:
    if spec.kind == "bell-mixture":
        return bell_mixture(spec.p), None
    if spec.kind == "pure-schmidt":
        psi = pure_schmidt(spec.coeffs)
        return psi.projector(), psi
    if spec.kind == "classical":
        return classically_correlated(spec.probs), None
    return load_state(spec.path), None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_entropy(args) -> int:
    if args.ensemble:
        with open(args.ensemble, "r", encoding="utf-8") as fh:
            rho = ensemble_average(ensemble_from_dict(json.load(fh)))
    else:
        rho, _ = _resolve_state(_family_spec(args))
    report = measure_report(rho)
    payload = {
        "n": report.n,
        "s_total": fnum(report.s_total),
        "s_a": fnum(report.s_a),
        "s_b": fnum(report.s_b),
        "info": fnum(report.info),
    }
    if report.concurrence is not None:
        payload["concurrence"] = fnum(report.concurrence)
        payload["eof"] = fnum(report.eof)
    payload["ppt_min_eig"] = fnum(report.ppt_min_eig)
    if args.dump_state:
        dump_state(rho, args.dump_state)
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def _curve_data(
    spec: FamilySpec, include_extraction: bool
) -> tuple[list[ProtocolPoint], list[tuple[str, InformationCurve]]]:
    points: list[ProtocolPoint] = []
    envelopes: list[tuple[str, InformationCurve]] = []
    if spec.kind == "bell-mixture":
        pts = bell_formation_points(spec.p)
        points += pts
        envelopes.append(("formation-envelope", build_lower_envelope(pts)))
        # no computable extraction rule for this mixed family
    elif spec.kind == "pure-schmidt":
        psi = pure_schmidt(spec.coeffs)
        n = psi.projector().n_qubits
        e = pure_state_entanglement(psi)
        endpoints = formation_endpoints(float(n), 0.0, e, e)
        points += endpoints
        envelopes.append(("formation-envelope", build_lower_envelope(endpoints)))
        if include_extraction:
            line = pure_extraction_line(float(n), e)
            points += line.points
            envelopes.append(("extraction-envelope", line))
    elif spec.kind == "classical":
        rho = classically_correlated(spec.probs)
        info = information_content(rho)
        endpoints = formation_endpoints(info, 0.0, 0.0, 0.0)
        points += endpoints
        envelopes.append(("formation-envelope", build_lower_envelope(endpoints)))
        if include_extraction:
            zero = ProtocolPoint(0.0, info, PointKind.EXTRACTION_ZERO, "locc-extraction")
            points.append(zero)
            line = InformationCurve(
                kind=CurveKind.EXTRACTION, points=(zero,), envelope=((0.0, info),)
            )
            envelopes.append(("extraction-envelope", line))
    else:
        raise ValueError(
            "no formation-point rules for raw states; use the entropy or classify commands"
        )
    return points, envelopes


def _oriented(q: float, i: float, formation: bool, paper_axes: bool) -> tuple[float, float]:
    if formation and paper_axes:
        return -q, -i  # resources used up: lower-left quadrant
    return q, i


def _curve_svg(points, envelopes, spec: RenderSpec, title: str) -> str:
    series = []
    for name, curve in envelopes:
        formation = curve.kind is CurveKind.FORMATION
        series.append(
            (name, [_oriented(q, i, formation, spec.paper_axes) for q, i in curve.envelope])
        )
    markers = []
    for p in points:
        formation = p.kind in FORMATION_KINDS
        x, y = _oriented(p.q, p.i, formation, spec.paper_axes)
        markers.append((p.label, x, y))
    return render_chart(series, markers, spec, title)


def cmd_curve(args) -> int:
    spec = _family_spec(args)
    points, envelopes = _curve_data(spec, args.include_extraction)
    if args.format == "json":
        payload = {
            "points": [
                {"kind": p.kind.value, "label": p.label, "q": fnum(p.q), "i": fnum(p.i)}
                for p in points
            ],
            "envelopes": {
                name: [[fnum(q), fnum(i)] for q, i in curve.envelope]
                for name, curve in envelopes
            },
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(points_csv(points, envelopes), args.out)
    if args.svg:
        render = RenderSpec(paper_axes=args.paper_axes)
        title = f"information-space curves ({spec.kind})"
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(_curve_svg(points, envelopes, render, title))
    return EXIT_OK


def cmd_phase_scan(args) -> int:
    if not 0.0 < args.p_min < args.p_max < 0.5:
        raise ValueError(
            f"scan needs 0 < p_min < p_max < 1/2, got p_min={args.p_min} p_max={args.p_max}"
        )
    if args.steps < 2:
        raise ValueError(f"scan needs at least 2 steps, got {args.steps}")
    step = (args.p_max - args.p_min) / (args.steps - 1)
    grid = [args.p_min + k * step for k in range(args.steps - 1)] + [args.p_max]
    probe = args.probe if args.probe == "steepest" else float(args.probe)
    result = phase_scan(
        bell_formation_points, grid, probe=probe, divergence_threshold=args.divergence_threshold
    )
    _emit(scan_csv(result), args.out)
    if args.svg:
        render = RenderSpec(paper_axes=args.paper_axes)
        series = []
        for p in grid:
            curve = build_lower_envelope(bell_formation_points(p))
            series.append(
                (
                    f"p={fmt(p)}",
                    [_oriented(q, i, True, render.paper_axes) for q, i in curve.envelope],
                )
            )
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_chart(series, [], render, "formation curves across the family"))
    return EXIT_OK


def cmd_classify(args) -> int:
    rho, _ = _resolve_state(_family_spec(args))
    result = classify(rho)
    payload = {
        "category": result.category.value,
        "evidence": {
            "purity": fnum(result.purity),
            "product_eigenbasis": result.product_eigenbasis,
            "ppt_min_eig": fnum(result.ppt_min_eig),
        },
    }
    if args.dump_state:
        dump_state(rho, args.dump_state)
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def _add_input_options(sub, ensemble: bool = False) -> None:
    sub.add_argument("--family", choices=("bell-mixture", "pure-schmidt", "classical", "raw"))
    sub.add_argument("--p", type=float, help="bell-mixture parameter in [0, 1/2]")
    sub.add_argument("--coeffs", help="comma-separated Schmidt coefficients")
    sub.add_argument("--probs", help="comma-separated probabilities")
    sub.add_argument("--state", help="state JSON file (raw family)")
    if ensemble:
        sub.add_argument("--ensemble", help="ensemble JSON file; reports on its average")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="infospace", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    entropy = commands.add_parser("entropy", help="entropy/information report for one state")
    _add_input_options(entropy, ensemble=True)
    entropy.add_argument("--out", help="write output here instead of stdout")
    entropy.add_argument("--dump-state", help="also write the resolved state as JSON")
    entropy.set_defaults(func=cmd_entropy)

    curve = commands.add_parser("curve", help="formation/extraction curve data")
    _add_input_options(curve)
    curve.add_argument(
        "--include-extraction",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="emit extraction data where a rule exists",
    )
    curve.add_argument("--format", choices=("csv", "json"), default="csv")
    curve.add_argument("--out", help="write output here instead of stdout")
    curve.add_argument("--svg", help="additionally render an SVG chart to this path")
    curve.add_argument(
        "--paper-axes",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="draw formation data in the lower-left quadrant",
    )
    curve.set_defaults(func=cmd_curve)

    scan = commands.add_parser("phase-scan", help="slope/chi sweep over the Bell-mixture family")
    scan.add_argument("--p-min", type=float, required=True)
    scan.add_argument("--p-max", type=float, required=True)
    scan.add_argument("--steps", type=int, required=True)
    scan.add_argument(
        "--probe",
        default="steepest",
        help="'steepest' or a fixed q value at which to read the slope",
    )
    scan.add_argument("--divergence-threshold", type=float, default=50.0)
    scan.add_argument("--out", help="write output here instead of stdout")
    scan.add_argument("--svg", help="render the overlaid family curves to this path")
    scan.add_argument(
        "--paper-axes", action=argparse.BooleanOptionalAction, default=True
    )
    scan.set_defaults(func=cmd_phase_scan)

    cls = commands.add_parser("classify", help="coarse state taxonomy with evidence")
    _add_input_options(cls)
    cls.add_argument("--out", help="write output here instead of stdout")
    cls.add_argument("--dump-state", help="also write the resolved state as JSON")
    cls.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EigenConvergenceError as exc:
        print(exc, file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
