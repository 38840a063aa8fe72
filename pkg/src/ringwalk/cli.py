"""Command-line front end.

Every subcommand prints machine-readable JSON on stdout and a short human
summary on stderr (suppressed by --quiet).  Exit codes: 0 success, 2 parse
or validation error, 3 size cap exceeded, 4 internal consistency failure
(a certificate or cross-check that should have verified did not).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .classify import UNKNOWN, classify_ring, cross_check
from .cyclotomic import frac_to_str
from .graphs import (
    DEFAULT_SIZE_CAP,
    SizeCapExceeded,
    UnitaryCayleyGraph,
    adjacency_matrix,
    adjacency_to_csv,
    adjacency_to_json_rows,
    adjacency_to_matrix_market,
    element_vertex,
)
from .rings import RingExpressionError, RingProduct, parse_ring_expr, render_ring, unit_count
from .revival import check_certificate, decide_qfr, search_all_pairs
from .spectral import (
    idempotents_structured,
    rational_matrix_to_json,
    spectrum_of,
    verify_decomposition,
)
from .walk import ExactTime, transition_exact, transition_float

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SIZE_CAP = 3
EXIT_INCONSISTENT = 4

SIZE_CAP_ENV = "RINGWALK_SIZE_CAP"


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress stderr summaries")
    common.add_argument(
        "--size-cap",
        type=int,
        default=None,
        help=f"vertex cap for dense work (default {DEFAULT_SIZE_CAP}, env {SIZE_CAP_ENV})",
    )

    parser = argparse.ArgumentParser(
        prog="ringwalk",
        description="quantum walks and fractional revival on unitary Cayley graphs",
    )
    parser.add_argument("--version", action="version", version=f"ringwalk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse a ring expression")
    p.add_argument("expr")

    p = sub.add_parser("graph", parents=[common], help="dump the adjacency matrix")
    p.add_argument("expr")
    p.add_argument("--format", choices=["json", "csv", "mm"], default="json")

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues with multiplicities")
    p.add_argument("expr")

    p = sub.add_parser("projections", parents=[common], help="exact spectral idempotents")
    p.add_argument("expr")
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("walk", parents=[common], help="transition matrix at a given time")
    p.add_argument("expr")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--exact", metavar="A/B", help="time 2*pi*A/B, exact entries")
    group.add_argument("--float", dest="float_time", type=float, metavar="T")
    p.add_argument("--entry", metavar="J,L", help="report a single entry")

    p = sub.add_parser("detect", parents=[common], help="decide fractional revival")
    p.add_argument("expr")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--pair", metavar="J,L")
    group.add_argument("--all-pairs", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.add_argument(
        "--crt",
        action="store_true",
        help="interpret pair entries as 1-based Z_n vertex labels v_k (element k-1)",
    )

    p = sub.add_parser("classify", parents=[common],
                       help="verdict from the classification rules")
    p.add_argument("expr")

    p = sub.add_parser("crosscheck", parents=[common],
                       help="classification rules vs detector")
    p.add_argument("expr")

    p = sub.add_parser("scan", parents=[common], help="bulk classification + detection")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--zn", type=int, metavar="MAX", help="scan Z_n for 2 <= n <= MAX")
    group.add_argument("--rings", metavar="FILE", help="file with one expression per line")

    return parser


def _emit(payload: dict, summary: str, quiet: bool) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    if not quiet and summary:
        print(summary, file=sys.stderr)


def _parse_pair(text: str, ring: RingProduct, crt: bool) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise RingExpressionError(f"expected 'J,L', got {text!r}")
    indices = []
    for part in parts:
        token = part.strip().lower()
        if crt:
            token = token.lstrip("v")
        try:
            value = int(token)
        except ValueError as exc:
            raise RingExpressionError(f"bad vertex index {part!r}") from exc
        if crt:
            value = element_vertex(ring, (value - 1) % ring.size)
        indices.append(value)
    j, l = indices
    if not (0 <= j < ring.size and 0 <= l < ring.size):
        raise RingExpressionError(f"vertex pair {text!r} out of range")
    return j, l


def _ring_info(expr: str) -> tuple[RingProduct, dict]:
    ring = parse_ring_expr(expr)
    info = {
        "expr": expr,
        "rendered": render_ring(ring),
        "size": ring.size,
        "unit_count": unit_count(ring),
        "combined_ideal_size": ring.combined_ideal_size,
        "factors": [
            {"size": f.size, "ideal_size": f.ideal_size, "label": f.display_name}
            for f in ring.factors
        ],
    }
    return ring, info


def _cmd_parse(args) -> int:
    _, info = _ring_info(args.expr)
    _emit(info, f"{info['rendered']}: {info['size']} elements, "
                f"{info['unit_count']} units", args.quiet)
    return EXIT_OK


def _cmd_graph(args) -> int:
    ring, info = _ring_info(args.expr)
    matrix = adjacency_matrix(ring, args.cap)
    if args.format == "csv":
        sys.stdout.write(adjacency_to_csv(matrix))
        return EXIT_OK
    if args.format == "mm":
        sys.stdout.write(adjacency_to_matrix_market(matrix))
        return EXIT_OK
    payload = {
        "ring": info["rendered"],
        "vertices": ring.size,
        "degree": unit_count(ring),
        "matrix": adjacency_to_json_rows(matrix),
    }
    _emit(payload, f"{info['rendered']}: {ring.size} vertices, degree {payload['degree']}",
          args.quiet)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    ring, info = _ring_info(args.expr)
    spectrum = spectrum_of(ring)
    payload = {"ring": info["rendered"], "spectrum": spectrum.to_json()}
    summary = ", ".join(f"{e} (x{m})" for e, m in spectrum.entries)
    _emit(payload, f"{info['rendered']}: eigenvalues {summary}", args.quiet)
    return EXIT_OK


def _cmd_projections(args) -> int:
    ring, info = _ring_info(args.expr)
    dec = idempotents_structured(ring, args.cap)
    payload = {
        "ring": info["rendered"],
        "eigenvalues": list(dec.spectrum.eigenvalues),
        "idempotents": [rational_matrix_to_json(idem) for idem in dec.idempotents],
    }
    if args.verify:
        ok = verify_decomposition(dec, adjacency_matrix(ring, args.cap))
        payload["verified"] = ok
        if not ok:
            _emit(payload, "spectral identity check FAILED", args.quiet)
            return EXIT_INCONSISTENT
    _emit(payload, f"{info['rendered']}: {len(dec.idempotents)} idempotents", args.quiet)
    return EXIT_OK


def _cmd_walk(args) -> int:
    ring, info = _ring_info(args.expr)
    dec = idempotents_structured(ring, args.cap)
    if args.exact is not None:
        h = transition_exact(dec, ExactTime.of(Fraction(args.exact)))
        label = h.time.render()
    else:
        h = transition_float(dec, args.float_time)
        label = f"t = {args.float_time}"
    payload = h.to_json()
    payload["ring"] = info["rendered"]
    if args.entry:
        j, l = _parse_pair(args.entry, ring, crt=False)
        payload["matrix"] = None
        value = h.entry(j, l)
        payload["entry"] = {
            "pair": [j, l],
            "value": value.to_json() if h.mode == "exact" else [value.real, value.imag],
        }
    _emit(payload, f"{info['rendered']}: H at {label} ({h.mode})", args.quiet)
    return EXIT_OK


def _cmd_detect(args) -> int:
    ring, info = _ring_info(args.expr)
    graph = UnitaryCayleyGraph(ring, args.cap)
    if args.pair:
        j, l = _parse_pair(args.pair, ring, args.crt)
        decisions = [decide_qfr(graph.decomposition(), j, l)]
    else:
        decisions = search_all_pairs(ring, args.cap)
    payload: dict = {"ring": info["rendered"], "decisions": []}
    failed = False
    found = 0
    for decision in decisions:
        entry = decision.to_json()
        if decision.is_revival:
            found += 1
            if args.verify:
                ok = check_certificate(graph, decision)
                entry["verified"] = ok
                failed = failed or not ok
        payload["decisions"].append(entry)
    summary = (
        f"{info['rendered']}: {found} reviving pair(s) out of {len(decisions)} checked"
    )
    _emit(payload, summary, args.quiet)
    return EXIT_INCONSISTENT if failed else EXIT_OK


def _cmd_classify(args) -> int:
    ring, info = _ring_info(args.expr)
    result = classify_ring(ring, args.cap)
    payload = {"ring": info["rendered"], **result.to_json()}
    _emit(payload, f"{info['rendered']}: {result.verdict} ({result.basis.tag})",
          args.quiet)
    return EXIT_OK


def _cmd_crosscheck(args) -> int:
    ring, info = _ring_info(args.expr)
    report = cross_check(ring, args.cap)
    payload = report.to_json()
    summary = (
        f"{info['rendered']}: oracle {report.oracle.verdict}, "
        f"detector {report.detector_verdict}, "
        f"{'consistent' if report.consistent else 'INCONSISTENT'}"
    )
    _emit(payload, summary, args.quiet)
    return EXIT_OK if report.consistent else EXIT_INCONSISTENT


def _scan_expressions(args) -> list[str]:
    if args.zn is not None:
        if args.zn < 2:
            raise RingExpressionError("--zn needs MAX >= 2")
        return [f"Z{n}" for n in range(2, args.zn + 1)]
    exprs = []
    with open(args.rings, encoding="utf-8") as handle:
        for line in handle:
            line = line.split("#", 1)[0].strip()
            if line:
                exprs.append(line)
    return exprs


def _cmd_scan(args) -> int:
    exprs = _scan_expressions(args)
    parsed = [(parse_ring_expr(e), e) for e in exprs]
    parsed.sort(key=lambda pair: (pair[0].size, pair[1]))
    rows = []
    inconsistent = False
    for ring, expr in parsed:
        report = cross_check(ring, args.cap)
        inconsistent = inconsistent or not report.consistent
        certs = [d.certificate for d in report.certificates]
        best = min(certs, key=lambda c: c.minimal_time.fraction, default=None)
        row = {
            "ring": expr,
            "size": ring.size,
            "ideal_size": ring.combined_ideal_size,
            "oracle": {
                "verdict": report.oracle.verdict,
                "basis": report.oracle.basis.tag,
            },
            "detector": report.detector_verdict,
            "minimal_time": best.minimal_time.render() if best else None,
            "kind": best.kind if best else None,
            "consistent": report.consistent,
        }
        if report.oracle.verdict == UNKNOWN:
            row["detector_source"] = "computational"
        rows.append(row)
    payload = {"rows": rows}
    revived = sum(1 for r in rows if r["detector"] == "QFR")
    _emit(payload, f"scanned {len(rows)} rings, {revived} with revival", args.quiet)
    return EXIT_INCONSISTENT if inconsistent else EXIT_OK


_COMMANDS = {
    "parse": _cmd_parse,
    "graph": _cmd_graph,
    "spectrum": _cmd_spectrum,
    "projections": _cmd_projections,
    "walk": _cmd_walk,
    "detect": _cmd_detect,
    "classify": _cmd_classify,
    "crosscheck": _cmd_crosscheck,
    "scan": _cmd_scan,
}


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cap = args.size_cap
    if cap is None:
        cap = int(os.environ.get(SIZE_CAP_ENV, DEFAULT_SIZE_CAP))
    args.cap = cap
    try:
        return _COMMANDS[args.command](args)
    except RingExpressionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
