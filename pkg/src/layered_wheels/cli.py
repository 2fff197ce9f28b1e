"""Command-line front door: generate wheels, audit them, run detectors,
emit width certificates, and convert between graph formats.

Exit codes: 0 clean, 1 violations or pattern found, 2 bad flags or parse
error, 3 infeasible uniform m, 4 inconclusive (budget exhausted).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .detectors import (
    Budget,
    enumerate_holes,
    find_prism,
    find_pyramid,
    find_theta,
)
from .errors import FeasibilityError, InputError, IntegrityError, ParseError
from .gen_ehf import generate_ehf, parity_audit
from .gen_ttf import generate_ttf
from .graph_core import Graph, small_pattern_report
from .wheel_model import (
    EHF,
    EHF_PYRAMID,
    TTF,
    LayeredWheel,
    LengthPolicy,
    uniformity_audit,
    validate_axioms,
)
from .width_lab import (
    CubicTree,
    RankDecomposition,
    minor_certificate,
    path_decomposition,
    rank_decomposition_width,
    rankwidth_audit,
)

OK, FOUND, USAGE, INFEASIBLE, INCONCLUSIVE = 0, 1, 2, 3, 4


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="layered-wheels",
        description="generate, audit and analyze layered-wheel graphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a wheel")
    g.add_argument("--flavor", choices=(TTF, EHF), required=True)
    g.add_argument("--l", type=int, default=2)
    g.add_argument("--k", type=int, default=4)
    g.add_argument("--policy", choices=("minimal", "special", "uniform"), default="minimal")
    g.add_argument("--m", type=int, default=None)
    g.add_argument("--variant", choices=("standard", "pyramid"), default="standard")
    g.add_argument("--out", type=Path, default=None)
    g.add_argument("--format", choices=formats.FORMATS, default="json")

    a = sub.add_parser("audit", help="run the axiom, parity and uniformity audits")
    a.add_argument("input", type=Path)
    a.add_argument("--json", action="store_true")

    d = sub.add_parser("detect", help="search for a pattern")
    d.add_argument("input", type=Path)
    d.add_argument(
        "--pattern",
        choices=("hole", "even-hole", "theta", "pyramid", "prism", "small"),
        required=True,
    )
    d.add_argument("--format", choices=formats.FORMATS, default=None)
    d.add_argument("--max-len", type=int, default=None)
    d.add_argument("--budget", type=int, default=None, help="node expansion limit")
    d.add_argument("--deadline", type=float, default=None, help="seconds")
    d.add_argument("--json", action="store_true")

    w = sub.add_parser("widths", help="emit width certificates")
    w.add_argument("input", type=Path)
    w.add_argument("--rd", type=Path, default=None, help="rank decomposition JSON")
    w.add_argument("--json", action="store_true")

    c = sub.add_parser("convert", help="convert between graph formats")
    c.add_argument("input", type=Path)
    c.add_argument("--to", choices=formats.FORMATS, required=True)
    c.add_argument("--from", dest="from_fmt", choices=formats.FORMATS, default=None)
    c.add_argument("--out", type=Path, default=None)
    return p


def _load_wheel(path: Path) -> LayeredWheel:
    return LayeredWheel.from_json_bytes(path.read_bytes())


def _load_graph(path: Path, fmt: str | None) -> Graph:
    fmt = fmt or formats.format_from_path(str(path))
    return formats.import_graph(path.read_bytes(), fmt)


def _emit(data: bytes, out: Path | None):
    """Artifact to the file (or stdout); returns the summary stream."""
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return sys.stderr
    out.write_bytes(data)
    return sys.stdout


def _cmd_generate(args) -> int:
    if (args.m is not None) != (args.policy == "uniform"):
        print("--m must be given exactly when --policy uniform", file=sys.stderr)
        return USAGE
    if args.variant == "pyramid" and args.flavor != EHF:
        print("--variant pyramid applies to the ehf flavor only", file=sys.stderr)
        return USAGE
    policy = (
        LengthPolicy.uniform(args.m)
        if args.policy == "uniform"
        else LengthPolicy(args.policy)
    )
    try:
        if args.flavor == TTF:
            wheel = generate_ttf(args.l, args.k, policy)
        else:
            wheel = generate_ehf(args.l, args.k, policy, args.variant)
    except FeasibilityError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return INFEASIBLE
    except InputError as exc:
        print(f"invalid flags: {exc}", file=sys.stderr)
        return USAGE
    if args.format == "json":
        data = wheel.canonical_json() + b"\n"
    else:
        data = formats.export_graph(wheel.graph, args.format)
    stream = _emit(data, args.out)
    s = wheel.summary()
    print(
        f"{s['flavor']} wheel l={s['l']} k={s['k']} policy={s['policy']['mode']}",
        file=stream,
    )
    print(f"|V| = {s['vertices']}, |E| = {s['edges']}", file=stream)
    for i, size in enumerate(s["layer_sizes"]):
        print(f"|P_{i}| = {size}", file=stream)
    return OK


def _cmd_audit(args) -> int:
    wheel = _load_wheel(args.input)
    ax = validate_axioms(wheel)
    par = parity_audit(wheel) if wheel.flavor in (EHF, EHF_PYRAMID) else None
    uni = uniformity_audit(wheel)
    clean = ax.ok and (par is None or par.ok)
    if args.json:
        out = {
            "axioms": [
                {"axiom": v.axiom, "message": v.message, "vertices": list(v.vertices)}
                for v in ax.violations
            ],
            "parity": [
                {"axiom": v.axiom, "message": v.message, "vertices": list(v.vertices)}
                for v in (par.violations if par else [])
            ],
            "special": uni.special,
            "uniform_m": uni.uniform_m,
            "neighbor_growth_ok": uni.neighbor_growth_ok,
            "clean": clean,
        }
        print(json.dumps(out, indent=2))
    else:
        print(f"axioms: {ax.summary()}")
        if par is not None:
            print(f"parity: {par.summary()}")
        print(
            f"special: {uni.special}, uniform_m: {uni.uniform_m}, "
            f"neighbor growth ok: {uni.neighbor_growth_ok}"
        )
    return OK if clean else FOUND


def _cmd_detect(args) -> int:
    fmt = args.format
    if fmt is None:
        try:
            fmt = formats.format_from_path(str(args.input))
        except ParseError:
            fmt = "json"
    g = formats.import_graph(args.input.read_bytes(), fmt)
    budget = Budget(
        max_nodes_expanded=args.budget if args.budget else Budget().max_nodes_expanded,
        deadline=args.deadline,
    )
    if args.pattern == "small":
        rep = small_pattern_report(g)
        found = rep.has_triangle or rep.has_K4 or rep.has_diamond or rep.has_K33_subgraph
        payload = {
            "triangle": rep.has_triangle,
            "K4": rep.has_K4,
            "diamond": rep.has_diamond,
            "K33_subgraph": rep.has_K33_subgraph,
        }
        print(json.dumps(payload) if args.json else payload)
        return FOUND if found else OK
    if args.pattern in ("hole", "even-hole"):
        scan = enumerate_holes(g, max_len=args.max_len, budget=budget)
        payload = {
            "count": scan.count,
            "min_hole_len": scan.min_hole_len,
            "has_even_hole": scan.has_even_hole,
            "complete": scan.complete,
            "nodes_expanded": scan.nodes_expanded,
        }
        print(json.dumps(payload) if args.json else payload)
        if args.pattern == "hole":
            if scan.count > 0:
                return FOUND
            return OK if scan.complete else INCONCLUSIVE
        if scan.has_even_hole is True:
            return FOUND
        if scan.has_even_hole is False:
            return OK
        return INCONCLUSIVE
    finder = {"theta": find_theta, "pyramid": find_pyramid, "prism": find_prism}[
        args.pattern
    ]
    res = finder(g, budget)
    payload = {
        "found": res.witness is not None,
        "complete": res.complete,
        "nodes_expanded": res.nodes_expanded,
    }
    if res.witness is not None:
        payload["vertices"] = sorted(res.witness.vertices)
    print(json.dumps(payload) if args.json else payload)
    if res.witness is not None:
        return FOUND
    return OK if res.complete else INCONCLUSIVE


def _parse_rd(path: Path) -> RankDecomposition:
    try:
        d = json.loads(path.read_text())
        tree = CubicTree(int(d["nodes"]), [(int(a), int(b)) for a, b in d["edges"]])
        leaf_map = {int(v): int(leaf) for v, leaf in d["leaf_map"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed rank decomposition JSON: {exc}") from exc
    return RankDecomposition(tree, leaf_map)


def _cmd_widths(args) -> int:
    wheel = _load_wheel(args.input)
    issues = []
    try:
        minor_certificate(wheel)
    except IntegrityError as exc:
        issues.append(f"minor certificate: {exc}")
    width = None
    try:
        _, width = path_decomposition(wheel)
    except IntegrityError as exc:
        issues.append(f"path decomposition: {exc}")
    l = wheel.l
    lines = []
    if not issues:
        lines.append(f"minor certificate: K_{l + 1} model valid, tw >= {l}")
        lines.append(f"path decomposition: width {width} <= {2 * l}")
        lines.append(f"tw ∈ [{l},{2 * l}]")
        cw_bound = (l + 1 + 5) // 6
        lines.append(
            f"commentary: cliquewidth >= {cw_bound} "
            f"(K33-free graphs: tw <= 6cw - 1)"
        )
    rd_summary = None
    if args.rd is not None:
        rd = _parse_rd(args.rd)
        rw = rank_decomposition_width(wheel.graph, rd)
        audit = rankwidth_audit(wheel, rd)
        rd_summary = {"width": rw, "certified_bound": audit.certified_bound}
        lines.append(f"rank decomposition width: {rw}")
        lines.append(audit.summary())
    if args.json:
        print(
            json.dumps(
                {
                    "l": l,
                    "tw_lower": l,
                    "pw_upper": 2 * l,
                    "pd_width": width,
                    "issues": issues,
                    "rank_decomposition": rd_summary,
                }
            )
        )
    else:
        for line in lines:
            print(line)
        for issue in issues:
            print(f"INTEGRITY: {issue}")
    return FOUND if issues else OK


def _cmd_convert(args) -> int:
    from_fmt = args.from_fmt or formats.format_from_path(str(args.input))
    data = args.input.read_bytes()
    if from_fmt == "json" and args.to == "json":
        out = LayeredWheel.from_json_bytes(data).canonical_json() + b"\n"
    else:
        g = formats.import_graph(data, from_fmt)
        if args.to == "json":
            print("only wheels have a JSON form; graphs cannot convert to json", file=sys.stderr)
            return USAGE
        out = formats.export_graph(g, args.to)
    _emit(out, args.out)
    return OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0,) else 0
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "audit":
            return _cmd_audit(args)
        if args.command == "detect":
            return _cmd_detect(args)
        if args.command == "widths":
            return _cmd_widths(args)
        if args.command == "convert":
            return _cmd_convert(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except FileNotFoundError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return USAGE
    except InputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return USAGE
    raise AssertionError("unreachable")


if __name__ == "__main__":
    raise SystemExit(main())
