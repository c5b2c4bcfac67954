"""Command line entry point: ``intgrass <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import classify, faces, geometry, grading, hilbert, plucker
from .classify import FanoStatus, TypedVariety
from .errors import GrassError
from .grading import GradingData

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _pair(text: str) -> tuple[int, int]:
    try:
        x, y = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y with integers, got {text!r}") from None
    return (x, y)


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def load_grading(path: str) -> tuple[GradingData, Optional[TypedVariety]]:
    """Read a grading from JSON: a variety record, {n, t_weights, s_weights} or {n, m, matrix}."""
    with open(path) as fh:
        obj = json.load(fh)
    if "type" in obj:
        v = TypedVariety.from_json(obj)
        return v.grading(), v
    if "matrix" in obj:
        xs, ys = obj["matrix"]
        n = int(obj["n"])
        cols = list(zip(xs, ys))
        nt = n * (n - 1) // 2
        return GradingData(n, len(cols) - nt, tuple(cols[:nt]), tuple(cols[nt:])), None
    return GradingData.from_json(obj), None


def _table_order(v: TypedVariety):
    return (v.n, -v.k, v.alphas)


def _h0(v: TypedVariety) -> int:
    return hilbert.h0_anticanonical(v)


def _h0_values(vs: Sequence[TypedVariety], jobs: int) -> list[int]:
    if jobs > 1 and len(vs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_h0, vs))
    return [_h0(v) for v in vs]


def _variety_rows(vs: Sequence[TypedVariety], with_h0: bool, jobs: int) -> list[dict]:
    h0s = _h0_values(vs, jobs) if with_h0 else [None] * len(vs)
    rows = []
    for no, (v, h) in enumerate(zip(vs, h0s), start=1):
        rec = v.to_json()
        rec["no"] = no
        if with_h0:
            rec["h0"] = h
        rows.append(rec)
    return rows


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
        return
    has_h0 = any("h0" in r for r in rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        head = ["no", "n", "k", "alpha", "matrix_x", "matrix_y", "antican_x", "antican_y", "fano"]
        w.writerow(head + (["h0"] if has_h0 else []))
        for r in rows:
            p = r["params"]
            row = [
                r["no"],
                r["n"],
                p.get("k", ""),
                " ".join(str(a) for a in p.get("alpha", [])) if isinstance(p.get("alpha"), list) else p.get("alpha", ""),
                " ".join(str(x) for x in r["matrix"][0]),
                " ".join(str(y) for y in r["matrix"][1]),
                r["antican"][0],
                r["antican"][1],
                r["fano"],
            ]
            w.writerow(row + ([r["h0"]] if has_h0 else []))
        out.write(buf.getvalue())
        return
    if fmt == "md":
        head = "| No. | n | matrix | -K_X |" + (" h0(-K_X) |" if has_h0 else "")
        out.write(head + "\n")
        out.write("|" + "---|" * (5 if has_h0 else 4) + "\n")
        for r in rows:
            mat = "[" + "; ".join(" ".join(str(x) for x in row) for row in r["matrix"]) + "]"
            line = f"| {r['no']} | {r['n']} | {mat} | ({r['antican'][0]},{r['antican'][1]}) |"
            if has_h0:
                line += f" {r['h0']} |"
            out.write(line + "\n")
        return
    for r in rows:
        mat = "[" + "; ".join(" ".join(str(x) for x in row) for row in r["matrix"]) + "]"
        line = f"{r['no']}. n={r['n']} {mat} -K=({r['antican'][0]},{r['antican'][1]}) {r['fano']}"
        if has_h0:
            line += f" h0={r['h0']}"
        out.write(line + "\n")


# subcommands ------------------------------------------------------------------------


def cmd_relations(args, out) -> int:
    rels = list(plucker.iter_relations(args.n))
    if args.format == "json":
        out.write(json.dumps([r.to_json() for r in rels], indent=2) + "\n")
    else:
        for r in rels:
            a, b, c, d = r.quad
            out.write(f"g_{a}{b}{c}{d} = {r}\n")
    return EXIT_OK


def _predicates(g: GradingData) -> dict:
    res = {
        "homogeneous": grading.is_homogeneous(g),
        "pointed": grading.is_pointed(g),
        "almost_free": grading.is_almost_free(g),
    }
    res["moving_cone_full"] = bool(res["pointed"] and grading.moving_cone(g).is_full_dim)
    return res


def cmd_validate(args, out) -> int:
    g, _ = load_grading(args.matrix)
    preds = _predicates(g)
    preds["dim_x"] = grading.dim_x(g.n, g.m)
    if args.json:
        out.write(json.dumps(preds, indent=2) + "\n")
    else:
        for k, v in preds.items():
            out.write(f"{k}: {v}\n")
    failed = [k for k, v in preds.items() if v is False]
    if failed:
        sys.stderr.write(json.dumps({"error": "invalid_grading", "failed": failed}) + "\n")
        return EXIT_INVALID
    return EXIT_OK


def analyze(g: GradingData, u) -> dict:
    rep: dict = {"n": g.n, "m": g.m, "ample": list(u), **_predicates(g)}
    if rep["pointed"]:
        rep["effective_cone"] = str(grading.effective_cone(g))
        rep["moving_cone"] = str(grading.moving_cone(g))
    verdict = faces.verify_smooth(g, u)
    rep["smooth"] = verdict.status.value
    rep["witness"] = None if verdict.witness is None else str(verdict.witness)
    rep["detail"] = verdict.detail
    try:
        split = faces.tau_split(g, u)
        rep["tau_plus"] = len(split.plus)
        rep["tau_minus"] = len(split.minus)
        rep["ample_chamber"] = str(split.chamber)
        sa = faces.semiample_cone(g, u)
        rep["semiample_cone"] = str(sa)
        rep["ample_cone"] = f"interior of {sa}"
        rep["picard_full"] = faces.picard_subgroup_is_full(g, u)
    except GrassError as exc:
        rep["cone_error"] = str(exc)
    if verdict.is_smooth:
        rep["recognized"] = str(verdict.recognized)
        rep["bpf_saturated"] = faces.bpf_saturated(g, u)
        rep["antican"] = list(classify.anticanonical(g))
        rep["fano"] = classify.fano_status_by_cone(g, u).value
    return rep


def cmd_analyze(args, out) -> int:
    g, _ = load_grading(args.matrix)
    rep = analyze(g, args.ample)
    if args.json:
        out.write(json.dumps(rep, indent=2) + "\n")
    else:
        for k, v in rep.items():
            out.write(f"{k}: {v}\n")
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    if args.almost_fano:
        statuses = (FanoStatus.TRULY_ALMOST_FANO,)
    elif args.all:
        statuses = tuple(FanoStatus)
    else:
        statuses = (FanoStatus.FANO,)
    vs = classify.enumerate_smooth_full(args.n, statuses, args.max_alpha)
    vs.sort(key=_table_order)
    _emit_rows(_variety_rows(vs, args.h0, args.jobs), args.format, out)
    return EXIT_OK


def cmd_count(args, out) -> int:
    if args.range is not None:
        lo, hi = args.range
    elif args.n is not None:
        lo = hi = args.n
    else:
        raise UsageError("count: give --n N or --range A..B")
    fn = classify.count_fano_oracle if args.oracle else classify.count_fano_formula
    counts = {n: fn(n) for n in range(lo, hi + 1)}
    if args.format == "json":
        out.write(json.dumps({str(n): c for n, c in counts.items()}) + "\n")
    elif args.format == "csv":
        out.write("n,count\n" + "".join(f"{n},{c}\n" for n, c in counts.items()))
    else:
        out.write(",".join(str(c) for c in counts.values()) + "\n")
    return EXIT_OK


def cmd_hilbert(args, out) -> int:
    g, _ = load_grading(args.matrix)
    if args.oracle:
        value = hilbert.graded_dim_oracle(g, args.degree, method=args.method)
    else:
        value = hilbert.graded_dim(g, args.degree)
    out.write(f"{value}\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    vs = []
    for n in range(args.n_from, args.n_to + 1):
        vs.extend(classify.enumerate_smooth_fano_full(n))
    vs.sort(key=_table_order)
    _emit_rows(_variety_rows(vs, not args.no_h0, args.jobs), args.format, out)
    return EXIT_OK


def cmd_geometry(args, out) -> int:
    g, v = load_grading(args.variety)
    if v is None:
        v = classify.recognize(g, faces.default_ample_class(g))
        if v is None:
            raise GrassError("grading is not recognised as one of the six families")
    rep = geometry.geometry_report(v)
    if args.json:
        out.write(json.dumps(rep.to_json(), indent=2) + "\n")
    else:
        out.write(rep.to_text() + "\n")
    return EXIT_OK


def build_parser() -> _Parser:
    p = _Parser(prog="intgrass", description="Smooth intrinsic Grassmannians of type (2,n), Picard number two.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("relations", help="list the Pluecker relations g_abcd")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_relations)

    s = sub.add_parser("validate", help="check grading predicates")
    s.add_argument("--matrix", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", help="cones, smoothness, Picard group and BPF saturation")
    s.add_argument("--matrix", required=True)
    s.add_argument("--ample", type=_pair, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("enumerate", help="smooth full varieties of type (2,n)")
    s.add_argument("--n", type=int, required=True)
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--fano", action="store_true", help="Fano varieties (default)")
    grp.add_argument("--almost-fano", action="store_true", help="truly almost Fano varieties")
    grp.add_argument("--all", action="store_true", help="every status; needs --max-alpha")
    s.add_argument("--max-alpha", type=int, default=None)
    s.add_argument("--format", choices=["md", "csv", "json", "text"], default="text")
    s.add_argument("--h0", action="store_true", help="add the h0(-K_X) column")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("count", help="number of smooth Fano full varieties")
    s.add_argument("--n", type=int)
    s.add_argument("--range", type=_range)
    s.add_argument("--oracle", action="store_true", help="brute-force enumeration instead of the formula")
    s.add_argument("--format", choices=["text", "csv", "json"], default="text")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("hilbert", help="dimension of a graded component")
    s.add_argument("--matrix", required=True)
    s.add_argument("--degree", type=_pair, required=True)
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--method", choices=["ideal", "straighten"], default="ideal")
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("table", help="all smooth Fano full varieties for a range of n")
    s.add_argument("--n-from", type=int, default=5)
    s.add_argument("--n-to", type=int, default=8)
    s.add_argument("--format", choices=["md", "csv", "json", "text"], default="md")
    s.add_argument("--no-h0", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("geometry", help="contractions and fibration data of a variety")
    s.add_argument("--variety", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_geometry)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (GrassError, OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
