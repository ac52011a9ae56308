"""Command-line entry point: pencils, geometry, bundles, drums and the verify-all runner."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import bundles, cones, drums, geometry, pencils, sections
from .algebra import as_rational
from .bundles import DEFAULT_SEED, BundlePresentation
from .errors import BadInput, PblError
from .report import emit_report, render_table
from .verify import RunConfig, verify_all

EXIT_OK, EXIT_FAIL, EXIT_BAD_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def default_seed() -> int:
    env = os.environ.get("PBL_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return _seed(env)
    except argparse.ArgumentTypeError as exc:
        raise BadInput(f"PBL_SEED: {exc}") from exc


def _point(text: str) -> list[Fraction]:
    try:
        return [as_rational(v.strip()) for v in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise BadInput(f"cannot parse point {text!r}") from exc


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise BadInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise BadInput(f"{path}: invalid JSON ({exc})") from exc


def _emit(data: Any, fmt: str, table: str | None = None) -> None:
    if fmt == "json" or table is None:
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(table)


def _kv_table(data: dict) -> str:
    rows = []
    for k in sorted(data):
        v = data[k]
        rows.append([k, v if isinstance(v, (str, int, bool)) or v is None else json.dumps(v, sort_keys=True)])
    return render_table(["field", "value"], rows)


# ---------------------------------------------------------------- pencil


def cmd_pencil(args) -> int:
    p = pencils.load_pencil(args.file)
    if args.action == "check":
        regular = pencils.pencil_is_regular(p)
        out = {"s": p.s, "regular": regular, "t": pencils.pencil_t(p) if regular else None}
        _emit(out, args.format, _kv_table(out))
        return EXIT_OK
    nf = pencils.pencil_normal_form(p)
    rows = pencils.verify_normal_form(p, nf)
    out = nf.to_json()
    out["verification"] = [{"identity": k, "holds": ok} for k, ok in rows]
    table = render_table(["identity", "holds"], [[k, ok] for k, ok in rows])
    table = f"t = {nf.t}\n" + table + "".join(f"flag: {f}\n" for f in nf.flags)
    _emit(out, args.format, table)
    return EXIT_OK if all(ok for _, ok in rows) else EXIT_FAIL


# ---------------------------------------------------------------- geom


def cmd_geom(args) -> int:
    if args.action == "smooth-scan":
        res = geometry.smooth_scan(args.n, args.d, args.radius)
        _emit(res, args.format, _kv_table(res))
        return EXIT_OK if not res["mismatches"] else EXIT_FAIL
    locus = geometry.determinantal_locus(args.t)
    out: dict[str, Any] = {"t": args.t, "locus": locus.name, "dimension": locus.expected_dim}
    if args.check:
        p = geometry.ProjPoint(_point(args.check))
        inside = locus.contains(p)
        out["point"] = repr(p)
        out["on_locus"] = inside
        out["smooth"] = locus.smooth_at(p) if inside else None
    _emit(out, args.format, _kv_table(out))
    return EXIT_OK


# ---------------------------------------------------------------- bundle


def _bundle_from_args(args) -> BundlePresentation:
    if getattr(args, "file", None):
        return BundlePresentation.from_json(_load_json(args.file))
    if args.tag is None:
        raise BadInput("give --tag or --file")
    if args.tag.lower() == "custom":
        if not args.twists:
            raise BadInput("Custom needs --twists")
        return bundles.custom_split(args.n, [int(v) for v in args.twists.split(",")])
    params = {}
    for key in ("t", "d", "section"):
        if getattr(args, key, None) is not None:
            params[key] = getattr(args, key)
    return bundles.catalog_bundle(args.tag, args.n, args.r, **params)


def _summary(bp: BundlePresentation) -> dict:
    return {
        "label": bp.label,
        "tag": bp.tag,
        "n": bp.n,
        "rank": bp.rank,
        "c1": bp.c1,
        "twists": list(bp.twists),
        "relations": len(bp.relations),
    }


def cmd_bundle(args) -> int:
    if args.action == "catalog":
        if args.tag or args.file:
            bp = _bundle_from_args(args)
            _emit(bp.to_json(), args.format, _kv_table(_summary(bp)))
            return EXIT_OK
        items = [_summary(bp) for bp in bundles.standard_instances()]
        table = render_table(
            ["label", "rank", "c1", "twists", "relations"],
            [[i["label"], i["rank"], i["c1"], ",".join(map(str, i["twists"])), i["relations"]] for i in items],
        )
        _emit(items, args.format, table)
        return EXIT_OK
    bp = _bundle_from_args(args)
    if args.action == "fiber":
        if not args.x:
            raise BadInput("fiber needs --x")
        fib = bundles.fiber_over(bp, _point(args.x))
        out = {"bundle": bp.label, "x": args.x, "fiber": fib.to_json()}
        if bp.tag == "Type5":
            out["stacked_rank"] = bundles.type5_stacked_rank(bp, _point(args.x))
        _emit(out, args.format, _kv_table(out))
        return EXIT_OK
    if args.action == "image":
        eqs = bundles.image_equations(bp)
        out = {"bundle": bp.label, "equations": [repr(q) for q in eqs]}
        if args.x:
            x = _point(args.x)
            out["x"] = args.x
            out["on_image"] = bundles.image_membership(bp, x)
            out["fiber_nonempty"] = not bundles.fiber_over(bp, x).empty
            if bp.tag == "SectionFstar" and len(x) == 2 * bp.n + 2:
                out["nowhere_vanishing_section"] = bundles.nowhere_vanishing_section(bp.param("d"), bp.n, x)
        _emit(out, args.format, _kv_table(out))
        return EXIT_OK
    if args.action == "sections":
        if args.a < 0:
            raise BadInput("a must be >= 0")
        sp = sections.section_space(bp, args.a, args.b, with_basis=args.basis)
        out = {"bundle": bp.label} | sp.to_json()
        _emit(out, args.format, _kv_table(out))
        return EXIT_OK
    # cone
    rep = cones.cone_report(bp, args.a_max)
    fano, coeffs = cones.fano_check(bp)
    out = rep.to_json()
    out["fano"] = {"fano": fano, "anticanonical": {"H": coeffs[0], "xi": coeffs[1]}}
    _emit(out, args.format, _kv_table(out))
    return EXIT_OK


# ---------------------------------------------------------------- drum


def cmd_drum(args) -> int:
    if args.action == "list":
        entries = drums.drum_catalog()
        rows = [[d.id, d.Y, d.Y_minus, d.Y_plus, d.X, d.dim_Y, d.k_minus, d.k_plus] for d in entries]
        table = render_table(["id", "Y", "Y-", "Y+", "X", "dim Y", "k-", "k+"], rows)
        _emit({"version": drums.CATALOG_VERSION, "entries": [d.to_json() for d in entries]}, args.format, table)
        return EXIT_OK
    d = drums.drum_by_id(args.id)
    eq = drums.check_degree_identity(d)
    dims = drums.blowup_dimension_checks(d)
    try:
        verdict = drums.flip_classify(d).to_json()
        verdict["orientation"] = "as catalogued"
    except PblError:
        verdict = drums.flip_classify(d.mirrored()).to_json()
        verdict["orientation"] = "mirrored"
    out = {
        "drum": d.to_json(),
        "degree_identity": eq.to_json(),
        "flip": verdict,
        "blowup_checks": [{"identity": k, "lhs": a, "rhs": b, "holds": a == b} for k, a, b in dims],
    }
    ok = eq.passed and all(a == b for _, a, b in dims)
    table = render_table(
        ["check", "lhs", "rhs", "holds"],
        [["degree identity printed", *eq.printed, eq.printed_ok], ["degree identity mirrored", *eq.mirrored, eq.mirrored_ok]]
        + [[k, a, b, a == b] for k, a, b in dims],
    ) + f"flip: {verdict['kind']} (degKminus = {verdict['degKminus']}, {verdict['orientation']})\n"
    table += "".join(f"FLAGGED: {f}\n" for f in d.flags)
    _emit(out, args.format, table)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- verify-all


def cmd_verify_all(args) -> int:
    cfg = RunConfig(
        seed=args.seed,
        pencil_conjugates=args.pencil_conjugates,
        pencil_samples=args.pencil_samples,
        image_samples=args.samples,
        section_samples=args.samples,
        a_max=args.a_max,
        radius=args.radius,
        fmt=args.format,
    )
    report = verify_all(cfg)
    sys.stdout.write(emit_report(report, args.format))
    return EXIT_OK if report.ok else EXIT_FAIL


# ---------------------------------------------------------------- parser


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=_seed, default=None, help="overrides PBL_SEED and the default 0xD8B5")

    p = _Parser(prog="pbl", description="Exact checks for projective bundles, pencils and drums.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    pen = sub.add_parser("pencil", parents=[common], help="regular pencils and their normal form")
    pen.add_argument("action", choices=("check", "normalize"))
    pen.add_argument("file", help="JSON with keys A and B, rational entries as strings")
    pen.set_defaults(func=cmd_pencil)

    geo = sub.add_parser("geom", parents=[common], help="hypersurface and determinantal-locus checks")
    geo.add_argument("action", choices=("smooth-scan", "locus"))
    geo.add_argument("--n", type=int, default=2)
    geo.add_argument("--d", type=int, default=3)
    geo.add_argument("--radius", type=_positive, default=2)
    geo.add_argument("--t", type=int, default=2)
    geo.add_argument("--check", help="comma-separated point")
    geo.set_defaults(func=cmd_geom)

    bun = sub.add_parser("bundle", parents=[common], help="bundle presentations, fibers, images, sections, cones")
    bun.add_argument("action", choices=("catalog", "fiber", "image", "sections", "cone"))
    bun.add_argument("--tag")
    bun.add_argument("--file", help="bundle presentation JSON")
    bun.add_argument("--n", type=int, default=2)
    bun.add_argument("--r", type=int)
    bun.add_argument("--t", type=int)
    bun.add_argument("--d", type=int)
    bun.add_argument("--section", choices=("tangent", "trivial"))
    bun.add_argument("--twists", help="comma-separated twists for Custom")
    bun.add_argument("--x", help="comma-separated point")
    bun.add_argument("--a", type=int, default=1)
    bun.add_argument("--b", type=int, default=0)
    bun.add_argument("--basis", action="store_true")
    bun.add_argument("--a-max", dest="a_max", type=int, default=4)
    bun.set_defaults(func=cmd_bundle)

    dr = sub.add_parser("drum", parents=[common], help="drum catalog and integer checks")
    dr.add_argument("action", choices=("list", "check"))
    dr.add_argument("--id")
    dr.set_defaults(func=cmd_drum)

    va = sub.add_parser("verify-all", parents=[common], help="run every acceptance check and print a report")
    va.add_argument("--samples", type=_positive, default=500)
    va.add_argument("--pencil-conjugates", dest="pencil_conjugates", type=_positive, default=100)
    va.add_argument("--pencil-samples", dest="pencil_samples", type=_positive, default=1000)
    va.add_argument("--a-max", dest="a_max", type=int, default=4)
    va.add_argument("--radius", type=_positive, default=3)
    va.set_defaults(func=cmd_verify_all)
    return p


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = default_seed()
        if args.cmd == "drum" and args.action == "check" and not args.id:
            raise BadInput("drum check needs --id")
        return args.func(args)
    except BadInput as exc:
        print(f"pbl: bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (OSError, ValueError) as exc:
        print(f"pbl: bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except PblError as exc:
        print(f"pbl: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
