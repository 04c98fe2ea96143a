"""Command-line interface.

Exit codes: 0 success (or "not distinguished"), 10 "distinguished",
1 invalid input or invariant drift, 2 guard or cap refusal.
"""

from __future__ import annotations

import argparse
import json
import sys

from .alexander import build_presentation, reduce_tau
from .config import CONFIG_ENV, RunConfig, load_config
from .diagram import DiagramError, is_alternating, make_alternating, render, validate
from .distinguish import PermutationGuardError, TauFingerprint, compare, link_fingerprint
from .fixtures import load_diagram
from .fuzz import fuzz
from .modulealg import CapExceeded
from .quandle import AffineQuandleSpec, brute_force_colorings, count_colorings

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_REFUSED = 2
EXIT_DISTINGUISHED = 10

BRUTE_LIMIT = 10**6


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _summary(f: TauFingerprint) -> str:
    rows = [
        ("components", str(f.mu)),
        ("reduced module", f"rank {f.rational.rank}, factors {f.rational.factor_strings() or '[]'}"),
        ("alexander polynomials", ", ".join(f.deltas)),
        ("nu group", f.nu.group_string()),
        ("nu torsion image", " ".join("".join(map(str, v)) or "()" for v in sorted(f.nu.torsion_image))),
        ("colorings", " ".join(f"({n},{u}):{c}" for n, u, c in f.colorings)),
        ("orbit count", str(f.orbits)),
        ("displacement", f"rank {f.displacement.rank}, factors {f.displacement.factor_strings() or '[]'}"),
        ("seed", str(f.seed)),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def cmd_invariants(args, config: RunConfig) -> int:
    d = load_diagram(args.input)
    f = link_fingerprint(d, config)
    if args.json:
        _emit(f.to_json())
    else:
        print(_summary(f))
    return EXIT_OK


def cmd_distinguish(args, config: RunConfig) -> int:
    d1 = load_diagram(args.first)
    d2 = load_diagram(args.second)
    report = compare(d1, d2, args.permutations, config)
    if args.table:
        print(report.table())
    else:
        out = report.to_json()
        out["seed"] = config.seed
        _emit(out)
    return EXIT_DISTINGUISHED if report.distinguished else EXIT_OK


def cmd_colorings(args, config: RunConfig) -> int:
    d = load_diagram(args.input)
    spec = AffineQuandleSpec(args.modulus, args.unit)
    count = count_colorings(d, spec)
    out = {"n": spec.n, "u": spec.u, "count": count, "seed": config.seed}
    if args.brute:
        size = spec.n ** len(d.arcs)
        if size > BRUTE_LIMIT:
            print(
                f"brute force needs {size} assignments, above the limit of {BRUTE_LIMIT}",
                file=sys.stderr,
            )
            return EXIT_REFUSED
        brute = brute_force_colorings(d, spec)
        out["brute"] = brute
        if brute != count:
            _emit(out)
            print(f"Smith count {count} disagrees with enumeration {brute}", file=sys.stderr)
            return EXIT_INVALID
    if args.json or args.brute:
        _emit(out)
    else:
        print(count)
    return EXIT_OK


def _drift(before: TauFingerprint, after: TauFingerprint) -> list[str]:
    names = [
        "mu",
        "rational",
        "deltas",
        "nu",
        "ideals",
        "colorings",
        "orbits",
        "displacement",
    ]
    return [n for n in names if getattr(before, n) != getattr(after, n)]


def cmd_alternating(args, config: RunConfig) -> int:
    d = load_diagram(args.input)
    out = make_alternating(d)
    if not is_alternating(out):
        print("output does not have alternating writhes", file=sys.stderr)
        return EXIT_INVALID
    drift = _drift(link_fingerprint(d, config), link_fingerprint(out, config))
    if drift:
        print(f"invariant drift: {', '.join(drift)}", file=sys.stderr)
        return EXIT_INVALID
    text = render(out)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        print(
            f"wrote {args.output}: {len(out.crossings)} crossings, alternating writhes, bundle unchanged"
        )
    else:
        print(text)
    return EXIT_OK


def cmd_fuzz(args, config: RunConfig) -> int:
    d = load_diagram(args.input)
    seed = config.seed if args.seed is None else args.seed
    before = link_fingerprint(d, config)
    result = fuzz(d, args.moves, seed)
    after = link_fingerprint(result.diagram, config)
    drift = _drift(before, after)
    print(f"seed {seed}, {len(result.moves)} moves, {len(result.diagram.crossings)} crossings")
    if drift:
        print(f"invariant drift: {', '.join(drift)}", file=sys.stderr)
        return EXIT_INVALID
    print("bundle stable")
    return EXIT_OK


def cmd_validate(args, config: RunConfig) -> int:
    d = load_diagram(args.input, check=False)
    problems = validate(d)
    for p in problems:
        print(p)
    if not problems:
        print("valid")
    return EXIT_INVALID if problems else EXIT_OK


def cmd_render(args, config: RunConfig) -> int:
    d = load_diagram(args.input)
    if args.presentation == "diagram":
        print(render(d))
    else:
        p = build_presentation(d)
        if args.presentation == "reduced":
            p = reduce_tau(p)
        print(p.render())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alexlink",
        description="Exact Alexander-module and medial-quandle invariants of link diagrams.",
        epilog=f"Inputs are JSON or PD files, inline text, or fixture:NAME. "
        f"Set {CONFIG_ENV} to a JSON file to override the run configuration.",
    )
    parser.add_argument("--config", help="path to a JSON run configuration")
    parser.add_argument("--seed", dest="config_seed", type=int, help="override the configured seed")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="print the invariant bundle")
    p.add_argument("input")
    p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("distinguish", help="compare two links")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--permutations", action="store_true", help="allow relabelling components")
    p.add_argument("--table", action="store_true", help="human-readable table instead of JSON")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("colorings", help="count affine quandle colorings")
    p.add_argument("input")
    p.add_argument("-n", "--modulus", type=int, required=True)
    p.add_argument("-u", "--unit", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="also enumerate and compare")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_colorings)

    p = sub.add_parser("alternating", help="rewrite to a diagram with alternating writhes")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_alternating)

    p = sub.add_parser("fuzz", help="apply random Reidemeister moves and recheck the bundle")
    p.add_argument("input")
    p.add_argument("--moves", type=int, default=20)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("validate", help="list diagram violations")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("render", help="print a diagram or its presentation as JSON")
    p.add_argument("input")
    p.add_argument(
        "--presentation",
        choices=["diagram", "multivariate", "reduced"],
        default="diagram",
    )
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        if args.config_seed is not None:
            config = RunConfig.from_json({**config.to_json(), "seed": args.config_seed})
        return args.func(args, config)
    except (PermutationGuardError, CapExceeded) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (DiagramError, KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
