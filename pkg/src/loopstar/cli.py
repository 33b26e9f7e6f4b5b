"""Command-line front end.

Diagram files assign integer levels to curves; `bracket` and `star` treat
curves with level > 0 as the left factor and the rest as the right factor,
while `expect` stacks every curve at its declared level.  Rationals are
printed as p/q strings; floats appear only under --eval-beta.

Exit codes: 0 success, 1 domain error (validation, transversality), 2 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .coeff import (
    DEFAULT_ORDER,
    CoeffError,
    GroupSpec,
    closed_crossing_values,
    closed_form_strings,
    crossing_coeffs,
)
from .diagram import (
    DiagramError,
    FormalSum,
    canonical,
    monomial,
    parse_diagram,
)
from .goldman import bracket_poly
from .holonomy import HolonomyError, eval_formal, random_assignment
from .star import StarError, expect_diagram, star
from . import checks


class CliError(Exception):
    pass


def _group_from_args(args) -> GroupSpec:
    return GroupSpec(args.group, args.n)


def _default_order() -> int:
    env = os.environ.get("LOOPSTAR_ORDER")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"LOOPSTAR_ORDER must be an integer, got {env!r}")
    return DEFAULT_ORDER


def _load_diagram(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise CliError(str(e))
    d = parse_diagram(text)
    d.require_valid()
    return d


def _split_factors(d, group: GroupSpec, order: int) -> tuple[FormalSum, FormalSum]:
    conv = group.convention
    top = [cid for cid in d.curves if d.curves[cid].level > 0]
    bottom = [cid for cid in d.curves if d.curves[cid].level <= 0]
    f = FormalSum.of(monomial(canonical(d.loop_of(c).word, conv) for c in top), order)
    g = FormalSum.of(monomial(canonical(d.loop_of(c).word, conv) for c in bottom), order)
    return f, g


def _loop_str(loop) -> str:
    return " ".join(a.id + ("" if dd == 1 else "~") for a, dd in loop.word)


def _render_formal_sum_text(fs: FormalSum) -> str:
    if fs.is_zero():
        return "0\n"
    rows = []
    for m, c in fs:
        mono = " * ".join(f"W({_loop_str(l)})" for l in m) if m else "1"
        rows.append((mono, [str(x) for x in c.coeffs]))
    width = max(len(r[0]) for r in rows)
    lines = [f"{'monomial'.ljust(width)}  coefficients of h^0..h^{fs.order}"]
    for mono, cs in rows:
        lines.append(f"{mono.ljust(width)}  {' '.join(cs)}")
    return "\n".join(lines) + "\n"


def _formal_sum_payload(fs: FormalSum) -> list[dict]:
    items = []
    for m, c in fs:
        items.append(
            {
                "coeff": [str(x) for x in c.coeffs],
                "monomial": [[[a.id, "+" if dd == 1 else "-"] for a, dd in l.word] for l in m],
            }
        )
    return items


def _emit_formal_sum(fs: FormalSum, args, group: GroupSpec, meta: dict):
    if args.eval_beta is not None:
        d = meta.pop("_diagram", None)
        rng = np.random.default_rng(args.seed)
        assign = random_assignment(d, group, rng)
        value = eval_formal(fs, assign, args.eval_beta)
        meta["eval"] = {
            "beta": args.eval_beta,
            "seed": args.seed,
            "value": [value.real, value.imag],
        }
    else:
        meta.pop("_diagram", None)
    if args.format == "json":
        payload = {"group": str(group), "order": fs.order, "terms": _formal_sum_payload(fs)}
        payload.update(meta)
        print(json.dumps(payload, indent=2))
    else:
        sys.stdout.write(_render_formal_sum_text(fs))
        if "eval" in meta:
            ev = meta["eval"]
            print(f"value at beta={ev['beta']} (seed {ev['seed']}): {ev['value'][0]!r} + {ev['value'][1]!r}i")


def _cmd_coeffs(args) -> int:
    group = _group_from_args(args)
    order = args.order
    types = ["over", "under"] if args.type == "both" else [args.type]
    if args.format == "json":
        payload = {"group": str(group), "K": order, "tables": {}}
        for t in types:
            cc = crossing_coeffs(group, t, order)
            vf, sf = closed_form_strings(group, t)
            entry = {
                "virtual": [str(c) for c in cc.virtual.coeffs],
                "smooth": [str(c) for c in cc.smooth.coeffs],
                "closed_form": {"virtual": vf, "smooth": sf},
            }
            if args.eval_beta is not None:
                v, s = closed_crossing_values(group, t, args.eval_beta)
                entry["closed_form_at_beta"] = {
                    "beta": args.eval_beta,
                    "virtual": [v.real, v.imag],
                    "smooth": [s.real, s.imag],
                }
            payload["tables"][t] = entry
        print(json.dumps(payload, indent=2))
    else:
        for t in types:
            cc = crossing_coeffs(group, t, order)
            vf, sf = closed_form_strings(group, t)
            print(f"{group} {t}-crossing, order {order}")
            print(f"  virtual: {' '.join(str(c) for c in cc.virtual.coeffs)}   = {vf}")
            print(f"  smooth : {' '.join(str(c) for c in cc.smooth.coeffs)}   = {sf}")
            if args.eval_beta is not None:
                v, s = closed_crossing_values(group, t, args.eval_beta)
                print(f"  closed form at beta={args.eval_beta}: virtual={v.real!r}, smooth={s.real!r}")
    return 0


def _cmd_bracket(args) -> int:
    group = _group_from_args(args)
    d = _load_diagram(args.file)
    f, g = _split_factors(d, group, args.order)
    out = bracket_poly(d, f, g, group, form=args.form)
    _emit_formal_sum(out, args, group, {"operation": "bracket", "_diagram": d})
    return 0


def _cmd_star(args) -> int:
    group = _group_from_args(args)
    d = _load_diagram(args.file)
    f, g = _split_factors(d, group, args.order)
    out = star(d, f, g, group, args.order)
    _emit_formal_sum(out, args, group, {"operation": "star", "_diagram": d})
    return 0


def _cmd_expect(args) -> int:
    group = _group_from_args(args)
    d = _load_diagram(args.file)
    out = expect_diagram(d, group, args.order)
    _emit_formal_sum(out, args, group, {"operation": "expect", "_diagram": d})
    return 0


def _cmd_check(args) -> int:
    if args.suite == "all":
        results = checks.run_all(args.seed)
    elif args.suite in checks.SUITES:
        results = [checks.SUITES[args.suite](args.seed)]
    else:
        raise CliError(f"unknown check suite {args.suite!r}; choose from all, " + ", ".join(checks.SUITES))
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loopstar",
        description="Goldman brackets and stacked-diagram star products of Wilson loops",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", choices=["su2", "sl2r", "sl2c", "gln", "un"], default="su2")
    common.add_argument("--n", type=int, default=2, help="matrix size for gln/un")
    common.add_argument("--order", type=int, default=None, help="series truncation order K")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--eval-beta", type=float, default=None, dest="eval_beta")
    common.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("coeffs", parents=[common], help="print crossing coefficient tables")
    p.add_argument("--type", choices=["over", "under", "both"], default="both")
    p.set_defaults(fn=_cmd_coeffs)

    p = sub.add_parser("bracket", parents=[common], help="Poisson bracket of the two level groups")
    p.add_argument("--form", choices=["alt", "reversal"], default="alt")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_bracket)

    p = sub.add_parser("star", parents=[common], help="star product of the two level groups")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_star)

    p = sub.add_parser("expect", parents=[common], help="stacked expectation of all curves")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_expect)

    p = sub.add_parser("check", parents=[common], help="run property suites")
    p.add_argument("suite", nargs="?", default="all")
    p.set_defaults(fn=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.order is None:
        try:
            args.order = _default_order()
        except CliError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
    try:
        return args.fn(args)
    except (DiagramError, StarError, CoeffError, HolonomyError, CliError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
