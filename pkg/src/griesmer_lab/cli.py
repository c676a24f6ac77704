"""Command-line front end: construct, reproduce, oracle, bounds.

Exit status: 0 success, 1 validation error, 2 cap exceeded, 3 reproduction mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import vectorspace as vs
from .bounds import certify, delta, griesmer_sum
from .codes import default_workers
from .config import caps_override
from .constructions import Family1Params, Family2Params, Layout, auto_layout_family1, build
from .errors import GriesmerLabError, RangeError
from .field import gf
from .lrc import cm_report_params
from .qcombinatorics import FORMS, evaluate_form, form_arguments, summarize, typo_verdict
from .reference import reproduce
from .report import ANALYSES, analyze, render, text_table

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_MISMATCH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors are validation errors, not cap overruns
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def parse_range(text: str | None) -> list[int] | None:
    """'1-3,5' -> [1, 2, 3, 5]."""
    if not text:
        return None
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.update(range(int(lo), int(hi) + 1))
        elif part:
            out.add(int(part))
    return sorted(out)


def parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def read_subspaces(path: str | Path, q: int, k: int) -> list[vs.Subspace]:
    """One basis row per line, comma-separated integers; a blank line separates subspaces."""
    ctx = gf(q)
    blocks: list[list[list[int]]] = [[]]
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            if blocks[-1] and not line:
                blocks.append([])
            continue
        row = [int(x) for x in line.split(",")]
        if len(row) != k:
            raise RangeError(f"subspace row {row} has length {len(row)}, expected k = {k}")
        blocks[-1].append(row)
    subs = [vs.span(ctx, k, b) for b in blocks if b]
    for b, s in zip([b for b in blocks if b], subs):
        if s.dim != len(b):
            raise RangeError(f"basis rows {b} are linearly dependent")
    return subs


def params_from_args(a: argparse.Namespace) -> Family1Params | Family2Params:
    subs = tuple(read_subspaces(a.subspaces, a.q, a.k)) if a.subspaces else None
    if a.family in ("1", "1-pencil"):
        if a.u is None or (a.h is None and a.family == "1"):
            raise RangeError("family 1 needs --u and --h")
        u = int(a.u)
        if a.family == "1-pencil":
            return Family1Params(a.q, a.k, u, a.h if a.h is not None else 2 * a.q, Layout.PENCIL)
        if subs is not None:
            return Family1Params(a.q, a.k, u, a.h, Layout.USER, subs)
        layout = Layout(a.layout) if a.layout else auto_layout_family1(a.q, a.k, u, a.h)
        return Family1Params(a.q, a.k, u, a.h, layout)
    if a.u0 is None or a.u is None:
        raise RangeError("family 2 needs --u0 and --u (comma-separated)")
    us = parse_int_list(a.u)
    if subs is not None:
        return Family2Params(a.q, a.k, a.u0, us, Layout.USER, subs)
    return Family2Params(a.q, a.k, a.u0, us, Layout(a.layout) if a.layout else Layout.COMMON_BLOCK)


# -- commands --------------------------------------------------------------------------------

def cmd_construct(a: argparse.Namespace) -> int:
    p = params_from_args(a)
    code = build(p)
    analyses = [x.strip() for x in a.analyze.split(",") if x.strip()]
    rep = analyze(
        code,
        analyses,
        ghw_range=parse_range(a.ghw_range),
        sswd_range=parse_range(a.sswd_range),
        workers=a.workers,
        cm_r=a.cm_r,
    )
    _emit(render(rep, a.format), a.output)
    for name in rep.mismatches:
        print(f"closed-form mismatch: {name}: {rep.agreement[name].detail}", file=sys.stderr)
    return EXIT_OK


def cmd_reproduce(a: argparse.Namespace) -> int:
    rows = reproduce(a.only)
    if not rows:
        raise RangeError(f"no reproduction row matches {a.only!r}")
    if a.format == "json":
        text = json.dumps([r.as_dict() for r in rows], indent=2) + "\n"
    else:
        header = ["row", "expected", "obtained", "status", "seconds"]
        body = [[r.name, r.expected, r.obtained or r.error, "PASS" if r.passed else "FAIL", f"{r.seconds:.2f}"] for r in rows]
        if a.format == "csv":
            import csv
            import io

            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            w.writerows(body)
            text = buf.getvalue()
        else:
            passed = sum(r.passed for r in rows)
            text = text_table(header, body) + f"\n{passed}/{len(rows)} rows pass\n"
    _emit(text, a.output)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_MISMATCH


def cmd_oracle(a: argparse.Namespace) -> int:
    if a.sweep:
        summaries = [summarize(a.form, q, a.kmax) for q in a.qs]
        body = [[s.form, s.q, s.cases, s.mismatches, s.alternative_cases or "", s.alternative_mismatches if s.alternative_cases else ""] for s in summaries]
        text = text_table(["form", "q", "cases", "mismatches", "alt cases", "alt mismatches"], body) + "\n"
        if a.form in ("inside-common-sum", "meeting-common-pair"):
            text += typo_verdict(summaries) + "\n"
        _emit(text, a.output)
        return EXIT_OK if all(s.mismatches == 0 for s in summaries) else EXIT_MISMATCH
    q = a.q
    params = {n: getattr(a, n) for n in form_arguments(a.form)}
    row = evaluate_form(a.form, q, **params)
    lines = [
        f"form: {row.form}  q={row.q}  " + " ".join(f"{k}={v}" for k, v in row.params),
        f"closed form: {row.closed}",
        f"oracle:      {row.oracle}",
        f"verdict:     {'Match' if row.match else 'Mismatch'}",
    ]
    if row.alternative is not None:
        lines.append(f"competing printed variant: {row.alternative} ({'Match' if row.alternative_match else 'Mismatch'})")
    _emit("\n".join(lines) + "\n", a.output)
    return EXIT_OK if row.match else EXIT_MISMATCH


def cmd_bounds(a: argparse.Namespace) -> int:
    cert = certify(a.q, a.n, a.k, a.d)
    cm = cm_report_params(a.q, a.n, a.k, a.d, a.r)
    if a.format == "json":
        text = json.dumps({"certificate": cert.as_dict(), "cm": cm.as_dict()}, indent=2) + "\n"
    else:
        rows = [
            ["g_q(k,d)", griesmer_sum(a.q, a.k, a.d)],
            ["Griesmer defect", cert.griesmer_defect],
            ["delta_q(k,d,d+1)", delta(a.q, a.k, a.d)],
            ["verdict", cert.verdict.value],
            ["CM bound (upper)", cm.bound_upper],
            ["CM defect (upper)", cm.cm_defect_upper],
            ["CM verdict", cm.label],
        ]
        text = f"[{a.n},{a.k},{a.d}]_{a.q}, r = {a.r}\n" + text_table(["quantity", "value"], rows) + "\n"
        text += text_table(["t", "t*r + kopt_upper(n - t(r+1), d)"], [[t, v] for t, v in sorted(cm.values.items())]) + "\n"
    _emit(text, a.output)
    return EXIT_OK


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# -- parser --------------------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--output", help="write to this file instead of standard output")
    p.add_argument("--workers", type=int, default=default_workers(), help="processes for subspace enumeration")
    p.add_argument("--max-qk", type=int, help="cap on q^k for codeword enumeration")
    p.add_argument("--max-subspaces", type=int, help="cap on subspaces enumerated per dimension")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="griesmer-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a code and analyze it")
    c.add_argument("--family", choices=("1", "1-pencil", "2"), required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--u", help="u for family 1; comma-separated u_1,...,u_h for family 2")
    c.add_argument("--h", type=int)
    c.add_argument("--u0", type=int)
    c.add_argument("--layout", choices=[x.value for x in Layout if x is not Layout.USER])
    c.add_argument("--subspaces", help="file of user-supplied subspace bases")
    c.add_argument("--analyze", default="wd,optimality", help=f"comma list from {','.join(ANALYSES)}")
    c.add_argument("--ghw-range", help="e.g. 1-3,5 (default: all r)")
    c.add_argument("--sswd-range", help="e.g. 1-2 (default: 1..k-1)")
    c.add_argument("--cm-r", type=int, default=2, help="locality used in the CM bound")
    _common(c)
    c.set_defaults(func=cmd_construct, format="json")

    r = sub.add_parser("reproduce", help="rebuild the published table rows and examples")
    r.add_argument("--only", help="substring filter on row labels, e.g. 243")
    _common(r)
    r.set_defaults(func=cmd_reproduce)

    o = sub.add_parser("oracle", help="compare a subspace-counting closed form with brute force")
    o.add_argument("--form", choices=FORMS, required=True)
    o.add_argument("--q", type=int, default=2)
    for name in ("k", "u0", "u1", "u2", "l", "t", "v0", "v1", "v2"):
        o.add_argument(f"--{name}", type=int)
    o.add_argument("--sweep", action="store_true", help="exhaustive sweep instead of one tuple")
    o.add_argument("--kmax", type=int, default=5)
    o.add_argument("--qs", type=parse_int_list, default=(2, 3), help="fields for --sweep")
    _common(o)
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bounds", help="Griesmer and CM quantities for given [n,k,d]_q")
    for name in ("q", "n", "k", "d"):
        b.add_argument(f"--{name}", type=int, required=True)
    b.add_argument("--r", type=int, default=2)
    _common(b)
    b.set_defaults(func=cmd_bounds)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    caps = {k: v for k, v in (("max_qk", args.max_qk), ("max_subspaces", args.max_subspaces)) if v is not None}
    try:
        with caps_override(**caps):
            return args.func(args)
    except GriesmerLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
