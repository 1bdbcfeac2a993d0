"""Command-line front end: ``trident {triple,build,sieve,certify,reproduce}``.

Exit status is 0 on success, 1 on a failed check or a degenerate input, and
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .arith import rat, rat_str


def _rat_arg(s: str) -> Fraction:
    try:
        return rat(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


# ---------------------------------------------------------------------------


def cmd_triple(args) -> int:
    from .triples import validate_triple

    T = validate_triple(*args.values)
    _dump({"triple": T.to_json(), "roots": [rat_str(v) for v in (T.r, T.s, T.t)]})
    return 0


def cmd_build(args) -> int:
    from .triples import TripleParams, cuboid_params, induced_curve, lasic_triple

    out: dict = {}
    if args.uv:
        from .family_uv import uv_curve, uv_to_t, uv_to_triple

        u, v = args.uv
        T = uv_to_triple((u, v))
        p = uv_to_t((u, v))
        fam = uv_curve((u, v))
        out["uv"] = [rat_str(u), rat_str(v)]
        out["family_curve"] = fam.curve.to_json()
        out["sections"] = {k: P.to_json() for k, P in fam.sections.items()}
    else:
        p = TripleParams(*args.t) if args.t else cuboid_params(args.cuboid)
        T = lasic_triple(p)
    ind = induced_curve(T)
    out["t"] = [rat_str(p.t1), rat_str(p.t2), rat_str(p.t3)]
    out["triple"] = T.to_json()
    out["induced_curve"] = ind.curve.to_json()
    out["split"] = ind.split.to_json()
    out["points"] = {"P": ind.P.to_json(), "S": ind.S.to_json()}
    _dump(out)
    return 0


def cmd_sieve(args) -> int:
    from .sieve import StageConfig, grid_cells, sieve_grid

    cfg = StageConfig(n1=args.n1, n2=args.n2, s1_min=args.s1_min, s2_min=args.s2_min,
                      certify=args.certify)
    cells = grid_cells(args.u_num_max, args.u_den_max, args.v_num_max, args.v_den_max,
                       diag=args.diag)
    for rec in sieve_grid(cells, cfg, threads=args.threads):
        sys.stdout.write(rec.to_json() + "\n")
    return 0


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def cmd_certify(args) -> int:
    from .curve import CurveQ, PointQ, SplitCurve
    from .descent import independence_bound

    data = _load_json(args.curve)
    E = SplitCurve.from_json(data) if "roots" in data else CurveQ.from_json(data)
    raw = _load_json(args.points)
    if isinstance(raw, dict):
        raw = raw["points"]
    pts = [PointQ.from_json(p) for p in raw]
    cert = independence_bound(E, pts, curve_id=data.get("id", ""))
    _dump(cert.to_json())
    if args.min_bound is not None and cert.bound < args.min_bound:
        sys.stderr.write(f"bound {cert.bound} is below the required {args.min_bound}\n")
        return 1
    return 0


def cmd_reproduce(args) -> int:
    from .reproduce import reproduce

    reports = reproduce(args.group)
    for rep in reports:
        if args.json:
            sys.stdout.write(json.dumps(rep.to_json(timing=not args.no_timing)) + "\n")
            continue
        sys.stdout.write(f"{'PASS' if rep.passed else 'FAIL'} {rep.group}\n")
        for c in rep.checks:
            line = f"  {c.status} {c.name}"
            if not args.no_timing:
                line += f" ({c.seconds:.2f}s)"
            sys.stdout.write(line + "\n")
            if c.status != "PASS":
                sys.stdout.write(f"    {json.dumps(c.witness)}\n")
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Lets negative fractions such as -95/33 through as positional values."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="trident", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("triple", help="work with a rational Diophantine triple")
    tsub = t.add_subparsers(dest="action", required=True)
    tv = tsub.add_parser("validate", help="check that ab+1, ac+1, bc+1 are squares")
    tv.add_argument("values", nargs=3, type=_rat_arg, metavar="X")
    tv.set_defaults(func=cmd_triple)

    b = sub.add_parser("build", help="construct a triple and its induced curve")
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--uv", nargs=2, type=_rat_arg, metavar=("U", "V"))
    g.add_argument("--t", nargs=3, type=_rat_arg, metavar=("T1", "T2", "T3"))
    g.add_argument("--cuboid", type=_rat_arg, metavar="M")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("sieve", help="Mestre-Nagao search over a (u, v) grid, JSON Lines out")
    for name in ("u-num-max", "u-den-max", "v-num-max", "v-den-max"):
        s.add_argument(f"--{name}", type=int, default=3)
    s.add_argument("--diag", action="store_true", help="only cells with u = v")
    s.add_argument("--n1", type=int, default=100)
    s.add_argument("--n2", type=int, default=1000)
    s.add_argument("--s1-min", type=float, default=float("-inf"))
    s.add_argument("--s2-min", type=float, default=float("-inf"))
    s.add_argument("--certify", action="store_true")
    s.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: TRIDENT_THREADS or 1)")
    s.set_defaults(func=cmd_sieve)

    c = sub.add_parser("certify", help="rank lower bound for points on a curve")
    c.add_argument("--curve", required=True, help='JSON: {"ainvs": [...]} or {"roots": [...]}')
    c.add_argument("--points", required=True, help='JSON list of ["x", "y"] pairs')
    c.add_argument("--min-bound", type=int, default=None)
    c.set_defaults(func=cmd_certify)

    r = sub.add_parser("reproduce", help="re-check the published constants")
    r.add_argument("group", choices=["uv21", "rank11", "rank12", "rank10", "family7",
                                     "family7b", "quartics", "identities", "all"])
    r.add_argument("--json", action="store_true")
    r.add_argument("--no-timing", action="store_true")
    r.set_defaults(func=cmd_reproduce)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
