"""Command-line entry point: ``fuzzyecc <command> ...``.

Exit status is 0 on success, 2 on bad input, 3 when an internal invariant
check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from importlib import resources
from pathlib import Path

from . import adaptive, fuzzy, reports
from .curve import CurveError, CurveParams, CurvePoint, CurveSpec, enumerate_points, load_curve, parse_curve_text
from .field import FieldError, make_field
from .recoding import ones_complement_recode, predict_cost, sliding_windows
from .scalarmul import STRATEGIES, mul_double_add, multiply, precompute_table

BUNDLED_CURVES = ("small23", "demo64", "secp160r1")

EXIT_OK, EXIT_INVALID, EXIT_INVARIANT = 0, 2, 3


class InvariantViolation(RuntimeError):
    pass


def resolve_curve(name: str) -> CurveSpec:
    if name in BUNDLED_CURVES:
        text = resources.files("fuzzyecc.data").joinpath(f"{name}.curve").read_text()
        return parse_curve_text(text, name=name)
    path = Path(name)
    if not path.exists():
        raise CurveError(f"no curve file {name!r} (bundled: {', '.join(BUNDLED_CURVES)})")
    return load_curve(path)


def resolve_rules(name: str) -> fuzzy.RuleBase:
    if name in ("full26", "dominant9"):
        return fuzzy.bundled_rules(name)
    path = Path(name)
    if not path.exists():
        raise ValueError(f"no rule file {name!r} (bundled: full26, dominant9)")
    return fuzzy.load_rules(path)


def parse_int(text: str) -> int:
    text = text.strip()
    try:
        return int(text, 16) if text.lower().startswith(("0x", "-0x")) else int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def fmt_point(P: CurvePoint) -> str:
    if P.is_infinity:
        return "O (point at infinity)"
    return f"(0x{P.x.value:x}, 0x{P.y.value:x})"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, newline="")
    else:
        sys.stdout.write(text)


def _base_point(spec: CurveSpec) -> CurvePoint:
    if spec.base is None:
        raise CurveError(f"curve {spec.name or '(unnamed)'} has no base point (gx, gy)")
    return spec.base


def _checked_multiply(k, P, E, strategy, psize, table=None):
    Q, rep = multiply(k, P, E, strategy, psize, table)
    ref, _ = mul_double_add(k, P, E)
    if Q != ref:
        raise InvariantViolation(f"{strategy} result {Q!r} disagrees with double-and-add {ref!r}")
    if strategy in ("window", "ones-complement") and k > 0:
        recode = sliding_windows if strategy == "window" else ones_complement_recode
        pred = predict_cost(recode(k, psize))
        if (rep.doublings, rep.additions) != (pred.doublings, pred.additions):
            raise InvariantViolation("executed operation counts differ from the recoding's prediction")
    return Q, rep


# -- commands --------------------------------------------------------------


def cmd_mul(args) -> int:
    spec = resolve_curve(args.curve)
    E = spec.curve
    P = spec.curve.point(*args.point) if args.point else _base_point(spec)
    table = None
    if args.strategy in ("window", "ones-complement"):
        table, table_rep = precompute_table(P, args.psize, E)
    Q, rep = _checked_multiply(args.k, P, E, args.strategy, args.psize, table)
    label = args.strategy + (f" (psize {args.psize})" if table is not None else "")
    print(f"curve     {spec.name}: {E!r}")
    print(f"point     {fmt_point(P)}")
    print(f"k         {args.k}")
    print(f"strategy  {label}")
    print(f"result    {fmt_point(Q)}")
    print(f"cost      doublings={rep.doublings} additions={rep.additions}")
    if table is not None:
        print(
            f"table     size={rep.table_size} paper_precomp={rep.paper_precomp} "
            f"build: doublings={table_rep.doublings} additions={table_rep.additions}"
        )
    if args.chain:
        print("chain     " + ", ".join(f"{m}P" for m in rep.chain))
    if args.timing:
        rows = reports.timing_rows(P, E, args.strategy, args.psize, seed=args.seed)
        print(reports.format_timing(rows, args.strategy), end="")
    return EXIT_OK


def cmd_table(args, which: int) -> int:
    rows = reports.table2_rows(args.k) if which == 2 else reports.table3_rows(args.k)
    _emit(reports.rows_to_csv(rows), args.out)
    return EXIT_OK


def cmd_modmul(args) -> int:
    field = make_field(args.m)
    if args.x < 0 or args.y < 0:
        raise ValueError("X and Y must be non-negative")
    text, tr = reports.format_modmul(args.x, args.y, field, args.t)
    if tr.reduced.value != (args.x * args.y) % args.m:
        raise InvariantViolation("repeated-subtraction product disagrees with X*Y mod m")
    sys.stdout.write(text)
    return EXIT_OK


_INPUT_ALIASES = {
    "storage": "storage_room",
    "storage_room": "storage_room",
    "storageroom": "storage_room",
    "pre": "pre_computing",
    "precomputing": "pre_computing",
    "pre_computing": "pre_computing",
    "doubling": "doubling",
}


def _input_name(tok: str) -> str:
    try:
        return _INPUT_ALIASES[tok.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown controller input {tok!r}") from None


def cmd_surface(args) -> int:
    rb = resolve_rules(args.rules)
    if args.half_weights:
        rb = rb.with_weights({i: 0.5 for i in fuzzy.HALF_WEIGHT_RULES if i <= len(rb)})
    fixed = None
    if args.fix:
        name, _, value = args.fix.partition("=")
        fixed = (_input_name(name), float(value))
    free = [_input_name(t) for t in args.free.split(",")] if args.free else None
    config = fuzzy.ControllerConfig(implication=args.implication)
    grid = fuzzy.surface_grid(rb, fixed, args.resolution, free, config)
    _emit(grid.to_csv(), args.out)
    print(f"# {grid.x_name} vs {grid.y_name}, {grid.held[0]} = {grid.held[1]}", file=sys.stderr)
    return EXIT_OK


def _read_sim_config(path: str) -> dict:
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"bad config line {raw!r}")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def cmd_simulate(args) -> int:
    spec = resolve_curve(args.curve)
    P = _base_point(spec)
    settings = _read_sim_config(args.config) if args.config else {}
    capacity = args.capacity if args.capacity is not None else int(settings.get("capacity", 4096))
    alpha = args.alpha if args.alpha is not None else float(settings.get("alpha", 0.2))
    rules = args.rules or settings.get("mode", "full26")
    psize = args.initial_psize if args.initial_psize is not None else int(settings.get("initial_psize", 4))
    fixed = args.fixed or settings.get("adaptive", "true").lower() in ("0", "false", "no")
    rb = resolve_rules(rules)
    cfg = adaptive.SimConfig(capacity, alpha, rb.mode, psize, adaptive=not fixed)
    workload = adaptive.load_workload(args.workload)
    points, rep, _ = adaptive.simulate(workload, P, spec.curve, cfg, rules=rb)
    for k, Q in zip(workload, points):
        if Q != mul_double_add(k, P, spec.curve)[0]:
            raise InvariantViolation(f"simulation result for k={k} disagrees with double-and-add")

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(
        ["step", "k", "psize", "doublings", "additions", "table_doublings", "table_additions",
         "storage_room", "pre_computing", "doubling", "crisp", "action", "forced"]
    )
    for i, r in enumerate(rep.records):
        d = r.decision
        w.writerow([
            i, r.k, r.psize, r.cost.doublings, r.cost.additions,
            r.table_cost.doublings if r.table_cost else 0,
            r.table_cost.additions if r.table_cost else 0,
            repr(r.inputs.storage_room), repr(r.inputs.pre_computing), repr(r.inputs.doubling),
            repr(d.crisp) if d else "", d.action.value if d else "", int(r.forced),
        ])
    _emit(buf.getvalue(), args.out)
    t = rep.totals
    print(
        f"# {len(workload)} steps, capacity {capacity} B, {'fixed' if fixed else rb.mode}: "
        f"doublings={t['doublings']} additions={t['additions']} "
        f"table_doublings={t['table_doublings']} table_additions={t['table_additions']} "
        f"rebuilds={t['rebuilds']} final_psize={rep.records[-1].psize if rep.records else psize}",
        file=sys.stderr,
    )
    return EXIT_OK


def _group_order(spec: CurveSpec) -> int | None:
    if spec.curve.p < 1 << 12:
        return len(enumerate_points(spec.curve))
    return None


def cmd_ecdh_demo(args) -> int:
    spec = resolve_curve(args.curve)
    G = _base_point(spec)
    E: CurveParams = spec.curve
    rng = random.Random(args.seed)
    bound = _group_order(spec) or E.p
    table = precompute_table(G, args.psize, E)[0] if args.strategy in ("window", "ones-complement") else None

    def mul(k, P, tab=None):
        return _checked_multiply(k, P, E, args.strategy, args.psize, tab)

    def cost(rep):
        return f"[doublings={rep.doublings} additions={rep.additions}]"

    a = rng.randrange(1, bound)
    b = rng.randrange(1, bound)
    A, rep_a = mul(a, G, table)
    B, rep_b = mul(b, G, table)
    S_a, rep_sa = mul(a, B)
    S_b, rep_sb = mul(b, A)
    lines = [
        f"curve     {spec.name}: {E!r}",
        f"base      {fmt_point(G)}",
        f"strategy  {args.strategy}" + (f" (psize {args.psize})" if table is not None else ""),
        f"seed      {args.seed}",
        f"alice  private  0x{a:x}",
        f"alice  public   {fmt_point(A)} {cost(rep_a)}",
        f"bob    private  0x{b:x}",
        f"bob    public   {fmt_point(B)} {cost(rep_b)}",
        f"alice  shared   {fmt_point(S_a)} {cost(rep_sa)}",
        f"bob    shared   {fmt_point(S_b)} {cost(rep_sb)}",
    ]
    if S_a != S_b:
        raise InvariantViolation("shared secrets differ")
    shared_x = "O" if S_a.is_infinity else f"0x{S_a.x.value:x}"
    lines.append(f"match     yes, shared x = {shared_x}")
    print("\n".join(lines))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def _point_arg(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("point must be 'x,y'")
    return parse_int(parts[0]), parse_int(parts[1])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fuzzyecc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mul", help="multiply a curve point by a scalar under one strategy")
    m.add_argument("--curve", default="small23", help="curve file or bundled name")
    m.add_argument("--k", type=parse_int, required=True)
    m.add_argument("--point", type=_point_arg, help="x,y (default: the curve's base point)")
    m.add_argument("--strategy", choices=STRATEGIES, default="binary")
    m.add_argument("--psize", type=int, default=4)
    m.add_argument("--chain", action="store_true", help="print accumulator multiples")
    m.add_argument("--timing", action="store_true", help="append a wall-clock timing table")
    m.add_argument("--seed", type=int, default=0)
    m.set_defaults(func=cmd_mul)

    for which in (2, 3):
        t = sub.add_parser(f"table{which}", help=f"reproduce table {'II' if which == 2 else 'III'} as CSV")
        t.add_argument("--k", type=parse_int, default=reports.TABLE_K)
        t.add_argument("--out")
        t.set_defaults(func=lambda a, w=which: cmd_table(a, w))

    mm = sub.add_parser("modmul", help="trace the repeated-subtraction modular multiply")
    mm.add_argument("x", type=parse_int)
    mm.add_argument("y", type=parse_int)
    mm.add_argument("m", type=parse_int)
    mm.add_argument("--t", type=parse_int)
    mm.set_defaults(func=cmd_modmul)

    s = sub.add_parser("surface", help="controller output over two inputs as CSV")
    s.add_argument("--rules", default="full26", help="full26, dominant9, or a rule file")
    s.add_argument("--fix", help="hold one input, e.g. storage=0.4")
    s.add_argument("--free", help="two free inputs when nothing is fixed, e.g. storage,doubling")
    s.add_argument("--resolution", type=int, default=51)
    s.add_argument("--implication", choices=("product", "clip"), default="product")
    s.add_argument("--half-weights", action="store_true", help="weight 0.5 on the reweighting-experiment rules")
    s.add_argument("--out")
    s.set_defaults(func=cmd_surface)

    sim = sub.add_parser("simulate", help="closed-loop window sizing over a workload")
    sim.add_argument("--curve", default="secp160r1")
    sim.add_argument("--workload", required=True, help="one scalar per line")
    sim.add_argument("--config", help="key=value lines: capacity, alpha, mode, initial_psize, adaptive")
    sim.add_argument("--capacity", type=int)
    sim.add_argument("--alpha", type=float)
    sim.add_argument("--rules", help="full26, dominant9, or a rule file")
    sim.add_argument("--initial-psize", type=int)
    sim.add_argument("--fixed", action="store_true", help="disable the controller")
    sim.add_argument("--out", help="trajectory CSV path (default stdout)")
    sim.set_defaults(func=cmd_simulate)

    e = sub.add_parser("ecdh-demo", help="toy Diffie-Hellman exchange with cost reports")
    e.add_argument("--curve", default="secp160r1")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--strategy", choices=STRATEGIES, default="window")
    e.add_argument("--psize", type=int, default=4)
    e.set_defaults(func=cmd_ecdh_demo)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (FieldError, CurveError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
