"""Command-line entry point."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from .analysis import block_length, f_max, fit_to_blocks, martingale_trace, nonpositivity_lhs, variance_increments
from .bukhma import BukhMaCode, build_code, inner_list_decode
from .channel import RNG_NAME, apply_script, random_script, script_cost
from .concat import concat_decode, concat_encode, params_from_json
from .errors import DomainError
from .experiments import adversary_experiment, list_size_experiment
from .region import boundary_line, contains, region_vertices
from .report import dumps, heatmap_svg, region_svg
from .seqcore import Seq, fmt_rational, parse_rational


def default_seed() -> int:
    return int(os.environ.get("INSDEL_LAB_SEED", "0"))


def _read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _emit(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_seq(path) -> Seq:
    obj = _read_json(path)
    if isinstance(obj, dict) and "received" in obj:
        obj = obj["received"]
    return Seq.from_json(obj)


def _load_code(args) -> BukhMaCode:
    if args.code:
        return BukhMaCode.from_json(_read_json(args.code))
    if args.n is None or args.code_eps is None:
        raise DomainError("give --code or both --n and --code-eps")
    return build_code(args.n, parse_rational(args.code_eps), args.q)


# ---------------------------------------------------------------------------
# subcommands

def cmd_encode_bukhma(args):
    code = build_code(args.n, parse_rational(args.eps), args.q)
    out = {"code": code.to_json(), "index": args.index, "codeword": code.codeword(args.index).to_json()}
    if args.format == "text":
        _emit(args, str(code.codeword(args.index)) + "\n")
    else:
        _emit(args, dumps(out))


def cmd_encode_concat(args):
    params = params_from_json(_read_json(args.params))
    x = concat_encode(params, args.message)
    _emit(args, dumps({"message": args.message, "codeword": x.to_json()}))


def cmd_corrupt(args):
    obj = _read_json(args.input)
    if isinstance(obj, dict) and "codeword" in obj:
        obj = obj["codeword"]
    x = Seq.from_json(obj)
    seed = default_seed() if args.seed is None else args.seed
    s = random_script(x, args.deletions, args.insertions, seed)
    y = apply_script(x, s)
    D, I, w = script_cost(s, 1)
    _emit(args, dumps({"seed": seed, "rng": RNG_NAME, "script": s.to_json(), "received": y.to_json(),
                       "cost": {"D": D, "I": I, "weighted": w}}))


def cmd_decode_inner(args):
    code = _load_code(args)
    w = _read_seq(args.input)
    eps = parse_rational(args.eps) if args.eps else code.eps
    rep = inner_list_decode(w, code, eps)
    out = rep.to_json()
    out["code"] = code.to_json()
    out["eps"] = fmt_rational(eps)
    _emit(args, dumps(out))


def cmd_decode_concat(args):
    params = params_from_json(_read_json(args.params))
    y = _read_seq(args.input)
    msgs = concat_decode(y, params)
    _emit(args, dumps({"messages": msgs}))


def cmd_region(args):
    reg = region_vertices(args.q)
    points = []
    for p in args.point or []:
        g, d = p.split(",")
        points.append((parse_rational(g), parse_rational(d)))
    fmt = args.emit or args.format
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["gamma", "delta"])
        for g, d in reg.vertices:
            wr.writerow([fmt_rational(g), fmt_rational(d)])
        _emit(args, buf.getvalue())
    elif fmt == "svg":
        _emit(args, region_svg(reg, points))
    else:
        lines = []
        for i in range(1, args.q):
            a, b, c = boundary_line(args.q, i)
            lines.append({"i": i, "a": fmt_rational(a), "b": fmt_rational(b), "c": fmt_rational(c)})
        queries = []
        for g, d in points:
            inside, z = contains(args.q, g, d, parse_rational(args.shrink))
            queries.append({"gamma": fmt_rational(g), "delta": fmt_rational(d), "inside": inside, "z": z})
        _emit(args, dumps({"q": args.q, "vertices": [[fmt_rational(g), fmt_rational(d)] for g, d in reg.vertices],
                           "lines": lines, "queries": queries}))


def _finish_report(args, report, started):
    report["timings"] = {"wall_seconds": round(time.perf_counter() - started, 3)}
    _emit(args, dumps(report))


def cmd_exp_list_size(args):
    t0 = time.perf_counter()
    rep = list_size_experiment(args.n, parse_rational(args.eps), args.q, args.max_len, args.grid_steps,
                               args.workers)
    if args.format == "svg":
        h = rep["heatmap"]
        _emit(args, heatmap_svg(h["grid"], h["gammas"], h["deltas"],
                                f"max list size, n={args.n}, eps={args.eps}, |w|<={args.max_len}"))
    else:
        _finish_report(args, rep, t0)


def cmd_exp_martingale(args):
    t0 = time.perf_counter()
    v = _read_seq(args.v)
    eps = parse_rational(args.eps)
    periods = [int(p) for p in args.periods.split(",")]
    v, note = fit_to_blocks(v, block_length(periods[0], eps), args.pad_period)
    tr = martingale_trace(v, periods, eps, args.n)
    rep = {"config": {"experiment": "martingale", "eps": fmt_rational(eps), "periods": periods, "n": args.n,
                      "length": len(v), "divisibility": note},
           "trials": tr.to_json()["levels"], "summary": {}}
    if v.q == 2:
        rep["summary"]["variance_increments"] = [str(d) for d in variance_increments(tr)]
        rep["summary"]["reference_increment"] = str(eps ** 3 / 1200)
    _finish_report(args, rep, t0)


def cmd_exp_adversary(args):
    t0 = time.perf_counter()
    seed = default_seed() if args.seed is None else args.seed
    rep = adversary_experiment(args.q, args.n, args.i, args.trials, seed, args.alpha, args.workers)
    _finish_report(args, rep, t0)


def cmd_oracle_fmax(args):
    F, P, m = parse_rational(args.F), parse_rational(args.P), parse_rational(args.m)
    _emit(args, dumps({"F": args.F, "P": args.P, "m": args.m, "q": args.q, "f_max": f_max(F, P, m, args.q)}))


def cmd_oracle_nonpositivity(args):
    import numpy as np
    t0 = time.perf_counter()
    seed = default_seed() if args.seed is None else args.seed
    rng = np.random.Generator(np.random.PCG64(seed))
    worst = 0.0
    worst_case = None
    for _ in range(args.samples):
        q = int(rng.integers(2, args.q_max + 1))
        z = int(rng.integers(1, q))
        f = rng.dirichlet(np.ones(q))
        p = rng.dirichlet(np.ones(q))
        order = np.argsort(-(f * p), kind="stable")
        f, p = f[order], p[order]
        val = nonpositivity_lhs(list(f / f.sum()), list(p / p.sum()), q, z)
        if val > worst:
            worst, worst_case = val, {"q": q, "z": z}
    rep = {"config": {"experiment": "nonpositivity", "samples": args.samples, "q_max": args.q_max, "seed": seed,
                      "rng": RNG_NAME},
           "summary": {"max_lhs": worst, "argmax": worst_case, "holds": worst <= 1 + 1e-9}}
    _finish_report(args, rep, t0)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=["json", "csv", "svg", "text"], default="json")

    p = argparse.ArgumentParser(prog="insdel-lab", description="List-decodable insertion/deletion code lab")
    sub = p.add_subparsers(dest="cmd", required=True)

    enc = sub.add_parser("encode", help="encode a message")
    esub = enc.add_subparsers(dest="what", required=True)
    e = esub.add_parser("bukhma", parents=[common])
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--eps", required=True)
    e.add_argument("--q", type=int, default=2)
    e.add_argument("--index", type=int, default=0)
    e.set_defaults(func=cmd_encode_bukhma)
    e = esub.add_parser("concat", parents=[common])
    e.add_argument("--params", required=True)
    e.add_argument("--message", type=int, required=True)
    e.set_defaults(func=cmd_encode_concat)

    c = sub.add_parser("corrupt", parents=[common])
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--deletions", type=int, default=0)
    c.add_argument("--insertions", type=int, default=0)
    c.set_defaults(func=cmd_corrupt)

    d = sub.add_parser("decode-inner", parents=[common])
    d.add_argument("--code", default=None)
    d.add_argument("--n", type=int, default=None)
    d.add_argument("--code-eps", default=None)
    d.add_argument("--q", type=int, default=2)
    d.add_argument("--eps", default=None, help="decoding slack; defaults to the code's eps")
    d.add_argument("--in", dest="input", required=True)
    d.set_defaults(func=cmd_decode_inner)

    d = sub.add_parser("decode-concat", parents=[common])
    d.add_argument("--params", required=True)
    d.add_argument("--in", dest="input", required=True)
    d.set_defaults(func=cmd_decode_concat)

    r = sub.add_parser("region", parents=[common])
    r.add_argument("--q", type=int, required=True)
    r.add_argument("--emit", choices=["json", "csv", "svg"], default=None)
    r.add_argument("--point", action="append", help="gamma,delta query point")
    r.add_argument("--shrink", default="0")
    r.set_defaults(func=cmd_region)

    ex = sub.add_parser("experiment")
    xsub = ex.add_subparsers(dest="what", required=True)
    x = xsub.add_parser("list-size", parents=[common])
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--eps", required=True)
    x.add_argument("--q", type=int, default=2)
    x.add_argument("--max-len", type=int, default=10)
    x.add_argument("--grid-steps", type=int, default=8)
    x.set_defaults(func=cmd_exp_list_size)
    x = xsub.add_parser("martingale", parents=[common])
    x.add_argument("--v", required=True)
    x.add_argument("--eps", required=True)
    x.add_argument("--periods", required=True)
    x.add_argument("--n", type=int, default=None)
    x.add_argument("--pad-period", type=int, default=None)
    x.set_defaults(func=cmd_exp_martingale)
    x = xsub.add_parser("adversary", parents=[common])
    x.add_argument("--q", type=int, required=True)
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--i", type=int, required=True)
    x.add_argument("--alpha", default=None)
    x.add_argument("--trials", type=int, default=100)
    x.set_defaults(func=cmd_exp_adversary)

    o = sub.add_parser("oracle")
    osub = o.add_subparsers(dest="what", required=True)
    x = osub.add_parser("fmax", parents=[common])
    x.add_argument("--F", required=True)
    x.add_argument("--P", required=True)
    x.add_argument("--m", required=True)
    x.add_argument("--q", type=int, required=True)
    x.set_defaults(func=cmd_oracle_fmax)
    x = osub.add_parser("nonpositivity", parents=[common])
    x.add_argument("--samples", type=int, default=10000)
    x.add_argument("--q-max", type=int, default=6)
    x.set_defaults(func=cmd_oracle_nonpositivity)
    return p


def cli_dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        args.func(args)
    except (DomainError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
