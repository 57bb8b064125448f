"""Experiment runners shared by the CLI and the acceptance tests."""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

import numpy as np

from .bukhma import BukhMaCode, build_code, code_scanner, decode_from_lcs
from .channel import RNG_NAME, make_rng
from .region import adversary_single, adversary_timeshare
from .seqcore import Seq, fmt_rational, parse_rational


def run_trials(fn: Callable, args: Sequence, workers: int = 1) -> List:
    """Map fn over args, results in input order whatever the worker count."""
    if workers <= 1 or len(args) <= 1:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, args))


def trial_seeds(seed: int, count: int) -> List[int]:
    ss = np.random.SeedSequence(seed)
    return [int(c.generate_state(1)[0]) for c in ss.spawn(count)]


# ---------------------------------------------------------------------------
# Exhaustive list size

def _list_size_for_length(job):
    code_json, eps, L, gammas, deltas = job
    code = BukhMaCode.from_json(code_json)
    eps = parse_rational(eps)
    scanner = code_scanner(code)
    n = code.n
    best = 0
    best_w = ""
    hist = {}
    grid = [[0] * len(gammas) for _ in deltas]
    for w in itertools.product(range(code.q), repeat=L):
        lcs_vals = scanner.lcs_all(w)
        rep = decode_from_lcs(lcs_vals, L, code, eps)
        hist[rep.list_size] = hist.get(rep.list_size, 0) + 1
        if rep.list_size > best:
            best = rep.list_size
            best_w = "".join(map(str, w))
        for a, d in enumerate(deltas):
            for b, g in enumerate(gammas):
                c = sum(1 for l in lcs_vals if L - l <= g * n and n - l <= d * n)
                if c > grid[a][b]:
                    grid[a][b] = c
    return {"length": L, "max_list": best, "argmax": best_w, "histogram": hist, "grid": grid}


def list_size_experiment(n: int, eps, q: int = 2, max_len: int = 14, grid_steps: int = 8,
                         workers: int = 1, code: Optional[BukhMaCode] = None) -> dict:
    eps = parse_rational(eps)
    code = code or build_code(n, eps, q)
    gammas = [Fraction(2 * k, grid_steps) for k in range(grid_steps + 1)]
    deltas = [Fraction(k, grid_steps) for k in range(grid_steps + 1)]
    jobs = [(code.to_json(), fmt_rational(eps), L, gammas, deltas) for L in range(max_len + 1)]
    per_len = run_trials(_list_size_for_length, jobs, workers)
    grid = [[max(r["grid"][a][b] for r in per_len) for b in range(len(gammas))] for a in range(len(deltas))]
    hist = {}
    for r in per_len:
        for k, v in r["histogram"].items():
            hist[k] = hist.get(k, 0) + v
    bound = 1200 / eps ** 3 if q == 2 else Fraction(q ** 5) / eps ** 2
    max_list = max(r["max_list"] for r in per_len)
    return {
        "config": {"experiment": "list-size", "n": n, "eps": fmt_rational(eps), "q": q, "max_len": max_len,
                   "code": code.to_json(), "grid_steps": grid_steps},
        "trials": [{k: r[k] for k in ("length", "max_list", "argmax")} for r in per_len],
        "summary": {"max_list": max_list, "bound": fmt_rational(bound), "within_bound": max_list <= bound,
                    "histogram": {str(k): v for k, v in sorted(hist.items())}},
        "heatmap": {"gammas": [fmt_rational(g) for g in gammas], "deltas": [fmt_rational(d) for d in deltas],
                    "grid": grid},
    }


# ---------------------------------------------------------------------------
# Adversaries

def balanced_word(q: int, n: int, rng) -> Seq:
    syms = [k % q for k in range(n)]
    rng.shuffle(syms)
    return Seq(tuple(int(s) for s in syms), q)


def _adversary_trial(job):
    q, n, i, alpha, seed = job
    rng = make_rng(seed)
    x = balanced_word(q, n, rng)
    res = adversary_single(x, i) if alpha is None else adversary_timeshare(x, i, alpha)
    return {"input": str(x), "output": str(res.output), "deletions": res.deletions_used,
            "insertions": res.insertions_used, "pattern_id": list(res.pattern_id)}


def adversary_experiment(q: int, n: int, i: int, trials: int, seed: int, alpha=None, workers: int = 1) -> dict:
    seeds = trial_seeds(seed, trials)
    a = None if alpha is None else fmt_rational(parse_rational(alpha))
    recs = run_trials(_adversary_trial, [(q, n, i, a, s) for s in seeds], workers)
    if alpha is None:
        exp_d, exp_i = Fraction(n * (q - i), q), Fraction(n * i * (i - 1), q)
    else:
        al = parse_rational(alpha)
        exp_d = al * n * (q - i) / q + (1 - al) * n * (q - i - 1) / q
        exp_i = al * n * i * (i - 1) / q + (1 - al) * n * (i + 1) * i / q
    return {
        "config": {"experiment": "adversary", "q": q, "n": n, "i": i, "alpha": a, "trials": trials,
                   "seed": seed, "rng": RNG_NAME},
        "trials": recs,
        "summary": {
            "expected_deletions": fmt_rational(exp_d), "expected_insertions": fmt_rational(exp_i),
            "budgets_exact": all(r["deletions"] == exp_d and r["insertions"] == exp_i for r in recs),
            "distinct_outputs": len({r["output"] for r in recs}),
            "pattern_cap": math.comb(q, i) if alpha is None else math.comb(q, i) * math.comb(q, i + 1),
        },
    }
