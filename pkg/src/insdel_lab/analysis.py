"""Exact martingale traces over nested blocks, block classification and numeric oracles."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .align import advantage, lcs, periodic_best, periodic_best_scores, qary_advantage
from .errors import DomainError
from .seqcore import Seq, parse_rational, periodic_symbols


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def block_length(r: int, eps) -> int:
    """l = r*eps^2 rounded to nearest, at least 1."""
    return max(1, _round_half_up(r * parse_rational(eps) ** 2))


def fit_to_blocks(v: Seq, multiple: int, period: Optional[int] = None) -> Tuple[Seq, str]:
    """Make |v| a multiple of `multiple`.

    With a period, v is padded with the continuation of A_period; otherwise it
    is truncated. Returns the new string and a note describing the choice.
    """
    extra = len(v) % multiple
    if extra == 0:
        return v, "exact"
    if period is not None:
        target = len(v) + multiple - extra
        tail = periodic_symbols(period, target, v.q)[len(v):]
        return Seq(v.symbols + tail, v.q), f"padded with A_{period} continuation to {target}"
    target = len(v) - extra
    return v[:target], f"truncated to {target}"


# ---------------------------------------------------------------------------
# Martingale trace

@dataclass
class LevelStats:
    level: int
    period: Optional[int]
    block_length: int
    block_count: int
    biases: Optional[Tuple[Fraction, ...]]
    freqs: Tuple[Tuple[Fraction, ...], ...]
    advantages: Optional[Tuple[Fraction, ...]]
    mean_bias: Optional[Fraction]
    var_bias: Optional[Fraction]
    mean_freq: Tuple[Fraction, ...]
    f: Fraction
    mean_adv: Optional[Fraction]
    adv_lower_bound: Optional[Fraction]
    conditional_mean_ok: bool

    def summary(self) -> dict:
        def s(x):
            return None if x is None else str(x)
        return {
            "level": self.level, "period": self.period, "block_length": self.block_length,
            "block_count": self.block_count, "E[B]": s(self.mean_bias), "Var[B]": s(self.var_bias),
            "E[F]": [str(x) for x in self.mean_freq], "f": str(self.f), "E[A]": s(self.mean_adv),
            "adv_lower_bound": s(self.adv_lower_bound), "conditional_mean_ok": self.conditional_mean_ok,
        }


@dataclass
class MartingaleTrace:
    q: int
    eps: Fraction
    levels: List[LevelStats]

    def to_json(self) -> dict:
        return {"q": self.q, "eps": str(self.eps), "levels": [lv.summary() for lv in self.levels]}


def _mean(xs):
    return sum(xs, Fraction(0)) / len(xs)


def _var(xs):
    m = _mean(xs)
    return _mean([x * x for x in xs]) - m * m


def martingale_trace(v: Seq, periods: Sequence[int], eps, n: Optional[int] = None, order: int = 1) -> MartingaleTrace:
    """Statistics of every nested block level, by full enumeration.

    Level i splits v into blocks of length l_i = round(r_i eps^2); choosing a
    uniform sub-block at each step makes level i uniform over these blocks.
    """
    eps = parse_rational(eps)
    q = v.q
    if not len(v):
        raise DomainError("martingale trace needs a non-empty string")
    if list(periods) != sorted(periods, reverse=True):
        raise DomainError("periods must be listed in descending order")
    if q > 2 and not 1 <= order < q:
        raise DomainError(f"order {order} must satisfy 1 <= order < q")
    n = len(v) if n is None else n
    arr = np.asarray(v.symbols, dtype=np.int64)

    def level_stats(level, period, l, parent_counts):
        blocks = arr.reshape(-1, l)
        counts = np.stack([(blocks == p).sum(axis=1) for p in range(q)], axis=1)
        freqs = tuple(tuple(Fraction(int(c), l) for c in row) for row in counts)
        biases = None
        if q == 2:
            biases = tuple(Fraction(int(row[1]) - int(row[0]), l) for row in counts)
        ok = True
        if parent_counts is not None:
            ratio = len(counts) // len(parent_counts)
            child_sums = counts.reshape(len(parent_counts), ratio, q).sum(axis=1)
            ok = bool((child_sums == parent_counts).all())
        mean_freq = tuple(_mean([f[p] for f in freqs]) for p in range(q))
        fval = sum((_var([f[p] for f in freqs]) for p in range(q)), Fraction(0))
        advs = lower = None
        if period is not None:
            if q == 2:
                g, c, s = 3, 1, 1
            else:
                g, c, s = q * (2 * order + 1), order + order * order, q
            uniq, inv = np.unique(blocks, axis=0, return_inverse=True)
            scores = periodic_best_scores(uniq, period, q, g, c)
            vals = [Fraction(int(sc) - s * l, s * l) for sc in scores]
            advs = tuple(vals[k] for k in np.asarray(inv).reshape(-1))
            code = Seq(periodic_symbols(period, n, q), q)
            lower = advantage(v, code) if q == 2 else qary_advantage(v, code, q, order)
        return LevelStats(
            level, period, l, len(blocks), biases, freqs, advs,
            None if biases is None else _mean(biases), None if biases is None else _var(biases),
            mean_freq, fval, None if advs is None else _mean(advs), lower, ok), counts

    levels = []
    st, counts = level_stats(0, None, len(v), None)
    levels.append(st)
    prev_len = len(v)
    for k, r in enumerate(periods, start=1):
        l = block_length(r, eps)
        if prev_len % l:
            raise DomainError(f"level {k}: block length {l} does not divide {prev_len}")
        st, counts = level_stats(k, r, l, counts)
        levels.append(st)
        prev_len = l
    return MartingaleTrace(q, eps, levels)


def variance_increments(trace: MartingaleTrace) -> List[Fraction]:
    vs = [lv.var_bias for lv in trace.levels]
    return [b - a for a, b in zip(vs, vs[1:])]


# ---------------------------------------------------------------------------
# Block classification

@dataclass
class BlockClassification:
    labels: Tuple[str, ...]
    unmatched: Tuple[int, ...]
    span: Tuple[int, int]
    boundary_count: int

    @property
    def crossing(self) -> int:
        return sum(1 for k, lab in enumerate(self.labels) if lab == "Ue" and k not in self.unmatched)

    @property
    def ue_fraction(self) -> Fraction:
        return Fraction(self.labels.count("Ue"), len(self.labels))


def classify_blocks(v: Seq, r: int, l: int) -> BlockClassification:
    """Label each length-l block by the run of A_r its projection lies in.

    The matching is an optimal one between v and its best substring of A_r.
    Blocks whose projection straddles a run boundary, or which have no matched
    symbol, are labelled Ue.
    """
    if l < 1 or len(v) % l:
        raise DomainError(f"block length {l} does not divide |v| = {len(v)}")
    q = v.q
    _, start, end = periodic_best(v, r, q, 3, 1)
    text = periodic_symbols(r, end, q)
    M = lcs(v, Seq(text[start:end], q))
    partners = [[] for _ in range(len(v) // l)]
    for i, j in M.pairs:
        partners[i // l].append(start + j)
    labels = []
    unmatched = []
    for k, ps in enumerate(partners):
        if not ps:
            labels.append("Ue")
            unmatched.append(k)
            continue
        lo, hi = ps[0] // r, ps[-1] // r
        labels.append(f"U{text[ps[0]]}" if lo == hi else "Ue")
    boundaries = sum(1 for p in range(start + 1, end) if p % r == 0)
    return BlockClassification(tuple(labels), tuple(unmatched), (start, end), boundaries)


# ---------------------------------------------------------------------------
# Numeric oracles

def f_max(F, P, m, q: int) -> float:
    """Largest sum f_i p_i with sum f = F, sum p = P and every f_i p_i <= m."""
    if not (F > 0 and P > 0 and m > 0):
        raise DomainError("F, P and m must be positive")
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    FP = F * P
    if FP <= m:
        return float(FP)
    for u in range(1, q):
        if FP / (u + 1) ** 2 <= m < FP / u ** 2:
            return float(u * m) + (math.sqrt(FP) - u * math.sqrt(m)) ** 2
    return float(m * q)


def _close(x, y, tol):
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    return abs(x - y) <= tol


def nonpositivity_lhs(fstar: Sequence, p: Sequence, q: int, z: int, tol: float = 1e-9):
    if len(fstar) != q or len(p) != q:
        raise DomainError(f"vectors must have length q={q}")
    if not 1 <= z < q:
        raise DomainError(f"z={z} must satisfy 1 <= z < q")
    if any(x < 0 for x in fstar) or any(x < 0 for x in p):
        raise DomainError("vectors must be non-negative")
    one = Fraction(1)
    if not _close(sum(fstar), one, tol) or not _close(sum(p), one, tol):
        raise DomainError("vectors must sum to 1")
    prods = [a * b for a, b in zip(fstar, p)]
    for k in range(q - 1):
        if prods[k] < prods[k + 1] and not _close(prods[k], prods[k + 1], tol):
            raise DomainError("products f*_j p_j must be non-increasing")
    w = z // 2 + 1
    coef = Fraction(3 * z + 2, 2) if z % 2 == 0 else Fraction(z + 1, 2)
    tail = sum(prods[w:], 0 * prods[0])
    if isinstance(prods[0], Fraction):
        return coef * prods[w - 1] + (2 * z + 1) * tail
    return float(coef) * prods[w - 1] + (2 * z + 1) * tail


def three_valued_var_bound(a: Sequence, probs: Sequence, xi):
    """Variance of a three-valued variable and the lower bound (xi/2)(a0-a1)^2."""
    if len(a) != 3 or len(probs) != 3:
        raise DomainError("need three values and three probabilities")
    if any(pr < 0 for pr in probs) or not _close(sum(probs), Fraction(1), 1e-12):
        raise DomainError("probabilities must be non-negative and sum to 1")
    if probs[0] < xi or probs[1] < xi:
        raise DomainError("probs[0] and probs[1] must be at least xi")
    mean = sum(x * pr for x, pr in zip(a, probs))
    var = sum(pr * (x - mean) ** 2 for x, pr in zip(a, probs))
    return var, xi * (a[0] - a[1]) ** 2 / 2
