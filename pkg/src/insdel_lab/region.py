"""The feasibility polygon F_q and the confusion adversaries."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .bukhma import budget_rhs
from .channel import EditOp, EditScript, apply_script, script_cost
from .errors import DomainError
from .seqcore import Seq, parse_rational, symbol_stats

Point = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Region:
    q: int
    vertices: Tuple[Point, ...]

    @property
    def delta_intercept(self) -> Point:
        return (Fraction(0), Fraction(self.q - 1, self.q))

    @property
    def gamma_intercept(self) -> Point:
        return (Fraction(self.q - 1), Fraction(0))


def region_vertices(q: int) -> Region:
    if q < 2:
        raise DomainError(f"alphabet size must be >= 2, got {q}")
    pts = [(Fraction(i * (i - 1), q), Fraction(q - i, q)) for i in range(1, q + 1)]
    return Region(q, tuple(pts) + ((Fraction(0), Fraction(0)),))


def boundary_line(q: int, i: int) -> Tuple[Fraction, Fraction, Fraction]:
    """Coefficients (a, b, c) of the line a*gamma + b*delta = c for segment i."""
    if not 1 <= i <= q - 1:
        raise DomainError(f"segment index i={i} must satisfy 1 <= i <= q-1={q - 1}")
    return Fraction(1), Fraction(2 * i), budget_rhs(q, i)


def contains(q: int, gamma, delta, shrink=0) -> Tuple[bool, Optional[int]]:
    """Membership in (1-shrink)F_q with the smallest witnessing segment.

    With shrink == 0 the outer boundary is excluded (strict inequality);
    points on the axes below it are included. With shrink > 0 the scaled
    boundary itself counts as inside.
    """
    gamma, delta, shrink = parse_rational(gamma), parse_rational(delta), parse_rational(shrink)
    if gamma < 0 or delta < 0:
        raise DomainError("gamma and delta must be non-negative")
    if not 0 <= shrink < 1:
        raise DomainError(f"shrink must lie in [0,1), got {shrink}")
    for z in range(1, q):
        lhs = gamma + 2 * z * delta
        rhs = (1 - shrink) * budget_rhs(q, z)
        if lhs < rhs or (shrink > 0 and lhs == rhs):
            return True, z
    return False, None


# ---------------------------------------------------------------------------
# Adversaries

@dataclass(frozen=True)
class AttackResult:
    output: Seq
    script: EditScript
    deletions_used: int
    insertions_used: int
    pattern_id: Tuple[int, ...]


def adversary_single(x: Seq, i: int) -> AttackResult:
    """Collapse x onto (s_1 ... s_i)^L, L = n*i/q, keeping the i most frequent symbols."""
    q, n = x.q, len(x)
    if not 1 <= i <= q:
        raise DomainError(f"i={i} must satisfy 1 <= i <= q={q}")
    counts = symbol_stats(x).counts
    order = sorted(range(q), key=lambda s: (-counts[s], s))
    kept = tuple(sorted(order[:i]))
    keep_set = set(kept)
    L = n * i // q

    ops = []
    # delete dropped symbols back to front so positions stay valid
    for pos in range(n - 1, -1, -1):
        if x[pos] not in keep_set:
            ops.append(EditOp("del", pos))
    remaining = [s for s in x.symbols if s in keep_set]
    # the kept symbols carry at least n*i/q occurrences; trim the tail to L
    while len(remaining) > L:
        ops.append(EditOp("del", len(remaining) - 1))
        remaining.pop()

    rank = {s: k for k, s in enumerate(kept)}
    target_len = L * i
    occupied = {k * i + rank[s] for k, s in enumerate(remaining)}
    for p in range(target_len):
        if p not in occupied:
            ops.append(EditOp("ins", p, kept[p % i]))

    script = EditScript(tuple(ops))
    out = apply_script(x, script)
    D, I, _ = script_cost(script)
    return AttackResult(out, script, D, I, kept)


def adversary_timeshare(x: Seq, i: int, alpha) -> AttackResult:
    """Parameter i on the first alpha*n symbols, i+1 on the rest."""
    alpha = parse_rational(alpha)
    q, n = x.q, len(x)
    if not 1 <= i <= q - 1:
        raise DomainError(f"i={i} must satisfy 1 <= i <= q-1={q - 1}")
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0,1], got {alpha}")
    cut = alpha * n
    if cut.denominator != 1:
        raise DomainError(f"alpha*n = {cut} is not an integer")
    cut = int(cut)
    first = adversary_single(x[:cut], i)
    if cut == n:
        return first
    second = adversary_single(x[cut:], i + 1)
    script = first.script + second.script.shifted(len(first.output))
    out = first.output + second.output
    return AttackResult(out, script, first.deletions_used + second.deletions_used,
                        first.insertions_used + second.insertions_used,
                        first.pattern_id + (-1,) + second.pattern_id)
