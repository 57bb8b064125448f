"""Concatenated codes: outer-code contract, encoder and the sliding-window decoder."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .align import LcsScanner
from .bukhma import BukhMaCode, code_scanner, decode_from_lcs
from .channel import EditScript, apply_script, make_rng, script_cost
from .errors import DomainError, OuterListOverflow
from .seqcore import Seq, fmt_rational, parse_rational


# ---------------------------------------------------------------------------
# Outer code

class OuterCodeContract:
    """What the window decoder needs from an outer code.

    list_decode must return every message whose codeword y can be turned into
    the received string with at most delta_out*n_out deletions and at most
    gamma_out*n_out insertions.
    """

    sigma_out: int
    n_out: int
    delta_out: Fraction
    gamma_out: Optional[Fraction]
    L_out: Optional[int]

    def encode(self, message) -> Tuple[int, ...]:
        raise NotImplementedError

    def list_decode(self, received: Sequence[int]) -> List:
        raise NotImplementedError


@dataclass
class SubstituteOuterCode(OuterCodeContract):
    sigma_out: int
    n_out: int
    codebook: Tuple[Tuple[int, ...], ...]
    delta_out: Fraction = Fraction(1, 2)
    gamma_out: Optional[Fraction] = None
    L_out: Optional[int] = None
    seed: Optional[int] = None
    _scanner: Optional[LcsScanner] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.delta_out = parse_rational(self.delta_out)
        if self.gamma_out is not None:
            self.gamma_out = parse_rational(self.gamma_out)
        if not 0 <= self.delta_out <= 1:
            raise DomainError(f"delta_out must lie in [0,1], got {self.delta_out}")
        for y in self.codebook:
            if len(y) != self.n_out or any(not 0 <= s < self.sigma_out for s in y):
                raise DomainError("codebook entry does not match (sigma_out, n_out)")

    @property
    def message_count(self) -> int:
        return len(self.codebook)

    def encode(self, message: int) -> Tuple[int, ...]:
        if not 0 <= message < len(self.codebook):
            raise DomainError(f"message {message} outside 0..{len(self.codebook) - 1}")
        return self.codebook[message]

    def lcs_with_codebook(self, received: Sequence[int]) -> List[int]:
        if self._scanner is None:
            self._scanner = LcsScanner(self.codebook, self.sigma_out)
        return self._scanner.lcs_all(received)

    def list_decode(self, received: Sequence[int]) -> List[int]:
        need = (1 - self.delta_out) * self.n_out
        ins_cap = None if self.gamma_out is None else self.gamma_out * self.n_out
        out = []
        for m, l in enumerate(self.lcs_with_codebook(received)):
            if l >= need and (ins_cap is None or len(received) - l <= ins_cap):
                out.append(m)
        if self.L_out is not None and len(out) > self.L_out:
            raise OuterListOverflow(len(out), self.L_out)
        return out

    def to_json(self) -> dict:
        return {
            "sigma_out": self.sigma_out,
            "n_out": self.n_out,
            "delta_out": fmt_rational(self.delta_out),
            "gamma_out": None if self.gamma_out is None else fmt_rational(self.gamma_out),
            "L_out": self.L_out,
            "seed": self.seed,
            "codebook": [list(y) for y in self.codebook],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SubstituteOuterCode":
        if "codebook" not in obj:
            return substitute_outer(int(obj["sigma_out"]), int(obj["n_out"]), int(obj["message_count"]),
                                    obj.get("seed", 0), obj.get("delta_out", "1/2"), obj.get("gamma_out"),
                                    obj.get("L_out"))
        return cls(int(obj["sigma_out"]), int(obj["n_out"]), tuple(tuple(int(s) for s in y) for y in obj["codebook"]),
                   obj.get("delta_out", "1/2"), obj.get("gamma_out"), obj.get("L_out"), obj.get("seed"))


def substitute_outer(sigma_out: int, n_out: int, message_count: int, seed,
                     delta_out="1/2", gamma_out=None, L_out=None) -> SubstituteOuterCode:
    """Seeded random outer code with brute-force threshold list decoding."""
    if message_count > sigma_out ** n_out:
        raise DomainError(f"cannot pick {message_count} distinct words of length {n_out} over {sigma_out} symbols")
    rng = make_rng(seed)
    seen = set()
    book = []
    while len(book) < message_count:
        y = tuple(int(s) for s in rng.integers(sigma_out, size=n_out))
        if y not in seen:
            seen.add(y)
            book.append(y)
    return SubstituteOuterCode(sigma_out, n_out, tuple(book), delta_out, gamma_out, L_out,
                               seed if isinstance(seed, int) else None)


def default_outer_tolerances(eps, q: int, L_in: int) -> Tuple[Fraction, Fraction]:
    eps = parse_rational(eps)
    if q == 2:
        delta = 1 - 3 * eps ** 2 / 128
    else:
        delta = 1 - 3 * eps ** 2 / (128 * q * q)
    return delta, 32 * L_in / eps


# ---------------------------------------------------------------------------
# Parameters and encoder

def max_eps_in(eps, q: int) -> Fraction:
    eps = parse_rational(eps)
    return 3 * eps / 16 if q == 2 else eps / 16


@dataclass
class ConcatParams:
    eps: Fraction
    q: int
    n_in: int
    inner: BukhMaCode
    outer: OuterCodeContract
    eps_in: Fraction

    def __post_init__(self):
        self.eps = parse_rational(self.eps)
        self.eps_in = parse_rational(self.eps_in)
        if not 0 < self.eps < 1:
            raise DomainError(f"eps must lie in (0,1), got {self.eps}")
        if not 0 < self.eps_in <= max_eps_in(self.eps, self.q):
            raise DomainError(f"eps_in={fmt_rational(self.eps_in)} exceeds {fmt_rational(max_eps_in(self.eps, self.q))}")
        if self.inner.q != self.q or self.inner.n != self.n_in:
            raise DomainError("inner code does not match (q, n_in)")
        if len(self.inner) < self.outer.sigma_out:
            raise DomainError(f"inner code has {len(self.inner)} codewords, outer alphabet needs {self.outer.sigma_out}")

    @property
    def step(self) -> Fraction:
        """Window slide step, in symbols."""
        div = 16 if self.q == 2 else 16 * self.q
        return self.n_in * self.eps / div

    @property
    def unit(self) -> Fraction:
        """Window length unit n_in*eps/16."""
        return self.n_in * self.eps / 16


def concat_encode(params: ConcatParams, message) -> Seq:
    out: List[int] = []
    for s in params.outer.encode(message):
        out.extend(params.inner.codeword(s).symbols)
    return Seq(tuple(out), params.q)


# ---------------------------------------------------------------------------
# Window geometry

def binary_rounds(eps) -> int:
    return math.ceil(8 / parse_rational(eps))


def qary_rounds(eps, q: int) -> int:
    return math.ceil(16 * q / parse_rational(eps))


def window_width(eps, i: int) -> int:
    eps = parse_rational(eps)
    if not 1 <= i <= binary_rounds(eps):
        raise DomainError(f"round {i} outside 1..{binary_rounds(eps)}")
    return math.floor((2 - eps / 4 - 3 * eps * (i - 1) / 16) / (eps / 16)) + 1


def qary_window_width(eps, i: int, q: int, z: int) -> int:
    eps = parse_rational(eps)
    if not 1 <= i <= qary_rounds(eps, q):
        raise DomainError(f"round {i} outside 1..{qary_rounds(eps, q)}")
    if not 1 <= z <= q - 1:
        raise DomainError(f"z={z} outside 1..{q - 1}")
    c = Fraction((2 * q - 1) * z - z * z, q)
    num = 1 + (1 - eps / 4) * c - eps / (16 * q) * (i - 1) * (2 * z + 1)
    return math.floor(num / (eps / 16)) + 1


def round_plan(params: ConcatParams) -> List[Tuple[Tuple[int, int], int]]:
    """((z, i), w) for every round; rounds with an empty window are skipped."""
    plan = []
    if params.q == 2:
        for i in range(1, binary_rounds(params.eps) + 1):
            plan.append(((1, i), window_width(params.eps, i)))
    else:
        for z in range(1, params.q):
            for i in range(1, qary_rounds(params.eps, params.q) + 1):
                plan.append(((z, i), qary_window_width(params.eps, i, params.q, z)))
    return [(k, w) for k, w in plan if w > 0]


def windows(N: int, w: int, step: Fraction, unit: Fraction) -> List[Tuple[int, int]]:
    """Windows of length w*unit starting at every multiple of step; the last reaches N."""
    length = w * unit
    count = max(0, math.ceil((N - length) / step)) + 1
    return [(math.floor(j * step), min(N, math.floor(j * step + length))) for j in range(count)]


# ---------------------------------------------------------------------------
# Decoder

@dataclass
class RoundTrace:
    z: int
    i: int
    w: int
    window_count: int
    T: Tuple[int, ...]
    max_list: int
    decoded: List[int]


@dataclass
class ConcatDecodeTrace:
    messages: List[int]
    rounds: List[RoundTrace]


def concat_decode(received: Seq, params: ConcatParams, trace: bool = False):
    """Sliding-window list decoder; returns the sorted message list (or a trace)."""
    if received.q != params.q:
        raise DomainError(f"alphabet mismatch: received q={received.q}, code q={params.q}")
    N = len(received)
    if N == 0:
        return ConcatDecodeTrace([], []) if trace else []
    plan = round_plan(params)
    step, unit = params.step, params.unit
    wins = {key: windows(N, w, step, unit) for key, w in plan}

    # every window start lies on the shared step grid, so one scan per start
    # yields the LCS of all inner codewords for every window length
    ends_by_start: Dict[int, set] = {}
    for ws in wins.values():
        for s, e in ws:
            ends_by_start.setdefault(s, set()).add(e)
    scanner = code_scanner(params.inner)
    sym = received.symbols
    lcs_at: Dict[Tuple[int, int], List[int]] = {}
    for s, ends in ends_by_start.items():
        hi = max(ends)
        res = scanner.scan(sym[s:hi], [e - s for e in ends])
        for e in ends:
            lcs_at[(s, e)] = res[e - s]

    sigma = params.outer.sigma_out
    found = set()
    rounds = []
    memo = {}
    for (z, i), w in plan:
        T: List[int] = []
        max_list = 0
        for s, e in wins[(z, i)]:
            rep = memo.get((s, e))
            if rep is None:
                rep = memo[(s, e)] = decode_from_lcs(lcs_at[(s, e)], e - s, params.inner, params.eps_in)
            # survivors come out in ascending period order
            T.extend(k for k in rep.survivors if k < sigma)
            max_list = max(max_list, rep.list_size)
        decoded = params.outer.list_decode(T)
        found.update(decoded)
        if trace:
            rounds.append(RoundTrace(z, i, w, len(wins[(z, i)]), tuple(T), max_list, decoded))
    msgs = sorted(found)
    return ConcatDecodeTrace(msgs, rounds) if trace else msgs


# ---------------------------------------------------------------------------
# Per-block corruption bookkeeping

def corrupt_blocks(x: Seq, n_in: int, block_scripts: Sequence[EditScript]) -> Tuple[Seq, EditScript]:
    """Apply one script inside each inner block; return the output and the global transcript."""
    if len(x) != n_in * len(block_scripts):
        raise DomainError("need exactly one script per inner block")
    out: List[int] = []
    glob = EditScript()
    for b, s in enumerate(block_scripts):
        block = x[b * n_in:(b + 1) * n_in]
        glob = glob + s.shifted(len(out))
        out.extend(apply_script(block, s).symbols)
    return Seq(tuple(out), x.q), glob


def block_error_counts(block_scripts: Sequence[EditScript], z: int = 1) -> List[Tuple[int, int, int]]:
    return [script_cost(s, z) for s in block_scripts]


def good_blocks(counts: Sequence[Tuple[int, int, int]], n_in: int, eps) -> List[int]:
    """Blocks whose error count is at most (1 - eps/4) n_in."""
    eps = parse_rational(eps)
    return [b for b, (_, _, c) in enumerate(counts) if c <= (1 - eps / 4) * n_in]


def deletion_buckets(counts: Sequence[Tuple[int, int, int]], blocks: Sequence[int], n_in: int, eps,
                     q: int = 2) -> Dict[int, List[int]]:
    """Split blocks by deletion count into buckets of width n_in*eps/16 (or /16q)."""
    eps = parse_rational(eps)
    width = n_in * eps / (16 if q == 2 else 16 * q)
    out: Dict[int, List[int]] = {}
    for b in blocks:
        i = math.floor(counts[b][0] / width) + 1
        out.setdefault(i, []).append(b)
    return out


def params_to_json(p: ConcatParams) -> dict:
    return {"eps": fmt_rational(p.eps), "q": p.q, "n_in": p.n_in, "eps_in": fmt_rational(p.eps_in),
            "inner": p.inner.to_json(), "outer": p.outer.to_json()}


def params_from_json(obj: dict) -> ConcatParams:
    inner = BukhMaCode.from_json(obj["inner"])
    outer = SubstituteOuterCode.from_json(obj["outer"])
    eps = parse_rational(obj["eps"])
    q = int(obj.get("q", inner.q))
    eps_in = parse_rational(obj["eps_in"]) if "eps_in" in obj else max_eps_in(eps, q)
    return ConcatParams(eps, q, int(obj.get("n_in", inner.n)), inner, outer, eps_in)
