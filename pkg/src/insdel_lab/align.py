"""Matchings, LCS kernels and advantage functionals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError
from .seqcore import Seq, periodic_symbols


@dataclass(frozen=True)
class Matching:
    pairs: Tuple[Tuple[int, int], ...] = ()

    def __len__(self):
        return len(self.pairs)

    def validate(self, a: Seq, b: Seq) -> None:
        pi, pj = -1, -1
        for i, j in self.pairs:
            if i <= pi or j <= pj:
                raise DomainError(f"matching not strictly increasing at pair {(i, j)}")
            if not (0 <= i < len(a) and 0 <= j < len(b)):
                raise DomainError(f"pair {(i, j)} out of range")
            if a[i] != b[j]:
                raise DomainError(f"pair {(i, j)} joins unequal symbols")
            pi, pj = i, j

    def to_json(self):
        return [list(p) for p in self.pairs]

    @classmethod
    def from_json(cls, obj):
        return cls(tuple((int(i), int(j)) for i, j in obj))


def _check_alphabets(a: Seq, b: Seq):
    if a.q != b.q:
        raise DomainError(f"alphabet mismatch: q={a.q} vs q={b.q}")


# ---------------------------------------------------------------------------
# LCS with traceback

def lcs_table(a: Sequence[int], b: Sequence[int]) -> np.ndarray:
    n, m = len(a), len(b)
    T = np.zeros((n + 1, m + 1), dtype=np.int32)
    if m == 0:
        return T
    barr = np.asarray(b, dtype=np.int64)
    for i in range(1, n + 1):
        prev = T[i - 1]
        cand = np.maximum(prev[1:], prev[:-1] + (barr == a[i - 1]))
        T[i, 1:] = np.maximum.accumulate(cand)
    return T


def lcs(a: Seq, b: Seq) -> Matching:
    """Maximum matching; ties in the traceback advance in `a` first."""
    _check_alphabets(a, b)
    x, y = a.symbols, b.symbols
    T = lcs_table(x, y)
    i, j = len(x), len(y)
    pairs = []
    while i > 0 and j > 0:
        if x[i - 1] == y[j - 1] and T[i, j] == T[i - 1, j - 1] + 1:
            pairs.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif T[i - 1, j] == T[i, j]:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return Matching(tuple(pairs))


# ---------------------------------------------------------------------------
# Bit-parallel LCS length, several patterns packed into one integer

class LcsScanner:
    """Streams a text against many patterns at once.

    Each pattern occupies its own bit segment followed by a zero guard bit,
    so carries from one segment never reach the next. After consuming k text
    symbols the number of zero bits in a segment is the LCS of that pattern
    with the first k text symbols.
    """

    def __init__(self, patterns: Sequence[Sequence[int]], q: int):
        self.q = q
        self.lengths = [len(p) for p in patterns]
        self.offsets = []
        masks = [0] * q
        full = 0
        off = 0
        for p in patterns:
            self.offsets.append(off)
            for k, c in enumerate(p):
                masks[c] |= 1 << (off + k)
            full |= ((1 << len(p)) - 1) << off
            off += len(p) + 1
        self.masks = masks
        self.full = full
        self.segmasks = [(1 << n) - 1 for n in self.lengths]

    def _extract(self, V: int) -> List[int]:
        Z = self.full ^ V
        return [((Z >> off) & sm).bit_count() for off, sm in zip(self.offsets, self.segmasks)]

    def scan(self, text: Sequence[int], checkpoints: Sequence[int] = ()) -> Dict[int, List[int]]:
        """LCS of every pattern against text[:k] for each k in checkpoints.

        Checkpoints beyond len(text) are clamped to len(text).
        """
        masks, full = self.masks, self.full
        V = full
        out = {}
        pos = 0
        n = len(text)
        for k in sorted(set(checkpoints)):
            kk = min(k, n)
            if kk > pos:
                for c in text[pos:kk]:
                    U = V & masks[c]
                    V = ((V + U) | (V - U)) & full
                pos = kk
            out[k] = self._extract(V)
        return out

    def lcs_all(self, text: Sequence[int]) -> List[int]:
        return self.scan(text, (len(text),))[len(text)]


def lcs_length(a: Seq, b: Seq) -> int:
    _check_alphabets(a, b)
    x, y = a.symbols, b.symbols
    if len(x) < len(y):
        x, y = y, x
    if not y:
        return 0
    return LcsScanner([x], a.q).lcs_all(y)[0]


# ---------------------------------------------------------------------------
# Advantage functionals

def adv_of_matching(M: Matching, a: Seq, b: Seq) -> Fraction:
    if not len(a):
        raise DomainError("advantage needs a non-empty first string")
    M.validate(a, b)
    return Fraction(3 * len(M) - len(a) - len(b), len(a))


def advantage(a: Seq, b: Seq) -> Fraction:
    if not len(a):
        raise DomainError("advantage needs a non-empty first string")
    k = lcs_length(a, b)
    return Fraction(3 * k - len(a) - len(b), len(a))


def _check_order(q: int, i: int):
    if not 1 <= i < q:
        raise DomainError(f"advantage order i={i} must satisfy 1 <= i < q={q}")


def qary_adv_of_matching(M: Matching, a: Seq, b: Seq, q: int, i: int) -> Fraction:
    _check_order(q, i)
    if not len(a):
        raise DomainError("advantage needs a non-empty first string")
    M.validate(a, b)
    return (Fraction((2 * i + 1) * len(M) - len(a)) - Fraction(i + i * i, q) * len(b)) / len(a)


def qary_advantage(a: Seq, b: Seq, q: int, i: int) -> Fraction:
    _check_order(q, i)
    if not len(a):
        raise DomainError("advantage needs a non-empty first string")
    k = lcs_length(a, b)
    return (Fraction((2 * i + 1) * k - len(a)) - Fraction(i + i * i, q) * len(b)) / len(a)


# Advantage against the infinite alternating string.
#
# Scores are kept as integers: score(b') = g*|M| - c*|b'| and the advantage is
# (score - s*|a|) / (s*|a|). Binary weights are (3, 1, 1); the order-i q-ary
# weights are (q(2i+1), i+i^2, q).
#
# A substring longer than g*(|a|-1)/c + 1 scores below a single matched
# symbol, so substrings up to that length starting in the first period
# cover every candidate and the maximum is exact.

def _max_len(m: int, g: int, c: int) -> int:
    return (g * (m - 1)) // c + 1


def _periodic_text(r: int, q: int, m: int, g: int, c: int) -> np.ndarray:
    return np.asarray(periodic_symbols(r, q * r + _max_len(m, g, c), q), dtype=np.int64)


def periodic_best_scores(blocks: np.ndarray, r: int, q: int, g: int, c: int) -> np.ndarray:
    """Best score of every row of `blocks` against all substrings of A_r."""
    blocks = np.atleast_2d(np.asarray(blocks, dtype=np.int64))
    k, m = blocks.shape
    B = _periodic_text(r, q, m, g, c)
    cols = np.arange(len(B) + 1, dtype=np.int64)
    D = np.zeros((k, len(B) + 1), dtype=np.int64)
    gain = g - c
    for t in range(m):
        match = blocks[:, t:t + 1] == B[None, :]
        E = D.copy()
        np.maximum(E[:, 1:], np.where(match, D[:, :-1] + gain, D[:, 1:]), out=E[:, 1:])
        D = np.maximum.accumulate(E + c * cols, axis=1) - c * cols
    return D.max(axis=1)


def periodic_best(a: Seq, r: int, q: int, g: int, c: int) -> Tuple[int, int, int]:
    """Best score and the (start, end) of a witness substring of A_r."""
    m = len(a)
    B = _periodic_text(r, q, m, g, c)
    L = len(B) + 1
    cols = np.arange(L, dtype=np.int64)
    D = np.zeros(L, dtype=np.int64)
    S = cols.copy()
    gain = g - c
    for sym in a.symbols:
        match = np.zeros(L, dtype=bool)
        match[1:] = B == sym
        E = D.copy()
        SE = S.copy()
        diag = np.full(L, np.iinfo(np.int64).min // 2)
        diag[1:] = np.where(match[1:], D[:-1] + gain, diag[1:])
        better = diag > E
        E[better] = diag[better]
        SE[1:][better[1:]] = S[:-1][better[1:]]
        vals = E + c * cols
        cm = np.maximum.accumulate(vals)
        idx = np.maximum.accumulate(np.where(vals == cm, cols, 0))
        D = cm - c * cols
        S = SE[idx]
    end = int(np.argmax(D))
    return int(D[end]), int(S[end]), end


def _periodic_adv(a: Seq, r: int, q: int, g: int, c: int, s: int) -> Fraction:
    if not len(a):
        raise DomainError("advantage needs a non-empty first string")
    if r < 1:
        raise DomainError(f"period must be >= 1, got {r}")
    if a.q != q:
        raise DomainError(f"alphabet mismatch: q={a.q} vs q={q}")
    best = int(periodic_best_scores(np.asarray([a.symbols]), r, q, g, c)[0])
    return Fraction(best - s * len(a), s * len(a))


def advantage_periodic(a: Seq, r: int, q: int = 2) -> Fraction:
    """Maximum advantage of `a` over all substrings of the alternating string A_r."""
    return _periodic_adv(a, r, q, 3, 1, 1)


def qary_advantage_periodic(a: Seq, r: int, q: int, i: int) -> Fraction:
    _check_order(q, i)
    return _periodic_adv(a, r, q, q * (2 * i + 1), i + i * i, q)


def periodic_witness(a: Seq, r: int, q: int = 2, i: Optional[int] = None) -> Seq:
    """A substring of A_r attaining advantage_periodic (or its order-i version)."""
    g, c = (3, 1) if i is None else (q * (2 * i + 1), i + i * i)
    _, start, end = periodic_best(a, r, q, g, c)
    m = len(a)
    return Seq(periodic_symbols(r, q * r + _max_len(m, g, c), q)[start:end], q)


# ---------------------------------------------------------------------------
# Weighted edit budgets

@dataclass(frozen=True)
class BudgetWeights:
    z: int = 1
    insertion_weight: int = 1

    def __post_init__(self):
        if self.z < 1:
            raise DomainError(f"z must be >= 1, got {self.z}")
        if self.insertion_weight != 1:
            raise DomainError("insertion weight is fixed at 1")

    @property
    def deletion_weight(self) -> int:
        return 2 * self.z


def min_edit_budget(x: Seq, w: Seq, weights: BudgetWeights = BudgetWeights()) -> Tuple[int, int, int]:
    k = lcs_length(x, w)
    D, I = len(x) - k, len(w) - k
    return D, I, I + weights.deletion_weight * D
