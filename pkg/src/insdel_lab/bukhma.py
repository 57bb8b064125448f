"""Alternating strings, Bukh-Ma code families and the brute-force inner list decoder."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .align import LcsScanner
from .errors import DomainError
from .seqcore import Seq, fmt_rational, parse_rational, periodic_symbols


def alternating_prefix(r: int, l: int, q: int = 2) -> Seq:
    return Seq(periodic_symbols(r, l, q), q)


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


@dataclass(frozen=True)
class BukhMaCode:
    n: int
    eps: Fraction
    q: int
    periods: Tuple[int, ...]

    def __post_init__(self):
        if not self.periods or self.periods[0] != 1:
            raise DomainError("the period ladder must start at 1")
        ratio = 1 / Fraction(self.eps) ** 4
        for a, b in zip(self.periods, self.periods[1:]):
            if Fraction(b, a) < ratio:
                raise DomainError(f"periods {a} and {b} are closer than 1/eps^4 = {fmt_rational(ratio)}")
        if self.periods[-1] > self.n:
            raise DomainError(f"period {self.periods[-1]} exceeds block length {self.n}")

    def __len__(self):
        return len(self.periods)

    def codeword(self, k: int) -> Seq:
        if not 0 <= k < len(self.periods):
            raise DomainError(f"codeword index {k} out of range for a code of size {len(self)}")
        return alternating_prefix(self.periods[k], self.n, self.q)

    def codewords(self) -> List[Seq]:
        return [self.codeword(k) for k in range(len(self))]

    def to_json(self) -> dict:
        return {"n": self.n, "eps": fmt_rational(self.eps), "q": self.q, "periods": list(self.periods)}

    @classmethod
    def from_json(cls, obj: dict) -> "BukhMaCode":
        return cls(int(obj["n"]), parse_rational(obj["eps"]), int(obj["q"]), tuple(int(p) for p in obj["periods"]))


def build_code(n: int, eps, q: int = 2) -> BukhMaCode:
    eps = parse_rational(eps)
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie in (0,1), got {eps}")
    if n < 1:
        raise DomainError(f"block length must be >= 1, got {n}")
    if q < 2:
        raise DomainError(f"alphabet size must be >= 2, got {q}")
    ratio = 1 / eps ** 4
    periods: List[int] = []
    power = Fraction(1)
    while power < n:  # k < log_ratio(n)
        r = _round_half_up(power)
        if 1 <= r <= n and (not periods or Fraction(r, periods[-1]) >= ratio):
            periods.append(r)
        power *= ratio
    if not periods:
        periods = [1]
    if len(periods) < 2:
        warnings.warn(f"build_code(n={n}, eps={fmt_rational(eps)}) admits a single period; code has size 1")
    return BukhMaCode(n, eps, q, tuple(periods))


def code_from_periods(n: int, eps, q: int, periods: Sequence[int]) -> BukhMaCode:
    """Explicit ladder; eps here only sets the required spacing 1/eps^4."""
    return BukhMaCode(n, parse_rational(eps), q, tuple(sorted(periods)))


# ---------------------------------------------------------------------------
# Inner list decoder

def budget_rhs(q: int, z: int) -> Fraction:
    """((2q-1)z - z^2)/q, the right-hand side of the weighted budget."""
    return Fraction((2 * q - 1) * z - z * z, q)


def survivor_witness(D: int, I: int, n: int, q: int, eps: Fraction) -> Optional[int]:
    """Smallest z with I + 2zD <= (1-eps) n ((2q-1)z - z^2)/q, or None."""
    slack = (1 - eps) * n
    for z in range(1, q):
        if I + 2 * z * D <= slack * budget_rhs(q, z):
            return z
    return None


@dataclass(frozen=True)
class InnerDecodeReport:
    survivors: Tuple[int, ...]
    witnesses: Dict[int, Tuple[int, int, int]] = field(default_factory=dict)

    @property
    def list_size(self) -> int:
        return len(self.survivors)

    def to_json(self) -> dict:
        return {
            "survivors": list(self.survivors),
            "witnesses": {str(k): {"D": d, "I": i, "z": z} for k, (d, i, z) in self.witnesses.items()},
            "list_size": self.list_size,
        }


def decode_from_lcs(lcs_values: Sequence[int], wlen: int, code: BukhMaCode, eps: Fraction) -> InnerDecodeReport:
    survivors = []
    wit = {}
    for k, l in enumerate(lcs_values):
        D, I = code.n - l, wlen - l
        z = survivor_witness(D, I, code.n, code.q, eps)
        if z is not None:
            survivors.append(k)
            wit[k] = (D, I, z)
    return InnerDecodeReport(tuple(survivors), wit)


def code_scanner(code: BukhMaCode) -> LcsScanner:
    return LcsScanner([periodic_symbols(r, code.n, code.q) for r in code.periods], code.q)


def inner_list_decode(w: Seq, code: BukhMaCode, eps, scanner: Optional[LcsScanner] = None) -> InnerDecodeReport:
    """All codewords within the (weighted) insertion/deletion budget of w."""
    if w.q != code.q:
        raise DomainError(f"alphabet mismatch: received q={w.q}, code q={code.q}")
    eps = parse_rational(eps)
    scanner = scanner or code_scanner(code)
    return decode_from_lcs(scanner.lcs_all(w.symbols), len(w), code, eps)
