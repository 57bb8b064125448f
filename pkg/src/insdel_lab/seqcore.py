"""Sequences over a finite alphabet and their elementary statistics."""
from __future__ import annotations

import string
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .errors import DomainError

_DIGITS = string.digits + string.ascii_lowercase


@dataclass(frozen=True)
class Seq:
    symbols: Tuple[int, ...]
    q: int = 2

    def __post_init__(self):
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(self.symbols))
        if self.q < 2:
            raise DomainError(f"alphabet size must be >= 2, got {self.q}")
        for s in self.symbols:
            if not 0 <= s < self.q:
                raise DomainError(f"symbol {s} outside alphabet of size {self.q}")

    @classmethod
    def from_str(cls, text: str, q: int = 2) -> "Seq":
        try:
            syms = tuple(_DIGITS.index(c) for c in text.lower())
        except ValueError:
            raise DomainError(f"cannot parse {text!r} as a sequence") from None
        return cls(syms, q)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Seq(self.symbols[idx], self.q)
        return self.symbols[idx]

    def __add__(self, other: "Seq") -> "Seq":
        if other.q != self.q:
            raise DomainError("cannot concatenate sequences over different alphabets")
        return Seq(self.symbols + other.symbols, self.q)

    def __str__(self):
        if self.q <= 36:
            return "".join(_DIGITS[s] for s in self.symbols)
        return repr(list(self.symbols))

    def to_json(self) -> dict:
        if self.q <= 36:
            return {"q": self.q, "symbols": str(self)}
        return {"q": self.q, "symbols": list(self.symbols)}

    @classmethod
    def from_json(cls, obj: dict) -> "Seq":
        q = int(obj["q"])
        syms = obj["symbols"]
        if isinstance(syms, str):
            return cls.from_str(syms, q)
        return cls(tuple(int(s) for s in syms), q)


@dataclass(frozen=True)
class SymbolStats:
    counts: Tuple[int, ...]
    length: int


def as_seq(w, q: int = 2) -> Seq:
    """Accept a Seq, a digit string or an int sequence."""
    if isinstance(w, Seq):
        return w
    if isinstance(w, str):
        return Seq.from_str(w, q)
    return Seq(tuple(w), q)


def symbol_stats(w: Seq) -> SymbolStats:
    counts = [0] * w.q
    for s in w.symbols:
        counts[s] += 1
    return SymbolStats(tuple(counts), len(w))


def count(w: Seq, a: int) -> int:
    if not 0 <= a < w.q:
        raise DomainError(f"symbol {a} outside alphabet of size {w.q}")
    return w.symbols.count(a)


def bias(w: Seq) -> Fraction:
    if w.q != 2:
        raise DomainError("bias is defined for binary sequences only")
    if not len(w):
        raise DomainError("bias of the empty string is undefined")
    ones = sum(w.symbols)
    return Fraction(2 * ones - len(w), len(w))


def freq_vector(w: Seq) -> Tuple[Fraction, ...]:
    if not len(w):
        raise DomainError("frequency vector of the empty string is undefined")
    st = symbol_stats(w)
    return tuple(Fraction(c, st.length) for c in st.counts)


def parse_rational(text) -> Fraction:
    """Parse "num/den", an int or a decimal string into a Fraction."""
    if isinstance(text, Fraction):
        return text
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not a rational number: {text!r}") from None


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def periodic_symbols(r: int, length: int, q: int = 2) -> Tuple[int, ...]:
    """Symbols of the string cycling 0^r 1^r ... (q-1)^r, cut to `length`."""
    if r < 1:
        raise DomainError(f"period must be >= 1, got {r}")
    if length < 0:
        raise DomainError(f"length must be >= 0, got {length}")
    return tuple((k // r) % q for k in range(length))
