"""Edit scripts and the insertion/deletion channel."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import DomainError
from .seqcore import Seq

RNG_NAME = "numpy.PCG64"


@dataclass(frozen=True)
class EditOp:
    kind: str  # "del" or "ins"
    pos: int
    sym: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("del", "ins"):
            raise DomainError(f"unknown edit kind {self.kind!r}")
        if self.kind == "del" and self.sym is not None:
            raise DomainError("deletions carry no symbol")
        if self.kind == "ins" and self.sym is None:
            raise DomainError("insertions need a symbol")

    def to_json(self):
        d = {"op": self.kind, "pos": self.pos}
        if self.kind == "ins":
            d["sym"] = self.sym
        return d


@dataclass(frozen=True)
class EditScript:
    ops: Tuple[EditOp, ...] = ()

    def __len__(self):
        return len(self.ops)

    def __add__(self, other: "EditScript") -> "EditScript":
        return EditScript(self.ops + other.ops)

    def shifted(self, offset: int) -> "EditScript":
        return EditScript(tuple(EditOp(o.kind, o.pos + offset, o.sym) for o in self.ops))

    def to_json(self):
        return [o.to_json() for o in self.ops]

    @classmethod
    def from_json(cls, obj):
        ops = []
        for d in obj:
            sym = d.get("sym")
            ops.append(EditOp(d["op"], int(d["pos"]), None if sym is None else int(sym)))
        return cls(tuple(ops))


def apply_script(x: Seq, s: EditScript) -> Seq:
    buf = list(x.symbols)
    for k, op in enumerate(s.ops):
        if op.kind == "del":
            if not 0 <= op.pos < len(buf):
                raise DomainError(f"op {k}: delete position {op.pos} out of range (length {len(buf)})")
            del buf[op.pos]
        else:
            if not 0 <= op.pos <= len(buf):
                raise DomainError(f"op {k}: insert position {op.pos} out of range (length {len(buf)})")
            if not 0 <= op.sym < x.q:
                raise DomainError(f"op {k}: symbol {op.sym} outside alphabet of size {x.q}")
            buf.insert(op.pos, op.sym)
    return Seq(tuple(buf), x.q)


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def random_script(x: Seq, D: int, I: int, seed) -> EditScript:
    """D deletions at uniform positions, then I uniform insertions."""
    if D > len(x) or D < 0 or I < 0:
        raise DomainError(f"cannot delete {D} symbols from a string of length {len(x)}")
    rng = make_rng(seed)
    ops: List[EditOp] = []
    length = len(x)
    for _ in range(D):
        ops.append(EditOp("del", int(rng.integers(length))))
        length -= 1
    for _ in range(I):
        ops.append(EditOp("ins", int(rng.integers(length + 1)), int(rng.integers(x.q))))
        length += 1
    return EditScript(tuple(ops))


def script_cost(s: EditScript, z: int = 1) -> Tuple[int, int, int]:
    if z < 1:
        raise DomainError(f"z must be >= 1, got {z}")
    D = sum(1 for o in s.ops if o.kind == "del")
    I = len(s.ops) - D
    return D, I, I + 2 * z * D
