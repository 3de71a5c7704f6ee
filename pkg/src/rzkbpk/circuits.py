"""Boolean circuits: builder, evaluator, and the line-oriented interchange
format ``gate <kind> <in1> <in2> <out>``.

Wires 0 and 1 are the constants 0 and 1.  The builder folds gates with
constant inputs, so emitted circuits contain only AND and XOR gates over
live wires (NOT is desugared to XOR with wire 1), which is the shape the
masked-table argument consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError
from .wire import Bits

KIND_AND, KIND_XOR, KIND_NOT = 0, 1, 2
KIND_NAMES = {KIND_AND: "AND", KIND_XOR: "XOR", KIND_NOT: "NOT"}
KIND_IDS = {v: k for k, v in KIND_NAMES.items()}

ZERO, ONE = 0, 1


@dataclass
class Circuit:
    kinds: np.ndarray
    in1: np.ndarray
    in2: np.ndarray
    outs: np.ndarray
    n_wires: int
    public_wires: np.ndarray
    public_values: np.ndarray
    witness_wires: np.ndarray
    output_wire: int
    _level_cache: object = field(default=None, repr=False)

    @property
    def n_gates(self) -> int:
        return len(self.kinds)

    def levels(self):
        """Gates grouped by depth (for the vectorized numpy fallback)."""
        if self._level_cache is None:
            level = np.zeros(self.n_wires, dtype=np.int64)
            glev = np.empty(self.n_gates, dtype=np.int64)
            for i in range(self.n_gates):
                lv = max(level[self.in1[i]], level[self.in2[i]]) + 1
                glev[i] = lv
                level[self.outs[i]] = lv
            order = np.argsort(glev, kind="stable")
            sorted_lev = glev[order]
            _, starts = np.unique(sorted_lev, return_index=True)
            ranges = list(zip(starts, np.append(starts[1:], len(sorted_lev))))
            self._level_cache = (
                self.kinds[order],
                self.in1[order],
                self.in2[order],
                self.outs[order],
                ranges,
            )
        return self._level_cache

    def eval(self, witness: Bits) -> np.ndarray:
        """All wire values for a witness; callers check values[output_wire]."""
        if witness.n != len(self.witness_wires):
            raise DomainError("witness length mismatch")
        values = np.zeros(self.n_wires, dtype=np.uint8)
        values[ONE] = 1
        values[self.public_wires] = self.public_values
        if witness.n:
            values[self.witness_wires] = np.array(witness.bits(), dtype=np.uint8)
        if self.n_gates == 0:
            return values
        if kernels.backend() == "numba" or self.n_gates < 512:
            kernels.eval_gates(self.kinds, self.in1, self.in2, self.outs, values)
        else:
            k, i1, i2, o, ranges = self.levels()
            kernels._eval_gates_numpy_levels(ranges, k, i1, i2, o, values)
        return values

    def satisfied_by(self, witness: Bits) -> bool:
        return int(self.eval(witness)[self.output_wire]) == 1


class CircuitBuilder:
    """Gate emission with constant folding over wires 0 (zero) and 1 (one)."""

    def __init__(self):
        self.kinds = []
        self.in1 = []
        self.in2 = []
        self.outs = []
        self.n_wires = 2
        self.public_wires = [ZERO, ONE]
        self.public_values = [0, 1]
        self.witness_wires = []

    def new_wire(self) -> int:
        w = self.n_wires
        self.n_wires += 1
        return w

    def public_inputs(self, values) -> list:
        ws = []
        for v in values:
            w = self.new_wire()
            self.public_wires.append(w)
            self.public_values.append(int(v) & 1)
            ws.append(w)
        return ws

    def witness_inputs(self, count: int) -> list:
        ws = [self.new_wire() for _ in range(count)]
        self.witness_wires.extend(ws)
        return ws

    def const(self, bit: int) -> int:
        return ONE if bit else ZERO

    def _emit(self, kind: int, a: int, b: int) -> int:
        w = self.new_wire()
        self.kinds.append(kind)
        self.in1.append(a)
        self.in2.append(b)
        self.outs.append(w)
        return w

    def AND(self, a: int, b: int) -> int:
        if a == ZERO or b == ZERO:
            return ZERO
        if a == ONE:
            return b
        if b == ONE:
            return a
        return self._emit(KIND_AND, a, b)

    def XOR(self, a: int, b: int) -> int:
        if a == ZERO:
            return b
        if b == ZERO:
            return a
        if a == b:
            return ZERO
        return self._emit(KIND_XOR, a, b)

    def NOT(self, a: int) -> int:
        return self.XOR(a, ONE)

    def OR(self, a: int, b: int) -> int:
        return self.XOR(self.XOR(a, b), self.AND(a, b))

    def MUX(self, s: int, a1: int, a0: int) -> int:
        """a1 if s else a0."""
        return self.XOR(a0, self.AND(s, self.XOR(a0, a1)))

    def xor_many(self, ws) -> int:
        acc = ZERO
        for w in ws:
            acc = self.XOR(acc, w)
        return acc

    def and_many(self, ws) -> int:
        ws = [w for w in ws if w != ONE]
        if not ws:
            return ONE
        while len(ws) > 1:
            nxt = []
            for i in range(0, len(ws) - 1, 2):
                nxt.append(self.AND(ws[i], ws[i + 1]))
            if len(ws) % 2:
                nxt.append(ws[-1])
            ws = nxt
        return ws[0]

    def equal(self, xs, ys) -> int:
        if len(xs) != len(ys):
            raise DomainError("comparator width mismatch")
        return self.and_many([self.NOT(self.XOR(a, b)) for a, b in zip(xs, ys)])

    # byte vectors are lists of 8 wires, most significant bit first

    def byte_xor(self, xs, ys):
        return [self.XOR(a, b) for a, b in zip(xs, ys)]

    def byte_and(self, xs, ys):
        return [self.AND(a, b) for a, b in zip(xs, ys)]

    def byte_or(self, xs, ys):
        return [self.OR(a, b) for a, b in zip(xs, ys)]

    def byte_not(self, xs):
        return [self.NOT(a) for a in xs]

    def byte_const(self, value: int):
        return [self.const((value >> (7 - i)) & 1) for i in range(8)]

    def byte_mux(self, s, xs, ys):
        """xs if s else ys, per bit."""
        return [self.MUX(s, a, b) for a, b in zip(xs, ys)]

    def mux_many(self, sel_bits, items):
        """items[index] where index is given by sel_bits (MSB first);
        len(items) must be a power of two."""
        if len(items) == 1:
            return items[0]
        half = len(items) // 2
        s = sel_bits[0]
        lo = self.mux_many(sel_bits[1:], items[:half])
        hi = self.mux_many(sel_bits[1:], items[half:])
        if isinstance(lo, list):
            return self.byte_mux(s, hi, lo)
        return self.MUX(s, hi, lo)

    def finalize(self, output_wire: int) -> Circuit:
        return Circuit(
            kinds=np.array(self.kinds, dtype=np.uint8),
            in1=np.array(self.in1, dtype=np.int64),
            in2=np.array(self.in2, dtype=np.int64),
            outs=np.array(self.outs, dtype=np.int64),
            n_wires=self.n_wires,
            public_wires=np.array(self.public_wires, dtype=np.int64),
            public_values=np.array(self.public_values, dtype=np.uint8),
            witness_wires=np.array(self.witness_wires, dtype=np.int64),
            output_wire=output_wire,
        )


# --- interchange format -------------------------------------------------------


def circuit_to_text(c: Circuit) -> str:
    lines = [f"wires {c.n_wires}", f"output {c.output_wire}"]
    for w, v in zip(c.public_wires, c.public_values):
        lines.append(f"public {w} {v}")
    for w in c.witness_wires:
        lines.append(f"witness {w}")
    for k, a, b, o in zip(c.kinds, c.in1, c.in2, c.outs):
        lines.append(f"gate {KIND_NAMES[int(k)]} {a} {b} {o}")
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    n_wires = output_wire = None
    pw, pv, ww = [], [], []
    kinds, in1, in2, outs = [], [], [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "#":
            continue
        if parts[0] == "wires":
            n_wires = int(parts[1])
        elif parts[0] == "output":
            output_wire = int(parts[1])
        elif parts[0] == "public":
            pw.append(int(parts[1]))
            pv.append(int(parts[2]))
        elif parts[0] == "witness":
            ww.append(int(parts[1]))
        elif parts[0] == "gate":
            kinds.append(KIND_IDS[parts[1]])
            in1.append(int(parts[2]))
            in2.append(int(parts[3]))
            outs.append(int(parts[4]))
        else:
            raise DomainError(f"bad circuit line: {line!r}")
    if n_wires is None or output_wire is None:
        raise DomainError("missing wires/output header")
    return Circuit(
        kinds=np.array(kinds, dtype=np.uint8),
        in1=np.array(in1, dtype=np.int64),
        in2=np.array(in2, dtype=np.int64),
        outs=np.array(outs, dtype=np.int64),
        n_wires=n_wires,
        public_wires=np.array(pw, dtype=np.int64),
        public_values=np.array(pv, dtype=np.uint8),
        witness_wires=np.array(ww, dtype=np.int64),
        output_wire=output_wire,
    )
