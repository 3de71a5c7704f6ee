"""Tiny straight-line virtual machine.

Programs are lists of at most 64 two-byte instructions over four 8-bit
registers; there is no control flow, so runtime equals instruction count
and an execution unrolls into a fixed boolean circuit.

Instruction encoding (2 bytes)::

    byte0 = opcode(3 bits) | dst(2 bits) | src(2 bits) | spare(1 bit)
    byte1 = imm8

Opcode table::

    0 LOAD  dst, imm   R[dst] = imm
    1 XOR   dst, src   R[dst] ^= R[src]
    2 AND   dst, src   R[dst] &= R[src]
    3 OR    dst, src   R[dst] |= R[src]
    4 NOT   dst        R[dst] = ~R[dst] & 0xFF
    5 MOV   dst, src   R[dst] = R[src]
    6 OUT   src, imm   out[imm mod output_len] = R[src]
    7 INP   dst, imm   R[dst] = input[imm mod input_pad]  (zero-padded input)

``input_pad`` is the declared input length rounded up to a power of two,
so the circuit form of INP is a plain multiplexer on the low bits of imm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapacityError, DomainError

LOAD, XOR, AND, OR, NOT, MOV, OUT, INP = range(8)
OP_NAMES = ("LOAD", "XOR", "AND", "OR", "NOT", "MOV", "OUT", "INP")

NUM_REGS = 4
MAX_INSTRUCTIONS = 64  # hard cap B
MAX_STEPS = 256  # hard cap T
MAX_INPUT_BYTES = 32
MAX_OUTPUT_BYTES = 2


def next_pow2(n: int) -> int:
    p = 1
    while p < n:
        p *= 2
    return p


@dataclass(frozen=True)
class Instr:
    op: int
    dst: int = 0
    src: int = 0
    imm: int = 0

    def __post_init__(self):
        if not 0 <= self.op < 8:
            raise DomainError("bad opcode")
        if not (0 <= self.dst < NUM_REGS and 0 <= self.src < NUM_REGS):
            raise DomainError("bad register")
        if not 0 <= self.imm < 256:
            raise DomainError("bad immediate")


NOP = Instr(MOV, 0, 0, 0)


@dataclass(frozen=True)
class VmProgram:
    instrs: tuple
    input_len: int
    output_len: int

    def __post_init__(self):
        if len(self.instrs) > MAX_INSTRUCTIONS:
            raise CapacityError(f"program longer than {MAX_INSTRUCTIONS} instructions")
        if not 0 < self.input_len <= MAX_INPUT_BYTES:
            raise DomainError("input length out of range")
        if not 0 < self.output_len <= MAX_OUTPUT_BYTES:
            raise DomainError("output length out of range")

    @property
    def input_pad(self) -> int:
        return next_pow2(self.input_len)

    def padded(self, length: int) -> "VmProgram":
        if length < len(self.instrs):
            raise CapacityError("cannot pad to fewer instructions")
        instrs = tuple(self.instrs) + (NOP,) * (length - len(self.instrs))
        return VmProgram(instrs, self.input_len, self.output_len)


def vm_run(prog: VmProgram, data: bytes) -> bytes:
    """Execute the program; exactly len(prog.instrs) steps."""
    if len(data) != prog.input_len:
        raise DomainError("input length mismatch")
    padded = data + b"\x00" * (prog.input_pad - prog.input_len)
    regs = [0] * NUM_REGS
    out = bytearray(prog.output_len)
    for ins in prog.instrs:
        if ins.op == LOAD:
            regs[ins.dst] = ins.imm
        elif ins.op == XOR:
            regs[ins.dst] ^= regs[ins.src]
        elif ins.op == AND:
            regs[ins.dst] &= regs[ins.src]
        elif ins.op == OR:
            regs[ins.dst] |= regs[ins.src]
        elif ins.op == NOT:
            regs[ins.dst] = ~regs[ins.dst] & 0xFF
        elif ins.op == MOV:
            regs[ins.dst] = regs[ins.src]
        elif ins.op == OUT:
            out[ins.imm % prog.output_len] = regs[ins.src]
        else:  # INP
            regs[ins.dst] = padded[ins.imm % prog.input_pad]
    return bytes(out)


def encode_instr(ins: Instr) -> bytes:
    return bytes(((ins.op << 5) | (ins.dst << 3) | (ins.src << 1), ins.imm))


def decode_instr(data: bytes) -> Instr:
    if len(data) != 2:
        raise DomainError("instruction is two bytes")
    b0 = data[0]
    return Instr(op=b0 >> 5, dst=(b0 >> 3) & 3, src=(b0 >> 1) & 3, imm=data[1])


def encode_program(prog: VmProgram) -> bytes:
    return b"".join(encode_instr(i) for i in prog.instrs)


def decode_program(data: bytes, input_len: int, output_len: int) -> VmProgram:
    if len(data) % 2 != 0:
        raise DomainError("program encoding must be a whole number of instructions")
    instrs = tuple(decode_instr(data[i : i + 2]) for i in range(0, len(data), 2))
    return VmProgram(instrs, input_len, output_len)
