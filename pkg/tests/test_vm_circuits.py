import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rzkbpk import kernels, vm
from rzkbpk.circuits import CircuitBuilder, circuit_from_text, circuit_to_text
from rzkbpk.errors import CapacityError, DomainError
from rzkbpk.wire import Bits


# --- interpreter ---------------------------------------------------------------


def test_vm_const_program():
    prog = vm.VmProgram(
        (vm.Instr(vm.LOAD, dst=0, imm=0x5C), vm.Instr(vm.OUT, src=0, imm=0)),
        input_len=4,
        output_len=1,
    )
    for data in (b"\x00" * 4, b"\xff" * 4, b"abcd"):
        assert vm.vm_run(prog, data) == b"\x5c"


def test_vm_echo_program():
    prog = vm.VmProgram(
        (vm.Instr(vm.INP, dst=1, imm=0), vm.Instr(vm.OUT, src=1, imm=0)),
        input_len=8,
        output_len=1,
    )
    assert vm.vm_run(prog, b"zyxwvuts") == b"z"


def test_vm_frozen_ten_instruction_program():
    # reference-interpreter output, frozen
    prog = vm.VmProgram(
        (
            vm.Instr(vm.INP, dst=0, imm=0),
            vm.Instr(vm.INP, dst=1, imm=1),
            vm.Instr(vm.XOR, dst=0, src=1),
            vm.Instr(vm.LOAD, dst=2, imm=0x0F),
            vm.Instr(vm.AND, dst=0, src=2),
            vm.Instr(vm.NOT, dst=1),
            vm.Instr(vm.OR, dst=0, src=1),
            vm.Instr(vm.MOV, dst=3, src=0),
            vm.Instr(vm.NOT, dst=3),
            vm.Instr(vm.OUT, src=3, imm=0),
        ),
        input_len=2,
        output_len=1,
    )
    assert vm.vm_run(prog, bytes([0xA5, 0x3C])).hex() == "34"


def test_vm_runs_exactly_declared_steps():
    # padding no-ops leave the result unchanged
    prog = vm.VmProgram(
        (vm.Instr(vm.INP, dst=0, imm=3), vm.Instr(vm.OUT, src=0, imm=0)),
        input_len=4,
        output_len=1,
    )
    assert vm.vm_run(prog, b"wxyz") == vm.vm_run(prog.padded(16), b"wxyz")


def test_vm_capacity_and_validation():
    with pytest.raises(CapacityError):
        vm.VmProgram((vm.Instr(vm.LOAD),) * 65, input_len=1, output_len=1)
    with pytest.raises(DomainError):
        vm.Instr(8, 0, 0, 0)
    with pytest.raises(DomainError):
        vm.Instr(vm.LOAD, dst=4)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 3), st.integers(0, 3), st.integers(0, 255)), max_size=12))
def test_vm_encode_decode_roundtrip(raw):
    prog = vm.VmProgram(
        tuple(vm.Instr(*r) for r in raw), input_len=4, output_len=1
    )
    enc = vm.encode_program(prog)
    assert len(enc) == 2 * len(prog.instrs)
    dec = vm.decode_program(enc, 4, 1)
    assert dec == prog


# --- circuit builder and evaluator ------------------------------------------------


def test_builder_constant_folding():
    b = CircuitBuilder()
    w = b.witness_inputs(1)[0]
    assert b.AND(w, b.const(0)) == 0
    assert b.AND(w, b.const(1)) == w
    assert b.XOR(w, b.const(0)) == w
    assert b.XOR(w, w) == 0
    # NOT is desugared; no NOT gates are emitted
    nw = b.NOT(w)
    circ = b.finalize(nw)
    assert set(circ.kinds.tolist()) <= {0, 1}


@pytest.mark.parametrize("x,y", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_gate_semantics(x, y):
    b = CircuitBuilder()
    w = b.witness_inputs(2)
    outs = [b.AND(w[0], w[1]), b.XOR(w[0], w[1]), b.OR(w[0], w[1]), b.NOT(w[0])]
    circ = b.finalize(outs[0])
    vals = circ.eval(Bits.from_int_list([x, y]))
    assert vals[outs[0]] == (x & y)
    assert vals[outs[1]] == (x ^ y)
    assert vals[outs[2]] == (x | y)
    assert vals[outs[3]] == (1 - x)


def test_mux_many_selects():
    b = CircuitBuilder()
    sel = b.witness_inputs(2)
    items = [b.byte_const(v) for v in (0x11, 0x22, 0x33, 0x44)]
    out = b.mux_many(sel, items)
    circ = b.finalize(out[0])
    for v in range(4):
        vals = circ.eval(Bits(2, v))
        got = 0
        for wbit in out:
            got = (got << 1) | int(vals[wbit])
        assert got == (0x11, 0x22, 0x33, 0x44)[v]


def test_levelized_numpy_eval_matches_loop():
    rng = random.Random(3)
    b = CircuitBuilder()
    ws = b.witness_inputs(12)
    pool = list(ws)
    for _ in range(600):
        a, c = rng.choice(pool), rng.choice(pool)
        pool.append(b.AND(a, c) if rng.random() < 0.5 else b.XOR(a, c))
    circ = b.finalize(pool[-1])
    wit = Bits(12, rng.getrandbits(12))
    v1 = circ.eval(wit)
    values = np.zeros(circ.n_wires, dtype=np.uint8)
    values[1] = 1
    values[circ.public_wires] = circ.public_values
    values[circ.witness_wires] = np.array(wit.bits(), dtype=np.uint8)
    kernels._eval_gates_numpy(circ.kinds, circ.in1, circ.in2, circ.outs, values)
    assert np.array_equal(v1, values)
    k, i1, i2, o, ranges = circ.levels()
    values2 = np.zeros(circ.n_wires, dtype=np.uint8)
    values2[1] = 1
    values2[circ.public_wires] = circ.public_values
    values2[circ.witness_wires] = np.array(wit.bits(), dtype=np.uint8)
    kernels._eval_gates_numpy_levels(ranges, k, i1, i2, o, values2)
    assert np.array_equal(v1, values2)


def test_circuit_text_roundtrip():
    b = CircuitBuilder()
    w = b.witness_inputs(3)
    p = b.public_inputs([1, 0])
    out = b.AND(b.XOR(w[0], p[0]), b.OR(w[1], w[2]))
    circ = b.finalize(out)
    text = circuit_to_text(circ)
    assert "gate AND" in text and "gate XOR" in text
    back = circuit_from_text(text)
    for wit_val in range(8):
        wit = Bits(3, wit_val)
        assert back.satisfied_by(wit) == circ.satisfied_by(wit)
