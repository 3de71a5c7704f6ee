"""Public-coin circuit-satisfiability argument and the trapdoor-language
compiler.

The argument commits, per parallel repetition, to a mask bit for every
wire, to every masked wire value, and to the four masked truth-table rows
of every gate.  A 0 challenge bit opens masks and tables (the verifier
reconstructs each gate's table); a 1 bit opens masked values, the single
consistent row per gate, and the masks of public and output wires.  A fork
that differs in any repetition bit therefore pins the full assignment
w = v xor m.

``compile_lambda`` turns the trapdoor statement "c commits (bitwise,
PRG-based) to the digest of a program that maps c to r within bounded
straight-line time" into one such circuit, embedding the gate-level sponge
permutation and PRG."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import kernels, vm
from .circuits import Circuit, CircuitBuilder, KIND_NOT, ONE, ZERO
from .commitments import NaorCommitment
from .errors import CapacityError, ContractError, DomainError, WitnessError
from .primitives import PRG_INDEX, HashIndex, batch_prg, sponge_iv
from .wire import Bits, concat_bits

# --- gate-level sponge -------------------------------------------------------


def _rot(ws: list, r: int) -> list:
    return ws[r:] + ws[:r]


def emit_perm(b: CircuitBuilder, state: list) -> list:
    """One permutation block; mirrors kernels.perm64 bit for bit."""
    L, R = state[:32], state[32:]
    for i in range(kernels.ROUNDS):
        ra = _rot(R, kernels.ROT_A)
        rb = _rot(R, kernels.ROT_B)
        rc2 = _rot(R, kernels.ROT_C)
        rc_const = kernels.RC[i]
        f = []
        for j in range(32):
            w = b.XOR(b.AND(ra[j], rb[j]), rc2[j])
            if (rc_const >> (31 - j)) & 1:
                w = b.NOT(w)
            f.append(w)
        L, R = R, [b.XOR(L[j], f[j]) for j in range(32)]
    return L + R


def _const_state(b: CircuitBuilder, value: int) -> list:
    return [b.const((value >> (63 - i)) & 1) for i in range(64)]


def _pad_bytes(n_data: int) -> list:
    total = n_data + 1
    return [0x80] + [0x00] * ((-total) % 4)


def emit_sponge_hash(b: CircuitBuilder, h: HashIndex, data_bytes: list, n_out: int) -> list:
    """Hash a fixed-length byte-wire vector to n_out <= 32 bits."""
    if n_out > 32:
        raise CapacityError("gate-level hash squeezes a single block")
    wires = [w for byte in data_bytes for w in byte]
    for pv in _pad_bytes(len(data_bytes)):
        wires.extend(b.byte_const(pv))
    state = _const_state(b, sponge_iv(h.index, h.n))
    for off in range(0, len(wires), 32):
        block = wires[off : off + 32]
        state = state[:32] + [b.XOR(state[32 + j], block[j]) for j in range(32)]
        state = emit_perm(b, state)
    return state[32 : 32 + n_out]


def emit_prg(b: CircuitBuilder, seed_bits: list, out_bits: int) -> list:
    """Gate-level prg_expand for byte-aligned seeds of 8 or 16 bits."""
    if len(seed_bits) not in (8, 16):
        raise CapacityError("gate-level PRG supports 8- or 16-bit seeds")
    iv = sponge_iv(PRG_INDEX, 32)
    out = []
    n_blocks = (out_bits + 31) // 32
    for i in range(n_blocks):
        msg = list(seed_bits)
        msg += [b.const((i >> (7 - k)) & 1) for k in range(8)]
        for pv in _pad_bytes(len(seed_bits) // 8 + 1):
            msg += b.byte_const(pv)
        state = _const_state(b, iv)
        state = state[:32] + [b.XOR(state[32 + j], msg[j]) for j in range(32)]
        state = emit_perm(b, state)
        out.extend(state[32:64])
    return out[:out_bits]


# --- the trapdoor-language compiler --------------------------------------------


@dataclass(frozen=True)
class LambdaMeta:
    bounds: tuple
    n: int
    prog_bits: int
    seed_bits: int
    gate_count: int


def _emit_vm(b: CircuitBuilder, prog_wires: list, input_bytes: list, n_steps: int, output_len: int):
    """Unrolled universal interpreter over witness-supplied instructions."""
    pad = vm.next_pow2(len(input_bytes))
    inputs = list(input_bytes) + [b.byte_const(0) for _ in range(pad - len(input_bytes))]
    regs = [b.byte_const(0) for _ in range(vm.NUM_REGS)]
    out = [b.byte_const(0) for _ in range(output_len)]
    sel_bits = pad.bit_length() - 1
    for step in range(n_steps):
        ins = prog_wires[step * 16 : (step + 1) * 16]
        op_bits, dst_bits, src_bits = ins[0:3], ins[3:5], ins[5:7]
        imm = ins[8:16]
        onehot = []
        nb = [b.NOT(x) for x in op_bits]
        for v in range(8):
            lits = [op_bits[k] if (v >> (2 - k)) & 1 else nb[k] for k in range(3)]
            onehot.append(b.and_many(lits))
        src_val = b.mux_many(src_bits, regs)
        dst_val = b.mux_many(dst_bits, regs)
        inp_val = b.mux_many(imm[8 - sel_bits : 8], inputs) if sel_bits else inputs[0]
        cands = [
            imm,  # LOAD
            b.byte_xor(dst_val, src_val),
            b.byte_and(dst_val, src_val),
            b.byte_or(dst_val, src_val),
            b.byte_not(dst_val),
            src_val,  # MOV
            dst_val,  # OUT leaves registers alone
            inp_val,
        ]
        new_val = b.mux_many(op_bits, cands)
        dnb = [b.NOT(x) for x in dst_bits]
        for rI in range(vm.NUM_REGS):
            lits = [dst_bits[k] if (rI >> (1 - k)) & 1 else dnb[k] for k in range(2)]
            en = b.and_many(lits)
            regs[rI] = b.byte_mux(en, new_val, regs[rI])
        is_out = onehot[vm.OUT]
        if output_len == 1:
            out[0] = b.byte_mux(is_out, src_val, out[0])
        else:
            pos = imm[7]  # imm mod 2
            out[0] = b.byte_mux(b.AND(is_out, b.NOT(pos)), src_val, out[0])
            out[1] = b.byte_mux(b.AND(is_out, pos), src_val, out[1])
    return out


def compile_lambda(h: HashIndex, c: NaorCommitment, r: Bits, bounds: tuple) -> tuple:
    """Circuit satisfied by (program, seeds) iff c opens bitwise to the
    program's digest under those seeds and the program maps c to r.

    Returns (circuit, meta).  The circuit is a deterministic function of
    the public statement, so the verifier rebuilds it locally.
    """
    B, T = bounds
    n = h.n
    if B > min(vm.MAX_INSTRUCTIONS, T) or T > vm.MAX_STEPS:
        raise CapacityError("bounds exceed the straight-line VM caps")
    if n % 8 != 0 or n > 8:
        raise CapacityError("trapdoor statements are compiled at 8-bit digests")
    rc = c.receiver_challenge
    if rc.n != 3 * n or c.data.n != n * rc.n or r.n != n:
        raise DomainError("statement shape mismatch")
    in_len = c.data.n // 8
    if in_len > vm.MAX_INPUT_BYTES:
        raise CapacityError("commitment too long for the VM input window")

    b = CircuitBuilder()
    c_ws = b.public_inputs(c.data.bits())
    rc_ws = b.public_inputs(rc.bits())
    r_ws = b.public_inputs(r.bits())
    prog_ws = b.witness_inputs(2 * B * 8)
    seed_ws = [b.witness_inputs(n) for _ in range(n)]

    c_bytes = [c_ws[i * 8 : (i + 1) * 8] for i in range(in_len)]
    out = _emit_vm(b, prog_ws, c_bytes, B, r.n // 8)
    out_bits = [w for byte in out for w in byte]
    ok_run = b.equal(out_bits, r_ws)

    prog_bytes = [prog_ws[i * 8 : (i + 1) * 8] for i in range(2 * B)]
    digest = emit_sponge_hash(b, h, prog_bytes, n)

    naor_oks = []
    for i in range(n):
        exp = emit_prg(b, seed_ws[i], rc.n)
        block = []
        for j in range(rc.n):
            block.append(b.XOR(exp[j], b.AND(digest[i], rc_ws[j])))
        naor_oks.append(b.equal(block, c_ws[i * rc.n : (i + 1) * rc.n]))
    ok = b.and_many([ok_run] + naor_oks)
    circuit = b.finalize(ok)
    meta = LambdaMeta(
        bounds=(B, T),
        n=n,
        prog_bits=2 * B * 8,
        seed_bits=n * n,
        gate_count=circuit.n_gates,
    )
    return circuit, meta


def lambda_witness(prog: vm.VmProgram, seeds: list, B: int) -> Bits:
    """Pack (padded program, per-digest-bit seeds) into the witness layout."""
    enc = vm.encode_program(prog.padded(B))
    return concat_bits([Bits.from_bytes(enc, len(enc) * 8)] + list(seeds))


def lambda_unsat_certificate(c: NaorCommitment) -> bool:
    """True iff some commitment block opens under no (bit, seed) pair at all,
    which certifies the compiled circuit unsatisfiable.  Exhaustive over the
    seed space; micro digest sizes only."""
    n = c.n_bits
    rc = c.receiver_challenge
    if n > 8:
        raise CapacityError("exhaustive opening search only at micro sizes")
    seeds = np.arange(1 << n, dtype=np.uint64)
    blocks = set(int(x) for x in batch_prg(seeds, n, rc.n))
    for i in range(n):
        block = c.data.slice(i * rc.n, (i + 1) * rc.n).val
        if block not in blocks and (block ^ rc.val) not in blocks:
            return True
    return False


# --- circuit-satisfiability sigma instance ---------------------------------------


def _normalize(circuit: Circuit) -> Circuit:
    """Rewrite NOT gates to XOR-with-one so every gate has two inputs."""
    if not np.any(circuit.kinds == KIND_NOT):
        return circuit
    kinds = circuit.kinds.copy()
    in2 = circuit.in2.copy()
    sel = kinds == KIND_NOT
    kinds[sel] = 1
    in2[sel] = ONE
    return replace(circuit, kinds=kinds, in2=in2, _level_cache=None)


def _pack_blocks(vals: np.ndarray, nbits: int) -> bytes:
    nbytes = (nbits + 7) // 8
    shift = 8 * nbytes - nbits
    out = np.empty((len(vals), nbytes), dtype=np.uint8)
    v = vals.astype(np.uint64) << np.uint64(shift)
    for j in range(nbytes):
        out[:, j] = (v >> np.uint64(8 * (nbytes - 1 - j))) & np.uint64(0xFF)
    return out.tobytes()


def _unpack_blocks(data: bytes, count: int, nbits: int) -> np.ndarray:
    nbytes = (nbits + 7) // 8
    arr = np.frombuffer(data, dtype=np.uint8, count=count * nbytes).reshape(count, nbytes)
    v = np.zeros(count, dtype=np.uint64)
    for j in range(nbytes):
        v = (v << np.uint64(8)) | arr[:, j].astype(np.uint64)
    return v >> np.uint64(8 * nbytes - nbits)


def _pack_bits(bits: np.ndarray) -> bytes:
    return np.packbits(bits.astype(np.uint8)).tobytes()


def _unpack_bits(data: bytes, count: int) -> np.ndarray:
    need = (count + 7) // 8
    arr = np.frombuffer(data, dtype=np.uint8, count=need)
    return np.unpackbits(arr)[:count]


@dataclass(frozen=True, eq=False)
class CsatSpec:
    """Sigma instance: knowledge of a satisfying assignment of a circuit.

    ``rc`` is the Naor receiver challenge for every internal commitment; it
    arrives as the round-0 message of the 4-round variant."""

    circuit: Circuit
    t: int
    seed_bits: int = 8
    rc: Bits = None

    @property
    def challenge_space(self):
        return ("bits", self.t)

    @property
    def setup_bits(self) -> int:
        return 3 * self.seed_bits

    def bind_setup(self, rc: Bits) -> "CsatSpec":
        if rc.n != self.setup_bits:
            raise DomainError("receiver challenge width mismatch")
        return replace(self, rc=rc)

    def challenge_ok(self, e) -> bool:
        return isinstance(e, Bits) and e.n == self.t

    def effective_challenge(self, ebits: Bits) -> Bits:
        return ebits

    def enc_a(self, a) -> bytes:
        return a

    def enc_z(self, z) -> bytes:
        return z

    def dec_a(self, data: bytes) -> bytes:
        return data

    def dec_z(self, data: bytes) -> bytes:
        return data

    # -- layout -----------------------------------------------------------

    def _shape(self):
        c = _normalize(self.circuit)
        W, G = c.n_wires, c.n_gates
        return c, W, G, 2 * W + 12 * G

    def _require_rc(self):
        if self.rc is None:
            raise ContractError("receiver challenge not bound (4-round setup missing)")

    def _commit_vector(self, masks, vhat, rows):
        return np.concatenate([masks, vhat, rows.reshape(-1)])

    def _rows_from_masks(self, c: Circuit, masks: np.ndarray) -> np.ndarray:
        G = c.n_gates
        ma, mb, mc = masks[c.in1], masks[c.in2], masks[c.outs]
        rows = np.empty((G, 4, 3), dtype=np.uint8)
        for idx, (ra, rb) in enumerate(((0, 0), (0, 1), (1, 0), (1, 1))):
            ta, tb = ra ^ ma, rb ^ mb
            g_out = np.where(c.kinds == 0, ta & tb, ta ^ tb)
            rows[:, idx, 0] = ra
            rows[:, idx, 1] = rb
            rows[:, idx, 2] = g_out ^ mc
        return rows

    def _expand_seeds(self, seeds: np.ndarray) -> np.ndarray:
        return batch_prg(seeds, self.seed_bits, self.rc.n)

    def _commit_blocks(self, bits: np.ndarray, seeds: np.ndarray) -> np.ndarray:
        blocks = self._expand_seeds(seeds)
        return np.where(bits == 1, blocks ^ np.uint64(self.rc.val), blocks)

    def _seed_array(self, master: int, count: int) -> np.ndarray:
        sb = self.seed_bits // 8
        raw = kernels.byte_stream(master, count * sb)
        if sb == 1:
            return raw.astype(np.uint64)
        return (raw[0::2].astype(np.uint64) << np.uint64(8)) | raw[1::2].astype(np.uint64)

    # -- prover ------------------------------------------------------------

    def check_witness(self, witness) -> bool:
        if not isinstance(witness, Bits):
            return False
        c = _normalize(self.circuit)
        try:
            return c.satisfied_by(witness)
        except DomainError:
            return False

    def commit(self, rng, witness=None):
        self._require_rc()
        if witness is None:
            raise ContractError("circuit instance cannot commit without its witness")
        if not self.check_witness(witness):
            raise WitnessError("assignment does not satisfy the circuit")
        c, W, G, M = self._shape()
        values = c.eval(witness)
        reps = []
        chunks = []
        for _ in range(self.t):
            master = rng.getrandbits(64)
            masks = kernels.bit_stream(master, W)
            vhat = values ^ masks
            rows = self._rows_from_masks(c, masks)
            seeds = self._seed_array(kernels.splitmix64(master ^ 0x5EED), M)
            vector = self._commit_vector(masks, vhat, rows)
            blocks = self._commit_blocks(vector, seeds)
            chunks.append(_pack_blocks(blocks, self.rc.n))
            reps.append({"masks": masks, "vhat": vhat, "rows": rows, "seeds": seeds})
        return reps, b"".join(chunks)

    def respond(self, state, witness, e: Bits):
        c, W, G, M = self._shape()
        out = bytearray()
        sb = self.seed_bits // 8
        open_wires = np.append(c.public_wires, c.output_wire)
        for k in range(self.t):
            rep = state[k]
            seeds = rep["seeds"]
            if e.bit(k) == 0:
                out += _pack_bits(rep["masks"])
                out += _pack_bits(rep["rows"].reshape(-1))
                out += _pack_blocks(seeds[0:W], 8 * sb)
                out += _pack_blocks(seeds[2 * W :], 8 * sb)
            else:
                vhat = rep["vhat"]
                out += _pack_bits(vhat)
                out += _pack_blocks(seeds[W : 2 * W], 8 * sb)
                idx = vhat[c.in1] * 2 + vhat[c.in2]
                sel = 2 * W + 12 * np.arange(G, dtype=np.int64) + 3 * idx
                row_bits = rep["rows"][np.arange(G), idx, :]
                out += _pack_bits(row_bits.reshape(-1))
                row_seeds = np.stack([seeds[sel + j] for j in range(3)], axis=1)
                out += _pack_blocks(row_seeds.reshape(-1), 8 * sb)
                out += _pack_bits(rep["masks"][open_wires])
                out += _pack_blocks(seeds[open_wires], 8 * sb)
        return bytes(out)

    # -- verifier -------------------------------------------------------------

    def verify(self, a, e, z) -> bool:
        try:
            return self._verify_inner(a, e, z)
        except (ValueError, IndexError, TypeError):
            return False

    def _verify_inner(self, a: bytes, e, z: bytes) -> bool:
        if not self.challenge_ok(e):
            return False
        self._require_rc()
        c, W, G, M = self._shape()
        nb = (self.rc.n + 7) // 8
        if len(a) != self.t * M * nb:
            return False
        sb = self.seed_bits // 8
        open_wires = np.append(c.public_wires, c.output_wire)
        n_open = len(open_wires)
        gi = np.arange(G, dtype=np.int64)
        pos = 0

        def take(nbytes):
            nonlocal pos
            chunk = z[pos : pos + nbytes]
            if len(chunk) != nbytes:
                raise ValueError("truncated opening")
            pos += nbytes
            return chunk

        check_bits, check_seeds, check_slots = [], [], []
        logic_ok = True
        for k in range(self.t):
            committed = _unpack_blocks(a[k * M * nb : (k + 1) * M * nb], M, self.rc.n)
            if e.bit(k) == 0:
                masks = _unpack_bits(take((W + 7) // 8), W)
                rows = _unpack_bits(take((12 * G + 7) // 8), 12 * G).reshape(G, 4, 3)
                mask_seeds = _unpack_blocks(take(W * sb), W, 8 * sb)
                row_seeds = _unpack_blocks(take(12 * G * sb), 12 * G, 8 * sb)
                if not np.array_equal(rows, self._rows_from_masks(c, masks)):
                    logic_ok = False
                check_bits.append(np.concatenate([masks, rows.reshape(-1)]))
                check_seeds.append(np.concatenate([mask_seeds, row_seeds]))
                slots = np.concatenate([np.arange(W), 2 * W + np.arange(12 * G)])
                check_slots.append(committed[slots])
            else:
                vhat = _unpack_bits(take((W + 7) // 8), W)
                vhat_seeds = _unpack_blocks(take(W * sb), W, 8 * sb)
                row_bits = _unpack_bits(take((3 * G + 7) // 8), 3 * G).reshape(G, 3)
                row_seeds = _unpack_blocks(take(3 * G * sb), 3 * G, 8 * sb)
                open_masks = _unpack_bits(take((n_open + 7) // 8), n_open)
                open_seeds = _unpack_blocks(take(n_open * sb), n_open, 8 * sb)
                va, vb, vo = vhat[c.in1], vhat[c.in2], vhat[c.outs]
                if not (
                    np.array_equal(row_bits[:, 0], va)
                    and np.array_equal(row_bits[:, 1], vb)
                    and np.array_equal(row_bits[:, 2], vo)
                ):
                    logic_ok = False
                revealed = vhat[open_wires] ^ open_masks
                expected = np.append(c.public_values, 1).astype(np.uint8)
                if not np.array_equal(revealed, expected):
                    logic_ok = False
                idx = va * 2 + vb
                sel = 2 * W + 12 * gi + 3 * idx
                slots = np.concatenate(
                    [
                        W + np.arange(W),
                        np.stack([sel, sel + 1, sel + 2], axis=1).reshape(-1),
                        open_wires,
                    ]
                )
                check_bits.append(np.concatenate([vhat, row_bits.reshape(-1), open_masks]))
                check_seeds.append(np.concatenate([vhat_seeds, row_seeds, open_seeds]))
                check_slots.append(committed[slots])
        if pos != len(z):
            return False
        bits_all = np.concatenate(check_bits)
        seeds_all = np.concatenate(check_seeds)
        slots_all = np.concatenate(check_slots)
        expect = self._commit_blocks(bits_all, seeds_all)
        return logic_ok and np.array_equal(expect, slots_all)

    # -- simulator and extractor ------------------------------------------------

    def simulate(self, e: Bits, rng):
        """Accepting transcript for a fixed challenge without any witness."""
        reps, a = self.simulate_state(e, rng)
        return a, self.respond(reps, None, e)

    def simulate_state(self, e: Bits, rng):
        """Simulator internals: commitments answerable only at ``e``.

        Exposed so cheating strategies can commit for a guessed challenge
        and then be forced to answer the real one."""
        self._require_rc()
        c, W, G, M = self._shape()
        reps = []
        chunks = []
        for k in range(self.t):
            master = rng.getrandbits(64)
            seeds = self._seed_array(kernels.splitmix64(master ^ 0x5EED), M)
            if e.bit(k) == 0:
                masks = kernels.bit_stream(master, W)
                vhat = np.zeros(W, dtype=np.uint8)  # never opened
                rows = self._rows_from_masks(c, masks)
            else:
                vhat = kernels.bit_stream(master, W)
                masks = kernels.bit_stream(kernels.splitmix64(master ^ 0xAB), W)
                open_wires = np.append(c.public_wires, c.output_wire)
                expected = np.append(c.public_values, 1).astype(np.uint8)
                masks[open_wires] = vhat[open_wires] ^ expected
                rows = np.zeros((G, 4, 3), dtype=np.uint8)
                idx = vhat[c.in1] * 2 + vhat[c.in2]
                gi = np.arange(G)
                rows[gi, idx, 0] = vhat[c.in1]
                rows[gi, idx, 1] = vhat[c.in2]
                rows[gi, idx, 2] = vhat[c.outs]
            vector = self._commit_vector(masks, vhat, rows)
            blocks = self._commit_blocks(vector, seeds)
            chunks.append(_pack_blocks(blocks, self.rc.n))
            reps.append({"masks": masks, "vhat": vhat, "rows": rows, "seeds": seeds})
        return reps, b"".join(chunks)

    def extract(self, a, e1: Bits, z1, e2: Bits, z2):
        """Assignment from a fork: masks from a 0-side, values from a 1-side."""
        c, W, G, M = self._shape()
        sb = self.seed_bits // 8
        for k in range(self.t):
            if e1.bit(k) != e2.bit(k):
                z_zero, e_zero = (z1, e1) if e1.bit(k) == 0 else (z2, e2)
                z_one = z2 if z_zero is z1 else z1
                e_one = e2 if z_zero is z1 else e1
                masks = self._opened_section(c, z_zero, e_zero, k, "masks")
                vhat = self._opened_section(c, z_one, e_one, k, "vhat")
                assignment = (vhat ^ masks)[c.witness_wires]
                return Bits.from_int_list(assignment.tolist())
        raise ValueError("no repetition with differing challenge bits")

    def _opened_section(self, c, z: bytes, e: Bits, rep: int, want: str) -> np.ndarray:
        W, G = c.n_wires, c.n_gates
        sb = self.seed_bits // 8
        n_open = len(c.public_wires) + 1
        size0 = (W + 7) // 8 + (12 * G + 7) // 8 + W * sb + 12 * G * sb
        size1 = (
            (W + 7) // 8
            + W * sb
            + (3 * G + 7) // 8
            + 3 * G * sb
            + (n_open + 7) // 8
            + n_open * sb
        )
        pos = 0
        for k in range(rep):
            pos += size0 if e.bit(k) == 0 else size1
        if want == "masks":
            assert e.bit(rep) == 0
            return _unpack_bits(z[pos : pos + (W + 7) // 8], W)
        assert e.bit(rep) == 1
        return _unpack_bits(z[pos : pos + (W + 7) // 8], W)


# --- convenience entry points -----------------------------------------------------


def csat_prove(circuit: Circuit, assignment: Bits, t: int, rc: Bits, e: Bits, rng):
    """One honest run at a fixed challenge; returns (spec, a, z)."""
    spec = CsatSpec(circuit, t=t, seed_bits=rc.n // 3).bind_setup(rc)
    state, a = spec.commit(rng, assignment)
    z = spec.respond(state, assignment, e)
    return spec, a, z


def csat_verify(spec: CsatSpec, a: bytes, e: Bits, z: bytes) -> bool:
    return spec.verify(a, e, z)


def csat_or_with(alg_spec, circuit: Circuit, t: int, seed_bits: int, rc: Bits = None):
    """OR statement over an algebraic branch and a circuit branch.

    The shared challenge width is t; the algebraic branch reduces its share
    mod q, the circuit branch consumes it bit per repetition."""
    from .sigma import OrStatement

    cs = CsatSpec(circuit, t=t, seed_bits=seed_bits)
    if rc is not None:
        cs = cs.bind_setup(rc)
    return OrStatement(branches=(alg_spec, cs), ell=t)


def csat_cheater_rate(circuit: Circuit, t: int, seed_bits: int, trials: int, seed: int) -> float:
    """Empirical acceptance rate of the optimal scripted cheater on a circuit
    it cannot satisfy: per trial it guesses the challenge, commits via the
    simulator, and must answer the real challenge.  Expected rate 2**-t."""
    import random as _random

    rng = _random.Random(seed)
    wins = 0
    for _ in range(trials):
        rc = Bits(3 * seed_bits, rng.getrandbits(3 * seed_bits))
        spec = CsatSpec(circuit, t=t, seed_bits=seed_bits).bind_setup(rc)
        guess = Bits(t, rng.getrandbits(t))
        reps, a = spec.simulate_state(guess, rng)
        actual = Bits(t, rng.getrandbits(t))
        z = spec.respond(reps, None, actual)
        if spec.verify(a, actual, z):
            wins += 1
    return wins / trials


# --- gate budgets ------------------------------------------------------------------


def perm_gate_count() -> int:
    b = CircuitBuilder()
    state = [b.witness_inputs(1)[0] for _ in range(64)]
    emit_perm(b, state)
    return len(b.kinds)


def load_budgets(path: str) -> dict:
    out = {}
    with open(path) as f:
        for line in f:
            parts = line.split()
            if len(parts) == 2 and not line.startswith("#"):
                out[parts[0]] = int(parts[1])
    return out
