"""Resettably-sound sub-protocol machinery.

Two interchangeable instantiations of the sub-protocol in which the
commitment holder proves that a committed challenge opens to the value it
just sent:

* Path A: t parallel one-bit-challenge discrete-log-equality copies whose
  verifier coins come from a keyed PRF over the transcript.  Fast; used on
  the main protocol's hot path.
* Path B: the non-black-box skeleton.  The sub-verifier sends a hash index
  and receiver challenges, the sub-prover commits (bitwise, PRG-based) to
  a digest, the sub-verifier answers with a short string r, and the claim
  is proved inside a witness-indistinguishable OR whose escape branch says
  "the commitment opens to the digest of a straight-line program mapping
  the commitment to r".  A simulator that knows the deterministic
  counterparty's residual next-message program holds a real escape
  witness, which is what the one-many simulation and the rewinding
  reductions exploit.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import vm
from .circuit_wi import CsatSpec, compile_lambda, lambda_witness
from .commitments import ElGamalCommitment, NaorCommitment, naor_commit
from .errors import CapacityError, ContractError, ProtocolError, WitnessError
from .primitives import HashIndex, PrfKey, hash_eval, prf_stream
from .sigma import (
    ChaumPedersenSpec,
    OrStatement,
    dec_or_first,
    dec_or_response,
    enc_or_first,
    enc_or_response,
    or_compose,
    or_verify,
)
from .wire import Bits


# --- BGGL transform -----------------------------------------------------------


@dataclass(frozen=True)
class PublicCoinSpec:
    """Round schedule of a public-coin verifier: coin lengths per round."""

    rounds: tuple  # entries ("coin", nbits)


class DerandomizedVerifier:
    """Verifier whose every message is a PRF of the serialized view so far."""

    def __init__(self, spec: PublicCoinSpec, key: PrfKey):
        for kind, _ in spec.rounds:
            if kind != "coin":
                raise ContractError("BGGL transform requires a public-coin verifier")
        self.spec = spec
        self.key = key

    def message(self, round_index: int, view: bytes) -> Bits:
        kind, nbits = self.spec.rounds[round_index]
        return prf_stream(self.key, b"rnd%d|" % round_index + view, nbits)


def bggl_wrap(verifier_spec: PublicCoinSpec, k_v: PrfKey) -> DerandomizedVerifier:
    return DerandomizedVerifier(verifier_spec, k_v)


# --- the opening claim --------------------------------------------------------


def opening_claim_spec(G, h0: int, c_e: ElGamalCommitment, e: int) -> ChaumPedersenSpec:
    """The claim 'c_e opens to e' as a discrete-log-equality statement."""
    w = G.mul(c_e.v, G.inv(pow(G.g, e % G.q, G.p)))
    return ChaumPedersenSpec(G, g1=G.g, g2=h0, u=c_e.u, w=w)


# --- path A: parallel one-bit DL-equality copies ---------------------------------


class SubProverA:
    """Honest sub-prover; holds the commitment randomness r_e."""

    def __init__(self, G, h0: int, c_e: ElGamalCommitment, e: int, r_e: int, t: int, rng):
        self.spec = opening_claim_spec(G, h0, c_e, e)
        if not self.spec.check_witness(r_e):
            raise WitnessError("randomness does not open the commitment to e")
        self.G, self.t, self.r_e = G, t, r_e
        self.states = []
        self.a = []
        for _ in range(t):
            st, ai = self.spec.commit(rng)
            self.states.append(st)
            self.a.append(ai)

    def first_message(self) -> bytes:
        return b"".join(self.spec.enc_a(ai) for ai in self.a)

    def respond(self, bits: Bits) -> bytes:
        if bits.n != self.t:
            raise ProtocolError("challenge width mismatch")
        out = b""
        for k in range(self.t):
            z = self.spec.respond(self.states[k], self.r_e, bits.bit(k))
            out += self.spec.enc_z(z)
        return out


def sub_verify_a(G, h0, c_e, e, a_msg: bytes, bits: Bits, z_msg: bytes) -> bool:
    spec = opening_claim_spec(G, h0, c_e, e)
    t = bits.n
    aw, zw = 2 * G.elem_width, G.q_width
    if len(a_msg) != t * aw or len(z_msg) != t * zw:
        return False
    for k in range(t):
        a = spec.dec_a(a_msg[k * aw : (k + 1) * aw])
        z = spec.dec_z(z_msg[k * zw : (k + 1) * zw])
        if not spec.verify(a, bits.bit(k), z):
            return False
    return True


def craft_false_a(G, h0, c_e, e, guess: Bits, rng):
    """Cheating first message answering exactly the guessed challenge bits."""
    spec = opening_claim_spec(G, h0, c_e, e)
    a_msg, zs = b"", []
    for k in range(guess.n):
        a, z = spec.simulate(guess.bit(k), rng)
        a_msg += spec.enc_a(a)
        zs.append(spec.enc_z(z))
    return a_msg, b"".join(zs)


def rszk_prove_opening_A(G, h0, c_e, e, r_e, coins, t, rng):
    """Honest end-to-end path-A run against a derandomized sub-verifier.

    ``coins(view, nbits)`` supplies the sub-verifier's challenge.  Returns
    (transcript dict, accept)."""
    prover = SubProverA(G, h0, c_e, e, r_e, t, rng)
    a_msg = prover.first_message()
    bits = coins(a_msg, t)
    z_msg = prover.respond(bits)
    ok = sub_verify_a(G, h0, c_e, e, a_msg, bits, z_msg)
    return {"a": a_msg, "bits": bits, "z": z_msg}, ok


# --- path B: the non-black-box skeleton --------------------------------------------


@dataclass(frozen=True)
class BarakConfig:
    n: int = 8  # digest bits inside the trapdoor statement
    B: int = 8  # straight-line program bound
    T: int = 64  # step bound (== B for straight-line code; kept explicit)
    t: int = 8  # WI-OR repetitions / challenge bits

    @property
    def rc_bits(self) -> int:
        return 3 * self.n

    @property
    def m1_bits(self) -> int:
        return 16 + 2 * self.rc_bits

    def hash_index(self, idx: int) -> HashIndex:
        return HashIndex(idx, self.n)


def parse_m1(cfg: BarakConfig, m1: Bits):
    h_idx = m1.slice(0, 16).val
    rc_c = m1.slice(16, 16 + cfg.rc_bits)
    rc_wi = m1.slice(16 + cfg.rc_bits, cfg.m1_bits)
    return cfg.hash_index(h_idx), rc_c, rc_wi


def _or_statement(cfg: BarakConfig, claim_spec, h, com_c, r, rc_wi):
    circuit, _ = compile_lambda(h, com_c, r, (cfg.B, cfg.T))
    cs = CsatSpec(circuit, t=cfg.t, seed_bits=cfg.n).bind_setup(rc_wi)
    return OrStatement(branches=(claim_spec, cs), ell=cfg.t)


class BarakSubProver:
    """Sub-prover of the skeleton; honest mode proves the claim branch,
    simulation mode proves the escape branch with a residual program."""

    def __init__(self, cfg: BarakConfig, claim_spec, rng, witness=None, program=None):
        if (witness is None) == (program is None):
            raise ContractError("exactly one of witness / program required")
        if program is not None and len(program.instrs) > cfg.B:
            raise CapacityError(
                f"residual program has {len(program.instrs)} instructions, bound {cfg.B}"
            )
        self.cfg = cfg
        self.claim_spec = claim_spec
        self.rng = rng
        self.witness = witness
        self.program = program
        self.seeds = None
        self.h = self.rc_c = self.rc_wi = self.com_c = None
        self.or_prover = None
        self.live_branch = None

    def on_m1(self, m1: Bits) -> bytes:
        cfg = self.cfg
        self.h, self.rc_c, self.rc_wi = parse_m1(cfg, m1)
        if self.program is None:
            digest = hash_eval(self.h, b"\x00" * (3 * cfg.n // 8))
        else:
            digest = hash_eval(self.h, vm.encode_program(self.program.padded(cfg.B)))
        self.seeds = [Bits(cfg.n, self.rng.getrandbits(cfg.n)) for _ in range(cfg.n)]
        self.com_c = naor_commit(self.rc_c, digest, self.seeds)
        return self.com_c.data.to_bytes()

    def on_m3(self, r: Bits) -> bytes:
        cfg = self.cfg
        if self.program is not None:
            predicted = vm.vm_run(self.program.padded(cfg.B), self.com_c.data.to_bytes())
            if predicted != r.to_bytes():
                raise ProtocolError(
                    "committed program does not predict the verifier string"
                )
        stmt = _or_statement(cfg, self.claim_spec, self.h, self.com_c, r, self.rc_wi)
        if self.program is None:
            self.live_branch, witness = 0, self.witness
        else:
            self.live_branch = 1
            witness = lambda_witness(self.program, self.seeds, cfg.B)
        self.or_prover = or_compose(stmt, self.live_branch, witness, self.rng)
        self.stmt = stmt
        return enc_or_first(stmt, self.or_prover.first_message())

    def on_m5(self, e: Bits) -> bytes:
        return enc_or_response(self.stmt, self.or_prover.respond(e))


def barak_sub_verify(cfg: BarakConfig, claim_spec, m1: Bits, c_bytes: bytes, r: Bits,
                     m4: bytes, e: Bits, m6: bytes) -> bool:
    """Stateless verification of a full skeleton transcript."""
    try:
        h, rc_c, rc_wi = parse_m1(cfg, m1)
        com_c = NaorCommitment(rc_c, Bits.from_bytes(c_bytes, cfg.n * cfg.rc_bits))
        stmt = _or_statement(cfg, claim_spec, h, com_c, r, rc_wi)
        a_msg = dec_or_first(stmt, m4)
        resp = dec_or_response(stmt, m6)
    except Exception:
        return False
    return or_verify(stmt, a_msg, e, resp)


def rszk_prove_opening_B(G, h0, c_e, e, cfg: BarakConfig, coins, rng,
                         r_e=None, program=None):
    """End-to-end path-B run.  ``coins(label, view, nbits)`` is the
    derandomized sub-verifier; honest mode passes r_e, simulation mode a
    next-message program predicting the sub-verifier's string r."""
    claim = opening_claim_spec(G, h0, c_e, e)
    prover = BarakSubProver(cfg, claim, rng, witness=r_e, program=program)
    view = b""
    m1 = coins(b"m1", view, cfg.m1_bits)
    view += m1.to_bytes()
    c_bytes = prover.on_m1(m1)
    view += c_bytes
    r = coins(b"m3", view, cfg.n)
    view += r.to_bytes()
    m4 = prover.on_m3(r)
    view += m4
    ch = coins(b"m5", view, cfg.t)
    view += ch.to_bytes()
    m6 = prover.on_m5(ch)
    ok = barak_sub_verify(cfg, claim, m1, c_bytes, r, m4, ch, m6)
    return {
        "m1": m1,
        "c": c_bytes,
        "r": r,
        "m4": m4,
        "e": ch,
        "m6": m6,
        "live": prover.live_branch,
    }, ok


# --- one-many simulation over standalone skeleton sessions --------------------------


def run_barak_sessions(cfg: BarakConfig, adversary, statements, witnesses, j=None,
                       prover_seed=0):
    """Drive s concurrent skeleton sessions against a deterministic verifier.

    ``witnesses[i]`` gives the honest witness for session i; if ``j`` is not
    None that session is simulated: its real witness is never touched and
    the escape branch is proved with the adversary's residual program.
    Returns per-session transcripts plus the adversary's final decision.
    """
    import random as _random

    from . import kernels as _k

    s = len(statements)

    def prover_rng(i):
        return _random.Random(_k.splitmix64(prover_seed ^ (0xBA12A5 + i)))

    provers = []
    for i in range(s):
        if j is not None and i == j:
            provers.append(None)  # created after the residual program is known
        else:
            provers.append(
                BarakSubProver(cfg, statements[i], prover_rng(i), witness=witnesses[i])
            )
    adversary.begin(cfg, s)
    m1s = [adversary.send_m1(i) for i in range(s)]
    c_bytes = [None] * s
    for i in range(s):
        if provers[i] is not None:
            c_bytes[i] = provers[i].on_m1(m1s[i])
    if j is not None:
        program = adversary.residual_program(j, c_bytes)
        provers[j] = BarakSubProver(cfg, statements[j], prover_rng(j), program=program)
        c_bytes[j] = provers[j].on_m1(m1s[j])
    rs = [adversary.send_r(i, c_bytes[i]) for i in range(s)]
    m4s = [provers[i].on_m3(rs[i]) for i in range(s)]
    es = [adversary.send_challenge(i, m4s[i]) for i in range(s)]
    m6s = [provers[i].on_m5(es[i]) for i in range(s)]
    accepts = []
    for i in range(s):
        ok = barak_sub_verify(cfg, statements[i], m1s[i], c_bytes[i], rs[i], m4s[i],
                              es[i], m6s[i])
        accepts.append(ok)
    adv_bit = adversary.final_output(accepts)
    return {
        "accepts": accepts,
        "adversary_output": adv_bit,
        "live_branches": [p.live_branch for p in provers],
        "transcripts": list(zip(m1s, c_bytes, rs, m4s, es, m6s)),
    }


def one_many_simulate(cfg: BarakConfig, adversary, statements, witnesses, j,
                      prover_seed=0):
    """Simulate session j without its witness; play the rest honestly.

    ``witnesses`` must hold real witnesses for every i != j; index j is
    ignored.  The escape program is the adversary's joint residual
    next-message code with the honest sessions' traffic inlined.
    """
    wit = dict(witnesses)
    wit[j] = None
    return run_barak_sessions(cfg, adversary, statements, wit, j=j,
                              prover_seed=prover_seed)
