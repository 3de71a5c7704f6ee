"""Sigma-protocol engine: concrete 3-round instances, the simulator and
special-soundness extractor, and the k-way OR combinator.

Challenge handling: each atomic instance has a native challenge space
(Z_q for the algebraic instances, fixed-width bit strings for the circuit
instance).  The OR layer always works over bit strings of one shared width
and splits a challenge e into per-branch strings XORing to e; an algebraic
branch interprets its string as an integer reduced mod q.  The reduction
bias is irrelevant for the exact-distribution properties, which are
checked by enumeration over the bit-string space itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractError, DomainError, ExtractionError, WitnessError
from .primitives import GroupParams
from .wire import Bits, decode_fields, encode_fields


@dataclass(frozen=True)
class SigmaTranscript:
    """One accepting or candidate run: first message, challenge, response."""

    a: object
    e: object
    z: object
    setup: object = None  # round-0 verifier message of a 4-round variant


@dataclass
class ProverState:
    spec: object
    state: object
    witness: object
    a: object


# --- algebraic instances ------------------------------------------------------


def _enc_ints(G: GroupParams, xs) -> bytes:
    return b"".join(G.enc_elem(x % G.p) for x in xs)


class _AlgebraicSpec:
    """Shared machinery for Schnorr-style linear instances."""

    G: GroupParams
    a_len = 1  # group elements in the first message
    z_len = 1  # exponents in the response

    @property
    def challenge_space(self):
        return ("zq", self.G.q)

    def challenge_ok(self, e) -> bool:
        return isinstance(e, int) and 0 <= e < self.G.q

    def effective_challenge(self, ebits: Bits) -> int:
        return ebits.val % self.G.q

    def enc_a(self, a) -> bytes:
        return _enc_ints(self.G, a)

    def enc_z(self, z) -> bytes:
        return b"".join(self.G.enc_exp(x) for x in z)

    def dec_a(self, data: bytes):
        w = self.G.elem_width
        if len(data) != self.a_len * w:
            raise DomainError("bad first-message encoding")
        return tuple(int.from_bytes(data[i * w : (i + 1) * w], "big") for i in range(self.a_len))

    def dec_z(self, data: bytes):
        w = self.G.q_width
        if len(data) != self.z_len * w:
            raise DomainError("bad response encoding")
        return tuple(int.from_bytes(data[i * w : (i + 1) * w], "big") for i in range(self.z_len))


@dataclass(frozen=True)
class SchnorrSpec(_AlgebraicSpec):
    """Knowledge of x with y = gen^x."""

    G: GroupParams
    y: int
    gen: int = 0  # 0 means the group generator

    def __post_init__(self):
        if self.gen == 0:
            object.__setattr__(self, "gen", self.G.g)
        if not self.G.in_subgroup(self.y):
            raise DomainError("statement not in subgroup")

    def check_witness(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.G.q and pow(self.gen, x, self.G.p) == self.y

    def commit(self, rng, witness=None):
        k = rng.randrange(self.G.q)
        return k, (pow(self.gen, k, self.G.p),)

    def respond(self, state, witness, e: int):
        if not self.check_witness(witness):
            raise WitnessError("witness does not satisfy the relation")
        return ((state + e * witness) % self.G.q,)

    def verify(self, a, e, z) -> bool:
        if not (self.challenge_ok(e) and len(a) == 1 and len(z) == 1):
            return False
        if not (self.G.in_subgroup(a[0]) and 0 <= z[0] < self.G.q):
            return False
        return pow(self.gen, z[0], self.G.p) == self.G.mul(a[0], pow(self.y, e, self.G.p))

    def simulate(self, e: int, rng):
        z = rng.randrange(self.G.q)
        a = self.G.mul(pow(self.gen, z, self.G.p), self.G.inv(pow(self.y, e, self.G.p)))
        return (a,), (z,)

    def extract(self, a, e1, z1, e2, z2):
        if e1 == e2:
            raise ExtractionError("challenges equal")
        de = self.G.inv_q((e1 - e2) % self.G.q)
        return (z1[0] - z2[0]) * de % self.G.q


@dataclass(frozen=True)
class ChaumPedersenSpec(_AlgebraicSpec):
    """Knowledge of rho with u = g1^rho and w = g2^rho (discrete-log equality)."""

    a_len = 2
    G: GroupParams
    g1: int
    g2: int
    u: int
    w: int

    def check_witness(self, rho) -> bool:
        return (
            isinstance(rho, int)
            and 0 <= rho < self.G.q
            and pow(self.g1, rho, self.G.p) == self.u
            and pow(self.g2, rho, self.G.p) == self.w
        )

    def commit(self, rng, witness=None):
        k = rng.randrange(self.G.q)
        return k, (pow(self.g1, k, self.G.p), pow(self.g2, k, self.G.p))

    def respond(self, state, witness, e: int):
        if not self.check_witness(witness):
            raise WitnessError("witness does not satisfy the relation")
        return ((state + e * witness) % self.G.q,)

    def verify(self, a, e, z) -> bool:
        if not (self.challenge_ok(e) and len(a) == 2 and len(z) == 1):
            return False
        if not 0 <= z[0] < self.G.q:
            return False
        lhs1 = pow(self.g1, z[0], self.G.p)
        lhs2 = pow(self.g2, z[0], self.G.p)
        return lhs1 == self.G.mul(a[0], pow(self.u, e, self.G.p)) and lhs2 == self.G.mul(
            a[1], pow(self.w, e, self.G.p)
        )

    def simulate(self, e: int, rng):
        z = rng.randrange(self.G.q)
        a1 = self.G.mul(pow(self.g1, z, self.G.p), self.G.inv(pow(self.u, e, self.G.p)))
        a2 = self.G.mul(pow(self.g2, z, self.G.p), self.G.inv(pow(self.w, e, self.G.p)))
        return (a1, a2), (z,)

    def extract(self, a, e1, z1, e2, z2):
        if e1 == e2:
            raise ExtractionError("challenges equal")
        de = self.G.inv_q((e1 - e2) % self.G.q)
        return (z1[0] - z2[0]) * de % self.G.q


@dataclass(frozen=True)
class OkamotoSpec(_AlgebraicSpec):
    """Knowledge of (x, r) with y = g^x and c = g^x h^r (shared exponent)."""

    a_len = 2
    z_len = 2
    G: GroupParams
    h: int
    y: int
    c: int

    def check_witness(self, witness) -> bool:
        if not (isinstance(witness, tuple) and len(witness) == 2):
            return False
        x, r = witness
        if not (0 <= x < self.G.q and 0 <= r < self.G.q):
            return False
        return (
            pow(self.G.g, x, self.G.p) == self.y
            and self.G.mul(pow(self.G.g, x, self.G.p), pow(self.h, r, self.G.p)) == self.c
        )

    def commit(self, rng, witness=None):
        k1 = rng.randrange(self.G.q)
        k2 = rng.randrange(self.G.q)
        a1 = pow(self.G.g, k1, self.G.p)
        a2 = self.G.mul(a1, pow(self.h, k2, self.G.p))
        return (k1, k2), (a1, a2)

    def respond(self, state, witness, e: int):
        if not self.check_witness(witness):
            raise WitnessError("witness does not satisfy the relation")
        k1, k2 = state
        x, r = witness
        return ((k1 + e * x) % self.G.q, (k2 + e * r) % self.G.q)

    def verify(self, a, e, z) -> bool:
        if not (self.challenge_ok(e) and len(a) == 2 and len(z) == 2):
            return False
        if not all(0 <= v < self.G.q for v in z):
            return False
        ok1 = pow(self.G.g, z[0], self.G.p) == self.G.mul(a[0], pow(self.y, e, self.G.p))
        lhs2 = self.G.mul(pow(self.G.g, z[0], self.G.p), pow(self.h, z[1], self.G.p))
        ok2 = lhs2 == self.G.mul(a[1], pow(self.c, e, self.G.p))
        return ok1 and ok2

    def simulate(self, e: int, rng):
        z1 = rng.randrange(self.G.q)
        z2 = rng.randrange(self.G.q)
        a1 = self.G.mul(pow(self.G.g, z1, self.G.p), self.G.inv(pow(self.y, e, self.G.p)))
        a2 = self.G.mul(
            self.G.mul(pow(self.G.g, z1, self.G.p), pow(self.h, z2, self.G.p)),
            self.G.inv(pow(self.c, e, self.G.p)),
        )
        return (a1, a2), (z1, z2)

    def extract(self, a, e1, z1, e2, z2):
        if e1 == e2:
            raise ExtractionError("challenges equal")
        de = self.G.inv_q((e1 - e2) % self.G.q)
        x = (z1[0] - z2[0]) * de % self.G.q
        r = (z1[1] - z2[1]) * de % self.G.q
        return (x, r)


# --- module-level sigma operations ---------------------------------------------


def sigma_commit(spec, witness, rng):
    """First prover move.  Refuses witnesses that do not satisfy the relation."""
    if not spec.check_witness(witness):
        raise WitnessError("witness does not satisfy the relation")
    state, a = spec.commit(rng, witness)
    return a, ProverState(spec=spec, state=state, witness=witness, a=a)


def sigma_respond(pstate: ProverState, e):
    if not pstate.spec.challenge_ok(e):
        raise DomainError("challenge outside the declared space")
    return pstate.spec.respond(pstate.state, pstate.witness, e)


def sigma_verify(spec, t: SigmaTranscript) -> bool:
    try:
        return spec.verify(t.a, t.e, t.z)
    except (TypeError, ValueError, IndexError):
        return False


def sigma_simulate(spec, e, rng) -> SigmaTranscript:
    if not spec.challenge_ok(e):
        raise DomainError("challenge outside the declared space")
    a, z = spec.simulate(e, rng)
    return SigmaTranscript(a=a, e=e, z=z)


def sigma_extract(spec, t1: SigmaTranscript, t2: SigmaTranscript):
    if t1.a != t2.a or t1.setup != t2.setup:
        raise ExtractionError("transcripts have different first messages")
    if t1.e == t2.e:
        raise ExtractionError("challenges equal")
    if not (sigma_verify(spec, t1) and sigma_verify(spec, t2)):
        raise ExtractionError("transcripts not both accepting")
    return spec.extract(t1.a, t1.e, t1.z, t2.e, t2.z)


# --- four-round variant ----------------------------------------------------------


def four_round_variant(spec_factory):
    """Prepend the receiver message required by interactive commitments.

    ``spec_factory`` must expose ``setup_bits`` (length of the verifier's
    round-0 string) and ``bind_setup(f)`` returning a bound 3-round spec.
    """
    if not hasattr(spec_factory, "bind_setup"):
        raise ContractError("instance does not take a receiver message")
    return FourRoundSpec(spec_factory)


@dataclass(frozen=True)
class FourRoundSpec:
    factory: object

    @property
    def setup_bits(self) -> int:
        return self.factory.setup_bits

    def make_setup(self, rng) -> Bits:
        return Bits(self.setup_bits, rng.getrandbits(self.setup_bits))

    def bind(self, f: Bits):
        return self.factory.bind_setup(f)

    def verify(self, t: SigmaTranscript) -> bool:
        if t.setup is None:
            return False
        return sigma_verify(self.bind(t.setup), t)

    def extract(self, t1: SigmaTranscript, t2: SigmaTranscript):
        if t1.setup != t2.setup:
            raise ExtractionError("setup messages differ")
        return sigma_extract(self.bind(t1.setup), t1, t2)


# --- OR composition ---------------------------------------------------------------


@dataclass(frozen=True)
class OrStatement:
    """k >= 2 branches sharing one challenge width; challenges XOR to e."""

    branches: tuple
    ell: int

    def __post_init__(self):
        if len(self.branches) < 2:
            raise ContractError("OR statement needs at least two branches")
        for b in self.branches:
            space = b.challenge_space
            if space[0] == "bits" and space[1] != self.ell:
                raise ContractError("bit-challenge branch width must equal the OR width")

    def effective(self, i: int, ebits: Bits):
        return self.branches[i].effective_challenge(ebits)

    @property
    def k(self) -> int:
        return len(self.branches)


@dataclass
class OrResponse:
    """Per-branch challenge strings and responses; the OR third message."""

    es: list
    zs: list


def _xor_all(bits_list, ell):
    out = Bits(ell, 0)
    for b in bits_list:
        out = out ^ b
    return out


class OrProver:
    """Standard OR prover: one live branch, all others simulated up front."""

    def __init__(self, stmt: OrStatement, live: int, witness, rng):
        spec = stmt.branches[live]
        if not spec.check_witness(witness):
            raise WitnessError("witness does not satisfy the live branch")
        self.stmt = stmt
        self.live = live
        self.witness = witness
        self.es = [None] * stmt.k
        self.zs = [None] * stmt.k
        self.a = [None] * stmt.k
        for i, sp in enumerate(stmt.branches):
            if i == live:
                continue
            ei = Bits(stmt.ell, rng.getrandbits(stmt.ell))
            ai, zi = sp.simulate(stmt.effective(i, ei), rng)
            self.es[i], self.zs[i], self.a[i] = ei, zi, ai
        self.state, self.a[live] = spec.commit(rng, witness)

    def first_message(self):
        return list(self.a)

    def respond(self, e: Bits) -> OrResponse:
        if e.n != self.stmt.ell:
            raise DomainError("challenge width mismatch")
        others = [x for i, x in enumerate(self.es) if i != self.live]
        e_live = _xor_all(others + [e], self.stmt.ell)
        self.es[self.live] = e_live
        spec = self.stmt.branches[self.live]
        self.zs[self.live] = spec.respond(
            self.state, self.witness, self.stmt.effective(self.live, e_live)
        )
        return OrResponse(es=list(self.es), zs=list(self.zs))


class DeferredOrProver:
    """Both-witness OR prover deciding the live branch at the third move.

    Round 1 commits every branch in honest form (no witness touched), so the
    first message is identical whichever branch is later answered with its
    real witness; the remaining branches are answered using their own
    witnesses on fresh random challenge shares.  Transcript distribution is
    exactly the honest OR prover's for the chosen branch.
    """

    def __init__(self, stmt: OrStatement, rng):
        self.stmt = stmt
        self.rng = rng
        self.states = []
        self.a = []
        for sp in stmt.branches:
            st, ai = sp.commit(rng)  # witness-free honest form (algebraic only)
            self.states.append(st)
            self.a.append(ai)

    def first_message(self):
        return list(self.a)

    def respond(self, e: Bits, live: int, witnesses) -> OrResponse:
        stmt = self.stmt
        es = [None] * stmt.k
        zs = [None] * stmt.k
        for i, sp in enumerate(stmt.branches):
            if i == live:
                continue
            es[i] = Bits(stmt.ell, self.rng.getrandbits(stmt.ell))
            zs[i] = sp.respond(self.states[i], witnesses[i], stmt.effective(i, es[i]))
        es[live] = _xor_all([x for i, x in enumerate(es) if i != live] + [e], stmt.ell)
        zs[live] = stmt.branches[live].respond(
            self.states[live], witnesses[live], stmt.effective(live, es[live])
        )
        return OrResponse(es=es, zs=zs)


def or_compose(stmt: OrStatement, live_index: int, witness, rng) -> OrProver:
    return OrProver(stmt, live_index, witness, rng)


def or_verify(stmt: OrStatement, a_msg, e: Bits, resp: OrResponse) -> bool:
    if e.n != stmt.ell or len(a_msg) != stmt.k:
        return False
    if len(resp.es) != stmt.k or len(resp.zs) != stmt.k:
        return False
    if any(not isinstance(x, Bits) or x.n != stmt.ell for x in resp.es):
        return False
    if _xor_all(resp.es, stmt.ell) != e:
        return False
    for i, sp in enumerate(stmt.branches):
        if not sp.verify(a_msg[i], stmt.effective(i, resp.es[i]), resp.zs[i]):
            return False
    return True


def or_simulate(stmt: OrStatement, e: Bits, rng):
    """Accepting OR transcript for a given challenge, no witness at all."""
    es = [Bits(stmt.ell, rng.getrandbits(stmt.ell)) for _ in range(stmt.k - 1)]
    es.append(_xor_all(es + [e], stmt.ell))
    a_msg, zs = [], []
    for i, sp in enumerate(stmt.branches):
        ai, zi = sp.simulate(stmt.effective(i, es[i]), rng)
        a_msg.append(ai)
        zs.append(zi)
    return a_msg, OrResponse(es=es, zs=zs)


def or_extract(stmt: OrStatement, a_msg, e1: Bits, r1: OrResponse, e2: Bits, r2: OrResponse):
    """Witness from two accepting OR runs with the same first message.

    Returns (branch_index, witness) for the first branch whose effective
    challenges differ across the two runs.
    """
    if e1 == e2:
        raise ExtractionError("OR challenges equal")
    if not (or_verify(stmt, a_msg, e1, r1) and or_verify(stmt, a_msg, e2, r2)):
        raise ExtractionError("transcripts not both accepting")
    for i, sp in enumerate(stmt.branches):
        c1 = stmt.effective(i, r1.es[i])
        c2 = stmt.effective(i, r2.es[i])
        if c1 != c2:
            return i, sp.extract(a_msg[i], c1, r1.zs[i], c2, r2.zs[i])
    raise ExtractionError("no branch with distinct effective challenges")


# --- OR message serialization ------------------------------------------------------


def enc_or_first(stmt: OrStatement, a_msg) -> bytes:
    fields = []
    for i, sp in enumerate(stmt.branches):
        fields.append((0x10, sp.enc_a(a_msg[i])))
    return encode_fields(fields)


def enc_or_response(stmt: OrStatement, resp: OrResponse) -> bytes:
    fields = []
    for i, sp in enumerate(stmt.branches):
        fields.append((0x11, resp.es[i].to_bytes()))
        fields.append((0x12, sp.enc_z(resp.zs[i])))
    return encode_fields(fields)


def dec_or_first(stmt: OrStatement, data: bytes):
    fields = decode_fields(data)
    if len(fields) != stmt.k or any(tag != 0x10 for tag, _ in fields):
        raise DomainError("bad OR first message")
    return [sp.dec_a(payload) for sp, (_, payload) in zip(stmt.branches, fields)]


def dec_or_response(stmt: OrStatement, data: bytes) -> OrResponse:
    fields = decode_fields(data)
    if len(fields) != 2 * stmt.k:
        raise DomainError("bad OR response")
    es, zs = [], []
    for i, sp in enumerate(stmt.branches):
        tag_e, pe = fields[2 * i]
        tag_z, pz = fields[2 * i + 1]
        if tag_e != 0x11 or tag_z != 0x12:
            raise DomainError("bad OR response tags")
        es.append(Bits.from_bytes(pe, stmt.ell))
        zs.append(sp.dec_z(pz))
    return OrResponse(es=es, zs=zs)
