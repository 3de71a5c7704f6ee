"""The three commitment schemes used by the protocol.

* ElGamal-style pairs (perfectly binding) carry the verifier's committed
  challenge; the opening claim "c_e commits to e" becomes a
  discrete-log-equality statement, which keeps the sub-protocol algebraic.
* Pedersen (perfectly hiding, computationally binding) carries the
  prover's committed escape value in phase 2.
* Naor bit commitments out of the counter-mode PRG carry everything inside
  the circuit argument, where a gate-level description is required.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .primitives import GroupParams, HashIndex, batch_prg, hash_eval, prg_expand
from .wire import Bits, FormatError, concat_bits


@dataclass(frozen=True)
class ElGamalCommitment:
    """Perfectly binding pair (u, v) = (g^r, h^r * g^e)."""

    u: int
    v: int


@dataclass(frozen=True)
class PedersenCommitment:
    """Perfectly hiding c = g^m * h^r."""

    c: int


@dataclass(frozen=True)
class NaorCommitment:
    """Bitwise PRG commitment: block i = prg(seed_i) xor (bit_i * challenge)."""

    receiver_challenge: Bits
    data: Bits

    @property
    def n_bits(self) -> int:
        return self.data.n // self.receiver_challenge.n


# --- commitment key derivation -------------------------------------------------

_KEYGEN_HASH = HashIndex(0x434F4D4B, 32)  # 'COMK'


def derive_generator(G: GroupParams, label: bytes) -> int:
    """Nothing-up-my-sleeve second generator: hash the label to the subgroup."""
    ctr = 0
    while True:
        digest = hash_eval(_KEYGEN_HASH, label + b"|" + str(ctr).encode())
        seed = prg_expand(Bits(32, digest.val).slice(0, 32), 2 * G.p.bit_length() + 64)
        u = 2 + seed.val % (G.p - 3)
        h = pow(u, (G.p - 1) // G.q, G.p)
        if h not in (1, G.g):
            return h
        ctr += 1


def trapdoor_generator(G: GroupParams, rng) -> tuple:
    """h = g^t with the trapdoor retained; negative-test rigs only."""
    while True:
        t = rng.randrange(1, G.q)
        h = pow(G.g, t, G.p)
        if h != G.g:
            return h, t


# --- ElGamal (COM0) --------------------------------------------------------------


def com0_commit(G: GroupParams, h: int, e: int, r: int) -> ElGamalCommitment:
    if not 0 <= e < G.q:
        raise DomainError("message outside Z_q")
    if not 0 <= r < G.q:
        raise DomainError("randomness outside Z_q")
    return ElGamalCommitment(u=pow(G.g, r, G.p), v=G.mul(pow(h, r, G.p), pow(G.g, e, G.p)))


def com0_verify(G: GroupParams, h: int, com: ElGamalCommitment, e: int, r: int) -> bool:
    try:
        return com0_commit(G, h, e, r) == com
    except DomainError:
        return False


# --- Pedersen (COM1) --------------------------------------------------------------


def com1_commit(G: GroupParams, h: int, m: int, r: int) -> PedersenCommitment:
    if not 0 <= m < G.q:
        raise DomainError("message outside Z_q")
    if not 0 <= r < G.q:
        raise DomainError("randomness outside Z_q")
    return PedersenCommitment(c=G.mul(pow(G.g, m, G.p), pow(h, r, G.p)))


def com1_verify(G: GroupParams, h: int, com: PedersenCommitment, m: int, r: int) -> bool:
    try:
        return com1_commit(G, h, m, r) == com
    except DomainError:
        return False


def com1_equivocate(G: GroupParams, trapdoor: int, m: int, r: int, m2: int) -> int:
    """Second opening of g^m h^r to message m2, given t = log_g h."""
    return (r + (m - m2) * G.inv_q(trapdoor)) % G.q


# --- Naor (bitwise, PRG-based) -----------------------------------------------------


def naor_commit(rc: Bits, bits: Bits, seeds: list) -> NaorCommitment:
    """Commit ``bits`` under receiver challenge ``rc``, one seed per bit."""
    if len(seeds) != bits.n:
        raise FormatError("one seed per message bit required")
    blocks = []
    for i in range(bits.n):
        block = prg_expand(seeds[i], rc.n)
        if bits.bit(i):
            block = block ^ rc
        blocks.append(block)
    return NaorCommitment(receiver_challenge=rc, data=concat_bits(blocks))


def naor_verify(com: NaorCommitment, bits: Bits, seeds: list) -> bool:
    if len(seeds) != bits.n or com.data.n != bits.n * com.receiver_challenge.n:
        return False
    try:
        return naor_commit(com.receiver_challenge, bits, seeds) == com
    except (DomainError, FormatError):
        return False


def naor_equivocation_fraction(n: int) -> float:
    """Exhaustive equivocation search over all seed pairs at seed length n.

    Returns the fraction of receiver challenges rc for which some pair of
    seeds opens one block as both 0 and 1, i.e. rc is in the image-XOR set.
    """
    if n > 10:
        raise DomainError("exhaustive search only for micro seed lengths")
    seeds = np.arange(1 << n, dtype=np.uint64)
    blocks = batch_prg(seeds, 8 if n == 8 else 16, 3 * n)
    xors = np.bitwise_xor.outer(blocks, blocks)
    bad = np.unique(xors[xors != 0])
    return len(bad) / float(1 << (3 * n))


# --- uniform opening verification ---------------------------------------------------


def com_verify_opening(commitment, message, randomness, *, G=None, h=None) -> bool:
    """Accept iff recommitting (message, randomness) reproduces the commitment.

    Malformed openings reject rather than raise.
    """
    if isinstance(commitment, ElGamalCommitment):
        return com0_verify(G, h, commitment, message, randomness)
    if isinstance(commitment, PedersenCommitment):
        return com1_verify(G, h, commitment, message, randomness)
    if isinstance(commitment, NaorCommitment):
        return naor_verify(commitment, message, randomness)
    return False


@dataclass(frozen=True)
class BindingViolation:
    """Two valid openings of one commitment; the object the reduction demos emit."""

    commitment: object
    opening_a: tuple
    opening_b: tuple

    def validate(self, G: GroupParams = None, h: int = None) -> bool:
        ma, ra = self.opening_a
        mb, rb = self.opening_b
        return (
            ma != mb
            and com_verify_opening(self.commitment, ma, ra, G=G, h=h)
            and com_verify_opening(self.commitment, mb, rb, G=G, h=h)
        )
