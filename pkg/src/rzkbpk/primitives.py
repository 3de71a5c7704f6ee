"""In-repo algebraic and symmetric primitives.

A prime-order subgroup carries every algebraic object (the one-way
permutation f(x) = g^x, both commitment schemes, all sigma-protocol
statements).  The symmetric side is a single 64-bit permutation exposed as
a sponge hash, a counter-mode PRG, and a keyed PRF.  All three are toy
primitives: their value is that the permutation has a published gate-level
form small enough to embed in compiled circuits, not cryptographic
strength.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CapacityError, DomainError
from .wire import Bits

# --- primality ---------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic for n < 2^64 (Miller-Rabin over fixed witness bases)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_exhaustive(n: int) -> bool:
    """Trial division; used for the enumerable tiny profile."""
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# --- groups -------------------------------------------------------------------

TINY_MAX_Q = 1 << 10
SMALL_MIN_Q = 1 << 60


def _tiny_candidates() -> list:
    pairs = []
    q = 11
    while q <= TINY_MAX_Q:
        if is_prime_exhaustive(q) and is_prime_exhaustive(2 * q + 1):
            pairs.append((q, 2 * q + 1))
        q += 2
    return pairs


_TINY_PAIRS = _tiny_candidates()


@dataclass(frozen=True)
class GroupParams:
    """A prime-order multiplicative subgroup of Z_p^*."""

    p: int
    q: int
    g: int
    profile: str

    def __post_init__(self):
        prime = is_prime_exhaustive if self.profile == "tiny" else is_prime
        if not prime(self.p) or not prime(self.q):
            raise DomainError("p and q must be prime")
        if (self.p - 1) % self.q != 0:
            raise DomainError("q must divide p-1")
        if self.g == 1 or pow(self.g, self.q, self.p) != 1:
            raise DomainError("g must generate the order-q subgroup")
        if self.profile == "tiny" and self.q > TINY_MAX_Q:
            raise DomainError("tiny profile requires q <= 2^10")
        if self.profile == "small" and self.q < SMALL_MIN_Q:
            raise DomainError("small profile requires q >= 2^60")

    @property
    def elem_width(self) -> int:
        return (self.p.bit_length() + 7) // 8

    @property
    def q_width(self) -> int:
        return (self.q.bit_length() + 7) // 8

    def exp(self, base: int, e: int) -> int:
        return pow(base, e, self.p)

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        return pow(a, self.p - 2, self.p)

    def inv_q(self, a: int) -> int:
        return pow(a, self.q - 2, self.q)

    def in_subgroup(self, x: int) -> bool:
        return 0 < x < self.p and pow(x, self.q, self.p) == 1

    def enc_elem(self, x: int) -> bytes:
        return x.to_bytes(self.elem_width, "big")

    def dec_elem(self, data: bytes) -> int:
        if len(data) != self.elem_width:
            raise DomainError("bad group element width")
        return int.from_bytes(data, "big")

    def enc_exp(self, x: int) -> bytes:
        return x.to_bytes(self.q_width, "big")

    def subgroup_elements(self) -> list:
        if self.q > TINY_MAX_Q:
            raise CapacityError("subgroup enumeration only for tiny groups")
        return [pow(self.g, i, self.p) for i in range(self.q)]

    def challenge_bits(self) -> int:
        return max(4, self.q.bit_length())


def _seed_int(seed) -> int:
    if isinstance(seed, (bytes, bytearray)):
        return int.from_bytes(seed, "big")
    return int(seed)


def group_generate(profile: str, seed) -> GroupParams:
    """Deterministically derive group parameters for a size class."""
    s = _seed_int(seed)
    if profile == "tiny":
        q, p = _TINY_PAIRS[s % len(_TINY_PAIRS)]
    elif profile == "small":
        x = kernels.splitmix64(s & kernels.MASK64)
        q = (1 << 62) | (x & ((1 << 62) - 1)) | 1
        while not is_prime(q):
            q += 2
        k = 2
        while not is_prime(k * q + 1):
            k += 2
        p = k * q + 1
    else:
        raise DomainError(f"unknown group profile {profile!r}")
    if profile == "tiny":
        # Smallest element of order exactly q (q prime, so h^q = 1, h != 1).
        g = next(h for h in range(2, p) if pow(h, q, p) == 1)
    else:
        h = 2
        while True:
            g = pow(h, (p - 1) // q, p)
            if g != 1:
                break
            h += 1
    return GroupParams(p=p, q=q, g=g, profile=profile)


def owf_eval(G: GroupParams, x: int) -> int:
    """The one-way permutation f(x) = g^x on Z_q -> subgroup."""
    if not 0 <= x < G.q:
        raise DomainError(f"exponent {x} outside Z_{G.q}")
    return pow(G.g, x, G.p)


# --- sponge hash ---------------------------------------------------------------

_IV_DOMAIN = 0xC0FFEE1234ABCDEF
RATE_BYTES = 4


@dataclass(frozen=True)
class HashIndex:
    """Selects a member of the hash family; output length is n bits."""

    index: int
    n: int

    def __post_init__(self):
        if self.n <= 0:
            raise DomainError("hash output length must be positive")


def sponge_iv(index: int, n: int) -> int:
    x = kernels.splitmix64(_IV_DOMAIN ^ (index & kernels.MASK64))
    return kernels.splitmix64(x ^ (n * 0x9E3779B97F4A7C15 & kernels.MASK64))


class Sponge:
    """Incremental sponge over the 64-bit permutation (rate 32, capacity 32).

    Absorbing the same bytes in any chunking yields the same state, so long
    prefixes (session views) can be cached and extended.
    """

    __slots__ = ("state", "buf")

    def __init__(self, h: HashIndex):
        self.state = sponge_iv(h.index, h.n)
        self.buf = b""

    def copy(self) -> "Sponge":
        s = object.__new__(Sponge)
        s.state = self.state
        s.buf = self.buf
        return s

    def absorb(self, data: bytes) -> "Sponge":
        buf = self.buf + data
        n_full = len(buf) // RATE_BYTES * RATE_BYTES
        if n_full:
            words = np.frombuffer(buf[:n_full], dtype=">u4").astype(np.uint64)
            self.state = kernels.absorb_chain(self.state, words)
        self.buf = buf[n_full:]
        return self

    def digest(self, nbits: int) -> Bits:
        pad_len = RATE_BYTES - len(self.buf)
        padded = self.buf + b"\x80" + b"\x00" * (pad_len - 1)
        state = kernels.perm64(self.state ^ int.from_bytes(padded, "big"))
        out = b""
        while len(out) * 8 < nbits:
            out += (state & kernels.MASK32).to_bytes(4, "big")
            if len(out) * 8 < nbits:
                state = kernels.perm64(state)
        return Bits.from_bytes(out, nbits)


def hash_eval(h: HashIndex, data: bytes) -> Bits:
    """Hash arbitrary bytes to exactly n bits."""
    return Sponge(h).absorb(data).digest(h.n)


# --- PRG -----------------------------------------------------------------------

PRG_INDEX = 0x5052472D  # domain tag for the PRG's hash-family member
PRG_BLOCK_BITS = 32


def prg_expand(seed: Bits, out_len: int) -> Bits:
    """Counter-mode expansion of an n-bit seed: block i = H32(seed || i)."""
    if seed.n % 8 != 0:
        raise DomainError("PRG seed length must be a whole number of bytes")
    if out_len == 0:
        return Bits(0, 0)
    n_blocks = (out_len + PRG_BLOCK_BITS - 1) // PRG_BLOCK_BITS
    if n_blocks > 256:
        raise CapacityError("PRG output longer than 256 blocks")
    h = HashIndex(PRG_INDEX, PRG_BLOCK_BITS)
    seed_bytes = seed.to_bytes()
    out = Bits(0, 0)
    for i in range(n_blocks):
        out = out.concat(hash_eval(h, seed_bytes + bytes([i])))
    return out.slice(0, out_len)


def batch_sponge32(iv: int, messages: np.ndarray) -> np.ndarray:
    """Absorb N equal-length byte rows and squeeze one 32-bit word each.

    ``messages`` is an (N, L) uint8 array.  Bit-exact with
    ``Sponge`` + ``digest(32)`` for the same initial state.
    """
    if messages.ndim != 2:
        raise DomainError("messages must be a 2-D byte array")
    n, length = messages.shape
    pad = RATE_BYTES - (length % RATE_BYTES)
    padded = np.zeros((n, length + pad), dtype=np.uint8)
    padded[:, :length] = messages
    padded[:, length] = 0x80
    words = padded.reshape(n, -1, RATE_BYTES).astype(np.uint64)
    blocks = (
        (words[:, :, 0] << kernels.U64(24))
        | (words[:, :, 1] << kernels.U64(16))
        | (words[:, :, 2] << kernels.U64(8))
        | words[:, :, 3]
    )
    state = np.full(n, iv, dtype=np.uint64)
    for b in range(blocks.shape[1]):
        state = kernels.batch_perm(state ^ blocks[:, b])
    return state & kernels.U64(kernels.MASK32)


def batch_prg(seeds: np.ndarray, seed_bits: int, out_bits: int) -> np.ndarray:
    """Vectorized prg_expand for seed lengths of 1-2 bytes, out_bits <= 64.

    Returns a uint64 array; element i equals prg_expand(seeds[i], out_bits)
    interpreted as an integer.  Bit-exact with the scalar path.
    """
    if seed_bits not in (8, 16):
        raise CapacityError("batch PRG supports 8- or 16-bit seeds")
    if out_bits > 64:
        raise CapacityError("batch PRG output capped at 64 bits")
    iv = kernels.U64(sponge_iv(PRG_INDEX, PRG_BLOCK_BITS))
    seeds = seeds.astype(np.uint64)
    n_blocks = (out_bits + 31) // 32
    out = np.zeros(len(seeds), dtype=np.uint64)
    for i in range(n_blocks):
        if seed_bits == 8:
            block = (seeds << kernels.U64(24)) | kernels.U64((i << 16) | 0x8000)
        else:
            block = (seeds << kernels.U64(16)) | kernels.U64((i << 8) | 0x80)
        word = kernels.batch_perm(iv ^ block) & kernels.U64(kernels.MASK32)
        out = (out << kernels.U64(32)) | word
    excess = 32 * n_blocks - out_bits
    return out >> kernels.U64(excess)


# --- PRF -----------------------------------------------------------------------

PRF_INDEX = 0x5052462D


@dataclass(frozen=True)
class PrfKey:
    """n-bit PRF key; also used for the prover tape halves r1, r2."""

    key: bytes
    n: int

    def __post_init__(self):
        if len(self.key) * 8 != self.n:
            raise DomainError("key length must be exactly n bits")

    @classmethod
    def from_int(cls, val: int, n: int) -> "PrfKey":
        return cls(val.to_bytes(n // 8, "big"), n)


def _prf_sponge(k: PrfKey, x: bytes) -> Sponge:
    sp = Sponge(HashIndex(PRF_INDEX, k.n))
    sp.absorb(len(k.key).to_bytes(2, "big") + k.key + x)
    return sp


def prf_stream(k: PrfKey, x: bytes, out_len: int) -> Bits:
    """Counter expansion of the PRF: block i = H(key || x || i), 32 bits each."""
    if out_len == 0:
        return Bits(0, 0)
    base = _prf_sponge(k, x)
    out = Bits(0, 0)
    for i in range((out_len + 31) // 32):
        out = out.concat(base.copy().absorb(i.to_bytes(2, "big")).digest(32))
    return out.slice(0, out_len)


def prf_eval(k: PrfKey, x: bytes) -> Bits:
    """f_s(x): deterministic n-bit output for an n-bit key."""
    return prf_stream(k, x, k.n)


class PrfTape:
    """Deterministic randomness source: draws are prf_stream over a cached
    view prefix plus a per-draw label and counter.

    Replaying the same (key, view) replays every draw, which is exactly the
    reset discipline the prover needs.  The view may be extended
    incrementally; extending resets the per-label draw counters, so a draw
    is a pure function of (key, view so far, label, index within step).
    """

    def __init__(self, key: PrfKey, view: bytes = b""):
        self._base = _prf_sponge(key, view)
        self._counters: dict = {}

    def extend(self, data: bytes) -> None:
        self._base.absorb(data)
        self._counters = {}

    def draw_bits(self, label: bytes, nbits: int) -> Bits:
        ctr = self._counters.get(label, 0)
        self._counters[label] = ctr + 1
        sp = self._base.copy().absorb(
            b"\xfe" + len(label).to_bytes(1, "big") + label + ctr.to_bytes(2, "big")
        )
        out = Bits(0, 0)
        for i in range((nbits + 31) // 32):
            out = out.concat(sp.copy().absorb(i.to_bytes(2, "big")).digest(32))
        return out.slice(0, nbits)

    def draw_zq(self, label: bytes, q: int) -> int:
        nbits = q.bit_length() + 64
        return self.draw_bits(label, nbits).val % q

    def draw_int(self, label: bytes, nbits: int) -> int:
        return self.draw_bits(label, nbits).val
