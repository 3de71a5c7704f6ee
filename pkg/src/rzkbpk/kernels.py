"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The heavy inner loops of the toolkit are (a) the 64-bit sponge permutation,
applied in floods when bulk bit-commitments are produced or checked, and
(b) boolean-circuit evaluation.  Both carry two implementations selected at
import time by the environment variable ``RZKBPK_KERNELS``:

    RZKBPK_KERNELS=numba   force the @njit kernels (error if numba missing)
    RZKBPK_KERNELS=numpy   force the pure-numpy fallback
    unset / auto           numba when importable, numpy otherwise

Both paths are bit-exact equal; ``tests/test_kernels.py`` enforces it and
``rzkbpk bench`` compares their throughput.
"""

from __future__ import annotations

import os

import numpy as np

U64 = np.uint64
MASK32 = 0xFFFFFFFF
MASK64 = 0xFFFFFFFFFFFFFFFF

# Feistel permutation on a 64-bit state: (L,R) -> (R, L ^ F(R)) with
# F(x) = (rotl(x,1) & rotl(x,8)) ^ rotl(x,2) ^ RC[i].  Rotations and the
# round-constant schedule are fixed; the same table is baked into the
# gate-level form emitted by the circuit compiler.
ROUNDS = 15
ROT_A, ROT_B, ROT_C = 1, 8, 2


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64


def _make_round_constants() -> tuple:
    rcs = []
    x = 0x5A17C3E1D2B90F48
    for _ in range(ROUNDS):
        x = _splitmix64(x)
        rcs.append(x & MASK32)
    return tuple(rcs)


RC = _make_round_constants()
_RC_ARR = np.array(RC, dtype=np.uint64)


def splitmix64(x: int) -> int:
    return _splitmix64(x)


def rotl32(x: int, r: int) -> int:
    return ((x << r) | (x >> (32 - r))) & MASK32


def perm64(state: int) -> int:
    """Scalar reference permutation (pure Python ints)."""
    L = (state >> 32) & MASK32
    R = state & MASK32
    for i in range(ROUNDS):
        f = (rotl32(R, ROT_A) & rotl32(R, ROT_B)) ^ rotl32(R, ROT_C) ^ RC[i]
        L, R = R, L ^ f
    return (L << 32) | R


# --- batch permutation -------------------------------------------------------


def _batch_perm_numpy(states: np.ndarray) -> np.ndarray:
    s = states.astype(np.uint64, copy=True)
    m32 = U64(MASK32)
    L = (s >> U64(32)) & m32
    R = s & m32
    for i in range(ROUNDS):
        ra = ((R << U64(ROT_A)) | (R >> U64(32 - ROT_A))) & m32
        rb = ((R << U64(ROT_B)) | (R >> U64(32 - ROT_B))) & m32
        rc = ((R << U64(ROT_C)) | (R >> U64(32 - ROT_C))) & m32
        f = (ra & rb) ^ rc ^ U64(RC[i])
        L, R = R, L ^ f
    return (L << U64(32)) | R


def _absorb_chain_python(state: int, words) -> int:
    # inlined perm64 over a sequential block chain; the pure-python fallback
    rc = RC
    L = (state >> 32) & MASK32
    R = state & MASK32
    for w in words:
        R ^= int(w)
        for i in range(ROUNDS):
            f = (
                (((R << 1) | (R >> 31)) & ((R << 8) | (R >> 24)))
                ^ ((R << 2) | (R >> 30))
                ^ rc[i]
            ) & MASK32
            L, R = R, L ^ f
    return (L << 32) | R


_HAVE_NUMBA = False
_batch_perm_numba = None
_eval_gates_numba = None
_absorb_chain_numba = None


def _build_numba_kernels():
    global _batch_perm_numba, _eval_gates_numba, _absorb_chain_numba
    from numba import njit, prange

    rc_arr = _RC_ARR

    @njit("uint64[:](uint64[:])", parallel=True, cache=True)
    def batch_perm_nb(states):  # pragma: no cover - exercised via dispatch
        n = states.shape[0]
        out = np.empty(n, dtype=np.uint64)
        m32 = U64(0xFFFFFFFF)
        for j in prange(n):
            s = states[j]
            L = (s >> U64(32)) & m32
            R = s & m32
            for i in range(ROUNDS):
                ra = ((R << U64(ROT_A)) | (R >> U64(32 - ROT_A))) & m32
                rb = ((R << U64(ROT_B)) | (R >> U64(32 - ROT_B))) & m32
                rc = ((R << U64(ROT_C)) | (R >> U64(32 - ROT_C))) & m32
                f = (ra & rb) ^ rc ^ rc_arr[i]
                L, R = R, L ^ f
            out[j] = (L << U64(32)) | R
        return out

    @njit("void(uint8[:], int64[:], int64[:], int64[:], uint8[:])", cache=True)
    def eval_gates_nb(kinds, in1, in2, outs, values):  # pragma: no cover
        for i in range(kinds.shape[0]):
            k = kinds[i]
            a = values[in1[i]]
            if k == 0:
                values[outs[i]] = a & values[in2[i]]
            elif k == 1:
                values[outs[i]] = a ^ values[in2[i]]
            else:
                values[outs[i]] = a ^ 1

    @njit("uint64(uint64, uint64[:])", cache=True)
    def absorb_chain_nb(state, words):  # pragma: no cover - exercised via dispatch
        m32 = U64(0xFFFFFFFF)
        L = (state >> U64(32)) & m32
        R = state & m32
        for j in range(words.shape[0]):
            R = R ^ (words[j] & m32)
            for i in range(ROUNDS):
                ra = ((R << U64(ROT_A)) | (R >> U64(32 - ROT_A))) & m32
                rb = ((R << U64(ROT_B)) | (R >> U64(32 - ROT_B))) & m32
                rc = ((R << U64(ROT_C)) | (R >> U64(32 - ROT_C))) & m32
                f = (ra & rb) ^ rc ^ rc_arr[i]
                L, R = R, L ^ f
        return (L << U64(32)) | R

    _batch_perm_numba = batch_perm_nb
    _eval_gates_numba = eval_gates_nb
    _absorb_chain_numba = absorb_chain_nb


def _select_backend() -> str:
    mode = os.environ.get("RZKBPK_KERNELS", "auto").lower()
    if mode not in ("auto", "numba", "numpy"):
        raise ValueError(f"RZKBPK_KERNELS must be auto|numba|numpy, got {mode!r}")
    if mode == "numpy":
        return "numpy"
    global _HAVE_NUMBA
    try:
        _build_numba_kernels()
        _HAVE_NUMBA = True
        return "numba"
    except Exception:
        if mode == "numba":
            raise
        return "numpy"


BACKEND = _select_backend()


def backend() -> str:
    return BACKEND


def batch_perm(states: np.ndarray) -> np.ndarray:
    """Apply the permutation to every uint64 in ``states``."""
    states = np.ascontiguousarray(states, dtype=np.uint64)
    if BACKEND == "numba":
        return _batch_perm_numba(states)
    return _batch_perm_numpy(states)


def absorb_chain(state: int, words: np.ndarray) -> int:
    """Sequential sponge absorption: state <- perm(state ^ word) per word."""
    words = np.ascontiguousarray(words, dtype=np.uint64)
    if BACKEND == "numba":
        return int(_absorb_chain_numba(U64(state), words))
    return _absorb_chain_python(state, words)


def _eval_gates_numpy(kinds, in1, in2, outs, values):
    # Sequential semantics; gates are topologically ordered so a grouped
    # per-level pass is equivalent.  Levels are precomputed by the caller
    # when available; this raw loop is the last-resort path.
    for i in range(kinds.shape[0]):
        k = kinds[i]
        a = values[in1[i]]
        if k == 0:
            values[outs[i]] = a & values[in2[i]]
        elif k == 1:
            values[outs[i]] = a ^ values[in2[i]]
        else:
            values[outs[i]] = a ^ 1


def _eval_gates_numpy_levels(levels, kinds, in1, in2, outs, values):
    for lo, hi in levels:
        k = kinds[lo:hi]
        a = values[in1[lo:hi]]
        b = values[in2[lo:hi]]
        r = np.where(k == 0, a & b, np.where(k == 1, a ^ b, a ^ 1))
        values[outs[lo:hi]] = r


def eval_gates(kinds, in1, in2, outs, values, levels=None):
    """Evaluate a topologically ordered gate list over ``values`` in place.

    Gate kinds: 0=AND, 1=XOR, 2=NOT (NOT reads in1 only).
    """
    if BACKEND == "numba":
        _eval_gates_numba(kinds, in1, in2, outs, values)
    elif levels is not None:
        _eval_gates_numpy_levels(levels, kinds, in1, in2, outs, values)
    else:
        _eval_gates_numpy(kinds, in1, in2, outs, values)


# --- deterministic bulk randomness ------------------------------------------
#
# Bulk per-wire masks and per-bit commitment seeds are expanded from a
# 64-bit master in counter mode over the permutation.  This is prover-local
# tape expansion: the master itself is always derived from the keyed PRF
# over the session view, so replaying a view replays the expansion.

_STREAM_DOMAIN = 0xA3D70A3D70A3D70A


def word_stream(master: int, count: int) -> np.ndarray:
    """``count`` pseudorandom uint64 words, a pure function of ``master``."""
    if count == 0:
        return np.empty(0, dtype=np.uint64)
    idx = np.arange(count, dtype=np.uint64)
    inp = (U64(master & MASK64) ^ U64(_STREAM_DOMAIN)) + idx * U64(0x9E3779B97F4A7C15)
    return batch_perm(inp)


def bit_stream(master: int, count: int) -> np.ndarray:
    """``count`` pseudorandom bits as a uint8 array."""
    words = word_stream(master, (count + 63) // 64)
    bits = np.unpackbits(words.astype(">u8").view(np.uint8))
    return bits[:count]


def byte_stream(master: int, count: int) -> np.ndarray:
    words = word_stream(master, (count + 7) // 8)
    return words.astype(">u8").view(np.uint8)[:count].copy()
