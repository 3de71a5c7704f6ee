import random
from collections import Counter

import pytest

from rzkbpk.commitments import (
    BindingViolation,
    ElGamalCommitment,
    com0_commit,
    com0_verify,
    com1_commit,
    com1_equivocate,
    com1_verify,
    com_verify_opening,
    derive_generator,
    naor_commit,
    naor_equivocation_fraction,
    naor_verify,
    trapdoor_generator,
)
from rzkbpk.errors import DomainError
from rzkbpk.primitives import group_generate, prg_expand
from rzkbpk.wire import Bits, FormatError

G = group_generate("tiny", 0)  # p=23 q=11 g=2
H = 9  # subgroup element used by the worked examples


def test_com0_worked_example():
    # direct modular arithmetic: u = 2^4, v = 9^4 * 2^7 mod 23
    assert com0_commit(G, H, 7, 4) == ElGamalCommitment(16, 9)
    assert (pow(2, 4, 23), pow(9, 4, 23) * pow(2, 7, 23) % 23) == (16, 9)


def test_com0_identity_exponents():
    assert com0_commit(G, H, 0, 0) == ElGamalCommitment(1, 1)


def test_com0_exhaustive_binding():
    # brute force: commitments with distinct e live in disjoint value sets
    by_e = {}
    for e in range(11):
        by_e[e] = {com0_commit(G, H, e, r) for r in range(11)}
    all_values = [c for s in by_e.values() for c in s]
    assert len(all_values) == 121
    assert len(set(all_values)) == 121


def test_com0_domain_error():
    with pytest.raises(DomainError):
        com0_commit(G, H, 11, 0)
    with pytest.raises(DomainError):
        com0_commit(G, H, 0, -1)


def test_com1_worked_example():
    assert com1_commit(G, H, 3, 2).c == 8 * 81 % 23
    assert com1_commit(G, H, 3, 2).c == 4
    assert com1_commit(G, H, 0, 0).c == 1


def test_com1_perfect_hiding_enumeration():
    # fixed m, all r: exactly the 11 subgroup elements, each once
    subgroup = sorted(pow(G.g, i, G.p) for i in range(11))
    for m in (0, 5):
        values = sorted(com1_commit(G, H, m, r).c for r in range(11))
        assert values == subgroup
    # and the distribution is identical for any two messages
    assert Counter(com1_commit(G, H, 2, r).c for r in range(11)) == Counter(
        com1_commit(G, H, 9, r).c for r in range(11)
    )


def test_com1_trapdoor_equivocation_detected():
    rng = random.Random(5)
    h, t = trapdoor_generator(G, rng)
    m, r = 4, 7
    com = com1_commit(G, h, m, r)
    m2 = 9
    r2 = com1_equivocate(G, t, m, r, m2)
    v = BindingViolation(com, (m, r), (m2, r2))
    assert v.validate(G=G, h=h)


def test_naor_bit0_is_prg_output():
    rc = Bits(24, 0xABCDEF)
    seed = Bits(8, 0x11)
    com = naor_commit(rc, Bits(1, 0), [seed])
    assert com.data == prg_expand(seed, 24)


def test_naor_bit1_xors_challenge():
    rc = Bits(24, 0xABCDEF)
    seed = Bits(8, 0)
    com = naor_commit(rc, Bits(1, 1), [seed])
    assert com.data == prg_expand(seed, 24) ^ rc


def test_naor_roundtrip_and_length():
    rc = Bits(24, 0x155555)
    bits = Bits(8, 0x5A)
    seeds = [Bits(8, 17 * i % 256) for i in range(8)]
    com = naor_commit(rc, bits, seeds)
    assert com.data.n == 8 * 24
    assert naor_verify(com, bits, seeds)
    assert not naor_verify(com, Bits(8, 0x5B), seeds)


def test_naor_seed_count_mismatch():
    with pytest.raises(FormatError):
        naor_commit(Bits(24, 1), Bits(2, 3), [Bits(8, 0)])


def test_naor_equivocation_fraction_bound():
    # exhaustive over all seed pairs at n=8
    frac = naor_equivocation_fraction(8)
    assert frac <= 2**-8 + 0.001


def test_verify_opening_accept_reject():
    com = com0_commit(G, H, 5, 6)
    assert com_verify_opening(com, 5, 6, G=G, h=H)
    assert not com_verify_opening(com, 6, 6, G=G, h=H)
    ped = com1_commit(G, H, 5, 6)
    assert com_verify_opening(ped, 5, 6, G=G, h=H)
    assert not com_verify_opening(ped, 5, 7, G=G, h=H)
    assert not com_verify_opening(ped, 50, 6, G=G, h=H)  # malformed -> reject


def test_com0_exhaustive_double_opening_search():
    # zero successes opening any commitment to two different messages
    seen = {}
    for e in range(11):
        for r in range(11):
            com = com0_commit(G, H, e, r)
            assert seen.setdefault(com, e) == e
    assert len(seen) == 121


def test_derive_generator_in_subgroup():
    h0 = derive_generator(G, b"com0")
    h1 = derive_generator(G, b"com1")
    for h in (h0, h1):
        assert G.in_subgroup(h)
        assert h not in (1, G.g)
    Gs = group_generate("small", 7)
    hs = derive_generator(Gs, b"com0")
    assert Gs.in_subgroup(hs)
