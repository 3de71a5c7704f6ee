"""Bit strings and deterministic message serialization.

Everything that crosses a protocol boundary is serialized with the helpers
here, because verifier/prover coins are derived by keyed hashing of
serialized views: two views serialize identically iff they are identical.
"""

from __future__ import annotations

from dataclasses import dataclass


class FormatError(ValueError):
    """Malformed encoding (bad length, bad tag, truncated field)."""


@dataclass(frozen=True)
class Bits:
    """An immutable bit string of explicit length.

    Bit 0 is the most significant bit of ``val``; byte encodings are
    big-endian with the string left-aligned and zero-padded to a byte
    boundary on the right.
    """

    n: int
    val: int

    def __post_init__(self):
        if self.n < 0:
            raise FormatError("negative bit length")
        if not (0 <= self.val < (1 << self.n) or (self.n == 0 and self.val == 0)):
            raise FormatError(f"value does not fit in {self.n} bits")

    @classmethod
    def zero(cls, n: int) -> "Bits":
        return cls(n, 0)

    @classmethod
    def from_bytes(cls, data: bytes, n: int) -> "Bits":
        nbytes = (n + 7) // 8
        if len(data) < nbytes:
            raise FormatError("byte string too short for declared bit length")
        v = int.from_bytes(data[:nbytes], "big") >> (8 * nbytes - n)
        return cls(n, v)

    @classmethod
    def from_int_list(cls, bits) -> "Bits":
        v = 0
        for b in bits:
            v = (v << 1) | (b & 1)
        return cls(len(bits), v)

    def to_bytes(self) -> bytes:
        nbytes = (self.n + 7) // 8
        return (self.val << (8 * nbytes - self.n)).to_bytes(nbytes, "big")

    def bit(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.val >> (self.n - 1 - i)) & 1

    def bits(self) -> list:
        return [(self.val >> (self.n - 1 - i)) & 1 for i in range(self.n)]

    def __xor__(self, other: "Bits") -> "Bits":
        if self.n != other.n:
            raise FormatError("xor of bit strings of different length")
        return Bits(self.n, self.val ^ other.val)

    def concat(self, other: "Bits") -> "Bits":
        return Bits(self.n + other.n, (self.val << other.n) | other.val)

    def slice(self, start: int, stop: int) -> "Bits":
        if not 0 <= start <= stop <= self.n:
            raise IndexError((start, stop))
        width = stop - start
        return Bits(width, (self.val >> (self.n - stop)) & ((1 << width) - 1))

    def __len__(self) -> int:
        return self.n


def concat_bits(parts) -> Bits:
    out = Bits(0, 0)
    for p in parts:
        out = out.concat(p)
    return out


def int_to_bytes(x: int, width: int) -> bytes:
    return x.to_bytes(width, "big")


def bytes_to_int(data: bytes) -> int:
    return int.from_bytes(data, "big")


# --- tagged length-prefixed fields -----------------------------------------
#
# A message is a sequence of fields  [tag:1][len:4 BE][payload].  The
# encoding is canonical: identical field sequences give identical bytes.


def encode_fields(fields) -> bytes:
    out = bytearray()
    for tag, payload in fields:
        if not 0 <= tag <= 255:
            raise FormatError("field tag out of range")
        out.append(tag)
        out += len(payload).to_bytes(4, "big")
        out += payload
    return bytes(out)


def decode_fields(data: bytes) -> list:
    fields = []
    i = 0
    while i < len(data):
        if i + 5 > len(data):
            raise FormatError("truncated field header")
        tag = data[i]
        length = int.from_bytes(data[i + 1 : i + 5], "big")
        i += 5
        if i + length > len(data):
            raise FormatError("truncated field payload")
        fields.append((tag, data[i : i + length]))
        i += length
    return fields


def encode_bits_field(tag: int, b: Bits) -> bytes:
    return encode_fields([(tag, b.n.to_bytes(2, "big") + b.to_bytes())])


def bits_payload(b: Bits) -> bytes:
    return b.n.to_bytes(2, "big") + b.to_bytes()


def payload_bits(data: bytes) -> Bits:
    if len(data) < 2:
        raise FormatError("truncated bit-string payload")
    n = int.from_bytes(data[:2], "big")
    return Bits.from_bytes(data[2:], n)
