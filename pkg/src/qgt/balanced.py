"""Balanced element identifiers and bit-slice sub-queries.

Every element v in [1..n] (n a power of two, b = log2 n) gets a 2b-bit
word with exactly b ones: the b-bit binary form of v-1 followed by its
bitwise complement.  Fixed weight is what makes superpositions
detectable: the elementwise sum of two or more distinct identifiers
either contains a value above one or fails the weight/complement
structure, so a decoder can tell "exactly one unknown element" apart
from "several" without knowing which elements are involved.

Words are stored most-significant-bit first (the order a human would
write them); "bit i" with i counted from 1 at the least significant
position is word[2b - i].  Slices partition a query by these bits:
slice i of S keeps the elements of S whose bit i is one.
"""

from __future__ import annotations

from .model import Query, is_power_of_two

INVALID = None


def id_bits(n: int) -> int:
    """Identifier width in bits: 2 * log2(n)."""
    if n < 2 or not is_power_of_two(n):
        raise ValueError(f"universe size must be a power of two >= 2, got {n}")
    return 2 * (n.bit_length() - 1)


def encode_balanced(v: int, n: int) -> tuple[int, ...]:
    """Balanced identifier of element v, most significant bit first."""
    width = id_bits(n)
    b = width // 2
    if not 1 <= v <= n:
        raise ValueError(f"element {v} outside universe [1..{n}]")
    high = [(v - 1) >> (b - 1 - j) & 1 for j in range(b)]
    low = [1 - bit for bit in high]
    return tuple(high + low)


def decode_balanced(bitvals: tuple[int, ...] | list[int], n: int) -> int | None:
    """Inverse of encode_balanced; INVALID (None) when the word is not one identifier.

    A word fails when any entry is outside {0,1}, the weight is not
    exactly log2(n), or the low half is not the complement of the high
    half.  INVALID is a value, not an error: it signals that a feedback
    difference vector is not a single new element.
    """
    width = id_bits(n)
    b = width // 2
    if len(bitvals) != width:
        raise ValueError(f"expected {width} bit values, got {len(bitvals)}")
    if any(bit not in (0, 1) for bit in bitvals):
        return INVALID
    if sum(bitvals) != b:
        return INVALID
    high = bitvals[:b]
    low = bitvals[b:]
    if any(lo != 1 - hi for hi, lo in zip(high, low)):
        return INVALID
    value = 0
    for bit in high:
        value = (value << 1) | bit
    return value + 1


def slice_query(s: Query, i: int, n: int) -> Query:
    """Elements of s whose balanced-identifier bit i is one (bit 1 = least significant)."""
    width = id_bits(n)
    if not 1 <= i <= width:
        raise ValueError(f"bit position {i} outside [1..{width}]")
    pos = width - i
    return frozenset(v for v in s if encode_balanced(v, n)[pos] == 1)
