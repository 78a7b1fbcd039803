"""DNA words packed two bits per base, and the primitive measures on them.

Base codes are A=0, C=1, G=2, T=3 with the first base in the most significant
pair of bits.  With this layout

* numeric order of codes equals lexicographic order of the ACGT strings,
* the Watson-Crick complement of a base is ``code ^ 3``,
* a base is G or C exactly when its two bits differ.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator

import numpy as np

from .errors import EmptyInput, Exhausted, InvalidParams, InvalidSymbol, LengthMismatch

ALPHABET = "ACGT"
MAX_N = 32
DEFAULT_MAX_ATTEMPTS = 10**6

_CODE = {ch: i for i, ch in enumerate(ALPHABET)}

# byte (4 bases) -> same 4 bases in reverse order
_REV_BYTE = [
    ((b & 3) << 6) | (((b >> 2) & 3) << 4) | (((b >> 4) & 3) << 2) | (b >> 6)
    for b in range(256)
]
# 8-bit value -> 16-bit value with the input bits moved to even positions
_SPREAD_BYTE = [sum(((b >> j) & 1) << (2 * j) for j in range(8)) for b in range(256)]


def low_mask(n: int) -> int:
    """0b0101...01 covering ``n`` bases."""
    return int("01" * n, 2) if n else 0


def full_mask(n: int) -> int:
    return (1 << (2 * n)) - 1


def spread_bits(x: int) -> int:
    out = 0
    shift = 0
    while x:
        out |= _SPREAD_BYTE[x & 0xFF] << shift
        x >>= 8
        shift += 16
    return out


def rc_code(code: int, n: int) -> int:
    """Reverse complement of a packed word."""
    nbytes = (n + 3) // 4
    r = 0
    for _ in range(nbytes):
        r = (r << 8) | _REV_BYTE[code & 0xFF]
        code >>= 8
    r >>= 2 * (4 * nbytes - n)
    return r ^ full_mask(n)


def hamming_code(a: int, b: int, n: int) -> int:
    x = a ^ b
    return ((x | (x >> 1)) & low_mask(n)).bit_count()


def gc_code(code: int, n: int) -> int:
    return ((code ^ (code >> 1)) & low_mask(n)).bit_count()


def render_code(code: int, n: int) -> str:
    return "".join(ALPHABET[(code >> (2 * (n - 1 - i))) & 3] for i in range(n))


@dataclass(frozen=True, order=True, slots=True)
class Sequence:
    """An immutable DNA word of length ``n`` stored as a packed integer."""

    n: int
    code: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_N:
            raise InvalidParams(f"sequence length {self.n} outside 1..{MAX_N}")
        if not 0 <= self.code < (1 << (2 * self.n)):
            raise InvalidParams(f"code {self.code} does not fit {self.n} bases")

    def __str__(self) -> str:
        return render_code(self.code, self.n)

    def __repr__(self) -> str:
        return f"Sequence({str(self)!r})"

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> str:
        if not -self.n <= i < self.n:
            raise IndexError(i)
        i %= self.n
        return ALPHABET[(self.code >> (2 * (self.n - 1 - i))) & 3]


def parse(text: str) -> Sequence:
    """Parse an uppercase ACGT string.

    Raises :class:`EmptyInput` for ``""`` and :class:`InvalidSymbol` (1-based
    position) for anything outside the alphabet.
    """
    if not text:
        raise EmptyInput()
    if len(text) > MAX_N:
        raise InvalidParams(f"sequence length {len(text)} exceeds {MAX_N}")
    code = 0
    for pos, ch in enumerate(text, start=1):
        v = _CODE.get(ch)
        if v is None:
            raise InvalidSymbol(pos, ch)
        code = (code << 2) | v
    return Sequence(len(text), code)


def hamming(s: Sequence, t: Sequence) -> int:
    if s.n != t.n:
        raise LengthMismatch(s.n, t.n)
    return hamming_code(s.code, t.code, s.n)


def reverse_complement(s: Sequence) -> Sequence:
    return Sequence(s.n, rc_code(s.code, s.n))


def gc_content(s: Sequence) -> int:
    return gc_code(s.code, s.n)


def self_rc_distance(s: Sequence) -> int:
    """Hamming distance between a word and its own reverse complement."""
    return hamming_code(s.code, rc_code(s.code, s.n), s.n)


def _check_nw(n: int, w: int) -> None:
    if not 1 <= n <= MAX_N:
        raise InvalidParams(f"n={n} outside 1..{MAX_N}")
    if not 0 <= w <= n:
        raise InvalidParams(f"w={w} outside 0..{n}")


def constant_gc_count(n: int, w: int) -> int:
    _check_nw(n, w)
    return comb(n, w) << n


def enumerate_constant_gc(n: int, w: int) -> Iterator[Sequence]:
    """All ``C(n,w) * 2**n`` words with GC-content ``w``, in lexicographic order."""
    _check_nw(n, w)

    def rec(pos: int, remaining: int, prefix: int) -> Iterator[int]:
        if pos == n:
            yield prefix
            return
        left = n - pos - 1
        for b in range(4):
            r = remaining - (b == 1 or b == 2)
            if 0 <= r <= left:
                yield from rec(pos + 1, r, (prefix << 2) | b)

    for code in rec(0, w, 0):
        yield Sequence(n, code)


def constant_gc_codes(n: int, w: int) -> np.ndarray:
    """Sorted ``uint64`` array of the packed codes of :func:`enumerate_constant_gc`."""
    _check_nw(n, w)
    if n > 24:
        raise InvalidParams(f"refusing to materialise {constant_gc_count(n, w)} words")
    bits = np.arange(1 << n, dtype=np.uint64)
    spread = np.zeros_like(bits)
    for j in range(n):
        spread |= ((bits >> np.uint64(j)) & np.uint64(1)) << np.uint64(2 * j)
    chunks = []
    for mask in _gc_masks(n, w, limit=None):
        lo = spread[bits ^ np.uint64(mask)]
        chunks.append((spread << np.uint64(1)) | lo)
    out = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.uint64)
    out.sort()
    return out


@lru_cache(maxsize=64)
def _gc_masks(n: int, w: int, limit: int | None = 1 << 16) -> tuple[int, ...] | None:
    # bit j of a mask marks base n-1-j as G/C
    if limit is not None and comb(n, w) > limit:
        return None
    return tuple(sum(1 << j for j in c) for c in combinations(range(n), w))


def sample_gc_code(n: int, w: int, rng: random.Random) -> int:
    masks = _gc_masks(n, w)
    if masks is not None:
        mask = masks[rng.randrange(len(masks))]
    else:
        mask = sum(1 << j for j in rng.sample(range(n), w))
    bits = rng.getrandbits(n)
    # G/C positions: (hi, lo) = (b, not b) gives C or G; A/T positions: (b, b)
    return (spread_bits(bits) << 1) | spread_bits(bits ^ mask)


def sample_constant_gc(n: int, w: int, rng: random.Random) -> Sequence:
    """Uniform draw from the words of length ``n`` with GC-content ``w``."""
    _check_nw(n, w)
    return Sequence(n, sample_gc_code(n, w, rng))


def sample_admissible_code(
    n: int, d: int, w: int, rng: random.Random, max_attempts: int = DEFAULT_MAX_ATTEMPTS
) -> tuple[int, int]:
    """Rejection-sample a packed word and return ``(code, rc_code)``."""
    low = low_mask(n)
    for _ in range(max_attempts):
        code = sample_gc_code(n, w, rng)
        rc = rc_code(code, n)
        x = code ^ rc
        if ((x | (x >> 1)) & low).bit_count() >= d:
            return code, rc
    raise Exhausted(n, d, w, max_attempts)


def sample_admissible(
    n: int, d: int, w: int, rng: random.Random, max_attempts: int = DEFAULT_MAX_ATTEMPTS
) -> Sequence:
    """Uniform draw from words with GC-content ``w`` at distance >= ``d`` from their
    own reverse complement.  Raises :class:`Exhausted` after ``max_attempts``
    rejections."""
    _check_nw(n, w)
    if not 1 <= d <= n:
        raise InvalidParams(f"d={d} outside 1..{n}")
    if max_attempts < 1:
        raise InvalidParams("max_attempts must be >= 1")
    code, _ = sample_admissible_code(n, d, w, rng, max_attempts)
    return Sequence(n, code)
