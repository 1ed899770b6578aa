"""The two input generators: Marsaglia's xorshift32 and Jenkins' ISAAC.

Both are 32-bit generators. XORshift uses the shift triple (13, 17, 5), which
has full period 2**32 - 1 over the nonzero words. ISAAC is the reference
``randinit(flag=TRUE)`` key setup followed by the standard shuffle.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import InvalidKeyError

MASK32 = _kernels.MASK32
ISAAC_SIZE = _kernels.ISAAC_SIZE
GOLDEN_RATIO = 0x9E3779B9

XORSHIFT_VARIANT = "xorshift32(13,17,5)"
ISAAC_VARIANT = "ISAAC-32 randinit(flag=1), reference block order"

_xorshift_step = _kernels.xorshift32.py_func


class Xorshift32:
    """32-bit xorshift generator. The state is the last word returned."""

    variant = XORSHIFT_VARIANT

    def __init__(self, seed: int):
        if not isinstance(seed, (int, np.integer)) or not 0 < seed <= MASK32:
            raise InvalidKeyError(f"xorshift seed must be a nonzero 32-bit word, got {seed!r}")
        self.y = int(seed)

    def next(self) -> int:
        self.y = _xorshift_step(self.y)
        return self.y

    def fill(self, count: int) -> np.ndarray:
        """Return the next ``count`` words as an int64 array."""
        dest = np.empty(count, dtype=np.int64)
        self.y = int(_kernels.xorshift_fill(self.y, dest))
        return dest

    def copy(self) -> Xorshift32:
        return Xorshift32(self.y)

    def __repr__(self):
        return f"Xorshift32(y={self.y:#010x})"


def _mix(a, b, c, d, e, f, g, h):
    a ^= (b << 11) & MASK32; d = (d + a) & MASK32; b = (b + c) & MASK32
    b ^= c >> 2;             e = (e + b) & MASK32; c = (c + d) & MASK32
    c ^= (d << 8) & MASK32;  f = (f + c) & MASK32; d = (d + e) & MASK32
    d ^= e >> 16;            g = (g + d) & MASK32; e = (e + f) & MASK32
    e ^= (f << 10) & MASK32; h = (h + e) & MASK32; f = (f + g) & MASK32
    f ^= g >> 4;             a = (a + f) & MASK32; g = (g + h) & MASK32
    g ^= (h << 8) & MASK32;  b = (b + g) & MASK32; h = (h + a) & MASK32
    h ^= a >> 9;             c = (c + h) & MASK32; a = (a + b) & MASK32
    return a, b, c, d, e, f, g, h


def _randinit(seed: list[int]) -> list[int]:
    """Reference key setup: golden-ratio scramble, then two passes over seed and memory."""
    v = (GOLDEN_RATIO,) * 8
    for _ in range(4):
        v = _mix(*v)
    mm = [0] * ISAAC_SIZE
    for source in (seed, mm):
        for i in range(0, ISAAC_SIZE, 8):
            v = tuple((v[k] + source[i + k]) & MASK32 for k in range(8))
            v = _mix(*v)
            mm[i:i + 8] = v
    return mm


def key_to_seed(key: bytes) -> list[int]:
    """Pack up to 1024 key bytes little-endian into 256 words, zero-padded."""
    key = bytes(key)
    if len(key) > 4 * ISAAC_SIZE:
        raise InvalidKeyError(f"ISAAC key is at most {4 * ISAAC_SIZE} bytes, got {len(key)}")
    padded = key.ljust(4 * ISAAC_SIZE, b"\0")
    return [int.from_bytes(padded[4 * i:4 * i + 4], "little") for i in range(ISAAC_SIZE)]


class Isaac:
    """ISAAC generator seeded with 256 words.

    Words come out in the order of the reference test vector: each shuffle
    pass's result buffer read front to back. The pass run inside the key
    setup is discarded, as the reference harness does, so a zero seed yields
    ``f650e4c8 e448e96d ...``.
    """

    variant = ISAAC_VARIANT

    def __init__(self, seed=None):
        if seed is None:
            seed = [0] * ISAAC_SIZE
        seed = [int(w) for w in seed]
        if len(seed) != ISAAC_SIZE:
            raise InvalidKeyError(f"ISAAC seed must have {ISAAC_SIZE} words, got {len(seed)}")
        if any(not 0 <= w <= MASK32 for w in seed):
            raise InvalidKeyError("ISAAC seed words must be 32-bit unsigned")
        self.mm = np.array(_randinit(seed), dtype=np.int64)
        self.acc = np.zeros(3, dtype=np.int64)
        self.out = np.zeros(ISAAC_SIZE, dtype=np.int64)
        _kernels.isaac_block(self.mm, self.acc, self.out)
        _kernels.isaac_block(self.mm, self.acc, self.out)
        self.idx = 0

    @classmethod
    def from_key(cls, key: bytes) -> Isaac:
        return cls(key_to_seed(key))

    @property
    def passes(self) -> int:
        """Number of shuffle passes run so far, key setup included."""
        return int(self.acc[2])

    def next(self) -> int:
        if self.idx >= ISAAC_SIZE:
            _kernels.isaac_block(self.mm, self.acc, self.out)
            self.idx = 0
        word = int(self.out[self.idx])
        self.idx += 1
        return word

    def fill(self, count: int) -> np.ndarray:
        dest = np.empty(count, dtype=np.int64)
        regs = np.array([self.idx], dtype=np.int64)
        _kernels.isaac_fill(self.mm, self.acc, self.out, regs, dest)
        self.idx = int(regs[0])
        return dest

    def copy(self) -> Isaac:
        clone = Isaac.__new__(Isaac)
        clone.mm = self.mm.copy()
        clone.acc = self.acc.copy()
        clone.out = self.out.copy()
        clone.idx = self.idx
        return clone

    def __eq__(self, other):
        if not isinstance(other, Isaac):
            return NotImplemented
        return (self.idx == other.idx and np.array_equal(self.mm, other.mm)
                and np.array_equal(self.acc, other.acc)
                and np.array_equal(self.out, other.out))
