"""CI(ISAAC, XORshift): chaotic iterations driven by two input generators.

Each round draws one ISAAC word ``a`` and performs ``m = a % 2 + c`` single
cell flips, the cell of each flip being ``b % N`` for a fresh XORshift word
``b``. The state after the round is the output word; its cells, first cell
first, are the output bits.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterable, Iterator

import numpy as np

from . import __version__, _kernels
from .core import BitState
from .errors import InvalidKeyError, ParameterError
from .generators import MASK32, Isaac, Xorshift32

ALGORITHM = "CI(ISAAC,XORshift)"
INDEX_MODES = ("modulo", "rejection")
# Widest state the compiled round loop packs into an int64.
KERNEL_MAX_CELLS = 62


@dataclass(frozen=True)
class CiPrngParams:
    """Generator parameters.

    ``c`` defaults to 3N, the smallest recommended value. ``unsafe`` lifts the
    ``c >= 3N`` guard, e.g. to replay toy examples with N = 5, c = 4.
    ``index_mode="rejection"`` removes the modulo bias of ``b % N`` by
    redrawing ``b``; it changes the stream and is off by default.
    """

    n_cells: int = 32
    c: int | None = None
    emit_initial: bool = True
    unsafe: bool = False
    index_mode: str = "modulo"

    def __post_init__(self):
        if self.n_cells < 2:
            raise ParameterError(f"n_cells must be >= 2, got {self.n_cells}")
        if self.c is None:
            object.__setattr__(self, "c", 3 * self.n_cells)
        if self.c < 0:
            raise ParameterError(f"c must be non-negative, got {self.c}")
        if self.c < 3 * self.n_cells and not self.unsafe:
            raise ParameterError(
                f"c={self.c} is below 3*N={3 * self.n_cells}; pass unsafe=True to allow it")
        if self.index_mode not in INDEX_MODES:
            raise ParameterError(f"index_mode must be one of {INDEX_MODES}")


@dataclass(frozen=True)
class SeedKey:
    """Composite key: initial state, ISAAC key bytes and XORshift seed.

    ``x0`` is an integer whose bits are the initial cells, cell 0 most
    significant; its width is fixed by the generator's ``n_cells``.
    """

    x0: int
    isaac_key: bytes = b""
    xorshift_seed: int = field(default=1)

    def __post_init__(self):
        if self.x0 < 0:
            raise InvalidKeyError("x0 must be non-negative")
        if not 0 < self.xorshift_seed <= MASK32:
            raise InvalidKeyError(
                f"xorshift seed must be a nonzero 32-bit word, got {self.xorshift_seed}")
        object.__setattr__(self, "isaac_key", bytes(self.isaac_key))
        if len(self.isaac_key) > 1024:
            raise InvalidKeyError("ISAAC key is at most 1024 bytes")

    @classmethod
    def random(cls, n_cells: int, rng: np.random.Generator, key_bytes: int = 32) -> SeedKey:
        x0 = int.from_bytes(rng.bytes((n_cells + 7) // 8), "big") >> (-n_cells % 8)
        seed = 0
        while seed == 0:
            seed = int(rng.integers(1, 1 << 32))
        return cls(x0, rng.bytes(key_bytes), seed)

    @classmethod
    def from_time(cls, n_cells: int, now: float | None = None) -> SeedKey:
        """Key from the fractional part of the clock, e.g. 1237632934.484084 -> t = 484084.

        ``x0 = t mod 2**N``; the input generators are keyed from the full
        timestamp. Convenience only: the result is not reproducible.
        """
        now = time.time() if now is None else now
        t = round((now % 1) * 1_000_000)
        stamp = repr(now).encode()
        digest = hashlib.sha256(b"ciprng-time" + stamp).digest()
        seed = int.from_bytes(digest[:4], "little") or 1
        return cls(t % (1 << n_cells), digest, seed)

    def derive(self, tag: str) -> SeedKey:
        """An independent key for a named purpose, keeping ``x0``."""
        h = hashlib.sha256()
        for part in (b"ciprng-derive", tag.encode(), self.x0.to_bytes((self.x0.bit_length() + 8) // 8, "big"),
                     self.isaac_key, self.xorshift_seed.to_bytes(4, "big")):
            h.update(len(part).to_bytes(4, "big"))
            h.update(part)
        digest = h.digest()
        seed = int.from_bytes(hashlib.sha256(digest).digest()[:4], "little") or 1
        return SeedKey(self.x0, digest, seed)

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(self.x0.to_bytes((self.x0.bit_length() + 8) // 8, "big"))
        h.update(self.isaac_key)
        h.update(self.xorshift_seed.to_bytes(4, "big"))
        return h.hexdigest()[:16]


class CiPrng:
    """Stateful CI(ISAAC, XORshift) generator.

    >>> g = CiPrng(SeedKey(x0=0, isaac_key=b"k", xorshift_seed=7))
    >>> g.next_word() == 0          # x0 is emitted first by default
    True
    """

    def __init__(self, key: SeedKey, params: CiPrngParams | None = None):
        self.params = params or CiPrngParams()
        n = self.params.n_cells
        if key.x0 >= 1 << n:
            raise InvalidKeyError(f"x0 does not fit in {n} cells")
        self.key = key
        self.x = key.x0
        self.isaac = Isaac.from_key(key.isaac_key)
        self.xorshift = Xorshift32(key.xorshift_seed)
        self.initial_emitted = not self.params.emit_initial
        self._injected: tuple[Iterator[int], Iterator[int]] | None = None
        self._pending = np.zeros(0, dtype=np.uint8)

    @classmethod
    def from_streams(cls, x0: int, m_values: Iterable[int], s_values: Iterable[int],
                     n_cells: int, emit_initial: bool = True) -> CiPrng:
        """Generator whose rounds take ``m`` and cell indices from explicit sequences.

        ``s_values`` are 0-based cells. The input generators are bypassed, so
        worked examples can be replayed exactly; a round raises
        ``ParameterError`` once either sequence runs out.
        """
        params = CiPrngParams(n_cells, c=0, emit_initial=emit_initial, unsafe=True)
        g = cls(SeedKey(x0), params)
        g._injected = (iter(m_values), iter(s_values))
        return g

    @property
    def n_cells(self) -> int:
        return self.params.n_cells

    word_bits = n_cells

    @property
    def state(self) -> BitState:
        return BitState.from_int(self.x, self.n_cells)

    def _cell(self) -> int:
        n = self.n_cells
        if self.params.index_mode == "rejection":
            limit = ((MASK32 + 1) // n) * n
            b = self.xorshift.next()
            while b >= limit:
                b = self.xorshift.next()
            return b % n
        return self.xorshift.next() % n

    def _round(self) -> int:
        n = self.n_cells
        if self._injected is not None:
            m_iter, s_iter = self._injected
            m = next(m_iter, None)
            cells = [] if m is None else list(islice(s_iter, m))
            if m is None or len(cells) < m:
                raise ParameterError("injected m/S streams exhausted")
        else:
            m = self.isaac.next() % 2 + self.params.c
            cells = (self._cell() for _ in range(m))
        for s in cells:
            if not 0 <= s < n:
                raise IndexError(f"cell {s} out of range for {n} cells")
            self.x ^= 1 << (n - 1 - s)
        return self.x

    def _initial(self) -> bool:
        if not self.initial_emitted:
            self.initial_emitted = True
            return True
        return False

    def next_round(self) -> BitState:
        return BitState.from_int(self.next_word(), self.n_cells)

    def next_word(self) -> int:
        if self._initial():
            return self.x
        return self._round()

    def next_words(self, count: int) -> np.ndarray:
        """The next ``count`` output words.

        The array is int64 up to 62 cells and holds Python ints beyond that.
        """
        wide = self.n_cells > KERNEL_MAX_CELLS
        words = np.empty(count, dtype=object if wide else np.int64)
        start = 0
        if count and self._initial():
            words[0] = self.x
            start = 1
        if wide or self._injected is not None:
            for k in range(start, count):
                words[k] = self._round()
            return words
        regs = np.array([self.x, self.xorshift.y, self.isaac.idx], dtype=np.int64)
        _kernels.ci_rounds(regs, self.isaac.mm, self.isaac.acc, self.isaac.out,
                           self.n_cells, self.params.c,
                           self.params.index_mode == "rejection", words[start:])
        self.x, self.xorshift.y, self.isaac.idx = (int(v) for v in regs)
        return words

    def next_bits(self, count: int) -> np.ndarray:
        """The next ``count`` output bits as a uint8 array, carrying partial words over."""
        if count < 0:
            raise ParameterError("bit count must be non-negative")
        have = self._pending.size
        if count <= have:
            out, self._pending = self._pending[:count], self._pending[count:]
            return out
        n_words = -(-(count - have) // self.n_cells)
        bits = np.concatenate([self._pending, words_to_bits(self.next_words(n_words), self.n_cells)])
        out, self._pending = bits[:count], bits[count:]
        return out

    def describe(self) -> dict:
        """Self-description sufficient to reproduce the stream given the key."""
        p = self.params
        return {
            "algorithm": ALGORITHM,
            "version": __version__,
            "xorshift": self.xorshift.variant,
            "isaac": self.isaac.variant,
            "n_cells": p.n_cells,
            "c": p.c,
            "emit_initial": p.emit_initial,
            "index_mode": p.index_mode,
            "flips_per_round": "m = a % 2 + c",
            "key_fingerprint": self.key.fingerprint(),
        }


def words_to_bits(words: np.ndarray, n_bits: int) -> np.ndarray:
    """Unpack words into bits, most significant first, word after word."""
    if n_bits <= KERNEL_MAX_CELLS and words.dtype != object:
        shifts = np.arange(n_bits - 1, -1, -1, dtype=np.int64)
        return ((words.astype(np.int64)[:, None] >> shifts) & 1).astype(np.uint8).ravel()
    out = np.empty(len(words) * n_bits, dtype=np.uint8)
    for k, w in enumerate(words):
        out[k * n_bits:(k + 1) * n_bits] = [(int(w) >> (n_bits - 1 - j)) & 1 for j in range(n_bits)]
    return out


def bits_to_words(bits: np.ndarray, n_bits: int) -> np.ndarray:
    """Group whole ``n_bits`` chunks into int64 words; a trailing partial chunk is dropped."""
    if n_bits > KERNEL_MAX_CELLS:
        raise ParameterError(f"word width above {KERNEL_MAX_CELLS} bits is not supported here")
    bits = np.asarray(bits, dtype=np.int64)
    usable = bits.size - bits.size % n_bits
    weights = np.int64(1) << np.arange(n_bits - 1, -1, -1, dtype=np.int64)
    return bits[:usable].reshape(-1, n_bits) @ weights
