"""Chaotic iterations over an N-cell boolean state.

At each step only the cell named by the strategy is updated, taking the value
the iteration function gives it; every other cell is held. The shipped
iteration function is the vectorial negation, so one step flips one cell.
Cells are indexed from 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class BitState:
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) < 2:
            raise ParameterError(f"a state needs at least 2 cells, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise ParameterError("state cells must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @property
    def n_cells(self) -> int:
        return len(self.bits)

    @classmethod
    def from_int(cls, value: int, n_cells: int) -> BitState:
        """Unpack ``value`` with cell 0 as the most significant bit."""
        if not 0 <= value < 1 << n_cells:
            raise ParameterError(f"{value} does not fit in {n_cells} cells")
        return cls(tuple((value >> (n_cells - 1 - k)) & 1 for k in range(n_cells)))

    def __int__(self):
        return pack_bits(self)

    def __str__(self):
        return "".join(map(str, self.bits))


IterationFunction = Callable[[BitState], BitState]


def negation(x: BitState) -> BitState:
    return BitState(tuple(1 - b for b in x.bits))


def ci_step(x: BitState, i: int, f: IterationFunction | None = None) -> BitState:
    """Update cell ``i`` of ``x`` with ``f(x)[i]``; ``f`` defaults to negation."""
    if not 0 <= i < x.n_cells:
        raise IndexError(f"cell {i} out of range for {x.n_cells} cells")
    bits = list(x.bits)
    bits[i] = 1 - bits[i] if f is None else f(x).bits[i]
    return BitState(tuple(bits))


def ci_run(x: BitState, strategy: Iterable[int], f: IterationFunction | None = None) -> BitState:
    for i in strategy:
        x = ci_step(x, i, f)
    return x


def pack_bits(x: BitState) -> int:
    value = 0
    for b in x.bits:
        value = (value << 1) | b
    return value


def negation_run(bits: np.ndarray, strategy: Sequence[int]) -> np.ndarray:
    """Vectorized ``ci_run`` under negation on a flat 0/1 array.

    Under negation only the parity of each index's occurrence count matters,
    so the whole strategy collapses to one XOR mask.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    strategy = np.asarray(strategy, dtype=np.int64)
    if strategy.size and (strategy.min() < 0 or strategy.max() >= bits.size):
        raise IndexError(f"strategy index out of range for {bits.size} cells")
    parity = np.bincount(strategy, minlength=bits.size).astype(np.uint8) & 1
    return bits ^ parity
