"""Compiled inner loops shared by the input generators and the CI generator.

All state lives in int64 numpy arrays holding values in [0, 2**32); every
arithmetic result is masked back to 32 bits. Keeping the words signed avoids
numba's unsigned/signed promotion rules, and the same functions run unchanged
as plain Python through ``.py_func``.
"""

import numpy as np
from numba import njit

MASK32 = 0xFFFFFFFF
ISAAC_SIZE = 256


@njit(cache=True, nogil=True)
def xorshift32(y):
    y ^= (y << 13) & MASK32
    y ^= y >> 17
    y ^= (y << 5) & MASK32
    return y


@njit(cache=True, nogil=True)
def isaac_block(mm, acc, out):
    """One ISAAC shuffle pass: refresh ``mm`` and write 256 words to ``out``.

    ``acc`` holds the accumulators (aa, bb, cc). ``cc`` counts passes.
    """
    aa = acc[0]
    cc = (acc[2] + 1) & MASK32
    bb = (acc[1] + cc) & MASK32
    for i in range(ISAAC_SIZE):
        x = mm[i]
        r = i & 3
        if r == 0:
            aa ^= (aa << 13) & MASK32
        elif r == 1:
            aa ^= aa >> 6
        elif r == 2:
            aa ^= (aa << 2) & MASK32
        else:
            aa ^= aa >> 16
        aa = (mm[(i + 128) & 255] + aa) & MASK32
        y = (mm[(x >> 2) & 255] + aa + bb) & MASK32
        mm[i] = y
        bb = (mm[(y >> 10) & 255] + x) & MASK32
        out[i] = bb
    acc[0] = aa
    acc[1] = bb
    acc[2] = cc


@njit(cache=True, nogil=True)
def isaac_fill(mm, acc, out, regs, dest):
    """Copy the next ``len(dest)`` ISAAC words into ``dest``; ``regs[0]`` is the read index."""
    idx = regs[0]
    for k in range(dest.shape[0]):
        if idx >= ISAAC_SIZE:
            isaac_block(mm, acc, out)
            idx = 0
        dest[k] = out[idx]
        idx += 1
    regs[0] = idx


@njit(cache=True, nogil=True)
def xorshift_fill(y, dest):
    for k in range(dest.shape[0]):
        y = xorshift32(y)
        dest[k] = y
    return y


@njit(cache=True, nogil=True)
def ci_rounds(regs, mm, acc, out, n_cells, c, rejection, dest):
    """Run ``len(dest)`` rounds of the CI generator, storing the state after each.

    ``regs`` is [x, y, isaac_index]; the state ``x`` keeps cell 0 in its most
    significant bit (bit ``n_cells - 1``). Requires ``n_cells <= 62``.
    """
    x = regs[0]
    y = regs[1]
    idx = regs[2]
    limit = ((MASK32 + 1) // n_cells) * n_cells
    top = n_cells - 1
    for r in range(dest.shape[0]):
        if idx >= ISAAC_SIZE:
            isaac_block(mm, acc, out)
            idx = 0
        m = (out[idx] & 1) + c
        idx += 1
        for _ in range(m):
            y = xorshift32(y)
            if rejection:
                while y >= limit:
                    y = xorshift32(y)
            x ^= np.int64(1) << (top - y % n_cells)
        dest[r] = x
    regs[0] = x
    regs[1] = y
    regs[2] = idx
