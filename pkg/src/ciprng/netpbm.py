"""Minimal Netpbm I/O: PGM P5 (maxval 255) and PBM P4/P1.

PBM stores 1 for black; bits are kept as stored.
"""

from __future__ import annotations

import re

import numpy as np

from . import __version__
from .errors import ParameterError

COMMENT = f"# ciprng {__version__}".encode()
_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n?)*([^\s#]+)")


def _header(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated tokens, skipping comments; return them and the raster offset."""
    tokens, pos = [], 0
    for _ in range(count):
        m = _TOKEN.match(data, pos)
        if not m:
            raise ParameterError("truncated netpbm header")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens, pos


def read_pgm(path) -> np.ndarray:
    """Return an (height, width) uint8 array from a binary PGM."""
    with open(path, "rb") as fh:
        data = fh.read()
    (magic, w, h, maxval), pos = _header(data, 4)
    if magic != b"P5":
        raise ParameterError(f"{path}: expected a P5 PGM, got {magic!r}")
    width, height, maxval = int(w), int(h), int(maxval)
    if maxval != 255:
        raise ParameterError(f"{path}: only maxval 255 is supported, got {maxval}")
    raster = data[pos + 1:pos + 1 + width * height]
    if len(raster) != width * height:
        raise ParameterError(f"{path}: truncated raster")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(path, pixels: np.ndarray) -> None:
    pixels = np.asarray(pixels, dtype=np.uint8)
    height, width = pixels.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n" + COMMENT + b"\n" + f"{width} {height}\n255\n".encode())
        fh.write(pixels.tobytes())


def read_pbm(path) -> np.ndarray:
    """Return an (height, width) 0/1 uint8 array from a P4 or P1 PBM."""
    with open(path, "rb") as fh:
        data = fh.read()
    (magic, w, h), pos = _header(data, 3)
    width, height = int(w), int(h)
    if magic == b"P4":
        row_bytes = (width + 7) // 8
        raster = data[pos + 1:pos + 1 + row_bytes * height]
        if len(raster) != row_bytes * height:
            raise ParameterError(f"{path}: truncated raster")
        rows = np.frombuffer(raster, dtype=np.uint8).reshape(height, row_bytes)
        return np.unpackbits(rows, axis=1, bitorder="big")[:, :width].copy()
    if magic == b"P1":
        body = re.sub(rb"#[^\n]*", b"", data[pos:])
        digits = re.findall(rb"[01]", body)
        if len(digits) < width * height:
            raise ParameterError(f"{path}: truncated raster")
        return (np.array([d == b"1" for d in digits[:width * height]], dtype=np.uint8)
                .reshape(height, width))
    raise ParameterError(f"{path}: expected a P4 or P1 PBM, got {magic!r}")


def write_pbm(path, bits: np.ndarray) -> None:
    bits = np.asarray(bits, dtype=np.uint8)
    height, width = bits.shape
    with open(path, "wb") as fh:
        fh.write(b"P4\n" + COMMENT + b"\n" + f"{width} {height}\n".encode())
        fh.write(np.packbits(bits, axis=1, bitorder="big").tobytes())
