"""Stream files for external batteries (TestU01, NIST STS, dieharder).

``raw`` packs bits MSB-first into bytes in emission order. ``ascii`` writes
'0'/'1' characters with a newline after every 64th bit.
"""

from __future__ import annotations

import numpy as np

from ..errors import ParameterError

FORMATS = ("raw", "ascii")
ASCII_LINE = 64


def encode_stream(bits, fmt: str) -> bytes:
    bits = np.asarray(bits, dtype=np.uint8)
    if fmt == "raw":
        if bits.size % 8:
            raise ParameterError(f"raw export needs a multiple of 8 bits, got {bits.size}")
        return np.packbits(bits, bitorder="big").tobytes()
    if fmt == "ascii":
        text = (bits + ord("0")).tobytes()
        lines = [text[i:i + ASCII_LINE] for i in range(0, len(text), ASCII_LINE)]
        out = b"\n".join(lines)
        if bits.size and bits.size % ASCII_LINE == 0:
            out += b"\n"
        return out
    raise ParameterError(f"unknown format {fmt!r}; choose from {FORMATS}")


def decode_stream(data: bytes, fmt: str) -> np.ndarray:
    if fmt == "raw":
        return np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="big")
    if fmt == "ascii":
        digits = data.replace(b"\n", b"")
        if digits.strip(b"01"):
            raise ParameterError("ascii stream may contain only '0', '1' and newlines")
        return np.frombuffer(digits, dtype=np.uint8) - ord("0")
    raise ParameterError(f"unknown format {fmt!r}; choose from {FORMATS}")


def export_stream(source, n_bits: int, path, fmt: str = "raw") -> int:
    """Write ``n_bits`` from ``source`` to ``path``; returns the byte count written."""
    if fmt == "raw" and n_bits % 8:
        raise ParameterError(f"raw export needs a multiple of 8 bits, got {n_bits}")
    data = encode_stream(source.next_bits(n_bits), fmt)
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)
