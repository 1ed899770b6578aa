"""Chaotic watermark encryption and embedding in the 3 low bit-planes of a grayscale image.

Encryption runs chaotic iterations (negation) over the flattened watermark
with a strategy drawn from a keyed CI generator. Embedding writes the k-th
encrypted bit into position U^k of the carrier's low-bit plane, where

    U^0 = S^0,   U^(n+1) = S^(n+1) + 2 U^n + n   (mod plane size)

and S comes from a second, independently keyed generator. Positions already
used are skipped, the recurrence continuing until a fresh one appears.
Extraction only needs the marked image and the key.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import negation_run
from .errors import CapacityError, ParameterError
from .prng import CiPrng, CiPrngParams, SeedKey

DEFAULT_ITERATIONS = 5000
DEFAULT_SHAPE = (64, 64)
PLANES = 3
ENCRYPT_TAG = "watermark-encrypt"
EMBED_TAG = "watermark-embed"


@dataclass(frozen=True, eq=False)
class GrayImage:
    pixels: np.ndarray

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2 or pixels.size == 0:
            raise ParameterError("a grayscale image is a non-empty 2-D array")
        object.__setattr__(self, "pixels", pixels.astype(np.uint8))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        return isinstance(other, GrayImage) and np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True, eq=False)
class BitImage:
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 2 or bits.size == 0:
            raise ParameterError("a binary image is a non-empty 2-D array")
        if np.any((bits != 0) & (bits != 1)):
            raise ParameterError("binary image values must be 0 or 1")
        object.__setattr__(self, "bits", bits.astype(np.uint8))

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    def __eq__(self, other):
        return isinstance(other, BitImage) and np.array_equal(self.bits, other.bits)


@dataclass(frozen=True, eq=False)
class LsbPlane:
    bits: np.ndarray

    @property
    def modulus(self) -> int:
        return int(self.bits.size)


def encryption_strategy(key: SeedKey, cells: int, iterations: int,
                        params: CiPrngParams | None = None) -> np.ndarray:
    if iterations < 0:
        raise ParameterError("iteration count must be non-negative")
    words = CiPrng(key.derive(ENCRYPT_TAG), params).next_words(iterations)
    return np.array([int(w) % cells for w in words], dtype=np.int64)


def encrypt_watermark(w: BitImage, key: SeedKey, iterations: int = DEFAULT_ITERATIONS,
                      params: CiPrngParams | None = None) -> BitImage:
    """Chaotic iterations on the watermark; applying it twice with one key is the identity."""
    strategy = encryption_strategy(key, w.bits.size, iterations, params)
    return BitImage(negation_run(w.bits.ravel(), strategy).reshape(w.bits.shape))


def lsb_plane(img: GrayImage) -> LsbPlane:
    """Bits 2, 1, 0 of each pixel, pixels in row-major order."""
    p = img.pixels.ravel()
    return LsbPlane(np.stack([(p >> 2) & 1, (p >> 1) & 1, p & 1], axis=1).ravel().astype(np.uint8))


def write_plane(img: GrayImage, plane: LsbPlane) -> GrayImage:
    """Replace the 3 low bits of every pixel with ``plane``."""
    if plane.modulus != PLANES * img.pixels.size:
        raise CapacityError(f"plane has {plane.modulus} bits, image needs {PLANES * img.pixels.size}")
    low = plane.bits.reshape(-1, PLANES).astype(np.uint8)
    low = (low[:, 0] << 2) | (low[:, 1] << 1) | low[:, 2]
    pixels = (img.pixels.ravel() & 0xF8) | low
    return GrayImage(pixels.reshape(img.pixels.shape))


def u_sequence(s, modulus: int, count: int | None = None) -> list[int]:
    if modulus <= 0:
        raise ParameterError("modulus must be positive")
    s = [int(v) for v in s]
    count = len(s) if count is None else count
    if count > len(s):
        raise ParameterError(f"need {count} strategy values, got {len(s)}")
    out = []
    u = 0
    for n in range(count):
        u = s[0] % modulus if n == 0 else (s[n] + 2 * u + n - 1) % modulus
        out.append(u)
    return out


def embedding_positions(key: SeedKey, modulus: int, count: int,
                        params: CiPrngParams | None = None) -> np.ndarray:
    """The first ``count`` distinct values of the U recurrence, in order of appearance."""
    if count > modulus:
        raise CapacityError(f"{count} watermark bits do not fit in {modulus} plane bits")
    g = CiPrng(key.derive(EMBED_TAG), params)
    max_draws = 64 * modulus + 1024
    used = np.zeros(modulus, dtype=bool)
    positions = []
    u = n = 0
    while len(positions) < count:
        if n >= max_draws:
            raise CapacityError("position sequence failed to cover the plane")
        for word in g.next_words(count):
            s = int(word) % modulus
            u = s if n == 0 else (s + 2 * u + n - 1) % modulus
            n += 1
            if not used[u]:
                used[u] = True
                positions.append(u)
                if len(positions) == count:
                    break
    return np.array(positions, dtype=np.int64)


def embed(carrier: GrayImage, w: BitImage, key: SeedKey, iterations: int = DEFAULT_ITERATIONS,
          params: CiPrngParams | None = None) -> GrayImage:
    plane = lsb_plane(carrier)
    if w.bits.size > plane.modulus:
        raise CapacityError(
            f"carrier holds {plane.modulus} plane bits, watermark needs {w.bits.size}")
    encrypted = encrypt_watermark(w, key, iterations, params).bits.ravel()
    positions = embedding_positions(key, plane.modulus, encrypted.size, params)
    bits = plane.bits.copy()
    bits[positions] = encrypted
    return write_plane(carrier, LsbPlane(bits))


def extract(marked: GrayImage, key: SeedKey, shape: tuple[int, int] = DEFAULT_SHAPE,
            iterations: int = DEFAULT_ITERATIONS, params: CiPrngParams | None = None) -> BitImage:
    plane = lsb_plane(marked)
    cells = shape[0] * shape[1]
    if cells > plane.modulus:
        raise CapacityError(f"marked image holds {plane.modulus} plane bits, watermark needs {cells}")
    positions = embedding_positions(key, plane.modulus, cells, params)
    encrypted = BitImage(plane.bits[positions].reshape(shape))
    return encrypt_watermark(encrypted, key, iterations, params)


def bit_error_rate(a: BitImage, b: BitImage) -> float:
    if a.bits.shape != b.bits.shape:
        raise ParameterError("watermarks differ in shape")
    return float(np.count_nonzero(a.bits != b.bits)) / a.bits.size


def psnr(a: GrayImage, b: GrayImage) -> float:
    """Peak signal-to-noise ratio in dB; ``inf`` for identical images."""
    if a.pixels.shape != b.pixels.shape:
        raise ParameterError(f"image sizes differ: {a.pixels.shape} vs {b.pixels.shape}")
    mse = float(np.mean((a.pixels.astype(np.float64) - b.pixels.astype(np.float64)) ** 2))
    if mse == 0:
        return math.inf
    return 10 * math.log10(255 ** 2 / mse)
