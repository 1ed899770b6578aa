"""Key sensitivity (variance ratio between nearby keys) and the 3-D point cloud."""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from ..errors import ParameterError
from ..prng import CiPrng, CiPrngParams, SeedKey

PERTURB_TARGETS = ("x0", "isaac_key", "xorshift_seed")


@dataclass(frozen=True)
class SensitivityResult:
    n: int
    h: int

    @property
    def p(self) -> float:
        return self.h / self.n


def variance_ratio(a, b) -> SensitivityResult:
    """Fraction of positions where two equal-length bit sequences differ."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape or a.ndim != 1:
        raise ParameterError(f"sequences must be 1-D and equal length, got {a.shape} and {b.shape}")
    if a.size == 0:
        raise ParameterError("sequences must be non-empty")
    return SensitivityResult(int(a.size), int(np.count_nonzero(a != b)))


@dataclass(frozen=True)
class PairResult:
    pair: int
    target: str
    flipped_bit: int
    result: SensitivityResult


def perturb(key: SeedKey, target: str, bit: int) -> SeedKey:
    """Flip one bit of one key component."""
    if target == "x0":
        return replace(key, x0=key.x0 ^ (1 << bit))
    if target == "isaac_key":
        raw = bytearray(key.isaac_key.ljust(bit // 8 + 1, b"\0"))
        raw[bit // 8] ^= 1 << (bit % 8)
        return replace(key, isaac_key=bytes(raw))
    if target == "xorshift_seed":
        return replace(key, xorshift_seed=key.xorshift_seed ^ (1 << bit))
    raise ParameterError(f"unknown perturbation target {target!r}; choose from {PERTURB_TARGETS}")


def _target_width(target: str, params: CiPrngParams, key_bytes: int) -> int:
    return {"x0": params.n_cells, "isaac_key": 8 * key_bytes, "xorshift_seed": 32}[target]


def sensitivity_experiment(pairs: int = 100, n_bits: int = 100_000,
                           params: CiPrngParams | None = None, seed: int = 0,
                           target: str = "x0", workers: int = 1) -> list[PairResult]:
    """Variance ratio over ``pairs`` key pairs that differ in one uniformly chosen bit.

    Base keys are random (from ``seed``); the flipped bit lies in the component
    named by ``target``. Every generator instance is driven by one worker.
    """
    params = params or CiPrngParams()
    rng = np.random.default_rng(seed)
    key_bytes = 32
    width = _target_width(target, params, key_bytes)
    jobs = []
    for k in range(pairs):
        key = SeedKey.random(params.n_cells, rng, key_bytes)
        bit = int(rng.integers(width))
        if target == "xorshift_seed" and key.xorshift_seed == 1 << bit:
            # would zero the seed; flip the neighbouring bit instead
            bit = (bit + 1) % 32
        jobs.append((k, bit, key, perturb(key, target, bit)))

    def run(job):
        k, bit, key, other = job
        a = CiPrng(key, params).next_bits(n_bits)
        b = CiPrng(other, params).next_bits(n_bits)
        return PairResult(k, target, bit, variance_ratio(a, b))

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(run, jobs))
    return [run(job) for job in jobs]


def _write_rows(dest, header, rows) -> None:
    """Write CSV to a path or an open text file."""
    if hasattr(dest, "write"):
        w = csv.writer(dest, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    with open(dest, "w", newline="") as fh:
        _write_rows(fh, header, rows)


def write_sensitivity_csv(results: Iterable[PairResult], dest) -> None:
    _write_rows(dest, ["pair", "target", "flipped_bit", "n", "h", "p"],
                ([r.pair, r.target, r.flipped_bit, r.result.n, r.result.h, repr(r.result.p)]
                 for r in results))


def point_cloud(words, n_bits: int) -> np.ndarray:
    """Overlapping triples (w_k, w_k+1, w_k+2) / 2**n_bits as a (len-2, 3) array."""
    words = [int(w) for w in words]
    if len(words) < 3:
        raise ParameterError("need at least 3 words for a point cloud")
    if any(not 0 <= w < 1 << n_bits for w in words):
        raise ParameterError(f"word out of range for {n_bits} bits")
    scaled = np.array([w / 2 ** n_bits for w in words], dtype=np.float64)
    return np.lib.stride_tricks.sliding_window_view(scaled, 3).copy()


def write_point_cloud_csv(points: np.ndarray, dest) -> None:
    _write_rows(dest, ["x", "y", "z"], ([repr(v) for v in row] for row in points.tolist()))
