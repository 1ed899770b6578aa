"""Wall-clock throughput of the CI generator next to its two input generators."""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..errors import ParameterError
from ..generators import Isaac, Xorshift32
from ..prng import CiPrng, CiPrngParams, SeedKey

MIN_BYTES = 1 << 20


@dataclass(frozen=True)
class BenchEntry:
    name: str
    n_bytes: int
    seconds: float

    @property
    def bytes_per_second(self) -> float:
        return self.n_bytes / self.seconds if self.seconds > 0 else float("inf")


def _timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def throughput_bench(n_bytes: int = MIN_BYTES, key: SeedKey | None = None,
                     params: CiPrngParams | None = None) -> list[BenchEntry]:
    if n_bytes < MIN_BYTES:
        raise ParameterError(f"benchmark needs at least {MIN_BYTES} bytes")
    key = key or SeedKey(0, b"bench", 1)
    params = params or CiPrngParams()
    ci = CiPrng(key, params)
    isaac = Isaac.from_key(key.isaac_key)
    xorshift = Xorshift32(key.xorshift_seed)
    # warm the compiled kernels so timings exclude compilation
    ci.next_words(2)
    isaac.fill(2)
    xorshift.fill(2)

    ci_words = -(-n_bytes * 8 // params.n_cells)
    raw_words = -(-n_bytes // 4)
    return [
        BenchEntry("CI(ISAAC,XORshift)", n_bytes, _timed(lambda: ci.next_words(ci_words))),
        BenchEntry("ISAAC", n_bytes, _timed(lambda: isaac.fill(raw_words))),
        BenchEntry("XORshift", n_bytes, _timed(lambda: xorshift.fill(raw_words))),
    ]


def format_bench(entries: list[BenchEntry]) -> str:
    lines = [f"{'generator':<20} {'bytes':>12} {'seconds':>10} {'MB/s':>10}"]
    for e in entries:
        lines.append(f"{e.name:<20} {e.n_bytes:>12} {e.seconds:>10.4f} {e.bytes_per_second / 1e6:>10.2f}")
    return "\n".join(lines) + "\n"
