"""Built-in statistical battery.

Five classical tests over one materialized bit stream. A test succeeds when
its p-value lies in [0.001, 0.999], the convention TestU01 uses; p-values at
either extreme (too biased, or too regular) count as failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Protocol

import numpy as np
from scipy import special, stats

from ..errors import InsufficientDataError, ParameterError
from ..generators import Isaac, Xorshift32
from ..prng import bits_to_words, words_to_bits

PASS_BAND = (0.001, 0.999)
MIN_BITS = 100


@dataclass(frozen=True)
class TestReport:
    test_name: str
    statistic: float
    p_value: float

    __test__ = False  # not a pytest class

    def __post_init__(self):
        object.__setattr__(self, "p_value", min(1.0, max(0.0, float(self.p_value))))

    @property
    def passed(self) -> bool:
        return PASS_BAND[0] <= self.p_value <= PASS_BAND[1]

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.test_name:<16} {self.statistic:>16.6f} {self.p_value:>10.6f} {verdict}"


def _bits(bits, minimum=MIN_BITS) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size < minimum:
        raise InsufficientDataError(f"need at least {minimum} bits, got {bits.size}")
    return bits


def monobit_test(bits) -> TestReport:
    """Frequency test: z = (#ones - #zeros) / sqrt(n), two-sided normal p-value."""
    bits = _bits(bits)
    n = bits.size
    s = 2 * int(np.count_nonzero(bits)) - n
    z = s / math.sqrt(n)
    return TestReport("monobit", z, special.erfc(abs(z) / math.sqrt(2)))


def runs_test(bits) -> TestReport:
    """Runs test (NIST SP 800-22 2.3); the statistic is the run count.

    When the ones-proportion already fails the frequency prerequisite the
    p-value is 0, as in NIST.
    """
    bits = _bits(bits)
    n = bits.size
    pi = np.count_nonzero(bits) / n
    runs = 1 + int(np.count_nonzero(bits[1:] != bits[:-1]))
    if abs(pi - 0.5) >= 2 / math.sqrt(n):
        return TestReport("runs", runs, 0.0)
    spread = 2 * pi * (1 - pi)
    p = special.erfc(abs(runs - n * spread) / (spread * math.sqrt(2 * n)))
    return TestReport("runs", runs, p)


def _psi_squared(bits: np.ndarray, m: int) -> float:
    if m == 0:
        return 0.0
    n = bits.size
    extended = np.concatenate([bits, bits[:m - 1]]).astype(np.int64)
    codes = np.zeros(n, dtype=np.int64)
    for j in range(m):
        codes = (codes << 1) | extended[j:j + n]
    counts = np.bincount(codes, minlength=1 << m).astype(np.float64)
    return float((1 << m) / n * np.dot(counts, counts) - n)


def serial_test(bits, block: int = 2) -> TestReport:
    """Serial test (NIST SP 800-22 2.11) on overlapping ``block``-bit patterns.

    Reports the first NIST statistic, del psi^2_m, with 2**(m-1) degrees of
    freedom.
    """
    if block < 2:
        raise ParameterError("serial test block must be >= 2")
    bits = _bits(bits, max(MIN_BITS, 1 << (block + 2)))
    delta = _psi_squared(bits, block) - _psi_squared(bits, block - 1)
    return TestReport(f"serial(m={block})", delta, special.gammaincc(2 ** (block - 2), delta / 2))


def autocorrelation_test(bits, lag: int = 1) -> TestReport:
    """Autocorrelation: disagreements between b_i and b_{i+lag}, normal approximation."""
    bits = _bits(bits)
    n = bits.size - lag
    if lag < 1 or n < MIN_BITS:
        raise ParameterError(f"lag must be in [1, {bits.size - MIN_BITS}]")
    a = int(np.count_nonzero(bits[:-lag] != bits[lag:]))
    z = (2 * a - n) / math.sqrt(n)
    return TestReport(f"autocorr(d={lag})", z, special.erfc(abs(z) / math.sqrt(2)))


def chi_square_uniformity(words, n_bits: int, bins: int = 256) -> TestReport:
    """Chi-square goodness of fit of N-bit words bucketed by their top log2(bins) bits.

    Needs at least 100 samples per bin.
    """
    k = int(bins).bit_length() - 1
    if bins < 2 or 1 << k != bins or k > n_bits:
        raise ParameterError(f"bins must be a power of two no larger than 2**{n_bits}")
    words = np.asarray(words)
    if words.size < 100 * bins:
        raise InsufficientDataError(f"need at least {100 * bins} words for {bins} bins, got {words.size}")
    if words.dtype == object:
        top = np.array([int(w) >> (n_bits - k) for w in words], dtype=np.int64)
    else:
        top = words.astype(np.int64) >> (n_bits - k)
    if top.min() < 0 or top.max() >= bins:
        raise ParameterError(f"words out of range for {n_bits} bits")
    counts = np.bincount(top, minlength=bins).astype(np.float64)
    expected = words.size / bins
    statistic = float(((counts - expected) ** 2).sum() / expected)
    return TestReport(f"chi2({bins} bins)", statistic, stats.chi2.sf(statistic, bins - 1))


class BitSource(Protocol):
    word_bits: int

    def next_bits(self, count: int) -> np.ndarray: ...


class ConstantSource:
    word_bits = 32

    def __init__(self, bit: int = 0):
        self.bit = bit

    def next_bits(self, count):
        return np.full(count, self.bit, dtype=np.uint8)


class AlternatingSource:
    word_bits = 32

    def __init__(self):
        self._phase = 0

    def next_bits(self, count):
        out = (np.arange(count) + self._phase) & 1
        self._phase = (self._phase + count) & 1
        return out.astype(np.uint8)


class WordSource:
    """Bit view of a raw 32-bit word generator (ISAAC or XORshift), MSB first."""

    word_bits = 32

    def __init__(self, generator: Isaac | Xorshift32):
        self.generator = generator
        self._pending = np.zeros(0, dtype=np.uint8)

    def next_bits(self, count):
        need = count - self._pending.size
        if need > 0:
            words = self.generator.fill(-(-need // 32))
            self._pending = np.concatenate([self._pending, words_to_bits(words, 32)])
        out, self._pending = self._pending[:count], self._pending[count:]
        return out


def battery_tests(n_bits: int, bins: int = 256) -> list[tuple[str, Callable[[np.ndarray], TestReport]]]:
    """The registered tests, each mapping a bit stream to one report."""
    return [
        ("monobit", monobit_test),
        ("runs", runs_test),
        ("serial", lambda b: serial_test(b, 2)),
        ("autocorrelation", lambda b: autocorrelation_test(b, 1)),
        ("chi_square", lambda b: chi_square_uniformity(bits_to_words(b, n_bits), n_bits, bins)),
    ]


def run_battery(source: BitSource, n_bits: int, bins: int = 256) -> list[TestReport]:
    """Draw ``n_bits`` from ``source`` once and run every registered test on it."""
    bits = source.next_bits(n_bits)
    return [test(bits) for _, test in battery_tests(source.word_bits, bins)]


def format_report(reports: list[TestReport]) -> str:
    header = f"{'test':<16} {'statistic':>16} {'p-value':>10} result"
    return "\n".join([header] + [r.line() for r in reports]) + "\n"
