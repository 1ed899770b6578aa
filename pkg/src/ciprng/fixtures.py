"""The published N = 5 worked example, replayable through injected input streams."""

from .prng import CiPrng

WORKED_N = 5
WORKED_X0 = 0b10100  # t = 484084, x0 = t mod 32
WORKED_M = (4, 5, 4, 4, 4, 4, 5, 5, 5, 5, 4, 5, 4)
# Cells as printed (1-based).
WORKED_S = (2, 4, 2, 2, 5, 1, 1, 5, 5, 3, 2, 3, 3)
WORKED_BITS = "10100111101111110011"
WORKED_WORDS = (20, 30, 31, 19)


def worked_example_generator(emit_initial: bool = True) -> CiPrng:
    return CiPrng.from_streams(WORKED_X0, WORKED_M, [s - 1 for s in WORKED_S], WORKED_N,
                               emit_initial=emit_initial)


FIXTURES = {"worked5": worked_example_generator}
