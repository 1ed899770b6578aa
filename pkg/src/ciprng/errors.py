class CiprngError(Exception):
    """Base class for errors raised by this package."""


class InvalidKeyError(CiprngError, ValueError):
    """Key material that cannot seed a generator (e.g. a zero XORshift seed)."""


class ParameterError(CiprngError, ValueError):
    """Generator or analysis parameters outside their allowed range."""


class CapacityError(CiprngError, ValueError):
    """A carrier image too small for the watermark, or mismatched dimensions."""


class InsufficientDataError(CiprngError, ValueError):
    """A statistical test was given fewer samples than its asymptotics need."""
