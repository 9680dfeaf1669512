"""Exception hierarchy shared by every module.

Each exception carries a ``category`` used by the command-line front end to
pick an exit code: ``"material"`` maps to exit 2 and ``"numerical"`` to 3.
"""

from __future__ import annotations


class CosseratError(Exception):
    """Base class for all library errors."""

    category = "numerical"

    def record(self) -> dict:
        """Machine-readable summary (used for the CLI error stream)."""
        return {"error": type(self).__name__, "category": self.category, "message": str(self)}


# algebra
class NotHermitian(CosseratError):
    pass


class IllConditioned(CosseratError):
    pass


class Singular(CosseratError):
    pass


# planewave
class BadDirection(CosseratError):
    category = "usage"


class MissingParameter(CosseratError):
    category = "material"


class ComplexFrequency(CosseratError):
    category = "material"


# stroh
class InadmissibleMaterial(CosseratError):
    category = "material"


class RealRoot(CosseratError):
    pass


class DegenerateRoots(CosseratError):
    pass


class OutOfRange(CosseratError):
    pass


# impedance
class NearLimitingSpeed(CosseratError):
    pass


class SpectrumNotRight(CosseratError):
    pass


# rayleigh
class NoRoot(CosseratError):
    pass


class NewtonDiverged(CosseratError):
    pass


# classical
class SingularSystem(CosseratError):
    pass


class BadGrid(CosseratError):
    category = "usage"
