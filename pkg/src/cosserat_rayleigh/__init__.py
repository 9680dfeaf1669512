"""Rayleigh surface waves in isotropic linear Cosserat half-spaces."""

__version__ = "0.1.0"

from .material import CosseratMaterial, aluminum_epoxy, characteristic_speeds, check_conditions  # noqa: E402
from .stroh import WaveContext, context, limiting_speed_analytic  # noqa: E402
from .impedance import ImpedanceResult, decay_matrix  # noqa: E402
from .rayleigh import RayleighSolution, solve, solve_newton, solve_stroh, dispersion_sweep  # noqa: E402

__all__ = [
    "CosseratMaterial",
    "RayleighSolution",
    "WaveContext",
    "aluminum_epoxy",
    "characteristic_speeds",
    "check_conditions",
    "context",
    "decay_matrix",
    "dispersion_sweep",
    "ImpedanceResult",
    "limiting_speed_analytic",
    "solve",
    "solve_newton",
    "solve_stroh",
]
