"""The classical-elasticity limit (mu_c -> 0) in closed form.

With c_l, c_t the longitudinal and transverse speeds, a = sqrt(c_l^2 - v^2)
and b = sqrt(c_t^2 - v^2), the in-plane block of the impedance is

    M11 = c_t k^2 v^2 a / D,   M22 = c_l k^2 v^2 b / D,
    M12 = i c_t k^2 [2 c_t a b + c_l (v^2 - 2 c_t^2)] / D,   D = c_l c_t - a b,

and the micro-rotation channel decouples with M33 = k^2 c_m sqrt(c_m^2 - v^2).
Each entry has a removable 0/0 at v = 0; the code uses rationalized forms that
are exact there and free of cancellation elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import MissingParameter, NoRoot, OutOfRange, SingularSystem
from .material import CosseratMaterial


@dataclass(frozen=True)
class ClassicalSpeeds:
    c_l: float
    c_t: float
    c_m: float | None = None

    def __post_init__(self) -> None:
        if not (self.c_l > self.c_t > 0.0):
            raise OutOfRange(f"need c_l > c_t > 0, got c_l={self.c_l}, c_t={self.c_t}")

    @classmethod
    def from_lame(cls, lam: float, mu: float, rho: float) -> "ClassicalSpeeds":
        return cls(math.sqrt((2 * mu + lam) / rho), math.sqrt(mu / rho))

    @classmethod
    def from_material(cls, m: CosseratMaterial) -> "ClassicalSpeeds":
        c_m2 = m.curvature_G / (m.rho * m.rot_inertia_J)
        return cls(
            math.sqrt((2 * m.mu_e + m.lambda_e) / m.rho),
            math.sqrt(m.mu_e / m.rho),
            math.sqrt(c_m2) if c_m2 > 0 else None,
        )


def _radicals(speeds: ClassicalSpeeds, v: float) -> tuple[float, float]:
    if not 0.0 <= v < speeds.c_t:
        raise OutOfRange(f"speed {v} outside [0, c_t = {speeds.c_t})")
    return math.sqrt(speeds.c_l**2 - v * v), math.sqrt(speeds.c_t**2 - v * v)


def elastic_block(speeds: ClassicalSpeeds, k: float, v: float) -> np.ndarray:
    """The 2x2 (u1, u2) block of the impedance."""
    cl, ct = speeds.c_l, speeds.c_t
    a, b = _radicals(speeds, v)
    v2 = v * v
    # D = v^2 (cl^2 + ct^2 - v^2) / (cl ct + a b), so v^2 / D needs no division by v
    g = (cl * ct + a * b) / (cl * cl + ct * ct - v2)
    m11 = ct * k * k * a * g
    m22 = cl * k * k * b * g
    # numerator of M12 rationalized the same way; 2 ct a b + cl (2 ct^2 - v^2) > 0
    num = 4 * ct**4 - (4 * ct * ct - cl * cl) * v2
    m12 = -1j * ct * k * k * num * g / (2 * ct * a * b + cl * (2 * ct * ct - v2))
    return np.array([[m11, m12], [np.conj(m12), m22]], dtype=complex)


def analytic_impedance(speeds: ClassicalSpeeds, k: float, v: float) -> np.ndarray:
    if speeds.c_m is None:
        raise MissingParameter("c_m is needed for the micro-rotation entry")
    if not v < speeds.c_m:
        raise OutOfRange(f"speed {v} not below c_m = {speeds.c_m}")
    M = np.zeros((3, 3), dtype=complex)
    M[:2, :2] = elastic_block(speeds, k, v)
    M[2, 2] = k * k * speeds.c_m * math.sqrt(speeds.c_m**2 - v * v)
    return M


def secular_mielke_fu(speeds: ClassicalSpeeds, v: float, k: float = 1.0) -> float:
    """det of the elastic block; finite and positive at v = 0."""
    m = elastic_block(speeds, k, v)
    return float((m[0, 0] * m[1, 1]).real - abs(m[0, 1]) ** 2)


def secular_classic(speeds: ClassicalSpeeds, v: float) -> float:
    """4 sqrt((1 - v^2/c_l^2)(1 - v^2/c_t^2)) - (2 - v^2/c_t^2)^2 (zero also at v = 0)."""
    _radicals(speeds, v)
    xl, xt = (v / speeds.c_l) ** 2, (v / speeds.c_t) ** 2
    return 4.0 * math.sqrt((1.0 - xl) * (1.0 - xt)) - (2.0 - xt) ** 2


def secular_stroh_classical(material, v: float) -> float:
    """Stroh form in stiffnesses c11, c12, c66; ``material`` needs lambda_e, mu_e, rho."""
    c11 = material.lambda_e + 2 * material.mu_e
    c12 = material.lambda_e
    c66 = material.mu_e
    c0 = c11 - c12 * c12 / c11
    x = material.rho * v * v
    if not 0.0 <= x < min(c11, c66):
        raise OutOfRange(f"rho v^2 = {x} outside [0, min(c11, c66))")
    return x * math.sqrt(c11 - x) * math.sqrt(c66 - x) / math.sqrt(c11 * c66) - (x - c0) * (x - c66) / c66


def _interior_root(f, hi: float, points: int = 256) -> float:
    # the forms vanish trivially at 0 or at c_t, so only interior sign changes count
    grid = np.linspace(0.0, hi, points + 2)[1:-1]
    vals = np.array([f(v) for v in grid])
    idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if idx.size == 0:
        raise NoRoot("no interior sign change below c_t")
    i = int(idx[0])
    return float(brentq(f, grid[i], grid[i + 1], xtol=1e-15))


def rayleigh_speed(speeds: ClassicalSpeeds, form: str = "mielke_fu") -> float:
    if form == "mielke_fu":
        return _interior_root(lambda v: secular_mielke_fu(speeds, v), speeds.c_t)
    if form == "classic":
        return _interior_root(lambda v: secular_classic(speeds, v), speeds.c_t)
    raise ValueError(f"unknown form {form!r}; use rayleigh_speed_stroh for the Stroh form")


def rayleigh_speed_stroh(material) -> float:
    ct = math.sqrt(material.mu_e / material.rho)
    return _interior_root(lambda v: secular_stroh_classical(material, v), ct)


@dataclass(frozen=True)
class ClassicalAmplitude:
    y: np.ndarray  # (y1, y2), unit norm, y1 real and non-negative
    residual: float  # sigma_min / sigma_max of the 2x2 system

    @property
    def y3(self) -> np.ndarray:
        """Full boundary amplitude; the micro-rotation component is exactly zero."""
        return np.array([self.y[0], self.y[1], 0.0], dtype=complex)


def classical_boundary_amplitude(speeds: ClassicalSpeeds, k: float, v_R: float,
                                 tol: float = 1e-8, strict: bool = False) -> ClassicalAmplitude:
    """Null vector of the elastic block at v_R.

    The residual measures how far the block is from rank one. SingularSystem
    is raised when the block vanishes, or when ``strict`` and the residual
    exceeds ``tol``.
    """
    block = elastic_block(speeds, k, v_R)
    _, s, vh = np.linalg.svd(block)
    if s[0] == 0.0:
        raise SingularSystem("boundary system is identically zero")
    residual = float(s[1] / s[0])
    if strict and residual > tol:
        raise SingularSystem(f"boundary system is not rank one at v={v_R} (residual {residual:.3e})")
    y = vh[-1].conj()
    lead = y[0] if abs(y[0]) > 1e-12 else y[1]
    y = y * (abs(lead) / lead) / np.linalg.norm(y)
    return ClassicalAmplitude(y=y, residual=residual)
