"""Isotropic Cosserat material parameters, admissibility tests and bulk speeds.

The numerics only ever need a handful of combined quantities, so the material
stores those directly:

* ``curvature_G``  = mu_e * L_c**2 * (alpha1 + alpha2)
* ``rot_inertia_J`` = j * mu_e * tau_c**2

The individual curvature weights ``alpha1..3`` are optional. They are needed
for the out-of-plane acoustic tensor and the 3-D condition sets only.

Units are left to the caller. The reference data used throughout the tests is
in GPa, mm and g/mm^3.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace
from typing import Mapping

from .errors import InadmissibleMaterial

_REQUIRED_KEYS = ("lambda_e", "mu_e", "mu_c", "curvature_G", "rot_inertia_J", "rho")
_OPTIONAL_KEYS = ("alpha1", "alpha2", "alpha3")


@dataclass(frozen=True)
class CosseratMaterial:
    lambda_e: float
    mu_e: float
    mu_c: float
    curvature_G: float
    rot_inertia_J: float
    rho: float
    alpha1: float | None = None
    alpha2: float | None = None
    alpha3: float | None = None

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            if not math.isfinite(float(value)):
                raise InadmissibleMaterial(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, float(value))
        if self.rho <= 0.0:
            raise InadmissibleMaterial(f"rho must be positive, got {self.rho}")
        if self.rot_inertia_J <= 0.0:
            raise InadmissibleMaterial(f"rot_inertia_J must be positive, got {self.rot_inertia_J}")

    @classmethod
    def from_eringen(
        cls,
        lambda_: float,
        mu: float,
        kappa: float,
        curvature_G: float,
        rot_inertia_J: float,
        rho: float,
        **alphas: float,
    ) -> "CosseratMaterial":
        """Build from Eringen's notation: mu_c = kappa/2 and mu_e = mu + kappa/2."""
        return cls(
            lambda_e=lambda_,
            mu_e=mu + 0.5 * kappa,
            mu_c=0.5 * kappa,
            curvature_G=curvature_G,
            rot_inertia_J=rot_inertia_J,
            rho=rho,
            **alphas,
        )

    @classmethod
    def from_mapping(cls, data: Mapping[str, object]) -> "CosseratMaterial":
        """Strict constructor for material files; unknown or missing keys are errors."""
        unknown = sorted(set(data) - set(_REQUIRED_KEYS) - set(_OPTIONAL_KEYS))
        if unknown:
            raise InadmissibleMaterial(f"unknown material keys: {', '.join(unknown)}")
        missing = [key for key in _REQUIRED_KEYS if key not in data]
        if missing:
            raise InadmissibleMaterial(f"missing material keys: {', '.join(missing)}")
        kwargs = {}
        for key, value in data.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InadmissibleMaterial(f"{key} must be a number, got {value!r}")
            kwargs[key] = float(value)
        return cls(**kwargs)

    def to_mapping(self) -> dict[str, float]:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def with_(self, **changes: float) -> "CosseratMaterial":
        return replace(self, **changes)

    @property
    def gamma(self) -> float | None:
        if self.alpha1 is None or self.alpha2 is None:
            return None
        return self.alpha1 + self.alpha2


def aluminum_epoxy() -> CosseratMaterial:
    """The aluminum-epoxy composite used as the reference material (GPa, mm, g/mm^3)."""
    return CosseratMaterial(
        lambda_e=7.59,
        mu_e=1.89745,
        mu_c=0.0074466,
        curvature_G=0.263383,
        rot_inertia_J=0.0196,
        rho=2.22287,
    )


@dataclass(frozen=True)
class ConditionSet:
    """One named set of strict inequalities.

    ``holds`` and ``margin`` are ``None`` when the set needs curvature weights
    that the material does not provide.
    """

    holds: bool | None
    margin: float | None


def _evaluate(terms: list[float | None]) -> ConditionSet:
    if any(t is None for t in terms):
        return ConditionSet(None, None)
    margin = min(terms)  # type: ignore[type-var]
    return ConditionSet(margin > 0.0, float(margin))


@dataclass(frozen=True)
class ConditionReport:
    in_plane_real_waves: ConditionSet
    real_plane_waves: ConditionSet
    strong_ellipticity: ConditionSet
    positive_energy: ConditionSet
    chirita_ghiba: ConditionSet
    eringen: ConditionSet
    classical_speeds_only: ConditionSet

    def as_dict(self) -> dict[str, dict[str, object]]:
        return {
            f.name: {"holds": getattr(self, f.name).holds, "margin": getattr(self, f.name).margin}
            for f in fields(self)
        }


def _gamma_proxy(m: CosseratMaterial) -> float | None:
    # Sign of alpha1 + alpha2. When only G is known, G = mu_e L_c^2 gamma
    # with L_c^2 > 0, so gamma has the sign of G / mu_e.
    if m.gamma is not None:
        return m.gamma
    if m.mu_e == 0.0:
        return None
    return m.curvature_G / m.mu_e


def _mode_2a1a3(m: CosseratMaterial) -> float | None:
    if m.alpha1 is None or m.alpha3 is None:
        return None
    return 2.0 * m.alpha1 + m.alpha3


def check_conditions(m: CosseratMaterial) -> ConditionReport:
    """Evaluate every admissibility condition set for ``m``.

    Margins are the smallest left-hand side of each set, so a flag is true
    exactly when its margin is positive.
    """
    p_mod = 2.0 * m.mu_e + m.lambda_e
    g = _gamma_proxy(m)
    a13 = _mode_2a1a3(m)

    in_plane = _evaluate([p_mod, m.mu_e, m.mu_c, g])
    real_3d = _evaluate([p_mod, m.mu_e, m.mu_c, g, a13])
    lh = _evaluate([p_mod, m.mu_e + m.mu_c, g, a13])
    if m.alpha1 is None or m.alpha2 is None or m.alpha3 is None:
        pos = ConditionSet(None, None)
    else:
        pos = _evaluate(
            [m.mu_e, m.mu_c, 2.0 * m.mu_e + 3.0 * m.lambda_e, m.alpha1, m.alpha2,
             2.0 * m.alpha1 + 3.0 * m.alpha3]
        )
    chirita = _evaluate([m.mu_e - m.mu_c + m.lambda_e, m.mu_e + m.mu_c, g])
    c_ms2 = m.curvature_G / (m.rho * m.rot_inertia_J)
    eringen = _evaluate([c_ms2 - (m.mu_e + m.mu_c) / m.rho])

    # Diagnostic only: both rotational branches faster than both classical speeds.
    if a13 is None or m.gamma is None or m.gamma == 0.0:
        extra = ConditionSet(None, None)
    else:
        c_mp2 = c_ms2 * a13 / m.gamma
        extra = _evaluate([min(c_mp2, c_ms2) - max(p_mod / m.rho, m.mu_e / m.rho)])

    return ConditionReport(
        in_plane_real_waves=in_plane,
        real_plane_waves=real_3d,
        strong_ellipticity=lh,
        positive_energy=pos,
        chirita_ghiba=chirita,
        eringen=eringen,
        classical_speeds_only=extra,
    )


@dataclass(frozen=True)
class CharacteristicSpeeds:
    """Bulk wave speeds. A speed is ``None`` when its radicand is not positive."""

    c_p: float | None
    c_t: float | None
    c_s: float | None
    c_mp: float | None
    c_ms: float | None
    cutoff_frequency: float | None

    def as_dict(self) -> dict[str, float | None]:
        return asdict(self)


def _sqrt_or_none(x: float | None) -> float | None:
    if x is None or not x > 0.0:
        return None
    return math.sqrt(x)


def characteristic_speeds(m: CosseratMaterial) -> CharacteristicSpeeds:
    rho_j = m.rho * m.rot_inertia_J
    c_ms2 = m.curvature_G / rho_j
    a13 = _mode_2a1a3(m)
    c_mp2 = None if (a13 is None or not m.gamma) else c_ms2 * a13 / m.gamma
    return CharacteristicSpeeds(
        c_p=_sqrt_or_none((m.lambda_e + 2.0 * m.mu_e) / m.rho),
        c_t=_sqrt_or_none(m.mu_e / m.rho),
        c_s=_sqrt_or_none((m.mu_e + m.mu_c) / m.rho),
        c_mp=_sqrt_or_none(c_mp2),
        c_ms=_sqrt_or_none(c_ms2),
        cutoff_frequency=None if m.mu_c < 0.0 else 2.0 * math.sqrt(m.mu_c / rho_j),
    )
