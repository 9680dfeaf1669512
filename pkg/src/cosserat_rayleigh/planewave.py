"""Bulk plane waves: mass-normalized acoustic tensors and their branches.

For an in-plane direction xi = (xi1, xi2, 0) the amplitudes (u1, u2, theta3)
obey [Q1(xi, k) - omega^2 I_hat] w = 0 with I_hat = diag(rho, rho, rho J).
Sandwiching by I_hat^{-1/2} gives a symmetric eigenproblem whose eigenvalues
are omega^2. The out-of-plane triple (u3, theta1, theta2) is handled the same
way along xi = e1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import herm_eig
from .errors import BadDirection, ComplexFrequency, MissingParameter
from .material import CosseratMaterial

# Negative eigenvalues smaller than this (relative to |Q|) are rounding noise.
_NEG_TOL = 1e-12


@dataclass(frozen=True)
class AcousticProblem:
    direction: np.ndarray
    k: float
    matrix: np.ndarray
    plane: str  # "in-plane" or "out-of-plane"


def _check_k(k: float) -> None:
    if not k > 0.0:
        raise BadDirection(f"wavenumber must be positive, got {k}")


def acoustic_matrix_inplane(m: CosseratMaterial, xi, k: float) -> AcousticProblem:
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (3,) or abs(xi[2]) > 1e-12 or abs(np.linalg.norm(xi) - 1.0) > 1e-10:
        raise BadDirection(f"direction must be a unit vector with xi3 = 0, got {xi.tolist()}")
    _check_k(k)
    x1, x2 = xi[0], xi[1]
    lam, mue, muc = m.lambda_e, m.mu_e, m.mu_c
    k2 = k * k
    q = np.array(
        [
            [k2 * ((2 * mue + lam) * x1**2 + (mue + muc) * x2**2), k2 * (mue - muc + lam) * x1 * x2, 2 * k * muc * x2],
            [k2 * (mue - muc + lam) * x1 * x2, k2 * ((mue + muc) * x1**2 + (2 * mue + lam) * x2**2), -2 * k * muc * x1],
            [2 * k * muc * x2, -2 * k * muc * x1, k2 * m.curvature_G + 4 * muc],
        ]
    )
    s = 1.0 / np.sqrt([m.rho, m.rho, m.rho * m.rot_inertia_J])
    return AcousticProblem(xi, k, s[:, None] * q * s[None, :], "in-plane")


def acoustic_matrix_outofplane(m: CosseratMaterial, k: float) -> AcousticProblem:
    """Tensor for (u3, theta1, theta2) along e1; needs alpha1, alpha2 and alpha3."""
    if m.alpha1 is None or m.alpha2 is None or m.alpha3 is None:
        raise MissingParameter("alpha1, alpha2 and alpha3 are required for the out-of-plane tensor")
    if m.gamma == 0.0:
        raise MissingParameter("alpha1 + alpha2 must be non-zero to split curvature_G")
    _check_k(k)
    rho, rj = m.rho, m.rho * m.rot_inertia_J
    mu_lc2 = m.curvature_G / m.gamma  # mu_e L_c^2
    c = -2.0 * k * m.mu_c / (rho * math.sqrt(m.rot_inertia_J))
    q = np.array(
        [
            [k * k * (m.mu_e + m.mu_c) / rho, 0.0, c],
            [0.0, (k * k * mu_lc2 * (2 * m.alpha1 + m.alpha3) + 4 * m.mu_c) / rj, 0.0],
            [c, 0.0, (k * k * m.curvature_G + 4 * m.mu_c) / rj],
        ]
    )
    return AcousticProblem(np.array([1.0, 0.0, 0.0]), k, q, "out-of-plane")


def branch_frequencies(problem: AcousticProblem) -> np.ndarray:
    """Ascending angular frequencies omega = sqrt(eigenvalues)."""
    w, _ = herm_eig(problem.matrix)
    floor = -_NEG_TOL * float(np.linalg.norm(problem.matrix))
    if w[0] < floor:
        raise ComplexFrequency(f"acoustic tensor has eigenvalue {w[0]:.6e} < 0")
    return np.sqrt(np.clip(w, 0.0, None))
