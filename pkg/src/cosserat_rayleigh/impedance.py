"""Surface impedance matrix by angular averaging of the rotated triple.

For an angle theta the problem is rewritten in a rotated frame. With
c = cos(theta), s = sin(theta) and Q~ = Q0 - k^2 v^2 I,

    T_theta = c^2 T - s c (R + R^T) + s^2 Q~
    R_theta = c^2 R + s c (T - Q~) - s^2 R^T
    Q_theta = s^2 T + s c (R + R^T) + c^2 Q~

and the impedance is M = H^{-1} + i H^{-1} S with

    H = (1/pi) int_0^pi T_theta^{-1} dtheta,
    S = -(1/pi) int_0^pi T_theta^{-1} R_theta^T dtheta.

The integrands are smooth and pi-periodic below the limiting speed, so the
composite midpoint rule converges spectrally. All matrices live in the
mass-normalized y-space; ``to_physical`` maps M back to z = I_hat^{-1/2} y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Spectrum3, gen_eig3
from .errors import IllConditioned, NearLimitingSpeed, OutOfRange, SpectrumNotRight
from .stroh import WaveContext, limiting_speed_analytic

DEFAULT_N = 256
MAX_N = 4096
# Speeds above (1 - NEAR_SONIC) * v_hat are refused.
NEAR_SONIC = 1e-6
_COND_LIMIT = 1e12
_CONVERGED = 1e-10


@dataclass(frozen=True)
class RotatedTriple:
    theta: float
    T: np.ndarray
    R: np.ndarray
    Q: np.ndarray


@dataclass(frozen=True)
class ImpedanceResult:
    v: float
    M: np.ndarray
    H: np.ndarray
    S: np.ndarray
    quadrature_points: int
    residual: float

    def hermitian_defect(self) -> float:
        return float(np.linalg.norm(self.M - self.M.conj().T))

    def skew_defect(self) -> float:
        """|| H^{-1}S + (H^{-1}S)^T ||, zero when H^{-1}S is skew."""
        a = np.linalg.solve(self.H, self.S)
        return float(np.linalg.norm(a + a.T))


@dataclass(frozen=True)
class DecayMatrix:
    E: np.ndarray
    spectrum: Spectrum3


@dataclass(frozen=True)
class AngularReport:
    integral_defect: float  # || int_0^pi E_theta dtheta - pi I ||
    closed_form_defect: float  # max_theta || E_theta(closed) - T_theta^{-1}(M + i R_theta^T) ||


def rotate(ctx: WaveContext, v: float, theta: float) -> RotatedTriple:
    T, R, Qt = _rotate_triple(ctx.T, ctx.R, ctx.Q(v), theta)
    return RotatedTriple(theta=float(theta), T=T, R=R, Q=Qt)


def _rotate_triple(T, R, Qt, theta):
    c, s = math.cos(theta), math.sin(theta)
    sym = R + R.T
    return (
        c * c * T - s * c * sym + s * s * Qt,
        c * c * R + s * c * (T - Qt) - s * s * R.T,
        s * s * T + s * c * sym + c * c * Qt,
    )


def _pairwise_sum(stack: np.ndarray) -> np.ndarray:
    """Sum over the leading axis by repeated halving (order independent of n layout)."""
    a = stack
    while a.shape[0] > 1:
        if a.shape[0] % 2:
            a = np.concatenate([a, np.zeros_like(a[:1])])
        a = a[0::2] + a[1::2]
    return a[0]


def _averages(T, R, Qt, n: int):
    theta = (np.arange(n) + 0.5) * (math.pi / n)
    c, s = np.cos(theta)[:, None, None], np.sin(theta)[:, None, None]
    sym = R + R.T
    Tt = c * c * T - s * c * sym + s * s * Qt
    Rt = c * c * R + s * c * (T - Qt) - s * s * R.T
    # T_theta is symmetric, so its 2-norm condition is an eigenvalue ratio
    w = np.linalg.eigvalsh(Tt)
    low = w[:, 0]
    if np.any(low <= 0.0) or np.max(w[:, -1] / low) > _COND_LIMIT:
        worst = float(np.max(np.abs(w[:, -1]) / np.maximum(np.abs(low), np.finfo(float).tiny)))
        raise NearLimitingSpeed(f"rotated matrix T_theta has condition {worst:.3e}")
    inv = np.linalg.inv(Tt)
    H = _pairwise_sum(inv) / n
    S = -_pairwise_sum(inv @ np.transpose(Rt, (0, 2, 1))) / n
    return 0.5 * (H + H.T), S


def _assemble(H, S):
    Hi = np.linalg.inv(H)
    M = Hi + 1j * (Hi @ S)
    return 0.5 * (M + M.conj().T)


def riccati_residual(T, R, Qt, M) -> float:
    """Frobenius norm of (M - iR) T^{-1} (M + i R^T) - Q~."""
    defect = (M - 1j * R) @ np.linalg.solve(T, M + 1j * R.T) - Qt
    return float(np.linalg.norm(defect))


def _guard(ctx: WaveContext, v: float) -> None:
    v_hat = limiting_speed_analytic(ctx)
    if not 0.0 <= v:
        raise OutOfRange(f"speed must be non-negative, got {v}")
    if v > (1.0 - NEAR_SONIC) * v_hat:
        raise NearLimitingSpeed(f"speed {v} is within {NEAR_SONIC:g} v_hat of the limiting speed {v_hat}")


def impedance(ctx: WaveContext, v: float, n: int = DEFAULT_N, adaptive: bool = True) -> ImpedanceResult:
    """M(v) by midpoint quadrature; with ``adaptive`` the rule is doubled until stable."""
    if n < 16:
        raise OutOfRange(f"need at least 16 quadrature points, got {n}")
    _guard(ctx, v)
    Qt = ctx.Q(v)
    H, S = _averages(ctx.T, ctx.R, Qt, n)
    M = _assemble(H, S)
    while adaptive and n < MAX_N:
        H2, S2 = _averages(ctx.T, ctx.R, Qt, 2 * n)
        M2 = _assemble(H2, S2)
        n, H, S, step = 2 * n, H2, S2, np.linalg.norm(M2 - M)
        M = M2
        if step <= _CONVERGED * np.linalg.norm(M):
            break
    return ImpedanceResult(
        v=float(v), M=M, H=H, S=S, quadrature_points=n,
        residual=riccati_residual(ctx.T, ctx.R, Qt, M),
    )


def to_physical(ctx: WaveContext, M: np.ndarray) -> np.ndarray:
    """Impedance acting on physical amplitudes z: I_hat^{1/2} M I_hat^{1/2}."""
    d = ctx.inertia_sqrt
    return d[:, None] * M * d[None, :]


def decay_matrix(ctx: WaveContext, v: float, M: np.ndarray) -> DecayMatrix:
    """E = T^{-1}(M + i R^T); y(x2) = exp(-k x2 E) y(0)."""
    E = np.linalg.solve(ctx.T, M + 1j * ctx.R.T)
    try:
        spec = gen_eig3(E)
    except IllConditioned:
        # v = 0 always has a double decay root, so E is defective there
        w, vecs = np.linalg.eig(E)
        spec = Spectrum3(values=w, vectors=vecs, condition=float(np.linalg.cond(vecs)))
    low = float(np.min(spec.values.real))
    if low <= 0.0:
        raise SpectrumNotRight(f"decay matrix at v={v} has eigenvalue with real part {low:.3e}")
    return DecayMatrix(E=E, spectrum=spec)


def rotated_impedance_check(ctx: WaveContext, v: float, theta_samples, n: int = DEFAULT_N) -> float:
    """Largest || M_theta - M || where M_theta is built from the rotated triple."""
    _guard(ctx, v)
    Qt = ctx.Q(v)
    M = _assemble(*_averages(ctx.T, ctx.R, Qt, n))
    worst = 0.0
    for theta in theta_samples:
        Tt, Rt, Qtt = _rotate_triple(ctx.T, ctx.R, Qt, float(theta))
        Mt = _assemble(*_averages(Tt, Rt, Qtt, n))
        worst = max(worst, float(np.linalg.norm(Mt - M)))
    return worst


def e_theta(E: np.ndarray, theta: float) -> np.ndarray:
    """(cos I + i sin E)^{-1} (cos E + i sin I)."""
    c, s = math.cos(theta), math.sin(theta)
    eye = np.eye(3)
    return np.linalg.solve(c * eye + 1j * s * E, c * E + 1j * s * eye)


def angular_identities(ctx: WaveContext, v: float, n: int = DEFAULT_N) -> AngularReport:
    res = impedance(ctx, v, n)
    M = res.M
    E = decay_matrix(ctx, v, M).E
    Qt = ctx.Q(v)
    thetas = (np.arange(n) + 0.5) * (math.pi / n)
    total = np.zeros((3, 3), dtype=complex)
    worst = 0.0
    for theta in thetas:
        closed = e_theta(E, float(theta))
        total += closed
        Tt, Rt, _ = _rotate_triple(ctx.T, ctx.R, Qt, float(theta))
        direct = np.linalg.solve(Tt, M + 1j * Rt.T)
        worst = max(worst, float(np.linalg.norm(closed - direct)))
    integral = total * (math.pi / n)
    return AngularReport(
        integral_defect=float(np.linalg.norm(integral - math.pi * np.eye(3))),
        closed_form_defect=worst,
    )


def dM_dv(ctx: WaveContext, v: float, h: float | None = None, n: int = DEFAULT_N) -> np.ndarray:
    """Central difference of M in v at a fixed rule, so quadrature error cancels."""
    v_hat = limiting_speed_analytic(ctx)
    if h is None:
        h = 1e-5 * v_hat
    if not (0.0 < v - h and v + h < (1.0 - NEAR_SONIC) * v_hat):
        raise OutOfRange(f"need 0 < v - h and v + h below the guard; v={v}, h={h}, v_hat={v_hat}")
    plus = impedance(ctx, v + h, n, adaptive=False).M
    minus = impedance(ctx, v - h, n, adaptive=False).M
    d = (plus - minus) / (2.0 * h)
    return 0.5 * (d + d.conj().T)
