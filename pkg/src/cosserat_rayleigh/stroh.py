"""Stroh-type analysis of the plane-strain surface wave problem.

With y = diag(rho, rho, rho J)^{1/2} z the depth profile satisfies

    (1/k^2) T y'' + (i/k) (R + R^T) y' - Q~ y = 0,   Q~ = Q0 - k^2 v^2 I,
    (1/k^2) T y'(0) + (i/k) R^T y(0) = 0,

and exponential modes y = d exp(i r k x2) with Im r > 0 solve the pencil
[r^2 T + r (R + R^T) + Q~] d = 0. The pencil determinant is even in r, so its
roots come from a real cubic in x = r^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import minimize_scalar

from .errors import DegenerateRoots, InadmissibleMaterial, OutOfRange, RealRoot
from .material import CosseratMaterial, check_conditions


@dataclass(frozen=True)
class WaveContext:
    """A material bound to a wavenumber, with the normalized matrices cached."""

    material: CosseratMaterial
    k: float
    T: np.ndarray
    R: np.ndarray
    Q0: np.ndarray

    def Q(self, v: float) -> np.ndarray:
        return self.Q0 - (self.k * v) ** 2 * np.eye(3)

    @property
    def inertia_sqrt(self) -> np.ndarray:
        """Diagonal of I_hat^{1/2}; z = y / inertia_sqrt."""
        m = self.material
        return np.sqrt([m.rho, m.rho, m.rho * m.rot_inertia_J])

    @property
    def coupling(self) -> float:
        """The micro-rotation coupling 2 k mu_c / (rho sqrt(J))."""
        m = self.material
        return 2.0 * self.k * m.mu_c / (m.rho * math.sqrt(m.rot_inertia_J))


def matrices(m: CosseratMaterial, k: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(T, R, Q0) for material ``m`` at wavenumber ``k`` without admissibility checks."""
    rho, J = m.rho, m.rot_inertia_J
    k2 = k * k
    c = 2.0 * k * m.mu_c / (rho * math.sqrt(J))
    T = k2 * np.diag([(m.mu_e + m.mu_c) / rho, (2 * m.mu_e + m.lambda_e) / rho, m.curvature_G / (rho * J)])
    R = np.zeros((3, 3))
    R[0, 1] = k2 * m.lambda_e / rho
    R[1, 0] = k2 * (m.mu_e - m.mu_c) / rho
    # The theta3 term sits in the sigma_12 traction row, i.e. (R^T)[0, 2].
    R[2, 0] = c
    Q0 = np.array(
        [
            [k2 * (2 * m.mu_e + m.lambda_e) / rho, 0.0, 0.0],
            [0.0, k2 * (m.mu_e + m.mu_c) / rho, -c],
            [0.0, -c, (k2 * m.curvature_G + 4 * m.mu_c) / (rho * J)],
        ]
    )
    return T, R, Q0


def context(m: CosseratMaterial, k: float) -> WaveContext:
    if not (k > 0.0 and math.isfinite(k)):
        raise InadmissibleMaterial(f"wavenumber must be positive and finite, got {k}")
    report = check_conditions(m)
    if not report.in_plane_real_waves.holds:
        raise InadmissibleMaterial(
            "material violates 2 mu_e + lambda_e > 0, mu_e > 0, mu_c > 0, alpha1 + alpha2 > 0 "
            f"(margin {report.in_plane_real_waves.margin})"
        )
    T, R, Q0 = matrices(m, k)
    return WaveContext(material=m, k=float(k), T=T, R=R, Q0=Q0)


# ---------------------------------------------------------------------------
# limiting speed


@dataclass(frozen=True)
class LimitingSpeeds:
    c_p: float
    c_s: float
    c_m1: float
    c_m2: float
    v_hat: float


def limiting_speeds(ctx: WaveContext) -> LimitingSpeeds:
    m, k = ctx.material, ctx.k
    if not (2 * m.mu_e + m.lambda_e > 0 and m.mu_e > 0 and m.mu_c > 0 and m.curvature_G > 0):
        raise InadmissibleMaterial("analytic limiting speed needs 2 mu_e + lambda_e, mu_e, mu_c, G > 0")
    rho, J, G = m.rho, m.rot_inertia_J, m.curvature_G
    cp2 = (2 * m.mu_e + m.lambda_e) / rho
    cs2 = (m.mu_e + m.mu_c) / rho
    cm12 = G / (rho * J) * (1.0 + 4.0 * m.mu_c * m.mu_e / (G * k * k * (m.mu_e + m.mu_c)))
    x = 4.0 * m.mu_c**2 / (k * k * rho * J * (m.mu_e + m.mu_c))
    delta = (cs2 - cm12) ** 2 + 2.0 * (cs2 + cm12) * x + x * x
    # cm2^2 = (S - sqrt(delta)) / 2 with S = cs2 + cm12 + x; the two roots
    # multiply to cs2 * cm12, which gives a cancellation-free form.
    cm22 = cs2 * cm12 / (0.5 * (cs2 + cm12 + x + math.sqrt(delta)))
    c_p, c_m2 = math.sqrt(cp2), math.sqrt(cm22)
    return LimitingSpeeds(c_p, math.sqrt(cs2), math.sqrt(cm12), c_m2, min(c_p, c_m2))


def limiting_speed_analytic(ctx: WaveContext) -> float:
    return limiting_speeds(ctx).v_hat


def _v_theta(ctx: WaveContext, theta: float) -> float:
    s, c = math.sin(theta), math.cos(theta)
    q = s * s * ctx.T + s * c * (ctx.R + ctx.R.T) + c * c * ctx.Q0
    lam = np.linalg.eigvalsh(q)[0]
    return math.sqrt(max(lam, 0.0) / (ctx.k * ctx.k * c * c))


def limiting_speed_scan(ctx: WaveContext, n_theta: int = 512, delta: float = 1e-3) -> float:
    """Infimum over theta of sqrt(lambda_min(Q_theta) / (k^2 cos^2 theta))."""
    if n_theta < 64:
        raise OutOfRange(f"n_theta must be at least 64, got {n_theta}")
    thetas = np.linspace(-0.5 * math.pi + delta, 0.5 * math.pi - delta, n_theta)
    vals = np.array([_v_theta(ctx, t) for t in thetas])
    i = int(np.argmin(vals))
    lo = thetas[max(i - 1, 0)]
    hi = thetas[min(i + 1, n_theta - 1)]
    if lo == hi:
        return float(vals[i])
    res = minimize_scalar(lambda t: _v_theta(ctx, t), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-8})
    return float(min(res.fun, vals[i]))


# ---------------------------------------------------------------------------
# sextic


@dataclass(frozen=True)
class SexticCoefficients:
    """r^6 + P1 r^4 + P2 r^2 + P3 together with its factorization constants.

    The cubic in x = r^2 factors as (x + c_l)(x^2 + (c_t + c_m) x + c_t c_m - K).
    """

    P1: float
    P2: float
    P3: float
    c_l: float
    c_t: float
    c_m: float
    K: float

    def poly(self, r):
        r2 = np.asarray(r) ** 2
        return ((r2 + self.P1) * r2 + self.P2) * r2 + self.P3


def sextic(ctx: WaveContext, v: float) -> SexticCoefficients:
    if v < 0:
        raise OutOfRange(f"speed must be non-negative, got {v}")
    T, Qt = ctx.T, ctx.Q(v)
    a = (ctx.R + ctx.R.T)[0, 1]
    b = ctx.coupling
    t1, t2, t3 = np.diag(T)
    # pencil rows: [A1, a r, b r], [a r, A2, -b], [b r, -b, A3], A_i = t_i x + q_i
    A1, A2, A3 = ([Qt[i, i], T[i, i]] for i in range(3))
    # det = A1 A2 A3 - b^2 A1 - a^2 x A3 - 2 a b^2 x - b^2 x A2   (x = r^2)
    det = npoly.polymul(npoly.polymul(A1, A2), A3)
    det = npoly.polysub(det, b * b * np.asarray(A1))
    det = npoly.polysub(det, a * a * npoly.polymulx(A3))
    det = npoly.polysub(det, [0.0, 2 * a * b * b])
    det = npoly.polysub(det, b * b * npoly.polymulx(A2))
    det = np.asarray(det) / (t1 * t2 * t3)

    m = ctx.material
    k2 = ctx.k**2
    rv2 = m.rho * v * v
    c_l = 1.0 - rv2 / (2 * m.mu_e + m.lambda_e)
    c_t = 1.0 - rv2 / (m.mu_e + m.mu_c)
    c_m = (1.0 + 4 * m.mu_c * m.mu_e / (m.curvature_G * k2 * (m.mu_e + m.mu_c))
           - m.rho * m.rot_inertia_J * v * v / m.curvature_G)
    K = 4 * m.rho * m.mu_c**2 * v * v / (m.curvature_G * k2 * (m.mu_e + m.mu_c) ** 2)
    return SexticCoefficients(P1=float(det[2]), P2=float(det[1]), P3=float(det[0]),
                              c_l=c_l, c_t=c_t, c_m=c_m, K=K)


def _squared_roots(coeffs: SexticCoefficients) -> np.ndarray:
    """x = r^2 from the factorized cubic, ordered (x1 = -c_l, then the pair)."""
    ct, cm = coeffs.c_t, coeffs.c_m
    disc = math.sqrt((ct - cm) ** 2 + 4.0 * coeffs.K)
    s = -(ct + cm)
    # stable quadratic: larger-magnitude root first, the other from the product
    big = 0.5 * (s - disc) if s <= 0 else 0.5 * (s + disc)
    prod = ct * cm - coeffs.K
    small = prod / big if big != 0.0 else 0.5 * (s + disc)
    return np.array([-coeffs.c_l, small, big])


def sextic_roots(coeffs: SexticCoefficients, tol: float = 1e-12) -> np.ndarray:
    """The three roots with Im r > 0 (purely imaginary for subsonic speeds)."""
    x = _squared_roots(coeffs)
    scale = max(1.0, float(np.max(np.abs(x))))
    if np.any(x >= -tol * scale):
        raise RealRoot(f"r^2 = {x.tolist()} has a non-negative member; speed is not subsonic")
    return 1j * np.sqrt(-x)


# ---------------------------------------------------------------------------
# modes and boundary matrix


@dataclass(frozen=True)
class StrohModes:
    roots: np.ndarray
    d: np.ndarray  # columns d^(j)
    b: np.ndarray  # columns b^(j) = (r_j T + R^T) d^(j)

    @property
    def B(self) -> np.ndarray:
        return self.b


def pencil(ctx: WaveContext, v: float, r: complex) -> np.ndarray:
    return r * r * ctx.T + r * (ctx.R + ctx.R.T) + ctx.Q(v)


def _null_vector(a: np.ndarray) -> np.ndarray:
    _, _, vh = np.linalg.svd(a)
    return vh[-1].conj()


def modes(ctx: WaveContext, v: float, rel_tol: float = 1e-8) -> StrohModes:
    v_hat = limiting_speed_analytic(ctx)
    if not 0.0 <= v < v_hat:
        raise OutOfRange(f"speed {v} outside [0, v_hat = {v_hat})")
    coeffs = sextic(ctx, v)
    r = sextic_roots(coeffs)
    gaps = [abs(r[i] - r[j]) for i in range(3) for j in range(i + 1, 3)]
    if min(gaps) <= rel_tol * max(1.0, float(np.max(np.abs(r)))):
        raise DegenerateRoots(f"coincident decay roots {r.tolist()}")
    m = ctx.material
    beta = 2.0 * m.mu_c / ((m.mu_e + m.mu_c) * ctx.k)
    sqrt_j = math.sqrt(m.rot_inertia_J)
    d = np.empty((3, 3), dtype=complex)
    d[:, 0] = [1.0, r[0], 0.0]
    for j in (1, 2):
        d[:, j] = [beta * r[j], -beta, -sqrt_j * (r[j] ** 2 + coeffs.c_t)]
    for j in range(3):
        p = pencil(ctx, v, r[j])
        scale = np.linalg.norm(p) * max(np.linalg.norm(d[:, j]), 1e-300)
        if np.linalg.norm(d[:, j]) < 1e-14 or np.linalg.norm(p @ d[:, j]) > rel_tol * scale:
            # closed form collapses (e.g. mu_c -> 0); use the numerical null space
            d[:, j] = _null_vector(p)
    b = np.column_stack([(r[j] * ctx.T + ctx.R.T) @ d[:, j] for j in range(3)])
    return StrohModes(roots=r, d=d, b=b)


def boundary_determinant(ctx: WaveContext, v: float) -> complex:
    """det B with unit-normalized amplitude columns."""
    mo = modes(ctx, v)
    d = mo.d / np.linalg.norm(mo.d, axis=0)
    b = np.column_stack([(mo.roots[j] * ctx.T + ctx.R.T) @ d[:, j] for j in range(3)])
    return complex(np.linalg.det(b))


def stroh_secular(ctx: WaveContext, v: float) -> float:
    """Explicit secular function of the Stroh approach; its root is v_R."""
    v_hat = limiting_speed_analytic(ctx)
    if not 0.0 <= v < v_hat:
        raise OutOfRange(f"speed {v} outside [0, v_hat = {v_hat})")
    c = sextic(ctx, v)
    m = ctx.material
    P = c.P2 - c.c_l * c.c_t - c.c_l * c.c_m
    P3 = c.P3
    lhs = math.sqrt(P3 * (c.c_t + c.c_m + 2.0 * math.sqrt(P))) * 4.0 * m.mu_e**2
    rhs = (c.c_m + math.sqrt(P)) * (m.lambda_e - (2 * m.mu_e + m.lambda_e) * c.c_l) ** 2
    return float(lhs - rhs)
