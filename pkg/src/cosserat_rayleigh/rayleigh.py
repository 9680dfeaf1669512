"""Rayleigh speed, boundary amplitude and wave field.

The speed is the unique zero of v -> det M(v) on [0, v_hat). Two routes are
offered: a scan with bisection on the quadrature impedance, and a Newton solve
of the Riccati equation together with det M = 0. The Stroh secular function
gives a third, independent root.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .algebra import mat_exp
from .errors import BadGrid, CosseratError, NewtonDiverged, NoRoot
from .impedance import DEFAULT_N, NEAR_SONIC, decay_matrix, impedance
from .material import CosseratMaterial
from .stroh import WaveContext, context, limiting_speed_analytic, stroh_secular

SCAN_POINTS = 64
_ACCEPT = 1e-6  # |lambda_min(M)| <= _ACCEPT * tr M at a root


class Method(str, enum.Enum):
    BISECTION = "Bisection"
    NEWTON = "Newton"
    STROH = "Stroh"


@dataclass(frozen=True)
class RayleighSolution:
    v_R: float
    M_at_root: np.ndarray
    E: np.ndarray
    y0: np.ndarray
    z0: np.ndarray
    det_residual: float
    method: Method
    v_hat: float = math.nan
    sign_changes: int = 1
    iterations: int = 0

    @property
    def margin(self) -> float:
        return self.v_hat - self.v_R


@dataclass(frozen=True)
class FieldSample:
    x1: float
    x2: float
    t: float
    u1: float
    u2: float
    theta3: float


@dataclass(frozen=True)
class FieldGrid:
    """Sampling points. ``phase`` multiplies the amplitude before taking real parts."""

    x1: tuple[float, ...]
    x2: tuple[float, ...]
    t: tuple[float, ...] = (0.0,)
    phase: complex = 1.0


@dataclass
class DispersionTable:
    k: np.ndarray
    v_R: np.ndarray
    omega: np.ndarray
    group_velocity: np.ndarray
    errors: dict[int, dict[str, str]] = field(default_factory=dict)

    @property
    def ok(self) -> np.ndarray:
        return np.isfinite(self.v_R)


def _normalize(y: np.ndarray) -> np.ndarray:
    y = y / np.linalg.norm(y)
    lead = next(c for c in y if abs(c) > 1e-12)
    return y * (abs(lead) / lead)


def _finish(ctx: WaveContext, v: float, M: np.ndarray, method: Method, v_hat: float,
            sign_changes: int = 1, iterations: int = 0) -> RayleighSolution:
    w, vecs = np.linalg.eigh(M)
    det_residual = abs(w[0]) / float(np.trace(M).real)
    if det_residual > _ACCEPT:
        raise NoRoot(f"smallest eigenvalue of M at v={v} is {w[0]:.3e}, not a root")
    y0 = _normalize(vecs[:, 0])
    E = decay_matrix(ctx, v, M).E
    return RayleighSolution(
        v_R=float(v), M_at_root=M, E=E, y0=y0, z0=y0 / ctx.inertia_sqrt,
        det_residual=float(det_residual), method=method, v_hat=v_hat,
        sign_changes=sign_changes, iterations=iterations,
    )


def det_curve(ctx: WaveContext, speeds, n: int = DEFAULT_N) -> np.ndarray:
    return np.array([np.linalg.det(impedance(ctx, float(v), n, adaptive=False).M).real for v in speeds])


def solve(ctx: WaveContext, tol: float | None = None, n: int = DEFAULT_N,
          scan_points: int = SCAN_POINTS) -> RayleighSolution:
    """Scan det M(v) for its sign change, bisect, then polish with one secant step."""
    v_hat = limiting_speed_analytic(ctx)
    if tol is None:
        tol = 1e-8 * v_hat
    top = (1.0 - NEAR_SONIC) * v_hat
    grid = np.linspace(0.0, top, scan_points)
    dets = det_curve(ctx, grid, n)
    signs = np.sign(dets)
    changes = np.nonzero(signs[:-1] * signs[1:] <= 0)[0]
    if changes.size == 0:
        raise NoRoot(f"det M stays positive up to {top} (margin {v_hat - top:.3e} to v_hat)")
    i = int(changes[0])

    def f(v: float) -> float:
        return float(np.linalg.det(impedance(ctx, v, n, adaptive=False).M).real)

    a, b, fa, fb = grid[i], grid[i + 1], dets[i], dets[i + 1]
    while b - a > tol:
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            a = b = mid
            fa = fb = 0.0
            break
        if fa * fm < 0.0:
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    v = 0.5 * (a + b)
    if fb != fa:
        secant = b - fb * (b - a) / (fb - fa)
        if a <= secant <= b:
            v = secant
    M = impedance(ctx, v, n, adaptive=False).M
    return _finish(ctx, v, M, Method.BISECTION, v_hat, sign_changes=int(changes.size))


# ---------------------------------------------------------------------------
# Newton on the Riccati equation


def _hermitian_basis() -> list[np.ndarray]:
    basis = []
    for i in range(3):
        b = np.zeros((3, 3), dtype=complex)
        b[i, i] = 1.0
        basis.append(b)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        re = np.zeros((3, 3), dtype=complex)
        re[i, j] = re[j, i] = 1.0
        im = np.zeros((3, 3), dtype=complex)
        im[i, j], im[j, i] = 1j, -1j
        basis += [re, im]
    return basis


_BASIS = _hermitian_basis()


def _to_params(M: np.ndarray) -> np.ndarray:
    return np.array([M[0, 0].real, M[1, 1].real, M[2, 2].real,
                     M[0, 1].real, M[0, 1].imag, M[0, 2].real, M[0, 2].imag,
                     M[1, 2].real, M[1, 2].imag])


def _from_params(p: np.ndarray) -> np.ndarray:
    return sum(c * b for c, b in zip(p, _BASIS))


def _herm_parts(F: np.ndarray) -> np.ndarray:
    # the Riccati defect is Hermitian, so 9 real numbers describe it
    return _to_params(0.5 * (F + F.conj().T))


def _adjugate(M: np.ndarray) -> np.ndarray:
    a0, a1, a2 = M[:, 0], M[:, 1], M[:, 2]
    return np.array([np.cross(a1, a2), np.cross(a2, a0), np.cross(a0, a1)])


def solve_newton(ctx: WaveContext, seed: tuple[np.ndarray, float], tol: float = 1e-12,
                 max_iter: int = 100) -> RayleighSolution:
    """Newton on 9 Riccati equations plus det M = 0 for (M, v)."""
    M_seed, v = seed
    v_hat = limiting_speed_analytic(ctx)
    T, R = ctx.T, ctx.R
    Tinv = np.linalg.inv(T)
    k2 = ctx.k**2
    x = np.append(_to_params(np.asarray(M_seed, dtype=complex)), float(v))

    def residual(x):
        M = _from_params(x[:9])
        F = (M - 1j * R) @ Tinv @ (M + 1j * R.T) - ctx.Q(x[9])
        return M, np.append(_herm_parts(F), np.linalg.det(M).real)

    def scaled_norm(M, g, v):
        return max(np.linalg.norm(g[:9]) / np.linalg.norm(ctx.Q(v)),
                   abs(g[9]) / np.linalg.norm(M) ** 3)

    M, g = residual(x)
    it = 0
    while scaled_norm(M, g, x[9]) > tol:
        if it >= max_iter:
            raise NewtonDiverged(f"no convergence after {max_iter} iterations")
        A = Tinv @ (M + 1j * R.T)
        C = (M - 1j * R) @ Tinv
        adj = _adjugate(M)
        J = np.empty((10, 10))
        for j, b in enumerate(_BASIS):
            J[:9, j] = _herm_parts(b @ A + C @ b)
            J[9, j] = np.trace(adj @ b).real
        J[:9, 9] = _herm_parts(2.0 * k2 * x[9] * np.eye(3))
        J[9, 9] = 0.0
        if np.linalg.cond(J) > 1e14:
            raise NewtonDiverged(f"Jacobian condition {np.linalg.cond(J):.3e} at iteration {it}")
        step = np.linalg.solve(J, -g)
        # keep the speed inside the admissible interval
        lam = 1.0
        while not 0.0 < x[9] + lam * step[9] < v_hat and lam > 1e-6:
            lam *= 0.5
        x = x + lam * step
        M, g = residual(x)
        it += 1

    v = float(x[9])
    M = 0.5 * (M + M.conj().T)
    w = np.linalg.eigvalsh(M)
    tr = float(np.trace(M).real)
    if not (0.0 < v < v_hat and tr > 0.0 and abs(w[0]) <= _ACCEPT * tr and w[1] > _ACCEPT * tr):
        raise NewtonDiverged(f"Newton reached a non-admissible solution (v={v}, eigenvalues {w.tolist()})")
    # decay_matrix enforces Re spec E > 0
    return _finish(ctx, v, M, Method.NEWTON, v_hat, iterations=it)


def solve_stroh(ctx: WaveContext, n: int = DEFAULT_N, scan_points: int = SCAN_POINTS) -> RayleighSolution:
    """Root of the explicit Stroh secular function, then M at that speed."""
    v_hat = limiting_speed_analytic(ctx)
    top = (1.0 - NEAR_SONIC) * v_hat
    # s(0) = 0 is a trivial root, so the scan starts just above zero
    grid = np.linspace(0.0, top, scan_points)[1:]
    vals = np.array([stroh_secular(ctx, float(v)) for v in grid])
    changes = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]
    if changes.size == 0:
        raise NoRoot("Stroh secular function has no sign change below v_hat")
    i = int(changes[0])
    v = brentq(lambda s: stroh_secular(ctx, s), grid[i], grid[i + 1], xtol=1e-15)
    M = impedance(ctx, v, n).M
    return _finish(ctx, v, M, Method.STROH, v_hat, sign_changes=int(changes.size))


# ---------------------------------------------------------------------------
# fields


def depth_profile(sol: RayleighSolution, ctx: WaveContext, x2: float) -> np.ndarray:
    """y(x2) = exp(-k x2 E) y0."""
    return mat_exp(-ctx.k * sol.E, float(x2)) @ sol.y0


def decay_envelope(sol: RayleighSolution, ctx: WaveContext, x2: float) -> float:
    """Bound kappa ||y0|| exp(-k alpha x2), kappa the eigenbasis condition of E."""
    spec = decay_matrix(ctx, sol.v_R, sol.M_at_root).spectrum
    alpha = float(np.min(spec.values.real))
    return spec.condition * float(np.linalg.norm(sol.y0)) * math.exp(-ctx.k * alpha * x2)


def boundary_traction_residual(sol: RayleighSolution, ctx: WaveContext) -> float:
    """|| (1/k^2) T y'(0) + (i/k) R^T y(0) || with y' = -k E y."""
    k = ctx.k
    y0 = sol.y0
    traction = (1.0 / k**2) * ctx.T @ (-k * sol.E @ y0) + (1j / k) * ctx.R.T @ y0
    return float(np.linalg.norm(traction))


def wavefield(sol: RayleighSolution, ctx: WaveContext, grid: FieldGrid) -> list[FieldSample]:
    """Real fields (u1, u2, theta3) = Re[phase (z1, z2, i z3) e^{ik(x1 - v t)}]."""
    k, v = ctx.k, sol.v_R
    out = []
    for x2 in grid.x2:
        z = depth_profile(sol, ctx, x2) / ctx.inertia_sqrt
        amp = grid.phase * np.array([z[0], z[1], 1j * z[2]])
        for t in grid.t:
            for x1 in grid.x1:
                u = (amp * np.exp(1j * k * (x1 - v * t))).real
                out.append(FieldSample(float(x1), float(x2), float(t), float(u[0]), float(u[1]), float(u[2])))
    return out


# ---------------------------------------------------------------------------
# dispersion


def _workers() -> int:
    raw = os.environ.get("COSSERAT_THREADS")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def dispersion_sweep(m: CosseratMaterial, k_grid, n: int = DEFAULT_N, tol: float | None = None) -> DispersionTable:
    k = np.asarray(k_grid, dtype=float)
    if k.ndim != 1 or k.size < 2 or np.any(k <= 0.0) or np.any(np.diff(k) <= 0.0):
        raise BadGrid("k_grid must be positive, strictly increasing, with at least two points")

    def one(kk: float):
        try:
            return solve(context(m, kk), tol=tol, n=n).v_R, None
        except CosseratError as exc:
            return math.nan, exc.record()

    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        results = list(pool.map(one, k.tolist()))
    v = np.array([r[0] for r in results])
    errors = {i: r[1] for i, r in enumerate(results) if r[1] is not None}
    omega = k * v
    return DispersionTable(k=k, v_R=v, omega=omega, group_velocity=np.gradient(omega, k), errors=errors)
