"""Dense 3x3 kernels: Hermitian and general eigenproblems, exp, det/inv/solve.

LAPACK (through numpy) does the heavy lifting for Hermitian eigenproblems and
linear solves. General eigenvalues come from the characteristic cubic so that
ordering is deterministic; eigenvectors are null vectors of A - lambda I.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import IllConditioned, NotHermitian, Singular

DEFAULT_TOL = 1e-11

# Above this eigenvector condition number the matrix is treated as defective.
_DEFECTIVE_COND = 1e8


def _norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def herm_eig(a: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Ascending real eigenvalues and orthonormal eigenvectors of a Hermitian matrix."""
    a = np.asarray(a, dtype=complex)
    scale = _norm(a)
    if _norm(a - a.conj().T) > tol * max(scale, np.finfo(float).tiny):
        raise NotHermitian(f"Hermitian defect {_norm(a - a.conj().T):.3e} exceeds tol*|A|")
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    return w, v


def cubic_roots(c2: complex, c1: complex, c0: complex, polish: int = 3) -> np.ndarray:
    """Roots of x^3 + c2 x^2 + c1 x + c0 (Cardano, then Newton polish).

    Roots are sorted by real part; near-ties put the root with Im >= 0 first.
    """
    shift = c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2**3 / 27.0 - c2 * c1 / 3.0 + c0
    disc = cmath.sqrt(q * q / 4.0 + p**3 / 27.0)
    # pick the larger of the two candidates to avoid cancellation in u
    u3 = -q / 2.0 + disc
    alt = -q / 2.0 - disc
    if abs(alt) > abs(u3):
        u3 = alt
    omega = complex(-0.5, np.sqrt(3.0) / 2.0)
    roots = []
    if abs(u3) == 0.0:
        roots = [-shift] * 3
    else:
        u = u3 ** (1.0 / 3.0)
        for j in range(3):
            uj = u * omega**j
            roots.append(uj - p / (3.0 * uj) - shift)
    out = np.array(roots, dtype=complex)
    for _ in range(polish):
        f = ((out + c2) * out + c1) * out + c0
        df = (3.0 * out + 2.0 * c2) * out + c1
        step = np.where(np.abs(df) > 0.0, f / np.where(df == 0, 1.0, df), 0.0)
        out = out - step
    return _order(out)


def _order(values: np.ndarray, rel: float = 1e-12) -> np.ndarray:
    scale = max(float(np.max(np.abs(values))), 1.0)
    key = [(round(v.real / (rel * scale)), -v.imag) for v in values]
    idx = sorted(range(len(values)), key=lambda i: key[i])
    return values[idx]


def char_poly(a: np.ndarray) -> tuple[complex, complex, complex]:
    """Coefficients (c2, c1, c0) of det(x I - A) = x^3 + c2 x^2 + c1 x + c0."""
    tr = np.trace(a)
    m2 = 0.5 * (tr * tr - np.trace(a @ a))
    return complex(-tr), complex(m2), complex(-np.linalg.det(a))


@dataclass(frozen=True)
class Spectrum3:
    values: np.ndarray
    vectors: np.ndarray
    condition: float

    def residuals(self, a: np.ndarray) -> np.ndarray:
        return np.array(
            [np.linalg.norm(a @ self.vectors[:, j] - self.values[j] * self.vectors[:, j])
             for j in range(3)]
        )


def _null_vector(b: np.ndarray) -> np.ndarray:
    _, _, vh = np.linalg.svd(b)
    return vh[-1].conj()


def gen_eig3(a: np.ndarray, tol: float = DEFAULT_TOL) -> Spectrum3:
    """Eigenvalues and unit eigenvectors of a general complex 3x3 matrix.

    Raises IllConditioned when the eigenvector basis is (numerically) defective.
    """
    a = np.asarray(a, dtype=complex)
    lam = cubic_roots(*char_poly(a))
    eye = np.eye(3)
    vecs = np.empty((3, 3), dtype=complex)
    for j, lj in enumerate(lam):
        x = _null_vector(a - lj * eye)
        # one inverse-iteration pass sharpens both the vector and the value
        shift = lj + 1e-10 * max(_norm(a), 1.0)
        try:
            y = np.linalg.solve(a - shift * eye, x)
            if np.all(np.isfinite(y)) and _norm(y) > 0.0:
                x = y / _norm(y)
        except np.linalg.LinAlgError:
            pass
        x = x / _norm(x)
        lam[j] = (x.conj() @ a @ x) / (x.conj() @ x)
        vecs[:, j] = x
    cond = float(np.linalg.cond(vecs))
    if not np.isfinite(cond) or cond > _DEFECTIVE_COND:
        raise IllConditioned(f"eigenvector basis condition {cond:.3e}; matrix is nearly defective")
    return Spectrum3(values=lam, vectors=vecs, condition=cond)


def mat_exp(a: np.ndarray, s: float = 1.0) -> np.ndarray:
    """exp(s A), by eigendecomposition when well conditioned, Pade otherwise."""
    a = np.asarray(a, dtype=complex)
    if s == 0.0:
        return np.eye(3, dtype=complex)
    try:
        spec = gen_eig3(a)
    except IllConditioned:
        return scipy.linalg.expm(s * a)
    if spec.condition > 1e4:
        return scipy.linalg.expm(s * a)
    v = spec.vectors
    return v @ np.diag(np.exp(s * spec.values)) @ np.linalg.inv(v)


def det3(a: np.ndarray) -> complex | float:
    a = np.asarray(a)
    return (
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


def _check_regular(a: np.ndarray, tol: float) -> None:
    scale = _norm(a)
    if scale == 0.0 or abs(det3(a)) <= tol * scale**3:
        raise Singular(f"|det| = {abs(det3(a)):.3e} is below tol*|A|^3")


def inv3(a: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    a = np.asarray(a)
    _check_regular(a, tol)
    return np.linalg.inv(a)


def solve3(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    a = np.asarray(a)
    _check_regular(a, tol)
    return np.linalg.solve(a, b)
