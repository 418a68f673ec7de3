"""Small dense-matrix utilities for phase-space covariance matrices.

Conventions: quadratures are ordered (Q1, P1, Q2, P2, ...) and the vacuum
covariance is ``0.5 * I``, so a covariance ``V`` is physical iff
``V + (i/2) Delta >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-10
HERMITIAN_TOL = 1e-12

_MODE_BLOCK = np.array([[0.0, 1.0], [-1.0, 0.0]])


def build_symplectic_form(f: int) -> np.ndarray:
    """Return the ``2f x 2f`` block-diagonal symplectic form."""
    if int(f) != f or f < 1:
        raise ValueError(f"mode count must be a positive integer, got {f!r}")
    return np.kron(np.eye(int(f)), _MODE_BLOCK)


def mode_count(M: np.ndarray) -> int:
    M = np.asarray(M)
    n = M.shape[0]
    if M.ndim != 2 or M.shape[1] != n or n % 2 or n == 0:
        raise ValueError(f"expected a square matrix of even size, got shape {M.shape}")
    return n // 2


def hermitian_min_eigenvalue(H: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix.

    The 2x2 case uses the closed form; larger sizes go through LAPACK.

    Raises
    ------
    ValueError
        If ``H`` is not Hermitian to within ``1e-12`` entrywise.
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    if np.max(np.abs(H - H.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian")
    if H.shape == (2, 2):
        a, d = H[0, 0].real, H[1, 1].real
        b = H[0, 1]
        return float(0.5 * (a + d) - np.hypot(0.5 * (a - d), abs(b)))
    return float(np.linalg.eigvalsh(H)[0])


def _check_symmetric(V: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    V = np.asarray(V, dtype=float)
    mode_count(V)
    if np.max(np.abs(V - V.T)) > tol:
        raise ValueError("covariance matrix is not symmetric")
    return V


def is_valid_covariance(V: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Check the uncertainty relation ``V + (i/2) Delta >= -tol``."""
    V = _check_symmetric(V)
    delta = build_symplectic_form(mode_count(V))
    return hermitian_min_eigenvalue(V + 0.5j * delta) >= -tol


def symplectic_eigenvalues(V: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of ``V`` in ascending order.

    These are the moduli of the eigenvalues of ``i Delta V``. For a
    positive-definite ``V`` that matrix is similar to the Hermitian matrix
    ``V^{1/2} (i Delta) V^{1/2}``, whose spectrum is computed instead; it stays
    accurate when two symplectic eigenvalues coincide.
    """
    V = _check_symmetric(V)
    f = mode_count(V)
    delta = build_symplectic_form(f)
    w, U = np.linalg.eigh(V)
    if w[0] > 0:
        root = (U * np.sqrt(w)) @ U.T
        spectrum = np.linalg.eigvalsh(1j * (root @ delta @ root))
        return np.sort(np.abs(spectrum[f:]))
    # not positive definite: fall back to the raw non-Hermitian spectrum
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * delta @ V)))
    return moduli[::2]


def partial_transpose_two_mode(V: np.ndarray) -> np.ndarray:
    """Partial transpose of a two-mode covariance (flip the sign of P2)."""
    V = np.asarray(V, dtype=float)
    if mode_count(V) != 2:
        raise ValueError("partial transpose is defined here for two modes only")
    flip = np.array([1.0, 1.0, 1.0, -1.0])
    return V * np.outer(flip, flip)


@dataclass(frozen=True, eq=False)
class GaussianState:
    """First and second moments of a Gaussian state."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).reshape(-1)
        cov = _check_symmetric(self.cov)
        if mean.shape[0] != cov.shape[0]:
            raise ValueError("mean and covariance dimensions differ")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise ValueError("state moments must be finite")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def f(self) -> int:
        return self.cov.shape[0] // 2

    @classmethod
    def vacuum(cls, f: int = 1) -> "GaussianState":
        return cls(np.zeros(2 * f), 0.5 * np.eye(2 * f))

    def is_valid(self, tol: float = DEFAULT_TOL) -> bool:
        return is_valid_covariance(self.cov, tol)
