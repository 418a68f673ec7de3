"""Gaussian channels as ``(K, l, beta)`` triplets.

A channel acts on moments as ``V -> K^T V K + beta`` and
``mean -> K^T mean + l``. Composition ``compose(phi2, phi1)`` applies
``phi1`` first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symplectic import (
    DEFAULT_TOL,
    GaussianState,
    build_symplectic_form,
    hermitian_min_eigenvalue,
    mode_count,
)

SYMPLECTIC_TOL = 1e-12

# P-quadrature projector
PI_P = np.diag([0.0, 1.0])


@dataclass(frozen=True, eq=False)
class GaussianChannel:
    K: np.ndarray
    l: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        K = np.array(self.K, dtype=float)
        beta = np.array(self.beta, dtype=float)
        f = mode_count(K)
        l = np.zeros(2 * f) if self.l is None else np.array(self.l, dtype=float).reshape(-1)
        if beta.shape != K.shape or l.shape != (2 * f,):
            raise ValueError("K, l and beta dimensions disagree")
        if not all(np.all(np.isfinite(x)) for x in (K, l, beta)):
            raise ValueError("channel parameters must be finite")
        if np.max(np.abs(beta - beta.T)) > 1e-12:
            raise ValueError("beta must be symmetric")
        beta = 0.5 * (beta + beta.T)
        for arr in (K, l, beta):
            arr.setflags(write=False)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "beta", beta)

    @property
    def f(self) -> int:
        return self.K.shape[0] // 2

    @classmethod
    def identity(cls, f: int = 1) -> "GaussianChannel":
        n = 2 * f
        return cls(np.eye(n), np.zeros(n), np.zeros((n, n)))

    def allclose(self, other: "GaussianChannel", atol: float = 1e-12) -> bool:
        return (
            self.f == other.f
            and np.allclose(self.K, other.K, rtol=0, atol=atol)
            and np.allclose(self.l, other.l, rtol=0, atol=atol)
            and np.allclose(self.beta, other.beta, rtol=0, atol=atol)
        )

    def __repr__(self):
        return f"{type(self).__name__}(K={self.K.tolist()}, l={self.l.tolist()}, beta={self.beta.tolist()})"


def symplectic_defect(K: np.ndarray) -> float:
    delta = build_symplectic_form(mode_count(K))
    return float(np.max(np.abs(K @ delta @ K.T - delta)))


def is_symplectic(K: np.ndarray, tol: float = SYMPLECTIC_TOL) -> bool:
    # rounding in K Delta K^T grows with |K|^2
    scale = max(1.0, float(np.max(np.abs(K))) ** 2)
    return symplectic_defect(K) <= tol * scale


class UnitaryGaussian(GaussianChannel):
    """Channel with ``beta = 0`` and symplectic ``K``."""

    def __post_init__(self):
        super().__post_init__()
        if np.any(self.beta != 0):
            raise ValueError("a unitary Gaussian channel has beta = 0")
        if not is_symplectic(self.K):
            raise ValueError("K is not symplectic")


def _single_mode(K, beta=None, l=None, cls=GaussianChannel):
    K = np.asarray(K, dtype=float)
    beta = np.zeros_like(K) if beta is None else beta
    return cls(K, l, beta)


def make_attenuation(N0: float, eta: float) -> GaussianChannel:
    """Beam splitter of transmissivity ``eta`` plus ``N0`` added noise quanta."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmissivity must lie in [0, 1], got {eta}")
    if not N0 >= 0.0:
        raise ValueError(f"added noise must be non-negative, got {N0}")
    return _single_mode(math.sqrt(eta) * np.eye(2), (N0 + (1.0 - eta) / 2.0) * np.eye(2))


def make_squeezer(r: float) -> UnitaryGaussian:
    if not math.isfinite(r):
        raise ValueError("squeezing parameter must be finite")
    return _single_mode(np.diag([math.exp(r), math.exp(-r)]), cls=UnitaryGaussian)


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def make_phase_shift(theta: float) -> UnitaryGaussian:
    """Phase-space rotation by ``theta``; ``K`` is the transposed rotation matrix."""
    if not math.isfinite(theta):
        raise ValueError("phase must be finite")
    return _single_mode(rotation_matrix(theta).T, cls=UnitaryGaussian)


def make_phase_noise(NP: float) -> GaussianChannel:
    """Random P-quadrature displacement with variance ``NP``.

    ``K`` is the identity so that the channel is a pure additive-noise map.
    """
    if not NP >= 0.0:
        raise ValueError(f"phase-noise variance must be non-negative, got {NP}")
    return _single_mode(np.eye(2), NP * PI_P)


def make_asym_attenuation(eta: float, NP: float) -> GaussianChannel:
    """Beam splitter whose added noise sits only on the P quadrature."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmissivity must lie in [0, 1], got {eta}")
    if not NP >= 0.0:
        raise ValueError(f"phase-noise variance must be non-negative, got {NP}")
    return _single_mode(math.sqrt(eta) * np.eye(2), NP * PI_P + (1.0 - eta) / 2.0 * np.eye(2))


def compose(phi2: GaussianChannel, phi1: GaussianChannel) -> GaussianChannel:
    """Return ``phi2 o phi1`` (``phi1`` acts first)."""
    if phi1.f != phi2.f:
        raise ValueError(f"cannot compose channels on {phi1.f} and {phi2.f} modes")
    K = phi1.K @ phi2.K
    l = phi2.K.T @ phi1.l + phi2.l
    beta = phi2.K.T @ phi1.beta @ phi2.K + phi2.beta
    if isinstance(phi1, UnitaryGaussian) and isinstance(phi2, UnitaryGaussian):
        return UnitaryGaussian(K, l, beta)
    return GaussianChannel(K, l, beta)


def apply(phi: GaussianChannel, state: GaussianState) -> GaussianState:
    if phi.f != state.f:
        raise ValueError(f"channel acts on {phi.f} modes, state has {state.f}")
    cov = phi.K.T @ state.cov @ phi.K + phi.beta
    return GaussianState(phi.K.T @ state.mean + phi.l, 0.5 * (cov + cov.T))


def is_cpt(phi: GaussianChannel, tol: float = DEFAULT_TOL) -> bool:
    """Complete-positivity condition ``beta >= +-(i/2)(Delta - K^T Delta K)``."""
    delta = build_symplectic_form(phi.f)
    defect = 0.5j * (delta - phi.K.T @ delta @ phi.K)
    return all(hermitian_min_eigenvalue(phi.beta - s * defect) >= -tol for s in (1, -1))


def one_sided(phi: GaussianChannel) -> GaussianChannel:
    """Embed a single-mode channel as ``phi (x) id`` acting on mode 1 of two."""
    if phi.f != 1:
        raise ValueError("one_sided expects a single-mode channel")
    K = np.eye(4)
    K[:2, :2] = phi.K
    beta = np.zeros((4, 4))
    beta[:2, :2] = phi.beta
    return GaussianChannel(K, np.concatenate([phi.l, np.zeros(2)]), beta)


def adjoint_unitary(u: GaussianChannel) -> UnitaryGaussian:
    if np.any(u.beta != 0) or not is_symplectic(u.K):
        raise ValueError("adjoint is defined only for unitary Gaussian channels")
    K_inv = np.linalg.inv(u.K)
    return UnitaryGaussian(K_inv, -K_inv.T @ u.l, np.zeros_like(u.K))


def local_operation(V: np.ndarray, S: np.ndarray, mode: int) -> np.ndarray:
    """Congruence ``V -> T^T V T`` with ``T`` equal to ``S`` on ``mode`` (1-based)."""
    V = np.asarray(V, dtype=float)
    f = mode_count(V)
    if mode not in range(1, f + 1):
        raise ValueError(f"mode must be in 1..{f}, got {mode}")
    T = np.eye(2 * f)
    i = 2 * (mode - 1)
    T[i : i + 2, i : i + 2] = S
    out = T.T @ V @ T
    return 0.5 * (out + out.T)


def rotate_mode(V: np.ndarray, mode: int, theta: float) -> np.ndarray:
    """Apply the phase shift ``make_phase_shift(theta)`` to one mode of a two-mode covariance."""
    if mode_count(V) != 2:
        raise ValueError("rotate_mode expects a two-mode covariance")
    return local_operation(V, make_phase_shift(theta).K, mode)
