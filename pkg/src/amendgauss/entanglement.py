"""Two-mode probe states and PPT-based entanglement tests."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .symplectic import DEFAULT_TOL, mode_count

SIGMA_Z = np.diag([1.0, -1.0])
SEPARABLE_BOUND = 0.25


def tmsv_covariance(rprime: float) -> np.ndarray:
    """Covariance of a two-mode squeezed vacuum.

    Diagonal blocks are ``cosh(r')/2`` and the correlation block is
    ``sinh(r')/2 * sigma_z``; note the argument is ``r'``, not ``2 r'``.
    """
    if not rprime >= 0.0 or not math.isfinite(rprime):
        raise ValueError(f"two-mode squeezing must be finite and >= 0, got {rprime}")
    c, s = 0.5 * math.cosh(rprime), 0.5 * math.sinh(rprime)
    return np.block([[c * np.eye(2), s * SIGMA_Z], [s * SIGMA_Z, c * np.eye(2)]])


@dataclass(frozen=True, eq=False)
class TwoModeBlocks:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def assemble(self) -> np.ndarray:
        return np.block([[self.A, self.C], [self.C.T, self.B]])


def _require_two_mode(V) -> np.ndarray:
    V = np.asarray(V, dtype=float)
    if mode_count(V) != 2:
        raise ValueError(f"expected a 4x4 two-mode covariance, got shape {V.shape}")
    return V


def block_decompose(V: np.ndarray) -> TwoModeBlocks:
    V = _require_two_mode(V)
    return TwoModeBlocks(V[:2, :2].copy(), V[2:, 2:].copy(), V[:2, 2:].copy())


def _det2(m) -> Fraction:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _det4(m) -> Fraction:
    # Laplace expansion along the first two rows
    total = Fraction(0)
    cols = range(4)
    for pair in combinations(cols, 2):
        rest = [c for c in cols if c not in pair]
        sign = -1 if (sum(pair) + 1) % 2 else 1
        top = _det2([[m[0][pair[0]], m[0][pair[1]]], [m[1][pair[0]], m[1][pair[1]]]])
        bottom = _det2([[m[2][rest[0]], m[2][rest[1]]], [m[3][rest[0]], m[3][rest[1]]]])
        total += sign * top * bottom
    return total


def _sqrt(x: Fraction, bits: int = 96) -> Fraction:
    p, q = x.numerator, x.denominator
    return Fraction(math.isqrt(p * q << (2 * bits)), q << bits)


def ppt_invariants(V: np.ndarray) -> tuple[Fraction, Fraction]:
    """Exact ``(Sigma, det V)`` for the partially transposed state.

    ``Sigma = det A + det B - 2 det C`` on the original blocks. Evaluated in
    rational arithmetic on the (exactly representable) float entries.
    """
    V = _require_two_mode(V)
    m = [[Fraction(float(x)) for x in row] for row in V]
    A = [row[:2] for row in m[:2]]
    B = [row[2:] for row in m[2:]]
    C = [row[2:] for row in m[:2]]
    return _det2(A) + _det2(B) - 2 * _det2(C), _det4(m)


def nu_squared(V: np.ndarray) -> float:
    """Squared minimal symplectic eigenvalue of the partial transpose of ``V``.

    Closed form ``nu^2 = (Sigma - sqrt(Sigma^2 - 4 det V)) / 2``, evaluated as
    ``2 det V / (Sigma + sqrt(Sigma^2 - 4 det V))`` on exact invariants so no
    cancellation occurs near degenerate spectra.
    """
    sigma, det_v = ppt_invariants(V)
    disc = sigma * sigma - 4 * det_v
    if disc < 0:
        scale = max(abs(float(sigma)) ** 2, 1.0)
        if float(disc) < -1e-12 * scale:
            raise ValueError("negative discriminant: input is not a valid covariance")
        disc = Fraction(0)
    denom = sigma + _sqrt(disc)
    if denom <= 0:
        raise ValueError("degenerate covariance: Sigma <= 0")
    return float(2 * det_v / denom)


def log_negativity(V: np.ndarray) -> float:
    nu2 = nu_squared(V)
    if nu2 <= 0:
        raise ValueError("non-positive nu^2: input is not a valid covariance")
    value = -math.log(4.0 * nu2) / 2.0
    return value if value > 0.0 else 0.0


def is_entangled(V: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return nu_squared(V) < SEPARABLE_BOUND - tol


@dataclass(frozen=True)
class WitnessResult:
    q2: float
    p2: float
    W: float
    sign: int

    @property
    def detects(self) -> bool:
        return self.W < SEPARABLE_BOUND


def product_witness(V: np.ndarray, sign: int = 1) -> WitnessResult:
    """Product criterion ``W = <Q^2><P^2>`` for a zero-mean two-mode state.

    With ``sign=+1`` the quadratures are ``Q = (Q1 + Q2)/sqrt2`` and
    ``P = (P1 - P2)/sqrt2``; ``sign=-1`` swaps the relative signs.
    """
    V = _require_two_mode(V)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    q2 = 0.5 * (V[0, 0] + V[2, 2] + 2 * sign * V[0, 2])
    p2 = 0.5 * (V[1, 1] + V[3, 3] - 2 * sign * V[1, 3])
    return WitnessResult(float(q2), float(p2), float(q2 * p2), sign)


def optimal_product_witness(V: np.ndarray) -> WitnessResult:
    plus, minus = product_witness(V, 1), product_witness(V, -1)
    return minus if minus.W < plus.W else plus
