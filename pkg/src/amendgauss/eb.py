"""Entanglement-breaking certification, EB order and amendability.

A single-mode channel is EB iff its one-sided action on a two-mode squeezed
vacuum of any finite squeezing gives a separable state, i.e. ``nu^2 >= 1/4``.
Points with ``nu^2`` within ``tol`` of ``1/4`` count as EB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .channels import (
    PI_P,
    GaussianChannel,
    apply,
    compose,
    is_cpt,
    make_asym_attenuation,
    make_attenuation,
    make_phase_shift,
    make_squeezer,
    one_sided,
    rotation_matrix,
)
from .entanglement import SEPARABLE_BOUND, nu_squared, tmsv_covariance
from .symplectic import DEFAULT_TOL, GaussianState

DEFAULT_PROBE_RPRIME = 2.0


@dataclass(frozen=True)
class EBVerdict:
    is_eb: bool
    nu2: Optional[float]
    probe_rprime: Optional[float]
    method: str  # "choi-ppt" or "diagonal-analytic"


@dataclass(frozen=True)
class ThetaWindow:
    theta_min: float
    theta_max: float
    c: float

    def contains(self, theta: float) -> bool:
        return self.theta_min <= theta <= self.theta_max


@dataclass(frozen=True)
class AmendabilityReport:
    phi_u_phi_eb: bool
    phi2_eb: bool

    @property
    def amendable(self) -> bool:
        return self.phi_u_phi_eb and not self.phi2_eb


def _require_single_mode(phi: GaussianChannel):
    if phi.f != 1:
        raise ValueError("expected a single-mode channel")


def probe_output(phi: GaussianChannel, probe_rprime: float) -> np.ndarray:
    """Covariance of ``(phi (x) id)`` applied to a TMSV probe."""
    _require_single_mode(phi)
    probe = GaussianState(np.zeros(4), tmsv_covariance(probe_rprime))
    return apply(one_sided(phi), probe).cov


def is_eb_choi(
    phi: GaussianChannel,
    probe_rprime: float = DEFAULT_PROBE_RPRIME,
    tol: float = DEFAULT_TOL,
) -> EBVerdict:
    """EB test via the PPT criterion on a finite-energy TMSV probe."""
    if not probe_rprime > 0:
        raise ValueError(f"probe squeezing must be positive, got {probe_rprime}")
    _require_single_mode(phi)
    if not is_cpt(phi, tol):
        raise ValueError("channel is not completely positive")
    nu2 = nu_squared(probe_output(phi, probe_rprime))
    return EBVerdict(nu2 >= SEPARABLE_BOUND - tol, nu2, probe_rprime, "choi-ppt")


def is_eb_diagonal(phi: GaussianChannel, tol: float = DEFAULT_TOL) -> EBVerdict:
    """EB test for a channel with diagonal ``K`` and ``beta``.

    Splitting ``beta`` into diagonal parts ``alpha + nu`` gives the criterion
    ``sqrt(beta_11 beta_22) >= (1 + |det K|) / 2``.
    """
    _require_single_mode(phi)
    off = (phi.K[0, 1], phi.K[1, 0], phi.beta[0, 1])
    if any(x != 0 for x in off):
        raise ValueError("diagonal test needs diagonal K and beta")
    if not is_cpt(phi, tol):
        raise ValueError("channel is not completely positive")
    b1, b2 = phi.beta[0, 0], phi.beta[1, 1]
    det_k = abs(phi.K[0, 0] * phi.K[1, 1])
    return EBVerdict(bool(math.sqrt(b1 * b2) >= (1.0 + det_k) / 2.0 - tol), None, None, "diagonal-analytic")


def channel_power(phi: GaussianChannel, n: int) -> GaussianChannel:
    if n < 1:
        raise ValueError("power must be >= 1")
    out = phi
    for _ in range(n - 1):
        out = compose(phi, out)
    return out


def eb_order(
    phi: GaussianChannel,
    n_max: int,
    tol: float = DEFAULT_TOL,
    probe_rprime: float = DEFAULT_PROBE_RPRIME,
) -> Optional[int]:
    """Smallest ``n <= n_max`` with ``phi^n`` EB, or ``None``.

    EB channels stay EB under further composition, so the first hit is the order.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    power = phi
    for n in range(1, n_max + 1):
        if n > 1:
            power = compose(phi, power)
        if is_eb_choi(power, probe_rprime, tol).is_eb:
            return n
    return None


def attenuation_boundary(eta: float, n: int) -> float:
    """Minimal ``N0`` for which the attenuation channel is EB after ``n`` uses."""
    if n < 1:
        raise ValueError("order must be >= 1")
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmissivity must lie in [0, 1], got {eta}")
    if eta == 0.0:
        return 0.0
    return eta**n / sum(eta**j for j in range(n))


def attenuation_bath_photons(N0: float, eta: float) -> float:
    """Mean bath photon number ``N0 / (1 - eta)`` of the equivalent thermal bath."""
    if not 0.0 <= eta < 1.0:
        raise ValueError("bath photon number is defined for eta in [0, 1)")
    return N0 / (1.0 - eta)


def eta_tilde(r: float) -> float:
    """Largest transmissivity for which ``At(eta) o S(r) o At(eta)`` is EB."""
    if r == 0:
        raise ValueError("eta_tilde is singular at r = 0")
    r = abs(r)
    ch = math.cosh(2 * r)
    return 0.5 * (ch - math.sqrt(2 * ch - 1)) / math.sinh(r) ** 2


def r_tilde(eta: float) -> float:
    """Smallest squeezing for which ``At(eta) o S(r) o At(eta)`` is EB."""
    if not 0.0 < eta < 1.0:
        raise ValueError(f"r_tilde needs 0 < eta < 1, got {eta}")
    return 0.5 * math.acosh((eta**2 + 1) / (eta - 1) ** 2)


def eta_bar(rprime: float) -> float:
    """Transmissivity above which the product witness sees the setup-2 entanglement."""
    if not rprime >= 0:
        raise ValueError(f"probe squeezing must be >= 0, got {rprime}")
    return math.tanh(rprime / 4.0)


def squeezer_sandwich(eta: float, r: float) -> GaussianChannel:
    """``At(0, eta) o S(r) o At(0, eta)`` built by composition."""
    at = make_attenuation(0.0, eta)
    return compose(at, compose(make_squeezer(r), at))


def squeezer_sandwich_closed_form(eta: float, r: float) -> GaussianChannel:
    ks = np.diag([math.exp(r), math.exp(-r)])
    return GaussianChannel(eta * ks, np.zeros(2), 0.5 * (1 - eta) * (eta * ks @ ks + np.eye(2)))


def prp_channel(theta: float, eta: float, NP: float) -> GaussianChannel:
    """Closed-form triplet of ``P o R(theta) o P`` with ``P`` the asymmetric attenuator."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmissivity must lie in [0, 1], got {eta}")
    if not NP >= 0:
        raise ValueError(f"phase-noise variance must be non-negative, got {NP}")
    rot = rotation_matrix(theta)
    beta = NP * (eta * rot @ PI_P @ rot.T + PI_P) + 0.5 * (1 - eta**2) * np.eye(2)
    return GaussianChannel(eta * rot.T, np.zeros(2), beta)


def prp_composed(theta: float, eta: float, NP: float) -> GaussianChannel:
    p = make_asym_attenuation(eta, NP)
    return compose(p, compose(make_phase_shift(theta), p))


def amendability_c(eta: float, NP: float) -> float:
    if not NP > 0:
        raise ValueError("window parameter needs NP > 0")
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"window parameter needs 0 < eta <= 1, got {eta}")
    return (2 * eta * NP**2 - 2 * eta**2 - (eta - 1) * (eta + 1) ** 2 * NP) / (2 * eta * NP**2)


def theta_window(eta: float, NP: float) -> Optional[ThetaWindow]:
    """Range of phase shifts in ``[0, pi]`` for which the PRP channel is EB."""
    c = amendability_c(eta, NP)
    if not 0.0 <= c <= 1.0:
        return None
    root = math.sqrt(c)
    return ThetaWindow(math.acos(root), math.acos(-root), c)


def amendable_check(
    phi: GaussianChannel,
    u: GaussianChannel,
    tol: float = DEFAULT_TOL,
    probe_rprime: float = DEFAULT_PROBE_RPRIME,
) -> AmendabilityReport:
    """Is ``phi o u o phi`` EB while ``phi o phi`` is not?"""
    _require_single_mode(phi)
    _require_single_mode(u)
    filtered = compose(phi, compose(u, phi))
    twice = compose(phi, phi)
    return AmendabilityReport(
        is_eb_choi(filtered, probe_rprime, tol).is_eb,
        is_eb_choi(twice, probe_rprime, tol).is_eb,
    )


def bisect_threshold(
    predicate: Callable[[float], bool],
    lo: float,
    hi: float,
    tol: float = 1e-9,
) -> float:
    """Locate the switch point of a monotone boolean predicate on ``[lo, hi]``."""
    p_lo, p_hi = predicate(lo), predicate(hi)
    if p_lo == p_hi:
        raise ValueError("predicate takes the same value at both ends")
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if predicate(mid) == p_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
