"""Deterministic parameter sweeps over the channel families.

Each scenario returns a list of rows (ordered dicts) with a fixed column set,
in ascending order of the swept parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any, Optional

import numpy as np

from . import eb
from .channels import (
    GaussianChannel,
    compose,
    is_cpt,
    make_attenuation,
    make_phase_noise,
    make_squeezer,
    rotate_mode,
)
from .entanglement import (
    is_entangled,
    log_negativity,
    nu_squared,
    product_witness,
)
from .symplectic import DEFAULT_TOL

SCENARIOS = ("eb-region", "eta-tilde", "setup1", "setup2", "prp", "check-channel", "thresholds")

COLUMNS = {
    "eb-region": ["eta", "n", "N0_boundary"],
    "eta-tilde": ["eta", "r_tilde", "r_bisect"],
    "setup1": ["eta", "r", "rprime", "q2", "p2", "W", "nu2", "E_N", "is_entangled"],
    "setup2": ["eta", "r", "rprime", "q2", "p2", "W", "nu2", "E_N", "is_entangled"],
    "prp": ["theta", "nu2", "W_corrected", "W_raw", "is_eb"],
    "thresholds": ["name", "value"],
    "check-channel": ["name", "value"],
}

# per-scenario defaults
DEFAULTS: dict[str, dict[str, Any]] = {
    "eb-region": dict(eta_min=0.05, eta_max=1.0, steps=20, order=3),
    "eta-tilde": dict(eta_min=0.05, eta_max=0.95, steps=19),
    "setup1": dict(eta_min=0.0, eta_max=1.0, steps=101, r=1.0, rprime=0.8),
    "setup2": dict(eta_min=0.0, eta_max=1.0, steps=101, r=0.0, rprime=0.8),
    "prp": dict(eta=0.9, np=1.0, rprime=2.0, theta_steps=201),
    "thresholds": dict(eta=0.9, r=1.0, rprime=0.8, np=1.0),
    "check-channel": dict(eta=1.0, n0=0.0, r=0.0, np=0.0, order=10),
}


class DomainError(ValueError):
    """A parameter lies outside the domain of the requested computation."""


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    eta: Optional[float] = None
    eta_min: Optional[float] = None
    eta_max: Optional[float] = None
    steps: Optional[int] = None
    r: Optional[float] = None
    rprime: Optional[float] = None
    np: Optional[float] = None
    n0: Optional[float] = None
    theta_steps: Optional[int] = None
    order: Optional[int] = None
    tol: float = DEFAULT_TOL
    probe_rprime: float = eb.DEFAULT_PROBE_RPRIME
    correlation_sign: int = -1
    out: Optional[str] = None
    format: str = "csv"

    def resolved(self) -> "ScenarioConfig":
        """Fill unset parameters from the scenario defaults and validate."""
        if self.scenario not in SCENARIOS:
            raise DomainError(f"unknown scenario {self.scenario!r}")
        filled = {k: v for k, v in DEFAULTS[self.scenario].items() if getattr(self, k) is None}
        cfg = replace(self, **filled)
        cfg.validate()
        return cfg

    def validate(self):
        def check(ok, msg):
            if not ok:
                raise DomainError(msg)

        for name in ("eta", "eta_min", "eta_max"):
            v = getattr(self, name)
            if v is not None:
                check(math.isfinite(v) and 0.0 <= v <= 1.0, f"{name}={v} outside [0, 1]")
        if self.eta_min is not None and self.eta_max is not None:
            check(self.eta_min <= self.eta_max, "eta-min exceeds eta-max")
        if self.steps is not None and self.eta is None:
            check(self.steps >= 2, "steps must be >= 2")
        if self.theta_steps is not None:
            check(self.theta_steps >= 2, "theta-steps must be >= 2")
        if self.r is not None:
            check(math.isfinite(self.r), "r must be finite")
        if self.rprime is not None:
            check(math.isfinite(self.rprime) and self.rprime >= 0, "rprime must be >= 0")
        for name in ("np", "n0"):
            v = getattr(self, name)
            if v is not None:
                check(math.isfinite(v) and v >= 0, f"{name} must be >= 0")
        if self.order is not None:
            check(self.order >= 1, "order must be >= 1")
        check(math.isfinite(self.tol) and self.tol >= 0, "tol must be >= 0")
        check(math.isfinite(self.probe_rprime) and self.probe_rprime > 0, "probe-rprime must be > 0")
        check(self.correlation_sign in (1, -1), "correlation-sign must be +1 or -1")
        check(self.format in ("csv", "json"), f"unknown format {self.format!r}")
        if self.scenario == "setup2" and self.r not in (None, 0.0):
            raise DomainError("setup2 has no squeezer; r must be 0")


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    return np.linspace(lo, hi, steps)


def _eta_points(cfg: ScenarioConfig) -> np.ndarray:
    if cfg.eta is not None:
        return np.array([cfg.eta])
    return _grid(cfg.eta_min, cfg.eta_max, cfg.steps)


def _probe_cov(phi: GaussianChannel, rprime: float, correlation_sign: int) -> np.ndarray:
    V = eb.probe_output(phi, rprime)
    if correlation_sign < 0:
        # a pi phase shift on the reference mode flips the correlation block
        V = V.copy()
        V[:2, 2:] *= -1
        V[2:, :2] *= -1
    return V


def _setup_rows(cfg: ScenarioConfig) -> list[dict]:
    rows = []
    for eta in _eta_points(cfg):
        eta = float(eta)
        phi = eb.squeezer_sandwich(eta, cfg.r)
        V = _probe_cov(phi, cfg.rprime, cfg.correlation_sign)
        w = product_witness(V, 1)
        rows.append(
            dict(
                eta=eta,
                r=cfg.r,
                rprime=cfg.rprime,
                q2=w.q2,
                p2=w.p2,
                W=w.W,
                nu2=nu_squared(V),
                E_N=log_negativity(V),
                is_entangled=is_entangled(V, cfg.tol),
            )
        )
    return rows


def _eb_region_rows(cfg: ScenarioConfig) -> list[dict]:
    rows = []
    for eta in _eta_points(cfg):
        if eta <= 0.0:
            continue
        for n in range(1, cfg.order + 1):
            rows.append(dict(eta=float(eta), n=n, N0_boundary=eb.attenuation_boundary(float(eta), n)))
    return rows


def _r_threshold_by_bisection(eta: float, tol: float) -> float:
    def is_eb_at(r):
        return eb.is_eb_choi(eb.squeezer_sandwich(eta, r), tol=tol).is_eb

    hi = 1.0
    while not is_eb_at(hi):
        hi *= 2.0
        if hi > 64:
            raise DomainError(f"no EB squeezing found below r=64 at eta={eta}")
    return eb.bisect_threshold(is_eb_at, 0.0, hi, 1e-10)


def _eta_tilde_rows(cfg: ScenarioConfig) -> list[dict]:
    rows = []
    for eta in _eta_points(cfg):
        eta = float(eta)
        if not 0.0 < eta < 1.0:
            continue
        rows.append(dict(eta=eta, r_tilde=eb.r_tilde(eta), r_bisect=_r_threshold_by_bisection(eta, cfg.tol)))
    return rows


def _prp_rows(cfg: ScenarioConfig) -> list[dict]:
    rows = []
    for theta in _grid(0.0, math.pi, cfg.theta_steps):
        theta = float(theta)
        phi = eb.prp_channel(theta, cfg.eta, cfg.np)
        V = _probe_cov(phi, cfg.rprime, cfg.correlation_sign)
        corrected = rotate_mode(V, 1, -theta)
        rows.append(
            dict(
                theta=theta,
                nu2=nu_squared(V),
                W_corrected=product_witness(corrected, 1).W,
                W_raw=product_witness(V, 1).W,
                is_eb=eb.is_eb_choi(phi, cfg.probe_rprime, cfg.tol).is_eb,
            )
        )
    return rows


def _named(pairs) -> list[dict]:
    return [dict(name=k, value=v) for k, v in pairs]


def _threshold_rows(cfg: ScenarioConfig) -> list[dict]:
    pairs = []
    eta_t = None
    if cfg.r != 0:
        eta_t = eb.eta_tilde(cfg.r)
        pairs.append(("eta_tilde", eta_t))
    if 0.0 < cfg.eta < 1.0:
        pairs.append(("r_tilde", eb.r_tilde(cfg.eta)))
    eta_b = eb.eta_bar(cfg.rprime)
    pairs.append(("eta_bar", eta_b))
    if eta_t is not None:
        pairs += [
            ("reliability_low", eta_b),
            ("reliability_high", eta_t),
            ("reliability_nonempty", eta_b <= eta_t),
        ]
    if cfg.np > 0 and cfg.eta > 0:
        pairs.append(("c", eb.amendability_c(cfg.eta, cfg.np)))
        window = eb.theta_window(cfg.eta, cfg.np)
        pairs.append(("theta_window_exists", window is not None))
        if window is not None:
            pairs += [("theta_min", window.theta_min), ("theta_max", window.theta_max)]
    return _named(pairs)


def inspected_channel(cfg: ScenarioConfig) -> GaussianChannel:
    """``S(r) o N(NP) o At(N0, eta)`` for the check-channel command."""
    phi = make_attenuation(cfg.n0, cfg.eta)
    phi = compose(make_phase_noise(cfg.np), phi)
    return compose(make_squeezer(cfg.r), phi)


def _check_channel_rows(cfg: ScenarioConfig) -> list[dict]:
    phi = inspected_channel(cfg)
    pairs = [(f"K{i + 1}{j + 1}", float(phi.K[i, j])) for i in range(2) for j in range(2)]
    pairs += [(f"beta{i + 1}{j + 1}", float(phi.beta[i, j])) for i in range(2) for j in range(2)]
    cpt = is_cpt(phi, cfg.tol)
    pairs.append(("is_cpt", cpt))
    if not cpt:
        return _named(pairs)
    verdict = eb.is_eb_choi(phi, cfg.probe_rprime, cfg.tol)
    pairs += [("probe_rprime", cfg.probe_rprime), ("nu2", verdict.nu2), ("is_eb", verdict.is_eb)]
    if phi.K[0, 1] == phi.K[1, 0] == phi.beta[0, 1] == 0:
        pairs.append(("is_eb_diagonal", eb.is_eb_diagonal(phi, cfg.tol).is_eb))
    order = eb.eb_order(phi, cfg.order, cfg.tol, cfg.probe_rprime)
    # 0 encodes "no EB order up to n_max"
    pairs += [("n_max", cfg.order), ("eb_order", order or 0)]
    return _named(pairs)


_RUNNERS = {
    "eb-region": _eb_region_rows,
    "eta-tilde": _eta_tilde_rows,
    "setup1": _setup_rows,
    "setup2": _setup_rows,
    "prp": _prp_rows,
    "thresholds": _threshold_rows,
    "check-channel": _check_channel_rows,
}


def run_scenario(config: ScenarioConfig) -> list[dict]:
    cfg = config.resolved()
    try:
        rows = _RUNNERS[cfg.scenario](cfg)
    except DomainError:
        raise
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    for row in rows:
        for key, value in row.items():
            if isinstance(value, float) and not math.isfinite(value):
                raise DomainError(f"non-finite {key} in {cfg.scenario} output")
    return rows

