"""Closed-form pheromone trail dynamics for a single shared arc.

Models an arc reinforced every step by m ants with per-ant deposit
constants C_1..C_m while evaporation removes a fraction rho. Writing
S = sum_k C_k, the discrete update

    tau(t) = (1 - rho) tau(t-1) + deposits(t)

is approximated by the linear ODE dtau/dt + rho tau = deposits(t+1),
whose solutions are implemented here. For the constant rule
(deposits(t) = S):

    tau(t) = (tau0 - S/rho) exp(-rho t) + S/rho.

For the exponentially saturating rule (deposits(t) = S (1 - exp(-t/T))):

    tau(t) = (tau0 - S/rho + S exp(-1/T)/(rho - 1/T)) exp(-rho t)
             + S/rho - S exp(-(t+1)/T)/(rho - 1/T),

singular at rho = 1/T where the particular integral's denominator
vanishes. Both rules settle to the same steady state S/rho, so the
saturating deposit changes transient shape only. The discrete recursion
is kept as a separate operation for cross-validation; agreement with the
closed forms is approximate (small rho), never exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

CONSTANT = "constant"
EXPONENTIAL = "exponential"

STABLE = "STABLE"
UNSTABLE = "UNSTABLE"
SINGULAR = "SINGULAR"

_SINGULAR_TOL = 1e-12


class SingularParametersError(ValueError):
    """Raised when rho is within 1e-12 of 1/T and the closed form degenerates."""


@dataclass(frozen=True)
class DynamicsParams:
    """Arc model: initial trail, evaporation rate, deposit constants.

    ``deposits`` holds the per-ant constants C_k summed into each step's
    reinforcement. ``time_constant`` (T) is required by the exponential
    rule and ignored by the constant rule.
    """

    tau0: float
    rho: float
    deposits: tuple[float, ...]
    time_constant: float | None = None

    def __post_init__(self):
        if self.rho <= 0:
            raise ValueError(f"rho must be positive, got {self.rho}")
        if self.tau0 < 0:
            raise ValueError(f"tau0 must be >= 0, got {self.tau0}")
        if not self.deposits:
            raise ValueError("deposits must be nonempty")
        for c in self.deposits:
            if c < 0:
                raise ValueError(f"deposit constants must be >= 0, got {c}")
        if self.time_constant is not None and self.time_constant <= 0:
            raise ValueError(
                f"time_constant must be positive, got {self.time_constant}"
            )

    @property
    def deposit_sum(self) -> float:
        """S = sum of the per-ant deposit constants."""
        return sum(self.deposits)


def steady_state(params: DynamicsParams) -> float:
    """Limit value S/rho, shared by both deposition rules."""
    return params.deposit_sum / params.rho


def closed_form_constant(
    params: DynamicsParams, t: np.ndarray | float
) -> np.ndarray | float:
    """Continuous-time trail level under the constant rule."""
    t = np.asarray(t, dtype=float)
    ss = steady_state(params)
    out = (params.tau0 - ss) * np.exp(-params.rho * t) + ss
    return out if out.ndim else float(out)


def _require_time_constant(params: DynamicsParams) -> float:
    T = params.time_constant
    if T is None:
        raise ValueError("exponential rule needs params with a time constant")
    if abs(params.rho - 1.0 / T) <= _SINGULAR_TOL:
        raise SingularParametersError(
            f"rho={params.rho} coincides with 1/T={1.0 / T} within {_SINGULAR_TOL}"
        )
    return T


def closed_form_exponential(
    params: DynamicsParams, t: np.ndarray | float
) -> np.ndarray | float:
    """Continuous-time trail level under the exponentially saturating rule.

    Raises SingularParametersError when |rho - 1/T| <= 1e-12.
    """
    T = _require_time_constant(params)
    inv_T = 1.0 / T
    t = np.asarray(t, dtype=float)
    S = params.deposit_sum
    ss = S / params.rho
    mix = S / (params.rho - inv_T)
    out = (
        (params.tau0 - ss + mix * math.exp(-inv_T)) * np.exp(-params.rho * t)
        + ss
        - mix * np.exp(-(t + 1.0) * inv_T)
    )
    return out if out.ndim else float(out)


def closed_form(
    params: DynamicsParams, rule: str, t: np.ndarray | float
) -> np.ndarray | float:
    """Evaluate the named rule's closed form at time(s) t."""
    if rule == CONSTANT:
        return closed_form_constant(params, t)
    if rule == EXPONENTIAL:
        return closed_form_exponential(params, t)
    raise ValueError(f"unknown deposition rule {rule!r}")


def _deposits_at(params: DynamicsParams, rule: str, t: np.ndarray | float):
    S = params.deposit_sum
    if rule == CONSTANT:
        return S * np.ones_like(np.asarray(t, dtype=float))
    if rule == EXPONENTIAL:
        T = _require_time_constant(params)
        return S * (1.0 - np.exp(-np.asarray(t, dtype=float) / T))
    raise ValueError(f"unknown deposition rule {rule!r}")


def discrete_trace(params: DynamicsParams, rule: str, steps: int) -> np.ndarray:
    """Iterate tau(t) = (1-rho) tau(t-1) + deposits(t); returns tau(1..steps).

    Per-step reinforcement is S for the constant rule and S (1 - exp(-t/T))
    for the exponential rule. This is the exact difference equation the
    closed forms approximate.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if rule not in (CONSTANT, EXPONENTIAL):
        raise ValueError(f"unknown deposition rule {rule!r}")
    S = params.deposit_sum
    keep = 1.0 - params.rho
    out = np.empty(steps)
    prev = params.tau0
    if rule == CONSTANT:
        for t in range(1, steps + 1):
            prev = keep * prev + S
            out[t - 1] = prev
    else:
        inv_T = 1.0 / _require_time_constant(params)
        for t in range(1, steps + 1):
            prev = keep * prev + S * (1.0 - math.exp(-t * inv_T))
            out[t - 1] = prev
    return out


def residual(
    params: DynamicsParams, rule: str, t: np.ndarray, h: float = 1e-5
) -> np.ndarray:
    """Defining-equation residual dtau/dt + rho tau - deposits(t+1).

    The derivative is a central finite difference with step h, so the
    result measures differencing error only; both closed forms satisfy
    the equation exactly.
    """
    t = np.asarray(t, dtype=float)
    dtau = (closed_form(params, rule, t + h) - closed_form(params, rule, t - h)) / (
        2.0 * h
    )
    return dtau + params.rho * np.asarray(closed_form(params, rule, t)) - _deposits_at(
        params, rule, t + 1.0
    )


def stability_verdict(rho: float, T: float | None = None) -> str:
    """Classify a parameter point as STABLE, UNSTABLE, or SINGULAR.

    The transient exp(-rho t) decays exactly when rho > 0, and the
    exponential rule additionally needs T > 0; rho within 1e-12 of 1/T is
    SINGULAR (no admissible solution of the stated form).
    """
    if T is not None and T != 0 and abs(rho - 1.0 / T) <= _SINGULAR_TOL:
        return SINGULAR
    if rho > 0 and (T is None or T > 0):
        return STABLE
    return UNSTABLE
