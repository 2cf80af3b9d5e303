"""Classical flow of SU(1,1) coherent states under the effective Hamiltonian.

The energy surface is ``E(theta, phi) = 2 omega k cosh(theta)
- gamma_k k sinh(theta) cos(phi) - 1/2`` and the group parameters obey

    theta' = -gamma_k sin(phi)
    phi'   = 2 omega - gamma_k coth(theta) cos(phi)

Trajectories are integrated with fixed-step classical RK4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dicke_optics.analytic import PhaseState, SuperradiantError, fixed_point_theta
from dicke_optics.hamiltonians import effective_coefficients

__all__ = [
    "THETA_MIN",
    "THETA_MAX",
    "FixedPoint",
    "Trajectory",
    "su11_energy",
    "eom",
    "integrate",
    "classify_fixed_points",
]

#: Guard around the coordinate singularity of coth(theta) at theta = 0.
THETA_MIN = 1e-8
#: Integration stops once theta exceeds this (cosh overflows near 710).
THETA_MAX = 50.0


@dataclass(frozen=True)
class FixedPoint:
    theta: float
    phi: float
    eigenvalues: tuple[complex, complex]
    kind: str


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled solution. ``status`` is ``"ok"``, ``"singular"`` or ``"diverged"``."""

    t: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    energy: np.ndarray
    dt: float
    lam: float
    epsilon: float
    k: float
    status: str = "ok"

    def __len__(self) -> int:
        return len(self.t)

    @property
    def drift(self) -> np.ndarray:
        return self.energy - self.energy[0]

    @property
    def max_drift(self) -> float:
        return float(np.abs(self.drift).max())

    @property
    def final_state(self) -> PhaseState:
        return PhaseState(float(self.theta[-1]), float(self.phi[-1]), self.k)


def su11_energy(state: PhaseState, lam: float, epsilon: float = 1.0) -> float:
    c = effective_coefficients(lam, epsilon)
    k = state.k
    return (
        2.0 * c.omega * k * math.cosh(state.theta)
        - c.gamma_k * k * math.sinh(state.theta) * math.cos(state.phi)
        - 0.5
    )


def _rhs(theta, phi, omega, gamma_k):
    return -gamma_k * math.sin(phi), 2.0 * omega - gamma_k * math.cos(phi) / math.tanh(theta)


def eom(state: PhaseState, lam: float, epsilon: float = 1.0) -> tuple[float, float | None]:
    """Time derivatives ``(theta', phi')``.

    ``phi'`` is ``None`` when ``|theta| < THETA_MIN``, where the chart is singular.
    """
    c = effective_coefficients(lam, epsilon)
    theta_dot = -c.gamma_k * math.sin(state.phi)
    if abs(state.theta) < THETA_MIN:
        return theta_dot, None
    return _rhs(state.theta, state.phi, c.omega, c.gamma_k)


def integrate(initial: PhaseState, lam: float, epsilon: float = 1.0, dt: float = 1e-3, steps: int = 1000) -> Trajectory:
    """Fixed-step RK4 trajectory of ``steps`` steps starting at ``initial``.

    The run is cut short (and ``status`` set) if any stage lands within
    ``THETA_MIN`` of the singular line or ``theta`` exceeds ``THETA_MAX``.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if abs(initial.theta) < THETA_MIN:
        raise ValueError("initial theta is on the coordinate singularity")

    c = effective_coefficients(lam, epsilon)
    w, g, k = c.omega, c.gamma_k, initial.k
    th = np.empty(steps + 1)
    ph = np.empty(steps + 1)
    th[0], ph[0] = initial.theta, initial.phi
    status = "ok"
    n = steps
    half = 0.5 * dt
    for i in range(steps):
        t0, p0 = th[i], ph[i]
        try:
            k1t, k1p = _rhs(t0, p0, w, g)
            t1 = t0 + half * k1t
            if abs(t1) < THETA_MIN:
                raise ZeroDivisionError
            k2t, k2p = _rhs(t1, p0 + half * k1p, w, g)
            t2 = t0 + half * k2t
            if abs(t2) < THETA_MIN:
                raise ZeroDivisionError
            k3t, k3p = _rhs(t2, p0 + half * k2p, w, g)
            t3 = t0 + dt * k3t
            if abs(t3) < THETA_MIN:
                raise ZeroDivisionError
            k4t, k4p = _rhs(t3, p0 + dt * k3p, w, g)
        except ZeroDivisionError:
            status, n = "singular", i
            break
        t_new = t0 + dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t)
        p_new = p0 + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        if abs(t_new) < THETA_MIN:
            status, n = "singular", i
            break
        th[i + 1], ph[i + 1] = t_new, p_new
        if abs(t_new) > THETA_MAX:
            status, n = "diverged", i + 1
            break

    th, ph = th[: n + 1], ph[: n + 1]
    energy = 2.0 * w * k * np.cosh(th) - g * k * np.sinh(th) * np.cos(ph) - 0.5
    return Trajectory(
        t=dt * np.arange(n + 1),
        theta=th,
        phi=ph,
        energy=energy,
        dt=dt,
        lam=lam,
        epsilon=epsilon,
        k=k,
        status=status,
    )


def classify_fixed_points(lam: float, epsilon: float = 1.0) -> list[FixedPoint]:
    """Stationary points of the flow on the ``phi = pi`` branch.

    Below the critical coupling there is one, a center with linearised
    eigenvalues ``±i |gamma_k| / sinh(theta*)``. Above it there are none.
    """
    if not lam > 0:
        raise ValueError("coupling must be positive")
    try:
        theta = fixed_point_theta(lam, epsilon)
    except SuperradiantError:
        return []
    c = effective_coefficients(lam, epsilon)
    g = c.gamma_k
    # Jacobian at phi = pi: [[0, g], [-g / sinh^2, 0]]
    # whose determinant g^2 / sinh^2 is positive, so the point is always a center.
    mu = abs(g) / math.sinh(theta)
    return [FixedPoint(theta, math.pi, (complex(0, mu), complex(0, -mu)), "center")]
