"""Closed-form results for the effective photon Hamiltonian.

Covers the Bogoliubov diagonalisation, the normal-mode gap and ground
energy, the SU(1,1) coherent-state fixed point and its photon statistics,
and the position/momentum form of the Hamiltonian. All functions take the
coupling ``lam`` and an optional atomic splitting ``epsilon`` (default 1,
resonance). Zero temperature is the default; a finite ``beta`` only rescales
the coupling through the effective coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from dicke_optics.hamiltonians import critical_coupling, effective_coefficients

__all__ = [
    "Q_THRESHOLD",
    "SuperradiantError",
    "PhaseState",
    "BogoliubovSolution",
    "SU11Observables",
    "XPCoefficients",
    "bogoliubov_alpha",
    "gap_and_energy",
    "fixed_point_theta",
    "fixed_point_state",
    "su11_observables",
    "xp_coefficients",
]

#: Mandel Q is reported as undefined (``None``) at or below this photon number.
Q_THRESHOLD = 1e-8

BARGMANN_INDICES = (0.25, 0.75)


class SuperradiantError(ValueError):
    """The requested sub-radiant quantity has no real value at this coupling."""


@dataclass(frozen=True)
class PhaseState:
    """Point ``(theta, phi)`` on the SU(1,1) coherent-state manifold.

    ``k = 1/4`` is the squeezed vacuum series, ``k = 3/4`` the squeezed
    one-photon series.
    """

    theta: float
    phi: float
    k: float = 0.25

    def __post_init__(self):
        if self.k not in BARGMANN_INDICES:
            raise ValueError(f"Bargmann index must be 1/4 or 3/4, got {self.k!r}")

    @property
    def xi(self) -> complex:
        """Disc coordinate ``-tanh(theta/2) exp(-i phi)``."""
        return -math.tanh(self.theta / 2) * complex(math.cos(self.phi), -math.sin(self.phi))


@dataclass(frozen=True)
class BogoliubovSolution:
    alpha_minus: float
    alpha_plus: float
    frequency: float

    @property
    def physical(self) -> float:
        """The root with ``|alpha| <= 1``."""
        return self.alpha_minus if abs(self.alpha_minus) <= abs(self.alpha_plus) else self.alpha_plus


@dataclass(frozen=True)
class SU11Observables:
    n_photon: float
    var_x1: float
    var_x2: float
    q: float | None


@dataclass(frozen=True)
class XPCoefficients:
    """``H = a_p p^2 + a_x x^2`` with ``a_p = 1/(2 m_bar)``, ``a_x = m_bar omega_bar_sq / 2``."""

    a_x: float
    a_p: float
    m_bar: float
    omega_bar_sq: float


def bogoliubov_alpha(lam: float, epsilon: float = 1.0, beta: float = math.inf) -> BogoliubovSolution:
    """Roots of ``gamma2 alpha^2 - omega alpha + gamma2 = 0``.

    The roots are reciprocal, so the physical one is computed in the
    cancellation-free form ``2 gamma2 / (omega + sqrt(omega^2 - 4 gamma2^2))``.
    At ``lam = 0`` the quadratic degenerates and the unphysical root is
    ``-inf``.
    """
    if lam < 0:
        raise ValueError("coupling must be >= 0")
    c = effective_coefficients(lam, epsilon, beta)
    disc = c.normal_mode_frequency_sq
    if disc < 0:
        raise SuperradiantError(f"no real Bogoliubov transformation at lam={lam} (above critical)")
    root = math.sqrt(disc)
    small = 2.0 * c.gamma2 / (c.omega + root)
    large = -math.inf if small == 0.0 else 1.0 / small
    # alpha_-/+ follow the sign in front of the square root in (omega -/+ root) / (2 gamma2).
    return BogoliubovSolution(alpha_minus=small, alpha_plus=large, frequency=root)


def gap_and_energy(lam: float, epsilon: float = 1.0, beta: float = math.inf) -> tuple[float, float]:
    """Normal-mode gap ``sqrt(1 - 4 lam^2)`` and ground energy ``(gap - 1)/2`` (at ``epsilon = 1``)."""
    c = effective_coefficients(lam, epsilon, beta)
    disc = c.normal_mode_frequency_sq
    if disc < 0:
        raise SuperradiantError(f"spectrum is unbounded below at lam={lam}")
    gap = math.sqrt(disc)
    return gap, 0.5 * (gap - 1.0)


def fixed_point_theta(lam: float, epsilon: float = 1.0, beta: float = math.inf) -> float:
    """Stationary ``theta`` on the ``phi = pi`` branch: ``arccoth(-2 omega / gamma_k)``.

    Evaluated as ``0.5 * log((x + 1) / (x - 1))``; diverges as ``lam -> lam_c``.
    """
    if lam < 0:
        raise ValueError("coupling must be >= 0")
    if lam == 0:
        return 0.0
    c = effective_coefficients(lam, epsilon, beta)
    x = -2.0 * c.omega / c.gamma_k
    if not x > 1.0:
        raise SuperradiantError(
            f"no real stationary point at lam={lam} (critical coupling {critical_coupling(epsilon, beta):g})"
        )
    return 0.5 * math.log((x + 1.0) / (x - 1.0))


def fixed_point_state(lam: float, epsilon: float = 1.0, k: float = 0.25, beta: float = math.inf) -> PhaseState:
    return PhaseState(fixed_point_theta(lam, epsilon, beta), math.pi, k)


def su11_observables(state: PhaseState) -> SU11Observables:
    """Photon number, quadrature variances and Mandel Q of a coherent state."""
    k, th = state.k, state.theta
    ch, sh = math.cosh(th), math.sinh(th)
    cphi = math.cos(state.phi)
    n_photon = 2.0 * k * ch - 0.5
    var_x1 = k * (ch - cphi * sh)
    var_x2 = k * (ch + cphi * sh)
    if n_photon <= Q_THRESHOLD:
        q = None
    else:
        num = k * ((1.0 + 2.0 * k) * math.cosh(2.0 * th) + 2.0 * k - 1.0) - 4.0 * k * k * ch * ch
        q = num / n_photon - 1.0
    return SU11Observables(n_photon, var_x1, var_x2, q)


def xp_coefficients(lam: float, epsilon: float = 1.0, beta: float = math.inf) -> XPCoefficients:
    """Coefficients of ``x^2`` and ``p^2`` after ``x = (a + a†)/sqrt(2 omega)``.

    Raises ``ZeroDivisionError`` where ``omega = 0`` (``lam = sqrt(epsilon/2)``),
    the pole of ``a_p``.
    """
    c = effective_coefficients(lam, epsilon, beta)
    w, g = c.omega, c.gamma2
    if w == 0.0:
        raise ZeroDivisionError(f"omega vanishes at lam={lam}: the p^2 coefficient has a pole")
    return XPCoefficients(
        a_x=0.5 * w * (w + 2.0 * g),
        a_p=(w - 2.0 * g) / (2.0 * w),
        m_bar=w / (w - 2.0 * g),
        omega_bar_sq=(w + 2.0 * g) * (w - 2.0 * g),
    )
