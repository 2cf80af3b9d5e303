"""Full Dicke Hamiltonian and the effective single-mode photon Hamiltonian.

Units: photon frequency = 1. The Dicke coupling is written

    H = a†a + eps Jz + (c lam / sqrt(N)) (a + a†) Jx

with ``c = 2`` by default (``COUPLING_PREFACTOR``); that is the normalisation
whose thermodynamic-limit critical point is ``lam_c = sqrt(eps) / 2`` and whose
adiabatic elimination of the atoms gives the effective photon Hamiltonian
below. Other prefactors are accepted for convention comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from dicke_optics.operators import (
    FockBasis,
    OperatorMatrix,
    SpinBasis,
    annihilation,
    collective_spin,
)

__all__ = [
    "COUPLING_PREFACTOR",
    "ModelParams",
    "EffectiveCoefficients",
    "critical_coupling",
    "effective_coefficients",
    "effective_photon_hamiltonian",
    "dicke_hamiltonian",
    "dicke_parity",
    "dicke_parity_blocks",
]

COUPLING_PREFACTOR = 2.0


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs for one parameter point.

    ``beta = math.inf`` means zero temperature. ``cutoff`` is the largest
    photon number kept in the truncated Fock space.
    """

    lam: float
    epsilon: float = 1.0
    beta: float = math.inf
    n_atoms: int = 32
    cutoff: int = 40

    def __post_init__(self):
        if not self.lam >= 0:
            raise ValueError(f"coupling must be >= 0, got {self.lam!r}")
        if not self.epsilon > 0:
            raise ValueError(f"atomic splitting must be > 0, got {self.epsilon!r}")
        if not self.beta > 0:
            raise ValueError(f"inverse temperature must be > 0, got {self.beta!r}")
        # Validate through the basis types.
        FockBasis(self.cutoff)
        SpinBasis(self.n_atoms)

    @property
    def fock(self) -> FockBasis:
        return FockBasis(self.cutoff)

    @property
    def spin(self) -> SpinBasis:
        return SpinBasis(self.n_atoms)

    def with_cutoff(self, cutoff: int) -> ModelParams:
        return replace(self, cutoff=cutoff)

    @property
    def subradiant(self) -> bool:
        """True while the effective quadratic form is bounded below."""
        return effective_coefficients(self.lam, self.epsilon, self.beta).normal_mode_frequency_sq > 0


@dataclass(frozen=True)
class EffectiveCoefficients:
    """Coefficients of ``omega (a†a + 1/2) + gamma2 (a†² + a²) - 1/2``.

    ``gamma_k = 4 * gamma2`` is the same coupling in the SU(1,1) form
    ``2 omega K0 + (gamma_k / 2)(K+ + K-) - 1/2``.
    """

    omega: float
    gamma2: float

    @property
    def gamma_k(self) -> float:
        return 4.0 * self.gamma2

    @property
    def normal_mode_frequency_sq(self) -> float:
        # omega^2 - 4 gamma2^2; negative once the quadratic form is unbounded.
        return self.omega**2 - 4.0 * self.gamma2**2


def critical_coupling(epsilon: float = 1.0, beta: float = math.inf) -> float:
    """Coupling at which the effective normal-mode frequency vanishes."""
    t = 1.0 if math.isinf(beta) else math.tanh(0.5 * beta * epsilon)
    return 0.5 * math.sqrt(epsilon / t)


def effective_coefficients(lam: float, epsilon: float = 1.0, beta: float = math.inf) -> EffectiveCoefficients:
    t = 1.0 if math.isinf(beta) else math.tanh(0.5 * beta * epsilon)
    g = lam * lam / epsilon * t
    return EffectiveCoefficients(omega=1.0 - 2.0 * g, gamma2=-g)


def effective_photon_hamiltonian(params: ModelParams) -> OperatorMatrix:
    """Truncated ``omega (a†a + 1/2) + gamma2 (a†² + a²) - 1/2`` on ``FockBasis(cutoff)``."""
    coeffs = effective_coefficients(params.lam, params.epsilon, params.beta)
    fock = params.fock
    a = annihilation(fock).entries
    a2 = a @ a
    h = np.diag(coeffs.omega * (fock.numbers() + 0.5) - 0.5)
    h += coeffs.gamma2 * (a2 + a2.T)
    return OperatorMatrix(h, fock.tag, symmetric=True)


def dicke_hamiltonian(params: ModelParams, prefactor: float = COUPLING_PREFACTOR) -> OperatorMatrix:
    """Dicke Hamiltonian on ``FockBasis(cutoff) ⊗ SpinBasis(n_atoms)``."""
    fock, spin = params.fock, params.spin
    jz, jx = collective_spin(spin)
    a = annihilation(fock).entries
    diag = np.add.outer(fock.numbers(), params.epsilon * np.diag(jz.entries)).ravel()
    g = prefactor * params.lam / math.sqrt(params.n_atoms)
    h = g * np.kron(a + a.T, jx.entries)
    h[np.diag_indices_from(h)] += diag
    return OperatorMatrix(h, f"{fock.tag}*{spin.tag}", symmetric=True)


def dicke_parity(params: ModelParams) -> np.ndarray:
    """Eigenvalues ``(-1)^(n + m + j)`` of the conserved parity, in product-basis order."""
    n = np.arange(params.fock.dim)
    s = np.arange(params.spin.dim)
    return np.where(np.add.outer(n, s).ravel() % 2 == 0, 1.0, -1.0)


def dicke_parity_blocks(
    params: ModelParams, prefactor: float = COUPLING_PREFACTOR
) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Even- and odd-parity diagonal blocks of the Dicke Hamiltonian.

    The even block contains the uncoupled ground state ``|0> ⊗ |j, -j>``.
    """
    h = dicke_hamiltonian(params, prefactor).entries
    parity = dicke_parity(params)
    blocks = []
    for sign, name in ((1.0, "even"), (-1.0, "odd")):
        idx = np.flatnonzero(parity == sign)
        blocks.append(OperatorMatrix(h[np.ix_(idx, idx)], f"dicke[{name}]", symmetric=True))
    return blocks[0], blocks[1]
