"""Matrix representations of the photon and collective-spin operators.

Everything here is dense and real. Product spaces are always ordered
photon (slow index) x spin (fast index), so the basis state ``|n, m>`` sits
at row ``n * (N + 1) + (m + j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FockBasis",
    "SpinBasis",
    "OperatorMatrix",
    "annihilation",
    "creation",
    "number",
    "identity",
    "quadrature_square_matrices",
    "collective_spin",
    "spin_ladder",
    "tensor",
]


@dataclass(frozen=True)
class FockBasis:
    """Photon number states ``|0>, ..., |cutoff>``."""

    cutoff: int

    def __post_init__(self):
        if int(self.cutoff) != self.cutoff or self.cutoff < 1:
            raise ValueError(f"Fock cutoff must be an integer >= 1, got {self.cutoff!r}")

    @property
    def dim(self) -> int:
        return self.cutoff + 1

    @property
    def tag(self) -> str:
        return f"fock[{self.cutoff}]"

    def numbers(self) -> np.ndarray:
        return np.arange(self.dim, dtype=float)

    def state(self, n: int) -> np.ndarray:
        v = np.zeros(self.dim)
        v[n] = 1.0
        return v


@dataclass(frozen=True)
class SpinBasis:
    """Maximal-spin sector ``j = N/2`` of N two-level atoms, ordered ``m = -j..j``."""

    n_atoms: int

    def __post_init__(self):
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 1:
            raise ValueError(f"atom count must be an integer >= 1, got {self.n_atoms!r}")

    @property
    def j(self) -> float:
        return self.n_atoms / 2

    @property
    def dim(self) -> int:
        return self.n_atoms + 1

    @property
    def tag(self) -> str:
        return f"spin[{self.n_atoms}]"

    def m_values(self) -> np.ndarray:
        return np.arange(self.dim, dtype=float) - self.j


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """A dense real matrix together with the basis it acts on.

    ``symmetric`` is a construction guarantee: builders only set it when the
    entries are exactly symmetric, so it is never inferred by tolerance.
    """

    entries: np.ndarray
    basis_tag: str
    symmetric: bool = False
    dim: int = field(init=False)

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {a.shape}")
        if self.symmetric and not np.array_equal(a, a.T):
            raise ValueError("matrix flagged symmetric but entries are not")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "dim", a.shape[0])

    def __repr__(self) -> str:
        return f"OperatorMatrix(dim={self.dim}, basis_tag={self.basis_tag!r}, symmetric={self.symmetric})"

    @property
    def T(self) -> OperatorMatrix:
        return OperatorMatrix(self.entries.T, self.basis_tag, self.symmetric)


def _symmetrized(a: np.ndarray) -> np.ndarray:
    # (a + a.T) / 2 is bitwise symmetric because float addition commutes.
    return 0.5 * (a + a.T)


def annihilation(fock: FockBasis) -> OperatorMatrix:
    """Truncated lowering operator with ``<n-1|a|n> = sqrt(n)``."""
    a = np.diag(np.sqrt(np.arange(1, fock.dim, dtype=float)), k=1)
    return OperatorMatrix(a, fock.tag, symmetric=False)


def creation(fock: FockBasis) -> OperatorMatrix:
    return annihilation(fock).T


def number(fock: FockBasis) -> OperatorMatrix:
    return OperatorMatrix(np.diag(fock.numbers()), fock.tag, symmetric=True)


def identity(dim: int, basis_tag: str) -> OperatorMatrix:
    return OperatorMatrix(np.eye(dim), basis_tag, symmetric=True)


def quadrature_square_matrices(fock: FockBasis) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Return ``X1^2`` and ``X2^2`` for ``X1 = (a + a†)/2``, ``X2 = (a - a†)/2i``.

    Both are products of truncated matrices, so the last diagonal entry
    carries the usual truncation defect. ``X2^2 = -(a - a†)^2 / 4`` is real.
    """
    a = annihilation(fock).entries
    plus = a + a.T
    minus = a - a.T
    x1sq = _symmetrized(plus @ plus) / 4.0
    x2sq = -_symmetrized(minus @ minus) / 4.0
    return (
        OperatorMatrix(x1sq, fock.tag, symmetric=True),
        OperatorMatrix(x2sq, fock.tag, symmetric=True),
    )


def spin_ladder(spin: SpinBasis) -> OperatorMatrix:
    """Raising operator ``J+`` with ``<j,m+1|J+|j,m> = sqrt(j(j+1) - m(m+1))``."""
    j = spin.j
    m = spin.m_values()[:-1]
    jp = np.diag(np.sqrt(j * (j + 1) - m * (m + 1)), k=-1)
    return OperatorMatrix(jp, spin.tag, symmetric=False)


def collective_spin(spin: SpinBasis) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Return ``(Jz, Jx)`` on the maximal-spin sector."""
    jz = np.diag(spin.m_values())
    jp = spin_ladder(spin).entries
    jx = 0.5 * (jp + jp.T)
    return (
        OperatorMatrix(jz, spin.tag, symmetric=True),
        OperatorMatrix(jx, spin.tag, symmetric=True),
    )


def tensor(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """Kronecker product ``a ⊗ b``; the first factor is the slow index."""
    return OperatorMatrix(
        np.kron(a.entries, b.entries),
        f"{a.basis_tag}*{b.basis_tag}",
        symmetric=a.symmetric and b.symmetric,
    )
