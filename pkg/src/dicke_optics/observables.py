"""Optical observables of numerically obtained ground states.

Photon statistics come from the lowest eigenvector of the truncated effective
Hamiltonian; energies and gaps of the full Dicke model come from its two
parity blocks. Both have cutoff-convergence drivers.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from dicke_optics.analytic import Q_THRESHOLD
from dicke_optics.eigensolve import eigh
from dicke_optics.hamiltonians import (
    COUPLING_PREFACTOR,
    ModelParams,
    dicke_parity_blocks,
    effective_photon_hamiltonian,
)
from dicke_optics.operators import FockBasis, OperatorMatrix, annihilation, quadrature_square_matrices

__all__ = [
    "ObservableRecord",
    "DickeLevels",
    "GapMinimum",
    "expectation",
    "photon_statistics",
    "ground_observables",
    "converged_ground_observables",
    "dicke_levels",
    "initial_dicke_cutoff",
    "converged_dicke_levels",
    "dicke_gap_minimum",
]

STATISTICS_FIELDS = ("n_photon", "var_n", "q", "var_x1", "var_x2")
ENERGY_FIELDS = ("e0", "gap")

# Geometric cutoff schedule for the effective Hamiltonian.
START_CUTOFF = 10
MAX_CUTOFF = 320


@dataclass(frozen=True)
class ObservableRecord:
    """Ground-state observables at one parameter point.

    ``q`` is ``None`` when ``n_photon <= Q_THRESHOLD`` (Mandel Q is 0/0 there).
    ``cutoff_delta`` is the largest change of any tested field between the
    last two cutoffs of a convergence run (``nan`` for a single cutoff).
    """

    n_photon: float
    var_n: float
    q: float | None
    var_x1: float
    var_x2: float
    e0: float | None = None
    gap: float | None = None
    converged: bool = True
    cutoff: int | None = None
    cutoff_delta: float = math.nan

    @classmethod
    def fields(cls) -> tuple[str, ...]:
        return tuple(f.name for f in dataclasses.fields(cls))

    def to_row(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_row(cls, row: dict) -> ObservableRecord:
        """Inverse of ``to_row`` for string-valued rows (CSV readers); ``"NA"`` means missing."""
        out = {}
        for f in dataclasses.fields(cls):
            value = row[f.name]
            if isinstance(value, str):
                if value == "NA":
                    value = None
                elif f.name == "converged":
                    value = value.strip().lower() in ("1", "true", "yes")
                elif f.name == "cutoff":
                    value = int(value)
                else:
                    value = float(value)
            if f.name == "cutoff_delta" and value is None:
                value = math.nan
            out[f.name] = value
        return cls(**out)


def expectation(op: OperatorMatrix | np.ndarray, state: np.ndarray) -> float:
    """``<state| op |state>`` for a real normalized state vector."""
    m = op.entries if isinstance(op, OperatorMatrix) else np.asarray(op, dtype=float)
    v = np.asarray(state, dtype=float)
    if m.ndim != 2 or m.shape != (v.size, v.size):
        raise ValueError(f"operator of shape {m.shape} does not act on a state of length {v.size}")
    norm = float(v @ v)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
    return float(v @ m @ v)


def photon_statistics(state: np.ndarray, fock: FockBasis) -> ObservableRecord:
    """Photon number, its variance, Mandel Q and quadrature variances of ``state``."""
    v = np.asarray(state, dtype=float)
    expectation(np.eye(fock.dim), v)  # shape and norm validation
    p = v * v
    n = fock.numbers()
    n_photon = float(p @ n)
    var_n = max(float(p @ (n * n)) - n_photon**2, 0.0)
    q = var_n / n_photon - 1.0 if n_photon > Q_THRESHOLD else None

    a = annihilation(fock).entries
    x1sq, x2sq = quadrature_square_matrices(fock)
    mean_x1 = float(v @ (a + a.T) @ v) / 2.0
    # For a real state <a - a†> vanishes identically, so <X2> = 0.
    var_x1 = expectation(x1sq, v) - mean_x1**2
    var_x2 = expectation(x2sq, v)
    return ObservableRecord(n_photon=n_photon, var_n=var_n, q=q, var_x1=var_x1, var_x2=var_x2)


def ground_observables(params: ModelParams) -> ObservableRecord:
    """Observables of the lowest eigenvector of the truncated effective Hamiltonian."""
    dec = eigh(effective_photon_hamiltonian(params))
    rec = photon_statistics(dec.ground_state, params.fock)
    return dataclasses.replace(
        rec, e0=float(dec.eigenvalues[0]), gap=dec.gap, cutoff=params.cutoff
    )


def _max_change(a: ObservableRecord, b: ObservableRecord, names) -> float:
    worst = 0.0
    for name in names:
        x, y = getattr(a, name), getattr(b, name)
        if x is None and y is None:
            continue
        if x is None or y is None:
            return math.inf
        worst = max(worst, abs(x - y))
    return worst


def converged_ground_observables(
    params: ModelParams,
    tol: float = 1e-6,
    start_cutoff: int = START_CUTOFF,
    max_cutoff: int = MAX_CUTOFF,
) -> ObservableRecord:
    """Ground observables with the cutoff doubled until they stop moving.

    Convergence means every statistics field (plus ``e0`` and ``gap`` below
    the critical coupling) changes by less than ``tol`` between successive
    cutoffs. Above the critical coupling the truncated Hamiltonian is
    unbounded below as the cutoff grows, so the run normally ends at
    ``max_cutoff`` with ``converged=False``; the values at that cutoff are
    returned together with ``cutoff_delta``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    names = STATISTICS_FIELDS
    if params.subradiant:
        names = names + ENERGY_FIELDS

    cutoff = start_cutoff
    prev = ground_observables(params.with_cutoff(cutoff))
    while True:
        nxt = min(2 * cutoff, max_cutoff)
        if nxt == cutoff:
            return dataclasses.replace(prev, converged=False)
        cutoff = nxt
        rec = ground_observables(params.with_cutoff(cutoff))
        delta = _max_change(prev, rec, names)
        rec = dataclasses.replace(rec, cutoff_delta=delta)
        if delta < tol:
            return rec
        prev = rec


@dataclass(frozen=True)
class DickeLevels:
    """Low-lying Dicke levels at one coupling.

    ``gap`` is ``E1 - E0`` over the whole spectrum; ``parity_gap`` is the
    first excitation inside the ground state's parity sector, which stays
    finite through the super-radiant doublet.
    """

    e0: float
    gap: float
    parity_gap: float
    cutoff: int
    converged: bool = True


def dicke_levels(params: ModelParams, prefactor: float = COUPLING_PREFACTOR) -> DickeLevels:
    even, odd = dicke_parity_blocks(params, prefactor)
    e_even = eigh(even, k_lowest=2, method="auto").eigenvalues
    e_odd = eigh(odd, k_lowest=2, method="auto").eigenvalues
    levels = np.sort(np.concatenate([e_even, e_odd]))
    ground_block = e_even if e_even[0] <= e_odd[0] else e_odd
    return DickeLevels(
        e0=float(levels[0]),
        gap=float(levels[1] - levels[0]),
        parity_gap=float(ground_block[1] - ground_block[0]),
        cutoff=params.cutoff,
    )


def initial_dicke_cutoff(params: ModelParams) -> int:
    """Starting cutoff from the mean-field photon number ``N (lam^2 - eps^2 / (16 lam^2))``."""
    lam, eps = params.lam, params.epsilon
    n_mf = params.n_atoms * (lam * lam - eps * eps / (16 * lam * lam)) if lam > 0 else 0.0
    return 16 + 2 * int(max(n_mf, 0.0))


def converged_dicke_levels(
    params: ModelParams,
    tol: float = 1e-8,
    start_cutoff: int | None = None,
    max_cutoff: int = 240,
    growth: float = 1.5,
    prefactor: float = COUPLING_PREFACTOR,
) -> DickeLevels:
    """``dicke_levels`` with the Fock cutoff grown until ``e0``, ``gap`` and
    ``parity_gap`` all move by less than ``tol``.

    ``start_cutoff`` defaults to ``initial_dicke_cutoff(params)``; the
    mean-field estimate assumes the default coupling prefactor.
    """
    cutoff = initial_dicke_cutoff(params) if start_cutoff is None else start_cutoff
    cutoff = min(cutoff, max_cutoff)
    prev = dicke_levels(params.with_cutoff(cutoff), prefactor)
    while cutoff < max_cutoff:
        cutoff = min(max(cutoff + 1, int(round(cutoff * growth))), max_cutoff)
        cur = dicke_levels(params.with_cutoff(cutoff), prefactor)
        delta = max(abs(cur.e0 - prev.e0), abs(cur.gap - prev.gap), abs(cur.parity_gap - prev.parity_gap))
        if delta < tol:
            return cur
        prev = cur
    return dataclasses.replace(prev, converged=False)


@dataclass(frozen=True)
class GapMinimum:
    n_atoms: int
    lam_min: float
    gap_min: float
    lambdas: np.ndarray
    gaps: np.ndarray


def dicke_gap_minimum(
    n_atoms: int,
    lambdas=None,
    epsilon: float = 1.0,
    tol: float = 1e-8,
    prefactor: float = COUPLING_PREFACTOR,
) -> GapMinimum:
    """Location of the minimum of the parity-resolved Dicke gap over ``lambdas``.

    The grid minimum is refined by a parabola through it and its two
    neighbours.
    """
    if lambdas is None:
        lambdas = np.round(np.arange(0.40, 0.8001, 0.01), 10)
    lambdas = np.asarray(lambdas, dtype=float)
    gaps = np.empty_like(lambdas)
    for i, lam in enumerate(lambdas):
        lv = converged_dicke_levels(ModelParams(lam, epsilon, n_atoms=n_atoms), tol=tol, prefactor=prefactor)
        gaps[i] = lv.parity_gap
    i = int(np.argmin(gaps))
    lam_min, gap_min = float(lambdas[i]), float(gaps[i])
    if 0 < i < len(lambdas) - 1:
        x = lambdas[i - 1 : i + 2]
        y = gaps[i - 1 : i + 2]
        c2, c1, c0 = np.polyfit(x, y, 2)
        if c2 > 0:
            lam_min = float(-c1 / (2 * c2))
            gap_min = float(np.polyval([c2, c1, c0], lam_min))
    return GapMinimum(n_atoms, lam_min, gap_min, lambdas, gaps)
