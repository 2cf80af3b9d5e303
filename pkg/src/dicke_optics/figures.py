"""Datasets behind the four figures, the trajectory output and the
finite-size gap study.

Every builder returns ``Table`` objects (one per output file); writing and
plotting are left to the caller.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from dicke_optics import analytic
from dicke_optics.csvio import Table
from dicke_optics.dynamics import integrate
from dicke_optics.hamiltonians import ModelParams, critical_coupling
from dicke_optics.observables import (
    ObservableRecord,
    converged_dicke_levels,
    converged_ground_observables,
    dicke_gap_minimum,
    ground_observables,
)

log = logging.getLogger(__name__)

FIGURES = ("energy", "photon_number", "statistics", "xp_coeffs")


@dataclass(frozen=True)
class SweepSpec:
    """A coupling grid plus the fixed physical and numerical settings.

    ``cutoff=None`` selects automatic cutoff convergence at ``auto_cutoff_tol``.
    """

    lambda_min: float = 0.0
    lambda_max: float = 1.0
    steps: int = 200
    epsilon: float = 1.0
    beta: float = math.inf
    n_atoms: int = 32
    cutoff: int | None = None
    auto_cutoff_tol: float = 1e-6
    include_critical: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError("steps must be at least 2")
        if not self.lambda_max > self.lambda_min >= 0:
            raise ValueError("need 0 <= lambda_min < lambda_max")
        if not self.auto_cutoff_tol > 0:
            raise ValueError("auto_cutoff_tol must be positive")

    def grid(self) -> np.ndarray:
        lams = np.linspace(self.lambda_min, self.lambda_max, self.steps)
        if not self.include_critical:
            lam_c = critical_coupling(self.epsilon, self.beta)
            hit = lams == lam_c
            if hit.any():
                log.warning("dropping lambda=%g (critical point) from the grid", lam_c)
                lams = lams[~hit]
        return lams

    def params(self, lam: float) -> ModelParams:
        return ModelParams(
            lam=float(lam),
            epsilon=self.epsilon,
            beta=self.beta,
            n_atoms=self.n_atoms,
            cutoff=self.cutoff or 10,
        )

    def meta(self, figure: str) -> dict:
        out = {"figure": figure}
        out.update(asdict(self))
        out.pop("jobs")
        out["cutoff"] = "auto" if self.cutoff is None else self.cutoff
        return out


def _map(spec: SweepSpec, fn, items):
    # Results come back in grid order whatever the completion order.
    if spec.jobs > 1:
        with ThreadPoolExecutor(max_workers=spec.jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _effective_record(spec: SweepSpec, lam: float) -> ObservableRecord:
    p = spec.params(lam)
    if spec.cutoff is None:
        return converged_ground_observables(p, tol=spec.auto_cutoff_tol)
    rec = ground_observables(p)
    # A fixed cutoff is not a convergence test.
    return ObservableRecord(**{**rec.to_row(), "converged": False})


def _status(rec: ObservableRecord, spec: SweepSpec) -> str:
    if spec.cutoff is not None:
        return "fixed_cutoff"
    return "ok" if rec.converged else "nonconverged"


def _analytic_su11(lam: float, spec: SweepSpec):
    try:
        state = analytic.fixed_point_state(lam, spec.epsilon, beta=spec.beta)
    except analytic.SuperradiantError:
        return None
    return analytic.su11_observables(state)


def energy_table(spec: SweepSpec) -> Table:
    """Ground energy: closed form, truncated effective Hamiltonian, and
    ``E0(Dicke) + eps N / 2``; also the Dicke gaps."""

    def point(lam):
        try:
            e_analytic = analytic.gap_and_energy(lam, spec.epsilon, spec.beta)[1]
        except analytic.SuperradiantError:
            e_analytic = None
        rec = _effective_record(spec, lam)
        p = spec.params(lam)
        if spec.cutoff is None:
            lv = converged_dicke_levels(p, tol=spec.auto_cutoff_tol)
        else:
            lv = converged_dicke_levels(p, start_cutoff=spec.cutoff, max_cutoff=spec.cutoff)
        status = _status(rec, spec)
        if spec.cutoff is None and not lv.converged:
            status = "nonconverged"
        return {
            "lambda": lam,
            "e0_analytic": e_analytic,
            "e0_effective": rec.e0,
            "e0_dicke_shifted": lv.e0 + 0.5 * spec.epsilon * spec.n_atoms,
            "dicke_gap": lv.gap,
            "dicke_parity_gap": lv.parity_gap,
            "effective_cutoff": rec.cutoff,
            "dicke_cutoff": lv.cutoff,
            "status": status,
        }

    meta = spec.meta("energy")
    meta["dicke_temperature"] = "zero"
    return Table(
        "energy",
        ["lambda", "e0_analytic", "e0_effective", "e0_dicke_shifted", "dicke_gap",
         "dicke_parity_gap", "effective_cutoff", "dicke_cutoff", "status"],
        _map(spec, point, spec.grid()),
        meta,
    )


def photon_number_table(spec: SweepSpec) -> Table:
    def point(lam):
        rec = _effective_record(spec, lam)
        su11 = _analytic_su11(lam, spec)
        return {
            "lambda": lam,
            "n_analytic": None if su11 is None else su11.n_photon,
            "n_numeric": rec.n_photon,
            "cutoff": rec.cutoff,
            "status": _status(rec, spec),
        }

    return Table(
        "photon_number",
        ["lambda", "n_analytic", "n_numeric", "cutoff", "status"],
        _map(spec, point, spec.grid()),
        spec.meta("photon_number"),
    )


def statistics_table(spec: SweepSpec) -> Table:
    """Full ``ObservableRecord`` per point plus the closed-form variances and Q."""

    def point(lam):
        rec = _effective_record(spec, lam)
        su11 = _analytic_su11(lam, spec)
        row = {"lambda": lam, **rec.to_row()}
        row["var_x1_analytic"] = None if su11 is None else su11.var_x1
        row["var_x2_analytic"] = None if su11 is None else su11.var_x2
        row["q_analytic"] = None if su11 is None else su11.q
        row["status"] = _status(rec, spec)
        return row

    columns = ["lambda", *ObservableRecord.fields(), "var_x1_analytic", "var_x2_analytic", "q_analytic", "status"]
    return Table("statistics", columns, _map(spec, point, spec.grid()), spec.meta("statistics"))


def xp_table(spec: SweepSpec) -> Table:
    def point(lam):
        try:
            c = analytic.xp_coefficients(lam, spec.epsilon, spec.beta)
        except ZeroDivisionError:
            return {"lambda": lam, "a_x": None, "a_p": None, "m_bar": None, "omega_bar_sq": None, "status": "pole"}
        return {"lambda": lam, **asdict(c), "status": "ok"}

    return Table(
        "xp_coeffs",
        ["lambda", "a_x", "a_p", "m_bar", "omega_bar_sq", "status"],
        [point(lam) for lam in spec.grid()],
        spec.meta("xp_coeffs"),
    )


_BUILDERS = {
    "energy": energy_table,
    "photon_number": photon_number_table,
    "statistics": statistics_table,
    "xp_coeffs": xp_table,
}


def run_figure(fig_id: str, spec: SweepSpec) -> list[Table]:
    """Tables for one figure id (``"all"`` for every figure)."""
    if fig_id == "all":
        return [_BUILDERS[f](spec) for f in FIGURES]
    try:
        builder = _BUILDERS[fig_id]
    except KeyError:
        raise ValueError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURES)}") from None
    return [builder(spec)]


def run_dynamics(
    theta: float,
    phi: float,
    k: float,
    lam: float,
    epsilon: float = 1.0,
    dt: float = 1e-3,
    steps: int = 1000,
    stride: int = 1,
) -> Table:
    """Trajectory table with columns ``t, theta, phi, energy, drift``.

    ``stride`` thins the written samples; the integration step is unaffected.
    """
    traj = integrate(analytic.PhaseState(theta, phi, k), lam, epsilon, dt, steps)
    drift = traj.drift
    idx = np.arange(0, len(traj), max(1, stride))
    if idx[-1] != len(traj) - 1:
        idx = np.append(idx, len(traj) - 1)
    rows = [
        {"t": traj.t[i], "theta": traj.theta[i], "phi": traj.phi[i], "energy": traj.energy[i], "drift": drift[i]}
        for i in idx
    ]
    meta = {
        "theta0": theta, "phi0": phi, "k": k, "lambda": lam, "epsilon": epsilon,
        "dt": dt, "steps": steps, "status": traj.status, "max_abs_drift": traj.max_drift,
    }
    return Table("trajectory", ["t", "theta", "phi", "energy", "drift"], rows, meta)


def run_finite_size(
    atoms=(8, 16, 32),
    lambda_min: float = 0.40,
    lambda_max: float = 0.80,
    steps: int = 41,
    epsilon: float = 1.0,
    tol: float = 1e-8,
) -> list[Table]:
    """Parity-resolved Dicke gap curves and the location of their minima."""
    lams = np.linspace(lambda_min, lambda_max, steps)
    results = [dicke_gap_minimum(n, lams, epsilon=epsilon, tol=tol) for n in atoms]
    curves = Table(
        "finite_size_gaps",
        ["lambda", *(f"parity_gap_N{r.n_atoms}" for r in results)],
        [
            {"lambda": lam, **{f"parity_gap_N{r.n_atoms}": r.gaps[i] for r in results}}
            for i, lam in enumerate(lams)
        ],
        {"epsilon": epsilon, "tol": tol},
    )
    minima = Table(
        "finite_size_minima",
        ["n_atoms", "lambda_min", "gap_min"],
        [{"n_atoms": r.n_atoms, "lambda_min": r.lam_min, "gap_min": r.gap_min} for r in results],
        {"epsilon": epsilon, "critical_coupling": critical_coupling(epsilon)},
    )
    return [curves, minima]
