"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import math

import numpy as np
import pytest

from dicke_optics import cli
from dicke_optics.analytic import fixed_point_state, fixed_point_theta, gap_and_energy, su11_observables, xp_coefficients
from dicke_optics.analytic import PhaseState
from dicke_optics.csvio import body_lines
from dicke_optics.dynamics import classify_fixed_points, integrate, su11_energy
from dicke_optics.hamiltonians import ModelParams
from dicke_optics.observables import converged_dicke_levels, converged_ground_observables, dicke_gap_minimum


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip())
        assert ok, f"criterion {number} failed: {detail}"

    return emit


def test_criterion_1_critical_point(report):
    gap_at_critical = gap_and_energy(0.5)[0]
    worst = 0.0
    for lam in np.round(np.arange(0.0, 0.4501, 0.05), 10):
        rec = converged_ground_observables(ModelParams(float(lam)), tol=1e-6)
        worst = max(worst, abs(rec.gap - gap_and_energy(lam)[0]))
    report(
        1,
        "effective-Hamiltonian gap matches sqrt(1-4 lam^2)",
        gap_at_critical == 0.0 and worst <= 1e-6,
        f"gap(0.5)={gap_at_critical:g} max|err|={worst:.2e}",
    )


def test_criterion_2_finite_size_gap_minimum(report):
    located = [dicke_gap_minimum(n).lam_min for n in (8, 16, 32)]
    dist = [abs(x - 0.5) for x in located]
    ok = dist[0] > dist[1] > dist[2]
    report(
        2,
        "parity-resolved gap minimum moves toward 0.5 with N",
        ok,
        "lam_min(N=8,16,32)=" + ", ".join(f"{x:.4f}" for x in located),
    )


def test_criterion_3_energy_finite_size_trend(report):
    target = gap_and_energy(0.4)[1]
    errs = []
    zero_errs = []
    for n in (8, 16, 32):
        errs.append(abs(converged_dicke_levels(ModelParams(0.4, n_atoms=n)).e0 + n / 2 - target))
        zero_errs.append(abs(converged_dicke_levels(ModelParams(0.0, n_atoms=n)).e0 + n / 2))
    ok = errs[0] > errs[1] > errs[2] and max(zero_errs) <= 1e-9
    report(
        3,
        "Dicke energy error at lam=0.4 shrinks with N; exact at lam=0",
        ok,
        "err(N=8,16,32)=" + ", ".join(f"{e:.4f}" for e in errs) + f" lam0={max(zero_errs):.1e}",
    )


def test_criterion_4_squeezing(report):
    lams = np.linspace(0.0, 0.5, 22)[1:-1]
    worst_x2 = -math.inf
    worst_prod = 0.0
    for lam in lams:
        rec = converged_ground_observables(ModelParams(float(lam)))
        worst_x2 = max(worst_x2, rec.var_x2)
        worst_prod = max(worst_prod, abs(rec.var_x1 * rec.var_x2 - 1 / 16))
    report(
        4,
        "squeezed minimum-uncertainty ground states",
        len(lams) == 20 and worst_x2 <= 0.25 + 1e-6 and worst_prod <= 1e-6,
        f"max var_x2={worst_x2:.6f} max|prod-1/16|={worst_prod:.1e}",
    )


def test_criterion_5_oracle_equivalence(report):
    worst = 0.0
    for lam in np.round(np.arange(0.05, 0.4501, 0.05), 10):
        rec = converged_ground_observables(ModelParams(float(lam)))
        ana = su11_observables(fixed_point_state(float(lam)))
        for num, ref in ((rec.n_photon, ana.n_photon), (rec.var_x1, ana.var_x1), (rec.var_x2, ana.var_x2), (rec.q, ana.q)):
            worst = max(worst, abs(num - ref))
    spot = converged_ground_observables(ModelParams(0.4))
    spot_ok = abs(spot.n_photon - 1 / 15) <= 1e-6 and abs(spot.q - 17 / 15) <= 1e-6
    report(
        5,
        "Fock numerics agree with the SU(1,1) closed forms",
        worst <= 1e-6 and spot_ok,
        f"max|diff|={worst:.1e} N(0.4)={spot.n_photon:.9f} Q(0.4)={spot.q:.9f}",
    )


def test_criterion_6_photon_statistics_transition(report):
    sub = [converged_ground_observables(ModelParams(lam)).q for lam in (0.05, 0.15, 0.25, 0.35, 0.45)]
    sup = {lam: converged_ground_observables(ModelParams(lam)).q for lam in (0.8, 1.0, 2.0, 3.0)}
    ok = (
        all(q > 0 for q in sub)
        and all(sup[lam] < 0 for lam in (0.8, 1.0, 2.0))
        and abs(sup[3.0] + 1) < abs(sup[1.0] + 1)
    )
    report(
        6,
        "Q>0 below, Q<0 above, trending to -1",
        ok,
        "Q(0.8,1,2,3)=" + ", ".join(f"{sup[lam]:.4f}" for lam in (0.8, 1.0, 2.0, 3.0)),
    )


def test_criterion_7_xp_coefficients(report):
    ax_lo, ax_hi = xp_coefficients(0.45).a_x, xp_coefficients(0.55).a_x
    pole = 1 / math.sqrt(2)
    ap_lo, ap_hi = xp_coefficients(pole - 1e-4).a_p, xp_coefficients(pole + 1e-4).a_p
    worst = max(
        abs(2 * math.sqrt(c.a_x * c.a_p) - math.sqrt(1 - 4 * lam * lam))
        for lam in np.linspace(0.0, 0.499, 200)
        for c in [xp_coefficients(lam)]
    )
    ok = ax_lo > 0 > ax_hi and ap_lo * ap_hi < 0 and worst <= 1e-10
    report(
        7,
        "x^2 coefficient sign change, p^2 pole, product identity",
        ok,
        f"a_x(0.45)={ax_lo:.4f} a_x(0.55)={ax_hi:.4f} a_p pole signs=({ap_lo:+.1f},{ap_hi:+.1f}) identity={worst:.1e}",
    )


def test_criterion_8_dynamics(report):
    lams = np.linspace(0.04, 0.49, 10)
    e_err = max(abs(su11_energy(fixed_point_state(lam), lam) - gap_and_energy(lam)[1]) for lam in lams)

    start = PhaseState(fixed_point_theta(0.4) + 0.3, math.pi)
    drift = integrate(start, 0.4, dt=1e-3, steps=100_000).max_drift

    def drift_at(dt):
        return integrate(start, 0.4, dt=dt, steps=int(round(10.0 / dt))).max_drift

    order = math.log2(drift_at(0.01) / drift_at(0.005))
    empty = all(classify_fixed_points(lam) == [] for lam in (0.5, 0.6, 1.0, 3.0))
    ok = e_err <= 1e-10 and drift <= 1e-6 and abs(order - 4) <= 0.25 and empty
    report(
        8,
        "fixed-point energy, RK4 conservation and order, no super-radiant fixed point",
        ok,
        f"energy err={e_err:.1e} drift(t=100)={drift:.1e} order={order:.3f}",
    )


def test_criterion_9_determinism(report, tmp_path):
    args = ["figure", "all", "--steps", "11", "--atoms", "16"]
    cli.main([*args, "--out", str(tmp_path / "a")])
    cli.main([*args, "--out", str(tmp_path / "b")])
    same = all(
        body_lines((tmp_path / "a" / f"{n}.csv").read_text()) == body_lines((tmp_path / "b" / f"{n}.csv").read_text())
        for n in ("energy", "photon_number", "statistics", "xp_coeffs")
    )
    report(9, "repeated CLI sweeps give byte-identical CSV bodies", same)
