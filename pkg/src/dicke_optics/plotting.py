"""Matplotlib renderings of the figure tables.

Analytic curves are drawn as open circles and numerics as solid lines.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from dicke_optics.csvio import Table  # noqa: E402

_RC = {
    "font.size": 10,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.4,
    "lines.markersize": 4,
    "savefig.dpi": 150,
}


def _floats(table: Table, name: str):
    return [float("nan") if v is None else float(v) for v in table.column(name)]


def _circles(ax, x, y, label):
    ax.plot(x, y, "o", mfc="none", mew=0.8, label=label)


def _energy(table: Table, fig):
    ax = fig.add_subplot(111)
    lam = _floats(table, "lambda")
    ax.plot(lam, _floats(table, "e0_effective"), "-", label="effective Hamiltonian")
    _circles(ax, lam, _floats(table, "e0_dicke_shifted"), f"Dicke, N={table.meta.get('n_atoms')}")
    ax.plot(lam, _floats(table, "e0_analytic"), ":", color="k", label="closed form")
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel(r"$E_0$")
    lo = min(v for v in _floats(table, "e0_dicke_shifted"))
    ax.set_ylim(min(lo, -0.6) * 1.1, 0.05)


def _photon_number(table: Table, fig):
    ax = fig.add_subplot(111)
    lam = _floats(table, "lambda")
    ax.plot(lam, _floats(table, "n_numeric"), "-", label="numerical")
    _circles(ax, lam, _floats(table, "n_analytic"), "analytical")
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel(r"$N$")
    ax.set_yscale("symlog", linthresh=1e-2)


def _statistics(table: Table, fig):
    lam = _floats(table, "lambda")
    panels = (
        ("var_x1", "var_x1_analytic", r"$(\Delta X_1)^2$"),
        ("var_x2", "var_x2_analytic", r"$(\Delta X_2)^2$"),
        ("q", "q_analytic", r"$Q$"),
    )
    for i, (num, ana, label) in enumerate(panels):
        ax = fig.add_subplot(3, 1, i + 1)
        ax.plot(lam, _floats(table, num), "-", label="numerical")
        _circles(ax, lam, _floats(table, ana), "analytical")
        ax.set_ylabel(label)
        if num == "q":
            ax.set_ylim(-1.1, 5.0)
        elif num == "var_x1":
            ax.set_yscale("log")
    ax.set_xlabel(r"$\lambda$")


def _xp(table: Table, fig):
    ax = fig.add_subplot(111)
    lam = _floats(table, "lambda")
    ax.plot(lam, _floats(table, "a_x"), "-", label=r"$x^2$ coefficient")
    ax.plot(lam, _floats(table, "a_p"), "--", label=r"$p^2$ coefficient")
    ax.axhline(0.0, color="0.6", lw=0.6)
    ax.set_ylim(-3, 3)
    ax.set_xlabel(r"$\lambda$")


def _trajectory(table: Table, fig):
    ax1 = fig.add_subplot(211)
    ax1.plot(_floats(table, "theta"), _floats(table, "phi"), "-")
    ax1.set_xlabel(r"$\theta$")
    ax1.set_ylabel(r"$\phi$")
    ax2 = fig.add_subplot(212)
    ax2.plot(_floats(table, "t"), _floats(table, "drift"), "-")
    ax2.set_xlabel("t")
    ax2.set_ylabel("energy drift")


def _gaps(table: Table, fig):
    ax = fig.add_subplot(111)
    lam = _floats(table, "lambda")
    for name in table.columns[1:]:
        ax.plot(lam, _floats(table, name), "-", label=name.replace("parity_gap_", ""))
    ax.axvline(0.5, color="0.6", lw=0.6)
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel("parity-resolved gap")


_PLOTTERS = {
    "energy": (_energy, (4.5, 3.5)),
    "photon_number": (_photon_number, (4.5, 3.5)),
    "statistics": (_statistics, (4.5, 7.0)),
    "xp_coeffs": (_xp, (4.5, 3.5)),
    "trajectory": (_trajectory, (4.5, 6.0)),
    "finite_size_gaps": (_gaps, (4.5, 3.5)),
}


def render(table: Table, directory) -> Path | None:
    """Write ``<name>.png`` next to the table's CSV; ``None`` if the table has no plot."""
    try:
        draw, size = _PLOTTERS[table.name]
    except KeyError:
        return None
    path = Path(directory) / f"{table.name}.png"
    with plt.rc_context(_RC):
        fig = plt.figure(figsize=size)
        try:
            draw(table, fig)
            for ax in fig.axes:
                if ax.get_legend_handles_labels()[0]:
                    ax.legend(frameon=False, fontsize=8)
            fig.tight_layout()
            fig.savefig(path)
        finally:
            plt.close(fig)
    return path
