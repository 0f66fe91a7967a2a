"""Figures for suite reports and spherical functions, written straight to files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .repharness import SphericalParams, phi_from_spectrum, spectrum  # noqa: E402


def plot_suite_report(report: dict, path: str | Path) -> Path:
    """Per-trial outcome strip, plus the numeric defect when the suite reports one."""
    path = Path(path)
    results = report["results"]
    idx = [r["trial"] for r in results]
    ok = [r["pass"] for r in results]
    defects = [r["detail"].get("defect") for r in results]
    has_defect = any(d is not None for d in defects)

    fig, axes = plt.subplots(2 if has_defect else 1, 1, figsize=(7, 4.5 if has_defect else 2.4),
                             squeeze=False)
    ax = axes[0][0]
    ax.bar(idx, [1] * len(idx), color=["tab:green" if x else "tab:red" for x in ok], width=0.9)
    ax.set_yticks([])
    ax.set_xlabel("trial")
    verdict = "pass" if report["pass"] else f"{report['failures']} failing"
    ax.set_title(f"{report['suite']} (seed {report['seed']}): {verdict}")
    if has_defect:
        ax2 = axes[1][0]
        vals = np.array([d if d is not None else np.nan for d in defects], dtype=float)
        shown = np.where(vals > 0, vals, np.nan)
        ax2.semilogy(idx, shown, "o", color="tab:red")
        ax2.set_xlabel("trial")
        ax2.set_ylabel("max |lhs - rhs|")
        if np.all(np.isnan(shown)):
            ax2.text(0.5, 0.5, "all defects are exactly zero", transform=ax2.transAxes,
                     ha="center", va="center")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_spherical(params: SphericalParams, g, path: str | Path, t_max: float = 1.5,
                   samples: int = 301) -> Path:
    """Phi along ``u diag(lam**t) v`` where ``g = u diag(lam) v``.

    The curve starts at an orthogonal matrix (t = 0) and passes through
    ``g`` at t = 1; the sign of the determinant stays fixed along it.
    """
    path = Path(path)
    sv, abs_det, sign = spectrum(g)
    ts = np.linspace(0.0, t_max, samples)
    vals = np.array([phi_from_spectrum(params, sv ** t, abs_det ** t, sign) for t in ts])
    at_g = phi_from_spectrum(params, sv, abs_det, sign)

    fig, ax = plt.subplots(figsize=(7, 3.6))
    ax.plot(ts, vals.real, label="Re")
    ax.plot(ts, vals.imag, label="Im")
    ax.plot(ts, np.abs(vals), "--", label="|Phi|")
    ax.plot([1.0], [at_g.real], "ko")
    ax.axvline(1.0, color="0.7", lw=0.8)
    ax.set_xlabel("t (singular values raised to t)")
    ax.set_title(f"s = {list(params.s)}, a = {params.a}, sigma = {params.sigma}")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
