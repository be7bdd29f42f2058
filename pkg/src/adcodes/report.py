"""Figure rendering for CLI reports.

Figures are an opt-in side output (--figure PATH); the data always goes to
stdout as text or key=value lines.
"""

from __future__ import annotations

from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .metrics import FidelityResult  # noqa: E402
from .simulate import SimulationResult  # noqa: E402


def save_fidelity_figure(path: str, result: FidelityResult,
                         gamma_max: float | None = None) -> None:
    """Plot the exact fidelity polynomial against its leading-order estimate."""
    n, t = result.total_photons, result.t
    if gamma_max is None:
        gamma_max = min(1.0, 3.0 * (t + 1) / n)
    gammas = np.linspace(0.0, gamma_max, 400)
    coeffs = [float(c) for c in result.coefficients()]
    exact = np.polyval(coeffs[::-1], gammas)
    approx = 1.0 - result.leading_deficit * gammas ** (t + 1)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(gammas, exact, label="exact F(g)")
    ax.plot(gammas, approx, "--",
            label=f"1 - {result.leading_deficit} g^{t + 1}")
    ax.set_xlabel("loss probability g")
    ax.set_ylabel("fidelity")
    ax.set_title(f"N={n}, t={t}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_simulation_figure(path: str, result: SimulationResult,
                           t: int) -> None:
    """Bar chart of realized pattern counts with the exact expectation."""
    items = sorted(result.pattern_counts.items(),
                   key=lambda kv: (sum(kv[0]), kv[0]))
    labels = ["".join(map(str, p)) if all(n < 10 for n in p) else str(p)
              for p, _ in items]
    counts = [c for _, c in items]
    colors = ["tab:green" if sum(p) <= t else "tab:red" for p, _ in items]

    fig, ax = plt.subplots(figsize=(max(6, 0.5 * len(items)), 4))
    ax.bar(range(len(items)), counts, color=colors)
    ax.set_xticks(range(len(items)))
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_xlabel("error pattern (green = correctable)")
    ax.set_ylabel("shots")
    ax.set_title(
        f"gamma={float(Fraction(result.gamma)):g}  shots={result.shots}  "
        f"estimate={result.estimated_fidelity:.6f}  "
        f"exact={float(result.exact_fidelity):.6f}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
