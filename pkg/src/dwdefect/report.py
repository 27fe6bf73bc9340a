"""Figures for fuzz runs, rendered off-screen to image files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .moves import FuzzReport  # noqa: E402


def fuzz_figure(rep: FuzzReport, path: str, title: str = "") -> None:
    """Complex size and the tracked values along the applied moves."""
    kept = [s for s in rep.steps if s.status in ("initial", "applied")]
    xs = list(range(len(kept)))
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 5.5), sharex=True)
    ax1.plot(xs, [s.n_vertices for s in kept], marker="o", ms=3, label="vertices")
    ax1.plot(xs, [s.n_top for s in kept], marker="s", ms=3, label="top simplices")
    ax1.set_ylabel("size")
    ax1.legend(loc="upper left", fontsize=8)

    if any(s.invariant is not None for s in kept):
        ax2.plot(xs, [s.invariant for s in kept], marker="o", ms=3, label="counting invariant")
    if any(s.state_sum is not None for s in kept):
        vals = [s.state_sum.to_complex() for s in kept]
        ax2.plot(xs, [v.real for v in vals], marker="x", ms=4, ls="--", label="state sum (re)")
        if any(abs(v.imag) > 1e-12 for v in vals):
            ax2.plot(xs, [v.imag for v in vals], marker="+", ms=4, ls=":", label="state sum (im)")
    ax2.set_xlabel("applied move")
    ax2.set_ylabel("value")
    ax2.legend(loc="upper left", fontsize=8)
    status = "constant" if rep.ok else "CHANGED"
    fig.suptitle(f"{title} seed={rep.seed} moves={rep.applied} values {status}".strip(), fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
