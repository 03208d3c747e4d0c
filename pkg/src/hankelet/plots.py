"""Report figures rendered to PNG files (non-interactive backend)."""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .audit.report import STATUS_FAIL, STATUS_INFO, STATUS_PASS  # noqa: E402

# no Software/date chunks, so repeated runs write identical bytes
_PNG_METADATA = {"Software": None}
_COLORS = {STATUS_PASS: "tab:blue", STATUS_FAIL: "tab:red", STATUS_INFO: "tab:gray"}


def _save(fig, path):
    fig.savefig(path, dpi=110, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def ratio_figure(report, path):
    """Ratio per inequality id, one marker per entry, with the pass threshold."""
    rows = [e for e in report.entries if e.status in _COLORS and np.isfinite(e.ratio)]
    ids = list(dict.fromkeys(e.id for e in rows))
    fig, ax = plt.subplots(figsize=(9, 4.5))
    for status, color in _COLORS.items():
        sel = [e for e in rows if e.status == status]
        if sel:
            ax.scatter([ids.index(e.id) for e in sel], [e.ratio for e in sel], s=10, color=color,
                       label=status, alpha=0.7)
    ax.axhline(1.0, color="k", lw=0.8)
    ax.set_xticks(range(len(ids)))
    ax.set_xticklabels(ids, rotation=60, ha="right", fontsize=7)
    ax.set_yscale("log")
    ax.set_ylabel("ratio (pass when >= 1 - tol)")
    if rows:
        ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def scalogram_figure(scalogram, path, x_max=12.0):
    """|W(a, x)| over log-scale and position."""
    keep = scalogram.positions <= x_max
    fig, ax = plt.subplots(figsize=(6, 4))
    mesh = ax.pcolormesh(scalogram.positions[keep], scalogram.scales, scalogram.values[:, keep],
                         shading="nearest", cmap="viridis")
    ax.set_yscale("log")
    ax.set_xlabel("position x")
    ax.set_ylabel("scale a")
    ax.set_title(f"|W|  alpha={scalogram.alpha:g}  {scalogram.wavelet}  {scalogram.function}", fontsize=8)
    fig.colorbar(mesh, ax=ax)
    fig.tight_layout()
    return _save(fig, path)


def write_figures(result, out_dir):
    out_dir = Path(out_dir)
    paths = [ratio_figure(result.report, out_dir / "ratios.png")]
    for sc in result.scalograms:
        paths.append(scalogram_figure(sc, out_dir / f"scalogram_alpha{sc.alpha:g}.png"))
    return paths
