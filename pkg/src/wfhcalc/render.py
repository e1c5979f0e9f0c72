"""Text and figure renderings of an E1 page and of filtered dimensions.

Figures go through matplotlib with the Agg backend. SVG output is made
byte-stable by fixing the hash salt, dropping the date stamp and keeping text
as text.
"""

from __future__ import annotations

import io
from fractions import Fraction
from typing import TYPE_CHECKING

from .rational import fmt

if TYPE_CHECKING:
    from .mbss import SpectralPage, WfhReport


def ascii_page(page: SpectralPage) -> str:
    """Dot grid: column p across, total degree up.

    ``o`` is a surviving generator, ``?`` an undetermined one, a digit a
    stack of several, ``.`` nothing.
    """
    cells: dict[tuple[int, int], list[bool]] = {}
    for col in page.columns:
        for g in col.generators:
            cells.setdefault((col.p, g.degree), []).append(bool(g.survives))
    if not cells:
        return "(empty page)\n"
    degrees = [d for _, d in cells]
    lo, hi = min(degrees), max(degrees)
    ps = [c.p for c in page.columns]
    width = max(3, max(len(str(p)) for p in ps) + 1)
    label_w = max(len(str(lo)), len(str(hi))) + 1
    lines = [f"{page.label}  E1 page (total degree vs column p)"]
    for d in range(hi, lo - 1, -1):
        row = []
        for p in ps:
            stack = cells.get((p, d))
            if not stack:
                mark = "."
            elif not all(stack):
                mark = "?"
            elif len(stack) == 1:
                mark = "o"
            else:
                mark = str(len(stack)) if len(stack) < 10 else "+"
            row.append(mark.center(width))
        lines.append(f"{d:>{label_w}} |" + "".join(row).rstrip())
    lines.append(" " * label_w + " +" + "-" * (width * len(ps)))
    lines.append(" " * label_w + "  " + "".join(str(p).center(width) for p in ps).rstrip() + "   p")
    lines.append(" " * label_w + "  action/pi: " + " ".join(fmt(c.action) for c in page.columns))
    return "\n".join(lines) + "\n"


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams.update({
        "svg.hashsalt": "wfhcalc",
        "svg.fonttype": "none",
        "font.size": 9,
        "axes.linewidth": 0.6,
    })
    return plt


def _save(fig, fmt_name: str) -> bytes:
    buf = io.BytesIO()
    if fmt_name == "svg":
        fig.savefig(buf, format="svg", metadata={"Date": None})
    else:
        fig.savefig(buf, format=fmt_name, dpi=150, metadata={"Software": None})
    return buf.getvalue()


def page_figure(page: SpectralPage, fmt_name: str = "svg") -> bytes:
    """Static dot grid of the E1 page; filled dots survive, hollow ones are undetermined."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(max(3.0, 0.6 * len(page.columns) + 1.5), 4.0))
    seen: dict[tuple[int, int], int] = {}
    for col in page.columns:
        for g in col.generators:
            k = seen.get((col.p, g.degree), 0)
            seen[(col.p, g.degree)] = k + 1
            x = col.p + 0.12 * k
            if g.survives:
                ax.plot([x], [g.degree], "o", color="black", markersize=5)
            else:
                ax.plot([x], [g.degree], "o", markerfacecolor="white", markeredgecolor="black", markersize=5)
    ps = [c.p for c in page.columns]
    ax.set_xticks(ps)
    ax.set_xlim(min(ps) - 0.5, max(ps) + 0.5)
    if seen:
        degs = [d for _, d in seen]
        ax.set_ylim(min(degs) - 1, max(degs) + 1)
    ax.grid(True, linewidth=0.3, color="0.8")
    ax.set_xlabel("p")
    ax.set_ylabel("total degree p+q")
    ax.set_title(page.label)
    fig.tight_layout()
    data = _save(fig, fmt_name)
    plt.close(fig)
    return data


def growth_figure(report: WfhReport, slope: Fraction | None = None, fmt_name: str = "svg") -> bytes:
    """Filtered dimension bounds against the action cutoff, with the slope line."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    cs = [float(c) for c, _, _ in report.filtered_dims]
    lower = [lo for _, lo, _ in report.filtered_dims]
    upper = [up for _, _, up in report.filtered_dims]
    ax.step(cs, upper, where="post", color="0.6", linewidth=0.8, label="upper")
    ax.step(cs, lower, where="post", color="black", linewidth=1.0, label="lower")
    if slope is not None and cs:
        ax.plot([0, cs[-1]], [0, float(slope) * cs[-1]], "--", color="0.3", linewidth=0.8,
                label=f"slope {fmt(slope)} per pi")
    ax.set_xlabel("action cutoff / pi")
    ax.set_ylabel("dim of filtered homology")
    ax.set_title(report.label)
    ax.legend(frameon=False, loc="upper left")
    fig.tight_layout()
    data = _save(fig, fmt_name)
    plt.close(fig)
    return data
