"""Figure data for the two-word region: curve families as CSV rows, and an
optional rendered image written next to the CSV."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .twoword import (
    TwoWordPoint,
    designolle_curve,
    obg_curve,
    two_word_membership,
)

CURVE_SAMPLES = 512
REGION_TOL = 1e-10

CSV_HEADER = "family,parameter,x,y,region"

__all__ = [
    "CURVE_SAMPLES",
    "CSV_HEADER",
    "FigureRow",
    "FIGURE_NAMES",
    "region_label",
    "figure_rows",
    "rows_to_csv",
    "write_csv",
    "render_png",
]


@dataclass(frozen=True)
class FigureRow:
    family: str
    parameter: float
    x: float
    y: float
    region: str


def region_label(x: float, y: float, tol: float = REGION_TOL) -> str:
    """classical on the diagonal segment, quantum elsewhere in the region,
    outside beyond it."""
    point = TwoWordPoint(x=x, y=y)
    verdict = two_word_membership(point, tol=tol)
    if verdict == "outside":
        return "outside"
    if abs(x - y) <= tol and -tol <= y <= 1.0 + tol:
        return "classical"
    return "quantum"


def _two_word_rows(samples: int) -> list[FigureRow]:
    rows: list[FigureRow] = []
    ts = np.linspace(0.0, 1.0, samples)
    for t in ts:
        t = float(t)
        rows.append(FigureRow("classical", t, t, t, region_label(t, t)))
    for t in ts:
        t = float(t)
        rows.append(FigureRow("diagonal", t, t, t, region_label(t, t)))
    for t in ts:
        t = float(t)
        x = t * t
        rows.append(FigureRow("parabola", t, x, t, region_label(x, t)))
    thetas = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    for theta in thetas:
        theta = float(theta)
        p = obg_curve(theta)
        rows.append(FigureRow("obg", theta, p.x, p.y, region_label(p.x, p.y)))
    for omega in ts:
        omega = float(omega)
        p = designolle_curve(omega)
        rows.append(FigureRow("designolle", omega, p.x, p.y, region_label(p.x, p.y)))
    return rows


FIGURE_NAMES = ("two-word",)


def figure_rows(name: str = "two-word", samples: int = CURVE_SAMPLES) -> list[FigureRow]:
    if name not in FIGURE_NAMES:
        raise DomainError(f"unknown figure {name!r}; available: {FIGURE_NAMES}")
    if samples < 2:
        raise DomainError(f"need at least 2 samples, got {samples}")
    return _two_word_rows(samples)


def rows_to_csv(rows) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            f"{row.family},{row.parameter:.17g},{row.x:.17g},{row.y:.17g},{row.region}"
        )
    return "\n".join(lines) + "\n"


def write_csv(rows, path) -> None:
    with open(path, "w") as fh:
        fh.write(rows_to_csv(rows))


def render_png(rows, path) -> None:
    """Draw the region with its curve families and save a PNG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.0, 4.4))
    ys = np.linspace(0.0, 1.0, 400)
    ax.fill_betweenx(ys, ys * ys, ys, color="#9ecae1", alpha=0.5, linewidth=0,
                     label="normalized pairs")
    styles = {
        "classical": dict(color="#08306b", lw=2.2, label="classical segment"),
        "diagonal": dict(color="#08306b", lw=0.8, ls=":", label=None),
        "parabola": dict(color="#2171b5", lw=1.4, ls="--", label="x = y²"),
        "obg": dict(color="#cb181d", lw=1.4, label="phase-star pairs"),
        "designolle": dict(color="#238b45", lw=1.4, label="interpolated pair"),
    }
    by_family: dict[str, list] = {}
    for row in rows:
        by_family.setdefault(row.family, []).append(row)
    for family, family_rows in by_family.items():
        style = dict(styles.get(family, {}))
        label = style.pop("label", family)
        xs = [r.x for r in family_rows]
        ys_f = [r.y for r in family_rows]
        ax.plot(xs, ys_f, label=label, **style)
    ax.set_xlabel("x = Δ(1,2,1,2)")
    ax.set_ylabel("y = Δ(1,1,2,2)")
    ax.set_xlim(-0.02, 1.02)
    ax.set_ylim(-0.02, 1.02)
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
