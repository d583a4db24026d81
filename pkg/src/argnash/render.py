"""Matplotlib renderings: the argument graph and the payoff matrix.

The graph uses a fixed three-ring layout (profiles inside, preferences in
the middle, valuations outside) so runs are reproducible without a layout
engine.  Meta-attacks are drawn as dashed red arrows landing on a small
square anchor at the midpoint of the attacked edge.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .build import GameFramework
from .game import Game, Profile

_KIND_COLORS = {"game": "#7fb3d5", "preference": "#f7dc6f", "valuation": "#7dcea0"}
_KIND_RADII = {"game": 1.0, "preference": 2.2, "valuation": 3.4}


def _ring_positions(framework: GameFramework) -> dict[str, tuple[float, float]]:
    positions: dict[str, tuple[float, float]] = {}
    for kind in ("game", "preference", "valuation"):
        ids = sorted(
            a for a in framework.provenance if framework.kind_of(a) == kind
        )
        radius = _KIND_RADII[kind]
        for k, arg_id in enumerate(ids):
            angle = 2 * math.pi * k / max(len(ids), 1)
            positions[arg_id] = (radius * math.cos(angle), radius * math.sin(angle))
    return positions


def render_framework_figure(
    framework: GameFramework,
    path: str | Path,
    members: frozenset[str] | None = None,
) -> None:
    """Draw the framework to an image file, optionally dimming non-members."""
    positions = _ring_positions(framework)
    fig, ax = plt.subplots(figsize=(9, 9))
    ax.set_aspect("equal")
    ax.axis("off")

    meta_by_attack: dict[tuple[str, str], list[str]] = {}
    for z, attack in sorted(framework.eaf.meta_attacks):
        meta_by_attack.setdefault(attack, []).append(z)

    def dimmed(arg_id: str) -> bool:
        return members is not None and arg_id not in members

    for src, tgt in sorted(framework.eaf.attacks):
        x1, y1 = positions[src]
        x2, y2 = positions[tgt]
        alpha = 0.15 if dimmed(src) or dimmed(tgt) else 0.8
        ax.add_patch(
            FancyArrowPatch(
                (x1, y1),
                (x2, y2),
                arrowstyle="-|>",
                mutation_scale=9,
                color="black",
                alpha=alpha,
                shrinkA=10,
                shrinkB=10,
                linewidth=0.8,
            )
        )
        if (src, tgt) in meta_by_attack:
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            ax.plot([mx], [my], marker="s", markersize=4, color="#444444", alpha=alpha)
            for z in meta_by_attack[(src, tgt)]:
                zx, zy = positions[z]
                ax.add_patch(
                    FancyArrowPatch(
                        (zx, zy),
                        (mx, my),
                        arrowstyle="-|>",
                        mutation_scale=8,
                        color="#c0392b",
                        linestyle="--",
                        alpha=0.15 if dimmed(z) else 0.7,
                        shrinkA=10,
                        shrinkB=2,
                        linewidth=0.8,
                    )
                )

    for arg_id, (x, y) in positions.items():
        kind = framework.kind_of(arg_id)
        face = "#eeeeee" if dimmed(arg_id) else _KIND_COLORS[kind]
        ax.scatter([x], [y], s=650, color=face, edgecolors="black", zorder=3)
        ax.annotate(
            framework.resolve(arg_id).label(),
            (x, y),
            fontsize=6,
            ha="center",
            va="center",
            zorder=4,
            color="#999999" if dimmed(arg_id) else "black",
        )

    limit = _KIND_RADII["valuation"] + 0.8
    ax.set_xlim(-limit, limit)
    ax.set_ylim(-limit, limit)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_payoff_matrix(
    game: Game, nash: tuple[Profile, ...], path: str | Path
) -> None:
    """Two-player payoff table with equilibrium cells highlighted."""
    if game.n_players != 2:
        raise ValueError("payoff matrix rendering supports two-player games only")
    rows = game.menu(0)
    cols = game.menu(1)
    nash_set = set(nash)

    fig, ax = plt.subplots(figsize=(1.8 * len(cols) + 2, 1.2 * len(rows) + 2))
    ax.axis("off")
    cell_text = []
    cell_colors = []
    for r in rows:
        text_row = []
        color_row = []
        for c in cols:
            outcome = game.effect_table[(r, c)]
            text_row.append("(" + ", ".join(str(o) for o in outcome) + ")")
            color_row.append("#b7e4c7" if (r, c) in nash_set else "white")
        cell_text.append(text_row)
        cell_colors.append(color_row)
    table = ax.table(
        cellText=cell_text,
        cellColours=cell_colors,
        rowLabels=list(rows),
        colLabels=list(cols),
        loc="center",
        cellLoc="center",
    )
    table.scale(1, 2)
    ax.set_title(
        f"{game.players[0]} (rows) vs {game.players[1]} (columns); "
        f"highlighted cells are equilibria",
        fontsize=10,
    )
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
