"""Figure rendering smoke checks (headless backend)."""

from __future__ import annotations

import pytest

from argnash import assemble_framework, solve_game
from argnash.render import render_framework_figure, render_payoff_matrix


def test_framework_figure(stag_hunt, tmp_path):
    framework = assemble_framework(stag_hunt)
    path = tmp_path / "framework.png"
    render_framework_figure(framework, path)
    data = path.read_bytes()
    assert data[:4] == b"\x89PNG"
    assert len(data) > 10_000


def test_framework_figure_with_members(stag_hunt, tmp_path):
    solved = solve_game(stag_hunt)
    path = tmp_path / "extension.png"
    render_framework_figure(
        solved.framework, path, members=solved.report.preferred[0].members
    )
    assert path.read_bytes()[:4] == b"\x89PNG"


def test_payoff_matrix(stag_hunt, tmp_path):
    solved = solve_game(stag_hunt)
    path = tmp_path / "matrix.png"
    render_payoff_matrix(stag_hunt, solved.report.nash, path)
    assert path.read_bytes()[:4] == b"\x89PNG"


def test_payoff_matrix_rejects_three_players(one_player_game, tmp_path):
    with pytest.raises(ValueError, match="two-player"):
        render_payoff_matrix(one_player_game, (), tmp_path / "m.png")
