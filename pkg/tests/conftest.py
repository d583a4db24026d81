"""Shared fixtures: the canonical example games and independent oracles."""

from __future__ import annotations

import itertools
from pathlib import Path

import pytest

from argnash import Game, remove, validate_game
from argnash.formats import load_game

FIXTURE_DIR = Path(__file__).resolve().parents[1] / "fixtures" / "games"

STAG_HUNT_PATH = FIXTURE_DIR / "stag_hunt.json"
PENNIES_PATH = FIXTURE_DIR / "matching_pennies.json"
PENNIES3_PATH = FIXTURE_DIR / "matching_pennies_three.json"


@pytest.fixture(scope="session")
def stag_hunt() -> Game:
    return load_game(STAG_HUNT_PATH)


@pytest.fixture(scope="session")
def pennies() -> Game:
    return load_game(PENNIES_PATH)


@pytest.fixture(scope="session")
def pennies3() -> Game:
    return load_game(PENNIES3_PATH)


@pytest.fixture(scope="session")
def one_player_game() -> Game:
    return validate_game(
        {
            "players": ["solo"],
            "strategies": [["a", "b"]],
            "payoffs": [
                {"profile": ["a"], "outcome": [1]},
                {"profile": ["b"], "outcome": [0]},
            ],
        }
    )


def gid(*strategies: str) -> str:
    return "g:" + ",".join(strategies)


def pid(partial: str, strategy: str) -> str:
    return f"p:[{partial}]/{strategy}"


def vid(partial: str, better: str, worse: str) -> str:
    return f"v:[{partial}]/{better}>{worse}"


# The common block of every stag-hunt preferred extension: all four
# valuation arguments plus the one best-response recommendation per cluster.
STAG_CORE = frozenset(
    {
        pid("stag,_", "stag"),
        pid("_,stag", "stag"),
        pid("hare,_", "hare"),
        pid("_,hare", "hare"),
        vid("stag,_", "stag", "hare"),
        vid("_,stag", "stag", "hare"),
        vid("hare,_", "hare", "stag"),
        vid("_,hare", "hare", "stag"),
    }
)

PENNIES_PREFERRED = frozenset(
    {
        pid("heads,_", "tails"),
        pid("_,tails", "tails"),
        pid("tails,_", "heads"),
        pid("_,heads", "heads"),
        vid("heads,_", "tails", "heads"),
        vid("_,tails", "tails", "heads"),
        vid("tails,_", "heads", "tails"),
        vid("_,heads", "heads", "tails"),
    }
)


def nash_double_loop(game: Game) -> tuple[tuple[str, ...], ...]:
    """Deviation-by-deviation equilibrium check, independent of the library's
    marking implementation."""
    found = []
    for profile in game.profiles():
        stable = True
        for i in range(game.n_players):
            partial = remove(profile, i)
            for s in game.menu(i):
                if game.strictly_prefers(i, profile, partial.fill(s)):
                    stable = False
        if stable:
            found.append(profile)
    return tuple(sorted(found))


def random_game(rng, n_players=None, menu_sizes=None, style=None) -> Game:
    """A random small game; ``style`` controls how tie-prone payoffs are."""
    n = n_players if n_players is not None else rng.choice([2, 2, 2, 3])
    sizes = menu_sizes if menu_sizes is not None else [rng.choice([2, 3]) for _ in range(n)]
    menus = [[f"s{i}x{k}" for k in range(sizes[i])] for i in range(n)]
    style = style if style is not None else rng.choice(["spread", "tight", "coin"])
    pool = {"spread": range(-3, 4), "tight": (-1, 0, 1), "coin": (0, 1)}[style]
    payoffs = [
        {
            "profile": list(profile),
            "outcome": [rng.choice(list(pool)) for _ in range(n)],
        }
        for profile in itertools.product(*menus)
    ]
    return validate_game(
        {
            "players": [f"P{i}" for i in range(n)],
            "strategies": menus,
            "payoffs": payoffs,
        }
    )


_ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        _ACCEPTANCE_RESULTS[name] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and report.skipped:
        _ACCEPTANCE_RESULTS[name] = "SKIP"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(_ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{_ACCEPTANCE_RESULTS[name]}  {name}")
