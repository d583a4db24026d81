"""Structured enumeration, equilibrium extraction, and cross-validation."""

from __future__ import annotations

import random

import pytest

from argnash import (
    CandidateCapError,
    InternalConsistencyError,
    assemble_framework,
    cross_validate,
    enumerate_extensions_bruteforce,
    enumerate_preferred_structured,
    nash_equilibria_bruteforce,
    nash_from_framework,
    solve_game,
    stable_from_preferred,
    validate_game,
)

from conftest import PENNIES_PREFERRED, STAG_CORE, gid, random_game


@pytest.fixture(scope="module")
def stag_fw(stag_hunt):
    return assemble_framework(stag_hunt)


@pytest.fixture(scope="module")
def pennies_fw(pennies):
    return assemble_framework(pennies)


@pytest.fixture(scope="module")
def pennies3_fw(pennies3):
    return assemble_framework(pennies3)


def test_structured_preferred_stag(stag_fw):
    extensions = enumerate_preferred_structured(stag_fw)
    assert sorted(e.members for e in extensions) == sorted(
        [STAG_CORE | {gid("hare", "hare")}, STAG_CORE | {gid("stag", "stag")}]
    )


def test_structured_preferred_pennies(pennies_fw):
    extensions = enumerate_preferred_structured(pennies_fw)
    assert [e.members for e in extensions] == [PENNIES_PREFERRED]


def test_structured_preferred_three_strategy(pennies3_fw):
    extensions = enumerate_preferred_structured(pennies3_fw)
    assert len(extensions) == 8
    assert len({e.members for e in extensions}) == 8
    for ext in extensions:
        assert not any(m.startswith("g:") for m in ext.members)


def test_nash_from_framework(stag_fw, pennies_fw, pennies3_fw):
    assert nash_from_framework(stag_fw) == (("hare", "hare"), ("stag", "stag"))
    assert nash_from_framework(pennies_fw) == ()
    assert nash_from_framework(pennies3_fw) == ()


def test_nash_matches_oracle_on_fixtures(stag_hunt, pennies, pennies3):
    for game in (stag_hunt, pennies, pennies3):
        framework = assemble_framework(game)
        assert nash_from_framework(framework) == nash_equilibria_bruteforce(game)


def test_stable_from_preferred_classes(stag_fw):
    preferred = enumerate_preferred_structured(stag_fw)
    stable, classes = stable_from_preferred(stag_fw, preferred)
    assert len(stable) == 2
    assert [c.profile for c in classes] == [("hare", "hare"), ("stag", "stag")]
    assert all(len(c.extensions) == 1 for c in classes)


def test_stable_empty_for_pennies(pennies_fw, pennies3_fw):
    for framework in (pennies_fw, pennies3_fw):
        preferred = enumerate_preferred_structured(framework)
        stable, classes = stable_from_preferred(framework, preferred)
        assert stable == ()
        assert classes == ()


def test_candidate_cap(pennies3_fw):
    # Six clusters with ties force more than four assignments.
    with pytest.raises(CandidateCapError, match="cap"):
        enumerate_preferred_structured(pennies3_fw, assignment_cap=4)


def test_constant_game_is_heavily_tied():
    game = validate_game(
        {
            "players": ["A", "B"],
            "strategies": [["x", "y", "z"], ["x", "y", "z"]],
            "payoffs": [
                {"profile": [a, b], "outcome": [0, 0]}
                for a in "xyz"
                for b in "xyz"
            ],
        }
    )
    framework = assemble_framework(game)
    # Every cluster ties completely: 3 choices in each of 6 clusters.
    with pytest.raises(CandidateCapError):
        enumerate_preferred_structured(framework, assignment_cap=100)
    extensions = enumerate_preferred_structured(framework, assignment_cap=1000)
    assert len(extensions) >= 3 ** 6  # tied assignments can endorse profiles
    # Every profile survives as an equilibrium, without any enumeration.
    assert len(nash_from_framework(framework)) == 9
    assert nash_from_framework(framework) == nash_equilibria_bruteforce(game)


def test_constant_two_by_two_cross_validates_exactly():
    # Small enough for the generic engine: ties everywhere, checked
    # extension-for-extension against brute force.
    game = validate_game(
        {
            "players": ["A", "B"],
            "strategies": [["x", "y"], ["x", "y"]],
            "payoffs": [
                {"profile": [a, b], "outcome": [0, 0]} for a in "xy" for b in "xy"
            ],
        }
    )
    report = cross_validate(game, size_cap=22)
    assert report.generic_compared
    assert len(report.nash) == 4


def test_solve_game_structured_vs_generic(stag_hunt, pennies):
    for game in (stag_hunt, pennies):
        structured = solve_game(game, engine="structured")
        generic = solve_game(game, engine="generic")
        assert [e.members for e in structured.report.preferred] == [
            e.members for e in generic.report.preferred
        ]
        assert [e.members for e in structured.report.stable] == [
            e.members for e in generic.report.stable
        ]
        assert structured.report.nash == generic.report.nash


def test_every_preferred_contains_all_valuations(stag_fw, pennies3_fw):
    for framework in (stag_fw, pennies3_fw):
        valuations = set(framework.valuation_argument_ids())
        for ext in enumerate_preferred_structured(framework):
            assert valuations <= ext.members


def test_cluster_uniqueness_in_preferred(pennies3_fw):
    for ext in enumerate_preferred_structured(pennies3_fw):
        for cluster in pennies3_fw.clusters:
            assert len(set(cluster.member_ids) & ext.members) == 1


def test_cross_validate_fixtures(stag_hunt, pennies, pennies3, one_player_game):
    report = cross_validate(stag_hunt, size_cap=22)
    assert report.generic_compared
    assert report.nash == (("hare", "hare"), ("stag", "stag"))
    report = cross_validate(pennies)
    assert report.nash == ()
    report = cross_validate(pennies3)
    assert not report.generic_compared  # 39 arguments exceed the cap
    assert report.preferred_count == 8
    cross_validate(one_player_game)


def test_cross_validate_random_games():
    rng = random.Random(20240809)
    for _ in range(200):
        sizes = [rng.choice([2, 3]), rng.choice([2, 3])]
        game = random_game(rng, n_players=2, menu_sizes=sizes, style="spread")
        cross_validate(game)


def test_affine_rescaling_preserves_extension_content():
    rng = random.Random(99)
    for _ in range(20):
        game = random_game(rng, n_players=2, menu_sizes=[2, 2])
        framework = assemble_framework(game)
        scaled_payoffs = [
            {
                "profile": list(p),
                "outcome": [
                    3 * game.effect_table[p][0] + 7,
                    game.effect_table[p][1],
                ],
            }
            for p in game.profiles()
        ]
        scaled = validate_game(
            {
                "players": list(game.players),
                "strategies": [list(m) for m in game.strategies],
                "payoffs": scaled_payoffs,
            }
        )
        scaled_fw = assemble_framework(scaled)
        # Valuation arguments are untouched because strict comparisons are.
        assert set(framework.valuation_argument_ids()) == set(
            scaled_fw.valuation_argument_ids()
        )
        original = {
            frozenset(m for m in e.members if m.startswith("g:"))
            for e in enumerate_preferred_structured(framework)
        }
        rescaled = {
            frozenset(m for m in e.members if m.startswith("g:"))
            for e in enumerate_preferred_structured(scaled_fw)
        }
        assert original == rescaled


def test_internal_consistency_error_formats_counterexample(stag_hunt):
    framework = assemble_framework(stag_hunt)
    preferred = enumerate_preferred_structured(framework)
    # Feeding a wrong extension through the stable filter must fail loudly.
    broken = preferred[0]
    tampered = type(broken)(
        members=frozenset(
            m for m in broken.members if not m.startswith("p:")
        ) | {gid("stag", "stag"), gid("hare", "hare")},
        semantics="preferred",
    )
    with pytest.raises(InternalConsistencyError):
        stable_from_preferred(framework, (tampered,))
