"""Compile a normal-form game into a three-level argumentation framework.

Level zero holds one argument per full strategy profile, all mutually
attacking (only one joint strategy can actually be played).  Level one holds
preference arguments ("given the others' strategies, the remaining player
should play s"), attacking each other within a cluster, where a cluster is
the set of preference arguments sharing one partial profile.  Level two
holds valuation arguments ("given the others' strategies, s beats s' for the
remaining player"), one per strict comparison inside a cluster.

Meta-attacks wire the levels together: a preference argument suppresses
every attack against the profile it recommends coming from a sibling
profile, and a valuation argument suppresses the attack from the worse
recommendation onto the better one.

Argument ids are canonical strings ("g:stag,hare", "p:[stag,_]/stag",
"v:[stag,_]/stag>hare") so that exports, fixtures and dialogue referents are
stable across runs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping

from .eaf import Attack, EAFramework, MetaAttack
from .game import Game, PartialProfile, Profile

GAME_PREFIX = "g:"
PREFERENCE_PREFIX = "p:"
VALUATION_PREFIX = "v:"


@dataclass(frozen=True)
class GameArgument:
    """One argument per full strategy profile."""

    profile: Profile

    @property
    def id(self) -> str:
        return GAME_PREFIX + ",".join(self.profile)

    def label(self) -> str:
        return "[" + ",".join(self.profile) + "]"


@dataclass(frozen=True)
class PreferenceArgument:
    """Given the partial profile, the hole player should play ``strategy``."""

    partial: PartialProfile
    strategy: str

    @property
    def id(self) -> str:
        return f"{PREFERENCE_PREFIX}{self.partial.render()}/{self.strategy}"

    def label(self) -> str:
        return f"({self.partial.render()}, {self.strategy})"


@dataclass(frozen=True)
class ValuationArgument:
    """Given the partial profile, ``better`` strictly beats ``worse``."""

    partial: PartialProfile
    better: str
    worse: str

    @property
    def id(self) -> str:
        return f"{VALUATION_PREFIX}{self.partial.render()}/{self.better}>{self.worse}"

    def label(self) -> str:
        return f"({self.partial.render()}, {self.better} > {self.worse})"


Argument = GameArgument | PreferenceArgument | ValuationArgument


@dataclass(frozen=True)
class Cluster:
    """All preference arguments sharing one partial profile."""

    partial: PartialProfile
    player: int
    strategies: tuple[str, ...]

    @property
    def member_ids(self) -> tuple[str, ...]:
        return tuple(
            PreferenceArgument(self.partial, s).id for s in self.strategies
        )


@dataclass(frozen=True)
class AttackSets:
    """The four attack families, all direction-explicit."""

    profile_rivalry: tuple[Attack, ...]      # game arg vs game arg
    cluster_rivalry: tuple[Attack, ...]      # preference args within a cluster
    recommendation_shields: tuple[MetaAttack, ...]  # preference arg onto profile attack
    valuation_shields: tuple[MetaAttack, ...]       # valuation arg onto cluster attack


@dataclass(frozen=True, eq=False)
class GameFramework:
    """Assembled framework plus everything needed to map ids back to the game."""

    game: Game
    eaf: EAFramework
    provenance: Mapping[str, Argument]
    clusters: tuple[Cluster, ...]
    attack_sets: AttackSets

    def resolve(self, argument_id: str) -> Argument:
        return self.provenance[argument_id]

    def game_argument_ids(self) -> tuple[str, ...]:
        return tuple(
            a for a in sorted(self.provenance) if a.startswith(GAME_PREFIX)
        )

    def valuation_argument_ids(self) -> tuple[str, ...]:
        return tuple(
            a for a in sorted(self.provenance) if a.startswith(VALUATION_PREFIX)
        )

    def kind_of(self, argument_id: str) -> str:
        arg = self.provenance[argument_id]
        if isinstance(arg, GameArgument):
            return "game"
        if isinstance(arg, PreferenceArgument):
            return "preference"
        return "valuation"


@dataclass(frozen=True)
class ConditionViolation:
    """Two opposing meta-attacked attacks whose sources fail to clash."""

    first: MetaAttack
    second: MetaAttack
    missing: tuple[Attack, ...]


@dataclass(frozen=True)
class ArgumentCounts:
    game_count: int
    preference_count: int
    valuation_count: int
    bound: int
    valuation_bound: int


def build_game_arguments(game: Game) -> tuple[GameArgument, ...]:
    """One argument per full profile, in cartesian-product order."""
    return tuple(GameArgument(p) for p in game.profiles())


def build_preference_arguments(
    game: Game,
) -> tuple[tuple[PreferenceArgument, ...], tuple[Cluster, ...]]:
    """One argument per (partial profile, available strategy), clustered."""
    args: list[PreferenceArgument] = []
    clusters: list[Cluster] = []
    for i in range(game.n_players):
        for partial in game.partial_profiles(i):
            clusters.append(Cluster(partial, i, game.menu(i)))
            for s in game.menu(i):
                args.append(PreferenceArgument(partial, s))
    return tuple(args), tuple(clusters)


def build_valuation_arguments(game: Game) -> tuple[ValuationArgument, ...]:
    """One argument per strict within-cluster comparison; ties yield none."""
    args: list[ValuationArgument] = []
    for i in range(game.n_players):
        for partial in game.partial_profiles(i):
            for better, worse in itertools.permutations(game.menu(i), 2):
                if game.strictly_prefers(i, partial.fill(worse), partial.fill(better)):
                    args.append(ValuationArgument(partial, better, worse))
    return tuple(args)


def build_attacks(
    game: Game,
    game_args: tuple[GameArgument, ...],
    pref_args: tuple[PreferenceArgument, ...],
    val_args: tuple[ValuationArgument, ...],
) -> AttackSets:
    """All four attack families for the given argument sets."""
    rivalry = tuple(
        (a.id, b.id)
        for a in game_args
        for b in game_args
        if a.profile != b.profile
    )

    by_cluster: dict[PartialProfile, list[PreferenceArgument]] = {}
    for p in pref_args:
        by_cluster.setdefault(p.partial, []).append(p)
    cluster_rivalry = tuple(
        (a.id, b.id)
        for members in by_cluster.values()
        for a in members
        for b in members
        if a.strategy != b.strategy
    )

    # A preference argument shields the profile it recommends: it attacks
    # every attack on that profile coming from a sibling profile.
    shields: list[MetaAttack] = []
    for p in pref_args:
        recommended = p.partial.fill(p.strategy)
        rec_id = GameArgument(recommended).id
        for s in game.menu(p.partial.hole):
            if s == p.strategy:
                continue
            rival_id = GameArgument(p.partial.fill(s)).id
            shields.append((p.id, (rival_id, rec_id)))

    # A valuation argument kills the attack from the worse recommendation
    # onto the better one within its cluster.
    val_shields = tuple(
        (
            v.id,
            (
                PreferenceArgument(v.partial, v.worse).id,
                PreferenceArgument(v.partial, v.better).id,
            ),
        )
        for v in val_args
    )

    return AttackSets(
        profile_rivalry=rivalry,
        cluster_rivalry=cluster_rivalry,
        recommendation_shields=tuple(shields),
        valuation_shields=val_shields,
    )


def assemble_framework(game: Game) -> GameFramework:
    """Build the full three-level framework with provenance."""
    game_args = build_game_arguments(game)
    pref_args, clusters = build_preference_arguments(game)
    val_args = build_valuation_arguments(game)
    attack_sets = build_attacks(game, game_args, pref_args, val_args)

    provenance: dict[str, Argument] = {}
    for arg in (*game_args, *pref_args, *val_args):
        provenance[arg.id] = arg

    eaf = EAFramework(
        arguments=frozenset(provenance),
        attacks=frozenset(attack_sets.profile_rivalry)
        | frozenset(attack_sets.cluster_rivalry),
        meta_attacks=frozenset(attack_sets.recommendation_shields)
        | frozenset(attack_sets.valuation_shields),
    )
    return GameFramework(
        game=game,
        eaf=eaf,
        provenance=provenance,
        clusters=clusters,
        attack_sets=attack_sets,
    )


def check_eaf_condition(
    framework: EAFramework,
) -> tuple[bool, tuple[ConditionViolation, ...]]:
    """Verify the coherence condition on opposing meta-attacked attacks.

    Whenever (z, (x, y)) and (z', (y, x)) are both meta-attacks, z and z'
    must attack each other.  Returns witnesses for every violation.
    """
    by_attack: dict[Attack, list[str]] = {}
    for z, attack in framework.meta_attacks:
        by_attack.setdefault(attack, []).append(z)
    violations: list[ConditionViolation] = []
    for (x, y), sources in sorted(by_attack.items()):
        reverse = by_attack.get((y, x))
        if not reverse:
            continue
        for z in sorted(sources):
            for z2 in sorted(reverse):
                missing = tuple(
                    pair
                    for pair in ((z, z2), (z2, z))
                    if pair not in framework.attacks
                )
                if missing:
                    violations.append(
                        ConditionViolation(
                            first=(z, (x, y)), second=(z2, (y, x)), missing=missing
                        )
                    )
    return (not violations, tuple(violations))


def argument_counts(game: Game) -> ArgumentCounts:
    """Exact argument counts together with the size bound they respect."""
    n = game.n_players
    m = max(len(menu) for menu in game.strategies)
    game_count = math.prod(len(menu) for menu in game.strategies)
    pref_count = sum(
        math.prod(len(game.menu(j)) for j in range(n) if j != i) * len(game.menu(i))
        for i in range(n)
    )
    val_count = len(build_valuation_arguments(game))
    val_bound = n * m ** (n - 1) * m * (m - 1) // 2
    if val_count > val_bound:
        raise AssertionError(
            f"valuation count {val_count} exceeds its bound {val_bound}"
        )
    return ArgumentCounts(
        game_count=game_count,
        preference_count=pref_count,
        valuation_count=val_count,
        bound=m ** (n + 1) * n,
        valuation_bound=val_bound,
    )


def parse_partial(text: str) -> PartialProfile:
    """Parse the "[stag,_]" rendering back into a partial profile."""
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"malformed partial profile {text!r}")
    entries = tuple(
        None if e == "_" else e for e in text[1:-1].split(",")
    )
    return PartialProfile(entries)


def parse_argument_id(argument_id: str) -> Argument:
    """Invert the canonical id scheme (purely syntactic)."""
    if argument_id.startswith(GAME_PREFIX):
        return GameArgument(tuple(argument_id[len(GAME_PREFIX):].split(",")))
    if argument_id.startswith(PREFERENCE_PREFIX):
        body = argument_id[len(PREFERENCE_PREFIX):]
        partial_text, _, strategy = body.rpartition("/")
        if not partial_text or not strategy:
            raise ValueError(f"malformed preference argument id {argument_id!r}")
        return PreferenceArgument(parse_partial(partial_text), strategy)
    if argument_id.startswith(VALUATION_PREFIX):
        body = argument_id[len(VALUATION_PREFIX):]
        partial_text, _, comparison = body.rpartition("/")
        better, sep, worse = comparison.partition(">")
        if not partial_text or not sep or not better or not worse:
            raise ValueError(f"malformed valuation argument id {argument_id!r}")
        return ValuationArgument(parse_partial(partial_text), better, worse)
    raise ValueError(f"unknown argument id scheme in {argument_id!r}")
