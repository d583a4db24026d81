"""Structure-aware solving of game-derived frameworks.

The preferred extensions of a framework built from a game have a rigid
shape: they contain every valuation argument, exactly one rank-maximal
preference argument per cluster, and at most one game argument, which must
be endorsed by every adjacent cluster's choice.  The structured enumerator
walks exactly those candidates instead of searching subsets, double-checks
each one against the generic admissibility predicate, and therefore scales
to frameworks the brute-force engine refuses.

Because the enumerator's completeness rests on structural theorems about
this construction, :func:`cross_validate` is kept as a standing regression
gate: it replays a game through both engines and the game-level oracle and
fails loudly on any disagreement.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass

from .build import (
    Cluster,
    GameArgument,
    GameFramework,
    PreferenceArgument,
    assemble_framework,
)
from .eaf import (
    Extension,
    brute_force_cap,
    enumerate_extensions_bruteforce,
    is_admissible,
    is_stable,
)
from .game import Game, Profile, nash_equilibria_bruteforce, remove

DEFAULT_ASSIGNMENT_CAP = 100_000


class CandidateCapError(RuntimeError):
    """Structured enumeration would exceed the choice-assignment cap."""


class InternalConsistencyError(RuntimeError):
    """Two routes that must agree did not; counterexample in the message."""


@dataclass(frozen=True)
class StableClass:
    """Stable extensions grouped by their shared game argument."""

    game_argument: str
    profile: Profile
    extensions: tuple[Extension, ...]


@dataclass(frozen=True)
class SolveReport:
    """Everything a solve produced, with deterministic ordering."""

    preferred: tuple[Extension, ...]
    preferred_game_args: tuple[str | None, ...]
    stable: tuple[Extension, ...]
    stable_classes: tuple[StableClass, ...]
    nash: tuple[Profile, ...]
    engine: str
    elapsed: float


@dataclass(frozen=True, eq=False)
class SolvedGame:
    """A validated game, its framework, and the solve results."""

    game: Game
    framework: GameFramework
    report: SolveReport


def cluster_choices(framework: GameFramework) -> dict[Cluster, tuple[str, ...]]:
    """Rank-maximal strategies per cluster (the only admissible choices)."""
    return {
        c: framework.game.best_responses(c.partial) for c in framework.clusters
    }


def game_argument_of(framework: GameFramework, extension: Extension) -> str | None:
    """The extension's game argument id, or None."""
    hits = [a for a in extension.members if framework.kind_of(a) == "game"]
    if len(hits) > 1:
        raise InternalConsistencyError(
            f"extension contains {len(hits)} game arguments: {sorted(hits)}"
        )
    return hits[0] if hits else None


def enumerate_preferred_structured(
    framework: GameFramework, assignment_cap: int = DEFAULT_ASSIGNMENT_CAP
) -> tuple[Extension, ...]:
    """Exact preferred extensions via cluster choice assignments.

    For each combination of one maximal preference argument per cluster,
    emits one extension per compatible game argument (a profile endorsed by
    all of its adjacent clusters), or a single game-argument-free extension
    when none is compatible.  Every candidate is re-checked with the generic
    admissibility predicate before being emitted.
    """
    game = framework.game
    choices = cluster_choices(framework)
    clusters = framework.clusters
    total = math.prod(len(choices[c]) for c in clusters)
    if total > assignment_cap:
        raise CandidateCapError(
            f"{total} cluster choice assignments exceed the cap "
            f"({assignment_cap}); raise the cap or use the profile-level "
            f"equilibrium query, which needs no enumeration"
        )

    valuations = frozenset(framework.valuation_argument_ids())
    profiles = list(game.profiles())
    extensions: list[Extension] = []
    for combo in itertools.product(*(choices[c] for c in clusters)):
        chosen = {c.partial: s for c, s in zip(clusters, combo)}
        base = valuations | {
            PreferenceArgument(c.partial, s).id for c, s in zip(clusters, combo)
        }
        compatible = [
            p
            for p in profiles
            if all(chosen[remove(p, i)] == p[i] for i in range(game.n_players))
        ]
        if compatible:
            for p in compatible:
                extensions.append(
                    Extension(base | {GameArgument(p).id}, "preferred")
                )
        else:
            extensions.append(Extension(frozenset(base), "preferred"))

    for ext in extensions:
        if not is_admissible(framework.eaf, ext.members):
            raise InternalConsistencyError(
                "structured enumeration produced a non-admissible candidate: "
                f"{ext.sorted_members()}"
            )
    extensions.sort(key=Extension.sort_key)
    return tuple(extensions)


def nash_from_framework(framework: GameFramework) -> tuple[Profile, ...]:
    """Profiles whose game argument sits in some preferred extension.

    Computed without enumeration: a profile qualifies exactly when each of
    its strategies is rank-maximal in the cluster left by removing it.
    """
    game = framework.game
    best = {c.partial: set(s) for c, s in cluster_choices(framework).items()}

    def qualifies(profile: Profile) -> bool:
        return all(
            profile[i] in best[remove(profile, i)] for i in range(game.n_players)
        )

    return tuple(sorted(p for p in game.profiles() if qualifies(p)))


def stable_from_preferred(
    framework: GameFramework, preferred: tuple[Extension, ...]
) -> tuple[tuple[Extension, ...], tuple[StableClass, ...]]:
    """Stable extensions (preferred ones holding a game argument) and classes.

    Each survivor is re-verified against the generic stability predicate;
    a failure there means the solver itself is broken, not the input.
    """
    stable: list[Extension] = []
    by_game_arg: dict[str, list[Extension]] = {}
    for ext in preferred:
        gid = game_argument_of(framework, ext)
        if gid is None:
            continue
        if not is_stable(framework.eaf, ext.members):
            raise InternalConsistencyError(
                "preferred extension with game argument failed the stability "
                f"predicate: {ext.sorted_members()}"
            )
        as_stable = Extension(ext.members, "stable")
        stable.append(as_stable)
        by_game_arg.setdefault(gid, []).append(as_stable)

    classes = tuple(
        StableClass(
            game_argument=gid,
            profile=framework.resolve(gid).profile,  # type: ignore[union-attr]
            extensions=tuple(sorted(exts, key=Extension.sort_key)),
        )
        for gid, exts in sorted(by_game_arg.items())
    )
    stable.sort(key=Extension.sort_key)
    return tuple(stable), classes


def solve_game(
    game: Game,
    engine: str = "structured",
    assignment_cap: int = DEFAULT_ASSIGNMENT_CAP,
    brute_cap: int | None = None,
) -> SolvedGame:
    """Build the framework and enumerate extensions with the chosen engine."""
    if engine not in ("structured", "generic"):
        raise ValueError(f"engine must be 'structured' or 'generic', got {engine!r}")
    start = time.perf_counter()
    framework = assemble_framework(game)
    if engine == "structured":
        preferred = enumerate_preferred_structured(framework, assignment_cap)
        stable, classes = stable_from_preferred(framework, preferred)
        nash = nash_from_framework(framework)
    else:
        preferred = enumerate_extensions_bruteforce(
            framework.eaf, "preferred", cap=brute_cap
        )
        raw_stable = enumerate_extensions_bruteforce(
            framework.eaf, "stable", cap=brute_cap
        )
        stable = tuple(sorted(raw_stable, key=Extension.sort_key))
        by_game_arg: dict[str, list[Extension]] = {}
        for ext in stable:
            gid = game_argument_of(framework, ext)
            if gid is not None:
                by_game_arg.setdefault(gid, []).append(ext)
        classes = tuple(
            StableClass(
                game_argument=gid,
                profile=framework.resolve(gid).profile,  # type: ignore[union-attr]
                extensions=tuple(exts),
            )
            for gid, exts in sorted(by_game_arg.items())
        )
        nash = tuple(
            sorted(
                {
                    framework.resolve(gid).profile  # type: ignore[union-attr]
                    for ext in preferred
                    if (gid := game_argument_of(framework, ext)) is not None
                }
            )
        )
    game_args = tuple(game_argument_of(framework, ext) for ext in preferred)
    report = SolveReport(
        preferred=preferred,
        preferred_game_args=game_args,
        stable=stable,
        stable_classes=classes,
        nash=nash,
        engine=engine,
        elapsed=time.perf_counter() - start,
    )
    return SolvedGame(game=game, framework=framework, report=report)


@dataclass(frozen=True)
class CrossValidationReport:
    """What was checked and what both routes produced."""

    argument_count: int
    nash: tuple[Profile, ...]
    preferred_count: int | None
    stable_count: int | None
    generic_compared: bool
    structured_capped: bool


def _game_summary(game: Game) -> str:
    doc = {
        "players": list(game.players),
        "strategies": [list(m) for m in game.strategies],
        "payoffs": [
            {"profile": list(p), "outcome": list(game.effect_table[p])}
            for p in game.profiles()
        ],
    }
    return json.dumps(doc, sort_keys=True)


def _fail(game: Game, message: str, **context: object) -> None:
    details = "; ".join(f"{k}={v}" for k, v in context.items())
    raise InternalConsistencyError(
        f"{message}"
        + (f" [{details}]" if details else "")
        + f" | game: {_game_summary(game)}"
    )


def cross_validate(game: Game, size_cap: int | None = None) -> CrossValidationReport:
    """Replay a game through every route and assert the structural laws.

    Always checks: the framework-level equilibrium set equals the
    game-level oracle; every structured preferred extension holds exactly
    one preference argument per cluster, at most one game argument, no
    non-equilibrium game argument, and all valuation arguments; the stable
    class count equals the equilibrium count.  When the framework fits
    under ``size_cap`` the generic engine is run as well and must agree
    extension-for-extension.
    """
    cap = brute_force_cap() if size_cap is None else size_cap
    framework = assemble_framework(game)
    n_args = len(framework.eaf.arguments)
    oracle = nash_equilibria_bruteforce(game)
    fast = nash_from_framework(framework)
    if fast != oracle:
        _fail(game, "framework equilibria disagree with the oracle",
              framework=fast, oracle=oracle)

    structured: tuple[Extension, ...] | None
    try:
        structured = enumerate_preferred_structured(framework)
    except CandidateCapError:
        structured = None

    preferred_count = None
    stable_count = None
    if structured is not None:
        preferred_count = len(structured)
        valuations = set(framework.valuation_argument_ids())
        seen_profiles: set[Profile] = set()
        for ext in structured:
            for cluster in framework.clusters:
                inside = set(cluster.member_ids) & ext.members
                if len(inside) != 1:
                    _fail(game, "cluster does not contribute exactly one "
                          "preference argument",
                          cluster=cluster.partial.render(),
                          extension=ext.sorted_members())
            if not valuations <= ext.members:
                _fail(game, "extension misses valuation arguments",
                      extension=ext.sorted_members())
            gid = game_argument_of(framework, ext)  # raises if more than one
            if gid is not None:
                profile = framework.resolve(gid).profile  # type: ignore[union-attr]
                if profile not in oracle:
                    _fail(game, "non-equilibrium profile appears in a "
                          "preferred extension", profile=profile)
                seen_profiles.add(profile)
        if seen_profiles != set(oracle):
            _fail(game, "extension-borne profiles differ from the oracle set",
                  extensions=sorted(seen_profiles), oracle=oracle)

        stable, classes = stable_from_preferred(framework, structured)
        stable_count = len(stable)
        if len(classes) != len(oracle):
            _fail(game, "stable class count differs from equilibrium count",
                  classes=len(classes), oracle=len(oracle))

    generic_compared = False
    if n_args <= cap and structured is not None:
        generic = enumerate_extensions_bruteforce(framework.eaf, "preferred")
        if [e.members for e in generic] != [e.members for e in structured]:
            _fail(game, "structured and generic preferred extensions differ",
                  structured=[e.sorted_members() for e in structured],
                  generic=[e.sorted_members() for e in generic])
        generic_stable = enumerate_extensions_bruteforce(framework.eaf, "stable")
        if [e.members for e in generic_stable] != [e.members for e in stable]:
            _fail(game, "structured and generic stable extensions differ",
                  structured=[e.sorted_members() for e in stable],
                  generic=[e.sorted_members() for e in generic_stable])
        generic_compared = True

    return CrossValidationReport(
        argument_count=n_args,
        nash=oracle,
        preferred_count=preferred_count,
        stable_count=stable_count,
        generic_compared=generic_compared,
        structured_capped=structured is None,
    )
