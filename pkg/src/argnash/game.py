"""Finite normal-form games: strategy profiles, preferences, best responses.

A game consists of an ordered list of players, one strategy menu per player,
an outcome table assigning each full strategy profile one outcome per player,
and a per-player preference over outcomes.  Preferences are materialised as
rank maps realising a total preorder: ``rank[o1] <= rank[o2]`` exactly when
the player finds ``o2`` at least as good as ``o1``.  Numeric preferences rank
outcomes by their value; explicit preferences are given as strict
``[worse, better]`` pairs whose transitive closure must totally order every
outcome the player can actually receive.

All types are immutable after validation and every operation is pure, so
values can be shared freely across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

Outcome = int | float | str
Profile = tuple[str, ...]

HOLE_MARK = "_"

_FORBIDDEN_NAME_CHARS = set(",[]/>" + HOLE_MARK)


class GameValidationError(ValueError):
    """A raw game description violates a structural requirement.

    ``element`` carries the offending piece of the description (profile,
    outcome label, strategy name, ...) for diagnostics.
    """

    def __init__(self, message: str, element: object = None) -> None:
        super().__init__(message)
        self.element = element


@dataclass(frozen=True)
class PartialProfile:
    """A joint strategy with exactly one player's slot left open.

    The open slot is stored as ``None`` and rendered as ``_``.
    """

    entries: tuple[str | None, ...]

    def __post_init__(self) -> None:
        holes = [k for k, e in enumerate(self.entries) if e is None]
        if len(holes) != 1:
            raise ValueError(
                f"partial profile needs exactly one hole, got {len(holes)}"
            )

    @property
    def hole(self) -> int:
        """Index of the player whose strategy is unspecified."""
        return self.entries.index(None)

    def fill(self, strategy: str) -> Profile:
        """Plug ``strategy`` into the hole, producing a full profile."""
        return tuple(strategy if e is None else e for e in self.entries)

    def render(self) -> str:
        return "[" + ",".join(HOLE_MARK if e is None else e for e in self.entries) + "]"

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return self.render()


def remove(profile: Profile, player: int) -> PartialProfile:
    """Drop ``player``'s strategy from a full profile, leaving a hole."""
    if not 0 <= player < len(profile):
        raise IndexError(f"player index {player} out of range")
    return PartialProfile(
        tuple(None if k == player else s for k, s in enumerate(profile))
    )


@dataclass(frozen=True, eq=False)
class Game:
    """A validated finite normal-form game.

    Construct through :func:`validate_game`; the constructor itself performs
    no checking.  ``ranks[i]`` maps each outcome player ``i`` can receive to
    a number; larger is better and equal ranks mean indifference.
    """

    players: tuple[str, ...]
    strategies: tuple[tuple[str, ...], ...]
    effect_table: Mapping[Profile, tuple[Outcome, ...]]
    ranks: tuple[Mapping[Outcome, float], ...]
    preference_spec: tuple[object, ...] = field(default=())

    @property
    def n_players(self) -> int:
        return len(self.players)

    def menu(self, player: int) -> tuple[str, ...]:
        return self.strategies[player]

    @property
    def outcome_set(self) -> frozenset[Outcome]:
        return frozenset(o for row in self.effect_table.values() for o in row)

    def profiles(self) -> Iterator[Profile]:
        """All full strategy profiles, in cartesian-product order."""
        return itertools.product(*self.strategies)

    def partial_profiles(self, player: int) -> Iterator[PartialProfile]:
        """All partial profiles whose hole is ``player``, in product order."""
        others = [
            menu if k != player else (None,)
            for k, menu in enumerate(self.strategies)
        ]
        for entries in itertools.product(*others):
            yield PartialProfile(entries)

    def check_profile(self, profile: Sequence[str]) -> Profile:
        """Return ``profile`` as a tuple, or raise if any entry is invalid."""
        prof = tuple(profile)
        if len(prof) != self.n_players:
            raise ValueError(
                f"profile {list(prof)} has {len(prof)} entries, "
                f"expected {self.n_players}"
            )
        for k, s in enumerate(prof):
            if s not in self.strategies[k]:
                raise ValueError(
                    f"strategy {s!r} is not in player {k}'s menu"
                )
        return prof

    def effect(self, profile: Sequence[str]) -> tuple[Outcome, ...]:
        """The outcome tuple (one entry per player) for a full profile."""
        return self.effect_table[self.check_profile(profile)]

    def oplus(self, partial: PartialProfile, strategy: str) -> Profile:
        """Fill a partial profile's hole with one of the hole player's moves."""
        if strategy not in self.strategies[partial.hole]:
            raise ValueError(
                f"strategy {strategy!r} is not in player {partial.hole}'s menu"
            )
        return partial.fill(strategy)

    def rank_of(self, player: int, outcome: Outcome) -> float:
        return self.ranks[player][outcome]

    def weakly_prefers(
        self, player: int, profile_a: Sequence[str], profile_b: Sequence[str]
    ) -> bool:
        """True when ``player`` finds ``profile_b`` at least as good as ``profile_a``."""
        oa = self.effect(profile_a)[player]
        ob = self.effect(profile_b)[player]
        return self.ranks[player][oa] <= self.ranks[player][ob]

    def strictly_prefers(
        self, player: int, profile_a: Sequence[str], profile_b: Sequence[str]
    ) -> bool:
        """True when ``profile_b`` is strictly better than ``profile_a`` for ``player``."""
        oa = self.effect(profile_a)[player]
        ob = self.effect(profile_b)[player]
        return self.ranks[player][oa] < self.ranks[player][ob]

    def best_responses(self, partial: PartialProfile) -> tuple[str, ...]:
        """The hole player's rank-maximal strategies against ``partial``.

        Returned in menu order; more than one entry means the player is
        indifferent at the top.
        """
        i = partial.hole
        scored = [
            (s, self.ranks[i][self.effect_table[partial.fill(s)][i]])
            for s in self.strategies[i]
        ]
        top = max(score for _, score in scored)
        return tuple(s for s, score in scored if score == top)


def nash_equilibria_bruteforce(game: Game) -> tuple[Profile, ...]:
    """All pure-strategy equilibria, found by best-response marking.

    For every player and every combination of the other players' strategies,
    marks the profiles obtained by the player's best responses; profiles
    marked by every player are exactly those from which no player can gain
    by a unilateral deviation.
    """
    marks: dict[Profile, int] = {p: 0 for p in game.profiles()}
    for i in range(game.n_players):
        for partial in game.partial_profiles(i):
            for s in game.best_responses(partial):
                marks[partial.fill(s)] += 1
    return tuple(sorted(p for p, m in marks.items() if m == game.n_players))


def _require(condition: bool, message: str, element: object = None) -> None:
    if not condition:
        raise GameValidationError(message, element)


def _validate_strategy_name(name: object, player: int) -> str:
    _require(
        isinstance(name, str) and name != "",
        f"strategy name for player {player} must be a non-empty string",
        name,
    )
    assert isinstance(name, str)
    bad = _FORBIDDEN_NAME_CHARS.intersection(name)
    _require(
        not bad and name != HOLE_MARK,
        f"invalid strategy name {name!r} for player {player}: "
        f"may not be '_' or contain any of , [ ] / >",
        name,
    )
    return name


def _validate_outcome(value: object, profile: Profile) -> Outcome:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise GameValidationError(
            f"unsupported outcome {value!r} for profile {list(profile)}: "
            f"outcomes are numbers or string labels",
            value,
        )
    return value


def _closure_ranks(
    player: int, pairs: Sequence[Sequence[object]], reachable: Sequence[Outcome]
) -> dict[Outcome, float]:
    """Ranks from strict [worse, better] pairs via transitive closure.

    The closure must be acyclic and must relate every pair of distinct
    outcomes the player can receive; anything else is rejected rather than
    silently completed.
    """
    labels: set[Outcome] = set(reachable)
    below: dict[Outcome, set[Outcome]] = {}
    for pair in pairs:
        _require(
            isinstance(pair, Sequence)
            and not isinstance(pair, str)
            and len(pair) == 2,
            f"player {player}: preference pairs must be [worse, better] pairs",
            pair,
        )
        worse, better = pair[0], pair[1]
        for o in (worse, better):
            _require(
                o in labels,
                f"player {player}: unknown outcome {o!r} in preference "
                f"(not an outcome this player can receive)",
                o,
            )
        below.setdefault(better, set()).add(worse)  # type: ignore[arg-type]

    # Warshall-style closure of the strict relation.
    changed = True
    while changed:
        changed = False
        for better, worse_set in below.items():
            extra = set()
            for w in worse_set:
                extra.update(below.get(w, ()))
            if not extra.issubset(worse_set):
                worse_set.update(extra)
                changed = True

    for o, worse_set in below.items():
        _require(
            o not in worse_set,
            f"player {player}: preference cycle through outcome {o!r}",
            o,
        )

    ranks = {o: float(len(below.get(o, ()))) for o in reachable}
    for a, b in itertools.combinations(reachable, 2):
        related = a in below.get(b, ()) or b in below.get(a, ())
        _require(
            related,
            f"player {player}: incomplete preference, outcomes {a!r} and {b!r} "
            f"are unrelated",
            (a, b),
        )
    return ranks


def validate_game(raw: Mapping[str, object]) -> Game:
    """Check a raw game description and build an immutable :class:`Game`.

    Expected shape::

        {
          "players": ["Player 0", "Player 1"],
          "strategies": [["stag", "hare"], ["stag", "hare"]],
          "payoffs": [
            {"profile": ["stag", "stag"], "outcome": [4, 4]},
            ...
          ],
          "preferences": ["numeric", {"pairs": [["worse", "better"], ...]}]
        }

    ``preferences`` is optional and defaults to numeric for every player.
    The payoff list must cover the full cartesian product of the strategy
    menus exactly once.
    """
    _require(isinstance(raw, Mapping), "game description must be a mapping", raw)
    for key in ("players", "strategies", "payoffs"):
        _require(key in raw, f"missing required field {key!r}", key)

    players_raw = raw["players"]
    _require(
        isinstance(players_raw, Sequence)
        and not isinstance(players_raw, str)
        and len(players_raw) >= 1
        and all(isinstance(p, str) and p for p in players_raw),
        "players must be a non-empty list of names",
        players_raw,
    )
    players = tuple(players_raw)  # type: ignore[arg-type]
    n = len(players)

    strategies_raw = raw["strategies"]
    _require(
        isinstance(strategies_raw, Sequence) and len(strategies_raw) == n,
        f"strategies must list one menu per player ({n})",
        strategies_raw,
    )
    menus = []
    for i, menu_raw in enumerate(strategies_raw):  # type: ignore[arg-type]
        _require(
            isinstance(menu_raw, Sequence)
            and not isinstance(menu_raw, str)
            and len(menu_raw) >= 1,
            f"player {i} needs at least one strategy",
            menu_raw,
        )
        menu = tuple(_validate_strategy_name(s, i) for s in menu_raw)
        seen: set[str] = set()
        for s in menu:
            _require(
                s not in seen,
                f"duplicate strategy name {s!r} in player {i}'s menu",
                s,
            )
            seen.add(s)
        menus.append(menu)
    strategies = tuple(menus)

    payoffs_raw = raw["payoffs"]
    _require(
        isinstance(payoffs_raw, Sequence),
        "payoffs must be a list of {profile, outcome} rows",
        payoffs_raw,
    )
    effect: dict[Profile, tuple[Outcome, ...]] = {}
    for row in payoffs_raw:  # type: ignore[union-attr]
        _require(
            isinstance(row, Mapping) and "profile" in row and "outcome" in row,
            "each payoff row needs 'profile' and 'outcome'",
            row,
        )
        prof_raw = row["profile"]
        _require(
            isinstance(prof_raw, Sequence)
            and not isinstance(prof_raw, str)
            and len(prof_raw) == n,
            f"payoff profile {prof_raw!r} must list one strategy per player",
            prof_raw,
        )
        prof = tuple(prof_raw)  # type: ignore[arg-type]
        for i, s in enumerate(prof):
            _require(
                s in strategies[i],
                f"unknown strategy {s!r} for player {i} in payoffs",
                s,
            )
        _require(
            prof not in effect,
            f"duplicate payoff entry for profile {list(prof)}",
            prof,
        )
        out_raw = row["outcome"]
        _require(
            isinstance(out_raw, Sequence)
            and not isinstance(out_raw, str)
            and len(out_raw) == n,
            f"outcome for profile {list(prof)} must list one value per player",
            out_raw,
        )
        effect[prof] = tuple(_validate_outcome(v, prof) for v in out_raw)

    for prof in itertools.product(*strategies):
        _require(
            prof in effect,
            f"missing outcome for profile {list(prof)}",
            prof,
        )

    prefs_raw = raw.get("preferences", ["numeric"] * n)
    _require(
        isinstance(prefs_raw, Sequence)
        and not isinstance(prefs_raw, str)
        and len(prefs_raw) == n,
        f"preferences must list one entry per player ({n})",
        prefs_raw,
    )

    ranks: list[Mapping[Outcome, float]] = []
    spec: list[object] = []
    for i, pref in enumerate(prefs_raw):  # type: ignore[arg-type]
        reachable = sorted({effect[p][i] for p in effect}, key=str)
        if pref == "numeric":
            for o in reachable:
                _require(
                    isinstance(o, (int, float)) and not isinstance(o, bool),
                    f"player {i}: non-numeric outcome {o!r} under numeric "
                    f"preference",
                    o,
                )
            ranks.append({o: float(o) for o in reachable})  # type: ignore[arg-type]
            spec.append("numeric")
        elif isinstance(pref, Mapping) and "pairs" in pref:
            pairs = pref["pairs"]
            _require(
                isinstance(pairs, Sequence) and not isinstance(pairs, str),
                f"player {i}: 'pairs' must be a list of [worse, better] pairs",
                pairs,
            )
            ranks.append(_closure_ranks(i, pairs, reachable))  # type: ignore[arg-type]
            spec.append({"pairs": [list(p) for p in pairs]})  # type: ignore[union-attr]
        else:
            raise GameValidationError(
                f"player {i}: preference must be 'numeric' or "
                f"{{'pairs': [[worse, better], ...]}}",
                pref,
            )

    return Game(
        players=players,
        strategies=strategies,
        effect_table=effect,
        ranks=tuple(ranks),
        preference_spec=tuple(spec),
    )
