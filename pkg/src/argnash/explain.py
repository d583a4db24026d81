"""Justification trees and the interactive why/why-not dialogue.

An equilibrium explanation is a tree of at most four levels: the root claim,
one defeat claim per rival outcome, the preference argument blocking the
rival's counter-attack, and the valuation arguments grounding that
preference.  A non-equilibrium explanation lists deviation witnesses, each
backed by the valuation argument showing the strict gain.

The dialogue is a thin, finite protocol over those trees: questions push a
focus, concessions pop it, and every reply answers the top of the focus
stack.  States are immutable; each step returns a fresh state, so concurrent
sessions over one solved game never interfere.

Prose comes from templates in ``templates.json`` keyed by claim kind, so the
command line and the web UI render identical sentences.
"""

from __future__ import annotations

import json
import secrets
from dataclasses import dataclass, field, replace
from enum import Enum
from importlib import resources
from typing import Mapping, Sequence

from .build import GameArgument, PreferenceArgument, ValuationArgument
from .eaf import defeats
from .game import Profile, remove
from .solve import SolvedGame


class ExplanationRefusal(ValueError):
    """The requested explanation does not apply to this profile."""


class DialogueError(ValueError):
    """Ill-typed move for the current focus, or an unknown referent."""


class ClaimKind(Enum):
    IS_NASH = "IS_NASH"
    DEFEATS = "DEFEATS"
    PREFERENCE_HOLDS = "PREFERENCE_HOLDS"
    VALUATION = "VALUATION"
    NOT_NASH = "NOT_NASH"
    DEVIATION_WITNESS = "DEVIATION_WITNESS"


def _load_templates() -> dict[str, str]:
    text = resources.files(__package__).joinpath("templates.json").read_text("utf-8")
    return json.loads(text)


TEMPLATES: dict[str, str] = _load_templates()


def render_template(template_id: str, **slots: object) -> str:
    return TEMPLATES[template_id].format(**slots)


@dataclass(frozen=True)
class ExplanationNode:
    """One claim, its referents, rendered prose, and its justifications."""

    kind: ClaimKind
    template: str
    referents: Mapping[str, object]
    prose: str
    children: tuple["ExplanationNode", ...] = ()

    def to_doc(self) -> dict:
        return {
            "kind": self.kind.value,
            "template": self.template,
            "referents": {k: _doc_value(v) for k, v in self.referents.items()},
            "prose": self.prose,
            "children": [c.to_doc() for c in self.children],
        }


def _doc_value(value: object) -> object:
    if isinstance(value, tuple):
        return list(value)
    return value


def _context_phrase(solved: SolvedGame, partial) -> str:
    """Describe the fixed strategies of a partial profile in words."""
    parts = [
        f"player {k} plays {s}"
        for k, s in enumerate(partial.entries)
        if s is not None
    ]
    if not parts:
        return "nothing else is fixed"
    return " and ".join(parts)


def _profile_text(profile: Profile) -> str:
    return ",".join(profile)


def _valuation_children(
    solved: SolvedGame, partial, strategy: str
) -> tuple[ExplanationNode, ...]:
    """Valuation arguments protecting the recommendation of ``strategy``."""
    framework = solved.framework
    nodes = []
    for worse in solved.game.menu(partial.hole):
        if worse == strategy:
            continue
        arg = ValuationArgument(partial, strategy, worse)
        if arg.id in framework.provenance:
            nodes.append(
                ExplanationNode(
                    kind=ClaimKind.VALUATION,
                    template="valuation",
                    referents={
                        "argument": arg.id,
                        "player": partial.hole,
                        "better": strategy,
                        "worse": worse,
                    },
                    prose=render_template(
                        "valuation",
                        player=partial.hole,
                        better=strategy,
                        worse=worse,
                        context=_context_phrase(solved, partial),
                    ),
                )
            )
    return tuple(nodes)


def _defeat_node(solved: SolvedGame, winner: Profile, loser: Profile) -> ExplanationNode:
    """Why the winner's argument defeats the loser's in the anchor extension."""
    diff = [i for i in range(len(winner)) if winner[i] != loser[i]]
    winner_id = GameArgument(winner).id
    loser_id = GameArgument(loser).id
    if len(diff) == 1:
        player = diff[0]
        partial = remove(winner, player)
        blocker = PreferenceArgument(partial, winner[player])
        strict = solved.game.strictly_prefers(player, loser, winner)
        template = "defeat-sibling-strict" if strict else "defeat-sibling-tie"
        prose = render_template(
            template,
            strategy=winner[player],
            player=player,
            context=_context_phrase(solved, partial),
        )
        pref_child = ExplanationNode(
            kind=ClaimKind.PREFERENCE_HOLDS,
            template="preference-holds",
            referents={
                "argument": blocker.id,
                "blockedAttack": (loser_id, winner_id),
                "player": player,
                "strategy": winner[player],
            },
            prose=render_template(
                "preference-holds",
                player=player,
                strategy=winner[player],
                context=_context_phrase(solved, partial),
                loser=_profile_text(loser),
                winner=_profile_text(winner),
            ),
            children=_valuation_children(solved, partial, winner[player]),
        )
        children: tuple[ExplanationNode, ...] = (pref_child,)
    else:
        template = "defeat-mutual"
        prose = render_template(
            "defeat-mutual",
            winner=_profile_text(winner),
            loser=_profile_text(loser),
        )
        children = ()
    return ExplanationNode(
        kind=ClaimKind.DEFEATS,
        template=template,
        referents={"attacker": winner_id, "target": loser_id},
        prose=prose,
        children=children,
    )


def anchor_extension(solved: SolvedGame, profile: Profile):
    """The lexicographically first preferred extension holding the profile."""
    wanted = GameArgument(profile).id
    for ext in solved.report.preferred:  # already sorted deterministically
        if wanted in ext.members:
            return ext
    raise ExplanationRefusal(
        f"no preferred extension contains [{_profile_text(profile)}]"
    )


def explain_nash(solved: SolvedGame, profile: Sequence[str]) -> ExplanationNode:
    """Justify an equilibrium profile against every rival outcome."""
    prof = solved.game.check_profile(profile)
    if prof not in solved.report.nash:
        raise ExplanationRefusal(
            f"[{_profile_text(prof)}] is not an equilibrium; "
            f"use the why-not explanation instead"
        )
    ext = anchor_extension(solved, prof)
    rivals = sorted(p for p in solved.game.profiles() if p != prof)
    children = tuple(_defeat_node(solved, prof, rival) for rival in rivals)
    arg_id = GameArgument(prof).id
    # Soundness: every claimed defeat must hold relative to the anchor.
    for child in children:
        attacker = child.referents["attacker"]
        target = child.referents["target"]
        if not defeats(solved.framework.eaf, attacker, target, ext.members):
            raise ExplanationRefusal(
                f"claimed defeat {attacker} -> {target} does not hold in the "
                f"anchor extension"
            )
    return ExplanationNode(
        kind=ClaimKind.IS_NASH,
        template="is-nash-root",
        referents={
            "profile": prof,
            "argument": arg_id,
            "extension": ext.sorted_members(),
        },
        prose=render_template(
            "is-nash-root",
            profile=_profile_text(prof),
            others=", ".join(GameArgument(r).id for r in rivals),
        ),
        children=children,
    )


def explain_not_nash(solved: SolvedGame, profile: Sequence[str]) -> ExplanationNode:
    """List every strictly improving unilateral deviation with its evidence."""
    prof = solved.game.check_profile(profile)
    if prof in solved.report.nash:
        raise ExplanationRefusal(
            f"[{_profile_text(prof)}] is an equilibrium; "
            f"use the equilibrium explanation instead"
        )
    game = solved.game
    witnesses = []
    for i in range(game.n_players):
        partial = remove(prof, i)
        for s in game.menu(i):
            if s == prof[i]:
                continue
            if game.strictly_prefers(i, prof, partial.fill(s)):
                evidence = ValuationArgument(partial, s, prof[i])
                witnesses.append(
                    ExplanationNode(
                        kind=ClaimKind.DEVIATION_WITNESS,
                        template="deviation-witness",
                        referents={
                            "player": i,
                            "strategy": s,
                            "argument": evidence.id,
                        },
                        prose=render_template(
                            "deviation-witness",
                            player=i,
                            strategy=s,
                            context=_context_phrase(solved, partial),
                            better=s,
                            worse=prof[i],
                        ),
                    )
                )
    return ExplanationNode(
        kind=ClaimKind.NOT_NASH,
        template="not-nash-root",
        referents={"profile": prof},
        prose=render_template("not-nash-root", profile=_profile_text(prof)),
        children=tuple(witnesses),
    )


class MoveType(Enum):
    WHY = "WHY"
    WHY_DEFEAT = "WHY_DEFEAT"
    WHY_PREFERENCE = "WHY_PREFERENCE"
    WHY_NOT = "WHY_NOT"
    CONCEDE = "CONCEDE"
    END = "END"


@dataclass(frozen=True)
class Move:
    type: MoveType
    profile: Profile | None = None
    attacker: str | None = None
    target: str | None = None
    argument: str | None = None

    @classmethod
    def from_doc(cls, doc: Mapping[str, object]) -> "Move":
        try:
            move_type = MoveType(doc["type"])
        except (KeyError, ValueError):
            raise DialogueError(
                f"move needs a 'type' among {[m.value for m in MoveType]}"
            )
        profile = doc.get("profile")
        return cls(
            type=move_type,
            profile=tuple(profile) if profile is not None else None,  # type: ignore[arg-type]
            attacker=doc.get("attacker"),  # type: ignore[arg-type]
            target=doc.get("target"),  # type: ignore[arg-type]
            argument=doc.get("argument"),  # type: ignore[arg-type]
        )

    def describe(self) -> str:
        bits = [self.type.value]
        if self.profile is not None:
            bits.append(f"[{','.join(self.profile)}]")
        for ref in (self.attacker, self.target, self.argument):
            if ref is not None:
                bits.append(ref)
        return " ".join(bits)


@dataclass(frozen=True)
class TranscriptTurn:
    move: str
    prose: str
    referents: tuple[str, ...]


@dataclass(frozen=True)
class Reply:
    prose: str
    template: str
    referents: tuple[str, ...]
    node: ExplanationNode | None
    legal_moves: tuple[dict, ...]


@dataclass(frozen=True, eq=False)
class DialogueState:
    """One explanation session; replaced wholesale on every move."""

    session_id: str
    solved: SolvedGame = field(repr=False)
    focus: tuple[tuple, ...] = ()
    transcript: tuple[TranscriptTurn, ...] = ()
    open: bool = True


def new_session(solved: SolvedGame, session_id: str | None = None) -> DialogueState:
    return DialogueState(
        session_id=session_id or secrets.token_urlsafe(16), solved=solved
    )


def _nash_move_options(solved: SolvedGame, profile: Profile) -> list[dict]:
    arg_id = GameArgument(profile).id
    options = []
    for rival in sorted(p for p in solved.game.profiles() if p != profile):
        rival_id = GameArgument(rival).id
        options.append(
            {
                "type": "WHY_DEFEAT",
                "attacker": arg_id,
                "target": rival_id,
                "label": f"Why does {arg_id} defeat {rival_id}?",
            }
        )
    return options


def legal_moves(state: DialogueState) -> tuple[dict, ...]:
    """Moves the protocol accepts next; drives the UI's buttons."""
    if not state.open:
        return ()
    if not state.focus:
        nash = state.solved.report.nash
        moves: list[dict] = [
            {
                "type": "WHY",
                "profile": list(p),
                "label": f"Why is [{_profile_text(p)}] an equilibrium?",
            }
            for p in nash
        ]
        moves.extend(
            {
                "type": "WHY_NOT",
                "profile": list(p),
                "label": f"Why is [{_profile_text(p)}] not an equilibrium?",
            }
            for p in state.solved.game.profiles()
            if p not in nash
        )
        moves.append({"type": "END", "label": "End the session."})
        return tuple(moves)

    kind = state.focus[-1][0]
    moves = []
    if kind == "IS_NASH":
        moves.extend(_nash_move_options(state.solved, state.focus[-1][1]))
    elif kind == "DEFEAT":
        _, attacker, target = state.focus[-1]
        blocker = _sibling_blocker(state.solved, attacker, target)
        if blocker is not None:
            moves.append(
                {
                    "type": "WHY_PREFERENCE",
                    "argument": blocker,
                    "label": f"Why does {blocker} hold?",
                }
            )
    moves.append({"type": "CONCEDE", "label": "I understand."})
    moves.append({"type": "END", "label": "End the session."})
    return tuple(moves)


def _sibling_blocker(solved: SolvedGame, attacker: str, target: str) -> str | None:
    """The preference argument shielding ``attacker`` from ``target``, if any."""
    winner = solved.framework.resolve(attacker).profile  # type: ignore[union-attr]
    loser = solved.framework.resolve(target).profile  # type: ignore[union-attr]
    diff = [i for i in range(len(winner)) if winner[i] != loser[i]]
    if len(diff) != 1:
        return None
    return PreferenceArgument(remove(winner, diff[0]), winner[diff[0]]).id


def _collect_referents(node: ExplanationNode) -> tuple[str, ...]:
    ids = []
    for key in ("argument", "attacker", "target"):
        value = node.referents.get(key)
        if isinstance(value, str):
            ids.append(value)
    for child in node.children:
        ids.extend(_collect_referents(child))
    seen: set[str] = set()
    out = []
    for i in ids:
        if i not in seen:
            seen.add(i)
            out.append(i)
    return tuple(out)


def dialogue_step(state: DialogueState, move: Move) -> tuple[Reply, DialogueState]:
    """Answer one move and return the successor state.

    Questions push onto the focus stack, CONCEDE pops it (closing the
    session once nothing remains open), END closes immediately.
    """
    if not state.open:
        raise DialogueError("session is closed")
    solved = state.solved

    if move.type is MoveType.WHY:
        if move.profile is None:
            raise DialogueError("WHY needs a profile")
        prof = solved.game.check_profile(move.profile)
        if prof in solved.report.nash:
            node = explain_nash(solved, prof)
            focus = state.focus + (("IS_NASH", prof),)
        else:
            node = explain_not_nash(solved, prof)
            focus = state.focus + (("NOT_NASH", prof),)
        reply_state = _advance(state, move, node.prose, _collect_referents(node), focus)
        return _reply(node.prose, node.template, _collect_referents(node), node, reply_state), reply_state

    if move.type is MoveType.WHY_NOT:
        if move.profile is None:
            raise DialogueError("WHY_NOT needs a profile")
        prof = solved.game.check_profile(move.profile)
        if prof in solved.report.nash:
            raise DialogueError(
                render_template("refusal-is-nash", profile=_profile_text(prof))
            )
        node = explain_not_nash(solved, prof)
        focus = state.focus + (("NOT_NASH", prof),)
        reply_state = _advance(state, move, node.prose, _collect_referents(node), focus)
        return _reply(node.prose, node.template, _collect_referents(node), node, reply_state), reply_state

    if move.type is MoveType.WHY_DEFEAT:
        if not state.focus or state.focus[-1][0] != "IS_NASH":
            raise DialogueError("WHY_DEFEAT only applies after an equilibrium WHY")
        prof = state.focus[-1][1]
        expected_attacker = GameArgument(prof).id
        if move.attacker != expected_attacker:
            raise DialogueError(
                f"the open question is about {expected_attacker}, not {move.attacker!r}"
            )
        if move.target is None or move.target not in solved.framework.provenance:
            raise DialogueError(f"unknown defeat target {move.target!r}")
        loser = solved.framework.resolve(move.target)
        if not isinstance(loser, GameArgument):
            raise DialogueError(f"{move.target} is not an outcome argument")
        node = _defeat_node(solved, prof, loser.profile)
        focus = state.focus + (("DEFEAT", move.attacker, move.target),)
        referents = _collect_referents(node)
        reply_state = _advance(state, move, node.prose, referents, focus)
        return _reply(node.prose, node.template, referents, node, reply_state), reply_state

    if move.type is MoveType.WHY_PREFERENCE:
        if not state.focus or state.focus[-1][0] != "DEFEAT":
            raise DialogueError("WHY_PREFERENCE only applies after a defeat question")
        _, attacker, target = state.focus[-1]
        blocker = _sibling_blocker(solved, attacker, target)
        if blocker is None:
            raise DialogueError("that defeat is not grounded in a preference")
        if move.argument != blocker:
            raise DialogueError(
                f"the open defeat is grounded by {blocker}, not {move.argument!r}"
            )
        pref = solved.framework.resolve(blocker)
        assert isinstance(pref, PreferenceArgument)
        valuations = _valuation_children(solved, pref.partial, pref.strategy)
        comparisons = "; ".join(
            f"{n.referents['better']} > {n.referents['worse']}" for n in valuations
        ) or "no strict comparison was needed (top strategies tie)"
        prose = render_template(
            "preference-grounded", player=pref.partial.hole, comparisons=comparisons
        )
        node = ExplanationNode(
            kind=ClaimKind.PREFERENCE_HOLDS,
            template="preference-grounded",
            referents={"argument": blocker},
            prose=prose,
            children=valuations,
        )
        referents = (blocker,) + tuple(
            n.referents["argument"] for n in valuations  # type: ignore[misc]
        )
        focus = state.focus + (("PREFERENCE", blocker),)
        reply_state = _advance(state, move, prose, referents, focus)
        return _reply(prose, "preference-grounded", referents, node, reply_state), reply_state

    if move.type is MoveType.CONCEDE:
        if not state.focus:
            raise DialogueError("nothing to concede; no question is open")
        focus = state.focus[:-1]
        closing = not focus
        template = "concede-closed" if closing else "concede"
        prose = render_template(template)
        next_state = replace(
            _advance(state, move, prose, (), focus), open=not closing
        )
        return _reply(prose, template, (), None, next_state), next_state

    if move.type is MoveType.END:
        prose = render_template("end")
        next_state = replace(_advance(state, move, prose, (), state.focus), open=False)
        return _reply(prose, "end", (), None, next_state), next_state

    raise DialogueError(f"unsupported move {move.type}")  # pragma: no cover


def _advance(
    state: DialogueState,
    move: Move,
    prose: str,
    referents: tuple[str, ...],
    focus: tuple[tuple, ...],
) -> DialogueState:
    turn = TranscriptTurn(move=move.describe(), prose=prose, referents=referents)
    return replace(state, focus=focus, transcript=state.transcript + (turn,))


def _reply(
    prose: str,
    template: str,
    referents: tuple[str, ...],
    node: ExplanationNode | None,
    state: DialogueState,
) -> Reply:
    return Reply(
        prose=prose,
        template=template,
        referents=referents,
        node=node,
        legal_moves=legal_moves(state),
    )
