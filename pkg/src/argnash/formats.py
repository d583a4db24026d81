"""Text formats: game files, framework files, results files, DOT export.

One human-diffable JSON family covers the whole pipeline.  Serialisation is
canonical (sorted keys, fixed ordering, trailing newline) so writing, parsing
and re-writing any document is byte-stable.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .build import (
    GameArgument,
    GameFramework,
    PreferenceArgument,
    ValuationArgument,
    parse_argument_id,
)
from .eaf import Attack, EAFramework
from .explain import ExplanationNode
from .game import Game, GameValidationError, validate_game
from .solve import SolvedGame


def canonical_json(doc: object) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_game(path: str | Path) -> Game:
    """Parse and validate a game file."""
    text = Path(path).read_text("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise GameValidationError(
            f"{path}: not valid JSON at line {err.lineno}, column {err.colno}: "
            f"{err.msg}"
        )
    return validate_game(doc)


def game_to_doc(game: Game) -> dict:
    """Canonical game document; payoffs in cartesian-product order."""
    prefs = []
    for i, spec in enumerate(game.preference_spec):
        if spec == "numeric":
            prefs.append("numeric")
        else:
            # Normalise explicit pairs to the covering chain, worst to best.
            chain = sorted(game.ranks[i], key=lambda o: game.ranks[i][o])
            prefs.append(
                {"pairs": [[chain[k], chain[k + 1]] for k in range(len(chain) - 1)]}
            )
    return {
        "players": list(game.players),
        "strategies": [list(menu) for menu in game.strategies],
        "payoffs": [
            {"profile": list(p), "outcome": list(game.effect_table[p])}
            for p in game.profiles()
        ],
        "preferences": prefs,
    }


def serialize_game(game: Game) -> str:
    return canonical_json(game_to_doc(game))


def _sorted_attacks(framework: EAFramework) -> list[Attack]:
    return sorted(framework.attacks)


def _provenance_doc(framework: GameFramework, argument_id: str) -> dict:
    arg = framework.resolve(argument_id)
    if isinstance(arg, GameArgument):
        return {"profile": list(arg.profile)}
    if isinstance(arg, PreferenceArgument):
        return {
            "partial": [e for e in arg.partial.entries],
            "holePlayer": arg.partial.hole,
            "strategy": arg.strategy,
        }
    assert isinstance(arg, ValuationArgument)
    return {
        "partial": [e for e in arg.partial.entries],
        "holePlayer": arg.partial.hole,
        "better": arg.better,
        "worse": arg.worse,
    }


def framework_to_doc(framework: GameFramework) -> dict:
    """Framework document: nodes, attacks with ids, meta-attacks by attack id."""
    attacks = _sorted_attacks(framework.eaf)
    attack_ids = {attack: f"c{k}" for k, attack in enumerate(attacks)}
    nodes = [
        {
            "id": arg_id,
            "kind": framework.kind_of(arg_id),
            "label": framework.resolve(arg_id).label(),
            "provenance": _provenance_doc(framework, arg_id),
        }
        for arg_id in sorted(framework.provenance)
    ]
    metas = sorted(
        (
            {"from": z, "attackId": attack_ids[attack]}
            for z, attack in framework.eaf.meta_attacks
        ),
        key=lambda m: (m["attackId"], m["from"]),
    )
    return {
        "nodes": nodes,
        "attacks": [
            {"id": attack_ids[a], "from": a[0], "to": a[1]} for a in attacks
        ],
        "metaAttacks": metas,
    }


def serialize_framework(framework: GameFramework) -> str:
    return canonical_json(framework_to_doc(framework))


def parse_framework_doc(doc: Mapping) -> tuple[EAFramework, dict[str, object]]:
    """Rebuild the framework and provenance from a framework document."""
    arguments = frozenset(node["id"] for node in doc["nodes"])
    attack_by_id: dict[str, Attack] = {}
    attacks = set()
    for record in doc["attacks"]:
        attack = (record["from"], record["to"])
        attack_by_id[record["id"]] = attack
        attacks.add(attack)
    metas = set()
    for record in doc["metaAttacks"]:
        attack_id = record["attackId"]
        if attack_id not in attack_by_id:
            raise ValueError(f"meta-attack references unknown attack id {attack_id!r}")
        metas.add((record["from"], attack_by_id[attack_id]))
    eaf = EAFramework(
        arguments=arguments,
        attacks=frozenset(attacks),
        meta_attacks=frozenset(metas),
    )
    provenance = {node["id"]: parse_argument_id(node["id"]) for node in doc["nodes"]}
    return eaf, provenance


def extensions_doc(solved: SolvedGame) -> list[dict]:
    docs = []
    for ext in solved.report.preferred:
        docs.append({"semantics": "preferred", "members": list(ext.sorted_members())})
    for ext in solved.report.stable:
        docs.append({"semantics": "stable", "members": list(ext.sorted_members())})
    return docs


def results_to_doc(
    solved: SolvedGame,
    counts=None,
    explanations: list[ExplanationNode] | None = None,
) -> dict:
    doc: dict = {
        "engine": solved.report.engine,
        "extensions": extensions_doc(solved),
        "nash": [list(p) for p in solved.report.nash],
        "stableClasses": [
            {
                "gameArgument": c.game_argument,
                "profile": list(c.profile),
                "extensionCount": len(c.extensions),
            }
            for c in solved.report.stable_classes
        ],
    }
    if counts is not None:
        doc["counts"] = {
            "game": counts.game_count,
            "preference": counts.preference_count,
            "valuation": counts.valuation_count,
            "bound": counts.bound,
        }
    if explanations is not None:
        doc["explanations"] = [node.to_doc() for node in explanations]
    return doc


def serialize_results(solved: SolvedGame, counts=None, explanations=None) -> str:
    return canonical_json(results_to_doc(solved, counts, explanations))


_DOT_STYLE = {
    "game": ("#7fb3d5", "ellipse"),
    "preference": ("#f7dc6f", "box"),
    "valuation": ("#7dcea0", "hexagon"),
}


def _dot_quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def to_dot(framework: GameFramework, members: frozenset[str] | None = None) -> str:
    """DOT rendering with distinct node classes and midpoint meta-edges.

    Attacks that are meta-attacked pass through a small anchor node so the
    dashed meta-edge visibly lands on the attack itself.  When ``members``
    is given, arguments outside it are dimmed.
    """
    lines = ["digraph framework {", "  rankdir=LR;", "  node [style=filled];"]
    for arg_id in sorted(framework.provenance):
        kind = framework.kind_of(arg_id)
        color, shape = _DOT_STYLE[kind]
        attrs = [
            f"label={_dot_quote(framework.resolve(arg_id).label())}",
            f"fillcolor={_dot_quote(color)}",
            f"shape={shape}",
        ]
        if members is not None and arg_id not in members:
            attrs.append('fillcolor="#eeeeee"')
            attrs.append('fontcolor="#999999"')
        lines.append(f"  {_dot_quote(arg_id)} [{', '.join(attrs)}];")

    attacks = _sorted_attacks(framework.eaf)
    attack_ids = {attack: f"c{k}" for k, attack in enumerate(attacks)}
    meta_by_attack: dict[Attack, list[str]] = {}
    for z, attack in sorted(framework.eaf.meta_attacks):
        meta_by_attack.setdefault(attack, []).append(z)

    for attack in attacks:
        src, tgt = attack
        if attack in meta_by_attack:
            anchor = f"m_{attack_ids[attack]}"
            lines.append(
                f"  {_dot_quote(anchor)} "
                f'[shape=point, width=0.06, label="", fillcolor="black"];'
            )
            lines.append(
                f"  {_dot_quote(src)} -> {_dot_quote(anchor)} [arrowhead=none];"
            )
            lines.append(f"  {_dot_quote(anchor)} -> {_dot_quote(tgt)};")
            for z in meta_by_attack[attack]:
                lines.append(
                    f"  {_dot_quote(z)} -> {_dot_quote(anchor)} "
                    f'[style=dashed, color="#c0392b"];'
                )
        else:
            lines.append(f"  {_dot_quote(src)} -> {_dot_quote(tgt)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
