"""Command-line entry points.

Exit codes: 0 success, 1 usage error, 2 validation failure,
3 internal-consistency (cross-validation) failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .build import argument_counts, assemble_framework, check_eaf_condition
from .eaf import FrameworkTooLargeError
from .explain import ExplanationNode, explain_nash, explain_not_nash
from .formats import (
    load_game,
    serialize_framework,
    serialize_game,
    serialize_results,
    to_dot,
)
from .game import Game, GameValidationError
from .solve import (
    CandidateCapError,
    InternalConsistencyError,
    cross_validate,
    solve_game,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_INCONSISTENT = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, "utf-8")


def _parse_profile(game: Game, flag_value: str) -> tuple[str, ...]:
    profile = tuple(flag_value.split(","))
    try:
        return game.check_profile(profile)
    except ValueError as err:
        raise UsageError(f"--profile {flag_value!r}: {err}")


def cmd_validate(args) -> int:
    game = load_game(args.game)
    counts = argument_counts(game)
    print(f"{args.game}: valid game")
    print(f"  players: {len(game.players)}")
    print(f"  strategies: {', '.join(str(len(m)) for m in game.strategies)}")
    print(
        f"  framework size: {counts.game_count} game + "
        f"{counts.preference_count} preference + "
        f"{counts.valuation_count} valuation arguments"
    )
    return EXIT_OK


def cmd_build(args) -> int:
    game = load_game(args.game)
    framework = assemble_framework(game)
    ok, violations = check_eaf_condition(framework.eaf)
    if not ok:
        print(
            f"framework violates the meta-attack coherence condition: "
            f"{violations[0]}",
            file=sys.stderr,
        )
        return EXIT_INCONSISTENT
    if args.format == "dot":
        _write_output(to_dot(framework), args.output)
    else:
        _write_output(serialize_framework(framework), args.output)
    return EXIT_OK


def cmd_solve(args) -> int:
    game = load_game(args.game)
    solved = solve_game(game, engine=args.engine)
    counts = argument_counts(game)
    if args.semantics != "both":
        # Restrict the emitted extensions to the requested semantics.
        from dataclasses import replace

        report = solved.report
        if args.semantics == "preferred":
            report = replace(report, stable=(), stable_classes=())
        else:
            report = replace(report, preferred=(), preferred_game_args=())
        solved = type(solved)(game=solved.game, framework=solved.framework, report=report)
    _write_output(serialize_results(solved, counts=counts), args.output)
    return EXIT_OK


def cmd_nash(args) -> int:
    game = load_game(args.game)
    if args.check_oracle:
        report = cross_validate(game)
        print(
            f"cross-validation passed on {report.argument_count} arguments "
            f"(generic engine compared: {report.generic_compared})",
            file=sys.stderr,
        )
    solved = solve_game(game, engine="structured")
    counts = argument_counts(game)
    _write_output(serialize_results(solved, counts=counts), args.output)
    return EXIT_OK


def _render_tree(node: ExplanationNode, indent: int = 0) -> str:
    pad = "  " * indent
    lines = [f"{pad}- {node.kind.value}: {node.prose}"]
    refs = [
        str(v)
        for k, v in node.referents.items()
        if k in ("argument", "attacker", "target") and isinstance(v, str)
    ]
    if refs:
        lines.append(f"{pad}  ({', '.join(refs)})")
    for child in node.children:
        lines.append(_render_tree(child, indent + 1))
    return "\n".join(lines)


def cmd_explain(args) -> int:
    game = load_game(args.game)
    solved = solve_game(game, engine="structured")
    profile = _parse_profile(game, args.profile)
    if profile in solved.report.nash:
        node = explain_nash(solved, profile)
    else:
        node = explain_not_nash(solved, profile)
    if args.json:
        _write_output(json.dumps(node.to_doc(), indent=2, sort_keys=True) + "\n", args.output)
    else:
        _write_output(_render_tree(node) + "\n", args.output)
    return EXIT_OK


def cmd_report(args) -> int:
    from .render import render_framework_figure, render_payoff_matrix

    game = load_game(args.game)
    solved = solve_game(game, engine="structured")
    counts = argument_counts(game)
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    (out_dir / "game.json").write_text(serialize_game(game), "utf-8")
    (out_dir / "framework.json").write_text(
        serialize_framework(solved.framework), "utf-8"
    )
    (out_dir / "framework.dot").write_text(to_dot(solved.framework), "utf-8")
    (out_dir / "results.json").write_text(
        serialize_results(solved, counts=counts), "utf-8"
    )

    with (out_dir / "extensions.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["semantics", "extension", "member"])
        for k, ext in enumerate(solved.report.preferred):
            for member in ext.sorted_members():
                writer.writerow(["preferred", k, member])
        for k, ext in enumerate(solved.report.stable):
            for member in ext.sorted_members():
                writer.writerow(["stable", k, member])

    with (out_dir / "nash.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["profile"] + list(game.players))
        for p in solved.report.nash:
            writer.writerow([",".join(p)] + list(p))

    render_framework_figure(solved.framework, out_dir / "framework.png")
    if game.n_players == 2:
        render_payoff_matrix(game, solved.report.nash, out_dir / "matrix.png")
    print(f"report written to {out_dir}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    game = load_game(args.game)
    app = create_app(game, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="argnash", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a game file")
    p.add_argument("game")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="emit the argumentation framework")
    p.add_argument("game")
    p.add_argument("--format", choices=("graph", "dot"), default="graph")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("solve", help="enumerate extensions")
    p.add_argument("game")
    p.add_argument(
        "--semantics", choices=("preferred", "stable", "both"), default="both"
    )
    p.add_argument("--engine", choices=("structured", "generic"), default="structured")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("nash", help="pure equilibria via the framework")
    p.add_argument("game")
    p.add_argument("--check-oracle", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_nash)

    p = sub.add_parser("explain", help="why a profile is or is not an equilibrium")
    p.add_argument("game")
    p.add_argument("--profile", required=True, help="comma-separated strategies")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("report", help="figures plus delimited output")
    p.add_argument("game")
    p.add_argument("-o", "--output-dir", default="report")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("game")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", default=None, help="static frontend to mount at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except GameValidationError as err:
        print(f"validation error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except (FrameworkTooLargeError, CandidateCapError) as err:
        print(f"validation error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except InternalConsistencyError as err:
        print(f"internal consistency error: {err}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except FileNotFoundError as err:
        print(f"validation error: {err}", file=sys.stderr)
        return EXIT_VALIDATION


def entrypoint() -> None:  # console script
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entrypoint()
