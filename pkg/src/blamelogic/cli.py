"""Command-line front end.

Exit codes are uniform across subcommands: 0 when the queried property
holds (or the requested output was produced), 1 when it fails with a
counterexample, 2 on usage or input errors.  stdout carries exactly the
documented payload; everything else goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .checker import (
    StrategySpaceError,
    blamable_coalitions,
    evaluate_all,
)
from .game import GameFormatError, GameValidationError, load
from .generate import GenParams, soundness_sweep
from .parser import ParseError, format_formula, parse
from .proofs import (
    BUNDLED_NAMES,
    AtomLimitError,
    ProofFormatError,
    bundled_script,
    check_proof,
    load_proof,
)

__all__ = ["main", "run"]


def _load_game(path: str):
    return load(Path(path).read_bytes())


def _cmd_check(args: argparse.Namespace) -> int:
    game = _load_game(args.game)
    table = evaluate_all(game, parse(args.formula))
    if not 0 <= args.play < len(game.plays):
        raise ValueError(f"play index {args.play} out of range for {len(game.plays)} plays")
    value = table.truth[args.play]
    print("true" if value else "false")
    return 0 if value else 1


def _cmd_valid(args: argparse.Namespace) -> int:
    game = _load_game(args.game)
    table = evaluate_all(game, parse(args.formula))
    for i, value in enumerate(table.truth):
        if not value:
            print(f"counterexample: play {i}")
            return 1
    print("ok")
    return 0


def _cmd_blame(args: argparse.Namespace) -> int:
    game = _load_game(args.game)
    report = blamable_coalitions(game, args.play, parse(args.formula), args.max_size)
    print(json.dumps(report.as_dict(), indent=2))
    return 0 if report.entries else 1


def _cmd_proof(args: argparse.Namespace) -> int:
    if (args.file is None) == (args.bundled is None):
        print("error: give exactly one of FILE or --bundled NAME", file=sys.stderr)
        return 2
    if args.bundled is not None:
        if args.bundled not in BUNDLED_NAMES:
            known = ", ".join(BUNDLED_NAMES)
            print(f"error: no bundled script {args.bundled!r} (known: {known})", file=sys.stderr)
            return 2
        proof = bundled_script(args.bundled)
    else:
        proof = load_proof(Path(args.file).read_bytes())
    failure = check_proof(proof)
    if failure is None:
        print("ok")
        return 0
    print(str(failure))
    return 1


def _cmd_fuzz(args: argparse.Namespace) -> int:
    params = GenParams(
        seed=args.seed,
        n_agents=4,
        n_actions=4,
        n_outcomes=4,
        n_plays=16,
        n_props=4,
        formula_depth=4,
    )
    report = soundness_sweep(params, args.games, args.instances)
    print(json.dumps(report, indent=2))
    return 0 if not report["failures"] else 1


def _cmd_fmt(args: argparse.Namespace) -> int:
    print(format_formula(parse(args.formula)))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blamelogic",
        description="Model checking and proof checking "
        "for a bimodal logic of coalition blameworthiness.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate a formula at one play")
    p.add_argument("--game", required=True, metavar="FILE")
    p.add_argument("--play", required=True, type=int, metavar="INDEX")
    p.add_argument("--formula", required=True, metavar="TEXT")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("valid", help="check a formula at every play")
    p.add_argument("--game", required=True, metavar="FILE")
    p.add_argument("--formula", required=True, metavar="TEXT")
    p.set_defaults(func=_cmd_valid)

    p = sub.add_parser("blame", help="report blamable coalitions at one play")
    p.add_argument("--game", required=True, metavar="FILE")
    p.add_argument("--play", required=True, type=int, metavar="INDEX")
    p.add_argument("--formula", required=True, metavar="TEXT")
    p.add_argument("--max-size", type=int, default=None, metavar="K")
    p.set_defaults(func=_cmd_blame)

    p = sub.add_parser("proof", help="check a proof script")
    p.add_argument("file", nargs="?", metavar="FILE")
    p.add_argument("--bundled", metavar="NAME")
    p.set_defaults(func=_cmd_proof)

    p = sub.add_parser("fuzz", help="run a soundness sweep over random games")
    p.add_argument("--seed", required=True, type=int, metavar="S")
    p.add_argument("--games", required=True, type=int, metavar="N")
    p.add_argument("--instances", type=int, default=20, metavar="M")
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("fmt", help="print a formula in canonical form")
    p.add_argument("--formula", required=True, metavar="TEXT")
    p.set_defaults(func=_cmd_fmt)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (
        ParseError,
        GameFormatError,
        GameValidationError,
        ProofFormatError,
        StrategySpaceError,
        AtomLimitError,
        ValueError,
        IndexError,
        OSError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
