"""Deterministic generation of games and formulas, plus soundness sweeps.

The random source is SplitMix64 (Steele, Lea and Flood 2014), fixed by
name on purpose: identical seeds must reproduce identical corpora and
reports on any platform, so no stdlib generator is involved.  Per-game
sub-seeds are drawn from the master stream by game index, which keeps
reports independent of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product
from typing import Callable, Sequence

from . import checker
from .formula import (
    And,
    Blame,
    Bottom,
    Coalition,
    Formula,
    Iff,
    Implies,
    Necessity,
    Not,
    Or,
    Prop,
    Top,
    possibly,
)
from .game import Game, Play, save
from .parser import format_formula
from .proofs import SCHEMAS, instantiate_schema

__all__ = [
    "SplitMix64",
    "GenParams",
    "random_game",
    "random_formula",
    "corpus_games",
    "soundness_sweep",
    "AGENT_ROSTER",
    "PROP_ROSTER",
]

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

AGENT_ROSTER = ("a", "b", "c", "d")
PROP_ROSTER = ("p", "q", "r", "s")
_ACTION_ROSTER = ("act0", "act1", "act2", "act3")
_OUTCOME_ROSTER = ("out0", "out1", "out2", "out3")


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        # Modulo bias is negligible at these ranges and keeps the
        # stream portable.
        return self.next64() % n

    def choice(self, seq: Sequence):
        return seq[self.below(len(seq))]

    def sample(self, seq: Sequence, k: int) -> list:
        """k distinct elements, by partial Fisher-Yates."""
        pool = list(seq)
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def subset(self, seq: Sequence) -> list:
        return [x for x in seq if self.below(2)]


@dataclass(frozen=True)
class GenParams:
    """Size bounds for one generated game and its formulas."""

    seed: int = 0
    n_agents: int = 2
    n_actions: int = 2
    n_outcomes: int = 2
    n_plays: int = 6
    n_props: int = 2
    formula_depth: int = 4

    def __post_init__(self) -> None:
        checks = (
            (0 <= self.seed <= _MASK64, "seed must fit in 64 bits"),
            (1 <= self.n_agents <= 4, "n_agents must be in [1, 4]"),
            (1 <= self.n_actions <= 4, "n_actions must be in [1, 4]"),
            (1 <= self.n_outcomes <= 4, "n_outcomes must be in [1, 4]"),
            (0 <= self.n_plays <= 16, "n_plays must be in [0, 16]"),
            (1 <= self.n_props <= 4, "n_props must be in [1, 4]"),
            (0 <= self.formula_depth <= 6, "formula_depth must be in [0, 6]"),
        )
        for ok, message in checks:
            if not ok:
                raise ValueError(message)


def random_game(params: GenParams) -> Game:
    """One valid game of exactly the requested sizes.

    Plays are drawn without replacement from profiles x outcomes, so a
    profile can occur with several outcomes or not at all; the count is
    clamped to the pool size.
    """
    rng = SplitMix64(params.seed)
    agents = AGENT_ROSTER[: params.n_agents]
    actions = _ACTION_ROSTER[: params.n_actions]
    outcomes = _OUTCOME_ROSTER[: params.n_outcomes]
    profiles = list(product(actions, repeat=len(agents)))
    pool = len(profiles) * len(outcomes)
    count = min(params.n_plays, pool)
    plays = []
    for code in rng.sample(range(pool), count):
        profile = dict(zip(agents, profiles[code // len(outcomes)]))
        plays.append(Play(profile, outcomes[code % len(outcomes)]))
    valuation = {
        name: frozenset(i for i in range(count) if rng.below(2))
        for name in PROP_ROSTER[: params.n_props]
    }
    return Game(agents, actions, outcomes, tuple(plays), valuation)


def random_formula(params: GenParams, game: Game) -> Formula:
    """One formula over the game's propositions and agents, depth-bounded."""
    rng = SplitMix64(params.seed)
    return _formula(rng, params.formula_depth, game)


_LEAVES = ("prop", "prop", "prop", "top", "bottom")
_NODES = ("prop", "not", "implies", "and", "or", "iff", "nec", "poss", "blame")


def _formula(rng: SplitMix64, depth: int, game: Game) -> Formula:
    props = sorted(game.valuation) or ["p"]
    kind = rng.choice(_LEAVES) if depth <= 0 else rng.choice(_NODES)
    if kind == "poss" and depth < 3:
        kind = "not"  # "<N>" desugars to three nodes, so it needs the room
    if kind == "prop":
        return Prop(rng.choice(props))
    if kind == "top":
        return Top()
    if kind == "bottom":
        return Bottom()
    if kind == "not":
        return Not(_formula(rng, depth - 1, game))
    if kind == "implies":
        return Implies(_formula(rng, depth - 1, game), _formula(rng, depth - 1, game))
    if kind == "and":
        return And(_formula(rng, depth - 1, game), _formula(rng, depth - 1, game))
    if kind == "or":
        return Or(_formula(rng, depth - 1, game), _formula(rng, depth - 1, game))
    if kind == "iff":
        return Iff(_formula(rng, depth - 1, game), _formula(rng, depth - 1, game))
    if kind == "nec":
        return Necessity(_formula(rng, depth - 1, game))
    if kind == "poss":
        return possibly(_formula(rng, depth - 3, game))
    return Blame(Coalition(rng.subset(game.agents)), _formula(rng, depth - 1, game))


def _corpus_game(params: GenParams, sub_seed: int) -> tuple[Game, SplitMix64]:
    """Build game number i of a corpus and hand back its live stream."""
    rng = SplitMix64(sub_seed)
    sizes = replace(
        params,
        seed=rng.next64(),
        n_agents=1 + rng.below(params.n_agents),
        n_actions=1 + rng.below(params.n_actions),
        n_outcomes=1 + rng.below(params.n_outcomes),
        n_plays=rng.below(params.n_plays + 1),
        n_props=1 + rng.below(params.n_props),
    )
    return random_game(sizes), rng


def corpus_games(params: GenParams, count: int) -> list[Game]:
    """The exact game corpus a sweep with these params walks through."""
    master = SplitMix64(params.seed)
    return [_corpus_game(params, master.next64())[0] for _ in range(count)]


def _sample_subst(rng: SplitMix64, params: GenParams, game: Game, schema_name: str) -> dict:
    schema = SCHEMAS[schema_name]
    subst: dict = {}

    def draw() -> Formula:
        return random_formula(replace(params, seed=rng.next64()), game)

    if "phi" in schema.metavars:
        subst["phi"] = draw()
    if "psi" in schema.metavars:
        subst["psi"] = draw()
    agents = list(game.agents)
    if schema.side_condition == "disjoint(C,D)":
        c = rng.subset(agents)
        rest = [a for a in agents if a not in c]
        subst["C"] = Coalition(c)
        subst["D"] = Coalition(rng.subset(rest))
    elif schema.side_condition == "subset(C,D)":
        c = rng.subset(agents)
        extra = rng.subset([a for a in agents if a not in c])
        subst["C"] = Coalition(c)
        subst["D"] = Coalition(c + extra)
    elif "C" in schema.metavars:
        subst["C"] = Coalition(rng.subset(agents))
    return subst


def soundness_sweep(
    params: GenParams,
    games: int,
    instances_per_schema: int,
    *,
    pinned: Sequence[Game] = (),
    evaluate_all_fn: Callable[[Game, Formula], checker.EvalTable] | None = None,
) -> dict:
    """Assert every sampled schema instance at every play of every game.

    Also checks, per game, that necessitation preserves validity and that
    an empty coalition is never blamable.  Failures land in the report
    with the canonical game document embedded; any failure means a bug.
    ``evaluate_all_fn`` exists so tests can aim the sweep at a broken
    evaluator and watch it object.
    """
    evaluate = evaluate_all_fn or checker.evaluate_all
    schema_names = sorted(SCHEMAS)
    totals = {name: 0 for name in schema_names}
    extras = {"necessitation": 0, "empty_coalition": 0}
    failures: list[dict] = []

    master = SplitMix64(params.seed)
    corpus: list[tuple[int, Game, SplitMix64]] = []
    for i in range(games):
        game, rng = _corpus_game(params, master.next64())
        corpus.append((i, game, rng))
    for k, game in enumerate(pinned):
        corpus.append((games + k, game, SplitMix64(master.next64())))

    def record(index: int, game: Game, label: str, formula: Formula, play: int) -> None:
        failures.append(
            {
                "game_index": index,
                "game": save(game).decode("utf-8"),
                "schema": label,
                "formula": format_formula(formula),
                "play": play,
            }
        )

    for index, game, rng in corpus:
        for name in schema_names:
            for _ in range(instances_per_schema):
                instance = instantiate_schema(name, _sample_subst(rng, params, game, name))
                table = evaluate(game, instance)
                totals[name] += 1
                for play, value in enumerate(table.truth):
                    if not value:
                        record(index, game, name, instance, play)
                        break
        for _ in range(3):
            f = random_formula(replace(params, seed=rng.next64()), game)
            if all(evaluate(game, f).truth):
                extras["necessitation"] += 1
                boxed = evaluate(game, Necessity(f)).truth
                if not all(boxed):
                    record(index, game, "necessitation", Necessity(f), boxed.index(False))
            empty = Blame(Coalition(), f)
            extras["empty_coalition"] += 1
            table = evaluate(game, empty)
            for play, value in enumerate(table.truth):
                if value:
                    record(index, game, "empty_coalition", empty, play)
                    break

    return {
        "seed": params.seed,
        "games": games + len(pinned),
        "instances_per_schema": instances_per_schema,
        "schema_totals": totals,
        "extra_totals": extras,
        "failures": failures,
    }
