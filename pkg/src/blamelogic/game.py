"""Finite one-shot games: agents, actions, outcomes, plays, valuation.

A play is one complete action profile together with one outcome drawn
from the game's play list.  The mechanism is a relation: a profile may
occur in zero plays or in several plays with different outcomes.  The
valuation assigns each proposition the set of play indices where it is
true; unmentioned propositions are false everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .formula import Coalition, is_ident

__all__ = [
    "Game",
    "Play",
    "Strategy",
    "GameFormatError",
    "GameValidationError",
    "validate",
    "agrees",
    "load",
    "save",
]


class GameFormatError(ValueError):
    """The document is not shaped like a game file."""


class GameValidationError(ValueError):
    """The document parsed but the game breaks a structural invariant."""

    def __init__(self, violations: list[str]) -> None:
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass(frozen=True)
class Play:
    profile: Mapping[str, str]
    outcome: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "profile", dict(self.profile))

    def _key(self) -> tuple:
        return (tuple(sorted(self.profile.items())), self.outcome)


@dataclass(frozen=True)
class Game:
    agents: tuple[str, ...]
    actions: tuple[str, ...]
    outcomes: tuple[str, ...]
    plays: tuple[Play, ...] = ()
    valuation: Mapping[str, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "agents", tuple(self.agents))
        object.__setattr__(self, "actions", tuple(self.actions))
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        object.__setattr__(self, "plays", tuple(self.plays))
        object.__setattr__(
            self,
            "valuation",
            {name: frozenset(ix) for name, ix in dict(self.valuation).items()},
        )


@dataclass(frozen=True)
class Strategy:
    """An action choice for exactly the members of one coalition."""

    coalition: Coalition
    choice: Mapping[str, str]

    def __post_init__(self) -> None:
        if not isinstance(self.coalition, Coalition):
            object.__setattr__(self, "coalition", Coalition(self.coalition))
        object.__setattr__(self, "choice", dict(self.choice))
        if set(self.choice) != set(self.coalition.members):
            raise ValueError("strategy domain must equal the coalition")


def agrees(s: Strategy, p: Play) -> bool:
    """True when the play's profile matches the strategy on every member.

    Vacuously true for the empty coalition.
    """
    return all(p.profile.get(a) == s.choice[a] for a in s.coalition)


def validate(g: Game) -> list[str]:
    """All invariant violations, in a stable order; empty means ok."""
    out: list[str] = []
    seen_agents: set[str] = set()
    for a in g.agents:
        if not is_ident(a):
            out.append(f"invalid agent id {a!r}")
        elif a in seen_agents:
            out.append(f"duplicate agent {a!r}")
        seen_agents.add(a)
    if not g.actions:
        out.append("empty action set")
    for group, label in ((g.actions, "action"), (g.outcomes, "outcome")):
        seen: set[str] = set()
        for x in group:
            if not isinstance(x, str) or not x:
                out.append(f"invalid {label} {x!r}")
            elif x in seen:
                out.append(f"duplicate {label} {x!r}")
            seen.add(x)

    agent_set = set(g.agents)
    action_set = set(g.actions)
    outcome_set = set(g.outcomes)
    seen_plays: set[tuple] = set()
    for i, play in enumerate(g.plays):
        for a in g.agents:
            if a not in play.profile:
                out.append(f"play {i}: profile missing agent {a!r}")
        for a, x in play.profile.items():
            if a not in agent_set:
                out.append(f"play {i}: unknown agent {a!r}")
            elif x not in action_set:
                out.append(f"play {i}: action {x!r} not listed")
        if play.outcome not in outcome_set:
            out.append(f"play {i}: outcome {play.outcome!r} not listed")
        key = play._key()
        if key in seen_plays:
            out.append(f"duplicate play {i}")
        seen_plays.add(key)

    for name in sorted(g.valuation):
        if not is_ident(name):
            out.append(f"invalid proposition name {name!r}")
        for k in sorted(g.valuation[name]):
            if not isinstance(k, int) or not 0 <= k < len(g.plays):
                out.append(f"valuation {name!r}: play index out of range: {k}")
    return out


def _expect_str_list(doc: dict, key: str) -> list[str]:
    value = doc.get(key)
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise GameFormatError(f"key {key!r} must be a list of strings")
    return value


def load(document: bytes | str) -> Game:
    """Parse and validate a game document; raises on either failure."""
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as e:
            raise GameFormatError(f"not UTF-8: {e}") from e
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as e:
        raise GameFormatError(f"bad JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise GameFormatError("top level must be an object")
    required = ("agents", "actions", "outcomes", "plays", "valuation")
    for key in required:
        if key not in doc:
            raise GameFormatError(f"missing key {key!r}")
    for key in doc:
        if key not in required:
            raise GameFormatError(f"unexpected key {key!r}")

    agents = _expect_str_list(doc, "agents")
    actions = _expect_str_list(doc, "actions")
    outcomes = _expect_str_list(doc, "outcomes")

    raw_plays = doc["plays"]
    if not isinstance(raw_plays, list):
        raise GameFormatError("key 'plays' must be a list")
    plays = []
    for i, entry in enumerate(raw_plays):
        if (
            not isinstance(entry, dict)
            or set(entry) != {"profile", "outcome"}
            or not isinstance(entry["profile"], dict)
            or not isinstance(entry["outcome"], str)
            or not all(
                isinstance(k, str) and isinstance(v, str) for k, v in entry["profile"].items()
            )
        ):
            raise GameFormatError(f"play {i} must be {{'profile': {{agent: action}}, 'outcome': str}}")
        plays.append(Play(entry["profile"], entry["outcome"]))

    raw_val = doc["valuation"]
    if not isinstance(raw_val, dict):
        raise GameFormatError("key 'valuation' must be an object")
    valuation: dict[str, frozenset[int]] = {}
    for name, indices in raw_val.items():
        if not isinstance(indices, list) or not all(
            isinstance(k, int) and not isinstance(k, bool) for k in indices
        ):
            raise GameFormatError(f"valuation {name!r} must be a list of play indices")
        valuation[name] = frozenset(indices)

    game = Game(tuple(agents), tuple(actions), tuple(outcomes), tuple(plays), valuation)
    violations = validate(game)
    if violations:
        raise GameValidationError(violations)
    return game


def save(g: Game) -> bytes:
    """Canonical UTF-8 document; load(save(g)) == g, save(load(d)) is a fixpoint."""
    doc = {
        "agents": list(g.agents),
        "actions": list(g.actions),
        "outcomes": list(g.outcomes),
        "plays": [
            {"profile": {a: p.profile[a] for a in g.agents}, "outcome": p.outcome}
            for p in g.plays
        ],
        "valuation": {name: sorted(g.valuation[name]) for name in sorted(g.valuation)},
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
