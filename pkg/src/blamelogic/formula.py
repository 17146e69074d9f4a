"""Formula AST for the coalition blame logic.

The core grammar is propositions, !, ->, N (true at every play) and
B{...} (the coalition is blamable).  The usual derived connectives are
kept as first-class nodes.  "<N>" (true at some play) is not a node: it
is always stored desugared as Not(Necessity(Not(...))).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "Coalition",
    "Formula",
    "Prop",
    "Not",
    "Implies",
    "Necessity",
    "Blame",
    "Top",
    "Bottom",
    "And",
    "Or",
    "Iff",
    "possibly",
    "syntactic_eq",
    "modal_depth",
    "agents_mentioned",
    "check_ident",
    "is_ident",
]

_IDENT = re.compile(r"[a-z][A-Za-z0-9_]*\Z")

# Keywords of the concrete syntax; an identifier spelled like one would
# not round-trip through the printer.
_RESERVED = frozenset({"true", "false"})


def is_ident(name: object) -> bool:
    return isinstance(name, str) and bool(_IDENT.match(name)) and name not in _RESERVED


def check_ident(name: str, role: str = "identifier") -> str:
    if not isinstance(name, str) or not _IDENT.match(name):
        raise ValueError(f"invalid {role} {name!r}: must start with a lowercase letter")
    if name in _RESERVED:
        raise ValueError(f"invalid {role} {name!r}: reserved word")
    return name


@dataclass(frozen=True, init=False)
class Coalition:
    """A set of agent ids in canonical form: sorted, deduplicated, possibly empty."""

    members: tuple[str, ...]

    def __init__(self, members: Iterable[str] = ()) -> None:
        canon = tuple(sorted({check_ident(a, "agent id") for a in members}))
        object.__setattr__(self, "members", canon)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, agent: object) -> bool:
        return agent in self.members

    def issubset(self, other: "Coalition") -> bool:
        return set(self.members) <= set(other.members)

    def isdisjoint(self, other: "Coalition") -> bool:
        return not (set(self.members) & set(other.members))

    def union(self, other: "Coalition") -> "Coalition":
        return Coalition(self.members + other.members)

    def __str__(self) -> str:
        return "{" + ",".join(self.members) + "}"


class Formula:
    """Base marker; concrete node types are the dataclasses below."""

    __slots__ = ()


@dataclass(frozen=True)
class Prop(Formula):
    name: str

    def __post_init__(self) -> None:
        check_ident(self.name, "proposition")


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Necessity(Formula):
    child: Formula


@dataclass(frozen=True)
class Blame(Formula):
    coalition: Coalition
    child: Formula

    def __post_init__(self) -> None:
        if not isinstance(self.coalition, Coalition):
            object.__setattr__(self, "coalition", Coalition(self.coalition))


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


def possibly(f: Formula) -> Formula:
    """The "<N>" connective: true at some play.  Stored desugared."""
    return Not(Necessity(Not(f)))


def syntactic_eq(a: Formula, b: Formula) -> bool:
    """Node-for-node identity; coalitions compare as canonical sets."""
    return a == b


def modal_depth(f: Formula) -> int:
    """Maximal nesting of Necessity/Blame nodes."""
    if isinstance(f, (Prop, Top, Bottom)):
        return 0
    if isinstance(f, Not):
        return modal_depth(f.child)
    if isinstance(f, (Implies, And, Or, Iff)):
        return max(modal_depth(f.left), modal_depth(f.right))
    if isinstance(f, Necessity):
        return 1 + modal_depth(f.child)
    if isinstance(f, Blame):
        return 1 + modal_depth(f.child)
    raise TypeError(f"not a formula: {f!r}")


def agents_mentioned(f: Formula) -> set[str]:
    """Union of all Blame coalitions in the tree."""
    out: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, (Not, Necessity)):
            stack.append(node.child)
        elif isinstance(node, (Implies, And, Or, Iff)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Blame):
            out.update(node.coalition)
            stack.append(node.child)
    return out
