"""Hilbert-style proof checking for the blame logic.

A proof is a line sequence over hypotheses, propositional tautologies,
axiom-schema instances, modus ponens, and necessitation.  Hypothesis
freeness is tracked per line: taut and axiom lines are free, hypothesis
lines are not, mp propagates freeness, and nec is accepted only on free
lines.  That keeps the hypothesis-mode proof relation to modus ponens
alone while still letting scripts cite full theorems they derive on the
side.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Mapping

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
from .parser import ParseError, format_formula, parse

__all__ = [
    "Schema",
    "SCHEMAS",
    "InstantiationError",
    "AtomLimitError",
    "ProofFormatError",
    "instantiate_schema",
    "is_tautology",
    "Justification",
    "ProofLine",
    "Proof",
    "ProofFailure",
    "check_proof",
    "load_proof",
    "dump_proof",
    "bundled_scripts",
    "bundled_script",
    "BUNDLED_NAMES",
]

MAX_TAUTOLOGY_ATOMS = 20


class InstantiationError(ValueError):
    """Bad substitution for a schema: wrong metavariables or side condition."""


class AtomLimitError(ValueError):
    """Tautology check refused: too many distinct atoms."""


@dataclass(frozen=True)
class Schema:
    name: str
    metavars: tuple[str, ...]
    side_condition: str | None  # None, "disjoint(C,D)", or "subset(C,D)"
    build: Callable[..., Formula]


def _truth_n(phi: Formula) -> Formula:
    return Implies(Necessity(phi), phi)


def _truth_b(phi: Formula, c: Coalition) -> Formula:
    return Implies(Blame(c, phi), phi)


def _distributivity(phi: Formula, psi: Formula) -> Formula:
    return Implies(
        Necessity(Implies(phi, psi)), Implies(Necessity(phi), Necessity(psi))
    )


def _negative_introspection(phi: Formula) -> Formula:
    return Implies(Not(Necessity(phi)), Necessity(Not(Necessity(phi))))


def _none_to_blame(phi: Formula) -> Formula:
    return Not(Blame(Coalition(), phi))


def _joint_responsibility(phi: Formula, psi: Formula, c: Coalition, d: Coalition) -> Formula:
    both = Or(phi, psi)
    return Implies(
        And(possibly(Blame(c, phi)), possibly(Blame(d, psi))),
        Implies(both, Blame(c.union(d), both)),
    )


def _blame_for_cause(phi: Formula, psi: Formula, c: Coalition) -> Formula:
    return Implies(
        Necessity(Implies(phi, psi)),
        Implies(Blame(c, psi), Implies(phi, Blame(c, phi))),
    )


def _monotonicity(phi: Formula, c: Coalition, d: Coalition) -> Formula:
    return Implies(Blame(c, phi), Blame(d, phi))


def _fairness(phi: Formula, c: Coalition) -> Formula:
    return Implies(Blame(c, phi), Necessity(Implies(phi, Blame(c, phi))))


SCHEMAS: dict[str, Schema] = {
    s.name: s
    for s in (
        Schema("TruthN", ("phi",), None, _truth_n),
        Schema("TruthB", ("phi", "C"), None, _truth_b),
        Schema("Distributivity", ("phi", "psi"), None, _distributivity),
        Schema("NegativeIntrospection", ("phi",), None, _negative_introspection),
        Schema("NoneToBlame", ("phi",), None, _none_to_blame),
        Schema(
            "JointResponsibility",
            ("phi", "psi", "C", "D"),
            "disjoint(C,D)",
            _joint_responsibility,
        ),
        Schema("BlameForCause", ("phi", "psi", "C"), None, _blame_for_cause),
        Schema("Monotonicity", ("phi", "C", "D"), "subset(C,D)", _monotonicity),
        Schema("Fairness", ("phi", "C"), None, _fairness),
    )
}


def instantiate_schema(schema: Schema | str, subst: Mapping[str, object]) -> Formula:
    """Fill the schema's template; substitutions must bind its metavariables exactly."""
    if isinstance(schema, str):
        if schema not in SCHEMAS:
            raise InstantiationError(f"unknown schema {schema!r}")
        schema = SCHEMAS[schema]
    bound = dict(subst)
    for var in schema.metavars:
        if var not in bound:
            raise InstantiationError(f"{schema.name}: unbound metavariable {var!r}")
    for var in bound:
        if var not in schema.metavars:
            raise InstantiationError(f"{schema.name}: extra metavariable {var!r}")
    args = []
    for var in schema.metavars:
        value = bound[var]
        if var in ("phi", "psi"):
            if not isinstance(value, Formula):
                raise InstantiationError(f"{schema.name}: {var} must be a formula")
        else:
            if not isinstance(value, Coalition):
                value = Coalition(value)  # accept any iterable of agent ids
        args.append(value)
    if schema.side_condition == "disjoint(C,D)":
        c, d = bound["C"], bound["D"]
        c = c if isinstance(c, Coalition) else Coalition(c)
        d = d if isinstance(d, Coalition) else Coalition(d)
        if not c.isdisjoint(d):
            raise InstantiationError(
                f"{schema.name}: side condition violated, C and D overlap"
            )
    elif schema.side_condition == "subset(C,D)":
        c, d = bound["C"], bound["D"]
        c = c if isinstance(c, Coalition) else Coalition(c)
        d = d if isinstance(d, Coalition) else Coalition(d)
        if not c.issubset(d):
            raise InstantiationError(
                f"{schema.name}: side condition violated, C is not a subset of D"
            )
    return schema.build(*args)


def _collect_atoms(f: Formula, order: dict[Formula, int]) -> None:
    # Modal-rooted subformulas are opaque atoms; only the propositional
    # skeleton is decomposed.
    if isinstance(f, (Prop, Necessity, Blame)):
        if f not in order:
            order[f] = len(order)
    elif isinstance(f, Not):
        _collect_atoms(f.child, order)
    elif isinstance(f, (Implies, And, Or, Iff)):
        _collect_atoms(f.left, order)
        _collect_atoms(f.right, order)
    elif not isinstance(f, (Top, Bottom)):
        raise TypeError(f"not a formula: {f!r}")


def is_tautology(f: Formula) -> bool:
    """Truth-table validity over the propositional skeleton."""
    order: dict[Formula, int] = {}
    _collect_atoms(f, order)
    if len(order) > MAX_TAUTOLOGY_ATOMS:
        raise AtomLimitError(
            f"atom-count overflow: {len(order)} distinct atoms, limit {MAX_TAUTOLOGY_ATOMS}"
        )
    rows = 1 << len(order)
    full = (1 << rows) - 1
    masks: dict[Formula, int] = {}
    for atom, i in order.items():
        # Rows where bit i of the row index is set, as one big bitmask.
        block = 1 << (1 << i)
        masks[atom] = full // (block + 1) * block
    return _table(f, masks, full) == full


def _table(f: Formula, masks: dict[Formula, int], full: int) -> int:
    if isinstance(f, (Prop, Necessity, Blame)):
        return masks[f]
    if isinstance(f, Top):
        return full
    if isinstance(f, Bottom):
        return 0
    if isinstance(f, Not):
        return ~_table(f.child, masks, full) & full
    if isinstance(f, Implies):
        return (~_table(f.left, masks, full) | _table(f.right, masks, full)) & full
    if isinstance(f, And):
        return _table(f.left, masks, full) & _table(f.right, masks, full)
    if isinstance(f, Or):
        return _table(f.left, masks, full) | _table(f.right, masks, full)
    if isinstance(f, Iff):
        return ~(_table(f.left, masks, full) ^ _table(f.right, masks, full)) & full
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class Justification:
    """One line's rule.  References are 1-based, as in script files:
    hyp refers into the hypothesis list, mp/nec into earlier lines."""

    kind: str  # "hyp" | "taut" | "axiom" | "mp" | "nec"
    refs: tuple[int, ...] = ()
    name: str | None = None
    subst: Mapping[str, object] | None = None


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class Proof:
    hypotheses: tuple[Formula, ...]
    claim: Formula
    lines: tuple[ProofLine, ...]


@dataclass(frozen=True)
class ProofFailure:
    line: int  # 1-based; 0 when the proof as a whole is malformed
    reason: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.reason}" if self.line else self.reason


def check_proof(proof: Proof) -> ProofFailure | None:
    """None when every line checks and the last line is the claim."""
    free: list[bool] = []
    for num, line in enumerate(proof.lines, start=1):
        j = line.just
        if j.kind == "hyp":
            if len(j.refs) != 1 or not 1 <= j.refs[0] <= len(proof.hypotheses):
                return ProofFailure(num, f"bad hypothesis reference {list(j.refs)}")
            if proof.hypotheses[j.refs[0] - 1] != line.formula:
                return ProofFailure(num, f"formula does not match hypothesis {j.refs[0]}")
            free.append(False)
        elif j.kind == "taut":
            try:
                ok = is_tautology(line.formula)
            except AtomLimitError as e:
                return ProofFailure(num, str(e))
            if not ok:
                return ProofFailure(num, "not a propositional tautology")
            free.append(True)
        elif j.kind == "axiom":
            if j.name not in SCHEMAS:
                return ProofFailure(num, f"unknown schema {j.name!r}")
            try:
                instance = instantiate_schema(j.name, j.subst or {})
            except InstantiationError as e:
                return ProofFailure(num, str(e))
            if instance != line.formula:
                return ProofFailure(num, f"formula is not that {j.name} instance")
            free.append(True)
        elif j.kind == "mp":
            if len(j.refs) != 2 or not all(1 <= r < num for r in j.refs):
                return ProofFailure(num, f"bad line reference {list(j.refs)}")
            i, k = j.refs
            premise = proof.lines[i - 1].formula
            rule = proof.lines[k - 1].formula
            if rule != Implies(premise, line.formula):
                return ProofFailure(
                    num, f"line {k} is not (line {i} -> this line)"
                )
            free.append(free[i - 1] and free[k - 1])
        elif j.kind == "nec":
            if len(j.refs) != 1 or not 1 <= j.refs[0] < num:
                return ProofFailure(num, f"bad line reference {list(j.refs)}")
            src = j.refs[0]
            if line.formula != Necessity(proof.lines[src - 1].formula):
                return ProofFailure(num, f"formula is not N applied to line {src}")
            if not free[src - 1]:
                return ProofFailure(num, "necessitation under hypothesis")
            free.append(True)
        else:
            return ProofFailure(num, f"unknown justification kind {j.kind!r}")
    if not proof.lines:
        return ProofFailure(0, "empty proof")
    if proof.lines[-1].formula != proof.claim:
        return ProofFailure(len(proof.lines), "final line does not match the claim")
    return None


class ProofFormatError(ValueError):
    """The document is not shaped like a proof script."""


def _parse_formula(text: object, where: str) -> Formula:
    if not isinstance(text, str):
        raise ProofFormatError(f"{where}: formula must be a string")
    try:
        return parse(text)
    except ParseError as e:
        raise ProofFormatError(f"{where}: {e}") from e


def load_proof(document: bytes | str) -> Proof:
    """Parse a proof script; formulas use the concrete grammar, lines are 1-based."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as e:
        raise ProofFormatError(f"bad JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict) or not {"hypotheses", "claim", "lines"} <= set(doc):
        raise ProofFormatError("script must have hypotheses, claim, and lines")
    raw_hyps = doc["hypotheses"]
    if not isinstance(raw_hyps, list):
        raise ProofFormatError("hypotheses must be a list")
    hypotheses = tuple(
        _parse_formula(h, f"hypothesis {i + 1}") for i, h in enumerate(raw_hyps)
    )
    claim = _parse_formula(doc["claim"], "claim")
    raw_lines = doc["lines"]
    if not isinstance(raw_lines, list):
        raise ProofFormatError("lines must be a list")
    lines = []
    for i, entry in enumerate(raw_lines):
        where = f"line {i + 1}"
        if not isinstance(entry, dict) or "formula" not in entry or "just" not in entry:
            raise ProofFormatError(f"{where}: must have formula and just")
        formula = _parse_formula(entry["formula"], where)
        raw_just = entry["just"]
        if not isinstance(raw_just, dict) or "kind" not in raw_just:
            raise ProofFormatError(f"{where}: just must be an object with a kind")
        kind = raw_just["kind"]
        refs = raw_just.get("from", [])
        if not isinstance(refs, list) or not all(
            isinstance(r, int) and not isinstance(r, bool) for r in refs
        ):
            raise ProofFormatError(f"{where}: 'from' must be a list of line numbers")
        subst = None
        if "subst" in raw_just:
            raw_subst = raw_just["subst"]
            if not isinstance(raw_subst, dict):
                raise ProofFormatError(f"{where}: subst must be an object")
            subst = {}
            for var, value in raw_subst.items():
                if var in ("phi", "psi"):
                    subst[var] = _parse_formula(value, f"{where} subst {var}")
                elif var in ("C", "D"):
                    if not isinstance(value, list) or not all(
                        isinstance(a, str) for a in value
                    ):
                        raise ProofFormatError(f"{where}: subst {var} must be a list of agent ids")
                    subst[var] = Coalition(value)
                else:
                    raise ProofFormatError(f"{where}: unknown subst key {var!r}")
        lines.append(
            ProofLine(formula, Justification(kind, tuple(refs), raw_just.get("name"), subst))
        )
    return Proof(hypotheses, claim, tuple(lines))


def dump_proof(proof: Proof) -> bytes:
    """Canonical script bytes for a Proof value (inverse of load_proof)."""
    doc: dict = {
        "hypotheses": [format_formula(h) for h in proof.hypotheses],
        "claim": format_formula(proof.claim),
        "lines": [],
    }
    for line in proof.lines:
        just: dict = {"kind": line.just.kind}
        if line.just.name is not None:
            just["name"] = line.just.name
        if line.just.subst is not None:
            sub: dict = {}
            for var in ("phi", "psi", "C", "D"):
                if var in line.just.subst:
                    value = line.just.subst[var]
                    if isinstance(value, Formula):
                        sub[var] = format_formula(value)
                    else:
                        members = value.members if isinstance(value, Coalition) else tuple(value)
                        sub[var] = list(members)
            just["subst"] = sub
        if line.just.refs:
            just["from"] = list(line.just.refs)
        doc["lines"].append({"formula": format_formula(line.formula), "just": just})
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


BUNDLED_NAMES: tuple[str, ...] = (
    "lemma1",
    "lemma2",
    "lemma3_instance",
    "lemma4",
    "lemma5_n2",
    "lemma5_n3",
    "lemma6_n2",
    "lemma6_n3",
    "lemma7",
    "lemma8_n2",
    "lemma8_n3",
)


def bundled_script(name: str) -> Proof:
    if name not in BUNDLED_NAMES:
        raise KeyError(f"no bundled script named {name!r}")
    data = resources.files("blamelogic").joinpath(f"data/proofs/{name}.json").read_bytes()
    return load_proof(data)


def bundled_scripts() -> list[tuple[str, Proof]]:
    """All shipped scripts; every one passes check_proof."""
    return [(name, bundled_script(name)) for name in BUNDLED_NAMES]
