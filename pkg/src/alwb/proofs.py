"""Hilbert-style proof checking for the Abelian axiomatic system.

The system has fourteen axiom schemata plus modus ponens and adjunction.
Proofs are linear step sequences (finitary rules only); axiom steps carry
their substitution explicitly, so checking never searches.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .formulas import (
    BINARY, Consecution, Formula, Impl, Meet, NameTable, Substitution, Var,
    parse_consecution, parse_formula, substitute, _tokenize,
)

__all__ = [
    "AXIOM_SCHEMAS", "Hyp", "Ax", "MP", "Adj", "ProofStep", "Proof",
    "Accepted", "Rejected", "match_axiom", "check_proof", "parse_proof",
    "load_proof",
]

_PHI, _PSI, _XI = Var(0), Var(1), Var(2)

#: The axiom schemata, keyed by their conventional short names.
AXIOM_SCHEMAS: dict[str, Formula] = {
    "sf": Impl(Impl(_PHI, _PSI), Impl(Impl(_PSI, _XI), Impl(_PHI, _XI))),
    "e": Impl(Impl(_PHI, Impl(_PSI, _XI)), Impl(_PSI, Impl(_PHI, _XI))),
    "id": Impl(_PHI, _PHI),
    "abe": Impl(Impl(Impl(_PHI, _PSI), _PSI), _PHI),
    "ub1": Impl(_PHI, parse_formula("p \\/ q")),
    "ub2": Impl(_PSI, parse_formula("p \\/ q")),
    "lb1": Impl(parse_formula("p /\\ q"), _PHI),
    "lb2": Impl(parse_formula("p /\\ q"), _PSI),
    "sup": parse_formula("(p -> r) /\\ (q -> r) -> (p \\/ q -> r)"),
    "inf": parse_formula("(r -> p) /\\ (r -> q) -> (r -> p /\\ q)"),
    "push": parse_formula("p -> (t -> p)"),
    "pop": parse_formula("(t -> p) -> p"),
    "res1": parse_formula("(p -> (q -> r)) -> (p * q -> r)"),
    "res2": parse_formula("(p * q -> r) -> (p -> (q -> r))"),
}


def match_axiom(formula: Formula, schema: str | Formula) -> dict[int, Formula] | None:
    """First-order matching of a formula against an axiom template; returns
    the unique substitution, or None when the shapes disagree."""
    template = AXIOM_SCHEMAS[schema] if isinstance(schema, str) else schema
    binding: dict[int, Formula] = {}

    def walk(pat: Formula, target: Formula) -> bool:
        if isinstance(pat, Var):
            seen = binding.setdefault(pat.index, target)
            return seen == target
        if isinstance(pat, BINARY):
            return (type(pat) is type(target)
                    and walk(pat.left, target.left)
                    and walk(pat.right, target.right))
        return pat == target

    return binding if walk(template, formula) else None


@dataclass(frozen=True)
class Hyp:
    premise: int


@dataclass(frozen=True)
class Ax:
    schema: str
    substitution: tuple[tuple[int, Formula], ...]


@dataclass(frozen=True)
class MP:
    minor: int
    major: int


@dataclass(frozen=True)
class Adj:
    left: int
    right: int


Justification = Hyp | Ax | MP | Adj


@dataclass(frozen=True)
class ProofStep:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Proof:
    claimed: Consecution
    steps: tuple[ProofStep, ...]


@dataclass(frozen=True)
class Accepted:
    pass


@dataclass(frozen=True)
class Rejected:
    step: int
    reason: str


CheckResult = Accepted | Rejected


def _check_step(proof: Proof, index: int) -> str | None:
    step = proof.steps[index]
    just = step.justification
    if isinstance(just, Hyp):
        if not 0 <= just.premise < len(proof.claimed.premises):
            return f"no premise {just.premise}"
        if proof.claimed.premises[just.premise] != step.formula:
            return f"formula differs from premise {just.premise}"
        return None
    if isinstance(just, Ax):
        if just.schema not in AXIOM_SCHEMAS:
            return f"unknown axiom {just.schema!r}"
        expected = substitute(AXIOM_SCHEMAS[just.schema], dict(just.substitution))
        if expected != step.formula:
            return f"not the stated instance of axiom {just.schema}"
        return None
    if isinstance(just, MP):
        if not (0 <= just.minor < index and 0 <= just.major < index):
            return "reference out of range"
        major = proof.steps[just.major].formula
        minor = proof.steps[just.minor].formula
        if major != Impl(minor, step.formula):
            return "modus ponens shape mismatch"
        return None
    if isinstance(just, Adj):
        if not (0 <= just.left < index and 0 <= just.right < index):
            return "reference out of range"
        if step.formula != Meet(proof.steps[just.left].formula,
                                proof.steps[just.right].formula):
            return "adjunction shape mismatch"
        return None
    return f"unknown justification {just!r}"


def check_proof(proof: Proof) -> CheckResult:
    """Verify every step; reports the earliest failure."""
    if not proof.steps:
        return Rejected(0, "empty proof")
    for index in range(len(proof.steps)):
        reason = _check_step(proof, index)
        if reason is not None:
            return Rejected(index, reason)
    last = len(proof.steps) - 1
    if proof.steps[last].formula != proof.claimed.conclusion:
        return Rejected(last, "last step is not the claimed conclusion")
    return Accepted()


# ---------------------------------------------------------------------------
# line-oriented proof files
#
#   claim: <consecution>
#   <n>: <formula> ; hyp <k> | ax <name> <var>=<formula>,... | mp <i> <j>
#                            | adj <i> <j>
#
# '#' starts a comment line.  All formulas in one file share a variable
# name table.

_STEP_RE = re.compile(r"(\d+)\s*:\s*(.*?)\s*;\s*(.*)\Z")


def _parse_justification(text: str, table: NameTable, pointed: bool,
                         line_no: int) -> Justification:
    parts = text.split(None, 1)
    if not parts:
        raise ParseError(f"line {line_no}: missing justification")
    kind = parts[0].lower()
    rest = parts[1] if len(parts) > 1 else ""
    try:
        if kind == "hyp":
            return Hyp(int(rest))
        if kind in ("mp", "adj"):
            refs = rest.split()
            if len(refs) != 2:
                raise ParseError(f"line {line_no}: {kind} needs two step numbers")
            i, j = int(refs[0]), int(refs[1])
            return MP(i, j) if kind == "mp" else Adj(i, j)
    except ValueError:
        raise ParseError(f"line {line_no}: step references must be numbers") from None
    if kind == "ax":
        name_and_bindings = rest.split(None, 1)
        if not name_and_bindings:
            raise ParseError(f"line {line_no}: ax needs a schema name")
        name = name_and_bindings[0]
        binding: dict[int, Formula] = {}
        if len(name_and_bindings) > 1 and name_and_bindings[1].strip():
            for chunk in name_and_bindings[1].split(","):
                var_text, _, formula_text = chunk.partition("=")
                index = NameTable.fixed_index(var_text.strip())
                if index is None:
                    raise ParseError(
                        f"line {line_no}: schema variables must be p/q/r/s or pN")
                binding[index] = parse_formula(formula_text, pointed, table)
        return Ax(name, tuple(sorted(binding.items())))
    raise ParseError(f"line {line_no}: unknown justification {kind!r}")


def parse_proof(text: str, pointed: bool = True) -> Proof:
    lines = [(no + 1, line.strip()) for no, line in enumerate(text.splitlines())]
    lines = [(no, line) for no, line in lines
             if line and not line.startswith("#")]
    if not lines or not lines[0][1].lower().startswith("claim:"):
        raise ParseError("a proof file starts with 'claim: <consecution>'")

    # one shared name table; reserve fixed variable names from the whole
    # file before any free name gets allocated
    table = NameTable()
    for no, line in lines:
        body = line.split(":", 1)[1] if ":" in line else line
        body = body.split(";", 1)[0]
        try:
            table.reserve(_tokenize(body))
        except ParseError:
            pass  # reported properly when the line is parsed below

    claimed = parse_consecution(lines[0][1].split(":", 1)[1], pointed, table)
    steps: list[ProofStep] = []
    for no, line in lines[1:]:
        m = _STEP_RE.match(line)
        if m is None:
            raise ParseError(f"line {no}: expected '<n>: <formula> ; <justification>'")
        if int(m.group(1)) != len(steps):
            raise ParseError(f"line {no}: steps must be numbered consecutively")
        formula = parse_formula(m.group(2), pointed, table)
        justification = _parse_justification(m.group(3), table, pointed, no)
        steps.append(ProofStep(formula, justification))
    return Proof(claimed, tuple(steps))


def load_proof(path, pointed: bool = True) -> Proof:
    with open(path, encoding="utf-8") as handle:
        return parse_proof(handle.read(), pointed)
