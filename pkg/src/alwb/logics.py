"""Logic registry and the top-level decision procedures.

Each registered logic names a semantic reduction: finite-premise
entailment is decided over rational chains whose f-point satisfies the
logic's sign cases (or over the MV unit interval), via scenario expansion
plus Fourier-Motzkin feasibility.  Discrete models get bounded
counterexample search with a three-valued verdict instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import LanguageError, ModelError
from .formulas import Consecution, consecution_variables, mentions_f
from .linear import (
    DEFAULT_SCENARIO_BUDGET, EQ, F, GE, GT, Constraint, LinearTerm,
    stream_refutation,
)
from .models import (
    IntegerChain, LexZZ, Model, MVUnit, Product, RationalChain,
    search_counterexample,
)

__all__ = [
    "LogicId", "Valid", "Invalid", "UnknownUpToBound", "Verdict",
    "LOGICS", "ALIASES", "CASE_SIGNS", "get_logic", "case_constraints",
    "logic_signs", "decide", "decide_in_model",
]


@dataclass(frozen=True)
class LogicId:
    """A named logic: its language, semantics and f-sign cases.

    A consecution is valid iff it is valid in every case; each case
    constrains the sign of the chain's f-point ('free' leaves it open).
    """

    name: str
    language: str        # 'ab' | 'pointed' | 'mv'
    semantics: str       # 'ell-group' | 'mv-unit'
    f_cases: tuple[str, ...]


@dataclass(frozen=True)
class Valid:
    pass


@dataclass(frozen=True)
class Invalid:
    assignment: Mapping[int, object]
    model: Model


@dataclass(frozen=True)
class UnknownUpToBound:
    bound: int


Verdict = Valid | Invalid | UnknownUpToBound

#: Sign cases for the f-point and the chain signs they admit.
CASE_SIGNS = {
    "free": frozenset({-1, 0, 1}),
    "neg": frozenset({-1}),
    "nonpos": frozenset({-1, 0}),
    "zero": frozenset({0}),
    "nonneg": frozenset({0, 1}),
    "pos": frozenset({1}),
}


def case_constraints(case: str) -> tuple[Constraint, ...]:
    f = LinearTerm.point()
    table = {
        "free": (),
        "neg": (Constraint(-f, GT),),
        "nonpos": (Constraint(-f, GE),),
        "zero": (Constraint(f, EQ),),
        "nonneg": (Constraint(f, GE),),
        "pos": (Constraint(f, GT),),
    }
    try:
        return table[case]
    except KeyError:
        raise ValueError(f"unknown f-sign case {case!r}") from None


LOGICS = {
    "ab": LogicId("ab", "ab", "ell-group", ("free",)),
    "pab": LogicId("pab", "pointed", "ell-group", ("free",)),
    "lu": LogicId("lu", "pointed", "ell-group", ("neg",)),
    "lustar": LogicId("lustar", "pointed", "ell-group", ("pos",)),
    "pab-f": LogicId("pab-f", "pointed", "ell-group", ("nonneg",)),
    "pab-negf": LogicId("pab-negf", "pointed", "ell-group", ("nonpos",)),
    "pab-fneq0": LogicId("pab-fneq0", "pointed", "ell-group", ("neg", "pos")),
    "ab-as-pab": LogicId("ab-as-pab", "pointed", "ell-group", ("zero",)),
    "luk": LogicId("luk", "mv", "mv-unit", ("free",)),
}

#: name -> (canonical name, notice).  On finite-premise consecutions the
#: infinitary logics coincide with their finitary companions.
ALIASES = {
    "rab": ("ab", "rab coincides with ab on finite-premise consecutions"),
    "luinf": ("lu", "luinf coincides with lu on finite-premise consecutions"),
}


def get_logic(name: str) -> tuple[LogicId, str | None]:
    """Look up a logic; returns (logic, notice-or-None)."""
    key = name.strip().lower()
    if key in ALIASES:
        canonical, notice = ALIASES[key]
        return LOGICS[canonical], notice
    try:
        return LOGICS[key], None
    except KeyError:
        raise LanguageError(f"unknown logic {name!r}") from None


def logic_signs(logic: LogicId) -> frozenset[int]:
    out: frozenset[int] = frozenset()
    for case in logic.f_cases:
        out |= CASE_SIGNS[case]
    return out


def _invalid_from_witness(witness: dict, variables, mv: bool,
                          pointed: bool) -> Invalid:
    assignment = {v: witness[v] for v in variables}
    if mv:
        model: Model = MVUnit()
    elif pointed:
        model = RationalChain(point=witness[F])
    else:
        model = RationalChain()
    return Invalid(assignment, model)


def decide(logic: LogicId, consecution: Consecution, *,
           budget: int = DEFAULT_SCENARIO_BUDGET) -> Verdict:
    """Decide finite-premise entailment; Valid or Invalid with a witness."""
    if logic.language == "ab" and mentions_f(consecution):
        raise LanguageError("language mismatch: f does not occur in logic 'ab'")
    mv = logic.semantics == "mv-unit"
    pointed = logic.language != "ab" and not mv
    variables = sorted(consecution_variables(consecution))
    for case in logic.f_cases:
        result = stream_refutation(
            consecution, logic.semantics,
            case_constraints(case) if not mv else (),
            force_f=pointed, budget=budget)
        if result is not None:
            return _invalid_from_witness(result.witness, variables, mv, pointed)
    return Valid()


def decide_in_model(model: Model, consecution: Consecution, bound: int = 32, *,
                    budget: int = DEFAULT_SCENARIO_BUDGET) -> Verdict:
    """Decide validity in one concrete model.

    Rational chains and the MV unit interval are decided exactly; discrete
    models (integer chains, the lexicographic plane, products) only get
    bounded counterexample search, so their 'no witness' answer is
    UnknownUpToBound, never Valid.
    """
    if isinstance(model, RationalChain):
        pointed = model.point is not None
        if mentions_f(consecution) and not pointed:
            raise ModelError("unpointed model: f has no value")
        f_constraints = ()
        if pointed:
            f_constraints = (Constraint(
                LinearTerm.point() - LinearTerm.constant(model.point), EQ),)
        result = stream_refutation(consecution, "ell-group", f_constraints,
                                   force_f=pointed, budget=budget)
        if result is None:
            return Valid()
        variables = sorted(consecution_variables(consecution))
        return Invalid({v: result.witness[v] for v in variables}, model)
    if isinstance(model, MVUnit):
        result = stream_refutation(consecution, "mv-unit", (), budget=budget)
        if result is None:
            return Valid()
        variables = sorted(consecution_variables(consecution))
        return Invalid({v: result.witness[v] for v in variables}, model)
    if isinstance(model, (IntegerChain, LexZZ, Product)):
        witness = search_counterexample(model, consecution, bound)
        if witness is None:
            return UnknownUpToBound(bound)
        return Invalid(witness, model)
    raise ModelError(f"no decision procedure for {model!r}")
