"""The two formula translations.

``tau_luk_to_lu`` embeds Lukasiewicz logic into Lukasiewicz unbound logic
by guarding every variable, implication and fusion back into the unit
interval.  ``tau_flip`` swaps the roles of f and -f, linking the logics
complete over the negatively and the positively pointed chain.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .formulas import (
    FALSE, TRUE, BINARY, Consecution, ConstF, ConstT, Formula, Fus, Impl,
    Join, Meet, Var,
)
from .models import MVUnit, RationalChain, evaluate

__all__ = [
    "tau_luk_to_lu", "tau_flip", "translate_consecution", "clip",
    "correspondence_check",
]


def tau_luk_to_lu(formula: Formula) -> Formula:
    """Translate an mv-language formula for the unbound semantics:
    variables map to (p \\/ f) /\\ t, implications gain /\\ t, fusions gain
    \\/ f, lattice connectives and constants are untouched."""
    if isinstance(formula, Var):
        return Meet(Join(formula, FALSE), TRUE)
    if isinstance(formula, (ConstT, ConstF)):
        return formula
    left = tau_luk_to_lu(formula.left)
    right = tau_luk_to_lu(formula.right)
    if isinstance(formula, Impl):
        return Meet(Impl(left, right), TRUE)
    if isinstance(formula, Fus):
        return Join(Fus(left, right), FALSE)
    return type(formula)(left, right)


def tau_flip(formula: Formula) -> Formula:
    """Replace every f by f -> t; everything else is homomorphic."""
    if isinstance(formula, ConstF):
        return Impl(FALSE, TRUE)
    if isinstance(formula, BINARY):
        return type(formula)(tau_flip(formula.left), tau_flip(formula.right))
    return formula


def translate_consecution(consecution: Consecution, mapper) -> Consecution:
    return Consecution(tuple(mapper(g) for g in consecution.premises),
                       mapper(consecution.conclusion))


def clip(assignment: Mapping[int, object]) -> dict[int, Fraction]:
    """Clamp a rational assignment coordinate-wise into [0, 1]."""
    out = {}
    for v, x in assignment.items():
        value = Fraction(x)
        out[v] = min(max(value, Fraction(0)), Fraction(1))
    return out


def correspondence_check(formula: Formula, assignment: Mapping[int, object]) -> bool:
    """The pointwise translation identity.

    The unbound semantics is realized on the rational chain pointed at -1;
    that chain is isomorphic to the unit-shifted unbound algebra via
    x |-> x + 1, so the assignment moves down by 1 on the chain side and
    the two values must differ by exactly 1.
    """
    mv_value = evaluate(MVUnit(), clip(assignment), formula)
    shifted = {v: Fraction(x) - 1 for v, x in assignment.items()}
    chain_value = evaluate(RationalChain(point=Fraction(-1)), shifted,
                           tau_luk_to_lu(formula))
    return mv_value == chain_value + 1
