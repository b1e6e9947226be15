"""Infinitary rule schemata, their finite approximants, and the
lexicographic countermodel check for the Archimedean rule.

A schema generates premises indexed by a natural number; instantiating it
at a cutoff N yields an ordinary finite consecution.  Validity of an
approximant at some N transfers to the full rule (extra premises only
help); invalidity at N says nothing about the full rule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import (
    FALSE, TRUE, Consecution, Formula, Impl, Join, Substitution, Var,
    n_fold_fusion, substitute, vee_form,
)
from .logics import LogicId, Verdict, decide, decide_in_model
from .linear import DEFAULT_SCENARIO_BUDGET
from .models import LexZZ, Model

__all__ = [
    "RuleSchema", "ApproximantInstance", "ARCH", "ARCH_VEE", "HAY", "IDC",
    "LU", "SCHEMAS", "instantiate", "approx_decide",
    "verify_full_arch_countermodel",
]


@dataclass(frozen=True)
class RuleSchema:
    """A premise generator plus conclusion over schema variables.

    base 'arch':  psi -> n.phi  for n <= N, conclusion phi
    base 'hay':   ~phi -> n.phi for n <= N, conclusion phi (pointed)
    base 'idc':   2.phi_{n+1} -> phi_n and phi_n -> 4.phi_{n+1} for n < N,
                  conclusion phi_0 -> t
    base 'lu':    the finitary rule f \\/ phi |- phi (cutoff ignored)

    A veed schema joins every premise and the conclusion with a fresh side
    variable.
    """

    name: str
    base: str
    veed: bool = False

    def premise_formulas(self, cutoff: int) -> tuple[Formula, ...]:
        phi, psi = Var(0), Var(1)
        if self.base == "arch":
            return tuple(Impl(psi, n_fold_fusion(n, phi))
                         for n in range(cutoff + 1))
        if self.base == "hay":
            return tuple(Impl(Impl(phi, FALSE), n_fold_fusion(n, phi))
                         for n in range(cutoff + 1))
        if self.base == "idc":
            out = []
            for n in range(cutoff):
                out.append(Impl(n_fold_fusion(2, Var(n + 1)), Var(n)))
                out.append(Impl(Var(n), n_fold_fusion(4, Var(n + 1))))
            return tuple(out)
        if self.base == "lu":
            return (Join(FALSE, phi),)
        raise ValueError(f"unknown schema base {self.base!r}")

    def conclusion_formula(self) -> Formula:
        if self.base == "idc":
            return Impl(Var(0), TRUE)
        return Var(0)

    def side_index(self, cutoff: int) -> int:
        """Index of the side variable of the veed form (fresh per cutoff
        for idc, which uses unboundedly many schema variables)."""
        if self.base == "arch":
            return 2
        if self.base == "idc":
            return cutoff + 1
        return 1

    def var_label(self, index: int, cutoff: int) -> str:
        if self.base == "idc":
            if index <= cutoff:
                return f"phi{index}"
            return "side"
        names = {0: "phi", 1: "psi" if self.base == "arch" else "side",
                 2: "side"}
        return names.get(index, f"p{index}")


ARCH = RuleSchema("arch", "arch")
ARCH_VEE = RuleSchema("archv", "arch", veed=True)
HAY = RuleSchema("hay", "hay")
IDC = RuleSchema("idc", "idc")
LU = RuleSchema("lu", "lu")

SCHEMAS = {s.name: s for s in (ARCH, ARCH_VEE, HAY, IDC, LU)}


@dataclass(frozen=True)
class ApproximantInstance:
    schema: RuleSchema
    cutoff: int
    substitution: tuple[tuple[int, Formula], ...]
    consecution: Consecution


def instantiate(schema: RuleSchema, cutoff: int,
                substitution: Substitution | None = None) -> ApproximantInstance:
    """Enumerate the premises up to the cutoff and apply the substitution."""
    if cutoff < 0:
        raise ValueError("cutoff must be a natural number")
    consecution = Consecution(schema.premise_formulas(cutoff),
                              schema.conclusion_formula())
    if schema.veed:
        consecution = vee_form(consecution, Var(schema.side_index(cutoff)))
    subst = dict(substitution or {})
    consecution = Consecution(
        tuple(substitute(g, subst) for g in consecution.premises),
        substitute(consecution.conclusion, subst))
    return ApproximantInstance(schema, cutoff, tuple(sorted(subst.items())),
                               consecution)


def approx_decide(schema: RuleSchema, cutoff: int, *,
                  logic: LogicId | None = None, model: Model | None = None,
                  bound: int = 32, substitution: Substitution | None = None,
                  budget: int = DEFAULT_SCENARIO_BUDGET) -> Verdict:
    """Decide the N-approximant in a logic or in a concrete model."""
    if (logic is None) == (model is None):
        raise ValueError("pass exactly one of logic= or model=")
    instance = instantiate(schema, cutoff, substitution)
    if logic is not None:
        return decide(logic, instance.consecution, budget=budget)
    return decide_in_model(model, instance.consecution, bound, budget=budget)


def verify_full_arch_countermodel(x: tuple[int, int], y: tuple[int, int],
                                  check_cap: int = 100) -> bool:
    """Check that (x, y) witnesses failure of the full Archimedean rule in
    the lexicographic plane: x < 0, y < 0 and y < n*x for every n.

    The closed-form condition is first(x) = 0, second(x) < 0, first(y) < 0;
    a brute-force check of the premises up to check_cap double-checks it.
    """
    if check_cap < 1:
        raise ValueError("check_cap must be at least 1")
    lex = LexZZ()
    x = lex.coerce(x)
    y = lex.coerce(y)
    zero = lex.zero()
    symbolic = (x[0] == 0 and x[1] < 0 and y[0] < 0
                and lex.leq(x, zero) and x != zero
                and lex.leq(y, zero) and y != zero)
    if symbolic:
        for n in range(check_cap + 1):
            scaled = (n * x[0], n * x[1])
            assert lex.leq(y, scaled) and y != scaled, \
                "closed-form lex condition disagrees with brute force"
    return symbolic
