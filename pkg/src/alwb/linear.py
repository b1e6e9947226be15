"""Piecewise-linear compilation and exact linear feasibility.

A consecution over a chain (or over the MV unit interval) is compiled into
finitely many linear systems by choosing a branch at every lattice node
(and at every truncation point in the MV case).  The consecution fails in
the intended model class iff at least one system is feasible; feasibility
is decided by Fourier-Motzkin elimination over exact rationals, with a
witness extracted by back-substitution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ScenarioBudgetError
from .formulas import (
    Consecution, ConstF, ConstT, Formula, Fus, Impl, Join, Meet, Var,
    consecution_variables, mentions_f,
)

__all__ = [
    "F", "DEFAULT_SCENARIO_BUDGET", "LinearTerm", "Constraint", "Scenario",
    "LinearSystem", "Feasible", "Infeasible", "scenario_expand",
    "stream_refutation", "fm_eliminate", "fm_check", "satisfies",
]

#: Key used for the point variable (the value of f) in terms and witnesses.
F = "f"

DEFAULT_SCENARIO_BUDGET = 2 ** 20

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LinearTerm:
    """Affine form ``const + sum(c_v * v) + f_coeff * f``; zero coefficients
    are never stored and equality is coefficient-wise."""

    __slots__ = ("coeffs", "f_coeff", "const")

    def __init__(self, coeffs: Mapping[int, Fraction] | None = None,
                 f_coeff=0, const=0):
        self.coeffs = {v: Fraction(c) for v, c in (coeffs or {}).items() if c}
        self.f_coeff = Fraction(f_coeff)
        self.const = Fraction(const)

    @staticmethod
    def var(index: int) -> "LinearTerm":
        return LinearTerm({index: 1})

    @staticmethod
    def point() -> "LinearTerm":
        return LinearTerm(f_coeff=1)

    @staticmethod
    def constant(c) -> "LinearTerm":
        return LinearTerm(const=c)

    def __add__(self, other: "LinearTerm") -> "LinearTerm":
        coeffs = dict(self.coeffs)
        for v, c in other.coeffs.items():
            coeffs[v] = coeffs.get(v, _ZERO) + c
        return LinearTerm(coeffs, self.f_coeff + other.f_coeff,
                          self.const + other.const)

    def __sub__(self, other: "LinearTerm") -> "LinearTerm":
        return self + (-other)

    def __neg__(self) -> "LinearTerm":
        return self.scale(-1)

    def scale(self, q) -> "LinearTerm":
        q = Fraction(q)
        return LinearTerm({v: q * c for v, c in self.coeffs.items()},
                          q * self.f_coeff, q * self.const)

    def coeff(self, key) -> Fraction:
        if key == F:
            return self.f_coeff
        return self.coeffs.get(key, _ZERO)

    def keys(self) -> list:
        out: list = sorted(self.coeffs)
        if self.f_coeff:
            out.append(F)
        return out

    def is_constant(self) -> bool:
        return not self.coeffs and not self.f_coeff

    def eval(self, values: Mapping) -> Fraction:
        total = self.const
        for v, c in self.coeffs.items():
            total += c * Fraction(values[v])
        if self.f_coeff:
            total += self.f_coeff * Fraction(values[F])
        return total

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinearTerm) and self.coeffs == other.coeffs
                and self.f_coeff == other.f_coeff and self.const == other.const)

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.f_coeff, self.const))

    def __repr__(self) -> str:
        bits = [f"{c}*p{v}" for v, c in sorted(self.coeffs.items())]
        if self.f_coeff:
            bits.append(f"{self.f_coeff}*f")
        if self.const or not bits:
            bits.append(str(self.const))
        return " + ".join(bits)


#: Constraint relations: the term is >= 0, > 0 or == 0.
GE, GT, EQ = "ge", "gt", "eq"
_REL_SYMBOL = {GE: ">= 0", GT: "> 0", EQ: "== 0"}


@dataclass(frozen=True)
class Constraint:
    term: LinearTerm
    rel: str

    def holds(self, values: Mapping) -> bool:
        v = self.term.eval(values)
        if self.rel == GE:
            return v >= 0
        if self.rel == GT:
            return v > 0
        return v == 0

    def __repr__(self) -> str:
        return f"{self.term!r} {_REL_SYMBOL[self.rel]}"


@dataclass(frozen=True)
class Scenario:
    """One combined branch choice: which side each case-split node took,
    plus the guard constraints those choices contribute."""

    choices: tuple[tuple[str, str], ...]
    guards: tuple[Constraint, ...]


@dataclass(frozen=True)
class LinearSystem:
    constraints: tuple[Constraint, ...]
    variables: tuple[int, ...]
    has_f: bool
    scenario: Scenario | None = None


@dataclass(frozen=True)
class Feasible:
    witness: dict


@dataclass(frozen=True)
class Infeasible:
    pass


FeasibilityResult = Feasible | Infeasible


def satisfies(constraints: Iterable[Constraint], values: Mapping) -> bool:
    """Exact substitution check of a witness."""
    return all(c.holds(values) for c in constraints)


# ---------------------------------------------------------------------------
# scenario compilation

def _split_count(formula: Formula, mv: bool) -> int:
    if isinstance(formula, (Var, ConstT, ConstF)):
        return 0
    here = 1 if (mv or isinstance(formula, (Join, Meet))) else 0
    return here + _split_count(formula.left, mv) + _split_count(formula.right, mv)


def _alternatives(formula: Formula, mv: bool, slot: str, path: str = ""):
    """All branch choices for one formula, each as
    (choices, guards, value term)."""
    if isinstance(formula, Var):
        return [((), (), LinearTerm.var(formula.index))]
    if isinstance(formula, ConstT):
        return [((), (), LinearTerm.constant(1 if mv else 0))]
    if isinstance(formula, ConstF):
        return [((), (), LinearTerm.constant(0) if mv else LinearTerm.point())]

    out = []
    node = f"{slot}:{path or 'e'}"
    for lc, lg, lt in _alternatives(formula.left, mv, slot, path + "0"):
        for rc, rg, rt in _alternatives(formula.right, mv, slot, path + "1"):
            choices = lc + rc
            guards = lg + rg
            if isinstance(formula, Join):
                out.append((choices + ((node, "left"),),
                            guards + (Constraint(lt - rt, GE),), lt))
                out.append((choices + ((node, "right"),),
                            guards + (Constraint(rt - lt, GE),), rt))
            elif isinstance(formula, Meet):
                out.append((choices + ((node, "left"),),
                            guards + (Constraint(rt - lt, GE),), lt))
                out.append((choices + ((node, "right"),),
                            guards + (Constraint(lt - rt, GE),), rt))
            elif isinstance(formula, Impl):
                if not mv:
                    out.append((choices, guards, rt - lt))
                else:
                    inner = LinearTerm.constant(1) - lt + rt
                    # value = min(1, inner): either inner stays below 1 or
                    # it is clamped to the bound
                    out.append((choices + ((node, "pass"),),
                                guards + (Constraint(LinearTerm.constant(1) - inner, GE),),
                                inner))
                    out.append((choices + ((node, "clamp"),),
                                guards + (Constraint(inner - LinearTerm.constant(1), GE),),
                                LinearTerm.constant(1)))
            else:  # Fus
                if not mv:
                    out.append((choices, guards, lt + rt))
                else:
                    inner = lt + rt - LinearTerm.constant(1)
                    # value = max(0, inner)
                    out.append((choices + ((node, "pass"),),
                                guards + (Constraint(inner, GE),), inner))
                    out.append((choices + ((node, "clamp"),),
                                guards + (Constraint(-inner, GE),),
                                LinearTerm.constant(0)))
    return out


def _check_semantics(semantics: str) -> bool:
    if semantics not in ("ell-group", "mv-unit"):
        raise ValueError(f"unknown semantics {semantics!r}")
    return semantics == "mv-unit"


def _base_constraints(mv: bool, variables: Sequence[int],
                      f_constraints: Sequence[Constraint]) -> list[Constraint]:
    base = list(f_constraints)
    if mv:
        if f_constraints:
            raise ValueError("f is fixed to 0 in mv-unit semantics")
        for v in variables:
            base.append(Constraint(LinearTerm.var(v), GE))
            base.append(Constraint(LinearTerm.constant(1) - LinearTerm.var(v), GE))
    return base


def _designation(term: LinearTerm, mv: bool) -> Constraint:
    if mv:
        return Constraint(term - LinearTerm.constant(1), EQ)
    return Constraint(term, GE)


def _refuted_conclusion(term: LinearTerm, mv: bool) -> Constraint:
    if mv:
        return Constraint(LinearTerm.constant(1) - term, GT)
    return Constraint(-term, GT)


def scenario_expand(consecution: Consecution, semantics: str,
                    f_constraints: Sequence[Constraint] = (), *,
                    force_f: bool = False,
                    budget: int = DEFAULT_SCENARIO_BUDGET) -> list[LinearSystem]:
    """Expand a consecution into one refutation system per branch choice.

    The consecution fails in the intended model class iff at least one of
    the returned systems is feasible.
    """
    mv = _check_semantics(semantics)
    formulas = list(consecution.premises) + [consecution.conclusion]
    total_splits = sum(_split_count(g, mv) for g in formulas)
    if 2 ** total_splits > budget:
        raise ScenarioBudgetError(
            f"scenario budget exceeded: 2^{total_splits} scenarios > {budget}")

    variables = tuple(sorted(consecution_variables(consecution)))
    has_f = (not mv) and (force_f or bool(f_constraints) or mentions_f(consecution))
    base = _base_constraints(mv, variables, f_constraints)

    slots = [f"g{i}" for i in range(len(consecution.premises))] + ["c"]
    alt_lists = [_alternatives(g, mv, slot)
                 for g, slot in zip(formulas, slots)]

    systems = []
    for combo in itertools.product(*alt_lists):
        constraints = list(base)
        choices: tuple = ()
        guards: tuple = ()
        for i, (ch, gd, term) in enumerate(combo):
            choices += ch
            guards += gd
            constraints.extend(gd)
            if i < len(consecution.premises):
                constraints.append(_designation(term, mv))
            else:
                constraints.append(_refuted_conclusion(term, mv))
        systems.append(LinearSystem(tuple(constraints), variables, has_f,
                                    Scenario(choices, guards)))
    return systems


def stream_refutation(consecution: Consecution, semantics: str,
                      f_constraints: Sequence[Constraint] = (), *,
                      force_f: bool = False,
                      budget: int = DEFAULT_SCENARIO_BUDGET) -> Feasible | None:
    """Depth-first search for the first feasible refutation scenario.

    Visits scenarios in the same order as :func:`scenario_expand` but prunes
    every subtree whose accumulated constraints are already infeasible, so
    consecutions whose nominal scenario count is huge stay cheap.  The
    budget bounds the number of feasibility checks actually performed.
    """
    mv = _check_semantics(semantics)
    formulas = list(consecution.premises) + [consecution.conclusion]
    variables = tuple(sorted(consecution_variables(consecution)))
    has_f = (not mv) and (force_f or bool(f_constraints) or mentions_f(consecution))
    base = tuple(_base_constraints(mv, variables, f_constraints))

    slots = [f"g{i}" for i in range(len(consecution.premises))] + ["c"]
    alt_lists = [_alternatives(g, mv, slot)
                 for g, slot in zip(formulas, slots)]
    last = len(alt_lists) - 1
    checks = 0

    def rec(i: int, constraints: tuple) -> Feasible | None:
        nonlocal checks
        for _, guards, term in alt_lists[i]:
            if i < last:
                extended = constraints + guards + (_designation(term, mv),)
            else:
                extended = constraints + guards + (_refuted_conclusion(term, mv),)
            checks += 1
            if checks > budget:
                raise ScenarioBudgetError(
                    f"scenario budget exceeded: more than {budget} feasibility checks")
            result = fm_check(LinearSystem(extended, variables, has_f))
            if isinstance(result, Infeasible):
                continue
            if i == last:
                return result
            deeper = rec(i + 1, extended)
            if deeper is not None:
                return deeper
        return None

    return rec(0, base)


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination

def _key_order(key):
    return (1, 0) if key == F else (0, key)


def _eliminate(constraints: list[Constraint], key):
    """One elimination step; returns the reduced constraints plus a record
    used later for witness back-substitution."""
    eqs = [c for c in constraints if c.rel == EQ and c.term.coeff(key)]
    if eqs:
        pivot = eqs[0]
        a = pivot.term.coeff(key)
        reduced = []
        for c in constraints:
            if c is pivot:
                continue
            k = c.term.coeff(key)
            if not k:
                reduced.append(c)
            else:
                reduced.append(Constraint(c.term - pivot.term.scale(k / a), c.rel))
        return reduced, ("eq", key, pivot)

    lowers, uppers, rest = [], [], []
    for c in constraints:
        k = c.term.coeff(key)
        if k > 0:
            lowers.append(c)
        elif k < 0:
            uppers.append(c)
        else:
            rest.append(c)
    for low in lowers:
        a = low.term.coeff(key)
        for up in uppers:
            b = -up.term.coeff(key)
            term = low.term.scale(b) + up.term.scale(a)
            rel = GT if GT in (low.rel, up.rel) else GE
            rest.append(Constraint(term, rel))
    return rest, ("ineq", key, tuple(lowers), tuple(uppers))


def fm_eliminate(system: LinearSystem, key) -> LinearSystem:
    """Eliminate one variable (an index, or ``F``), preserving feasibility."""
    reduced, _ = _eliminate(list(system.constraints), key)
    variables = tuple(v for v in system.variables if v != key)
    has_f = system.has_f and key != F
    return LinearSystem(tuple(reduced), variables, has_f, system.scenario)


def _constant_violation(constraints: list[Constraint]) -> bool:
    for c in constraints:
        if c.term.is_constant():
            if not c.holds({}):
                return True
    return False


def _pick_key(constraints: list[Constraint]) -> object | None:
    keys: set = set()
    for c in constraints:
        keys.update(c.term.keys())
    if not keys:
        return None
    best, best_cost = None, None
    for key in sorted(keys, key=_key_order):
        if any(c.rel == EQ and c.term.coeff(key) for c in constraints):
            cost = -1  # substitution is free
        else:
            lows = sum(1 for c in constraints if c.term.coeff(key) > 0)
            ups = sum(1 for c in constraints if c.term.coeff(key) < 0)
            cost = lows * ups
        if best_cost is None or cost < best_cost:
            best, best_cost = key, cost
    return best


def fm_check(system: LinearSystem) -> FeasibilityResult:
    """Decide feasibility; on success return an exact witness for every
    variable of the system (midpoint rule on the residual intervals)."""
    constraints = [c for c in system.constraints]
    all_keys: set = set(system.variables)
    if system.has_f:
        all_keys.add(F)
    for c in constraints:
        all_keys.update(c.term.keys())
    steps = []
    while True:
        if _constant_violation(constraints):
            return Infeasible()
        constraints = [c for c in constraints if not c.term.is_constant()]
        key = _pick_key(constraints)
        if key is None:
            break
        constraints, record = _eliminate(constraints, key)
        steps.append(record)

    values: dict = {v: _ZERO for v in all_keys}
    for record in reversed(steps):
        if record[0] == "eq":
            _, key, pivot = record
            values[key] = _ZERO
            rest = pivot.term.eval(values)
            values[key] = -rest / pivot.term.coeff(key)
            continue
        _, key, lowers, uppers = record
        values[key] = _ZERO
        low, low_strict = None, False
        for c in lowers:
            a = c.term.coeff(key)
            bound = -c.term.eval(values) / a
            if low is None or bound > low:
                low, low_strict = bound, c.rel == GT
            elif bound == low and c.rel == GT:
                low_strict = True
        high, high_strict = None, False
        for c in uppers:
            a = c.term.coeff(key)  # negative
            bound = -c.term.eval(values) / a
            if high is None or bound < high:
                high, high_strict = bound, c.rel == GT
            elif bound == high and c.rel == GT:
                high_strict = True
        if low is None and high is None:
            values[key] = _ZERO
        elif low is None:
            values[key] = high - 1
        elif high is None:
            values[key] = low + 1
        else:
            values[key] = (low + high) / 2
    return Feasible(values)
