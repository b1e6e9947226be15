"""Shared test utilities: seeded random generators, a fast exact sampler
for soundness checks, and independent feasibility oracles."""

from __future__ import annotations

import random
from fractions import Fraction

from alwb.formulas import (
    FALSE, TRUE, Consecution, ConstF, ConstT, Formula, Fus, Impl, Join, Meet,
    Var, consecution_variables,
)
from alwb.linear import Constraint, LinearSystem, LinearTerm
from alwb.logics import LogicId, logic_signs

_BINARY_OPS = (Impl, Join, Meet, Fus)


def random_formula(rng: random.Random, language: str, n_vars: int,
                   max_depth: int) -> Formula:
    if max_depth == 0 or rng.random() < 0.30:
        roll = rng.random()
        if roll < 0.78 or n_vars == 0:
            return Var(rng.randrange(max(n_vars, 1)))
        if roll < 0.88 or language == "ab":
            return TRUE
        return FALSE
    op = rng.choices(_BINARY_OPS, weights=(30, 25, 20, 25))[0]
    return op(random_formula(rng, language, n_vars, max_depth - 1),
              random_formula(rng, language, n_vars, max_depth - 1))


def random_consecution(rng: random.Random, language: str, n_vars: int,
                       max_depth: int, max_premises: int) -> Consecution:
    count = rng.randint(0, max_premises)
    return Consecution(
        tuple(random_formula(rng, language, n_vars, max_depth)
              for _ in range(count)),
        random_formula(rng, language, n_vars, max_depth))


def fresh_side(consecution: Consecution) -> Var:
    used = consecution_variables(consecution)
    return Var(max(used) + 1 if used else 0)


# ---------------------------------------------------------------------------
# fast exact sampler
#
# Rational assignments with denominator D are handled as scaled integers:
# l-group evaluation is linear (so scaling preserves designation) and the
# MV operations with D in place of 1 compute exactly D times the MV value.

def _expr(formula: Formula, mv: bool) -> str:
    if isinstance(formula, Var):
        return f"v[{formula.index}]"
    if isinstance(formula, ConstT):
        return "D" if mv else "0"
    if isinstance(formula, ConstF):
        return "0" if mv else "fv"
    left = _expr(formula.left, mv)
    right = _expr(formula.right, mv)
    if isinstance(formula, Join):
        return f"max({left}, {right})"
    if isinstance(formula, Meet):
        return f"min({left}, {right})"
    if mv:
        if isinstance(formula, Impl):
            return f"min(D, D - ({left}) + ({right}))"
        return f"max(0, ({left}) + ({right}) - D)"
    if isinstance(formula, Impl):
        return f"(({right}) - ({left}))"
    return f"(({left}) + ({right}))"


def compile_scaled_value(formula: Formula, mv: bool):
    """fn(v, fv, D) -> D times the formula value at the assignment v/D."""
    return eval(f"lambda v, fv, D: {_expr(formula, mv)}")


def compile_refutation_checker(consecution: Consecution, mv: bool):
    """fn(v, fv, D) -> True iff the assignment refutes the consecution."""
    designated = (lambda e: f"(({e}) == D)") if mv else (lambda e: f"(({e}) >= 0)")
    parts = [designated(_expr(g, mv)) for g in consecution.premises]
    parts.append(f"not {designated(_expr(consecution.conclusion, mv))}")
    return eval("lambda v, fv, D: " + " and ".join(parts))


def sample_refutation(consecution: Consecution, logic: LogicId,
                      rng: random.Random, samples: int, radius: int = 10):
    """Search random rational assignments for a refutation; None if clean.

    Returns (assignment dict, f value) in unscaled rationals on a hit.
    """
    mv = logic.semantics == "mv-unit"
    checker = compile_refutation_checker(consecution, mv)
    used = consecution_variables(consecution)
    size = max(used) + 1 if used else 0
    scale = 12 if mv else 4
    signs = sorted(logic_signs(logic))
    for _ in range(samples):
        if mv:
            values = [rng.randint(0, scale) for _ in range(size)]
            f_scaled = 0
        else:
            values = [rng.randint(-radius * scale, radius * scale)
                      for _ in range(size)]
            if logic.language == "ab":
                f_scaled = 0
            else:
                sign = rng.choice(signs)
                f_scaled = sign * rng.randint(1, radius * scale) if sign else 0
        if checker(values, f_scaled, scale):
            assignment = {v: Fraction(values[v], scale) for v in used}
            return assignment, Fraction(f_scaled, scale)
    return None


# ---------------------------------------------------------------------------
# independent feasibility oracles over plain integer rows
# (row = (coeff tuple, constant, rel) with rel in 'ge'/'gt'/'eq')

def random_system_rows(rng: random.Random):
    n_vars = rng.randint(1, 3)
    rows = []
    for _ in range(rng.randint(1, 6)):
        coeffs = tuple(rng.randint(-3, 3) for _ in range(n_vars))
        const = rng.randint(-3, 3)
        rel = rng.choices(("ge", "gt", "eq"), weights=(5, 3, 2))[0]
        rows.append((coeffs, const, rel))
    return n_vars, rows


def rows_to_system(n_vars: int, rows) -> LinearSystem:
    constraints = tuple(
        Constraint(LinearTerm({i: c for i, c in enumerate(coeffs)}, 0, const), rel)
        for coeffs, const, rel in rows)
    return LinearSystem(constraints, tuple(range(n_vars)), False)


def naive_pair_elimination_feasible(n_vars: int, rows) -> bool:
    """Reference Fourier-Motzkin: fixed variable order, equalities split
    into two inequalities, no witness extraction.  Exact integers only."""
    work = []
    for coeffs, const, rel in rows:
        if rel == "eq":
            work.append((coeffs, const, "ge"))
            work.append((tuple(-c for c in coeffs), -const, "ge"))
        else:
            work.append((coeffs, const, rel))
    for v in range(n_vars):
        lowers = [r for r in work if r[0][v] > 0]
        uppers = [r for r in work if r[0][v] < 0]
        new = [r for r in work if r[0][v] == 0]
        for lo in lowers:
            a = lo[0][v]
            for up in uppers:
                b = -up[0][v]
                coeffs = tuple(b * x + a * y for x, y in zip(lo[0], up[0]))
                const = b * lo[1] + a * up[1]
                rel = "gt" if "gt" in (lo[2], up[2]) else "ge"
                new.append((coeffs, const, rel))
        work = new
    for coeffs, const, rel in work:
        if rel == "ge" and const < 0:
            return False
        if rel == "gt" and const <= 0:
            return False
    return True


# every rational with denominator <= 6 and absolute value <= 3, scaled by 60
_GRID_KS = sorted({p * (60 // q) for q in range(1, 7)
                   for p in range(-3 * q, 3 * q + 1)})


def grid_feasible(n_vars: int, rows) -> bool:
    """Exhaustive scaled-integer grid search (denominators <= 6, values in
    [-3, 3]); a hit certifies feasibility, a miss proves nothing."""
    import numpy as np

    if n_vars == 0:
        return all((const >= 0 if rel == "ge" else
                    const > 0 if rel == "gt" else const == 0)
                   for _, const, rel in rows)
    axes = [np.array(_GRID_KS, dtype=np.int64) for _ in range(n_vars)]
    mesh = np.meshgrid(*axes, indexing="ij")
    ok = np.ones(mesh[0].shape, dtype=bool)
    for coeffs, const, rel in rows:
        acc = np.full(mesh[0].shape, const * 60, dtype=np.int64)
        for c, grid in zip(coeffs, mesh):
            if c:
                acc = acc + c * grid
        if rel == "ge":
            ok &= acc >= 0
        elif rel == "gt":
            ok &= acc > 0
        else:
            ok &= acc == 0
        if not ok.any():
            return False
    return bool(ok.any())
