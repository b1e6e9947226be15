"""Scenario expansion and Fourier-Motzkin elimination."""

import random
from fractions import Fraction as Fr

import pytest

from alwb.errors import ScenarioBudgetError
from alwb.formulas import parse_consecution, parse_formula, Consecution
from alwb.linear import (
    EQ, F, GE, GT, Constraint, Feasible, Infeasible, LinearSystem, LinearTerm,
    fm_check, fm_eliminate, satisfies, scenario_expand, stream_refutation,
)
from alwb.models import MVUnit, RationalChain, evaluate, is_designated, refutes

from helpers import (
    grid_feasible, naive_pair_elimination_feasible, random_consecution,
    random_system_rows, rows_to_system,
)


def term(coeffs=None, f=0, const=0):
    return LinearTerm(coeffs or {}, f, const)


def test_linear_term_drops_zero_coefficients():
    assert term({0: 1}) - term({0: 1}) == term()
    assert (term({0: 2, 1: -1}) + term({1: 1})).coeffs == {0: Fr(2)}


def test_scenario_count_single_join():
    c = parse_consecution("|- -(p \\/ q)")
    systems = scenario_expand(c, "ell-group")
    assert len(systems) == 2


def test_scenario_count_no_lattice_nodes():
    c = parse_consecution("|- p -> p")
    systems = scenario_expand(c, "ell-group")
    assert len(systems) == 1
    assert isinstance(fm_check(systems[0]), Infeasible)


def test_scenario_mv_excluded_middle_witness():
    c = parse_consecution("|- p \\/ ~p")
    systems = scenario_expand(c, "mv-unit")
    found = None
    for system in systems:
        result = fm_check(system)
        if isinstance(result, Feasible):
            found = (system, result)
            break
    assert found is not None
    system, result = found
    assert satisfies(system.constraints, result.witness)
    assert refutes(MVUnit(), {0: result.witness[0]}, c)


def test_scenario_budget():
    c = parse_consecution("|- " + " \\/ ".join(f"p{i}" for i in range(6)))
    with pytest.raises(ScenarioBudgetError):
        scenario_expand(c, "ell-group", budget=16)


def test_fm_eliminate_single_pair():
    system = LinearSystem(
        (Constraint(term({0: 1}, const=-1), GE),   # x >= 1
         Constraint(term({1: 1, 0: -1}), GE),      # y - x >= 0
         Constraint(term({1: -1}, const=1), GT)),  # 1 - y > 0
        (0, 1), False)
    reduced = fm_eliminate(system, 1)
    assert set(reduced.constraints) == {
        Constraint(term({0: 1}, const=-1), GE),
        Constraint(term({0: -1}, const=1), GT)}
    final = fm_eliminate(reduced, 0)
    assert set(final.constraints) == {Constraint(term(), GT)}  # 0 > 0
    assert isinstance(fm_check(final), Infeasible)


def test_fm_eliminate_without_opposing_bound():
    system = LinearSystem((Constraint(term({0: 1}), GT),), (0,), False)
    assert fm_eliminate(system, 0).constraints == ()


def test_fm_check_infeasible_interval():
    system = LinearSystem(
        (Constraint(term({0: 1}, const=-1), GE),
         Constraint(term({0: -1}, const=1), GT)), (0,), False)
    assert isinstance(fm_check(system), Infeasible)


def test_fm_check_feasible_open_interval():
    system = LinearSystem(
        (Constraint(term({0: 1}), GT),              # x > 0
         Constraint(term({0: -1}, const=2), GE)),   # x <= 2
        (0,), False)
    result = fm_check(system)
    assert isinstance(result, Feasible)
    assert satisfies(system.constraints, result.witness)
    assert 0 < result.witness[0] <= 2


def test_fm_check_empty_system():
    result = fm_check(LinearSystem((), (), False))
    assert result == Feasible({})


def test_fm_check_equality_substitution():
    system = LinearSystem(
        (Constraint(term({0: 2, 1: 1}, const=-4), EQ),  # 2x + y = 4
         Constraint(term({1: 1}, const=-1), GE),        # y >= 1
         Constraint(term({0: 1}), GE)),                 # x >= 0
        (0, 1), False)
    result = fm_check(system)
    assert isinstance(result, Feasible)
    assert satisfies(system.constraints, result.witness)


def test_strictness_propagation():
    rng = random.Random(23)
    for _ in range(200):
        n_vars, rows = random_system_rows(rng)
        system = rows_to_system(n_vars, rows)
        key = rng.randrange(n_vars)
        originals = [c for c in system.constraints if c.term.coeff(key)]
        strict_parent = any(c.rel == GT for c in originals)
        reduced = fm_eliminate(system, key)
        derived = [c for c in reduced.constraints
                   if c not in system.constraints]
        if not strict_parent:
            assert all(c.rel != GT for c in derived
                       if all(o.rel != GT for o in originals))


def test_fm_against_naive_oracle_small():
    rng = random.Random(31)
    for _ in range(150):
        n_vars, rows = random_system_rows(rng)
        system = rows_to_system(n_vars, rows)
        result = fm_check(system)
        expected = naive_pair_elimination_feasible(n_vars, rows)
        assert isinstance(result, Feasible) == expected
        if isinstance(result, Feasible):
            assert satisfies(system.constraints, result.witness)
        elif grid_feasible(n_vars, rows):
            raise AssertionError("grid found a point in an 'infeasible' system")


def test_scenario_cover_and_value_agreement():
    # every sampled assignment satisfies some branch's guards, and under
    # any guard-satisfied branch the linear value term equals the model
    # evaluation of the formula
    from alwb.linear import _alternatives

    rng = random.Random(41)
    chain = RationalChain(point=Fr(-1))
    mv = MVUnit()
    for _ in range(40):
        c = random_consecution(rng, "pointed", 3, 3, 2)
        formulas = list(c.premises) + [c.conclusion]
        for _ in range(8):
            assignment = {v: Fr(rng.randint(-12, 12), 2) for v in range(3)}
            values = dict(assignment)
            values[F] = Fr(-1)
            for formula in formulas:
                expected = evaluate(chain, assignment, formula)
                covered = 0
                for _, guards, value_term in _alternatives(formula, False, "g"):
                    if all(g.holds(values) for g in guards):
                        covered += 1
                        assert value_term.eval(values) == expected
                assert covered >= 1
        # end to end: the model refutes iff some full scenario system is
        # satisfied by the assignment
        systems = scenario_expand(c, "ell-group",
                                  (Constraint(LinearTerm.point() + LinearTerm.constant(1), EQ),))
        for _ in range(8):
            assignment = {v: Fr(rng.randint(-12, 12), 2) for v in range(3)}
            values = dict(assignment)
            values[F] = Fr(-1)
            assert refutes(chain, assignment, c) == any(
                satisfies(s.constraints, values) for s in systems)
    for _ in range(15):
        c = random_consecution(rng, "mv", 2, 2, 1)
        formulas = list(c.premises) + [c.conclusion]
        for _ in range(8):
            assignment = {v: Fr(rng.randint(0, 6), 6) for v in range(2)}
            for formula in formulas:
                expected = evaluate(mv, assignment, formula)
                covered = 0
                for _, guards, value_term in _alternatives(formula, True, "g"):
                    if all(g.holds(assignment) for g in guards):
                        covered += 1
                        assert value_term.eval(assignment) == expected
                assert covered >= 1


def test_stream_matches_eager_first_feasible():
    rng = random.Random(47)
    for _ in range(60):
        c = random_consecution(rng, "pointed", 3, 3, 2)
        systems = scenario_expand(c, "ell-group", force_f=True)
        eager = None
        for system in systems:
            result = fm_check(system)
            if isinstance(result, Feasible):
                eager = result
                break
        streamed = stream_refutation(c, "ell-group", force_f=True)
        if eager is None:
            assert streamed is None
        else:
            assert streamed == eager


def test_stream_matches_eager_mv():
    rng = random.Random(53)
    for _ in range(40):
        c = random_consecution(rng, "mv", 2, 2, 2)
        systems = scenario_expand(c, "mv-unit")
        eager = None
        for system in systems:
            result = fm_check(system)
            if isinstance(result, Feasible):
                eager = result
                break
        streamed = stream_refutation(c, "mv-unit")
        assert (streamed is None) == (eager is None)
        if eager is not None:
            assert streamed == eager


def test_mv_rejects_f_constraints():
    c = parse_consecution("|- p")
    with pytest.raises(ValueError):
        scenario_expand(c, "mv-unit", (Constraint(LinearTerm.point(), GE),))
