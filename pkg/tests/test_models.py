"""Model zoo: exact evaluation, designation, search, sequences."""

import random
from fractions import Fraction as Fr

import pytest

from alwb.errors import ModelError
from alwb.formulas import parse_consecution, parse_formula
from alwb.infinitary import ARCH, instantiate
from alwb.models import (
    IntegerChain, LexZZ, MVUnit, Product, RationalChain, build_sd_sequence,
    check_strongly_decreasing, evaluate, format_element, is_designated,
    model_spec, parse_element, parse_model_spec, refutes, scale_iso,
    search_counterexample,
)

Q = RationalChain()
MV = MVUnit()


def test_evaluate_implication_is_difference():
    assert evaluate(Q, {0: 3, 1: 5}, parse_formula("p -> q")) == 2


def test_evaluate_truth_constant():
    assert evaluate(Q, {}, parse_formula("t")) == 0


def test_evaluate_lex_join_is_lexicographic():
    lex = LexZZ()
    assert evaluate(lex, {0: (0, 1), 1: (1, -5)}, parse_formula("p \\/ q")) == (1, -5)


def test_evaluate_mv_excluded_middle_gap():
    assert evaluate(MV, {0: Fr(1, 2)}, parse_formula("p \\/ ~p")) == Fr(1, 2)


def test_evaluate_errors():
    with pytest.raises(ModelError, match="unpointed"):
        evaluate(Q, {}, parse_formula("f"))
    with pytest.raises(ModelError, match="unassigned"):
        evaluate(Q, {}, parse_formula("p"))
    with pytest.raises(ModelError):
        evaluate(MV, {0: 2}, parse_formula("p"))


def test_is_designated():
    assert not is_designated(Q, Fr(-1, 2))
    assert is_designated(LexZZ(), (1, -100))
    assert not is_designated(Product((Q, Q)), (5, -1))
    assert is_designated(MV, 1) and not is_designated(MV, Fr(9, 10))


def test_refutes_pointed_chain():
    c = parse_consecution("f \\/ p |- p")
    assert refutes(RationalChain(0), {0: -1}, c)
    rng = random.Random(7)
    neg = RationalChain(-1)
    for _ in range(300):
        e = {0: Fr(rng.randint(-40, 40), 4)}
        assert not refutes(neg, e, c)


def test_refutes_product_example():
    model = parse_model_spec("Q@-1 x Q@0")
    c = parse_consecution("f \\/ p |- p")
    assert refutes(model, {0: (5, -1)}, c)


def test_scale_iso():
    assert scale_iso(1, Fr(7, 3)) == Fr(7, 3)
    assert scale_iso(Fr(1, 2), -2) == -1  # maps the point of Q@-2 onto Q@-1
    rng = random.Random(3)
    for _ in range(100):
        q = Fr(rng.randint(1, 9), rng.randint(1, 9))
        a, b = Fr(rng.randint(-20, 20), 3), Fr(rng.randint(-20, 20), 3)
        assert scale_iso(q, a + b) == scale_iso(q, a) + scale_iso(q, b)
        assert scale_iso(q, max(a, b)) == max(scale_iso(q, a), scale_iso(q, b))
    with pytest.raises(ValueError):
        scale_iso(0, 1)
    with pytest.raises(ValueError):
        scale_iso(-2, 1)


def test_group_axioms_sampled():
    rng = random.Random(11)
    models = [Q, IntegerChain(), LexZZ(), Product((Q, IntegerChain()))]
    samples = {
        0: lambda: Fr(rng.randint(-30, 30), rng.randint(1, 6)),
        1: lambda: rng.randint(-30, 30),
        2: lambda: (rng.randint(-9, 9), rng.randint(-9, 9)),
    }
    draw = [samples[0], samples[1], samples[2],
            lambda: (samples[0](), samples[1]())]
    for model, gen in zip(models, draw):
        for _ in range(60):
            a, b, c = gen(), gen(), gen()
            assert model.add(a, b) == model.add(b, a)
            assert model.add(model.add(a, b), c) == model.add(a, model.add(b, c))
            assert model.add(a, model.neg(a)) == model.zero()
            assert model.add(a, model.zero()) == a
            # lattice absorption
            assert model.join(a, model.meet(a, b)) == a
            assert model.meet(a, model.join(a, b)) == a
            # monotonicity of addition
            if model.leq(a, b):
                assert model.leq(model.add(a, c), model.add(b, c))


def test_order_implication_link_on_chains():
    rng = random.Random(5)
    impl = parse_formula("p -> q")
    for model in (Q, IntegerChain(), LexZZ()):
        for _ in range(80):
            if isinstance(model, LexZZ):
                a = (rng.randint(-9, 9), rng.randint(-9, 9))
                b = (rng.randint(-9, 9), rng.randint(-9, 9))
            else:
                a, b = rng.randint(-30, 30), rng.randint(-30, 30)
            designated = is_designated(model, evaluate(model, {0: a, 1: b}, impl))
            assert designated == model.leq(model.coerce(a), model.coerce(b))


def test_lex_is_not_archimedean():
    lex = LexZZ()
    small, big = (0, 1), (1, 0)
    for n in range(1, 200):
        assert lex.leq((0, n), big) and (0, n) != big  # n * (0,1) < (1,0)


def test_sugar_soundness_n_fold():
    rng = random.Random(13)
    for n in (0, 1, 2, 5):
        formula = parse_formula(f"{n}.p")
        for _ in range(40):
            value = Fr(rng.randint(-40, 40), 4)
            assert evaluate(Q, {0: value}, formula) == n * value


def test_search_equation_star_in_integer_chains():
    c = parse_consecution("|- (f -> 1.x) \\/ -x")
    assert search_counterexample(IntegerChain(2), c, 1) == {0: 1}
    assert search_counterexample(IntegerChain(1), c, 1000) is None


def test_search_arch_over_lex_plane():
    instance = instantiate(ARCH, 3)
    witness = search_counterexample(LexZZ(), instance.consecution, 2)
    assert witness is not None
    assert refutes(LexZZ(), witness, instance.consecution)
    assert max(LexZZ().norm(v) for v in witness.values()) <= 2


def test_search_returns_norm_minimal_witness_first():
    c = parse_consecution("|- -p \\/ -p")  # refuted exactly when p > 0
    assert search_counterexample(IntegerChain(), c, 5) == {0: 1}


def test_check_strongly_decreasing():
    halving = (1, Fr(1, 2), Fr(1, 4), Fr(1, 8))
    assert check_strongly_decreasing(Q, halving, 4)
    z = IntegerChain()
    assert check_strongly_decreasing(z, (8, 4, 2, 1), 4)
    assert not check_strongly_decreasing(z, (8, 4, 2, 1, 1), 4)
    assert check_strongly_decreasing(z, (0, 0, 0), 4)  # the trivial sequence
    with pytest.raises(ValueError):
        check_strongly_decreasing(z, (4, 2), 3)
    with pytest.raises(ModelError):
        check_strongly_decreasing(Product((Q, Q)), ((1, 1), (0, 0)), 4)


def test_check_strongly_decreasing_larger_cap():
    # 5 * 1 >= 5 needs the cap above 4
    assert not check_strongly_decreasing(IntegerChain(), (5, 1), 4)
    assert check_strongly_decreasing(IntegerChain(), (5, 1), 5)


def test_build_sd_sequence():
    assert build_sd_sequence(Q, 1, 4) == (1, Fr(1, 2), Fr(1, 4), Fr(1, 8))
    assert build_sd_sequence(Q, 1, 1) == (1,)
    seq = build_sd_sequence(Q, Fr(7, 3), 6)
    assert check_strongly_decreasing(Q, seq, 4)
    assert all(a > b for a, b in zip(seq, seq[1:]))
    with pytest.raises(ValueError):
        build_sd_sequence(Q, 0, 3)
    with pytest.raises(ValueError):
        build_sd_sequence(Q, 1, 0)


def test_model_spec_round_trip():
    specs = ["Q", "Q@-1", "Q@2/3", "Z@2", "ZxZ@(0,0)", "MV", "Q@-1 x Q@0"]
    for spec in specs:
        assert model_spec(parse_model_spec(spec)) == spec


def test_parse_element_shapes():
    assert parse_element(Q, "-7/2") == Fr(-7, 2)
    assert parse_element(LexZZ(), "(1,-5)") == (1, -5)
    product = parse_model_spec("Q@-1 x Q@0")
    assert parse_element(product, "(5,-1)") == (Fr(5), Fr(-1))
    assert format_element((Fr(5), Fr(-1))) == "(5,-1)"
