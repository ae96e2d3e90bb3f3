import random

import pytest
from hypothesis import given

from combilog.core import LayerKind, LogicStack
from combilog.errors import ContractViolation, MalformedInput
from combilog.gen import GenConfig, gen_model, gen_sentence, gen_signature
from combilog.syntax import And, Atom, BaseAtom, Next, Not, Until
from combilog.temporal import Lasso, TraceChecker, lasso_succ, ltl_eval_at, ltl_satisfies, temporal_reduct

from conftest import ltl_oracle, seeds, val

p, q = BaseAtom(Atom("p")), BaseAtom(Atom("q"))


def test_lasso_validation():
    with pytest.raises(ContractViolation):
        Lasso(())
    with pytest.raises(ContractViolation):
        Lasso((val(),), 1)


@pytest.mark.parametrize("n, k, j, expected", [(3, 1, 0, 1), (3, 1, 2, 1), (1, 0, 0, 0)])
def test_successor(n, k, j, expected):
    assert lasso_succ(Lasso(tuple(val() for _ in range(n)), k), j) == expected


def test_unfold_repeats_the_loop():
    a, b, c = val("a"), val("b"), val("c")
    assert Lasso((a, b, c), 1).unfold(7) == [a, b, c, b, c, b, c]


class TestExamples:
    def test_next_on_loop(self):
        assert ltl_eval_at(Lasso((val("p"), val()), 1), 0, Next(p)) is False

    def test_until_with_late_witness(self):
        assert ltl_eval_at(Lasso((val("p"), val("p"), val("q")), 2), 0, Until(p, q)) is True

    def test_tautology_everywhere(self):
        lasso = Lasso((val(), val("p")), 0)
        taut = BaseAtom(Not(And(Atom("p"), Not(Atom("p")))))
        assert all(ltl_eval_at(lasso, j, taut) for j in range(2))

    def test_satisfaction_examples(self):
        assert ltl_satisfies(Lasso((val(),), 0), Not(p))
        assert ltl_satisfies(Lasso((val("p"), val("q")), 0), Until(p, q))
        assert ltl_satisfies(Lasso((val(), val("p")), 1), Next(p))

    def test_until_needs_a_witness(self):
        # p holds forever but q never does
        assert not ltl_satisfies(Lasso((val("p"),), 0), Until(p, q))

    def test_position_out_of_range(self):
        with pytest.raises(ContractViolation):
            TraceChecker(Lasso((val(),))).holds_at(1, p)

    def test_not_a_temporal_sentence(self):
        with pytest.raises(MalformedInput):
            ltl_satisfies(Lasso((val(),)), Atom("p"))


@given(seeds)
def test_checker_matches_unfolding_oracle(seed):
    rng = random.Random(seed)
    cfg = GenConfig(max_carrier=6)
    sig = gen_signature(LogicStack((LayerKind.TEMPORAL,)), rng, cfg, 1)
    rho = gen_sentence(sig, rng, cfg)
    lasso = gen_model(sig, rng, cfg)
    checker = TraceChecker(lasso)
    for j in range(len(lasso)):
        assert checker.holds_at(j, rho) == ltl_oracle(lasso, j, rho)


@given(seeds)
def test_truth_depends_only_on_the_suffix(seed):
    # positions past the loop repeat: truth at j equals truth at j + period
    rng = random.Random(seed)
    sig = gen_signature(LogicStack((LayerKind.TEMPORAL,)), rng, GenConfig(), 1)
    rho = gen_sentence(sig, rng)
    lasso = gen_model(sig, rng)
    period = len(lasso) - lasso.loop
    for j in range(lasso.loop, len(lasso)):
        assert ltl_oracle(lasso, j, rho) == ltl_oracle(lasso, j + period, rho)


def test_reduct_is_pointwise():
    lasso = Lasso((val("q"), val()), 1)
    assert temporal_reduct(lasso, lambda v: val("p") if "q" in v.true else val()) == Lasso((val("p"), val()), 1)
