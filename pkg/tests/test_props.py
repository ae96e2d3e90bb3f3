import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from combilog.core import LayerKind, LayeredSignature, LogicStack
from combilog.errors import ContractViolation, MalformedInput
from combilog.gen import GenConfig, gen_model, gen_sentence, gen_signature, gen_space, prop_pool
from combilog.hybrid import KripkeModel
from combilog.props import check_institution, check_terms, renaming, run_suite, until_samples
from combilog.syntax import And, At, Diamond, Exists, Next, Not, Until
from combilog.temporal import Lasso

from conftest import faulty_lift, seeds

STACKS = ["PL", "L(PL)", "P(PL)", "H(PL)", "H(L(PL))", "L(P(PL))"]


def outer_depth(rho) -> int:
    if isinstance(rho, (Not, Next, Diamond, At, Exists)):
        return 1 + outer_depth(rho.arg)
    if isinstance(rho, (And, Until)):
        return 1 + max(outer_depth(rho.left), outer_depth(rho.right))
    return 0


class TestGenerators:
    @pytest.mark.parametrize("stack", STACKS)
    @given(seed=seeds)
    @settings(max_examples=30)
    def test_bounds(self, stack, seed):
        cfg = GenConfig(max_prop_symbols=1, max_carrier=3, max_formula_depth=2)
        rng = random.Random(seed)
        sig = gen_signature(LogicStack.parse(stack), rng, cfg, 1)
        assert sig.base.props == {"p1"}
        rho = gen_sentence(sig, rng, cfg)
        if isinstance(sig, LayeredSignature) and sig.kind is not LayerKind.PROB:
            assert outer_depth(rho) <= 2
        model = gen_model(sig, rng, cfg)
        if isinstance(model, Lasso):
            assert len(model) <= 3
        if isinstance(model, KripkeModel):
            assert len(model.worlds) <= 3

    def test_pool(self):
        assert prop_pool(GenConfig(max_prop_symbols=3)) == ["p1", "p2", "p3"]

    def test_config_bounds(self):
        with pytest.raises(ContractViolation):
            GenConfig(samples=0)

    def test_same_seed_same_stream(self):
        cfg = GenConfig(seed=11)
        draws = [
            (lambda rng: (gen_signature(LogicStack.parse("H(L(PL))"), rng, cfg, 1), rng.random()))(cfg.rng("x", 3))
            for _ in range(2)
        ]
        assert draws[0] == draws[1]
        assert cfg.rng("x", 3).random() != cfg.rng("x", 4).random()

    def test_spaces_are_exact_distributions(self):
        rng = random.Random(0)
        sig = gen_signature(LogicStack.parse("P(PL)"), rng, GenConfig(), 1)
        for _ in range(1000):
            space = gen_space(sig, rng)
            assert sum(o.weight for o in space.outcomes) == 1
            assert all(isinstance(o.weight, Fraction) and o.weight >= 0 for o in space.outcomes)

    def test_until_samples_have_a_top_level_until(self):
        assert all(isinstance(rho, Until) for _, rho in until_samples(GenConfig(), 50))


class TestSuites:
    def test_unknown_suite(self):
        with pytest.raises(MalformedInput):
            run_suite("nonsense")

    def test_all_runs_every_suite_deterministically(self):
        a = run_suite("all", GenConfig(seed=1, samples=2))
        b = run_suite("all", GenConfig(seed=1, samples=2))
        assert a.passed, a.to_text()
        assert a.to_json() == b.to_json()
        names = set(a.checks)
        for fragment in ("/satisfaction", "/identity/", "/composition/", "/section", "/model-inverse", "x-fragment", "models"):
            assert any(fragment in n for n in names), fragment

    def test_seed_changes_samples(self):
        a = list(until_samples(GenConfig(seed=1), 20))
        assert a == list(until_samples(GenConfig(seed=1), 20))
        assert a != list(until_samples(GenConfig(seed=2), 20))

    def test_overrides(self):
        report = run_suite("conservativity", samples=3)
        assert set(report.checks.values()) == {3}

    def test_institution_laws(self, cfg):
        for stack in ("PL", "H(L(PL))"):
            assert check_institution(stack, cfg.samples, cfg).passed

    def test_term_values(self, cfg):
        report = check_terms(cfg.samples, cfg)
        assert report.passed and report.checks == {"P(PL)/terms": cfg.samples}

    def test_faulty_lift_fails_the_suite(self):
        report = run_suite("functor-laws", GenConfig(samples=50), lift=faulty_lift)
        assert not report.passed
        assert {f.check.split("/")[0] for f in report.failures} == {k.value for k in LayerKind}

    def test_tau_suite_reports_until_stability(self):
        report = run_suite("tau", GenConfig(samples=40))
        diag = report.diagnostics["until-stability"]
        assert diag["samples"] == 40
        assert diag["stable"] + diag["unstable"] == 40
        assert 0 <= diag["stable_rate"] <= 1

    def test_renaming_witness_is_cyclic(self):
        r = renaming(GenConfig(max_prop_symbols=3), with_fresh=True)
        assert r.name == "rename(d=d',p1=p2,p2=p3,p3=p1)"
