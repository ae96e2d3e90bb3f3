import random

import pytest
from hypothesis import given, settings

from combilog.baselogic import def_ext_comorphism, renaming_equivalence
from combilog.core import LayerKind, LayeredMorphism, LayeredSignature, PropSignature, holds, make_signature, mod_reduct
from combilog.errors import ContractViolation, UnsupportedModel
from combilog.gen import GenConfig, gen_model, gen_morphism, gen_sentence
from combilog.hybrid import KripkeChecker, KripkeModel
from combilog.lifting import lift_comorphism
from combilog.syntax import Atom, BaseAtom, Next, Not, Until, has_until, without_until
from combilog.temporal import Lasso
from combilog.text import parse_formula, show
from combilog.transform import (
    AFTER,
    AFTER_STAR,
    INIT,
    NEXT,
    NSurrogate,
    check_equivalence,
    check_naturality,
    equivalence_verdicts,
    horizon,
    lasso_to_nsurrogate,
    n_signature,
    tau_alpha,
    tau_beta,
    tau_comorphism,
)

from conftest import hybrid_oracle, ltl_oracle, seeds, val

p, q = BaseAtom(Atom("p")), BaseAtom(Atom("q"))


def temporal(text):
    return parse_formula(text, "L(PL)")


class TestSentences:
    def test_next(self):
        assert show(tau_alpha(Next(p))) == "@ Init [Next] {p}"

    def test_until(self):
        assert show(tau_alpha(Until(p, q))) == (
            "@ Init E x1 . <AfterStar> (nom x1 & {q}) & [AfterStar] (<After> nom x1 -> {p})"
        )

    def test_variables_are_numbered_outermost_then_left_to_right(self):
        # the left operand is numbered first although it is printed last
        assert show(tau_alpha(temporal("({p} U {q}) U ({q} U {p})"))) == (
            "@ Init E x1 . <AfterStar> (nom x1 & E x3 . <AfterStar> (nom x3 & {p})"
            " & [AfterStar] (<After> nom x3 -> {q}))"
            " & [AfterStar] (<After> nom x1 -> E x2 . <AfterStar> (nom x2 & {q})"
            " & [AfterStar] (<After> nom x2 -> {p}))"
        )

    def test_translation_is_deterministic(self):
        rho = temporal("X ({p} U ~{q}) U {p}")
        assert tau_alpha(rho) == tau_alpha(rho)

    def test_signature(self):
        sig = make_signature("L(PL)", ["p"])
        assert n_signature(sig) == make_signature("H(PL)", ["p"], [([INIT], [AFTER, AFTER_STAR, NEXT])])
        with pytest.raises(ContractViolation):
            n_signature(make_signature("H(PL)", ["p"], [([], [])]))


class TestSurrogates:
    alternating = Lasso((val("p"), val()), 1)

    @pytest.mark.parametrize("rho, expected", [(BaseAtom(Atom("p")), 4), (Next(p), 5)])
    def test_horizon(self, rho, expected):
        assert horizon(self.alternating, rho) == expected

    def test_horizon_of_single_state(self):
        assert horizon(Lasso((val(),), 0), p) == 3

    def test_structure(self):
        lasso = Lasso((val("p"), val("q"), val()), 1)
        s = lasso_to_nsurrogate(lasso, Next(Next(p)))
        assert len(s.worlds) == 3 + 2 * 4 == 11
        assert s.nominals == {INIT: 0}
        assert (9, 10) in s.relations[NEXT] and (10, 11) not in s.relations[NEXT]
        assert (3, 3) in s.relations[AFTER_STAR] and (3, 3) not in s.relations[AFTER]
        assert [s.models[w] for w in s.worlds] == lasso.unfold(11)

    def test_round_trip(self):
        lasso = Lasso((val("p"), val("q"), val()), 1)
        assert tau_beta(lasso_to_nsurrogate(lasso, p)) == lasso

    def test_plain_kripke_models_are_refused(self):
        plain = KripkeModel((0,), {INIT: 0}, {NEXT: set(), AFTER: set(), AFTER_STAR: {(0, 0)}}, {0: val()})
        with pytest.raises(UnsupportedModel):
            tau_beta(plain)
        with pytest.raises(UnsupportedModel):
            tau_comorphism().mod_map(make_signature("L(PL)", []), plain)

    def test_short_horizon_rejected(self):
        with pytest.raises(ContractViolation):
            lasso_to_nsurrogate(self.alternating, horizon_=1)
        with pytest.raises(ContractViolation):
            NSurrogate((0,), {}, {}, {0: val()}, length=2, loop=0)

    @given(seeds)
    @settings(max_examples=50)
    def test_round_trip_on_random_lassos(self, seed):
        rng = random.Random(seed)
        sig = make_signature("L(PL)", ["p", "q"])
        lasso = gen_model(sig, rng)
        assert tau_beta(lasso_to_nsurrogate(lasso, gen_sentence(sig, rng))) == lasso


class TestNaturality:
    @given(seeds)
    @settings(max_examples=50)
    def test_beta_commutes_with_reducts(self, seed):
        rng = random.Random(seed)
        sig = make_signature("L(PL)", ["p", "q"])
        phi = gen_morphism(sig, rng)
        lasso = gen_model(phi.target, rng)
        n_phi = LayeredMorphism(
            n_signature(phi.source), n_signature(phi.target), phi.inner,
            {INIT: INIT}, {m: m for m in (AFTER, AFTER_STAR, NEXT)},
        )
        surrogate = lasso_to_nsurrogate(lasso, p)
        reduced = mod_reduct(n_phi, surrogate)
        assert isinstance(reduced, NSurrogate)
        assert tau_beta(reduced) == mod_reduct(phi, tau_beta(surrogate))

    def test_renaming_example(self):
        swap = renaming_equivalence(PropSignature({"p", "q"}), {"p": "q", "q": "p"})
        sig = make_signature("L(PL)", ["p", "q"])
        lifted = lift_comorphism(LayerKind.HYBRID, swap)
        out = lifted.sen_map(n_signature(sig), tau_alpha(Next(p)))
        assert show(out) == "@ Init [Next] {q}"

    @pytest.mark.parametrize(
        "c",
        [
            renaming_equivalence(PropSignature({"p", "q"}), {"p": "q", "q": "p"}),
            def_ext_comorphism(PropSignature({"p", "q"}), "x"),
        ],
        ids=["renaming", "def_ext"],
    )
    def test_square_commutes(self, c):
        def sigs(rng):
            return PropSignature(frozenset(rng.sample(["p", "q"], rng.randint(1, 2))))

        report = check_naturality(c, sigs, 60, GenConfig(seed=5))
        assert report.passed, report.to_text()
        assert set(report.checks) == {"sentences", "models", "signatures"}


class TestEquivalence:
    def test_next_on_loop(self):
        v = equivalence_verdicts(Lasso((val("p"), val()), 1), Next(p))
        assert v.temporal is v.hybrid is False
        assert v.hybrid_extended is None

    def test_late_witness_is_stable(self):
        v = equivalence_verdicts(Lasso((val("p"), val("p"), val("q")), 2), Until(p, q))
        assert v.temporal and v.hybrid and v.stable and v.agree

    def test_last_world_makes_box_next_vacuous(self):
        # Every surrogate is a finite prefix, so [Next] holds trivially at its
        # last world.  A U-witness can be found there even though no position
        # of the lasso satisfies the right operand; the extra horizon moves
        # the end along with it, so the spurious verdict is also stable.
        lasso = Lasso((val(),), 0)
        rho = Until(Not(p), Next(p))
        v = equivalence_verdicts(lasso, rho)
        assert v.temporal is False
        assert v.hybrid is True and v.stable

    def test_until_samples_are_diagnostics(self):
        report = check_equivalence(Lasso((val(),), 0), Until(Not(p), Next(p)))
        assert report.passed
        diag = report.diagnostics["until-stability"]
        assert (diag["samples"], diag["stable"], diag["stable_disagree"]) == (1, 1, 1)
        assert diag["cases"][0]["temporal"] is False

    def test_x_fragment_is_a_checked_law(self):
        report = check_equivalence(Lasso((val("p"), val()), 1), Next(Next(p)))
        assert report.passed and report.checks == {"x-fragment": 1}

    @given(seeds)
    def test_x_fragment_matches_on_random_lassos(self, seed):
        rng = random.Random(seed)
        cfg = GenConfig(max_carrier=6)
        sig = make_signature("L(PL)", ["p", "q"])
        rho = without_until(gen_sentence(sig, rng, cfg))
        lasso = gen_model(sig, rng, cfg)
        surrogate = lasso_to_nsurrogate(lasso, rho)
        expected = ltl_oracle(lasso, 0, rho)
        assert hybrid_oracle(surrogate, 0, tau_alpha(rho)) == expected
        assert KripkeChecker(surrogate).holds_at(0, tau_alpha(rho)) == expected

    @given(seeds)
    @settings(max_examples=50)
    def test_satisfaction_condition_on_the_x_fragment(self, seed):
        rng = random.Random(seed)
        sig = LayeredSignature(LayerKind.TEMPORAL, PropSignature({"p", "q"}))
        tau = tau_comorphism()
        rho = without_until(gen_sentence(sig, rng))
        assert not has_until(rho)
        s = lasso_to_nsurrogate(gen_model(sig, rng), rho)
        assert holds(sig, tau.mod_map(sig, s), rho) == holds(tau.sign_map(sig), s, tau.sen_map(sig, rho))
