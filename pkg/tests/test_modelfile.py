import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from combilog.core import LogicStack, make_signature
from combilog.errors import ContractViolation, MalformedInput
from combilog.gen import GenConfig, gen_model, gen_morphism, gen_signature
from combilog.modelfile import (
    dump_model,
    load_model,
    model_from_json,
    model_to_json,
    morphism_from_json,
    morphism_to_json,
    signature_from_json,
    signature_to_json,
)
from combilog.prob import FiniteSpace, Outcome

from conftest import seeds, val

STACKS = ["PL", "L(PL)", "P(PL)", "H(PL)", "H(L(PL))", "P(H(PL))"]


@pytest.mark.parametrize("stack", STACKS)
@given(seed=seeds)
@settings(max_examples=30)
def test_model_round_trip(stack, seed):
    rng = random.Random(seed)
    st = LogicStack.parse(stack)
    sig = gen_signature(st, rng, GenConfig(), 1)
    model = gen_model(sig, rng)
    assert load_model(dump_model(model), st, sig) == model


@pytest.mark.parametrize("stack", STACKS)
@given(seed=seeds)
@settings(max_examples=30)
def test_signature_and_morphism_round_trip(stack, seed):
    rng = random.Random(seed)
    st = LogicStack.parse(stack)
    sig = gen_signature(st, rng, GenConfig(), 1)
    assert signature_from_json(signature_to_json(sig), st) == sig
    phi = gen_morphism(sig, rng)
    assert morphism_from_json(json.loads(json.dumps(morphism_to_json(phi))), phi.source, phi.target) == phi


class TestWeights:
    def test_fraction_and_decimal_strings(self):
        doc = {
            "kind": "space",
            "outcomes": [{"weight": "1/3", "model": {"kind": "valuation", "true": ["p"]}},
                         {"weight": "0.5", "model": {"kind": "valuation", "true": []}},
                         {"weight": "1/6", "model": {"kind": "valuation", "true": []}}],
        }
        space = model_from_json(doc, LogicStack.parse("P(PL)"))
        assert [o.weight for o in space.outcomes] == [Fraction(1, 3), Fraction(1, 2), Fraction(1, 6)]

    def test_floats_are_refused(self):
        doc = {"kind": "space", "outcomes": [{"weight": 1.0, "model": {"kind": "valuation", "true": []}}]}
        with pytest.raises(MalformedInput):
            model_from_json(doc, LogicStack.parse("P(PL)"))

    def test_weights_are_written_exactly(self):
        space = FiniteSpace((Outcome(Fraction(1, 3), val()), Outcome(Fraction(2, 3), val("p"))))
        assert [o["weight"] for o in model_to_json(space)["outcomes"]] == ["1/3", "2/3"]


class TestErrors:
    def test_bad_json(self):
        with pytest.raises(MalformedInput, match="line 1"):
            load_model("{", LogicStack())

    def test_missing_kind(self):
        with pytest.raises(MalformedInput, match="kind"):
            model_from_json({"true": []}, LogicStack())

    def test_kind_must_fit_the_stack(self):
        with pytest.raises(MalformedInput):
            model_from_json({"kind": "valuation", "true": []}, LogicStack.parse("L(PL)"))

    def test_nested_path_in_message(self):
        doc = {"kind": "lasso", "loop": 0, "states": [{"kind": "valuation"}]}
        with pytest.raises(MalformedInput, match=r"\$\.states\[0\]"):
            model_from_json(doc, LogicStack.parse("L(PL)"))

    def test_model_outside_signature(self):
        text = json.dumps({"kind": "valuation", "true": ["q"]})
        with pytest.raises(MalformedInput, match="undeclared"):
            load_model(text, LogicStack(), make_signature("PL", ["p"]))

    def test_bad_loop(self):
        doc = {"kind": "lasso", "loop": 3, "states": [{"kind": "valuation", "true": []}]}
        with pytest.raises((MalformedInput, ContractViolation)):
            model_from_json(doc, LogicStack.parse("L(PL)"))
