import itertools

import pytest
from hypothesis import given

from combilog.baselogic import (
    atoms,
    def_ext_comorphism,
    enumerate_models,
    eval_prop,
    rename,
    renaming_equivalence,
    semantically_equivalent,
)
from combilog.core import PropSignature, holds
from combilog.errors import ContractViolation, MalformedInput, ResourceLimit
from combilog.syntax import And, Atom, Not

from conftest import sig_sentence_model, val

p, q = Atom("p"), Atom("q")


@pytest.mark.parametrize(
    "true, psi, expected",
    [({"p"}, p, True), (set(), Not(p), True), ({"p", "q"}, And(p, Not(q)), False)],
)
def test_eval_prop_examples(true, psi, expected):
    assert eval_prop(val(*true), psi) is expected


def _truth_table(psi, true):
    # oracle: evaluate by substituting constants into Python's own connectives
    if isinstance(psi, Atom):
        return psi.name in true
    if isinstance(psi, Not):
        return not _truth_table(psi.arg, true)
    return _truth_table(psi.left, true) and _truth_table(psi.right, true)


@given(sig_sentence_model("PL"))
def test_eval_prop_matches_truth_table(case):
    sig, psi, v = case
    assert eval_prop(v, psi) == _truth_table(psi, v.true)


def test_undeclared_atoms_rejected_when_props_given():
    with pytest.raises(MalformedInput):
        eval_prop(val(), Atom("r"), props={"p"})


@pytest.mark.parametrize("props, count", [((), 1), (("p",), 2), (("p", "q"), 4), (("a", "b", "c"), 8)])
def test_enumerate_models_counts(props, count):
    models = list(enumerate_models(PropSignature(frozenset(props))))
    assert len(models) == count == len(set(models))


def test_enumeration_bound():
    sig = PropSignature(frozenset(f"p{k}" for k in range(5)))
    with pytest.raises(ResourceLimit):
        list(enumerate_models(sig, bound=4))


def test_rename_and_atoms():
    assert rename(And(p, Not(q)), {"p": "q", "q": "p"}) == And(q, Not(p))
    assert atoms(And(p, Not(q))) == {"p", "q"}
    with pytest.raises(MalformedInput):
        rename(p, {"q": "p"})


class TestDefinitionalExtension:
    sig = PropSignature({"p"})
    c = def_ext_comorphism(sig, "x")

    def test_beta_restricts(self):
        assert self.c.mod_map(self.sig, val("p", "x")) == val("p")

    def test_section_is_right_inverse(self):
        for v in enumerate_models(self.sig):
            assert self.c.mod_section(self.sig, v) == v
            assert self.c.mod_map(self.sig, self.c.mod_section(self.sig, v)) == v

    def test_satisfaction_condition_exhaustively(self):
        target = self.c.sign_map(self.sig)
        assert target == PropSignature({"p", "x"})
        for v in enumerate_models(target):
            assert holds(self.sig, self.c.mod_map(self.sig, v), p) == holds(target, v, self.c.sen_map(self.sig, p))

    def test_fresh_must_be_fresh(self):
        with pytest.raises(ContractViolation):
            def_ext_comorphism(self.sig, "p")
        with pytest.raises(ContractViolation):
            self.c.sign_map(PropSignature({"x"}))


class TestRenaming:
    sig = PropSignature({"p", "q"})
    swap = renaming_equivalence(sig, {"p": "q", "q": "p"})

    def test_alpha_swaps(self):
        assert self.swap.sen_map(self.sig, And(p, q)) == And(q, p)

    def test_inverse_is_semantically_equivalent(self):
        back = self.swap.sen_inverse(self.sig, self.swap.sen_map(self.sig, And(p, q)))
        assert semantically_equivalent(self.sig, back, And(p, q))

    def test_beta_inverse_round_trips(self):
        for v in enumerate_models(self.sig):
            assert self.swap.mod_inverse(self.sig, self.swap.mod_map(self.sig, v)) == v
            assert self.swap.mod_map(self.sig, self.swap.mod_inverse(self.sig, v)) == v

    def test_identity_bijection_acts_as_identity(self):
        ident = renaming_equivalence(self.sig, {"p": "p", "q": "q"})
        sentences = [p, Not(q), And(p, Not(q))]
        for psi, v in itertools.product(sentences, enumerate_models(self.sig)):
            assert ident.sen_map(self.sig, psi) == psi
            assert ident.mod_map(self.sig, v) == v

    def test_satisfaction_condition_exhaustively(self):
        for v in enumerate_models(self.sig):
            for psi in (p, Not(p), And(p, Not(q))):
                assert self.swap.satisfaction_holds(self.sig, v, psi)

    def test_bijection_checks(self):
        with pytest.raises(ContractViolation, match="injective"):
            renaming_equivalence(self.sig, {"p": "r", "q": "r"})
        with pytest.raises(ContractViolation, match="total"):
            renaming_equivalence(self.sig, {"p": "q"})
        with pytest.raises(ContractViolation):
            self.swap.sign_map(PropSignature({"r"}))
