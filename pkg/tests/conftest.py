"""Shared oracles and hypothesis strategies.

The oracles here are deliberately naive and share no code with the library's
evaluators: temporal truth is computed on the infinite unfolding by direct
recursion, hybrid truth by the textbook clauses over explicit world sets.
"""

from __future__ import annotations

import dataclasses
import random

import pytest
from hypothesis import strategies as st

from combilog.baselogic import Valuation, eval_prop
from combilog.core import LogicStack, combinator
from combilog.gen import GenConfig, gen_model, gen_sentence, gen_signature
from combilog.lifting import lift_comorphism
from combilog.syntax import And, At, BaseAtom, Diamond, Exists, Next, Nominal, Not, Until
from combilog.temporal import Lasso


def ltl_oracle(lasso: Lasso, j: int, rho, inner=eval_prop) -> bool:
    """Truth at position ``j`` of the infinite unfolding.

    Suffixes at positions with the same lasso index are equal, so a witness
    for U, if any exists, occurs within ``n`` steps of ``j``.
    """
    n = len(lasso.states)
    if isinstance(rho, BaseAtom):
        return inner(lasso.states[lasso.position(j)], rho.sentence)
    if isinstance(rho, Not):
        return not ltl_oracle(lasso, j, rho.arg, inner)
    if isinstance(rho, And):
        return ltl_oracle(lasso, j, rho.left, inner) and ltl_oracle(lasso, j, rho.right, inner)
    if isinstance(rho, Next):
        return ltl_oracle(lasso, j + 1, rho.arg, inner)
    if isinstance(rho, Until):
        for i in range(j, j + n + 1):
            if ltl_oracle(lasso, i, rho.right, inner):
                return True
            if not ltl_oracle(lasso, i, rho.left, inner):
                return False
        return False
    raise TypeError(rho)


def hybrid_oracle(model, w, rho, env=None, inner=eval_prop) -> bool:
    env = env or {}

    def name(i):
        return env[i] if i in env else model.nominals[i]

    if isinstance(rho, Nominal):
        return name(rho.name) == w
    if isinstance(rho, BaseAtom):
        return inner(model.models[w], rho.sentence)
    if isinstance(rho, Not):
        return not hybrid_oracle(model, w, rho.arg, env, inner)
    if isinstance(rho, And):
        return hybrid_oracle(model, w, rho.left, env, inner) and hybrid_oracle(model, w, rho.right, env, inner)
    if isinstance(rho, At):
        return hybrid_oracle(model, name(rho.nominal), rho.arg, env, inner)
    if isinstance(rho, Diamond):
        return any(a == w and hybrid_oracle(model, b, rho.arg, env, inner) for a, b in model.relations[rho.modality])
    if isinstance(rho, Exists):
        return any(hybrid_oracle(model, w, rho.arg, {**env, rho.var: s}, inner) for s in model.worlds)
    raise TypeError(rho)


def val(*props: str) -> Valuation:
    return Valuation(frozenset(props))


def faulty_lift(layer, c):
    """A lifting with a caching bug: every carrier point gets the first point's model."""
    good = lift_comorphism(layer, c)
    comb = combinator(layer)

    def mod_map(sig, model):
        first = []

        def once(m):
            if not first:
                first.append(c.mod_map(sig.inner, m))
            return first[0]

        return comb.remap(None, model, once)

    return dataclasses.replace(good, mod_map=mod_map)


# hypothesis strategies: a drawn seed fixes a generator stream

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def signatures(draw, stack: str, min_props: int = 1, cfg: GenConfig = GenConfig()):
    rng = random.Random(draw(seeds))
    return gen_signature(LogicStack.parse(stack), rng, cfg, min_props)


@st.composite
def sig_sentence_model(draw, stack: str, cfg: GenConfig = GenConfig()):
    """A signature with one sentence and one model over it."""
    rng = random.Random(draw(seeds))
    sig = gen_signature(LogicStack.parse(stack), rng, cfg, 1)
    return sig, gen_sentence(sig, rng, cfg), gen_model(sig, rng, cfg)


@pytest.fixture
def cfg() -> GenConfig:
    return GenConfig(seed=7, samples=60)
