"""Random generators for signatures, morphisms, sentences and models.

Every generator takes an explicit :class:`random.Random`, so a seed fixes the
whole stream.  Symbols come from small fixed pools (``p1..``, ``i1..``,
``m1..``) so that independently drawn signatures overlap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .baselogic import Valuation
from .core import (
    LayerKind,
    LayeredMorphism,
    LayeredSignature,
    LogicStack,
    PropMorphism,
    PropSignature,
    Signature,
)
from .errors import ContractViolation
from .hybrid import KripkeModel
from .prob import FiniteSpace, Outcome
from .syntax import (
    Add,
    And,
    At,
    Atom,
    BaseAtom,
    Const,
    Diamond,
    Exists,
    Integral,
    Less,
    Mul,
    Next,
    Nominal,
    Not,
    Until,
)
from .temporal import Lasso

MAX_LAYER_SYMBOLS = 3
INNER_DEPTH = 2


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_prop_symbols: int = 4
    max_carrier: int = 5
    max_formula_depth: int = 4
    samples: int = 500

    def __post_init__(self):
        for name in ("max_prop_symbols", "max_carrier", "max_formula_depth", "samples"):
            if getattr(self, name) < 1:
                raise ContractViolation(f"{name} must be at least 1")

    def rng(self, *labels) -> random.Random:
        """A stream determined by the seed and ``labels`` alone."""
        return random.Random(":".join(str(x) for x in (self.seed,) + labels))


def prop_pool(cfg: GenConfig) -> list[str]:
    return [f"p{k}" for k in range(1, cfg.max_prop_symbols + 1)]


NOMINAL_POOL = [f"i{k}" for k in range(1, MAX_LAYER_SYMBOLS + 1)]
MODALITY_POOL = [f"m{k}" for k in range(1, MAX_LAYER_SYMBOLS + 1)]


def _subset(rng: random.Random, pool, lo: int = 0) -> frozenset[str]:
    k = rng.randint(min(lo, len(pool)), len(pool))
    return frozenset(rng.sample(list(pool), k))


def gen_layer_signature(kind: LayerKind, inner: Signature, rng: random.Random) -> LayeredSignature:
    if LayerKind(kind) is LayerKind.HYBRID:
        return LayeredSignature(kind, inner, _subset(rng, NOMINAL_POOL, 1), _subset(rng, MODALITY_POOL, 1))
    return LayeredSignature(kind, inner)


def gen_signature(stack: LogicStack, rng: random.Random, cfg: GenConfig = GenConfig(), min_props: int = 0) -> Signature:
    sig: Signature = PropSignature(_subset(rng, prop_pool(cfg), min_props))
    for kind in reversed(stack.layers):
        sig = gen_layer_signature(kind, sig, rng)
    return sig


def _random_map(rng: random.Random, source, target, bijective: bool) -> dict[str, str]:
    source = sorted(source)
    target = sorted(target)
    if bijective:
        return dict(zip(source, rng.sample(target, len(source))))
    return {s: rng.choice(target) for s in source}


def _target_symbols(rng, pool, source, bijective):
    lo = len(source) if bijective else (1 if source else 0)
    return _subset(rng, pool, lo)


def gen_morphism(
    source: Signature,
    rng: random.Random,
    cfg: GenConfig = GenConfig(),
    target: Optional[Signature] = None,
    bijective: bool = False,
):
    """A total morphism out of ``source``; its target is drawn unless given."""
    if isinstance(source, PropSignature):
        if target is None:
            target = PropSignature(_target_symbols(rng, prop_pool(cfg), source.props, bijective))
        return PropMorphism(source, target, _random_map(rng, source.props, target.props, bijective))
    inner = gen_morphism(source.inner, rng, cfg, None if target is None else target.inner, bijective)
    if target is None:
        if source.kind is LayerKind.HYBRID:
            target = LayeredSignature(
                source.kind,
                inner.target,
                _target_symbols(rng, NOMINAL_POOL, source.nominals, bijective),
                _target_symbols(rng, MODALITY_POOL, source.modalities, bijective),
            )
        else:
            target = LayeredSignature(source.kind, inner.target)
    return LayeredMorphism(
        source,
        target,
        inner,
        _random_map(rng, source.nominals, target.nominals, bijective),
        _random_map(rng, source.modalities, target.modalities, bijective),
    )


def gen_sentence(sig: Signature, rng: random.Random, cfg: GenConfig = GenConfig(), depth: Optional[int] = None):
    """A sentence over ``sig`` of nesting depth at most ``depth`` in its outer layer."""
    if depth is None:
        depth = rng.randint(0, cfg.max_formula_depth)
    if isinstance(sig, PropSignature):
        return _gen_prop(sig, rng, depth)
    if sig.kind is LayerKind.TEMPORAL:
        return _gen_temporal(sig, rng, cfg, depth)
    if sig.kind is LayerKind.PROB:
        return _gen_prob(sig, rng, cfg, depth)
    return _gen_hybrid(sig, rng, cfg, depth, ())


def _inner(sig, rng, cfg):
    return gen_sentence(sig.inner, rng, cfg, rng.randint(0, min(INNER_DEPTH, cfg.max_formula_depth)))


def _gen_prop(sig: PropSignature, rng, depth):
    if not sig.props:
        raise ContractViolation("no propositional sentences over an empty signature")
    choice = rng.randrange(4) if depth > 0 else 0
    if choice <= 1:
        return Atom(rng.choice(sorted(sig.props)))
    if choice == 2:
        return Not(_gen_prop(sig, rng, depth - 1))
    return And(_gen_prop(sig, rng, depth - 1), _gen_prop(sig, rng, depth - 1))


def _gen_temporal(sig, rng, cfg, depth):
    choice = rng.randrange(6) if depth > 0 else 0
    if choice == 0:
        return BaseAtom(_inner(sig, rng, cfg))
    if choice == 1:
        return Not(_gen_temporal(sig, rng, cfg, depth - 1))
    if choice == 2:
        return And(_gen_temporal(sig, rng, cfg, depth - 1), _gen_temporal(sig, rng, cfg, depth - 1))
    if choice == 3:
        return Next(_gen_temporal(sig, rng, cfg, depth - 1))
    return Until(_gen_temporal(sig, rng, cfg, depth - 1), _gen_temporal(sig, rng, cfg, depth - 1))


def gen_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-2, 10), rng.choice([1, 2, 3, 4, 5, 10]))


def gen_term(sig, rng: random.Random, cfg: GenConfig = GenConfig(), depth: Optional[int] = None):
    if depth is None:
        depth = rng.randint(0, 2)
    choice = rng.randrange(4) if depth > 0 else rng.randrange(2)
    if choice == 0:
        return Const(gen_rational(rng))
    if choice == 1:
        return Integral(_inner(sig, rng, cfg))
    cls = Add if choice == 2 else Mul
    return cls(gen_term(sig, rng, cfg, depth - 1), gen_term(sig, rng, cfg, depth - 1))


def _gen_prob(sig, rng, cfg, depth):
    choice = rng.randrange(4) if depth > 0 else 0
    if choice <= 1:
        return Less(gen_term(sig, rng, cfg), gen_term(sig, rng, cfg))
    if choice == 2:
        return Not(_gen_prob(sig, rng, cfg, depth - 1))
    return And(_gen_prob(sig, rng, cfg, depth - 1), _gen_prob(sig, rng, cfg, depth - 1))


def _gen_hybrid(sig, rng, cfg, depth, bound):
    names = sorted(sig.nominals) + list(bound)
    if depth <= 0:
        if names and rng.random() < 0.4:
            return Nominal(rng.choice(names))
        return BaseAtom(_inner(sig, rng, cfg))
    options = ["not", "and", "base"]
    if names:
        options += ["at", "nominal"]
    if sig.modalities:
        options += ["diamond", "diamond"]
    if len(bound) < 2:
        options.append("exists")
    choice = rng.choice(options)
    sub = lambda b=bound: _gen_hybrid(sig, rng, cfg, depth - 1, b)  # noqa: E731
    if choice == "not":
        return Not(sub())
    if choice == "and":
        return And(sub(), sub())
    if choice == "base":
        return BaseAtom(_inner(sig, rng, cfg))
    if choice == "nominal":
        return Nominal(rng.choice(names))
    if choice == "at":
        return At(rng.choice(names), sub())
    if choice == "diamond":
        return Diamond(rng.choice(sorted(sig.modalities)), sub())
    var = f"x{len(bound) + 1}"
    return Exists(var, sub(bound + (var,)))


def gen_model(sig: Signature, rng: random.Random, cfg: GenConfig = GenConfig()):
    if isinstance(sig, PropSignature):
        return Valuation(frozenset(p for p in sorted(sig.props) if rng.random() < 0.5))
    if sig.kind is LayerKind.TEMPORAL:
        n = rng.randint(1, cfg.max_carrier)
        return Lasso(tuple(gen_model(sig.inner, rng, cfg) for _ in range(n)), rng.randrange(n))
    if sig.kind is LayerKind.PROB:
        return gen_space(sig, rng, cfg)
    n = rng.randint(1, cfg.max_carrier)
    worlds = [f"w{k}" for k in range(n)]
    density = rng.random()
    return KripkeModel(
        worlds=tuple(worlds),
        nominals={i: rng.choice(worlds) for i in sorted(sig.nominals)},
        relations={
            lam: frozenset((a, b) for a in worlds for b in worlds if rng.random() < density)
            for lam in sorted(sig.modalities)
        },
        models={w: gen_model(sig.inner, rng, cfg) for w in worlds},
    )


def gen_space(sig, rng: random.Random, cfg: GenConfig = GenConfig()) -> FiniteSpace:
    k = rng.randint(1, cfg.max_carrier)
    raw = [rng.randint(0, 4) for _ in range(k)]
    if not any(raw):
        raw[rng.randrange(k)] = 1
    total = sum(raw)
    return FiniteSpace(tuple(Outcome(Fraction(w, total), gen_model(sig.inner, rng, cfg)) for w in raw))
