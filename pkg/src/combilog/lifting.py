"""Lifting base comorphisms through a combinator layer, and the law checks.

A lifted comorphism keeps the outer layer untouched and applies the base
comorphism underneath it: signatures as ``id x sign_map``, sentences by
substituting translated base sentences, models by mapping every carrier
point's inner model.  The layer hooks ``translate(None, ...)`` and
``remap(None, ...)`` do exactly this for each combinator.
"""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional

from .core import (
    Comorphism,
    LayerKind,
    LayeredMorphism,
    LayeredSignature,
    Signature,
    combinator,
    compose_comorphisms,
    holds,
    identity_comorphism,
)
from .errors import ContractViolation
from .gen import GenConfig, gen_layer_signature, gen_model, gen_morphism, gen_sentence, gen_term
from .modelfile import describe
from .prob import interp_term, term_translate
from .report import LawReport

SigSource = Callable[[random.Random], Signature]


@dataclass(frozen=True, repr=False)
class LiftedComorphism(Comorphism):
    layer: LayerKind = LayerKind.TEMPORAL
    base: Optional[Comorphism] = None


def _outer(sig, layer) -> LayeredSignature:
    if not isinstance(sig, LayeredSignature) or sig.kind is not layer:
        raise ContractViolation(f"expected a {layer.name} signature, got {sig!r}")
    return sig


def lift_comorphism(layer: LayerKind, c: Comorphism) -> LiftedComorphism:
    layer = LayerKind(layer)
    comb = combinator(layer)

    def sign_map(sig):
        sig = _outer(sig, layer)
        return dataclasses.replace(sig, inner=c.sign_map(sig.inner))

    def mor_map(mor: LayeredMorphism):
        return LayeredMorphism(
            sign_map(mor.source), sign_map(mor.target), c.mor_map(mor.inner), mor.nominal_map, mor.modality_map
        )

    def sen_map(sig, rho):
        inner = _outer(sig, layer).inner
        return comb.translate(None, rho, lambda psi: c.sen_map(inner, psi))

    def mod_map(sig, model):
        inner = _outer(sig, layer).inner
        return comb.remap(None, model, lambda m: c.mod_map(inner, m))

    def pointwise(fn):
        if fn is None:
            return None
        return lambda sig, model: comb.remap(None, model, lambda m: fn(_outer(sig, layer).inner, m))

    sen_inverse = None
    if c.sen_inverse is not None:

        def sen_inverse(sig, rho):
            inner = _outer(sig, layer).inner
            return comb.translate(None, rho, lambda psi: c.sen_inverse(inner, psi))

    return LiftedComorphism(
        name=f"{layer.value}[{c.name}]",
        source=c.source.push(layer),
        target=c.target.push(layer),
        sign_map=sign_map,
        mor_map=mor_map,
        sen_map=sen_map,
        mod_map=mod_map,
        mod_section=pointwise(c.mod_section),
        sen_inverse=sen_inverse,
        mod_inverse=pointwise(c.mod_inverse),
        layer=layer,
        base=c,
    )


def lift_through(stack, c: Comorphism) -> Comorphism:
    """Lift ``c`` through every layer of ``stack``, innermost first."""
    for kind in reversed(stack.layers):
        c = lift_comorphism(kind, c)
    return c


def lifted_term_map(c: Comorphism, sig: LayeredSignature, t):
    """The lifted sentence map applied to a single probabilistic term."""
    return term_translate(t, lambda psi: c.sen_map(sig.inner, psi))


# samplers


def _sampler(layer: LayerKind, base_sigs: SigSource, cfg: GenConfig):
    def draw(rng):
        return gen_layer_signature(layer, base_sigs(rng), rng)

    return draw


def _morphism_within(sig, base_sigs: SigSource, rng, cfg):
    """A morphism out of ``sig`` whose target's base also comes from ``base_sigs``."""
    for _ in range(20):
        target_base = base_sigs(rng)
        if target_base.props or not sig.props:
            break
    return gen_morphism(sig, rng, cfg, target=_lift_target(sig, target_base, rng))


def _lift_target(sig, target_base, rng):
    if not isinstance(sig, LayeredSignature):
        return target_base
    inner = _lift_target(sig.inner, target_base, rng)
    drawn = gen_layer_signature(sig.kind, inner, rng)
    if sig.kind is LayerKind.HYBRID:
        return dataclasses.replace(drawn, nominals=drawn.nominals | {"i1"}, modalities=drawn.modalities | {"m1"})
    return drawn


def _compare(report: LawReport, check: str, sample: str, lhs, rhs, **context) -> None:
    report.count(check)
    if lhs != rhs:
        report.fail(check, sample, **{k: describe(v) for k, v in context.items()}, lhs=describe(lhs), rhs=describe(rhs))


def check_functor_laws(
    layer: LayerKind,
    c1: Comorphism,
    c2: Comorphism,
    base_sigs: SigSource,
    samples: int = 200,
    cfg: GenConfig = GenConfig(),
    lift: Callable[[LayerKind, Comorphism], Comorphism] = lift_comorphism,
) -> LawReport:
    """Lifting preserves identities and composition, compared extensionally.

    ``base_sigs`` draws source signatures of ``c1`` on which ``c2 ; c1`` is
    defined.  ``lift`` is a parameter so that faulty liftings can be tested.
    """
    layer = LayerKind(layer)
    report = LawReport(f"functor-laws[{layer.value}]", cfg.seed)
    composite = compose_comorphisms(c2, c1)
    lifted_id = lift(layer, identity_comorphism(c1.source))
    plain_id = identity_comorphism(c1.source.push(layer))
    lifted_composite = lift(layer, composite)
    composite_of_lifts = compose_comorphisms(lift(layer, c2), lift(layer, c1))
    draw = _sampler(layer, base_sigs, cfg)
    for k in range(samples):
        rng = cfg.rng("functor-laws", layer.value, c1.name, c2.name, k)
        sig = draw(rng)
        rho = gen_sentence(sig, rng, cfg)
        phi = _morphism_within(sig, base_sigs, rng, cfg)
        model = gen_model(sig, rng, cfg)
        tag = str(k)
        ctx = dict(signature=sig)
        _compare(report, f"{layer.value}/identity/signature", tag, lifted_id.sign_map(sig), plain_id.sign_map(sig), **ctx)
        _compare(report, f"{layer.value}/identity/morphism", tag, lifted_id.mor_map(phi), plain_id.mor_map(phi), **ctx)
        _compare(report, f"{layer.value}/identity/sentence", tag, lifted_id.sen_map(sig, rho), plain_id.sen_map(sig, rho), sentence=rho, **ctx)
        _compare(report, f"{layer.value}/identity/model", tag, lifted_id.mod_map(sig, model), plain_id.mod_map(sig, model), model=model, **ctx)

        target = lifted_composite.sign_map(sig)
        target_model = gen_model(target, rng, cfg)
        _compare(report, f"{layer.value}/composition/signature", tag, target, composite_of_lifts.sign_map(sig), **ctx)
        _compare(report, f"{layer.value}/composition/morphism", tag, lifted_composite.mor_map(phi), composite_of_lifts.mor_map(phi), morphism=phi, **ctx)
        _compare(
            report, f"{layer.value}/composition/sentence", tag,
            lifted_composite.sen_map(sig, rho), composite_of_lifts.sen_map(sig, rho), sentence=rho, **ctx,
        )
        _compare(
            report, f"{layer.value}/composition/model", tag,
            lifted_composite.mod_map(sig, target_model), composite_of_lifts.mod_map(sig, target_model),
            model=target_model, **ctx,
        )
    return report


def check_lifted_satisfaction(
    layer: LayerKind,
    c: Comorphism,
    base_sigs: SigSource,
    samples: int = 500,
    cfg: GenConfig = GenConfig(),
) -> LawReport:
    """The lifted comorphism satisfies the comorphism satisfaction condition.

    For the probabilistic layer the lifted term map is also checked directly:
    the value of ``t`` in the translated-back model equals the value of the
    translated ``t`` in the original model.
    """
    layer = LayerKind(layer)
    report = LawReport(f"lifted-satisfaction[{layer.value}]", cfg.seed)
    lifted = lift_comorphism(layer, c)
    draw = _sampler(layer, base_sigs, cfg)
    for k in range(samples):
        rng = cfg.rng("lifted-satisfaction", layer.value, c.name, k)
        sig = draw(rng)
        target = lifted.sign_map(sig)
        model = gen_model(target, rng, cfg)
        rho = gen_sentence(sig, rng, cfg)
        back = lifted.mod_map(sig, model)
        lhs = holds(sig, back, rho)
        rhs = holds(target, model, lifted.sen_map(sig, rho))
        _compare(report, f"{layer.value}[{c.name}]/satisfaction", str(k), lhs, rhs, signature=sig, model=model, sentence=rho)
        if layer is LayerKind.PROB:
            t = gen_term(sig, rng, cfg)
            lhs_t = interp_term(back, t, partial(holds, sig.inner))
            rhs_t = interp_term(model, lifted_term_map(c, sig, t), partial(holds, target.inner))
            _compare(report, f"P[{c.name}]/term-values", str(k), lhs_t, rhs_t, signature=sig, model=model, term=t)
    return report


def check_lifted_conservativity(
    layer: LayerKind,
    c: Comorphism,
    base_sigs: SigSource,
    samples: int = 500,
    cfg: GenConfig = GenConfig(),
) -> LawReport:
    """The lifted section is a right inverse of the lifted model map."""
    layer = LayerKind(layer)
    if c.mod_section is None:
        raise ContractViolation(f"{c!r} carries no surjectivity witness")
    report = LawReport(f"conservativity[{layer.value}]", cfg.seed)
    lifted = lift_comorphism(layer, c)
    draw = _sampler(layer, base_sigs, cfg)
    for k in range(samples):
        rng = cfg.rng("conservativity", layer.value, c.name, k)
        sig = draw(rng)
        model = gen_model(sig, rng, cfg)
        _compare(
            report, f"{layer.value}/section", str(k),
            lifted.mod_map(sig, lifted.mod_section(sig, model)), model, signature=sig, model=model,
        )
    return report


def check_lifted_equivalence(
    layer: LayerKind,
    c: Comorphism,
    base_sigs: SigSource,
    samples: int = 500,
    cfg: GenConfig = GenConfig(),
) -> LawReport:
    """Lifted inverse witnesses: sentences up to sampled semantic equivalence,
    models up to equality."""
    layer = LayerKind(layer)
    if c.sen_inverse is None or c.mod_inverse is None:
        raise ContractViolation(f"{c!r} carries no inverse witnesses")
    report = LawReport(f"equivalence[{layer.value}]", cfg.seed)
    lifted = lift_comorphism(layer, c)
    draw = _sampler(layer, base_sigs, cfg)
    for k in range(samples):
        rng = cfg.rng("equivalence", layer.value, c.name, k)
        tag = str(k)
        sig = draw(rng)
        target = lifted.sign_map(sig)
        rho = gen_sentence(sig, rng, cfg)
        model = gen_model(sig, rng, cfg)
        round_trip = lifted.sen_inverse(sig, lifted.sen_map(sig, rho))
        _compare(
            report, f"{layer.value}/sentence-inverse", tag,
            holds(sig, model, round_trip), holds(sig, model, rho), signature=sig, model=model, sentence=rho,
        )
        rho_t = gen_sentence(target, rng, cfg)
        model_t = gen_model(target, rng, cfg)
        other_way = lifted.sen_map(sig, lifted.sen_inverse(sig, rho_t))
        _compare(
            report, f"{layer.value}/sentence-inverse-dual", tag,
            holds(target, model_t, other_way), holds(target, model_t, rho_t),
            signature=target, model=model_t, sentence=rho_t,
        )
        _compare(
            report, f"{layer.value}/model-inverse", tag,
            lifted.mod_inverse(sig, lifted.mod_map(sig, model_t)), model_t, signature=sig, model=model_t,
        )
        _compare(
            report, f"{layer.value}/model-inverse-dual", tag,
            lifted.mod_map(sig, lifted.mod_inverse(sig, model)), model, signature=sig, model=model,
        )
    return report
