"""Law suites: every structural claim about the combinators as a sampled check.

``run_suite(name, cfg)`` returns a :class:`LawReport`.  Suites are
deterministic in ``cfg``: every sample draws from its own RNG stream, named
by suite, check and sample index.
"""

from __future__ import annotations

from dataclasses import replace
from functools import partial

from .baselogic import def_ext_comorphism, renaming_equivalence
from .core import (
    LayerKind,
    LogicStack,
    PropSignature,
    compose_comorphisms,
    compose_morphisms,
    holds,
    identity_comorphism,
    identity_morphism,
    mod_reduct,
    sen_translate,
)
from .errors import MalformedInput
from .gen import GenConfig, gen_model, gen_morphism, gen_sentence, gen_signature, gen_term, prop_pool
from .lifting import (
    _compare,
    check_functor_laws,
    check_lifted_conservativity,
    check_lifted_equivalence,
    check_lifted_satisfaction,
    lift_comorphism,
)
from .prob import interp_term, term_translate
from .report import LawReport
from .syntax import Until, without_until
from .temporal import Lasso
from .transform import check_equivalence, check_naturality, check_tau_satisfaction

SUITES = ("institution", "comorphism", "functor-laws", "conservativity", "equivalence", "tau", "all")
INSTITUTION_STACKS = ("PL", "L(PL)", "P(PL)", "H(PL)", "H(L(PL))")
LAYERS = (LayerKind.TEMPORAL, LayerKind.PROB, LayerKind.HYBRID)
FRESH = "d"


# the witness comorphisms used throughout


def base_signatures(cfg: GenConfig):
    """Non-empty propositional signatures over the generator pool."""
    return lambda rng: gen_signature(LogicStack(), rng, cfg, min_props=1)


def def_ext(cfg: GenConfig):
    return def_ext_comorphism(PropSignature(frozenset(prop_pool(cfg))), FRESH)


def renaming(cfg: GenConfig, with_fresh: bool = False):
    """A cyclic renaming of the pool, optionally also moving the fresh symbol."""
    pool = prop_pool(cfg)
    bij = {p: pool[(k + 1) % len(pool)] for k, p in enumerate(pool)}
    if with_fresh:
        bij[FRESH] = FRESH + "'"
    return renaming_equivalence(PropSignature(frozenset(bij)), bij)


# institution laws


def check_institution(stack: LogicStack | str, samples: int = 500, cfg: GenConfig = GenConfig()) -> LawReport:
    """Satisfaction condition plus functoriality of translation and reduct."""
    if isinstance(stack, str):
        stack = LogicStack.parse(stack)
    name = str(stack)
    report = LawReport(f"institution[{name}]", cfg.seed)
    for k in range(samples):
        rng = cfg.rng("institution", name, k)
        tag = str(k)
        sig = gen_signature(stack, rng, cfg, min_props=1)
        phi = gen_morphism(sig, rng, cfg)
        psi = gen_morphism(phi.target, rng, cfg)
        rho = gen_sentence(sig, rng, cfg)
        model = gen_model(phi.target, rng, cfg)
        _compare(
            report, f"{name}/satisfaction", tag,
            holds(sig, mod_reduct(phi, model), rho), holds(phi.target, model, sen_translate(phi, rho)),
            signature=sig, morphism=phi, model=model, sentence=rho,
        )
        _compare(report, f"{name}/sen-identity", tag, sen_translate(identity_morphism(sig), rho), rho, sentence=rho)
        _compare(
            report, f"{name}/sen-composition", tag,
            sen_translate(compose_morphisms(psi, phi), rho), sen_translate(psi, sen_translate(phi, rho)),
            sentence=rho,
        )
        far = gen_model(psi.target, rng, cfg)
        own = gen_model(sig, rng, cfg)
        _compare(report, f"{name}/mod-identity", tag, mod_reduct(identity_morphism(sig), own), own, model=own)
        _compare(
            report, f"{name}/mod-composition", tag,
            mod_reduct(compose_morphisms(psi, phi), far), mod_reduct(phi, mod_reduct(psi, far)), model=far,
        )
    return report


def check_terms(samples: int = 500, cfg: GenConfig = GenConfig()) -> LawReport:
    """Term values are invariant under reduct and translation, exactly."""
    stack = LogicStack((LayerKind.PROB,))
    report = LawReport("terms", cfg.seed)
    for k in range(samples):
        rng = cfg.rng("terms", k)
        sig = gen_signature(stack, rng, cfg, min_props=1)
        phi = gen_morphism(sig, rng, cfg)
        model = gen_model(phi.target, rng, cfg)
        t = gen_term(sig, rng, cfg)
        lhs = interp_term(mod_reduct(phi, model), t, partial(holds, sig.inner))
        rhs = interp_term(model, term_translate(t, partial(sen_translate, phi.inner)), partial(holds, phi.target.inner))
        _compare(report, "P(PL)/terms", str(k), lhs, rhs, signature=sig, morphism=phi, model=model, term=t)
    return report


# comorphisms


def check_comorphism(c, base_sigs, samples: int = 500, cfg: GenConfig = GenConfig()) -> LawReport:
    """The satisfaction condition of ``c`` on sampled base signatures."""
    report = LawReport(f"comorphism[{c.name}]", cfg.seed)
    for k in range(samples):
        rng = cfg.rng("comorphism", c.name, k)
        sig = base_sigs(rng)
        model = gen_model(c.sign_map(sig), rng, cfg)
        rho = gen_sentence(sig, rng, cfg)
        lhs = holds(sig, c.mod_map(sig, model), rho)
        rhs = holds(c.sign_map(sig), model, c.sen_map(sig, rho))
        _compare(report, f"{c.name}/satisfaction", str(k), lhs, rhs, signature=sig, model=model, sentence=rho)
    return report


def _comorphism_suite(cfg: GenConfig) -> LawReport:
    n = cfg.samples
    report = LawReport("comorphism", cfg.seed)
    sigs = base_signatures(cfg)
    bases = [identity_comorphism("PL"), def_ext(cfg), renaming(cfg)]
    for c in bases + [compose_comorphisms(renaming(cfg, True), def_ext(cfg))]:
        report.merge(check_comorphism(c, sigs, n, cfg))
    for layer in LAYERS:
        for c in bases:
            report.merge(check_lifted_satisfaction(layer, c, sigs, n, cfg))
    report.merge(check_tau_satisfaction(LogicStack(), sigs, n, cfg))
    return report


def _functor_suite(cfg: GenConfig, lift=lift_comorphism) -> LawReport:
    report = LawReport("functor-laws", cfg.seed)
    sigs = base_signatures(cfg)
    for layer in LAYERS:
        report.merge(check_functor_laws(layer, def_ext(cfg), renaming(cfg, True), sigs, cfg.samples, cfg, lift))
    return report


def _conservativity_suite(cfg: GenConfig) -> LawReport:
    report = LawReport("conservativity", cfg.seed)
    for layer in LAYERS:
        report.merge(check_lifted_conservativity(layer, def_ext(cfg), base_signatures(cfg), cfg.samples, cfg))
    return report


def _equivalence_suite(cfg: GenConfig) -> LawReport:
    report = LawReport("equivalence", cfg.seed)
    for layer in LAYERS:
        report.merge(check_lifted_equivalence(layer, renaming(cfg), base_signatures(cfg), cfg.samples, cfg))
    return report


def until_samples(cfg: GenConfig, samples: int):
    """Sampled (lasso, sentence) pairs whose sentence has a top-level U."""
    stack = LogicStack((LayerKind.TEMPORAL,))
    sub_depth = max(0, min(cfg.max_formula_depth, 4) - 1)
    for k in range(samples):
        rng = cfg.rng("until", k)
        sig = gen_signature(stack, rng, cfg, min_props=1)
        rho = Until(gen_sentence(sig, rng, cfg, rng.randint(0, sub_depth)), gen_sentence(sig, rng, cfg, rng.randint(0, sub_depth)))
        lasso = gen_model(sig, rng, cfg)
        yield lasso, rho


def x_fragment_samples(cfg: GenConfig, samples: int):
    """Sampled lassos paired with U-free sentences."""
    stack = LogicStack((LayerKind.TEMPORAL,))
    for k in range(samples):
        rng = cfg.rng("x-fragment", k)
        sig = gen_signature(stack, rng, cfg, min_props=1)
        rho = without_until(gen_sentence(sig, rng, cfg))
        n = rng.randint(1, max(cfg.max_carrier, 6))
        lasso = Lasso(tuple(gen_model(sig.inner, rng, cfg) for _ in range(n)), rng.randrange(n))
        yield lasso, rho


def _tau_suite(cfg: GenConfig) -> LawReport:
    report = LawReport("tau", cfg.seed)
    sigs = base_signatures(cfg)
    for c in (identity_comorphism("PL"), renaming(cfg), def_ext(cfg)):
        report.merge(check_naturality(c, sigs, cfg.samples, cfg))
    equiv = LawReport("tau-equivalence", cfg.seed)
    for lasso, rho in x_fragment_samples(cfg, cfg.samples):
        check_equivalence(lasso, rho, report=equiv)
    for lasso, rho in until_samples(cfg, cfg.samples):
        check_equivalence(lasso, rho, report=equiv)
    diag = equiv.diagnostics.get("until-stability")
    if diag:
        diag["stable_rate"] = diag["stable"] / diag["samples"]
        diag["agree_rate_when_stable"] = diag["stable_agree"] / diag["stable"] if diag["stable"] else None
    return report.merge(equiv)


def _institution_suite(cfg: GenConfig) -> LawReport:
    report = LawReport("institution", cfg.seed)
    for stack in INSTITUTION_STACKS:
        report.merge(check_institution(stack, cfg.samples, cfg))
    return report.merge(check_terms(cfg.samples, cfg))


_RUNNERS = {
    "institution": _institution_suite,
    "comorphism": _comorphism_suite,
    "functor-laws": _functor_suite,
    "conservativity": _conservativity_suite,
    "equivalence": _equivalence_suite,
    "tau": _tau_suite,
}


def run_suite(name: str, cfg: GenConfig = GenConfig(), lift=lift_comorphism, **overrides) -> LawReport:
    """Run one named suite, or ``all`` of them in a fixed order.

    ``overrides`` replace fields of ``cfg``; ``lift`` swaps the lifting used
    by the functor-law checks (for negative controls).
    """
    if overrides:
        cfg = replace(cfg, **overrides)
    if name not in SUITES:
        raise MalformedInput(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    report = LawReport(name, cfg.seed)
    for suite in SUITES[:-1] if name == "all" else (name,):
        report.merge(_functor_suite(cfg, lift) if suite == "functor-laws" else _RUNNERS[suite](cfg))
    return report
