"""The natural transformation tau from temporalisation to hybridisation.

Signatures gain the fixed hybrid layer N: the nominal ``Init`` and the
modalities ``After``, ``AfterStar`` and ``Next``.  Sentences are rooted at
``Init``; ``X`` becomes ``[Next]`` and ``U`` becomes a quantified sentence over
a fresh variable.  A lasso is represented on the hybrid side by a finite
strict-order prefix of its unfolding (:class:`NSurrogate`) whose length grows
with the temporal depth of the sentence being checked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .core import (
    Comorphism,
    LayerKind,
    LayeredMorphism,
    LayeredSignature,
    LogicStack,
    holds,
)
from .errors import ContractViolation, UnsupportedModel
from .gen import GenConfig, gen_model, gen_sentence
from .hybrid import KripkeChecker, KripkeModel
from .lifting import _compare, lift_comorphism
from .modelfile import describe
from .report import LawReport
from .syntax import (
    And,
    At,
    BaseAtom,
    Diamond,
    Exists,
    Next,
    Nominal,
    Not,
    Until,
    box,
    has_until,
    implies,
    temporal_depth,
    without_until,
)
from .temporal import Lasso, TraceChecker

INIT = "Init"
NEXT, AFTER, AFTER_STAR = "Next", "After", "AfterStar"
N_NOMINALS = frozenset({INIT})
N_MODALITIES = frozenset({AFTER, AFTER_STAR, NEXT})


def n_signature(sig: LayeredSignature) -> LayeredSignature:
    """``L(S)`` to ``H(S)`` with the N symbols."""
    if not isinstance(sig, LayeredSignature) or sig.kind is not LayerKind.TEMPORAL:
        raise ContractViolation(f"expected a temporal signature, got {sig!r}")
    return LayeredSignature(LayerKind.HYBRID, sig.inner, N_NOMINALS, N_MODALITIES)


class _Sigma:
    """One translation run: hands out x1, x2, ... in pre-order.

    ``cache`` holds translations of U-free subterms only, which do not depend
    on the counter and can therefore be shared across runs.
    """

    def __init__(self, cache: Optional[dict] = None):
        self.count = 0
        self.cache = cache

    def __call__(self, rho):
        if self.cache is not None:
            hit = self.cache.get(id(rho))
            if hit is not None and hit[0] is rho:
                return hit[1]
        before = self.count
        out = self._translate(rho)
        if self.cache is not None and self.count == before:
            self.cache[id(rho)] = (rho, out)
        return out

    def _translate(self, rho):
        if isinstance(rho, BaseAtom):
            return rho
        if isinstance(rho, Not):
            return Not(self(rho.arg))
        if isinstance(rho, And):
            return And(self(rho.left), self(rho.right))
        if isinstance(rho, Next):
            return box(NEXT, self(rho.arg))
        if isinstance(rho, Until):
            self.count += 1
            x = f"x{self.count}"
            left = self(rho.left)
            right = self(rho.right)
            return Exists(
                x,
                And(
                    Diamond(AFTER_STAR, And(Nominal(x), right)),
                    box(AFTER_STAR, implies(Diamond(AFTER, Nominal(x)), left)),
                ),
            )
        raise ContractViolation(f"not a temporal sentence: {rho!r}")


def sigma(rho, cache: Optional[dict] = None):
    """The world-local translation, without the ``@ Init`` root."""
    return _Sigma(cache)(rho)


def tau_alpha(rho, cache: Optional[dict] = None):
    return At(INIT, sigma(rho, cache))


@dataclass(frozen=True, repr=False)
class NSurrogate(KripkeModel):
    """A Kripke model over N built from a lasso, remembering where it came from."""

    length: int = 0
    loop: int = 0

    def __post_init__(self):
        super().__post_init__()
        if not 0 <= self.loop < self.length <= len(self.worlds):
            raise ContractViolation(
                f"provenance (length {self.length}, loop {self.loop}) does not fit {len(self.worlds)} worlds"
            )

    def __repr__(self) -> str:
        return f"NSurrogate(length={self.length}, loop={self.loop}, horizon={len(self.worlds)})"


def horizon(lasso: Lasso, rho) -> int:
    n, k = len(lasso.states), lasso.loop
    return n + (n - k) * (temporal_depth(rho) + 2)


def lasso_to_nsurrogate(lasso: Lasso, rho=None, horizon_: Optional[int] = None) -> NSurrogate:
    """The N-model prefix of ``lasso`` with ``horizon(lasso, rho)`` worlds.

    An explicit ``horizon_`` overrides the depth-based length.
    """
    n = len(lasso.states)
    if horizon_ is None:
        if rho is None:
            raise ContractViolation("need a sentence or an explicit horizon")
        horizon_ = horizon(lasso, rho)
    if horizon_ < n:
        raise ContractViolation(f"horizon {horizon_} shorter than the lasso ({n})")
    worlds = tuple(range(horizon_))
    return NSurrogate(
        worlds=worlds,
        nominals={INIT: 0},
        relations={
            NEXT: frozenset((a, a + 1) for a in worlds[:-1]),
            AFTER: frozenset((a, b) for a in worlds for b in worlds if a < b),
            AFTER_STAR: frozenset((a, b) for a in worlds for b in worlds if a <= b),
        },
        models={j: m for j, m in zip(worlds, lasso.unfold(horizon_))},
        length=n,
        loop=lasso.loop,
    )


def tau_beta(model) -> Lasso:
    """Recover the lasso an N-surrogate was built from."""
    if not isinstance(model, NSurrogate):
        raise UnsupportedModel(
            f"only surrogates built from a lasso can be mapped back, got {type(model).__name__}"
        )
    return Lasso(tuple(model.models[w] for w in model.worlds[: model.length]), model.loop)


def tau_comorphism(stack: LogicStack | str = LogicStack()) -> Comorphism:
    """tau at ``L(stack) -> H(stack)``; models must be N-surrogates."""
    if isinstance(stack, str):
        stack = LogicStack.parse(stack)

    def mor_map(mor):
        ident = {s: s for s in N_NOMINALS}, {s: s for s in N_MODALITIES}
        return LayeredMorphism(n_signature(mor.source), n_signature(mor.target), mor.inner, *ident)

    return Comorphism(
        name="tau",
        source=stack.push(LayerKind.TEMPORAL),
        target=stack.push(LayerKind.HYBRID),
        sign_map=n_signature,
        mor_map=mor_map,
        sen_map=lambda sig, rho: tau_alpha(rho),
        mod_map=lambda sig, model: tau_beta(model),
    )


# harnesses


def check_naturality(
    c: Comorphism,
    base_sigs: Callable[[random.Random], object],
    samples: int = 200,
    cfg: GenConfig = GenConfig(),
) -> LawReport:
    """The square tau . L(c) = H(c) . tau, on sentences and on models."""
    report = LawReport(f"tau-naturality[{c.name}]", cfg.seed)
    lifted_l = lift_comorphism(LayerKind.TEMPORAL, c)
    lifted_h = lift_comorphism(LayerKind.HYBRID, c)
    tau_src = tau_comorphism(c.source)
    tau_tgt = tau_comorphism(c.target)
    for k in range(samples):
        rng = cfg.rng("tau-naturality", c.name, k)
        tag = str(k)
        sig = LayeredSignature(LayerKind.TEMPORAL, base_sigs(rng))
        rho = gen_sentence(sig, rng, cfg)
        via_l = tau_tgt.sen_map(lifted_l.sign_map(sig), lifted_l.sen_map(sig, rho))
        via_h = lifted_h.sen_map(tau_src.sign_map(sig), tau_src.sen_map(sig, rho))
        _compare(report, "sentences", tag, via_l, via_h, signature=sig, sentence=rho)

        target = lifted_l.sign_map(sig)
        lasso = gen_model(target, rng, cfg)
        surrogate = lasso_to_nsurrogate(lasso, rho)
        back_l = lifted_l.mod_map(sig, tau_tgt.mod_map(target, surrogate))
        back_h = tau_src.mod_map(sig, lifted_h.mod_map(tau_src.sign_map(sig), surrogate))
        _compare(report, "models", tag, back_l, back_h, signature=sig, model=lasso)
        _compare(
            report, "signatures", tag,
            tau_tgt.sign_map(lifted_l.sign_map(sig)), lifted_h.sign_map(tau_src.sign_map(sig)), signature=sig,
        )
    return report


@dataclass(frozen=True)
class Verdicts:
    """Both sides of the tau equivalence for one lasso and sentence."""

    temporal: bool
    hybrid: bool
    hybrid_extended: Optional[bool] = None

    @property
    def stable(self) -> bool:
        return self.hybrid_extended is None or self.hybrid_extended == self.hybrid

    @property
    def agree(self) -> bool:
        return self.temporal == self.hybrid


def equivalence_verdicts(lasso: Lasso, rho, inner: Optional[Callable] = None, extended: Optional[bool] = None) -> Verdicts:
    """Temporal truth at 0 against hybrid truth of the translation at world 0.

    ``extended`` defaults to "only for sentences with U"; it recomputes the
    hybrid side on a surrogate longer by one loop period.
    """
    phi = sigma(rho)
    surrogate = lasso_to_nsurrogate(lasso, rho)
    hy = KripkeChecker(surrogate, inner).holds_at(0, phi)
    ltl = TraceChecker(lasso, inner).holds_at(0, rho)
    if extended is None:
        extended = has_until(rho)
    longer = None
    if extended:
        period = len(lasso.states) - lasso.loop
        bigger = lasso_to_nsurrogate(lasso, horizon_=len(surrogate.worlds) + period)
        longer = KripkeChecker(bigger, inner).holds_at(0, phi)
    return Verdicts(ltl, hy, longer)


def check_equivalence(lasso: Lasso, rho, inner: Optional[Callable] = None, report: Optional[LawReport] = None) -> LawReport:
    """Record one equivalence sample.

    Disagreement on a U-free sentence is a failure.  For sentences with U the
    result is a diagnostic: horizon instability is counted, and so is any
    disagreement between the stable hybrid verdict and the temporal one.
    """
    if report is None:
        report = LawReport("tau-equivalence")
    v = equivalence_verdicts(lasso, rho, inner)
    if not has_until(rho):
        _compare(report, "x-fragment", str(report.checks.get("x-fragment", 0)), v.temporal, v.hybrid, model=lasso, sentence=rho)
        return report
    diag = report.diagnostics.setdefault(
        "until-stability", {"samples": 0, "stable": 0, "unstable": 0, "stable_agree": 0, "stable_disagree": 0, "cases": []}
    )
    diag["samples"] += 1
    if v.stable:
        diag["stable"] += 1
        diag["stable_agree" if v.agree else "stable_disagree"] += 1
    else:
        diag["unstable"] += 1
    if not (v.stable and v.agree) and len(diag["cases"]) < 10:
        diag["cases"].append(
            {"model": describe(lasso), "sentence": describe(rho), "temporal": v.temporal, "hybrid": v.hybrid,
             "hybrid_extended": v.hybrid_extended}
        )
    return report


def check_tau_satisfaction(stack: LogicStack, base_sigs, samples: int = 200, cfg: GenConfig = GenConfig()) -> LawReport:
    """Comorphism satisfaction for tau on surrogates of sampled lassos."""
    tau = tau_comorphism(stack)
    report = LawReport("tau-satisfaction", cfg.seed)
    for k in range(samples):
        rng = cfg.rng("tau-satisfaction", k)
        sig = LayeredSignature(LayerKind.TEMPORAL, base_sigs(rng))
        rho = without_until(gen_sentence(sig, rng, cfg))
        surrogate = lasso_to_nsurrogate(gen_model(sig, rng, cfg), rho)
        _compare(
            report, "x-fragment/satisfaction", str(k),
            holds(sig, tau.mod_map(sig, surrogate), rho),
            holds(tau.sign_map(sig), surrogate, tau.sen_map(sig, rho)),
            signature=sig, sentence=rho,
        )
    return report

