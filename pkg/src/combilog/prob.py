"""Probabilisation: exact-rational terms over finite probability spaces.

All arithmetic is on :class:`fractions.Fraction`, so the strict comparison in
``t < t'`` never depends on rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import core
from .baselogic import eval_prop
from .core import LayerKind
from .errors import ContractViolation, MalformedInput
from .syntax import Add, And, Const, Integral, Less, Mul, Not


@dataclass(frozen=True)
class Outcome:
    weight: Fraction
    model: object


@dataclass(frozen=True)
class FiniteSpace:
    outcomes: tuple[Outcome, ...]

    def __post_init__(self):
        outcomes = tuple(o if isinstance(o, Outcome) else Outcome(*o) for o in self.outcomes)
        for o in outcomes:
            if isinstance(o.weight, bool) or not isinstance(o.weight, (int, Fraction)):
                raise ContractViolation(f"weights must be exact rationals, got {o.weight!r}")
        outcomes = tuple(Outcome(Fraction(o.weight), o.model) for o in outcomes)
        object.__setattr__(self, "outcomes", outcomes)
        if not outcomes:
            raise ContractViolation("a probability space needs at least one outcome")
        if any(o.weight < 0 for o in outcomes):
            raise ContractViolation("negative outcome weight")
        total = sum(o.weight for o in outcomes)
        if total != 1:
            raise ContractViolation(f"outcome weights sum to {total}, not 1")

    def __len__(self) -> int:
        return len(self.outcomes)


def event_probability(space: FiniteSpace, psi, inner: Optional[Callable] = None) -> Fraction:
    inner = inner or eval_prop
    return sum((o.weight for o in space.outcomes if inner(o.model, psi)), Fraction(0))


def interp_term(space: FiniteSpace, t, inner: Optional[Callable] = None) -> Fraction:
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Integral):
        return event_probability(space, t.sentence, inner)
    if isinstance(t, Add):
        return interp_term(space, t.left, inner) + interp_term(space, t.right, inner)
    if isinstance(t, Mul):
        return interp_term(space, t.left, inner) * interp_term(space, t.right, inner)
    raise MalformedInput(f"not a term: {t!r}")


def prob_satisfies(space: FiniteSpace, rho, inner: Optional[Callable] = None) -> bool:
    if isinstance(rho, Less):
        return interp_term(space, rho.left, inner) < interp_term(space, rho.right, inner)
    if isinstance(rho, Not):
        return not prob_satisfies(space, rho.arg, inner)
    if isinstance(rho, And):
        return prob_satisfies(space, rho.left, inner) and prob_satisfies(space, rho.right, inner)
    raise MalformedInput(f"not a probabilistic sentence: {rho!r}")


def term_translate(t, base: Callable):
    if isinstance(t, Const):
        return t
    if isinstance(t, Integral):
        return Integral(base(t.sentence))
    if isinstance(t, Add):
        return Add(term_translate(t.left, base), term_translate(t.right, base))
    if isinstance(t, Mul):
        return Mul(term_translate(t.left, base), term_translate(t.right, base))
    raise MalformedInput(f"not a term: {t!r}")


def prob_sen_translate(rho, base: Callable):
    if isinstance(rho, Less):
        return Less(term_translate(rho.left, base), term_translate(rho.right, base))
    if isinstance(rho, Not):
        return Not(prob_sen_translate(rho.arg, base))
    if isinstance(rho, And):
        return And(prob_sen_translate(rho.left, base), prob_sen_translate(rho.right, base))
    raise MalformedInput(f"not a probabilistic sentence: {rho!r}")


def prob_reduct(space: FiniteSpace, base: Callable) -> FiniteSpace:
    return FiniteSpace(tuple(Outcome(o.weight, base(o.model)) for o in space.outcomes))


def _term_sentences(t):
    if isinstance(t, Integral):
        yield t.sentence
    elif isinstance(t, (Add, Mul)):
        yield from _term_sentences(t.left)
        yield from _term_sentences(t.right)
    elif not isinstance(t, Const):
        raise MalformedInput(f"not a term: {t!r}")
    elif not isinstance(t.value, Fraction):
        raise MalformedInput(f"constant {t.value!r} is not an exact rational")


def base_sentences(rho):
    if isinstance(rho, Less):
        yield from _term_sentences(rho.left)
        yield from _term_sentences(rho.right)
    elif isinstance(rho, Not):
        yield from base_sentences(rho.arg)
    elif isinstance(rho, And):
        yield from base_sentences(rho.left)
        yield from base_sentences(rho.right)
    else:
        raise MalformedInput(f"not a probabilistic sentence: {rho!r}")


class Probabilisation(core.Combinator):
    kind = LayerKind.PROB

    def translate(self, mor, rho, base):
        return prob_sen_translate(rho, base)

    def remap(self, mor, model, base):
        return prob_reduct(model, base)

    def holds(self, sig, model, rho, inner):
        return prob_satisfies(model, rho, inner)

    def check_sentence(self, sig, rho, inner):
        for psi in base_sentences(rho):
            inner(psi)

    def check_model(self, sig, model, inner):
        if not isinstance(model, FiniteSpace):
            raise MalformedInput(f"expected a finite probability space, got {type(model).__name__}")
        for o in model.outcomes:
            inner(o.model)


core.register(LayerKind.PROB, Probabilisation())
