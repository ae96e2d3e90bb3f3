"""Propositional base logic and two witness comorphisms on it.

``def_ext_comorphism`` adds one fresh proposition (conservative: every
valuation extends to one where the fresh symbol is false), and
``renaming_equivalence`` renames propositions along a bijection (an
equivalence, with the inverse renaming as witness).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping

from . import core
from .core import Comorphism, LogicStack, PropMorphism, PropSignature
from .errors import ContractViolation, MalformedInput, ResourceLimit
from .syntax import And, Atom, Not

DEFAULT_ENUMERATION_BOUND = 16


@dataclass(frozen=True)
class Valuation:
    true: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "true", frozenset(self.true))


def eval_prop(v: Valuation, psi, props=None) -> bool:
    """Classical truth value of ``psi`` under ``v``.

    With ``props`` given, atoms outside it are rejected.
    """
    if isinstance(psi, Atom):
        if props is not None and psi.name not in props:
            raise MalformedInput(f"undeclared proposition {psi.name!r}")
        return psi.name in v.true
    if isinstance(psi, Not):
        return not eval_prop(v, psi.arg, props)
    if isinstance(psi, And):
        return eval_prop(v, psi.left, props) and eval_prop(v, psi.right, props)
    raise MalformedInput(f"not a propositional sentence: {psi!r}")


def enumerate_models(sig: PropSignature, bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[Valuation]:
    props = sorted(sig.props)
    if len(props) > bound:
        raise ResourceLimit(f"{len(props)} propositions exceed the enumeration bound {bound}")
    for k in range(len(props) + 1):
        for chosen in combinations(props, k):
            yield Valuation(frozenset(chosen))


def atoms(psi) -> set[str]:
    if isinstance(psi, Atom):
        return {psi.name}
    if isinstance(psi, Not):
        return atoms(psi.arg)
    if isinstance(psi, And):
        return atoms(psi.left) | atoms(psi.right)
    raise MalformedInput(f"not a propositional sentence: {psi!r}")


def rename(psi, mapping: Mapping[str, str]):
    if isinstance(psi, Atom):
        try:
            return Atom(mapping[psi.name])
        except KeyError:
            raise MalformedInput(f"proposition {psi.name!r} outside the morphism's domain") from None
    if isinstance(psi, Not):
        return Not(rename(psi.arg, mapping))
    if isinstance(psi, And):
        return And(rename(psi.left, mapping), rename(psi.right, mapping))
    raise MalformedInput(f"not a propositional sentence: {psi!r}")


def semantically_equivalent(sig: PropSignature, a, b) -> bool:
    return all(eval_prop(v, a) == eval_prop(v, b) for v in enumerate_models(sig))


class PropositionalLogic:
    def translate(self, mor: PropMorphism, psi):
        return rename(psi, mor.mapping)

    def reduct(self, mor: PropMorphism, v: Valuation) -> Valuation:
        return Valuation(frozenset(p for p, q in mor.mapping.items() if q in v.true))

    def holds(self, sig, v: Valuation, psi) -> bool:
        return eval_prop(v, psi)

    def check_sentence(self, sig: PropSignature, psi) -> None:
        stray = atoms(psi) - sig.props
        if stray:
            raise MalformedInput(f"undeclared propositions {sorted(stray)}")

    def check_model(self, sig: PropSignature, v) -> None:
        if not isinstance(v, Valuation):
            raise MalformedInput(f"expected a valuation, got {type(v).__name__}")
        if not v.true <= sig.props:
            raise MalformedInput(f"valuation mentions undeclared propositions {sorted(v.true - sig.props)}")


core.register("PL", PropositionalLogic())


def _require_prop(sig) -> PropSignature:
    if not isinstance(sig, PropSignature):
        raise ContractViolation(f"expected a propositional signature, got {sig!r}")
    return sig


def def_ext_comorphism(sig: PropSignature, fresh: str) -> Comorphism:
    """Extend signatures with ``fresh``; models forget it again.

    ``sig`` is only used to validate that ``fresh`` is indeed fresh; the
    comorphism is defined on every signature not already containing it.
    """
    if fresh in _require_prop(sig).props:
        raise ContractViolation(f"{fresh!r} is already a proposition of {sorted(sig.props)}")

    def sign_map(s):
        s = _require_prop(s)
        if fresh in s.props:
            raise ContractViolation(f"{fresh!r} collides with {sorted(s.props)}")
        return PropSignature(s.props | {fresh})

    def mor_map(mor: PropMorphism):
        return PropMorphism(sign_map(mor.source), sign_map(mor.target), {**mor.mapping, fresh: fresh})

    def mod_map(s, v):
        return Valuation(v.true & s.props)

    return Comorphism(
        name=f"def_ext({fresh})",
        source=LogicStack(),
        target=LogicStack(),
        sign_map=sign_map,
        mor_map=mor_map,
        sen_map=lambda s, psi: psi,
        mod_map=mod_map,
        mod_section=lambda s, v: v,
    )


def renaming_equivalence(sig: PropSignature, bij: Mapping[str, str]) -> Comorphism:
    """Rename propositions along ``bij``, defined on subsignatures of its domain."""
    bij = dict(bij)
    if set(bij) != set(_require_prop(sig).props):
        raise ContractViolation("renaming must be total on the signature's propositions")
    inv = {q: p for p, q in bij.items()}
    if len(inv) != len(bij):
        raise ContractViolation(f"renaming {bij} is not injective")

    def sign_map(s):
        s = _require_prop(s)
        if not s.props <= bij.keys():
            raise ContractViolation(f"{sorted(s.props - bij.keys())} outside the renaming's domain")
        return PropSignature(frozenset(bij[p] for p in s.props))

    def mor_map(mor: PropMorphism):
        return PropMorphism(
            sign_map(mor.source),
            sign_map(mor.target),
            {bij[p]: bij[q] for p, q in mor.mapping.items()},
        )

    return Comorphism(
        name="rename(" + ",".join(f"{p}={q}" for p, q in sorted(bij.items())) + ")",
        source=LogicStack(),
        target=LogicStack(),
        sign_map=sign_map,
        mor_map=mor_map,
        sen_map=lambda s, psi: rename(psi, bij),
        mod_map=lambda s, v: Valuation(frozenset(inv[q] for q in v.true)),
        sen_inverse=lambda s, psi: rename(psi, inv),
        mod_inverse=lambda s, v: Valuation(frozenset(bij[p] for p in v.true)),
    )
