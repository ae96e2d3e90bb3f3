"""Sentence ASTs for the propositional base and the three combinator layers.

Nodes are immutable and compare structurally.  ``Not`` and ``And`` are shared
by every layer; which layer a node belongs to is fixed by its position in the
tree: everything below a ``BaseAtom`` (or inside an ``Integral``) belongs to the
next inner layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "Sentence"


@dataclass(frozen=True)
class And:
    left: "Sentence"
    right: "Sentence"


@dataclass(frozen=True)
class BaseAtom:
    """A sentence of the inner logic used as an atom of the outer one."""

    sentence: "Sentence"


# temporal layer


@dataclass(frozen=True)
class Next:
    arg: "Sentence"


@dataclass(frozen=True)
class Until:
    left: "Sentence"
    right: "Sentence"


# probabilistic layer


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Integral:
    sentence: "Sentence"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Less:
    left: "Term"
    right: "Term"


# hybrid layer


@dataclass(frozen=True)
class Nominal:
    name: str


@dataclass(frozen=True)
class At:
    nominal: str
    arg: "Sentence"


@dataclass(frozen=True)
class Diamond:
    modality: str
    arg: "Sentence"


@dataclass(frozen=True)
class Exists:
    var: str
    arg: "Sentence"


Term = Union[Const, Integral, Add, Mul]
Sentence = Union[Atom, Not, And, BaseAtom, Next, Until, Less, Nominal, At, Diamond, Exists]


def implies(a, b):
    return Not(And(a, Not(b)))


def disj(a, b):
    return Not(And(Not(a), Not(b)))


def box(modality: str, arg):
    return Not(Diamond(modality, Not(arg)))


def temporal_depth(rho) -> int:
    """Nesting depth of X and U in a temporal-layer sentence."""
    if isinstance(rho, BaseAtom):
        return 0
    if isinstance(rho, (Not, Next)):
        return temporal_depth(rho.arg) + (1 if isinstance(rho, Next) else 0)
    if isinstance(rho, And):
        return max(temporal_depth(rho.left), temporal_depth(rho.right))
    if isinstance(rho, Until):
        return 1 + max(temporal_depth(rho.left), temporal_depth(rho.right))
    raise TypeError(f"not a temporal sentence: {rho!r}")


def has_until(rho) -> bool:
    if isinstance(rho, Until):
        return True
    if isinstance(rho, (Not, Next)):
        return has_until(rho.arg)
    if isinstance(rho, And):
        return has_until(rho.left) or has_until(rho.right)
    return False


def without_until(rho):
    """Replace every ``a U b`` by ``a & X b``, keeping shape and depth."""
    if isinstance(rho, Until):
        return And(without_until(rho.left), Next(without_until(rho.right)))
    if isinstance(rho, Not):
        return Not(without_until(rho.arg))
    if isinstance(rho, Next):
        return Next(without_until(rho.arg))
    if isinstance(rho, And):
        return And(without_until(rho.left), without_until(rho.right))
    return rho


def size(rho) -> int:
    """Node count, descending into inner layers."""
    if isinstance(rho, (Atom, Nominal, Const)):
        return 1
    if isinstance(rho, (BaseAtom, Integral)):
        return 1 + size(rho.sentence)
    if isinstance(rho, (Not, Next, At, Diamond, Exists)):
        return 1 + size(rho.arg)
    return 1 + size(rho.left) + size(rho.right)
