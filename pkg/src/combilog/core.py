"""Institution kernel: layered signatures, morphisms, dispatch and comorphisms.

A logic is a :class:`LogicStack` of combinator layers over propositional logic.
Signatures and morphisms are nested the same way the stack is, so that
``sig.inner`` is always a signature of the next inner logic.  The behaviour of
each layer lives in a :class:`Combinator` registered by its module; the
functions here only recurse through the stack and hand each layer a callback
for the level beneath it.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Mapping, Optional, Union

from .errors import ContractViolation, MalformedInput


class LayerKind(str, enum.Enum):
    TEMPORAL = "L"
    PROB = "P"
    HYBRID = "H"


@dataclass(frozen=True)
class LogicStack:
    """Combinator layers, outermost first, over the propositional base."""

    layers: tuple[LayerKind, ...] = ()
    base: str = "PL"

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(LayerKind(k) for k in self.layers))
        if self.base != "PL":
            raise ContractViolation(f"unknown base logic {self.base!r}")

    def __str__(self) -> str:
        text = self.base
        for kind in reversed(self.layers):
            text = f"{kind.value}({text})"
        return text

    def __len__(self) -> int:
        return len(self.layers)

    @property
    def outer(self) -> LayerKind:
        if not self.layers:
            raise ContractViolation("the bare base logic has no outer layer")
        return self.layers[0]

    @property
    def inner(self) -> "LogicStack":
        return LogicStack(self.layers[1:], self.base)

    def push(self, kind: LayerKind) -> "LogicStack":
        return LogicStack((LayerKind(kind),) + self.layers, self.base)

    @classmethod
    def parse(cls, text: str) -> "LogicStack":
        compact = re.sub(r"\s+", "", text)
        layers = []
        while compact != "PL":
            m = re.fullmatch(r"([LPH])\((.*)\)", compact)
            if not m:
                raise MalformedInput(f"not a logic descriptor: {text!r}")
            layers.append(LayerKind(m.group(1)))
            compact = m.group(2)
        return cls(tuple(layers))


# signatures


def _symbols(values) -> frozenset[str]:
    values = tuple(values)
    if len(set(values)) != len(values):
        raise ContractViolation(f"duplicate symbols in {sorted(values)}")
    return frozenset(values)


@dataclass(frozen=True)
class PropSignature:
    props: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "props", frozenset(self.props))

    @property
    def stack(self) -> LogicStack:
        return LogicStack()

    @property
    def base(self) -> "PropSignature":
        return self


@dataclass(frozen=True)
class LayeredSignature:
    """One combinator layer on top of ``inner``.

    Temporal and probabilistic layers have the one-object signature category,
    so their nominal and modality sets are always empty.
    """

    kind: LayerKind
    inner: "Signature"
    nominals: frozenset[str] = frozenset()
    modalities: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "kind", LayerKind(self.kind))
        object.__setattr__(self, "nominals", frozenset(self.nominals))
        object.__setattr__(self, "modalities", frozenset(self.modalities))
        if self.kind is not LayerKind.HYBRID and (self.nominals or self.modalities):
            raise ContractViolation(f"{self.kind.name} layers carry no symbols")

    @property
    def stack(self) -> LogicStack:
        return self.inner.stack.push(self.kind)

    @property
    def base(self) -> PropSignature:
        return self.inner.base

    @property
    def props(self) -> frozenset[str]:
        return self.base.props


Signature = Union[PropSignature, LayeredSignature]


def make_signature(stack: LogicStack | str, props, hybrid=()) -> Signature:
    """Build a signature for ``stack``.

    ``hybrid`` lists one ``(nominals, modalities)`` pair per hybrid layer,
    outermost first.
    """
    if isinstance(stack, str):
        stack = LogicStack.parse(stack)
    hybrid = list(hybrid)
    n_hybrid = sum(1 for k in stack.layers if k is LayerKind.HYBRID)
    if len(hybrid) != n_hybrid:
        raise ContractViolation(f"{stack} needs {n_hybrid} hybrid symbol sets, got {len(hybrid)}")
    sig: Signature = PropSignature(_symbols(props))
    for kind in reversed(stack.layers):
        if kind is LayerKind.HYBRID:
            noms, mods = hybrid.pop()
            sig = LayeredSignature(kind, sig, _symbols(noms), _symbols(mods))
        else:
            sig = LayeredSignature(kind, sig)
    return sig


# morphisms


def _check_map(what: str, mapping: Mapping[str, str], source, target):
    if set(mapping) != set(source):
        missing = sorted(set(source) - set(mapping))
        extra = sorted(set(mapping) - set(source))
        raise ContractViolation(f"{what} map is not total on its source (missing {missing}, extra {extra})")
    stray = sorted(v for v in mapping.values() if v not in target)
    if stray:
        raise ContractViolation(f"{what} map hits undeclared symbols {stray}")


@dataclass(frozen=True)
class PropMorphism:
    source: PropSignature
    target: PropSignature
    mapping: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "mapping", dict(self.mapping))
        _check_map("proposition", self.mapping, self.source.props, self.target.props)


@dataclass(frozen=True)
class LayeredMorphism:
    """``inner`` maps the inner signatures; the two maps rename hybrid symbols."""

    source: LayeredSignature
    target: LayeredSignature
    inner: "Morphism"
    nominal_map: Mapping[str, str] = field(default_factory=dict)
    modality_map: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "nominal_map", dict(self.nominal_map))
        object.__setattr__(self, "modality_map", dict(self.modality_map))
        if self.source.kind is not self.target.kind:
            raise ContractViolation("morphism between signatures of different layers")
        if self.inner.source != self.source.inner or self.inner.target != self.target.inner:
            raise ContractViolation("inner morphism does not match the inner signatures")
        _check_map("nominal", self.nominal_map, self.source.nominals, self.target.nominals)
        _check_map("modality", self.modality_map, self.source.modalities, self.target.modalities)

    @property
    def kind(self) -> LayerKind:
        return self.source.kind


Morphism = Union[PropMorphism, LayeredMorphism]


def identity_morphism(sig: Signature) -> Morphism:
    if isinstance(sig, PropSignature):
        return PropMorphism(sig, sig, {p: p for p in sig.props})
    return LayeredMorphism(
        sig,
        sig,
        identity_morphism(sig.inner),
        {i: i for i in sig.nominals},
        {m: m for m in sig.modalities},
    )


def compose_morphisms(g: Morphism, f: Morphism) -> Morphism:
    """``g . f``: first ``f``, then ``g``."""
    if f.target != g.source:
        raise ContractViolation("morphisms are not composable")
    if isinstance(f, PropMorphism):
        return PropMorphism(f.source, g.target, {p: g.mapping[q] for p, q in f.mapping.items()})
    return LayeredMorphism(
        f.source,
        g.target,
        compose_morphisms(g.inner, f.inner),
        {i: g.nominal_map[j] for i, j in f.nominal_map.items()},
        {m: g.modality_map[n] for m, n in f.modality_map.items()},
    )


# layer registry


class Combinator:
    """Per-layer hooks.

    ``translate`` and ``remap`` take ``mor=None`` to mean "keep the layer's own
    symbols" and a ``base`` callback for the inner level; the same two hooks
    serve sentence translation, model reducts and comorphism lifting.
    """

    kind: LayerKind

    def translate(self, mor: Optional[LayeredMorphism], rho, base: Callable):
        raise NotImplementedError

    def remap(self, mor: Optional[LayeredMorphism], model, base: Callable):
        raise NotImplementedError

    def holds(self, sig: LayeredSignature, model, rho, inner: Callable) -> bool:
        raise NotImplementedError

    def check_sentence(self, sig: LayeredSignature, rho, inner: Callable) -> None:
        raise NotImplementedError

    def check_model(self, sig: LayeredSignature, model, inner: Callable) -> None:
        raise NotImplementedError


_COMBINATORS: dict[Any, Any] = {}


def register(key, impl) -> None:
    _COMBINATORS[key] = impl


def combinator(kind) -> Any:
    key = "PL" if kind == "PL" else LayerKind(kind)
    try:
        return _COMBINATORS[key]
    except KeyError:
        raise ContractViolation(f"no implementation registered for {kind!r}") from None


def _layer_of(sig):
    return combinator("PL" if isinstance(sig, PropSignature) else sig.kind)


def check_sentence(sig: Signature, rho) -> None:
    """Raise :class:`MalformedInput` unless ``rho`` is a sentence over ``sig``."""
    if isinstance(sig, PropSignature):
        return combinator("PL").check_sentence(sig, rho)
    return combinator(sig.kind).check_sentence(sig, rho, partial(check_sentence, sig.inner))


def check_model(sig: Signature, model) -> None:
    if isinstance(sig, PropSignature):
        return combinator("PL").check_model(sig, model)
    return combinator(sig.kind).check_model(sig, model, partial(check_model, sig.inner))


def sen_translate(phi: Morphism, rho):
    """Rename every symbol of ``rho`` along ``phi``, keeping its shape."""
    if isinstance(phi, PropMorphism):
        return combinator("PL").translate(phi, rho)
    return combinator(phi.kind).translate(phi, rho, partial(sen_translate, phi.inner))


def mod_reduct(phi: Morphism, model):
    """The reduct of a model over ``phi.target`` to ``phi.source``."""
    if isinstance(phi, PropMorphism):
        return combinator("PL").reduct(phi, model)
    return combinator(phi.kind).remap(phi, model, partial(mod_reduct, phi.inner))


def holds(sig: Signature, model, rho) -> bool:
    """Satisfaction without well-formedness checks."""
    if isinstance(sig, PropSignature):
        return combinator("PL").holds(sig, model, rho)
    return combinator(sig.kind).holds(sig, model, rho, partial(holds, sig.inner))


def satisfies(sig: Signature, model, rho, check: bool = True) -> bool:
    if check:
        check_sentence(sig, rho)
    return holds(sig, model, rho)


# comorphisms


def _same(sig, value):
    return value


@dataclass(frozen=True)
class Comorphism:
    """An executable comorphism between two stacked logics.

    ``sen_map(sig, rho)`` translates a sentence over ``sig``; ``mod_map(sig, M)``
    takes a model over ``sign_map(sig)`` back to one over ``sig``.  The optional
    witnesses are ``mod_section`` (right inverse of ``mod_map``, making it
    surjective), ``sen_inverse(sig, rho')`` and ``mod_inverse(sig, M)``.
    """

    name: str
    source: LogicStack
    target: LogicStack
    sign_map: Callable[[Signature], Signature]
    mor_map: Callable[[Morphism], Morphism]
    sen_map: Callable[[Signature, Any], Any]
    mod_map: Callable[[Signature, Any], Any]
    mod_section: Optional[Callable[[Signature, Any], Any]] = None
    sen_inverse: Optional[Callable[[Signature, Any], Any]] = None
    mod_inverse: Optional[Callable[[Signature, Any], Any]] = None

    def __repr__(self) -> str:
        return f"Comorphism({self.name}: {self.source} -> {self.target})"

    def satisfaction_holds(self, sig: Signature, model, rho) -> bool:
        """Both sides of the comorphism satisfaction condition agree."""
        lhs = holds(sig, self.mod_map(sig, model), rho)
        rhs = holds(self.sign_map(sig), model, self.sen_map(sig, rho))
        return lhs == rhs


def identity_comorphism(stack: LogicStack | str) -> Comorphism:
    if isinstance(stack, str):
        stack = LogicStack.parse(stack)
    ident = lambda x: x  # noqa: E731
    return Comorphism(
        name="identity",
        source=stack,
        target=stack,
        sign_map=ident,
        mor_map=ident,
        sen_map=_same,
        mod_map=_same,
        mod_section=_same,
        sen_inverse=_same,
        mod_inverse=_same,
    )


def compose_comorphisms(c2: Comorphism, c1: Comorphism) -> Comorphism:
    """``c2 ; c1``: translate along ``c1`` first."""
    if c1.target != c2.source:
        raise ContractViolation(f"cannot compose {c2!r} after {c1!r}")

    def sen_map(sig, rho):
        return c2.sen_map(c1.sign_map(sig), c1.sen_map(sig, rho))

    def mod_map(sig, model):
        return c1.mod_map(sig, c2.mod_map(c1.sign_map(sig), model))

    section = sen_inv = mod_inv = None
    if c1.mod_section and c2.mod_section:

        def section(sig, model):
            return c2.mod_section(c1.sign_map(sig), c1.mod_section(sig, model))

    if c1.sen_inverse and c2.sen_inverse:

        def sen_inv(sig, rho):
            return c1.sen_inverse(sig, c2.sen_inverse(c1.sign_map(sig), rho))

    if c1.mod_inverse and c2.mod_inverse:

        def mod_inv(sig, model):
            return c2.mod_inverse(c1.sign_map(sig), c1.mod_inverse(sig, model))

    return Comorphism(
        name=f"{c2.name};{c1.name}",
        source=c1.source,
        target=c2.target,
        sign_map=lambda sig: c2.sign_map(c1.sign_map(sig)),
        mor_map=lambda mor: c2.mor_map(c1.mor_map(mor)),
        sen_map=sen_map,
        mod_map=mod_map,
        mod_section=section,
        sen_inverse=sen_inv,
        mod_inverse=mod_inv,
    )
