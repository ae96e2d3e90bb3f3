"""JSON documents for models, signatures and morphisms.

Models are discriminated by ``"kind"``::

    {"kind": "valuation", "true": ["p"]}
    {"kind": "lasso", "states": [<model>, ...], "loop": 1}
    {"kind": "space", "outcomes": [{"weight": "1/2", "model": <model>}, ...]}
    {"kind": "kripke", "worlds": ["w0"], "nominals": {"i": "w0"},
     "relations": {"r": [["w0", "w0"]]}, "models": {"w0": <model>}}

Weights are ``"num/den"`` or decimal strings and are read exactly.
Signatures are ``{"props": [...], "layers": [{...}, ...]}`` with one entry per
layer, outermost first; hybrid entries carry ``"nominals"`` and
``"modalities"``.  Morphisms have the same shape with maps instead of lists.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .baselogic import Valuation
from .core import (
    LayerKind,
    LayeredMorphism,
    LayeredSignature,
    LogicStack,
    PropMorphism,
    PropSignature,
    Signature,
    check_model,
)
from .errors import ContractViolation, MalformedInput
from .hybrid import KripkeModel
from .prob import FiniteSpace, Outcome
from .temporal import Lasso
from .text import format_number, parse_number, show, show_term

KINDS = {LayerKind.TEMPORAL: "lasso", LayerKind.PROB: "space", LayerKind.HYBRID: "kripke"}


def _require(doc, key, path):
    if not isinstance(doc, dict) or key not in doc:
        raise MalformedInput(f"{path}: missing field {key!r}")
    return doc[key]


def _weight(value, path) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise MalformedInput(f"{path}: weights must be 'num/den' or decimal strings, got {value!r}")
    try:
        return parse_number(str(value).strip())
    except (ValueError, ZeroDivisionError, ArithmeticError):
        raise MalformedInput(f"{path}: bad weight {value!r}") from None


def model_from_json(doc: Any, stack: LogicStack, path: str = "$"):
    """Build a model for ``stack`` from a parsed JSON document."""
    kind = _require(doc, "kind", path)
    expected = KINDS[stack.outer] if stack.layers else "valuation"
    if kind != expected:
        raise MalformedInput(f"{path}: expected a {expected!r} model for {stack}, got {kind!r}")
    try:
        if kind == "valuation":
            true = _require(doc, "true", path)
            if not isinstance(true, list) or not all(isinstance(p, str) for p in true):
                raise MalformedInput(f"{path}.true: expected a list of identifiers")
            return Valuation(frozenset(true))
        if kind == "lasso":
            states = _require(doc, "states", path)
            loop = _require(doc, "loop", path)
            if not isinstance(states, list) or isinstance(loop, bool) or not isinstance(loop, int):
                raise MalformedInput(f"{path}: lasso needs a list of states and an integer loop")
            return Lasso(
                tuple(model_from_json(s, stack.inner, f"{path}.states[{k}]") for k, s in enumerate(states)),
                loop,
            )
        if kind == "space":
            outcomes = _require(doc, "outcomes", path)
            if not isinstance(outcomes, list):
                raise MalformedInput(f"{path}.outcomes: expected a list")
            return FiniteSpace(
                tuple(
                    Outcome(
                        _weight(_require(o, "weight", f"{path}.outcomes[{k}]"), f"{path}.outcomes[{k}]"),
                        model_from_json(_require(o, "model", f"{path}.outcomes[{k}]"), stack.inner, f"{path}.outcomes[{k}].model"),
                    )
                    for k, o in enumerate(outcomes)
                )
            )
        worlds = _require(doc, "worlds", path)
        relations = _require(doc, "relations", path)
        models = _require(doc, "models", path)
        fields = dict(
            worlds=tuple(worlds),
            nominals=dict(_require(doc, "nominals", path)),
            relations={lam: frozenset(tuple(p) for p in pairs) for lam, pairs in relations.items()},
            models={w: model_from_json(m, stack.inner, f"{path}.models.{w}") for w, m in models.items()},
        )
        if "unfolds" in doc:
            from .transform import NSurrogate

            return NSurrogate(**fields, length=doc["unfolds"]["length"], loop=doc["unfolds"]["loop"])
        return KripkeModel(**fields)
    except ContractViolation as exc:
        raise MalformedInput(f"{path}: {exc}") from None
    except (TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"{path}: malformed {kind} model ({exc})") from None


def model_to_json(model) -> dict:
    if isinstance(model, Valuation):
        return {"kind": "valuation", "true": sorted(model.true)}
    if isinstance(model, Lasso):
        return {"kind": "lasso", "states": [model_to_json(s) for s in model.states], "loop": model.loop}
    if isinstance(model, FiniteSpace):
        return {
            "kind": "space",
            "outcomes": [{"weight": _weight_text(o.weight), "model": model_to_json(o.model)} for o in model.outcomes],
        }
    if isinstance(model, KripkeModel):
        doc = {
            "kind": "kripke",
            "worlds": [str(w) for w in model.worlds],
            "nominals": {i: str(w) for i, w in sorted(model.nominals.items())},
            "relations": {
                lam: sorted([str(a), str(b)] for a, b in pairs) for lam, pairs in sorted(model.relations.items())
            },
            "models": {str(w): model_to_json(model.models[w]) for w in model.worlds},
        }
        if hasattr(model, "length"):
            doc["unfolds"] = {"length": model.length, "loop": model.loop}
        return doc
    raise TypeError(f"cannot serialise {type(model).__name__}")


def _weight_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def dump_model(model) -> str:
    return json.dumps(model_to_json(model), indent=2, sort_keys=True)


def load_model(text: str, stack: LogicStack, sig: Optional[Signature] = None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    model = model_from_json(doc, stack)
    if sig is not None:
        check_model(sig, model)
    return model


# signatures and morphisms


def signature_from_json(doc: Any, stack: LogicStack) -> Signature:
    props = _require(doc, "props", "$")
    layers = doc.get("layers", [{} for _ in stack.layers])
    if len(layers) != len(stack.layers):
        raise MalformedInput(f"signature lists {len(layers)} layers, {stack} has {len(stack.layers)}")
    try:
        sig: Signature = PropSignature(frozenset(props))
        for kind, layer in reversed(list(zip(stack.layers, layers))):
            sig = LayeredSignature(kind, sig, frozenset(layer.get("nominals", ())), frozenset(layer.get("modalities", ())))
    except ContractViolation as exc:
        raise MalformedInput(str(exc)) from None
    return sig


def signature_to_json(sig: Signature) -> dict:
    layers = []
    while isinstance(sig, LayeredSignature):
        if sig.kind is LayerKind.HYBRID:
            layers.append({"nominals": sorted(sig.nominals), "modalities": sorted(sig.modalities)})
        else:
            layers.append({})
        sig = sig.inner
    return {"props": sorted(sig.props), "layers": layers}


def morphism_from_json(doc: Any, source: Signature, target: Signature):
    """Maps: ``{"props": {...}, "layers": [{"nominals": {...}, "modalities": {...}}, ...]}``."""
    layer_maps = list(doc.get("layers", []))
    depth = len(source.stack.layers)
    layer_maps += [{}] * (depth - len(layer_maps))
    try:
        return _morphism(doc, layer_maps, source, target)
    except ContractViolation as exc:
        raise MalformedInput(str(exc)) from None


def _morphism(doc, layer_maps, source, target):
    if isinstance(source, PropSignature):
        return PropMorphism(source, target, dict(doc.get("props", {})))
    here, rest = layer_maps[0], layer_maps[1:]
    return LayeredMorphism(
        source,
        target,
        _morphism(doc, rest, source.inner, target.inner),
        dict(here.get("nominals", {})),
        dict(here.get("modalities", {})),
    )


def morphism_to_json(mor) -> dict:
    layers = []
    while isinstance(mor, LayeredMorphism):
        if mor.kind is LayerKind.HYBRID:
            layers.append({"nominals": dict(sorted(mor.nominal_map.items())), "modalities": dict(sorted(mor.modality_map.items()))})
        else:
            layers.append({})
        mor = mor.inner
    return {"props": dict(sorted(mor.mapping.items())), "layers": layers}


def describe(value) -> Any:
    """A JSON-friendly rendering used in counterexample reports."""
    if isinstance(value, (PropSignature, LayeredSignature)):
        return signature_to_json(value)
    if isinstance(value, (PropMorphism, LayeredMorphism)):
        return {"source": signature_to_json(value.source), "target": signature_to_json(value.target), **morphism_to_json(value)}
    if isinstance(value, (Valuation, Lasso, FiniteSpace, KripkeModel)):
        return model_to_json(value)
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_number(value)
    try:
        return show(value)
    except TypeError:
        return show_term(value)
