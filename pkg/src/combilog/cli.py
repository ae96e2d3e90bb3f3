"""Command line: check, translate, reduct and laws.

Exit codes: 0 success (SAT, or all laws hold), 1 UNSAT or a law failure,
2 usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Optional

from . import baselogic, hybrid, prob, temporal
from .baselogic import Valuation, def_ext_comorphism, renaming_equivalence
from .core import (
    LayerKind,
    LayeredSignature,
    LogicStack,
    PropSignature,
    check_model,
    check_sentence,
    identity_comorphism,
    mod_reduct,
    satisfies,
)
from .errors import CombilogError, ParseError
from .gen import GenConfig
from .hybrid import KripkeModel
from .lifting import lift_through
from .modelfile import dump_model, load_model, morphism_from_json, signature_from_json, signature_to_json
from .prob import FiniteSpace
from .props import SUITES, run_suite
from .syntax import And, At, Diamond, Exists, Nominal, Not
from .temporal import Lasso
from .text import parse_formula, show
from .transform import tau_alpha

_BASE_SENTENCES = {
    LayerKind.TEMPORAL: temporal.base_sentences,
    LayerKind.PROB: prob.base_sentences,
    LayerKind.HYBRID: hybrid.base_sentences,
}


class UsageError(CombilogError):
    pass


# signature inference


def _sentence_symbols(rho, stack: LogicStack, props: set, layers: list) -> None:
    if not stack.layers:
        props |= baselogic.atoms(rho)
        return
    if stack.outer is LayerKind.HYBRID:
        noms, mods = layers[0]
        _hybrid_symbols(rho, noms, mods, frozenset())
    for psi in _BASE_SENTENCES[stack.outer](rho):
        _sentence_symbols(psi, stack.inner, props, layers[1:])


def _hybrid_symbols(rho, noms, mods, bound) -> None:
    if isinstance(rho, Nominal) and rho.name not in bound:
        noms.add(rho.name)
    elif isinstance(rho, At):
        if rho.nominal not in bound:
            noms.add(rho.nominal)
        _hybrid_symbols(rho.arg, noms, mods, bound)
    elif isinstance(rho, Diamond):
        mods.add(rho.modality)
        _hybrid_symbols(rho.arg, noms, mods, bound)
    elif isinstance(rho, Exists):
        _hybrid_symbols(rho.arg, noms, mods, bound | {rho.var})
    elif isinstance(rho, Not):
        _hybrid_symbols(rho.arg, noms, mods, bound)
    elif isinstance(rho, And):
        _hybrid_symbols(rho.left, noms, mods, bound)
        _hybrid_symbols(rho.right, noms, mods, bound)


def _model_symbols(model, depth: int, props: set, layers: list) -> None:
    if isinstance(model, Valuation):
        props |= model.true
    elif isinstance(model, Lasso):
        for m in model.states:
            _model_symbols(m, depth + 1, props, layers)
    elif isinstance(model, FiniteSpace):
        for o in model.outcomes:
            _model_symbols(o.model, depth + 1, props, layers)
    elif isinstance(model, KripkeModel):
        noms, mods = layers[depth]
        noms |= set(model.nominals)
        mods |= set(model.relations)
        for m in model.models.values():
            _model_symbols(m, depth + 1, props, layers)


def infer_signature(stack: LogicStack, model=None, rho=None):
    """The least signature declaring every symbol used by ``model`` and ``rho``."""
    props: set = set()
    layers = [(set(), set()) for _ in stack.layers]
    if model is not None:
        _model_symbols(model, 0, props, layers)
    if rho is not None:
        _sentence_symbols(rho, stack, props, layers)
    sig = PropSignature(frozenset(props))
    for kind, (noms, mods) in reversed(list(zip(stack.layers, layers))):
        sig = LayeredSignature(kind, sig, noms, mods) if kind is LayerKind.HYBRID else LayeredSignature(kind, sig)
    return sig


# comorphism specs


_VIA = re.compile(r"lift:(identity|def_ext\((\w+)\)|rename\(([^()]*)\))")


def parse_via(via: str, stack: LogicStack):
    """``tau`` or ``lift:identity|def_ext(x)|rename(p=q,...)``, lifted through ``stack``."""
    if via == "tau":
        if not stack.layers or stack.outer is not LayerKind.TEMPORAL:
            raise UsageError(f"tau translates from a temporal logic, not {stack}")
        return None
    m = _VIA.fullmatch(via.replace(" ", ""))
    if not m:
        raise UsageError(f"unknown comorphism {via!r}; use tau, lift:identity, lift:def_ext(x) or lift:rename(p=q,...)")
    if m.group(1) == "identity":
        base = identity_comorphism(LogicStack())
    elif m.group(2):
        base = def_ext_comorphism(PropSignature(), m.group(2))
    else:
        pairs = [item.split("=") for item in m.group(3).split(",") if item]
        if not pairs or any(len(p) != 2 or not all(p) for p in pairs):
            raise UsageError(f"bad renaming {m.group(3)!r}; expected p=q,...")
        bij = dict(pairs)
        base = renaming_equivalence(PropSignature(frozenset(bij)), bij)
    return lift_through(stack, base)


# commands


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _stack(text: str) -> LogicStack:
    return LogicStack.parse(text)


def cmd_check(args) -> int:
    stack = _stack(args.logic)
    rho = parse_formula(args.formula, stack)
    model = load_model(_read(args.model), stack)
    if args.sig:
        sig = signature_from_json(json.loads(_read(args.sig)), stack)
    else:
        sig = infer_signature(stack, model, rho)
    check_model(sig, model)
    verdict = satisfies(sig, model, rho)
    print("SAT" if verdict else "UNSAT")
    return 0 if verdict else 1


def cmd_translate(args) -> int:
    stack = _stack(args.logic)
    rho = parse_formula(args.formula, stack)
    sig = infer_signature(stack, rho=rho)
    check_sentence(sig, rho)
    c = parse_via(args.via, stack)
    if c is None:
        print(show(tau_alpha(rho)))
        return 0
    c.sign_map(sig)  # rejects signatures outside the comorphism's domain
    print(show(c.sen_map(sig, rho)))
    return 0


def cmd_reduct(args) -> int:
    stack = _stack(args.logic)
    model = load_model(_read(args.model), stack)
    try:
        doc = json.loads(_read(args.morphism))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.morphism}: {exc}") from None
    source = signature_from_json(doc["source"], stack) if "source" in doc else _source_of(doc, stack)
    target = signature_from_json(doc["target"], stack) if "target" in doc else _target_of(doc, stack, model)
    check_model(target, model)
    phi = morphism_from_json(doc, source, target)
    print(dump_model(mod_reduct(phi, model)))
    return 0


def _source_of(doc, stack: LogicStack):
    layers = [
        {"nominals": sorted(layer.get("nominals", {})), "modalities": sorted(layer.get("modalities", {}))}
        for layer in doc.get("layers", [{} for _ in stack.layers])
    ]
    return signature_from_json({"props": sorted(doc.get("props", {})), "layers": layers}, stack)


def _target_of(doc, stack: LogicStack, model):
    # false propositions leave no trace in a model, so the map's values count too
    inferred = signature_to_json(infer_signature(stack, model))
    props = doc.get("props", {})
    if isinstance(props, dict):
        inferred["props"] = sorted(set(inferred["props"]) | set(props.values()))
    return signature_from_json(inferred, stack)


def cmd_laws(args) -> int:
    cfg = GenConfig(seed=args.seed, samples=args.samples)
    report = run_suite(args.suite, cfg)
    print(report.to_json() if args.json else report.to_text())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="combilog", description="Stacked temporal, probabilistic and hybrid logics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether a model satisfies a sentence")
    p.add_argument("--logic", required=True, help='stack descriptor, e.g. "H(L(PL))"')
    p.add_argument("--sig", help="signature file (inferred from model and formula if omitted)")
    p.add_argument("--model", required=True, help="model file")
    p.add_argument("--formula", required=True)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("translate", help="translate a sentence along a comorphism")
    p.add_argument("--logic", required=True)
    p.add_argument("--via", required=True, help="tau, lift:identity, lift:def_ext(x) or lift:rename(p=q,...)")
    p.add_argument("--formula", required=True)
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("reduct", help="reduce a model along a signature morphism")
    p.add_argument("--logic", required=True)
    p.add_argument("--morphism", required=True, help="morphism file")
    p.add_argument("--model", required=True, help="model file over the morphism's target")
    p.set_defaults(run=cmd_reduct)

    p = sub.add_parser("laws", help="run a law suite")
    p.add_argument("--suite", default="all", choices=SUITES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=GenConfig.samples)
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.set_defaults(run=cmd_laws)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as exc:
        print(exc.annotate(), file=sys.stderr)
    except CombilogError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (KeyError, json.JSONDecodeError) as exc:
        print(f"error: malformed input ({exc})", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
