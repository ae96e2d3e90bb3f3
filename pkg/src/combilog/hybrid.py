"""Hybridisation: nominals, @, modalities and nominal quantification.

Sentences are evaluated to the set of worlds where they hold (a bitmask over
``model.worlds``).  Variables bound by ``Exists`` live in an environment and
shadow nominals of the same name.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Mapping, Optional

from . import core
from .baselogic import eval_prop
from .core import LayerKind
from .errors import ContractViolation, MalformedInput
from .syntax import And, At, BaseAtom, Diamond, Exists, Nominal, Not


@dataclass(frozen=True)
class KripkeModel:
    worlds: tuple
    nominals: Mapping[str, object]
    relations: Mapping[str, frozenset]
    models: Mapping[object, object]

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(self, "nominals", dict(self.nominals))
        object.__setattr__(
            self, "relations", {lam: frozenset(tuple(p) for p in pairs) for lam, pairs in self.relations.items()}
        )
        object.__setattr__(self, "models", dict(self.models))
        ws = set(self.worlds)
        if not self.worlds or len(ws) != len(self.worlds):
            raise ContractViolation("worlds must be a non-empty list without repeats")
        for i, w in self.nominals.items():
            if w not in ws:
                raise ContractViolation(f"nominal {i!r} names unknown world {w!r}")
        for lam, pairs in self.relations.items():
            for a, b in pairs:
                if a not in ws or b not in ws:
                    raise ContractViolation(f"relation {lam!r} leaves the carrier: {(a, b)!r}")
        if set(self.models) != ws:
            raise ContractViolation("every world needs exactly one inner model")


class KripkeChecker:
    """Memoised world sets of hybrid sentences on one model."""

    def __init__(self, model: KripkeModel, inner: Optional[Callable] = None):
        self.model = model
        self.inner = inner or eval_prop
        self.index = {w: i for i, w in enumerate(model.worlds)}
        self.n = len(model.worlds)
        self.full = (1 << self.n) - 1
        self.succ: dict[str, list[int]] = {}
        for lam, pairs in model.relations.items():
            masks = [0] * self.n
            for a, b in pairs:
                masks[self.index[a]] |= 1 << self.index[b]
            self.succ[lam] = masks
        # node ids stay unique while the nodes are kept alive in _seen
        self._memo: dict = {}
        self._names: dict = {}
        self._seen: list = []

    def _world(self, name: str, env: dict) -> int:
        if name in env:
            return env[name]
        try:
            return self.index[self.model.nominals[name]]
        except KeyError:
            raise MalformedInput(f"unbound nominal or variable {name!r}") from None

    def _free(self, rho) -> tuple:
        names = self._names.get(id(rho))
        if names is None:
            names = self._names[id(rho)] = tuple(sorted(_variables(rho)))
            self._seen.append(rho)
        return names

    def extension(self, rho, env: Optional[dict] = None) -> int:
        # only the names occurring in rho can matter, so the memo ignores the rest
        if env:
            key = (id(rho), tuple((x, env[x]) for x in self._free(rho) if x in env))
        else:
            env = {}
            key = id(rho)
        m = self._memo.get(key)
        if m is not None:
            return m
        if isinstance(rho, And):
            m = self.extension(rho.left, env) & self.extension(rho.right, env)
        elif isinstance(rho, Nominal):
            m = 1 << self._world(rho.name, env)
        elif isinstance(rho, BaseAtom):
            m = 0
            for i, w in enumerate(self.model.worlds):
                if self.inner(self.model.models[w], rho.sentence):
                    m |= 1 << i
        elif isinstance(rho, Not):
            m = self.full & ~self.extension(rho.arg, env)
        elif isinstance(rho, At):
            w = self._world(rho.nominal, env)
            m = self.full if self.extension(rho.arg, env) >> w & 1 else 0
        elif isinstance(rho, Diamond):
            try:
                masks = self.succ[rho.modality]
            except KeyError:
                raise MalformedInput(f"model has no relation for modality {rho.modality!r}") from None
            target = self.extension(rho.arg, env)
            m = 0
            for i, s in enumerate(masks):
                if s & target:
                    m |= 1 << i
        elif isinstance(rho, Exists):
            m = 0
            for s in range(self.n):
                m |= self.extension(rho.arg, {**env, rho.var: s})
                if m == self.full:
                    break
        else:
            raise MalformedInput(f"not a hybrid sentence: {rho!r}")
        self._memo[key] = m
        self._seen.append(rho)
        return m

    def holds_at(self, w, rho, env: Optional[Mapping] = None) -> bool:
        if w not in self.index:
            raise ContractViolation(f"unknown world {w!r}")
        if env:
            env = {x: self.index[v] for x, v in env.items()}
        return bool(self.extension(rho, env) >> self.index[w] & 1)

    def holds_everywhere(self, rho) -> bool:
        return self.extension(rho) == self.full


def hy_eval_at(model: KripkeModel, w, rho, env: Optional[Mapping] = None, inner: Optional[Callable] = None) -> bool:
    return KripkeChecker(model, inner).holds_at(w, rho, env)


def hy_satisfies(model: KripkeModel, rho, inner: Optional[Callable] = None) -> bool:
    return KripkeChecker(model, inner).holds_everywhere(rho)


def _variables(rho) -> set[str]:
    if isinstance(rho, Nominal):
        return {rho.name}
    if isinstance(rho, At):
        return {rho.nominal} | _variables(rho.arg)
    if isinstance(rho, Exists):
        return {rho.var} | _variables(rho.arg)
    if isinstance(rho, (Not, Diamond)):
        return _variables(rho.arg)
    if isinstance(rho, And):
        return _variables(rho.left) | _variables(rho.right)
    return set()


def hybrid_sen_translate(mor, rho, base: Callable, bound: frozenset = frozenset()):
    """Rename nominals, modalities and base sentences of ``rho``.

    With ``mor=None`` only base sentences change.  Bound variables are kept,
    unless one would capture a renamed nominal, in which case it is renamed.
    """

    def nom(name):
        if name in bound or mor is None:
            return name
        try:
            return mor.nominal_map[name]
        except KeyError:
            raise MalformedInput(f"nominal {name!r} outside the morphism's domain") from None

    if isinstance(rho, Nominal):
        return Nominal(nom(rho.name))
    if isinstance(rho, BaseAtom):
        return BaseAtom(base(rho.sentence))
    if isinstance(rho, Not):
        return Not(hybrid_sen_translate(mor, rho.arg, base, bound))
    if isinstance(rho, And):
        return And(
            hybrid_sen_translate(mor, rho.left, base, bound),
            hybrid_sen_translate(mor, rho.right, base, bound),
        )
    if isinstance(rho, At):
        return At(nom(rho.nominal), hybrid_sen_translate(mor, rho.arg, base, bound))
    if isinstance(rho, Diamond):
        lam = rho.modality
        if mor is not None:
            try:
                lam = mor.modality_map[lam]
            except KeyError:
                raise MalformedInput(f"modality {lam!r} outside the morphism's domain") from None
        return Diamond(lam, hybrid_sen_translate(mor, rho.arg, base, bound))
    if isinstance(rho, Exists):
        var, body = rho.var, rho.arg
        if mor is not None and var in mor.target.nominals:
            taken = _variables(body) | set(mor.target.nominals) | bound
            k = 1
            while f"{var}_{k}" in taken:
                k += 1
            fresh = f"{var}_{k}"
            body = _rename_var(body, var, fresh)
            var = fresh
        return Exists(var, hybrid_sen_translate(mor, body, base, bound | {var}))
    raise MalformedInput(f"not a hybrid sentence: {rho!r}")


def _rename_var(rho, old: str, new: str):
    if isinstance(rho, Nominal):
        return Nominal(new) if rho.name == old else rho
    if isinstance(rho, BaseAtom):
        return rho
    if isinstance(rho, Not):
        return Not(_rename_var(rho.arg, old, new))
    if isinstance(rho, And):
        return And(_rename_var(rho.left, old, new), _rename_var(rho.right, old, new))
    if isinstance(rho, At):
        return At(new if rho.nominal == old else rho.nominal, _rename_var(rho.arg, old, new))
    if isinstance(rho, Diamond):
        return Diamond(rho.modality, _rename_var(rho.arg, old, new))
    if isinstance(rho, Exists):
        return rho if rho.var == old else Exists(rho.var, _rename_var(rho.arg, old, new))
    raise MalformedInput(f"not a hybrid sentence: {rho!r}")


def hy_reduct(mor, model: KripkeModel, base: Callable) -> KripkeModel:
    """Re-index nominals and relations along ``mor`` and map inner models by ``base``.

    ``dataclasses.replace`` keeps subclasses (and their extra fields) intact.
    """
    models = {w: base(m) for w, m in model.models.items()}
    if mor is None:
        return dataclasses.replace(model, models=models)
    try:
        nominals = {i: model.nominals[j] for i, j in mor.nominal_map.items()}
        relations = {lam: model.relations[mu] for lam, mu in mor.modality_map.items()}
    except KeyError as exc:
        raise MalformedInput(f"model lacks symbol {exc.args[0]!r} of the target signature") from None
    return dataclasses.replace(model, nominals=nominals, relations=relations, models=models)


def base_sentences(rho):
    if isinstance(rho, BaseAtom):
        yield rho.sentence
    elif isinstance(rho, (Not, At, Diamond, Exists)):
        yield from base_sentences(rho.arg)
    elif isinstance(rho, And):
        yield from base_sentences(rho.left)
        yield from base_sentences(rho.right)
    elif not isinstance(rho, Nominal):
        raise MalformedInput(f"not a hybrid sentence: {rho!r}")


def check_hybrid_sentence(sig, rho, inner: Callable, bound: frozenset = frozenset()) -> None:
    if isinstance(rho, Nominal):
        if rho.name not in sig.nominals and rho.name not in bound:
            raise MalformedInput(f"undeclared nominal {rho.name!r}")
    elif isinstance(rho, BaseAtom):
        inner(rho.sentence)
    elif isinstance(rho, Not):
        check_hybrid_sentence(sig, rho.arg, inner, bound)
    elif isinstance(rho, And):
        check_hybrid_sentence(sig, rho.left, inner, bound)
        check_hybrid_sentence(sig, rho.right, inner, bound)
    elif isinstance(rho, At):
        if rho.nominal not in sig.nominals and rho.nominal not in bound:
            raise MalformedInput(f"undeclared nominal {rho.nominal!r}")
        check_hybrid_sentence(sig, rho.arg, inner, bound)
    elif isinstance(rho, Diamond):
        if rho.modality not in sig.modalities:
            raise MalformedInput(f"undeclared modality {rho.modality!r}")
        check_hybrid_sentence(sig, rho.arg, inner, bound)
    elif isinstance(rho, Exists):
        check_hybrid_sentence(sig, rho.arg, inner, bound | {rho.var})
    else:
        raise MalformedInput(f"not a hybrid sentence: {rho!r}")


class Hybridisation(core.Combinator):
    kind = LayerKind.HYBRID

    def translate(self, mor, rho, base):
        return hybrid_sen_translate(mor, rho, base)

    def remap(self, mor, model, base):
        return hy_reduct(mor, model, base)

    def holds(self, sig, model, rho, inner):
        return hy_satisfies(model, rho, inner)

    def check_sentence(self, sig, rho, inner):
        check_hybrid_sentence(sig, rho, inner)

    def check_model(self, sig, model, inner):
        if not isinstance(model, KripkeModel):
            raise MalformedInput(f"expected a Kripke model, got {type(model).__name__}")
        if set(model.nominals) != set(sig.nominals):
            raise MalformedInput(f"model names {sorted(model.nominals)}, signature declares {sorted(sig.nominals)}")
        if set(model.relations) != set(sig.modalities):
            raise MalformedInput(
                f"model relates {sorted(model.relations)}, signature declares {sorted(sig.modalities)}"
            )
        for m in model.models.values():
            inner(m)


core.register(LayerKind.HYBRID, Hybridisation())
