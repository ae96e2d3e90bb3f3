"""Temporalisation: LTL with X and U over traces of inner models.

Traces are ultimately periodic and stored as lassos: ``states[0..n-1]`` and a
loop index ``k`` such that the successor of ``n-1`` is ``k``.  Truth sets are
computed bottom-up as bitmasks over lasso positions; ``U`` is the least
fixpoint of ``b | (a & pre(U))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import core
from .baselogic import eval_prop
from .core import LayerKind
from .errors import ContractViolation, MalformedInput
from .syntax import And, BaseAtom, Next, Not, Until


@dataclass(frozen=True)
class Lasso:
    states: tuple
    loop: int = 0

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if not self.states:
            raise ContractViolation("a lasso needs at least one state")
        if not 0 <= self.loop < len(self.states):
            raise ContractViolation(f"loop index {self.loop} outside 0..{len(self.states) - 1}")

    def __len__(self) -> int:
        return len(self.states)

    def position(self, j: int) -> int:
        """Lasso index of position ``j`` of the infinite unfolding."""
        n, k = len(self.states), self.loop
        return j if j < n else k + (j - k) % (n - k)

    def unfold(self, length: int) -> list:
        return [self.states[self.position(j)] for j in range(length)]


def lasso_succ(lasso: Lasso, j: int) -> int:
    n = len(lasso.states)
    if not 0 <= j < n:
        raise ContractViolation(f"position {j} outside 0..{n - 1}")
    return j + 1 if j < n - 1 else lasso.loop


class TraceChecker:
    """Memoised truth sets of temporal sentences on one lasso.

    The memo is keyed by node identity, so sentences sharing subterms are
    evaluated once per shared node.
    """

    def __init__(self, lasso: Lasso, inner: Optional[Callable] = None):
        self.lasso = lasso
        self.inner = inner or eval_prop
        self.n = len(lasso.states)
        self.full = (1 << self.n) - 1
        self.succ = [lasso_succ(lasso, j) for j in range(self.n)]
        # node ids stay unique while the nodes are kept alive in _seen
        self._memo: dict[int, int] = {}
        self._seen: list = []

    def _pre(self, mask: int) -> int:
        # positions whose successor lies in mask
        out = 0
        for j, s in enumerate(self.succ):
            if mask >> s & 1:
                out |= 1 << j
        return out

    def mask(self, rho) -> int:
        m = self._memo.get(id(rho))
        if m is not None:
            return m
        if isinstance(rho, And):
            m = self.mask(rho.left) & self.mask(rho.right)
        elif isinstance(rho, BaseAtom):
            m = 0
            for j, state in enumerate(self.lasso.states):
                if self.inner(state, rho.sentence):
                    m |= 1 << j
        elif isinstance(rho, Not):
            m = self.full & ~self.mask(rho.arg)
        elif isinstance(rho, Next):
            m = self._pre(self.mask(rho.arg))
        elif isinstance(rho, Until):
            a, b = self.mask(rho.left), self.mask(rho.right)
            m = 0
            while True:
                nxt = b | (a & self._pre(m))
                if nxt == m:
                    break
                m = nxt
        else:
            raise MalformedInput(f"not a temporal sentence: {rho!r}")
        self._memo[id(rho)] = m
        self._seen.append(rho)
        return m

    def holds_at(self, j: int, rho) -> bool:
        if not 0 <= j < self.n:
            raise ContractViolation(f"position {j} outside 0..{self.n - 1}")
        return bool(self.mask(rho) >> j & 1)


def ltl_eval_at(lasso: Lasso, j: int, rho, inner: Optional[Callable] = None) -> bool:
    return TraceChecker(lasso, inner).holds_at(j, rho)


def ltl_satisfies(lasso: Lasso, rho, inner: Optional[Callable] = None) -> bool:
    return ltl_eval_at(lasso, 0, rho, inner)


def temporal_sen_translate(rho, base: Callable):
    """Replace every base sentence of ``rho`` by ``base(psi)``."""
    if isinstance(rho, BaseAtom):
        return BaseAtom(base(rho.sentence))
    if isinstance(rho, Not):
        return Not(temporal_sen_translate(rho.arg, base))
    if isinstance(rho, And):
        return And(temporal_sen_translate(rho.left, base), temporal_sen_translate(rho.right, base))
    if isinstance(rho, Next):
        return Next(temporal_sen_translate(rho.arg, base))
    if isinstance(rho, Until):
        return Until(temporal_sen_translate(rho.left, base), temporal_sen_translate(rho.right, base))
    raise MalformedInput(f"not a temporal sentence: {rho!r}")


def temporal_reduct(lasso: Lasso, base: Callable) -> Lasso:
    return Lasso(tuple(base(m) for m in lasso.states), lasso.loop)


def base_sentences(rho):
    if isinstance(rho, BaseAtom):
        yield rho.sentence
    elif isinstance(rho, (Not, Next)):
        yield from base_sentences(rho.arg)
    elif isinstance(rho, (And, Until)):
        yield from base_sentences(rho.left)
        yield from base_sentences(rho.right)
    else:
        raise MalformedInput(f"not a temporal sentence: {rho!r}")


class Temporalisation(core.Combinator):
    kind = LayerKind.TEMPORAL

    def translate(self, mor, rho, base):
        return temporal_sen_translate(rho, base)

    def remap(self, mor, model, base):
        return temporal_reduct(model, base)

    def holds(self, sig, model, rho, inner):
        return ltl_satisfies(model, rho, inner)

    def check_sentence(self, sig, rho, inner):
        for psi in base_sentences(rho):
            inner(psi)

    def check_model(self, sig, model, inner):
        if not isinstance(model, Lasso):
            raise MalformedInput(f"expected a lasso, got {type(model).__name__}")
        for state in model.states:
            inner(state)


core.register(LayerKind.TEMPORAL, Temporalisation())
