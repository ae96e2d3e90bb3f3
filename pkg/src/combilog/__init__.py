"""Stackable temporal, probabilistic and hybrid combinators over propositional logic."""

from . import baselogic, hybrid, prob, temporal  # noqa: F401  (registers the layers)
from .baselogic import Valuation, def_ext_comorphism, renaming_equivalence
from .core import (
    Comorphism,
    LayerKind,
    LayeredMorphism,
    LayeredSignature,
    LogicStack,
    PropMorphism,
    PropSignature,
    compose_comorphisms,
    compose_morphisms,
    holds,
    identity_comorphism,
    identity_morphism,
    make_signature,
    mod_reduct,
    satisfies,
    sen_translate,
)
from .errors import CombilogError, ContractViolation, MalformedInput, ParseError, ResourceLimit, UnsupportedModel
from .gen import GenConfig
from .hybrid import KripkeModel
from .lifting import lift_comorphism, lift_through
from .prob import FiniteSpace, Outcome
from .props import run_suite
from .report import LawReport
from .temporal import Lasso
from .text import parse_formula, show
from .transform import NSurrogate, lasso_to_nsurrogate, tau_alpha, tau_beta, tau_comorphism

__version__ = "0.1.0"
