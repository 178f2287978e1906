"""Fixpoint approximations for strategic ability under imperfect information.

The lower bound ``tr`` and upper bound ``TR`` of an ATL_ir formula are
evaluated by :mod:`atlapprox.fixpoint` and :mod:`atlapprox.exact`; when they
agree the answer is exact without any strategy enumeration.
"""

from .errors import AtlApproxError, BudgetExceeded, FormulaError, ModelError, ParseError
from .exact import ExactEvaluator, Verdict, check_IR, check_ir, verdict
from .fixpoint import Evaluator, diamond, eval, reach, steadfast
from .icgs import (
    Model, ModelBuilder, UniformAssignment, ValidationReport, common_class,
    enumerate_assignments, epistemic_class, everybody_class, is_lockstep, validate,
)
from .logic import TR, parse, tr, tr1, tr2, tr3
from .stateset import StateSet

__all__ = [
    "AtlApproxError", "BudgetExceeded", "Evaluator", "ExactEvaluator",
    "FormulaError", "Model", "ModelBuilder", "ModelError", "ParseError",
    "StateSet", "TR", "UniformAssignment", "ValidationReport", "Verdict",
    "check_IR", "check_ir", "common_class", "diamond", "enumerate_assignments",
    "epistemic_class", "eval", "everybody_class", "is_lockstep", "parse", "reach",
    "steadfast", "tr", "tr1", "tr2", "tr3", "validate", "verdict",
]
