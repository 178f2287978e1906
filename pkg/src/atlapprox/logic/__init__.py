from .formula import (
    FALSE, TRUE, And, Atom, Common, Const, Diamond, Everybody, Formula, Implies,
    Know, Mu, Not, Nu, Or, Steadfast, Strategic, Var, alpha_equal,
    check_alternation_free, free_vars, is_atl, is_positive, subformulas, to_text,
)
from .parser import parse
from .translate import TR, expand_eventually, tr, tr1, tr2, tr3

__all__ = [
    "FALSE", "TRUE", "And", "Atom", "Common", "Const", "Diamond", "Everybody",
    "Formula", "Implies", "Know", "Mu", "Not", "Nu", "Or", "Steadfast",
    "Strategic", "Var", "alpha_equal", "check_alternation_free", "free_vars",
    "is_atl", "is_positive", "subformulas", "to_text", "parse", "TR",
    "expand_eventually", "tr", "tr1", "tr2", "tr3",
]
