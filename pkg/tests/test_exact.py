import itertools

import pytest

from atlapprox.bench import gen_voting, m1, m2, m3, m_vote
from atlapprox.errors import BudgetExceeded, FormulaError
from atlapprox.exact import ExactEvaluator, check_IR, check_ir, verdict
from atlapprox.fixpoint import Evaluator, eval
from atlapprox.icgs import Model
from atlapprox.logic import parse, tr2
from atlapprox.logic.formula import Atom, Not, Strategic
from atlapprox.bench.voting import phi1, phi2

from conftest import naive_ir


def perfect_copy(model):
    """The same game with every agent seeing the full state."""
    singletons = [[1 << q for q in range(model.n)] for _ in model.agents]
    return Model(model.agents, model.states, model.actions, model.labels, model.protocol,
                 model.transitions, singletons)


def flat_parts(f):
    if isinstance(f, Not):
        f = f.arg
    return f


def test_vote_examples():
    m = m_vote()
    q0 = m.state_id("q0")
    assert q0 in check_ir(m, parse("<<c>> F (!pun -> vote1)"))
    assert q0 not in check_ir(m, parse("<<v>> G (!pun & !vote1)"))
    ir = check_ir(m, parse("<<c>> F (!pun -> vote1)"))
    IR = check_IR(m, parse("<<c>>_IR F (!pun -> vote1)"))
    assert ir <= IR


def test_m1_needs_perfect_information():
    m = m1()
    q0 = m.state_id("q0")
    assert q0 not in check_ir(m, parse("<<1,2>> F p"))
    assert q0 in check_IR(m, parse("E {1,2} <<1,2>>_IR F p"))
    assert check_IR(m, parse("<<1,2>>_IR F true")).bits == m.all_bits


def test_modalities_of_the_wrong_kind_are_rejected():
    with pytest.raises(FormulaError):
        check_ir(m2(), parse("<<1>>_IR F p"))
    with pytest.raises(FormulaError):
        check_IR(m2(), parse("<<1>> F p"))
    with pytest.raises(ValueError):
        ExactEvaluator(m2(), semantics="telepathic")


def test_budget_is_reported():
    m = gen_voting(2)
    with pytest.raises(BudgetExceeded, match="budget 5"):
        check_ir(m, phi2(1), budget=5)


def test_nested_strategic_formula_bottom_up():
    m = m2()
    inner = check_ir(m, parse("<<1>> X p"))
    outer = check_ir(m, parse("<<1>> F <<1>> X p"))
    assert inner <= outer
    assert set(m.names(check_ir(m, parse("<<1>> X p"), semantics="objective"))) == {"q0", "q2"}


# ------------------------------------------------------------- verdicts


def test_verdict_examples():
    m = gen_voting(1)
    q = m.states[0]
    v = verdict(m, q, phi1(1))
    assert v.lower and v.value is True and v.label == "True"
    v = verdict(m, q, phi2(1), exact=True)
    assert not v.upper and v.value is False and v.exact is False
    v = verdict(m3(), "q0", parse("<<1>> F p"), exact=True)
    assert (v.lower, v.upper, v.exact) == (False, True, True)
    assert v.value is None and v.label == "Unknown" and not v.conclusive
    assert set(v.timings) == {"lower", "upper", "exact"}


# --------------------------------------------------------- oracle checks


def test_check_ir_matches_full_enumeration(small_corpus):
    for case in small_corpus:
        m = case.model
        for f in case.formulas:
            f = flat_parts(f)
            goal = Evaluator(m).eval(f.goal).bits
            hold = Evaluator(m).eval(f.hold).bits if f.temporal == "U" else m.all_bits
            kind = "U" if f.temporal in ("U", "F") else f.temporal
            for objective in (False, True):
                expected = naive_ir(m, f.coalition, kind, goal, hold, objective)
                got = check_ir(m, f, "objective" if objective else "subjective")
                assert got == expected, (case.seed, str(f), objective)


def test_subjective_within_objective_within_perfect(corpus):
    for case in corpus[:250]:
        m = case.model
        perfect = perfect_copy(m)
        for f in case.formulas:
            f = flat_parts(f)
            subj = check_ir(m, f)
            obj = check_ir(m, f, "objective")
            ir_f = Strategic(f.coalition, f.temporal, f.goal, f.hold, "IR")
            IR = check_IR(m, ir_f)
            assert subj <= obj <= IR
            # with full observation the memoryless search and the fixpoint coincide
            assert check_ir(perfect, f, "objective") == check_IR(perfect, ir_f)


def test_empty_coalition_reachability(corpus):
    for case in corpus[:200]:
        m = case.model
        for atom in ("p", "q"):
            f = Strategic((), "F", Atom(atom))
            assert eval(m, tr2([], Atom(atom))) == check_ir(m, f)


def test_singleton_tr2_is_sound(corpus):
    for case in corpus[:200]:
        m = case.model
        for a, atom in itertools.product(m.agents, ("p", "q")):
            lower = eval(m, tr2([a], Atom(atom)))
            assert lower <= check_ir(m, Strategic((a,), "F", Atom(atom)))
