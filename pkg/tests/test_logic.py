import pytest
from hypothesis import given, settings, strategies as st

from atlapprox.errors import FormulaError, ParseError
from atlapprox.logic import (
    FALSE, TRUE, TR, alpha_equal, check_alternation_free, expand_eventually,
    free_vars, is_atl, is_positive, parse, to_text, tr, tr1, tr2, tr3,
)
from atlapprox.logic.formula import (
    And, Atom, Common, Diamond, Everybody, Implies, Know, Mu, Not, Nu, Or,
    Steadfast, Strategic, Var,
)

VARS = ("Y", "Z")
agents = st.sampled_from(["1", "2", "a"])
coalitions = st.lists(agents, max_size=2).map(tuple)


def _extend(children):
    return st.one_of(
        children.map(Not),
        st.tuples(children, children).map(lambda t: And(*t)),
        st.tuples(children, children).map(lambda t: Or(*t)),
        st.tuples(children, children).map(lambda t: Implies(*t)),
        st.tuples(agents, children).map(lambda t: Know(*t)),
        st.tuples(coalitions, children).map(lambda t: Everybody(*t)),
        st.tuples(coalitions, children).map(lambda t: Common(*t)),
        st.tuples(coalitions, children).map(lambda t: Diamond(*t)),
        st.tuples(coalitions, children, st.sampled_from("CE")).map(lambda t: Steadfast(*t)),
        st.tuples(st.sampled_from(VARS), children).map(lambda t: Mu(*t)),
        st.tuples(st.sampled_from(VARS), children).map(lambda t: Nu(*t)),
        st.tuples(coalitions, st.sampled_from("XGF"), children, st.sampled_from(["ir", "IR"]))
        .map(lambda t: Strategic(t[0], t[1], t[2], semantics=t[3])),
        st.tuples(coalitions, children, children, st.sampled_from(["ir", "IR"]))
        .map(lambda t: Strategic(t[0], "U", t[1], t[2], t[3])),
    )


formulas = st.recursive(
    st.one_of(st.sampled_from([TRUE, FALSE]), st.sampled_from("pqr").map(Atom),
              st.sampled_from(VARS).map(Var)),
    _extend,
    max_leaves=12,
)


@settings(max_examples=300)
@given(formulas)
def test_print_parse_round_trip(f):
    text = to_text(f)
    assert parse(text, free_vars=VARS) == f
    assert to_text(parse(text, free_vars=VARS)) == text


def test_parse_examples():
    f = parse("<<c>> G ((finish1 & !pun1) -> vote1_1)")
    assert f == Strategic(("c",), "G", Implies(And(Atom("finish1"), Not(Atom("pun1"))), Atom("vote1_1")))
    assert parse("p") == Atom("p")
    g = parse("mu Z . (K 1 p | <1>* Z)")
    assert g == Mu("Z", Or(Know("1", Atom("p")), Steadfast(("1",), Var("Z"), "C")))
    assert parse(to_text(g)) == g


def test_precedence_and_associativity():
    assert parse("!p & q | r -> p -> q") == Implies(
        Or(And(Not(Atom("p")), Atom("q")), Atom("r")), Implies(Atom("p"), Atom("q")))
    assert parse("p & q & r") == And(And(Atom("p"), Atom("q")), Atom("r"))
    assert parse("K 1 p & q") == And(Know("1", Atom("p")), Atom("q"))


def test_strategic_syntax():
    assert parse("<<1,2>>_IR F p").semantics == "IR"
    assert parse("<<2,1>> X p").coalition == ("1", "2")
    assert parse("<<>> (p U q)") == Strategic((), "U", Atom("q"), Atom("p"))
    assert parse("<<1>> p U q") == Strategic(("1",), "U", Atom("q"), Atom("p"))
    assert parse("E {1,2} p") == Everybody(("1", "2"), Atom("p"))
    assert parse("<1>~ p") == Steadfast(("1",), Atom("p"), "E")


@pytest.mark.parametrize("text,line,column", [
    ("p &", 1, 4),
    ("(p | q", 1, 7),
    ("p\n  & & q", 2, 5),
    ("<<1>> Y p", 1, 9),
    ("mu X . p", 1, 4),
    ("p q", 1, 3),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_unknown_agents_are_accepted_by_the_parser():
    assert parse("<<nobody>> F p").coalition == ("nobody",)


def test_alternation_free():
    assert check_alternation_free(parse("mu Z . (p | <1> Z)"))
    assert not check_alternation_free(parse("mu Z . nu Y . (Z & Y)"))
    # Y is bound by the outer nu and used inside the inner mu: alternation
    assert not check_alternation_free(parse("nu Y . mu Z . (p & Y | <1> Z)"))
    # nesting without crossing references is fine
    assert check_alternation_free(parse("nu Y . (mu Z . (p | <1> Z) & <1> Y)"))
    # negation flips the kind: mu under a negation behaves as nu
    assert not check_alternation_free(parse("mu Z . !mu Y . (!Z | Y)"))
    assert check_alternation_free(parse("mu Z . !nu Y . (!Z & Y)"))


def test_positivity():
    assert is_positive(parse("mu Z . (p | <1> Z)"))
    assert not is_positive(parse("mu Z . (p | !Z)"))
    assert not is_positive(parse("mu Z . (Z -> p)"))
    assert is_positive(parse("mu Z . !!Z"))
    assert is_positive(parse("mu Z . (!Z -> p)"))


def test_free_vars_and_is_atl():
    assert free_vars(parse("mu Z . (Y | Z)", free_vars=["Y"])) == {"Y"}
    assert is_atl(parse("<<1>> F K 1 p"))
    assert not is_atl(parse("<<1>>_IR F p"))
    assert is_atl(parse("<<1>>_IR F p"), "IR")
    assert not is_atl(parse("<1> p"))


def test_reachability_translations():
    p = Atom("p")
    assert alpha_equal(tr1(["1"], p), parse("mu Z . (p | <1> Z)"))
    assert alpha_equal(tr2(["a"], p), parse("mu Z . (K a p | <a> Z)"))
    assert alpha_equal(tr2([], p), parse("mu Z . (E {} p | <> Z)"))
    assert alpha_equal(tr3(["1"], p), parse("mu Z . (K 1 p | <1>* Z)"))
    assert alpha_equal(tr3(["1", "2"], p), parse("mu Z . (E {1,2} p | <1,2>* Z)"))
    # tr1 leaves a nested goal alone
    goal = parse("<<1>> F q")
    assert tr1(["1"], goal).body.left == goal


def test_translations_are_alpha_stable_and_fresh():
    goal = parse("Z0 & Z1")
    for make in (tr1, tr2, tr3):
        a, b = make(["1"], goal), make(["1"], goal)
        assert alpha_equal(a, b)
        assert a.var not in ("Z0", "Z1")
    assert not alpha_equal(tr2(["1"], Atom("p")), tr3(["1"], Atom("p")))


def test_alpha_equal_respects_binding():
    assert alpha_equal(parse("mu X1 . (p | <1> X1)"), parse("mu Z . (p | <1> Z)"))
    assert not alpha_equal(parse("mu Y . mu Z . (Y | Z)"), parse("mu Y . mu Z . (Z | Y)"))
    assert not alpha_equal(parse("mu Z . Y", free_vars=["Y"]), parse("mu Z . Z"))


def test_tr_and_TR_base_cases():
    p = Atom("p")
    assert tr(p) == p and TR(p) == p
    assert tr(TRUE) == TRUE


def test_tr_table():
    f = parse("<<c>> G ((finish & !pun) -> vote)")
    assert alpha_equal(tr(f), parse("nu Z . (C {c} ((finish & !pun) -> vote) & <c>* Z)"))
    assert alpha_equal(tr(parse("<<1>> X p")), parse("<1> p"))
    assert alpha_equal(tr(parse("<<1>> (q U p)")),
                       parse("mu Z . (E {1} p | C {1} q & <1>* Z)"))
    assert TR(parse("<<1>> (q U p)")) == parse("E {1} <<1>>_IR (q U p)")
    assert TR(parse("<<1,2>> G p")) == parse("E {1,2} <<1,2>>_IR G p")
    assert TR(parse("<<1>> X p")) == parse("E {1} <<1>>_IR X p")


def test_negation_unfolding():
    got = TR(parse("!<<v>> F x"))
    assert alpha_equal(got, parse("!mu Z . (E {v} x | C {v} true & <v>* Z)"))


def test_eventually_expansion():
    assert expand_eventually(parse("<<1>> F <<2>> F p")) == parse("<<1>> (true U <<2>> (true U p))")


@settings(max_examples=200)
@given(formulas)
def test_translation_invariants(f):
    if not is_atl(f):
        with pytest.raises(FormulaError):
            tr(f)
        return
    lo, up = tr(f), TR(f)
    for g in (lo, up):
        assert check_alternation_free(g)
        assert is_positive(g)
        assert not free_vars(g)
    if isinstance(f, Not):
        assert alpha_equal(lo, Not(TR(f.arg)))
        assert alpha_equal(up, Not(tr(f.arg)))


def test_non_atl_input_rejected():
    for text in ("mu Z . (p | <1> Z)", "<<1>>_IR F p", "<1> p", "<1>* p"):
        with pytest.raises(FormulaError):
            tr(parse(text))
        with pytest.raises(FormulaError):
            TR(parse(text))


def test_strategic_node_validation():
    with pytest.raises(FormulaError):
        Strategic(("1",), "U", Atom("p"))
    with pytest.raises(FormulaError):
        Strategic(("1",), "W", Atom("p"))
    with pytest.raises(FormulaError):
        Steadfast(("1",), Atom("p"), "D")
