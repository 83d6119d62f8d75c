import hypothesis as hyp
import pytest
from hypothesis import strategies as st

from gradia.exceptions import ParseError
from gradia.lattice import irrelevance, low_medium_high
from gradia.syntax.context import EMPTY
from gradia.syntax.parser import fragment_for, parse, parse_program
from gradia.syntax.printer import print_term
from gradia.syntax.terms import (
    Ann,
    App,
    Arrow,
    Bind,
    GApp,
    GLam,
    Inj1,
    Inj2,
    Lam,
    LetPair,
    Pair,
    Pi,
    Prod,
    Proj1,
    Proj2,
    Return,
    Sort,
    Sum,
    TMonad,
    UnitTm,
    UnitTy,
    Var,
    free_vars,
    get_at,
    positions,
    replace_at,
    shift,
    size,
    subst,
)

LMH = low_medium_high()
LI = irrelevance()
SCOPE = ("a", "b")

grades = st.sampled_from(list(LMH))

simple_types = st.recursive(
    st.just(UnitTy()),
    lambda ts: st.one_of(
        st.builds(Arrow, ts, ts),
        st.builds(Prod, ts, ts),
        st.builds(Sum, ts, ts),
        st.builds(TMonad, grades, ts),
    ),
    max_leaves=4,
)


@st.composite
def sdc_terms(draw, depth: int = len(SCOPE), fuel: int = 4):
    """Well-scoped SDC terms over ``depth`` variables."""
    leaves = [st.just(UnitTm())]
    if depth:
        leaves.append(st.integers(0, depth - 1).map(Var))
    if fuel <= 0:
        return draw(st.one_of(leaves))
    sub = sdc_terms(depth, fuel - 1)
    under = sdc_terms(depth + 1, fuel - 1)
    return draw(
        st.one_of(
            *leaves,
            st.builds(Lam, simple_types, under),
            st.builds(App, sub, sub),
            st.builds(Pair, sub, sub),
            st.builds(Proj1, sub),
            st.builds(Proj2, sub),
            st.builds(Inj1, sub),
            st.builds(Inj2, sub),
            st.builds(Return, grades, sub),
            st.builds(Bind, grades, sub, under),
            st.builds(Ann, sub, simple_types),
        )
    )


# de Bruijn laws


@hyp.given(sdc_terms())
def test_shift_by_zero_is_identity(t):
    assert shift(t, 0) == t


@hyp.given(sdc_terms())
def test_shift_up_then_down(t):
    assert shift(shift(t, 1), -1) == t


@hyp.given(sdc_terms(), sdc_terms())
def test_substituting_into_a_weakened_term(t, arg):
    assert subst(shift(t, 1), arg) == t


@hyp.given(sdc_terms())
def test_shift_moves_free_variables(t):
    assert free_vars(shift(t, 2)) == frozenset(i + 2 for i in free_vars(t))


@hyp.given(sdc_terms())
def test_replace_at_own_subterm_is_identity(t):
    for path, node, _ in positions(t):
        assert get_at(t, path) == node
        assert replace_at(t, path, node) == t


def test_subst_under_binder():
    body = Lam(UnitTy(), App(Var(0), Var(1)))
    assert subst(body, Var(3)) == Lam(UnitTy(), App(Var(0), Var(4)))


def test_size_counts_nodes():
    assert size(App(Var(0), Pair(UnitTm(), UnitTm()))) == 4


# Printing and parsing


@hyp.given(sdc_terms())
def test_print_then_parse(t):
    text = print_term(t, SCOPE)
    assert parse(text, LMH, "sdc", names=SCOPE) == t


@hyp.given(simple_types)
def test_types_print_then_parse(ty):
    assert parse(print_term(ty), LMH, "sdc") == ty


def test_names_do_not_matter():
    assert parse("\\x:Unit. x", LMH, "sdc") == parse("\\y:Unit. y", LMH, "sdc")


def test_shadowing_picks_innermost():
    t = parse("\\x:Unit. \\x:Unit. x", LMH, "sdc")
    assert t == Lam(UnitTy(), Lam(UnitTy(), Var(0)))


def test_printer_renames_clashing_binders():
    t = Lam(UnitTy(), App(Var(0), Var(1)), "a")
    assert print_term(t, ("a",)) == "\\a1:Unit. a1 a"


def test_dependent_forms():
    t = parse("\\A:^top Type. \\y:^bot A. y", LI)
    assert t == GLam(LI.top, Sort("Type"), GLam(LI.bot, Var(0), Var(0)))
    assert parse("f unit^C", LI, names=("f",)) == GApp(Var(0), UnitTm(), LI.c)


def test_dependent_arrow_is_a_bottom_pi():
    assert parse("Unit -> Unit", LI) == Pi(LI.bot, UnitTy(), UnitTy(), "_")


def test_projection_desugars_to_letpair():
    t = parse("pi1^C p", LI, names=("p",))
    assert t == LetPair(LI.c, Var(0), Var(1))


def test_program_with_assumptions():
    program = parse_program("assume x :^H Unit; assume f :^L Unit -> Unit; f x", LMH, "sdc")
    assert program.context.names() == ("x", "f")
    assert program.context.lookup(1).grade == LMH.grade("H")
    assert program.term == App(Var(0), Var(1))


def test_program_without_assumptions():
    program = parse_program("unit", LMH, "sdc")
    assert program.context == EMPTY


@pytest.mark.parametrize(
    "source, code",
    [
        ("\\x:Unit.", "Syntax"),
        ("(unit", "Syntax"),
        ("y", "UnboundVariable"),
        ("eta^Q unit", "UnknownGrade"),
        ("\\x:^H Unit. x", "Syntax"),
        ("f unit^H", "Syntax"),
    ],
)
def test_parse_errors(source, code):
    with pytest.raises(ParseError) as e:
        parse(source, LMH, "sdc", names=("f",))
    assert e.value.code == code
    assert e.value.exit_code == 2


def test_unknown_grade_reports_position():
    with pytest.raises(ParseError) as e:
        parse("\n  eta^Q unit", LMH, "sdc")
    assert e.value.line == 2


def test_fragment_from_extension(tmp_path):
    assert fragment_for(tmp_path / "a.seal") == "seal"
    assert fragment_for(tmp_path / "a.sdc") == "sdc"
    assert fragment_for(tmp_path / "a.ddc") == "ddc"
    assert fragment_for(tmp_path / "a.ddc", "sdc") == "sdc"
