import threading

import pytest

from gradia.equality.joinability import consistent, def_eq
from gradia.equality.parallel import par_star, par_step, parallel_reducts
from gradia.equality.schemas import Verdict
from gradia.exceptions import Cancelled
from gradia.lattice import irrelevance
from gradia.syntax.context import EMPTY, EMPTY_GRADES
from gradia.syntax.parser import parse
from gradia.syntax.terms import Pi, Sigma, Sort, UnitTm, UnitTy, Var

LI = irrelevance()
BOT, C, TOP = LI.bot, LI.c, LI.top
PHI_F = EMPTY.extend("f", BOT, UnitTy()).grades()

# grows by one application every round
GROWING = "(\\x:^bot Unit. x x x) (\\x:^bot Unit. x x x)"


def term(source: str, names=()):
    return parse(source, LI, names=names)


# Joinability


def test_reflexive_terms_are_equal_without_steps():
    a = term("\\x:^bot Unit. x")
    result = def_eq(LI, EMPTY_GRADES, a, a, C)
    assert result.verdict is Verdict.EQUAL
    assert result.steps_used == 0
    assert result.witnesses == (a, a)


def test_redex_joins_its_reduct():
    result = def_eq(LI, EMPTY_GRADES, term("(\\x:^bot Unit. x) unit"), UnitTm(), C)
    assert result.equal
    assert result.steps_used == 1


def test_both_sides_reduce():
    left = term("(\\x:^bot Unit. (x^C, x)) unit")
    right = term("(\\y:^C Unit. (unit^C, y)) unit^C")
    assert def_eq(LI, EMPTY_GRADES, left, right, C).equal


def test_phantom_arguments_depend_on_the_level():
    one = term("f (inj1 unit : Unit + Unit)^top", ("f",))
    two = term("f (inj2 unit : Unit + Unit)^top", ("f",))
    assert def_eq(LI, PHI_F, one, two, C).verdict is Verdict.EQUAL
    assert def_eq(LI, PHI_F, one, two, TOP).verdict is Verdict.NOT_EQUAL


def test_different_normal_forms():
    result = def_eq(LI, EMPTY_GRADES, term("Unit + Unit"), UnitTy(), C)
    assert result.verdict is Verdict.NOT_EQUAL
    assert result.reducts == (term("Unit + Unit"), UnitTy())


def test_fuel_exhaustion():
    result = def_eq(LI, EMPTY_GRADES, term(GROWING), UnitTm(), C, fuel=5)
    assert result.verdict is Verdict.FUEL_EXHAUSTED
    assert result.steps_used == 5


def test_chains_are_kept_on_request():
    result = def_eq(LI, EMPTY_GRADES, term(GROWING), UnitTm(), C, fuel=3, keep_chains=True)
    left, right = result.chains
    assert len(left) == 4
    assert right == (UnitTm(),)


def test_cancellation():
    cancel = threading.Event()
    cancel.set()
    with pytest.raises(Cancelled):
        def_eq(LI, EMPTY_GRADES, term(GROWING), UnitTm(), C, fuel=10, cancel=cancel)


def test_head_consistency():
    pi = Pi(BOT, UnitTy(), UnitTy())
    sigma = Sigma(BOT, UnitTy(), UnitTy())
    assert consistent(pi, pi)
    assert not consistent(pi, sigma)
    assert not consistent(Sort("Type"), Sort("Kind"))
    assert not consistent(UnitTy(), Sort("Type"))
    assert consistent(pi, Var(0))


# Parallel reduction


def test_guarded_arguments_are_left_alone():
    a = term("f ((\\x:^bot Unit. x) unit)^top", ("f",))
    assert par_step(LI, a, C) == a
    assert par_step(LI, a, TOP) == term("f unit^top", ("f",))


def test_development_fires_every_visible_redex():
    a = term("(((\\x:^bot Unit. x) unit)^bot, (\\x:^bot Unit. x) unit)")
    assert par_step(LI, a, C) == term("(unit^bot, unit)")


def test_par_star_reaches_a_fixpoint():
    a = term("(\\x:^bot Unit. (\\y:^bot Unit. y) x) unit")
    assert par_star(LI, a, C, 10) == UnitTm()


def test_annotations_are_dropped():
    assert par_step(LI, term("(unit : Unit)"), C) == UnitTm()


@pytest.mark.parametrize(
    "source",
    [
        "(\\x:^bot Unit. (\\y:^bot Unit. y) x) ((\\z:^bot Unit. z) unit)",
        "let (x^C, y) = (((\\z:^bot Unit. z) unit)^C, unit) in (y^C, x)",
        "case (inj1 ((\\z:^bot Unit. z) unit) : Unit + Unit) of (\\y:Unit. y) ; \\y:Unit. unit",
    ],
)
def test_development_closes_every_parallel_step(source):
    a = term(source)
    developed = par_step(LI, a, C)
    reducts = parallel_reducts(LI, a, C)
    assert a in reducts and developed in reducts
    for b in reducts:
        assert developed in parallel_reducts(LI, b, C)
