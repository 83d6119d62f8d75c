import pytest

from gradia.calculi.ddc.checker import DdcChecker
from gradia.calculi.ddc.erasure import erase
from gradia.calculi.ddc.indist import ddc_grade, ddc_indist
from gradia.calculi.ddc.pts import coc, load_pts, type_in_type
from gradia.calculi.ddc.schemas import DdcConfig
from gradia.calculi.ddc.semantics import ddc_step, evaluate, is_value, whnf
from gradia.exceptions import FuelExhaustedError, PtsError, TypeCheckError
from gradia.lattice import irrelevance
from gradia.syntax.context import EMPTY
from gradia.syntax.parser import parse, parse_program
from gradia.syntax.terms import Ann, GApp, GLam, Pi, Sigma, Sort, UnitTm, UnitTy, Var
from gradia.utils.trace import Tracer

LI = irrelevance()
BOT, C, TOP = LI.bot, LI.c, LI.top
CONFIG = DdcConfig(lattice=LI, pts=type_in_type(), fuel=200)


def infer(source: str, level=BOT, config: DdcConfig = CONFIG):
    program = parse_program(source, LI, "ddc", config.pts.sorts)
    return DdcChecker(config).check(program.context, program.term, level)


def rejects(source: str, level=BOT, config: DdcConfig = CONFIG) -> TypeCheckError:
    with pytest.raises(TypeCheckError) as e:
        infer(source, level, config)
    return e.value


# Typing


def test_polymorphic_identity():
    ty = infer("\\A:^top Type. \\y:^bot A. y")
    assert ty == Pi(TOP, Sort("Type"), Pi(BOT, Var(0), Var(1)))


def test_type_arguments_are_substituted():
    assert infer("(\\A:^top Type. \\y:^bot A. y) Unit^top unit^bot") == UnitTy()


def test_irrelevant_argument_is_not_usable():
    err = rejects("\\x:^top Unit. x")
    assert (err.rule, err.code) == ("T-Var", "VarGradeTooHigh")


def test_argument_grade_must_match():
    err = rejects("(\\x:^C Unit. unit) unit^bot")
    assert (err.rule, err.code) == ("T-AppC", "GradeMismatch")


def test_dependent_pair():
    assert infer("(unit^C, unit)") == Sigma(C, UnitTy(), UnitTy())


def test_first_projection_needs_clearance():
    src = "assume p :^bot Sigma x:^C Unit. Unit; pi1^C p"
    assert infer(src, C) == UnitTy()
    assert rejects(src, BOT).code == "VarGradeTooHigh"


def test_second_projection():
    assert infer("assume p :^bot Sigma x:^C Unit. Unit; pi2^C p") == UnitTy()


def test_conversion_through_a_type_level_redex():
    ty = infer("(unit : (\\A:^bot Type. A) Unit^bot)")
    assert whnf(LI, ty, 10) == UnitTy()


def test_conversion_failure():
    err = rejects("((inj1 unit : Unit + Unit) : Unit)")
    assert (err.rule, err.code) == ("T-ConvC", "ConversionFailed")


def test_levels_above_c_are_rejected():
    program = parse_program("unit", LI)
    with pytest.raises(TypeCheckError) as e:
        DdcChecker(CONFIG).check(program.context, program.term, TOP)
    assert e.value.code == "LevelAboveC"


def test_top_goes_through_truncation():
    program = parse_program("assume x :^top Unit; x", LI)
    checker = DdcChecker(CONFIG)
    assert checker.check_truncated(program.context, program.term, TOP) == UnitTy()
    with pytest.raises(TypeCheckError):
        checker.check(program.context, program.term, C)


def test_truncation_is_traced():
    tracer = Tracer("t")
    program = parse_program("unit", LI)
    DdcChecker(CONFIG, tracer).check_truncated(program.context, program.term, TOP)
    assert tracer.rule_names()[0] == "CT-Top"


def test_case_branches_are_functions():
    src = "case (inj1 unit : Unit + Unit) of (\\y:Unit. y) ; \\y:Unit. unit"
    assert infer(src) == UnitTy()


def test_injection_needs_annotation():
    assert rejects("inj1 unit").code == "CannotInfer"


def test_sort_of_type_under_coc():
    config = DdcConfig(lattice=LI, pts=coc(), fuel=200)
    checker = DdcChecker(config)
    assert checker.sort_of_type(EMPTY, parse("Pi A:^top Type. A", LI)) == "Type"
    assert checker.sort_of_type(EMPTY, parse("Type -> Type", LI)) == "Kind"
    assert infer("Type", config=config) == Sort("Kind")


def test_missing_pts_rule():
    pts = load_pts("sorts: Type, Kind\naxioms: Type : Kind, Kind : Kind\nrules: (Type, Type, Type)")
    err = rejects("Type -> Type", config=DdcConfig(lattice=LI, pts=pts, fuel=200))
    assert (err.rule, err.code) == ("T-Pi", "NoRule")


def test_invalid_signature():
    with pytest.raises(PtsError) as e:
        load_pts("sorts: Type\naxioms: Type : Kind")
    assert e.value.code == "InvalidSignature"


# Evaluation


def test_beta_needs_matching_grades():
    good = parse("(\\x:^C Unit. x) unit^C", LI)
    bad = GApp(parse("\\x:^C Unit. x", LI), UnitTm(), BOT)
    assert ddc_step(LI, good) == UnitTm()
    assert ddc_step(LI, bad) is None


def test_let_pair_steps():
    a = parse("let (x^C, y) = (unit^C, inj1 unit) in y", LI)
    assert evaluate(LI, a, 10)[0] == parse("inj1 unit", LI)


def test_case_applies_the_branch_at_bottom():
    a = parse("case (inj2 unit : Unit + Unit) of (\\y:Unit. y) ; \\y:Unit. (unit^bot, y)", LI)
    step = ddc_step(LI, a)
    assert isinstance(step, GApp) and step.grade == BOT


def test_types_are_values():
    assert is_value(parse("Pi x:^top Type. x", LI))
    assert is_value(parse("(unit : Unit)", LI))


def test_omega_runs_out_of_fuel():
    omega = parse("(\\x:^bot Unit. x x) (\\x:^bot Unit. x x)", LI)
    with pytest.raises(FuelExhaustedError):
        evaluate(LI, omega, 25)


# Observation


def test_erasure_hides_irrelevant_arguments():
    a = parse("f unit^top", LI, names=("f",))
    assert erase(LI, a, C) == a
    assert erase(LI, a, BOT) == a
    hidden = parse("f (inj1 unit : Unit + Unit)^top", LI, names=("f",))
    assert erase(LI, hidden, C) == GApp(Var(0), UnitTm(), TOP)


def test_erasure_at_top_is_identity():
    a = parse("\\A:^top Type. \\y:^bot A. (y^C, A)", LI)
    assert erase(LI, a, TOP) == a


def test_erasure_hides_compile_time_positions_below_top():
    lam = parse("\\x:^bot Unit + Unit. x", LI)
    assert erase(LI, lam, C) == GLam(BOT, UnitTm(), Var(0))
    assert erase(LI, lam, TOP) == lam
    assert erase(LI, parse("(unit : Unit)", LI), C) == Ann(UnitTm(), UnitTm())
    let = parse("let (x^C, y) = p return z. Unit in y", LI, names=("p",))
    erased = erase(LI, let, C)
    assert erased.motive == UnitTm()
    assert erased.body == Var(0)


def test_domains_do_not_change_the_canonical_element():
    one = parse("\\x:^bot Unit. unit", LI)
    two = parse("\\x:^bot Unit + Unit. unit", LI)
    assert ddc_indist(LI, EMPTY.grades(), one, two, C)
    assert erase(LI, one, C) == erase(LI, two, C)
    assert erase(LI, one, TOP) != erase(LI, two, TOP)


def test_phantom_arguments_are_indistinguishable_at_c():
    phi = EMPTY.extend("f", BOT, UnitTy()).grades()
    one = parse("f (inj1 unit : Unit + Unit)^top", LI, names=("f",))
    two = parse("f (inj2 unit : Unit + Unit)^top", LI, names=("f",))
    assert ddc_indist(LI, phi, one, two, C)
    assert not ddc_indist(LI, phi, one, two, TOP)
    assert ddc_grade(LI, phi, one, BOT)
