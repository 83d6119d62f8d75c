import pytest

from gradia.calculi.sdc.checker import SdcChecker, sdc_check, seal_check
from gradia.calculi.sdc.indist import sdc_grade, sdc_indist
from gradia.calculi.sdc.semantics import evaluate, full_step, is_value, sdc_step
from gradia.exceptions import FuelExhaustedError, TypeCheckError
from gradia.lattice import low_medium_high
from gradia.syntax.context import EMPTY, EMPTY_GRADES
from gradia.syntax.parser import parse, parse_program
from gradia.syntax.terms import Arrow, Inj1, Prod, Return, Sum, TMonad, UnitTm, UnitTy
from gradia.utils.trace import Tracer

LMH = low_medium_high()
L, M, H = LMH.grade("L"), LMH.grade("M"), LMH.grade("H")


def check(source: str, level, fragment: str = "sdc"):
    program = parse_program(source, LMH, fragment)
    run = seal_check if fragment == "seal" else sdc_check
    return run(LMH, program.context, program.term, level)


def rejects(source: str, level, fragment: str = "sdc") -> TypeCheckError:
    with pytest.raises(TypeCheckError) as e:
        check(source, level, fragment)
    return e.value


# Typing


def test_identity():
    assert check("\\x:Unit. x", L) == Arrow(UnitTy(), UnitTy())


def test_pairs_and_projections():
    assert check("(unit, \\x:Unit. x)", L) == Prod(UnitTy(), Arrow(UnitTy(), UnitTy()))
    assert check("pi2 (unit, unit)", L) == UnitTy()


def test_variable_visibility():
    assert check("assume x :^M Unit; x", H) == UnitTy()
    assert check("assume x :^M Unit; x", M) == UnitTy()
    err = rejects("assume x :^M Unit; x", L)
    assert (err.rule, err.code) == ("SDC-Var", "VarGradeTooHigh")
    assert (err.expected, err.found) == (L, M)


def test_return_raises_the_level():
    assert check("assume x :^H Unit; eta^H x", L) == TMonad(H, UnitTy())
    assert rejects("assume x :^H Unit; eta^M x", L).code == "VarGradeTooHigh"


def test_bind_stays_inside_the_modality():
    src = "assume x :^L T^H Unit; bind^H y = x in eta^H y"
    assert check(src, L) == TMonad(H, UnitTy())
    leak = "assume x :^L T^H Unit; bind^H y = x in y"
    assert rejects(leak, L).rule == "SDC-Var"


def test_bind_grade_must_match():
    err = rejects("assume x :^L T^H Unit; bind^M y = x in eta^H y", L)
    assert (err.rule, err.code) == ("SDC-Bind", "GradeMismatch")


def test_injections_check_against_ascription():
    assert check("(inj2 unit : Unit + Unit)", L) == Sum(UnitTy(), UnitTy())
    err = rejects("inj1 unit", L)
    assert err.code == "CannotInfer"


def test_case_with_function_branches():
    src = "case (inj1 unit : Unit + Unit) of (\\y:Unit. eta^H unit) ; \\y:Unit. eta^H y"
    assert check(src, L) == TMonad(H, UnitTy())


def test_case_branches_must_agree():
    src = "case (inj1 unit : Unit + Unit) of (\\y:Unit. unit) ; \\y:Unit. (unit, unit)"
    err = rejects(src, L)
    assert err.code == "TypeMismatch"


def test_application_mismatch_reports_location():
    err = rejects("(\\x:Unit. x) (unit, unit)", L)
    assert err.code == "TypeMismatch"
    assert err.location == "arg"


def test_sealing_forms_are_outside_sdc():
    err = rejects("assume x :^L T^H Unit; unseal^H x", H)
    assert err.code == "NotInFragment"


def test_trace_records_rules():
    tracer = Tracer("t")
    program = parse_program("(\\x:Unit. x) unit", LMH, "sdc")
    SdcChecker(LMH, tracer).check(program.context, program.term, L)
    assert tracer.rule_names()[:2] == ["SDC-App", "SDC-Abs"]


# Sealing calculus


def test_seal_ignores_variable_grades():
    assert check("assume x :^H Unit; seal^H x", L, "seal") == TMonad(H, UnitTy())


def test_unseal_needs_clearance():
    src = "assume x :^L T^H Unit; unseal^H x"
    assert check(src, H, "seal") == UnitTy()
    err = rejects(src, L, "seal")
    assert (err.rule, err.code) == ("Sealing-Unseal", "UnsealClearance")


def test_unseal_grade_must_match():
    err = rejects("assume x :^L T^H Unit; unseal^M x", H, "seal")
    assert err.code == "GradeMismatch"


# Evaluation


def test_beta():
    a = parse("(\\x:Unit. (x, x)) unit", LMH, "sdc")
    assert evaluate(a, 10)[0] == parse("(unit, unit)", LMH, "sdc")


def test_constructors_are_lazy():
    a = parse("inj1 ((\\x:Unit. x) unit)", LMH, "sdc")
    assert is_value(a)
    assert sdc_step(a) is None


def test_bind_of_return():
    a = parse("bind^H y = eta^H unit in eta^H y", LMH, "sdc")
    assert sdc_step(a) == Return(H, UnitTm())


def test_bind_grade_mismatch_is_stuck():
    a = parse("bind^M y = eta^H unit in y", LMH, "sdc")
    assert sdc_step(a) is None


def test_case_steps_to_branch_application():
    a = parse("case (inj1 unit : Unit + Unit) of (\\y:Unit. y) ; \\y:Unit. unit", LMH, "sdc")
    value, steps = evaluate(a, 10)
    assert value == UnitTm()
    assert steps == 2


def test_unseal_of_seal():
    a = parse("unseal^H (seal^H unit)", LMH, "seal")
    assert sdc_step(a) == UnitTm()


def test_fuel_runs_out():
    omega = parse("(\\x:Unit -> Unit. x x) (\\x:Unit -> Unit. x x)", LMH, "sdc")
    with pytest.raises(FuelExhaustedError):
        evaluate(omega, 20)


def test_full_step_finds_inner_redexes():
    a = parse("((\\x:Unit. x) unit, (\\x:Unit. x) unit)", LMH, "sdc")
    assert sdc_step(a) is None
    assert len(full_step(a)) == 2


# Indistinguishability


def test_hidden_payload_is_invisible_below_its_grade():
    one = Return(H, Inj1(UnitTm()))
    two = Return(H, UnitTm())
    assert sdc_indist(LMH, EMPTY_GRADES, one, two, L)
    assert not sdc_indist(LMH, EMPTY_GRADES, one, two, H)


def test_variables_must_be_visible():
    phi = EMPTY.extend("x", H, UnitTy()).grades()
    x = parse("x", LMH, "sdc", names=("x",))
    assert not sdc_indist(LMH, phi, x, x, L)
    assert sdc_indist(LMH, phi, x, x, H)
    assert sdc_grade(LMH, phi, x, H)
    assert not sdc_grade(LMH, phi, x, M)
