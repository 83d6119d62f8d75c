import pytest

from gradia.calculi.ddc.checker import DdcChecker
from gradia.calculi.ddc.pts import type_in_type
from gradia.calculi.ddc.schemas import DdcConfig
from gradia.calculi.ddc.semantics import ddc_step
from gradia.calculi.sdc.checker import sdc_check, seal_check
from gradia.exceptions import TranslationError
from gradia.lattice import irrelevance, low_medium_high
from gradia.syntax.parser import parse, parse_program
from gradia.syntax.printer import print_term
from gradia.syntax.terms import Bind, Return, UnitTm, UnitTy, Var
from gradia.translate.embedding import lift_context, sdc_to_ddct
from gradia.translate.icc import (
    IccApp,
    IccLam,
    ddc_to_icc,
    icc_normalize,
    icc_reachable,
    icc_star_erase,
    print_icc,
)
from gradia.translate.sealing import seal_context, seal_to_sdc

LMH = low_medium_high()
L, H = LMH.grade("L"), LMH.grade("H")
LI = irrelevance()


# Sealing calculus into SDC


def test_unseal_becomes_bind():
    a = parse("unseal^H (seal^H unit)", LMH, "seal")
    assert seal_to_sdc(a) == Bind(H, Return(H, UnitTm()), Var(0))


@pytest.mark.parametrize(
    "source, level",
    [
        ("assume x :^L T^H Unit; unseal^H x", "H"),
        ("\\x:T^H Unit. seal^H (unseal^H x)", "L"),
        ("assume x :^H Unit; (seal^H x, unit)", "M"),
    ],
)
def test_sealing_preserves_types(source, level):
    program = parse_program(source, LMH, "seal")
    lvl = LMH.grade(level)
    ty = seal_check(LMH, program.context, program.term, lvl)
    translated = seal_to_sdc(program.term)
    assert sdc_check(LMH, seal_context(program.context, lvl), translated, lvl) == ty


def test_sealing_rejects_foreign_forms():
    with pytest.raises(TranslationError) as e:
        seal_to_sdc(Return(H, UnitTm()))
    assert e.value.code == "OutOfFragment"


# SDC into DDC-top


def _ddc_top_type(ctx, a, level):
    checker = DdcChecker(DdcConfig(lattice=LMH, pts=type_in_type(), fuel=200))
    return checker.check(ctx, a, level)


@pytest.mark.parametrize(
    "source, level",
    [
        ("\\x:Unit. eta^H x", "L"),
        ("assume x :^L T^H Unit; bind^H y = x in eta^H y", "L"),
        ("pi1 (unit, \\x:Unit. x)", "M"),
        ("case (inj1 unit : Unit + Unit) of (\\y:Unit. eta^H unit) ; \\y:Unit. eta^H y", "L"),
    ],
)
def test_embedding_preserves_types(source, level):
    program = parse_program(source, LMH, "sdc")
    lvl = LMH.grade(level)
    ty = sdc_check(LMH, program.context, program.term, lvl)
    found = _ddc_top_type(lift_context(LMH, program.context), sdc_to_ddct(LMH, program.term), lvl)
    assert found == sdc_to_ddct(LMH, ty)


def test_embedding_prints_as_graded_pairs():
    a = parse("\\x:Unit. eta^H x", LMH, "sdc")
    assert print_term(sdc_to_ddct(LMH, a)) == "\\x:^L Unit. (x^H, unit)"


def test_embedding_rejects_dependent_forms():
    with pytest.raises(TranslationError):
        sdc_to_ddct(LI, parse("\\x:^bot Type. x", LI))


# DDC into ICC*


def test_extraction_marks_relevance():
    a = parse("(\\A:^top Type. \\y:^bot A. y) Type^top", LI)
    assert print_icc(ddc_to_icc(LI, a)) == "(\\[A:Type]. \\(y:A). y) [Type]"
    assert print_icc(icc_star_erase(ddc_to_icc(LI, a))) == "\\y. y"


def test_extraction_of_pi_types_keeps_both_binders():
    ty = parse("Pi A:^top Type. Pi y:^bot A. A", LI)
    assert print_icc(icc_star_erase(ddc_to_icc(LI, ty))) == "Pi [A:Type]. Pi (y:A). A"


def test_relevance_threshold_is_c():
    lam = parse("\\x:^C Type. x", LI)
    assert ddc_to_icc(LI, lam).relevant
    assert not ddc_to_icc(LI, lam, LI.bot).relevant


def test_irrelevant_variable_cannot_survive_erasure():
    with pytest.raises(TranslationError) as e:
        icc_star_erase(ddc_to_icc(LI, parse("\\A:^top Type. A", LI)))
    assert e.value.code == "IrrelevantUse"


def test_extraction_rejects_non_pi_forms():
    with pytest.raises(TranslationError):
        ddc_to_icc(LI, parse("(unit^C, unit)", LI))


def test_irrelevant_steps_vanish_after_erasure():
    a = parse("(\\A:^top Type. \\y:^bot A. y) Type^top", LI)
    b = ddc_step(LI, a)
    erased_a = icc_star_erase(ddc_to_icc(LI, a))
    erased_b = icc_star_erase(ddc_to_icc(LI, b))
    assert icc_reachable(erased_a, erased_b) == 0


def test_relevant_steps_are_simulated():
    a = parse("(\\f:^bot Type. f) Type^bot", LI)
    b = ddc_step(LI, a)
    erased_a = icc_star_erase(ddc_to_icc(LI, a))
    assert erased_a == IccApp(IccLam(True, None, Var(0)), parse("Type", LI), True)
    assert icc_reachable(erased_a, icc_star_erase(ddc_to_icc(LI, b))) == 1
    assert icc_normalize(erased_a) == parse("Type", LI)


def test_unit_is_outside_the_extracted_fragment():
    with pytest.raises(TranslationError):
        ddc_to_icc(LI, UnitTy())
