import asyncio
import json

import hypothesis as hyp
import pytest
from hypothesis import strategies as st
from pydantic import ValidationError

from gradia.calculi.ddc.pts import type_in_type
from gradia.calculi.ddc.schemas import DdcConfig
from gradia.calculi.sdc.checker import sdc_check
from gradia.exceptions import ConfigError, TypeCheckError
from gradia.harness import SUITES, get_suite, run_suite, run_trial, suite_config, write_report
from gradia.harness.calculus import Calculus
from gradia.harness.enumerate import Enumerator, enumerate_terms
from gradia.harness.generate import Checkers, Sample, SampleSource, gen_well_typed, trial_rng
from gradia.harness.oracle import DdcOracle, SimpleOracle, oracle_check, order_join
from gradia.harness.schemas import GenConfig
from gradia.harness.shrink import deletions, shrink
from gradia.lattice import diamond, irrelevance, low_medium_high, two_point
from gradia.syntax.context import EMPTY
from gradia.syntax.parser import parse
from gradia.syntax.terms import (
    App,
    Arrow,
    Inj1,
    Lam,
    Pair,
    Prod,
    Sigma,
    Sort,
    TMonad,
    UnitTm,
    UnitTy,
    Var,
    children,
    free_vars,
    size,
)

LMH = low_medium_high()
L, H = LMH.grade("L"), LMH.grade("H")
LI = irrelevance()
TWO = two_point()
DIAMOND = diamond()


# Enumeration


def test_leaves_of_each_fragment():
    assert Enumerator("sdc", LMH).exact(1, 0) == (UnitTm(), UnitTy())
    assert Enumerator("sdc", LMH).exact(1, 2) == (Var(0), Var(1), UnitTm(), UnitTy())
    assert Enumerator("ddc-pi", LI).exact(1, 0) == (Sort("Type"),)


def test_unary_shapes_take_every_grade():
    # four ungraded unary forms plus TMonad and Return at three grades, over two leaves
    assert len(Enumerator("sdc", LMH).exact(2, 0)) == 20


def test_pi_fragment_counts():
    pi = Enumerator("ddc-pi", LI)
    assert pi.exact(2, 0) == ()
    assert len(pi.exact(3, 0)) == 15


@pytest.mark.parametrize("fragment, lattice", [("sdc", LMH), ("seal", LMH), ("ddc", LI), ("ddc-pi", LI)])
def test_enumerated_terms_are_sized_and_scoped(fragment, lattice):
    enum = Enumerator(fragment, lattice)
    for n in range(1, 5):
        found = enum.exact(n, 1)
        assert len(set(found)) == len(found)
        for t in found:
            assert size(t) == n
            assert free_vars(t) <= {0}


def test_binders_extend_the_scope():
    assert Lam(UnitTy(), Var(0)) in Enumerator("sdc", LMH).exact(3, 0)


def test_enumerate_terms_uses_free_variable_count():
    terms = list(enumerate_terms("sdc", 2, LMH, free_var_grades=(H,)))
    assert Var(0) in terms
    assert TMonad(H, Var(0)) in terms


def test_unknown_fragment():
    with pytest.raises(ValueError):
        Enumerator("lambda-cube", LMH)


# Generation


def test_trial_rng_is_deterministic():
    assert trial_rng(7, 3).random() == trial_rng(7, 3).random()
    assert trial_rng(7, 3).random() != trial_rng(7, 4).random()


@hyp.settings(max_examples=25, deadline=None)
@hyp.given(st.integers(0, 2**32), st.sampled_from(["sdc", "seal", "ddc"]))
def test_typed_samples_recheck(seed, fragment):
    cfg = suite_config("preservation", fragment=fragment, seed=seed, max_size=10)
    checkers = Checkers(cfg)
    sample = SampleSource(cfg, trial_rng(seed, 0), checkers).typed()
    (a,) = sample.terms
    assert checkers.synth(fragment, sample.ctx, a, sample.level) == sample.types[0]


@hyp.settings(max_examples=25, deadline=None)
@hyp.given(st.integers(0, 2**32))
def test_hidden_variable_is_above_the_level(seed):
    cfg = suite_config("noninterference", fragment="sdc", seed=seed, max_size=10)
    sample = SampleSource(cfg, trial_rng(seed, 0)).hole(2)
    (l0,) = sample.grades
    assert not LMH.leq(l0, sample.level)
    assert len(sample.terms) == 3
    assert sample.scopes == (("x",), (), ())


def test_dependent_levels_stay_below_c():
    cfg = suite_config("preservation", fragment="ddc")
    source = SampleSource(cfg, trial_rng(0, 0))
    assert LI.top not in source.levels()


def test_stream_of_typed_terms():
    cfg = suite_config("preservation", fragment="sdc", trials=5, max_size=8)
    for ctx, a, level, ty in gen_well_typed(cfg):
        assert sdc_check(LMH, ctx, a, level) == ty


# Shrinking


def test_deletions_promote_children():
    t = Pair(Inj1(UnitTm()), UnitTm())
    assert set(deletions(t)) == {Inj1(UnitTm()), UnitTm(), Pair(UnitTm(), UnitTm())}


def test_deletions_keep_bound_variables_bound():
    t = Lam(UnitTy(), Var(0))
    assert list(deletions(t)) == [UnitTy()]


def test_shrink_reaches_a_local_minimum():
    def has_inj(sample: Sample) -> bool:
        return any(isinstance(node, Inj1) for node in _nodes(sample.terms[0]))

    start = Sample(EMPTY, (Pair(Inj1(UnitTm()), App(UnitTm(), UnitTm())),), L)
    assert shrink(start, has_inj).terms == (Inj1(UnitTm()),)


def test_shrink_respects_its_budget():
    start = Sample(EMPTY, (Pair(Inj1(UnitTm()), UnitTm()),), L)
    assert shrink(start, lambda _: True, budget=0) == start


def _nodes(t):
    yield t
    for _, _, child in children(t):
        yield from _nodes(child)


# Oracles


@pytest.mark.parametrize(
    "source, expected",
    [
        ("\\x:Unit. x", Arrow(UnitTy(), UnitTy())),
        ("(\\x:Unit. x) unit", UnitTy()),
        ("eta^H (unit, unit)", TMonad(H, Prod(UnitTy(), UnitTy()))),
        ("inj1 unit", None),
    ],
)
def test_simple_oracle(source, expected):
    a = parse(source, LMH, "sdc")
    assert oracle_check(SimpleOracle(LMH), EMPTY, a, L) == expected


def test_simple_oracle_hides_variables():
    ctx = EMPTY.extend("x", H, UnitTy())
    assert oracle_check(SimpleOracle(LMH), ctx, Var(0), L) is None
    assert oracle_check(SimpleOracle(LMH, sealing=True), ctx, Var(0), L) == UnitTy()


@pytest.mark.parametrize("lattice", [TWO, LI, LMH, DIAMOND], ids=lambda lat: lat.name)
def test_order_join_agrees_with_the_join_table(lattice):
    for a in lattice:
        for b in lattice:
            assert order_join(lattice, a, b) == lattice.join(a, b)


def test_ddc_oracle_types_a_graded_pair():
    oracle = DdcOracle(DdcConfig(lattice=LI, pts=type_in_type(), fuel=200))
    a = parse("(unit^C, unit)", LI)
    assert oracle_check(oracle, EMPTY, a, LI.bot) == Sigma(LI.c, UnitTy(), UnitTy())
    assert oracle_check(oracle, EMPTY, parse("inj1 unit", LI), LI.bot) is None


# Suites


def test_every_suite_names_its_fragments():
    for name, suite in SUITES.items():
        assert suite.name == name
        assert suite.fragments


def test_unknown_suite():
    with pytest.raises(ConfigError) as e:
        get_suite("confluence")
    assert e.value.code == "UnknownSuite"


def test_suite_defaults():
    cfg = suite_config("defeq-consistency")
    assert cfg.fragment == "ddc"
    assert cfg.lattice.name == LI.name
    assert "Kind" in cfg.pts.sorts
    assert suite_config("preservation").lattice.name == LMH.name


def test_suite_rejects_foreign_fragment():
    with pytest.raises(ConfigError) as e:
        suite_config("regularity", fragment="sdc")
    assert e.value.code == "UnsupportedFragment"


def test_config_validation():
    with pytest.raises(ValidationError):
        GenConfig(lattice=LMH, trials=0)


def test_single_trial():
    cfg = suite_config("preservation", fragment="sdc", trials=1, max_size=8)
    result = run_trial(get_suite("preservation"), Calculus(cfg), 0)
    assert result.index == 0
    assert result.status in ("passed", "skipped")


SUITE_RUNS = [(name, fragment) for name, suite in SUITES.items() for fragment in suite.fragments]


@pytest.mark.parametrize("name, fragment", SUITE_RUNS)
def test_suite_runs_clean(name, fragment):
    cfg = suite_config(name, fragment=fragment, trials=8, max_size=10, seed=1)
    report = asyncio.run(run_suite(name, cfg))
    assert report.passed + report.failed + report.skipped == 8
    assert report.passed > 0, report.skip_reasons
    assert report.ok, report.failures


def test_runs_are_reproducible():
    cfg = suite_config("noninterference", fragment="sdc", trials=5, max_size=8, seed=3)
    first = asyncio.run(run_suite("noninterference", cfg))
    second = asyncio.run(run_suite("noninterference", cfg))
    assert first.model_dump() == second.model_dump()


def test_trials_are_split_into_batches(monkeypatch):
    from gradia.config import settings

    monkeypatch.setattr(settings, "batch_size", 2)
    cfg = suite_config("progress", fragment="sdc", trials=5, max_size=6)
    report = asyncio.run(run_suite("progress", cfg, timing=True))
    assert report.passed + report.failed + report.skipped == 5
    assert report.elapsed is not None
    assert "progress [sdc" in report.summary()


def test_report_file(report_dir):
    cfg = suite_config("progress", fragment="sdc", trials=2, max_size=6, seed=5)
    report = asyncio.run(run_suite("progress", cfg))
    path = asyncio.run(write_report(report, report_dir))
    assert path.endswith("progress-sdc-5.json")
    assert json.loads((report_dir / "progress-sdc-5.json").read_text())["trials"] == 2


def _checked(lattice, ctx, a, level):
    try:
        return sdc_check(lattice, ctx, a, level)
    except TypeCheckError:
        return None


def _agree_on_every_term(lattice, size_bound: int, free: int):
    ctx = EMPTY
    bindings = [("x", lattice.top, UnitTy()), ("m", lattice.bot, TMonad(lattice.top, UnitTy()))]
    for name, grade, ty in bindings[:free]:
        ctx = ctx.extend(name, grade, ty)
    oracle = SimpleOracle(lattice)
    levels = list(lattice)
    for a in enumerate_terms("sdc", size_bound, lattice, free_var_grades=[b.grade for b in ctx]):
        for level in levels:
            assert _checked(lattice, ctx, a, level) == oracle_check(oracle, ctx, a, level), (a, level)


@pytest.mark.parametrize(
    "lattice, size_bound, free",
    [(TWO, 5, 1), (TWO, 4, 2), (LMH, 4, 1), (DIAMOND, 4, 1)],
    ids=["two_point", "two_point-open", "lmh", "diamond"],
)
def test_checker_matches_rules_on_every_small_term(lattice, size_bound, free):
    _agree_on_every_term(lattice, size_bound, free)


@pytest.mark.slow
def test_checker_matches_rules_up_to_seven_nodes():
    _agree_on_every_term(TWO, 7, 2)
