import hypothesis as hyp
import pytest
from hypothesis import strategies as st

from gradia.config import settings
from gradia.exceptions import LatticeError
from gradia.lattice import (
    Lattice,
    diamond,
    irrelevance,
    load_lattice,
    low_medium_high,
    resolve_lattice,
    two_point,
)

CATALOGUE = [two_point(), irrelevance(), low_medium_high(), diamond()]


@st.composite
def grade_triples(draw):
    lattice = draw(st.sampled_from(CATALOGUE))
    grades = st.sampled_from(list(lattice))
    return lattice, draw(grades), draw(grades), draw(grades)


@hyp.given(grade_triples())
def test_join_and_meet_laws(triple):
    lat, x, y, z = triple
    assert lat.join(x, y) == lat.join(y, x)
    assert lat.meet(x, y) == lat.meet(y, x)
    assert lat.join(lat.join(x, y), z) == lat.join(x, lat.join(y, z))
    assert lat.join(x, lat.meet(x, y)) == x
    assert lat.meet(x, lat.join(x, y)) == x
    assert lat.leq(x, y) == (lat.join(x, y) == y)


@hyp.given(grade_triples())
def test_bounds(triple):
    lat, x, _, _ = triple
    assert lat.leq(lat.bot, x)
    assert lat.leq(x, lat.top)


def test_irrelevance_lattice():
    li = irrelevance()
    assert [g.display_name for g in li] == ["bot", "C", "top"]
    assert li.c == li.grade("C")
    assert li.leq(li.c, li.top) and not li.leq(li.top, li.c)


def test_diamond_has_incomparable_points():
    d = diamond()
    a, b = d.grade("a"), d.grade("b")
    assert not d.leq(a, b) and not d.leq(b, a)
    assert d.join(a, b) == d.top
    assert d.meet(a, b) == d.bot


def test_aliases_resolve_to_extremes():
    lmh = low_medium_high()
    assert lmh.grade("bot") == lmh.grade("L")
    assert lmh.grade("top") == lmh.grade("H")
    assert lmh.c == lmh.top


def test_with_c_shares_grades():
    li = irrelevance()
    moved = li.with_c("top")
    assert moved.c == li.top
    assert moved.join(li.bot, li.c) == li.c


def test_grades_of_another_lattice_are_rejected():
    with pytest.raises(LatticeError) as e:
        two_point().leq(diamond().grade("a"), diamond().top)
    assert e.value.code == "UnknownElement"


def test_load_config_with_comments():
    lat = load_lattice(
        """
        -- a chain
        elements: lo, mid, hi
        order: lo <= mid, mid <= hi
        c: mid
        """
    )
    assert lat.c == lat.grade("mid")
    assert lat.leq(lat.grade("lo"), lat.grade("hi"))


def test_describe_reloads_to_same_order():
    d = diamond()
    again = load_lattice(d.describe())
    assert again.elements == d.elements
    assert all(
        again.leq(again.grade(x.display_name), again.grade(y.display_name)) == d.leq(x, y)
        for x in d
        for y in d
    )


@pytest.mark.parametrize(
    "config, code",
    [
        ("elements: a, b", "MissingBound"),
        ("elements: a, b\norder: a <= b, b <= a", "NotAntisymmetric"),
        ("elements: a\norder: a <= z", "UnknownElement"),
        ("elements: a\nc: z", "UnknownElement"),
        ("elements a", "Syntax"),
        ("elements: a\ncolour: red", "Syntax"),
        ("elements: a, a", "Syntax"),
        ("", "MissingBound"),
    ],
)
def test_invalid_configs(config, code):
    with pytest.raises(LatticeError) as e:
        load_lattice(config)
    assert e.value.code == code
    assert e.value.exit_code == 4


def test_two_maximal_elements_have_no_join():
    with pytest.raises(LatticeError) as e:
        Lattice.from_pairs(["bot", "a", "b"], [("bot", "a"), ("bot", "b")])
    assert e.value.code == "MissingBound"


def test_builtins_resolve_by_name():
    for name in ("li", "lmh", "two_point", "diamond"):
        assert resolve_lattice(name, settings.lattices_dir).name == name


def test_unknown_builtin():
    with pytest.raises(LatticeError) as e:
        resolve_lattice("nowhere", settings.lattices_dir)
    assert e.value.code == "Unreadable"
