import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models import skeleton
from models.errors import InjectionError
from models.skeleton import GeneratorWord, Injection


@st.composite
def injections(draw, source=None, target=None):
    n = draw(st.integers(0, 6)) if target is None else target
    m = draw(st.integers(0, n)) if source is None else source
    images = draw(st.permutations(range(1, n + 1)))[:m]
    return Injection(n, tuple(images))


@st.composite
def composable_triples(draw):
    sizes = sorted(draw(st.lists(st.integers(0, 6), min_size=4, max_size=4)))
    return tuple(draw(injections(sizes[k], sizes[k + 1])) for k in range(3))


def test_enumeration_counts():
    for n in range(7):
        for m in range(n + 1):
            found = skeleton.enumerate_injections(m, n)
            assert len(found) == len(set(found)) == math.perm(n, m)
    assert skeleton.enumerate_injections(3, 2) == ()
    assert len(skeleton.enumerate_injections(0, 4)) == 1
    assert [f.images for f in skeleton.enumerate_injections(1, 3)] == [(1,), (2,), (3,)]


def test_compose_examples():
    f = Injection(2, (2,))
    g = Injection(3, (3, 1))
    assert skeleton.compose(g, f) == Injection(3, (1,))
    assert skeleton.compose(skeleton.identity(2), f) == f
    inc = skeleton.compose(skeleton.standard_inclusion(2, 3), skeleton.standard_inclusion(1, 2))
    assert inc == skeleton.standard_inclusion(1, 3)
    with pytest.raises(InjectionError):
        skeleton.compose(f, g)


@settings(max_examples=100, deadline=None)
@given(triple=composable_triples())
def test_composition_is_associative(triple):
    f, g, h = triple
    compose = skeleton.compose
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def test_invalid_injections():
    with pytest.raises(InjectionError):
        Injection(2, (1, 1))
    with pytest.raises(InjectionError):
        Injection(2, (3,))
    with pytest.raises(ValueError):
        Injection(1, (1, 2))


def test_text_form():
    f = Injection(3, (3, 1))
    assert str(f) == "2->3:[3,1]"
    assert Injection.parse("2->3:[3,1]") == f
    assert Injection.parse("0->2:[]") == skeleton.standard_inclusion(0, 2)
    with pytest.raises(InjectionError):
        Injection.parse("2->3:[1]")
    with pytest.raises(InjectionError):
        Injection.parse("nonsense")


def test_sigma_extend_examples():
    assert skeleton.sigma_extend(skeleton.identity(2)) == skeleton.identity(3)
    assert skeleton.sigma_extend(Injection(2, (2,))) == Injection(3, (2, 3))
    assert skeleton.sigma_extend(Injection(0, ())) == skeleton.identity(1)


@settings(max_examples=60, deadline=None)
@given(triple=composable_triples())
def test_sigma_extend_is_functorial(triple):
    f, g, _ = triple
    sigma = skeleton.sigma_extend
    assert sigma(skeleton.compose(g, f)) == skeleton.compose(sigma(g), sigma(f))


def test_join_map_examples():
    assert skeleton.join_map(skeleton.identity(1), 2) == skeleton.identity(2)
    assert skeleton.join_map(Injection(0, ()), 1) == skeleton.identity(1)
    assert skeleton.join_map(Injection(2, (2,)), 1) == Injection(3, (3, 1))
    assert skeleton.join_map(Injection(2, (2,)), 3, source_slot=1) == Injection(3, (3, 2))
    with pytest.raises(InjectionError):
        skeleton.join_map(skeleton.identity(1), 3)


def test_boundary_removal_examples():
    assert skeleton.boundary_removal(Injection(2, (1,)), 2) == skeleton.identity(1)
    assert skeleton.boundary_removal(Injection(3, (3,)), 1) == Injection(2, (2,))
    assert skeleton.boundary_removal(Injection(1, ()), 1) == Injection(0, ())
    with pytest.raises(InjectionError):
        skeleton.boundary_removal(Injection(3, (3,)), 3)


def test_restrict_removing_examples():
    assert skeleton.restrict_removing(skeleton.identity(2), 1) == skeleton.identity(1)
    assert skeleton.restrict_removing(Injection(3, (3, 1)), 1) == Injection(2, (1,))
    assert skeleton.restrict_removing(Injection(2, (2, 1)), 2) == Injection(1, (1,))


@settings(max_examples=60, deadline=None)
@given(f=injections(), data=st.data())
def test_join_undoes_boundary_removal(f, data):
    missed = f.missed()
    if not missed:
        return
    y = data.draw(st.sampled_from(missed))
    joined = skeleton.join_map(skeleton.boundary_removal(f, y), y)
    assert joined.images == f.images + (y,)


def test_canonical_factorization_examples():
    word = skeleton.canonical_factorization(skeleton.standard_inclusion(2, 4))
    assert word == GeneratorWord(2, 4, ())
    assert word.inclusions == 2
    assert skeleton.canonical_factorization(skeleton.identity(1)).transpositions == ()
    word = skeleton.canonical_factorization(Injection(2, (2,)))
    assert word == GeneratorWord(1, 2, (1,))
    assert skeleton.evaluate_word(word) == Injection(2, (2,))


@settings(max_examples=100, deadline=None)
@given(f=injections())
def test_factorization_reevaluates(f):
    assert skeleton.evaluate_word(skeleton.canonical_factorization(f)) == f


def test_coset_representative_is_increasing_after_the_image():
    assert skeleton.coset_representative(Injection(4, (3, 1))) == (3, 1, 2, 4)


def test_generators():
    listed = [(kind, n, i) for kind, n, i, _ in skeleton.generators(2)]
    assert listed == [("inclusion", 0, 0), ("inclusion", 1, 0), ("transposition", 2, 1)]


def test_count_injections_outside_the_range():
    assert skeleton.count_injections(3, 2) == 0
    assert skeleton.count_injections(-1, 3) == 0
    assert skeleton.count_injections(0, 0) == 1
    assert skeleton.count_injections(2, 4) == math.perm(4, 2)
