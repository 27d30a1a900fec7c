import random

import oracles
import pytest

from lefschetz import library, zlin
from lefschetz.library import base_twist, chain_names, cprime_name
from lefschetz.mcg import (
    Curve,
    MappingClass,
    MappingClassError,
    WordGrowthError,
    apply,
    compose,
    compose_all,
    equal,
    homology_rep,
    invert,
    is_identity,
    point_push,
    set_length_ceiling,
    transport_twist,
    twist_matches_transvection,
    validate_automorphism,
)
from lefschetz.words import Word, equal_elements


def T(name, g):
    return base_twist(name, g).twist


def word_product(names, g):
    """T_{n[0]} T_{n[1]} ... as one automorphism (rightmost applied first)."""
    return compose_all([T(n, g) for n in names], g)


def braid(a, b, g):
    A, B = T(a, g), T(b, g)
    return equal(compose_all([A, B, A], g), compose_all([B, A, B], g))


def commute(a, b, g):
    A, B = T(a, g), T(b, g)
    return equal(compose(A, B), compose(B, A))


GENERA = [2, 3, 4]


# relation suite

@pytest.mark.parametrize("g", GENERA)
def test_chain_braid_and_commute(g):
    names = chain_names(g, 2 * g + 1)
    for i, a in enumerate(names):
        for j in range(i + 1, len(names)):
            b = names[j]
            if j == i + 1:
                assert braid(a, b, g), (a, b)
                assert not commute(a, b, g), (a, b)
            else:
                assert commute(a, b, g), (a, b)


@pytest.mark.parametrize("g", GENERA)
def test_auxiliary_curve_pattern(g):
    cp, c2g, c2g1 = cprime_name(g), f"c{2 * g}", f"c{2 * g + 1}"
    assert braid(cp, c2g, g)
    assert commute(cp, c2g1, g)
    assert braid("c0", "c4", g)
    for n in ("c1", "c2", "c3"):
        assert commute("c0", n, g)
        assert commute("d1", n, g)
        assert commute("d2", n, g)
    for n in (cp, c2g, c2g1):
        assert commute("d3", n, g)


@pytest.mark.parametrize("g", GENERA)
def test_even_chain_power_is_identity(g):
    names = chain_names(g) * (4 * g + 2)
    assert is_identity(word_product(names, g))


@pytest.mark.parametrize("g", GENERA)
def test_odd_chain_power_is_identity(g):
    names = chain_names(g, 2 * g + 1) * (2 * g + 2)
    assert is_identity(word_product(names, g))


@pytest.mark.parametrize("g", GENERA)
def test_three_chain_relation(g):
    lhs = word_product(["c1", "c2", "c3"] * 4, g)
    assert equal(lhs, compose(T("d1", g), T("d2", g)))


@pytest.mark.parametrize("g", GENERA)
def test_boundary_three_chain_relation(g):
    trio = [cprime_name(g), f"c{2 * g}", f"c{2 * g + 1}"]
    lhs = word_product(trio * 4, g)
    assert equal(lhs, compose(T("d3", g), T("d", g)))
    # the same product fixes the loop gamma
    gm = library.gamma(g)
    assert equal_elements(apply(lhs, gm), gm)


@pytest.mark.parametrize("g", GENERA)
def test_short_chain_relation(g):
    n = 2 * g - 2
    lhs = word_product(chain_names(g, n) * (2 * n + 2), g)
    assert equal(lhs, compose(T("d3", g), T("d", g)))


# library curves

@pytest.mark.parametrize("g", [2, 3])
def test_library_curves_valid(g):
    for name, c in library.curve_library(g).items():
        assert validate_automorphism(c.twist), name
        assert twist_matches_transvection(c), name
        assert equal_elements(apply(c.twist, c.based_word), c.based_word), name
        if c.separating.is_separating:
            assert not any(c.homology), name
        else:
            assert any(c.homology), name


def test_base_twist_examples():
    c1 = base_twist("c1", 2)
    assert not c1.separating.is_separating and any(c1.homology)
    d = base_twist("d", 2)
    assert d.homology == (0, 0, 0, 0)
    assert base_twist("c'", 2) is base_twist("c5'", 2)
    with pytest.raises(library.UnknownCurveError):
        base_twist("c99", 2)


def test_twist_matches_zlin_transvection():
    for g in (2, 3):
        for c in library.curve_library(g).values():
            assert homology_rep(c.twist) == zlin.transvection(c.homology)


# compose / invert / apply

def test_compose_matches_substitution_oracle():
    g = 2
    f, h = T("c1", g), T("c2", g)
    fg = compose(f, h)
    for k in range(2 * g):
        step = oracles.substitute_then_reduce(f.images, h.images[k])
        assert equal_elements(fg.image(k + 1), Word._raw(step, g))


def test_compose_identity_and_inverse():
    g = 2
    f = word_product(["c1", "c3", "c2", "c4"], g)
    I = MappingClass.identity(g)
    assert equal(compose(f, I), f)
    assert is_identity(compose(f, invert(f)))
    assert is_identity(compose(invert(f), f))
    assert is_identity(invert(I))


def random_twist_word(rng, g, n):
    names = list(library.curve_library(g))
    maps = []
    for _ in range(n):
        m = T(rng.choice(names), g)
        maps.append(m if rng.random() < 0.5 else invert(m))
    return compose_all(maps, g)


def test_invert_reverses_composition():
    rng = random.Random(1)
    for _ in range(20):
        f, h = random_twist_word(rng, 2, 3), random_twist_word(rng, 2, 3)
        assert equal(invert(compose(f, h)), compose(invert(h), invert(f)))


def test_inverse_of_base_twist_is_left_twist():
    for g in (2, 3):
        for c in library.curve_library(g).values():
            assert is_identity(compose(c.twist, invert(c.twist)))
            assert homology_rep(invert(c.twist)) == zlin.symplectic_inverse(
                zlin.transvection(c.homology))


def test_invert_recovers_untracked_inverse():
    g = 2
    f = word_product(["c1", "c2", "c3"], g)
    bare = MappingClass(g, f.images)
    assert not bare.has_known_inverse
    assert is_identity(compose(bare, invert(bare)))


def test_apply_laws():
    rng = random.Random(2)
    g = 2
    for _ in range(20):
        f, h = random_twist_word(rng, g, 2), random_twist_word(rng, g, 2)
        w = Word._raw(oracles.random_word(rng, g, 6), g)
        assert equal_elements(apply(compose(f, h), w), apply(f, apply(h, w)))
        assert equal_elements(apply(MappingClass.identity(g), w), w)
    # a generator not meeting c1 = a1 is fixed
    assert equal_elements(apply(T("c1", g), Word.parse("a2", g)), Word.parse("a2", g))


def test_invalid_endomorphism_rejected():
    g = 2
    bad = MappingClass(g, [(1, 1), (2,), (3,), (4,)])
    assert not validate_automorphism(bad)
    assert validate_automorphism(MappingClass.identity(g))
    with pytest.raises(MappingClassError):
        invert(bad)


def test_length_ceiling():
    old = set_length_ceiling(50)
    try:
        f = word_product(["c1", "c2"] * 3, 2)
        with pytest.raises(WordGrowthError):
            for _ in range(10):
                f = compose(f, f)
    finally:
        set_length_ceiling(old)


# point-push

def test_point_push_examples():
    g = 2
    assert is_identity(point_push(Word.identity(g)))
    gm = Word.parse("a1b2A2", g)
    assert homology_rep(point_push(gm)) == zlin.identity(4)
    P = point_push(gm)
    c = base_twist("c3", g)
    conj = compose_all([P, c.twist, invert(P)], g)
    assert equal(conj, transport_twist(P, c).twist)


def test_point_push_antihomomorphism():
    rng = random.Random(3)
    g = 2
    for _ in range(50):
        u = Word._raw(oracles.random_word(rng, g, rng.randint(0, 6)), g)
        v = Word._raw(oracles.random_word(rng, g, rng.randint(0, 6)), g)
        assert equal(point_push(u * v), compose(point_push(v), point_push(u)))


# transport

def test_transport_examples():
    g = 2
    c = base_twist("c4", g)
    assert transport_twist(MappingClass.identity(g), c) is c
    assert transport_twist(c.twist, c) is c
    moved = transport_twist(point_push(library.gamma(g)), c)
    assert moved.homology == c.homology
    assert not equal_elements(moved.based_word, c.based_word)
    assert moved.separating == c.separating


def test_transport_is_conjugation():
    rng = random.Random(4)
    for g in (2, 3):
        for _ in range(6):
            f = random_twist_word(rng, g, 3)
            for c in library.curve_library(g).values():
                moved = transport_twist(f, c)
                assert equal(moved.twist, compose_all([f, c.twist, invert(f)], g))
                assert list(moved.homology) == zlin.mat_vec(homology_rep(f), c.homology)
                assert equal_elements(moved.based_word, apply(f, c.based_word)) or \
                    moved is c


def test_curve_homology_defaults_to_abelianization():
    g = 2
    c = Curve("x", Word.parse("a1b2", g), T("c1", g))
    assert c.homology == (1, 0, 0, 1)
