"""The curated curve library: chain curves and their boundary curves.

Curves of the genus-g chain (``a_i, b_i`` are the standard generators):

* ``c1 = a1``, ``c2 = b1``, ``c_{2i+1} = e_i``, ``c_{2i+2} = b_{i+1}``, ``c_{2g+1} = a_g``
* ``e_i`` joins handles ``i`` and ``i+1`` (homology ``a_i + a_{i+1}``).  Two band
  choices exist; they alternate with ``i`` so consecutive ``e_i`` are disjoint.
* ``c0 = a2`` meets only ``c4``.
* ``c{2g+1}'`` is ``a_g`` pushed across the marked point; with ``c_{2g}`` and
  ``c_{2g+1}`` it forms a 3-chain bounding ``d3`` and ``d``.
* ``gamma_2g`` is ``c_{2g}`` pushed back along ``gamma``.
* ``d`` bounds a disk around the marked point; its twist is trivial.
* ``d3`` cuts off handles ``1 .. g-1``.
* ``d1 = a2`` and ``d2`` bound the 3-chain ``c1, c2, c3``.

Each formula is accepted only because the relation suite in the tests passes.
"""
from __future__ import annotations

from functools import cache

from .mcg import (
    NONSEPARATING,
    Curve,
    MappingClass,
    Separating,
    _nielsen_inverse,
    compose,
    invert,
    point_push,
)
from .words import Word, WordError


class UnknownCurveError(KeyError):
    pass


def _w(text: str, g: int) -> Word:
    return Word.parse(text, g)


def _gens(g: int) -> list[str]:
    out = []
    for i in range(1, g + 1):
        out += [f"a{i}", f"b{i}"]
    return out


def _free_automorphism(g: int, images: list[str]) -> MappingClass:
    """Build from free-level images, computing the inverse by Nielsen reduction."""
    raw = MappingClass.__new__(MappingClass)
    raw.genus = g
    raw.images = tuple(_w(s, g).letters for s in images)
    raw._inverse = raw._hom = raw._key = None
    inv = _nielsen_inverse(raw)
    if inv is None:
        raise WordError("library formula is not a free-group automorphism")
    return MappingClass(g, raw.images, inv)


def _commutator_product(g: int, lo: int, hi: int) -> str:
    return "".join(f"a{i}b{i}A{i}B{i}" for i in range(lo, hi + 1))


def _inverse_text(text: str, g: int) -> str:
    return str(_w(text, g).inverse())


def twist_a(g: int, i: int) -> MappingClass:
    ims = _gens(g)
    ims[2 * i - 1] = f"b{i}A{i}"
    inv = _gens(g)
    inv[2 * i - 1] = f"b{i}a{i}"
    return MappingClass(g, [_w(s, g).letters for s in ims], [_w(s, g).letters for s in inv])


def twist_b(g: int, i: int) -> MappingClass:
    ims = _gens(g)
    ims[2 * i - 2] = f"a{i}b{i}"
    inv = _gens(g)
    inv[2 * i - 2] = f"a{i}B{i}"
    return MappingClass(g, [_w(s, g).letters for s in ims], [_w(s, g).letters for s in inv])


def twist_e(g: int, i: int) -> MappingClass:
    j = i + 1
    ims = _gens(g)
    if i % 2:
        ims[2 * i - 1] = f"b{i}A{i}B{i}a{j}b{j}A{j}B{j}A{j}b{i}"
        ims[2 * j - 1] = f"A{j}b{i}A{i}B{i}a{j}b{j}A{j}"
    else:
        ims[2 * i - 2] = f"a{i}a{j}a{i}A{j}A{i}"
        ims[2 * i - 1] = f"a{i}a{j}A{i}A{j}b{i}A{j}A{i}"
        ims[2 * j - 2] = f"a{i}a{j}A{i}"
        ims[2 * j - 1] = f"b{j}A{j}A{i}"
    return _free_automorphism(g, ims)


def twist_d2(g: int) -> MappingClass:
    z = _commutator_product(g, 3, g)
    zi = _inverse_text(z, g) if z else ""
    ims = _gens(g)
    ims[0] = f"{zi}A2a1a2{z}"
    ims[1] = f"{zi}A2b1a2{z}"
    ims[3] = f"A2{zi}b2"
    return _free_automorphism(g, ims)


def twist_d3(g: int) -> MappingClass:
    s = _commutator_product(g, 1, g - 1)
    si = _inverse_text(s, g)
    ims = _gens(g)
    inv = _gens(g)
    for k in range(2 * (g - 1)):
        x = ims[k]
        ims[k] = f"{s}{x}{si}"
        inv[k] = f"{si}{x}{s}"
    return MappingClass(g, [_w(t, g).letters for t in ims], [_w(t, g).letters for t in inv])


def gamma(g: int) -> Word:
    """The loop dual to ``c_{2g}`` used for both section families."""
    return _w(f"a{g}", g)


def gamma_2g(g: int) -> Word:
    """``gamma_2g = T_{c_2g}(gamma) gamma^-1``."""
    return _w(f"a{g}b{g}A{g}", g)


def chain_names(g: int, length: int | None = None) -> list[str]:
    n = 2 * g if length is None else length
    return [f"c{i}" for i in range(1, n + 1)]


def cprime_name(g: int) -> str:
    return f"c{2 * g + 1}'"


@cache
def curve_library(g: int) -> dict[str, Curve]:
    if g < 2:
        raise WordError("genus must be at least 2")
    lib: dict[str, Curve] = {}

    def add(name, word, twist, sep=NONSEPARATING, hyper=False):
        lib[name] = Curve(name, _w(word, g), twist, sep, True, hyper)

    add("c1", "a1", twist_a(g, 1), hyper=True)
    add("c2", "b1", twist_b(g, 1), hyper=True)
    for i in range(1, g):
        add(f"c{2 * i + 1}", f"a{i}a{i + 1}", twist_e(g, i), hyper=True)
        add(f"c{2 * i + 2}", f"b{i + 1}", twist_b(g, i + 1), hyper=True)
    ta_g = twist_a(g, g)
    add(f"c{2 * g + 1}", f"a{g}", ta_g, hyper=True)
    add("c0", "a2", twist_a(g, 2))
    # a_g pushed across the marked point; equal to c_{2g+1} once the point is forgotten
    add(cprime_name(g), f"a{g}", compose(point_push(gamma(g)), ta_g), hyper=True)
    add("gamma", f"a{g}", ta_g, hyper=True)
    # gamma_2g = P_gamma^-1(c_{2g})
    push = point_push(gamma(g))
    add("gamma_2g", f"a{g}b{g}A{g}",
        compose(compose(invert(push), lib[f"c{2 * g}"].twist), push))
    add("d", "", MappingClass.identity(g), Separating(0), hyper=True)
    add("d1", "a2", twist_a(g, 2))
    add("d2", "a2", twist_d2(g))
    add("d3", _commutator_product(g, 1, g - 1), twist_d3(g), Separating(g - 1))
    return lib


def library_names(g: int) -> list[str]:
    return list(curve_library(g))


def base_twist(name: str, g: int) -> Curve:
    lib = curve_library(g)
    key = name.replace("′", "'")
    if key == "c'":
        key = cprime_name(g)
    if key not in lib:
        raise UnknownCurveError(f"unknown library curve {name!r} at genus {g}")
    return lib[key]
