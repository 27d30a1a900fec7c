"""Mapping classes of the once-marked surface as automorphisms of pi_1.

By Dehn-Nielsen-Baer, Mod(Sigma_{g,1}) is the group of orientation-preserving
automorphisms of pi_1(Sigma_g, p).  A :class:`MappingClass` stores the image of
every generator; equality is decided generator by generator with the word
problem.  Composition is ``(f * g)(x) = f(g(x))``.
"""
from __future__ import annotations

import hashlib
from collections.abc import Sequence
from dataclasses import dataclass

from . import zlin
from .words import (
    Letters,
    Word,
    WordError,
    abelianize,
    algebraic_intersection,
    invert_letters,
    presentation,
)

DEFAULT_LENGTH_CEILING = 10**6


class MappingClassError(ValueError):
    pass


class WordGrowthError(MappingClassError):
    """Raised when an intermediate word exceeds the configured length ceiling."""


_length_ceiling = DEFAULT_LENGTH_CEILING


def set_length_ceiling(n: int) -> int:
    global _length_ceiling
    old, _length_ceiling = _length_ceiling, n
    return old


def _substitute(images: Sequence[Letters], letters: Sequence[int], genus: int) -> Letters:
    buf: list[int] = []
    for x in letters:
        img = images[x - 1] if x > 0 else _inv_cache(images, -x - 1)
        buf.extend(img)
        if len(buf) > _length_ceiling:
            raise WordGrowthError(f"word length exceeded {_length_ceiling} letters")
    return presentation(genus).normalize_letters(buf)


def _inv_cache(images, i):
    return invert_letters(images[i])


class MappingClass:
    __slots__ = ("_hom", "_inverse", "_key", "genus", "images")

    def __init__(self, genus: int, images: Sequence[Sequence[int]], inverse_images=None,
                 *, normalize: bool = True):
        if len(images) != 2 * genus:
            raise MappingClassError(f"need {2 * genus} generator images, got {len(images)}")
        P = presentation(genus)
        if normalize:
            imgs = tuple(P.normalize_letters(im) for im in images)
        else:
            imgs = tuple(tuple(im) for im in images)
        for im in imgs:
            if any(x == 0 or abs(x) > 2 * genus for x in im):
                raise MappingClassError("image letter out of range")
        self.genus = genus
        self.images: tuple[Letters, ...] = imgs
        self._inverse = None
        if inverse_images is not None:
            inv = MappingClass.__new__(MappingClass)
            inv.genus = genus
            inv.images = tuple(P.normalize_letters(im) for im in inverse_images)
            inv._inverse = self
            inv._hom = None
            inv._key = None
            self._inverse = inv
        self._hom = None
        self._key = None

    @classmethod
    def identity(cls, genus: int) -> MappingClass:
        ims = [(k,) for k in range(1, 2 * genus + 1)]
        return cls(genus, ims, ims, normalize=False)

    @classmethod
    def from_strings(cls, genus: int, images: Sequence[str]) -> MappingClass:
        return cls(genus, [Word.parse(s, genus).letters for s in images])

    def image(self, k: int) -> Word:
        return Word._raw(self.images[k - 1], self.genus)

    def to_strings(self) -> list[str]:
        return [str(self.image(k)) for k in range(1, 2 * self.genus + 1)]

    def __repr__(self) -> str:
        return f"MappingClass(g={self.genus}, {self.to_strings()})"

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __mul__(self, other: MappingClass) -> MappingClass:
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, MappingClass) and equal(self, other)

    def __hash__(self) -> int:
        return hash(self.genus)

    def __pow__(self, n: int) -> MappingClass:
        result = MappingClass.identity(self.genus)
        base = self if n >= 0 else invert(self)
        for _ in range(abs(n)):
            result = compose(result, base)
        return result

    @property
    def has_known_inverse(self) -> bool:
        return self._inverse is not None


def _check(f: MappingClass, g: MappingClass) -> None:
    if f.genus != g.genus:
        raise MappingClassError(f"genus mismatch: {f.genus} vs {g.genus}")


def apply(f: MappingClass, w: Word) -> Word:
    if w.genus != f.genus:
        raise WordError("genus mismatch")
    return Word._raw(_substitute(f.images, w.letters, f.genus), f.genus)


def compose(f: MappingClass, g: MappingClass) -> MappingClass:
    """The automorphism ``f o g`` (apply ``g`` first)."""
    _check(f, g)
    h = MappingClass.__new__(MappingClass)
    h.genus = f.genus
    h.images = tuple(_substitute(f.images, im, f.genus) for im in g.images)
    h._hom = None
    h._key = None
    h._inverse = None
    if f._inverse is not None and g._inverse is not None:
        fi, gi = f._inverse, g._inverse
        hi = MappingClass.__new__(MappingClass)
        hi.genus = f.genus
        hi.images = tuple(_substitute(gi.images, im, f.genus) for im in fi.images)
        hi._hom = None
        hi._key = None
        hi._inverse = h
        h._inverse = hi
    return h


def compose_all(maps: Sequence[MappingClass], genus: int) -> MappingClass:
    """``maps[0] o maps[1] o ... o maps[-1]``, evaluated right to left."""
    result = MappingClass.identity(genus)
    for f in reversed(maps):
        result = compose(f, result)
    return result


def invert(f: MappingClass) -> MappingClass:
    if f._inverse is not None:
        return f._inverse
    inv_images = _nielsen_inverse(f)
    if inv_images is None:
        raise MappingClassError("no inverse found; input is probably not an automorphism")
    inv = MappingClass(f.genus, inv_images)
    inv._inverse = f
    f._inverse = inv
    if not equal(compose(f, inv), MappingClass.identity(f.genus)):
        f._inverse = None
        raise MappingClassError("Nielsen inverse failed verification")
    return inv


def _nielsen_inverse(f: MappingClass, max_steps: int = 10000):
    """Invert by Nielsen reduction of the image tuple in the free group.

    Tracks each current element as a word in the original generators; succeeds
    when the images reduce to a signed permutation of the basis.
    """
    from .words import free_reduce_letters

    n = 2 * f.genus
    cur = [list(im) for im in f.images]
    track = [[k + 1] for k in range(n)]  # cur[i] == f(track[i])
    for _ in range(max_steps):
        if all(len(c) == 1 for c in cur):
            break
        best = None
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for sj in (1, -1):
                    cj = cur[j] if sj == 1 else list(invert_letters(cur[j]))
                    for side in (0, 1):
                        cand = free_reduce_letters(cur[i] + cj if side == 0 else cj + cur[i])
                        gain = len(cur[i]) - len(cand)
                        if gain > 0 and (best is None or gain > best[0]):
                            best = (gain, i, j, sj, side, cand)
        if best is None:
            return None
        _, i, j, sj, side, cand = best
        tj = track[j] if sj == 1 else list(invert_letters(track[j]))
        track[i] = list(free_reduce_letters(track[i] + tj if side == 0 else tj + track[i]))
        cur[i] = list(cand)
    else:
        return None
    if any(len(c) != 1 for c in cur):
        return None
    inv: list = [None] * n
    for c, t in zip(cur, track):
        x = c[0]
        # f(t) = x  =>  f^-1(x) = t
        if x > 0:
            inv[x - 1] = tuple(t)
        else:
            inv[-x - 1] = invert_letters(t)
    if any(v is None for v in inv):
        return None
    return inv


def equal(f: MappingClass, g: MappingClass) -> bool:
    _check(f, g)
    if f is g or f.images == g.images:
        return True
    P = presentation(f.genus)
    return all(not P.normalize_letters(u + invert_letters(v)) for u, v in zip(f.images, g.images))


def is_identity(f: MappingClass) -> bool:
    return equal(f, MappingClass.identity(f.genus))


def point_push(gamma: Word) -> MappingClass:
    """P_gamma: the inner automorphism x -> gamma^-1 x gamma.

    gamma -> P_gamma is an antihomomorphism: P_{uv} = P_v o P_u.
    """
    g = gamma.genus
    c = gamma.letters
    ci = invert_letters(c)
    ims = [ci + (k,) + c for k in range(1, 2 * g + 1)]
    inv = [c + (k,) + ci for k in range(1, 2 * g + 1)]
    return MappingClass(g, ims, inv)


def inner(w: Word) -> MappingClass:
    """x -> w x w^-1, i.e. P_{w^-1}."""
    return point_push(w.inverse())


def homology_rep(f: MappingClass) -> list[list[int]]:
    """Integer matrix of f_* on H_1; column k is the abelianized image of generator k."""
    if f._hom is None:
        cols = [abelianize(f.image(k)) for k in range(1, 2 * f.genus + 1)]
        n = 2 * f.genus
        f._hom = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return [list(r) for r in f._hom]


def validate_automorphism(f: MappingClass) -> bool:
    """Orientation-preserving automorphism certificate.

    Accepts when the relator's image is a cyclic rotation of the relator in the
    free group.  Images stored after Dehn shortening need not be a free-level
    lift, so the fallback accepts when the relator's image is trivial in pi_1 and
    f_* is symplectic (a degree-one endomorphism of a Hopfian surface group is an
    automorphism).
    """
    if not zlin.symplectic_check(homology_rep(f)):
        return False
    P = presentation(f.genus)
    buf: list[int] = []
    for x in P.relator.letters:
        buf.extend(f.images[x - 1] if x > 0 else invert_letters(f.images[-x - 1]))
    if P.is_cyclic_rotation_of_relator(buf):
        return True
    return not P.normalize_letters(buf)


def fixes(f: MappingClass, w: Word) -> bool:
    P = presentation(w.genus)
    return not P.normalize_letters(apply(f, w).letters + invert_letters(w.letters))


@dataclass(frozen=True)
class Separating:
    """Separating type of a simple closed curve: ``genus`` is None when nonseparating.

    For separating curves ``genus`` is the genus of the side not containing
    the marked point.
    """

    genus: int | None = None

    @property
    def is_separating(self) -> bool:
        return self.genus is not None

    def to_json(self):
        return "nonseparating" if self.genus is None else {"separating": self.genus}

    @classmethod
    def from_json(cls, data) -> Separating:
        if data == "nonseparating":
            return cls(None)
        return cls(int(data["separating"]))


NONSEPARATING = Separating(None)


class Curve:
    """A simple closed curve in Sigma_{g,1} together with its right-handed twist."""

    __slots__ = (
        "attested_simple",
        "based_word",
        "homology",
        "hyperelliptic",
        "name",
        "separating",
        "twist",
    )

    def __init__(self, name: str, based_word: Word, twist: MappingClass,
                 separating: Separating = NONSEPARATING, attested_simple: bool = True,
                 hyperelliptic: bool = False, homology: tuple[int, ...] | None = None):
        self.name = name
        self.based_word = based_word
        self.twist = twist
        self.separating = separating
        self.attested_simple = attested_simple
        self.hyperelliptic = hyperelliptic
        self.homology = abelianize(based_word) if homology is None else tuple(homology)

    @property
    def genus(self) -> int:
        return self.twist.genus

    def __repr__(self) -> str:
        return f"Curve({self.name!r}, {self.based_word})"

    def same_curve(self, other: Curve) -> bool:
        """Isotopy in Sigma_{g,1}: T_a == T_b iff a == b."""
        return equal(self.twist, other.twist)

    def renamed(self, name: str) -> Curve:
        return Curve(name, self.based_word, self.twist, self.separating,
                     self.attested_simple, self.hyperelliptic, self.homology)


def curve_digest(c: Curve) -> str:
    return hashlib.sha1(repr(c.twist.images).encode()).hexdigest()[:8]


def transport_twist(f: MappingClass, c: Curve, hyperelliptic: bool = False) -> Curve:
    """The curve ``f(c)`` with twist ``f T_c f^-1``.

    Returns ``c`` itself when ``f`` fixes the curve; otherwise the result is
    named ``<root>~<digest>``.  Hyperelliptic attestation survives only when
    both ``c`` and ``f`` are attested.
    """
    _check(f, c.twist)
    tw = compose(compose(f, c.twist), invert(f))
    if equal(tw, c.twist):
        return c
    hom = tuple(zlin.mat_vec(homology_rep(f), c.homology))
    new = Curve(c.name, apply(f, c.based_word), tw, c.separating, c.attested_simple,
                hyperelliptic and c.hyperelliptic, hom)
    new.name = f"{c.name.split('~', 1)[0]}~{curve_digest(new)}"
    return new


def twist_matches_transvection(c: Curve) -> bool:
    return homology_rep(c.twist) == zlin.transvection(c.homology)


__all__ = [
    "NONSEPARATING",
    "Curve",
    "MappingClass",
    "MappingClassError",
    "Separating",
    "WordGrowthError",
    "algebraic_intersection",
    "apply",
    "compose",
    "compose_all",
    "curve_digest",
    "equal",
    "fixes",
    "homology_rep",
    "inner",
    "invert",
    "is_identity",
    "point_push",
    "set_length_ceiling",
    "transport_twist",
    "twist_matches_transvection",
    "validate_automorphism",
]
