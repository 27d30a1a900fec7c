"""Words in the closed surface group and its free cover.

Generators are numbered ``1 .. 2g`` in the order ``a1, b1, a2, b2, ...``; a
letter is a nonzero integer whose sign is the exponent.  The surface group is

    pi_1(Sigma_g) = < a1, b1, ..., ag, bg | [a1, b1] ... [ag, bg] >

with ``[x, y] = x y x^-1 y^-1``.  For ``g >= 2`` this one-relator presentation
is C'(1/6) (pieces are single letters), so Dehn's algorithm decides the word
problem.
"""
from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from functools import cache

Letters = tuple[int, ...]

_TOKEN = re.compile(r"([abAB])(\d+)")


class WordError(ValueError):
    pass


def letter_name(x: int) -> str:
    i = (abs(x) + 1) // 2
    ch = "a" if abs(x) % 2 == 1 else "b"
    if x < 0:
        ch = ch.upper()
    return f"{ch}{i}"


def gen_a(i: int) -> int:
    return 2 * i - 1


def gen_b(i: int) -> int:
    return 2 * i


def free_reduce_letters(letters: Iterable[int]) -> Letters:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(-x for x in reversed(letters))


def cyclic_reduce_letters(letters: Sequence[int]) -> Letters:
    w = free_reduce_letters(letters)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


class Word:
    """An immutable, freely reduced word over the surface-group generators."""

    __slots__ = ("genus", "letters")

    def __init__(self, letters: Iterable[int], genus: int):
        letters = free_reduce_letters(letters)
        for x in letters:
            if x == 0 or abs(x) > 2 * genus:
                raise WordError(f"letter {x} out of range for genus {genus}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "genus", genus)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def _raw(cls, letters: Letters, genus: int) -> Word:
        # trusted constructor: letters already reduced and in range
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "genus", genus)
        return w

    @classmethod
    def parse(cls, text: str, genus: int) -> Word:
        text = text.replace(" ", "").replace("*", "").replace(".", "")
        pos = 0
        letters = []
        for m in _TOKEN.finditer(text):
            if m.start() != pos:
                raise WordError(f"cannot parse word {text!r} at offset {pos}")
            ch, idx = m.group(1), int(m.group(2))
            if not 1 <= idx <= genus:
                raise WordError(f"generator index {idx} out of range for genus {genus}")
            x = gen_a(idx) if ch.lower() == "a" else gen_b(idx)
            letters.append(-x if ch.isupper() else x)
            pos = m.end()
        if pos != len(text):
            raise WordError(f"cannot parse word {text!r} at offset {pos}")
        return cls(letters, genus)

    @classmethod
    def identity(cls, genus: int) -> Word:
        return cls._raw((), genus)

    def __str__(self) -> str:
        return "".join(letter_name(x) for x in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r}, g={self.genus})"

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        # literal equality in the free group; use equal_elements for pi_1
        return isinstance(other, Word) and self.genus == other.genus and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.letters, self.genus))

    def __mul__(self, other: Word) -> Word:
        _check_genus(self, other)
        return Word._raw(free_reduce_letters(self.letters + other.letters), self.genus)

    def inverse(self) -> Word:
        return Word._raw(invert_letters(self.letters), self.genus)

    def __invert__(self) -> Word:
        return self.inverse()

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n), self.genus)


def _check_genus(u: Word, v: Word) -> None:
    if u.genus != v.genus:
        raise WordError(f"genus mismatch: {u.genus} vs {v.genus}")


def free_reduce(w: Word) -> Word:
    return Word._raw(free_reduce_letters(w.letters), w.genus)


class SurfacePresentation:
    """The standard one-relator presentation together with its Dehn table."""

    def __init__(self, genus: int):
        if genus < 2:
            raise WordError("the surface presentation needs genus >= 2")
        self.genus = genus
        rel = []
        for i in range(1, genus + 1):
            rel += [gen_a(i), gen_b(i), -gen_a(i), -gen_b(i)]
        self.relator = Word._raw(tuple(rel), genus)
        n = len(rel)
        half = n // 2
        table: dict[Letters, Letters] = {}
        for r in (tuple(rel), invert_letters(rel)):
            for s in range(n):
                rot = r[s:] + r[:s]
                key, rest = rot[: half + 1], rot[half + 1:]
                # key * rest == 1, so key == rest^-1
                table[key] = invert_letters(rest)
        self._table = table
        self._keylen = half + 1

    def is_cyclic_rotation_of_relator(self, letters: Sequence[int]) -> bool:
        w = cyclic_reduce_letters(letters)
        r = self.relator.letters
        if len(w) != len(r):
            return False
        doubled = r + r
        return any(doubled[s:s + len(r)] == w for s in range(len(r)))

    def normalize_letters(self, letters: Iterable[int]) -> Letters:
        """Free reduction interleaved with Dehn replacements."""
        table, k = self._table, self._keylen
        pending = list(letters)
        pending.reverse()
        out: list[int] = []
        while pending:
            x = pending.pop()
            if out and out[-1] == -x:
                out.pop()
                continue
            out.append(x)
            if len(out) >= k:
                repl = table.get(tuple(out[-k:]))
                if repl is not None:
                    del out[-k:]
                    pending.extend(reversed(repl))
        return tuple(out)


@cache
def presentation(genus: int) -> SurfacePresentation:
    return SurfacePresentation(genus)


def dehn_normalize(w: Word, P: SurfacePresentation | None = None) -> Word:
    """Shorten ``w`` by Dehn's algorithm; the result is empty iff ``w == 1`` in pi_1."""
    P = P or presentation(w.genus)
    if P.genus != w.genus:
        raise WordError("genus mismatch between word and presentation")
    return Word._raw(P.normalize_letters(w.letters), w.genus)


def is_trivial(w: Word) -> bool:
    return not presentation(w.genus).normalize_letters(w.letters)


def equal_elements(u: Word, v: Word, P: SurfacePresentation | None = None) -> bool:
    _check_genus(u, v)
    P = P or presentation(u.genus)
    return not P.normalize_letters(u.letters + invert_letters(v.letters))


def abelianize(w: Word) -> tuple[int, ...]:
    v = [0] * (2 * w.genus)
    for x in w.letters:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def algebraic_intersection(u: Sequence[int], v: Sequence[int]) -> int:
    """Standard symplectic pairing with <a_i, b_i> = +1."""
    if len(u) != len(v) or len(u) % 2:
        raise ValueError("vectors must have equal even length")
    return sum(u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i] for i in range(len(u) // 2))
