"""Positive factorizations, Hurwitz moves, fiber sums and the example builders.

Letters are stored left to right as written, ``T_{l_r} ... T_{l_1}``: position
0 holds ``l_r`` and the last position holds ``l_1``, which acts first.
Move index ``i`` (1-based from the right) is position ``r - i``.
"""
from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace

from . import library
from .mcg import (
    Curve,
    MappingClass,
    MappingClassError,
    Separating,
    compose_all,
    equal,
    invert,
    is_identity,
    transport_twist,
)
from .words import Word, WordError


class FactorizationError(ValueError):
    pass


class ProductMismatch(FactorizationError):
    pass


transport = transport_twist


@dataclass(frozen=True)
class PositiveFactorization:
    genus: int
    letters: tuple[Curve, ...]
    marked: bool = True
    boundary_exponent: int | None = None
    split_index: int | None = None

    def __post_init__(self):
        for c in self.letters:
            if c.genus != self.genus:
                raise FactorizationError("letter genus mismatch")
        if self.split_index is not None and not 0 <= self.split_index <= len(self.letters):
            raise FactorizationError("split index out of range")

    def __len__(self) -> int:
        return len(self.letters)

    def names(self) -> list[str]:
        return [c.name for c in self.letters]

    @property
    def prefix(self) -> tuple[Curve, ...]:
        """The subword ``l_{r1} ... l_1`` (rightmost ``split_index`` letters)."""
        r1 = self.split_index or 0
        return self.letters[len(self.letters) - r1:]

    @property
    def suffix(self) -> tuple[Curve, ...]:
        r1 = self.split_index or 0
        return self.letters[: len(self.letters) - r1]

    def with_letters(self, letters: Sequence[Curve]) -> PositiveFactorization:
        return replace(self, letters=tuple(letters))


def from_names(g: int, names: Iterable[str], boundary_exponent: int | None = None,
               split_index: int | None = None) -> PositiveFactorization:
    return PositiveFactorization(g, tuple(library.base_twist(n, g) for n in names),
                                 True, boundary_exponent, split_index)


def product(F: PositiveFactorization | Sequence[Curve], genus: int | None = None) -> MappingClass:
    if isinstance(F, PositiveFactorization):
        letters, genus = F.letters, F.genus
    else:
        letters = list(F)
        if genus is None:
            if not letters:
                raise FactorizationError("genus needed for an empty letter list")
            genus = letters[0].genus
    return compose_all([c.twist for c in letters], genus)


def is_identity_factorization(F: PositiveFactorization) -> bool:
    return is_identity(product(F))


def _pos(F: PositiveFactorization, i: int) -> int:
    r = len(F.letters)
    if not 1 <= i < r:
        raise IndexError(f"elementary transformation index {i} out of range 1..{r - 1}")
    return r - (i + 1)


def elementary_transformation(F: PositiveFactorization, i: int,
                              direction: int = 1) -> PositiveFactorization:
    """Hurwitz move at move index ``i``.

    ``+1``: ``T_{l_{i+1}} T_{l_i} -> T_{T_{l_{i+1}}(l_i)} T_{l_{i+1}}``;
    ``-1`` is its inverse.
    """
    p = _pos(F, i)
    x, y = F.letters[p], F.letters[p + 1]
    if direction == 1:
        new = (transport(x.twist, y, x.hyperelliptic), x)
    elif direction == -1:
        new = (y, transport(invert(y.twist), x, y.hyperelliptic))
    else:
        raise ValueError("direction must be +1 or -1")
    letters = list(F.letters)
    letters[p:p + 2] = new
    return F.with_letters(letters)


def global_conjugate(F: PositiveFactorization, f: MappingClass,
                     hyperelliptic: bool = False) -> PositiveFactorization:
    return F.with_letters([transport(f, c, hyperelliptic) for c in F.letters])


@dataclass(frozen=True)
class Move:
    kind: str  # "elem" or "conj"
    index: int = 0
    direction: int = 1
    conjugator: str = ""

    def to_json(self):
        if self.kind == "elem":
            return {"elem": self.index, "dir": self.direction}
        return {"conj": self.conjugator}

    @classmethod
    def from_json(cls, d) -> Move:
        if "elem" in d:
            return cls("elem", int(d["elem"]), int(d["dir"]))
        return cls("conj", conjugator=str(d["conj"]))


def replay(F: PositiveFactorization, path: Sequence[Move],
           conjugators: dict[str, MappingClass] | None = None) -> PositiveFactorization:
    for m in path:
        if m.kind == "elem":
            F = elementary_transformation(F, m.index, m.direction)
        else:
            if not conjugators or m.conjugator not in conjugators:
                raise FactorizationError(f"unknown conjugator {m.conjugator!r}")
            F = global_conjugate(F, conjugators[m.conjugator])
    return F


def fiber_sum(F1: PositiveFactorization, F2: PositiveFactorization,
              psi: MappingClass | None = None, check: bool = True) -> PositiveFactorization:
    """``F1`` becomes the prefix ``l_1 .. l_{r1}``; ``psi(F2)`` follows it."""
    if F1.genus != F2.genus:
        raise FactorizationError("genus mismatch")
    if check and not (is_identity_factorization(F1) and is_identity_factorization(F2)):
        raise ProductMismatch("fiber sum summands must be identity factorizations")
    second = F2 if psi is None else global_conjugate(F2, psi)
    ledger = None
    if F1.boundary_exponent is not None and F2.boundary_exponent is not None:
        ledger = F1.boundary_exponent + F2.boundary_exponent
    if not F2.letters:
        ledger = F1.boundary_exponent
    if not F1.letters:
        ledger = F2.boundary_exponent
    return PositiveFactorization(F1.genus, second.letters + F1.letters, True, ledger,
                                 len(F1.letters))


def substitute(F: PositiveFactorization, start: int, length: int,
               replacement: Sequence[Curve], exponent_delta: int = 0) -> PositiveFactorization:
    """Replace written positions ``start .. start+length-1`` by ``replacement``."""
    if not 0 <= start <= start + length <= len(F.letters):
        raise IndexError("window out of range")
    window = F.letters[start:start + length]
    if not equal(product(window, F.genus), product(replacement, F.genus)):
        raise ProductMismatch("window and replacement have different products")
    letters = F.letters[:start] + tuple(replacement) + F.letters[start + length:]
    ledger = None if F.boundary_exponent is None else F.boundary_exponent + exponent_delta
    return replace(F, letters=letters, boundary_exponent=ledger, split_index=None)


def move_twist_across(F: PositiveFactorization, pos: int,
                      steps: int) -> tuple[PositiveFactorization, list[Move]]:
    """Move the letter at written position ``pos`` by ``steps`` places.

    Moving right across a block ``f`` rewrites the letter as ``f^-1(l)``;
    moving left rewrites it as ``f(l)``.  Equivalent to ``|steps|`` elementary
    transformations, which are returned for replay.
    """
    r = len(F.letters)
    if not 0 <= pos < r or not 0 <= pos + steps < r:
        raise IndexError("move out of range")
    if steps == 0:
        return F, []
    c = F.letters[pos]
    letters = list(F.letters)
    moves: list[Move] = []
    if steps > 0:
        block = F.letters[pos + 1:pos + 1 + steps]
        f = product(block, F.genus)
        hyper = c.hyperelliptic and all(b.hyperelliptic for b in block)
        new = transport(invert(f), c, hyper)
        letters[pos:pos + 1 + steps] = list(block) + [new]
        for k in range(steps):
            # letter at written q moves to q+1: move index r-(q+1) with direction -1
            moves.append(Move("elem", r - (pos + k + 1), -1))
    else:
        block = F.letters[pos + steps:pos]
        f = product(block, F.genus)
        hyper = c.hyperelliptic and all(b.hyperelliptic for b in block)
        new = transport(f, c, hyper)
        letters[pos + steps:pos + 1] = [new] + list(block)
        for k in range(-steps):
            moves.append(Move("elem", r - (pos - k), 1))
    return F.with_letters(letters), moves


def rotate_last_to_front(F: PositiveFactorization, times: int = 1) -> tuple[PositiveFactorization, list[Move]]:
    """Move ``l_1`` across everything else; exact when the product is identity."""
    moves: list[Move] = []
    for _ in range(times):
        c = F.letters[-1]
        F, mv = move_twist_across(F, len(F.letters) - 1, -(len(F.letters) - 1))
        if F.letters[0] is not c:
            if not equal(F.letters[0].twist, c.twist):
                raise ProductMismatch("rotation requires a central product")
            F = F.with_letters((c,) + F.letters[1:])
        moves += mv
    return F, moves


# ---------------------------------------------------------------- builders

def chain_power(g: int, length: int, power: int) -> list[str]:
    return library.chain_names(g, length) * power


def build_chain_power_example(g: int) -> PositiveFactorization:
    """``(T_{c1} ... T_{c2g})^{4g+2} = 1``; ledger 1 (the boundary twist)."""
    if g < 2:
        raise FactorizationError("genus must be at least 2")
    return from_names(g, chain_power(g, 2 * g, 4 * g + 2), boundary_exponent=1)


def build_chain_power_selfsum(g: int) -> PositiveFactorization:
    F = build_chain_power_example(g)
    return fiber_sum(F, F, check=False)


def double_odd_chain_conjugator(g: int) -> MappingClass:
    """``f = (T4 T0)(T3 T4)(T2 T3)(T1 T2)`` with ``f(c1) = c0``."""
    T = {n: library.base_twist(n, g).twist for n in ("c0", "c1", "c2", "c3", "c4")}
    return compose_all([T["c4"], T["c0"], T["c3"], T["c4"], T["c2"], T["c3"],
                        T["c1"], T["c2"]], g)


def build_double_odd_chain_example(g: int) -> PositiveFactorization:
    if g < 2:
        raise FactorizationError("genus must be at least 2")
    names = chain_power(g, 2 * g + 1, 2 * g + 2)
    first = from_names(g, names)
    f = double_odd_chain_conjugator(g)
    second = global_conjugate(first, f)
    return PositiveFactorization(g, first.letters + second.letters, True, None, None)


@dataclass
class DerivationLog:
    genus: int
    steps: list[dict] = field(default_factory=list)

    def add(self, action: str, F: PositiveFactorization, **info) -> None:
        self.steps.append({"step": len(self.steps) + 1, "action": action,
                           "letters": len(F.letters), "ledger": F.boundary_exponent,
                           "product_identity": True, **info})

    def to_json(self):
        return {"genus": self.genus, "steps": self.steps}


def _check_identity(F: PositiveFactorization, what: str) -> None:
    if not is_identity_factorization(F):
        raise ProductMismatch(f"product check failed after {what}")


def build_indecomposable_example(g: int, with_mg_prime: bool = False):
    """Replay the rewriting of ``T_d^2`` down to the ``16g-2`` letter word.

    Returns ``(F, log)``, or ``(F, log, M')`` with the ``16g+8`` letter
    intermediate word when ``with_mg_prime`` is set.
    """
    if g < 2:
        raise FactorizationError("genus must be at least 2")
    log = DerivationLog(g)
    n = 2 * g
    m = 4 * g - 3
    F = from_names(g, chain_power(g, n, 4 * g + 2) + ["d"], boundary_exponent=2)
    _check_identity(F, "start")
    log.add("start: chain power times the boundary twist", F)

    # T_d past c_{2g-1} c_{2g}
    F, mv = move_twist_across(F, len(F) - 1, -2)
    _check_identity(F, "moving d")
    log.add("move d left past the last two chain letters", F, moves=len(mv))

    # chain^4 (PQ)^m P d Q: move each Q_j right past the later P blocks and d
    p_len = n - 2
    base = 4 * n
    total_moves = 0
    for j in range(m, 0, -1):
        q_pos = base + (j - 1) * n + p_len  # start of Q_j
        # blocks to the right of Q_j before the already moved W letters
        span = (m - j) * p_len + p_len + 1
        for t in (1, 0):
            F, mv = move_twist_across(F, q_pos + t, span)
            total_moves += len(mv)
    _check_identity(F, "building W")
    log.add("move c_{2g-1} c_{2g} blocks right: W block built", F, moves=total_moves,
            W_letters=2 * m)

    # substitute P^{4g-2} d by (c' c_{2g} c_{2g+1})^4
    cp = [library.base_twist(library.cprime_name(g), g), library.base_twist(f"c{n}", g),
          library.base_twist(f"c{n + 1}", g)]
    window = (4 * g - 2) * p_len + 1
    F = substitute(F, base, window, cp * 4, exponent_delta=0)
    _check_identity(F, "3-chain substitution")
    log.add("substitute (2g-2)-chain power times d by the 3-chain power", F,
            window=window, replacement=12)

    # (ABC R)^4 ...: move R blocks right past later ABC blocks
    r_len = n - 3
    total_moves = 0
    for j in range(3, 0, -1):
        r_pos = (j - 1) * n + 3
        span = (4 - j) * 3
        for t in range(r_len - 1, -1, -1):
            F, mv = move_twist_across(F, r_pos + t, span)
            total_moves += len(mv)
    _check_identity(F, "building V")
    log.add("move c_4..c_{2g} blocks right past c_1 c_2 c_3 blocks: V block built", F,
            moves=total_moves, V_letters=4 * r_len)

    # rotate the W Q block to the front
    wq = 2 * m + 2
    F, mv = rotate_last_to_front(F, wq)
    _check_identity(F, "rotation")
    log.add("rotate the W c_{2g-1} c_{2g} block to the front", F, moves=len(mv))
    mg_prime = F
    if len(mg_prime) != 16 * g + 8:
        log.add("letter count discrepancy", F, expected=16 * g + 8)

    # (c1 c2 c3)^4 -> d1 d2
    d12 = [library.base_twist("d1", g), library.base_twist("d2", g)]
    F = substitute(F, wq, 12, d12, exponent_delta=0)
    _check_identity(F, "3-chain to boundary substitution")
    log.add("substitute (c1 c2 c3)^4 by d1 d2", F)
    F = replace(F, split_index=12)
    if with_mg_prime:
        return F, log, replace(mg_prime, split_index=12)
    return F, log


def build_mg_prime(g: int) -> PositiveFactorization:
    return build_indecomposable_example(g, with_mg_prime=True)[2]


# ----------------------------------------------------------- serialization

SCHEMA = "lefschetz-factorization/1"


def _is_library_letter(c: Curve, g: int) -> bool:
    lib = library.curve_library(g)
    return c.name in lib and lib[c.name] is c


def curve_to_json(c: Curve) -> dict:
    return {
        "name": c.name,
        "based_word": str(c.based_word),
        "homology": list(c.homology),
        "separating": c.separating.to_json(),
        "attested_simple": c.attested_simple,
        "hyperelliptic": c.hyperelliptic,
        "twist": c.twist.to_strings(),
        "twist_inverse": invert(c.twist).to_strings(),
    }


def curve_from_json(d: dict, g: int) -> Curve:
    if "ref" in d:
        return library.base_twist(d["ref"], g)
    try:
        imgs = [Word.parse(s, g).letters for s in d["twist"]]
        inv = [Word.parse(s, g).letters for s in d["twist_inverse"]]
        tw = MappingClass(g, imgs, inv)
        c = Curve(str(d["name"]), Word.parse(d["based_word"], g), tw,
                  Separating.from_json(d["separating"]), bool(d["attested_simple"]),
                  bool(d.get("hyperelliptic", False)), tuple(int(x) for x in d["homology"]))
    except (KeyError, TypeError, WordError, MappingClassError) as e:
        raise FactorizationError(f"bad curve record: {e}") from e
    if not is_identity(compose_all([tw, invert(tw)], g)):
        raise FactorizationError(f"curve {c.name}: twist_inverse is not the inverse")
    return c


def factorization_to_json(F: PositiveFactorization) -> dict:
    letters = []
    for c in F.letters:
        letters.append({"ref": c.name} if _is_library_letter(c, F.genus) else curve_to_json(c))
    out = {
        "schema": SCHEMA,
        "genus": F.genus,
        "marked": F.marked,
        "boundary_exponent": F.boundary_exponent,
        "split_index": F.split_index,
        "letters": letters,
    }
    return out


def factorization_from_json(d: dict) -> PositiveFactorization:
    try:
        g = int(d["genus"])
        if g < 2:
            raise FactorizationError("genus must be at least 2")
        # repeated records share one Curve object
        cache: dict[str, Curve] = {}
        letters = []
        for rec in d["letters"]:
            key = json.dumps(rec, sort_keys=True)
            if key not in cache:
                cache[key] = curve_from_json(rec, g)
            letters.append(cache[key])
        be = d.get("boundary_exponent")
        si = d.get("split_index")
        return PositiveFactorization(g, tuple(letters), bool(d.get("marked", True)),
                                     None if be is None else int(be),
                                     None if si is None else int(si))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, FactorizationError):
            raise
        raise FactorizationError(f"bad factorization record: {e}") from e


def dumps(obj: dict) -> str:
    """Deterministic JSON text (stable field order, trailing newline)."""
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def save_factorization(F: PositiveFactorization, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(factorization_to_json(F)))


def load_factorization(path) -> PositiveFactorization:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise FactorizationError(f"malformed JSON: {e}") from e
    if not isinstance(data, dict):
        raise FactorizationError("factorization file must hold a JSON object")
    return factorization_from_json(data)


def factorizations_equal(F1: PositiveFactorization, F2: PositiveFactorization) -> bool:
    """Letterwise equality of twists (curves in the marked surface)."""
    return (F1.genus == F2.genus and len(F1) == len(F2)
            and all(a is b or equal(a.twist, b.twist) for a, b in zip(F1.letters, F2.letters)))


# ----------------------------------------------------------- hurwitz search

_PRIME = 10007


def _sl2_mul(X, Y):
    p = _PRIME
    return ((X[0] * Y[0] + X[1] * Y[2]) % p, (X[0] * Y[1] + X[1] * Y[3]) % p,
            (X[2] * Y[0] + X[3] * Y[2]) % p, (X[2] * Y[1] + X[3] * Y[3]) % p)


def _sl2_inv(X):
    p = _PRIME
    return (X[3], (-X[1]) % p, (-X[2]) % p, X[0])


def _random_sl2(rng):
    p = _PRIME
    while True:
        a, b, c = rng.randrange(p), rng.randrange(p), rng.randrange(p)
        if a:
            d = (1 + b * c) * pow(a, -1, p) % p
            return (a, b, c, d)


class SurfaceRep:
    """A representation of pi_1 into SL(2, F_p) built by pairing handles.

    Handles ``2k-1`` and ``2k`` get ``(A, B)`` and ``(B, A)``, so their
    commutators cancel; an unpaired last handle gets ``(M, M^2)``.
    """

    def __init__(self, g: int, seed: int, offset: int = 0):
        import random

        rng = random.Random(seed)
        mats: list = [None] * (2 * g)
        order = [(i + offset) % g for i in range(g)]
        k = 0
        while k + 1 < g:
            h1, h2 = order[k], order[k + 1]
            A, B = _random_sl2(rng), _random_sl2(rng)
            mats[2 * h1], mats[2 * h1 + 1] = A, B
            mats[2 * h2], mats[2 * h2 + 1] = B, A
            k += 2
        if k < g:
            h = order[k]
            M = _random_sl2(rng)
            mats[2 * h], mats[2 * h + 1] = M, _sl2_mul(M, M)
        self.mats = mats
        self.invs = [_sl2_inv(m) for m in mats]

    def word(self, letters) -> tuple:
        X = (1, 0, 0, 1)
        for x in letters:
            X = _sl2_mul(X, self.mats[x - 1] if x > 0 else self.invs[-x - 1])
        return X


class CurveTable:
    """Interns curves up to twist equality; keys come from finite representations."""

    def __init__(self, g: int):
        self.genus = g
        self.reps = [SurfaceRep(g, 1000 + g, 0), SurfaceRep(g, 2000 + g, 1)]
        self.buckets: dict[tuple, list[int]] = {}
        self.curves: list[Curve] = []
        self.exact_checks = 0
        self._moves: dict[tuple[int, int, int], tuple[int, int]] = {}

    def key(self, c: Curve) -> tuple:
        return (c.homology,) + tuple(rep.word(im) for rep in self.reps for im in c.twist.images)

    def intern(self, c: Curve) -> int:
        k = self.key(c)
        ids = self.buckets.setdefault(k, [])
        for i in ids:
            other = self.curves[i]
            if other is c:
                return i
            self.exact_checks += 1
            if equal(other.twist, c.twist):
                return i
        self.curves.append(c)
        ids.append(len(self.curves) - 1)
        return len(self.curves) - 1

    def move(self, direction: int, x: int, y: int) -> tuple[int, int]:
        """Ids after an elementary move on written pair ``(x, y)``."""
        key = (direction, x, y)
        if key not in self._moves:
            cx, cy = self.curves[x], self.curves[y]
            if direction == 1:
                res = (self.intern(transport(cx.twist, cy, cx.hyperelliptic)), x)
            else:
                res = (y, self.intern(transport(invert(cy.twist), cx, cy.hyperelliptic)))
            self._moves[key] = res
        return self._moves[key]


class SearchExhausted(Exception):
    def __init__(self, nodes: int):
        super().__init__(f"hurwitz search exhausted after {nodes} nodes (inconclusive)")
        self.nodes = nodes


@dataclass
class HurwitzPath:
    moves: list[Move]
    nodes: int = 0

    def to_json(self) -> dict:
        return {"moves": [m.to_json() for m in self.moves], "nodes": self.nodes}

    @classmethod
    def from_json(cls, d) -> HurwitzPath:
        return cls([Move.from_json(m) for m in d["moves"]], int(d.get("nodes", 0)))


def _neighbors(table: CurveTable, state: tuple[int, ...]):
    r = len(state)
    for i in range(1, r):
        p = r - (i + 1)
        for direction in (1, -1):
            a, b = table.move(direction, state[p], state[p + 1])
            if (a, b) == (state[p], state[p + 1]):
                continue
            yield state[:p] + (a, b) + state[p + 2:], Move("elem", i, direction)


def hurwitz_search(F1: PositiveFactorization, F2: PositiveFactorization, budget: int = 10**5,
                   conjugators: dict[str, MappingClass] | None = None,
                   table: CurveTable | None = None) -> HurwitzPath:
    """Bidirectional breadth-first search over elementary transformations.

    Optionally starts from ``f(F1)`` for each supplied conjugator.  Raises
    :class:`SearchExhausted` when more than ``budget`` states are generated.
    """
    if F1.genus != F2.genus or len(F1) != len(F2):
        raise FactorizationError("hurwitz search needs equal genus and length")
    table = table or CurveTable(F1.genus)
    src = tuple(table.intern(c) for c in F1.letters)
    dst = tuple(table.intern(c) for c in F2.letters)
    fwd: dict[tuple, tuple | None] = {src: None}
    starts = [src]
    for name, f in (conjugators or {}).items():
        st = tuple(table.intern(c) for c in global_conjugate(F1, f).letters)
        if st not in fwd:
            fwd[st] = (src, Move("conj", conjugator=name))
            starts.append(st)
    bwd: dict[tuple, tuple | None] = {dst: None}
    nodes = len(fwd) + 1

    def path_to(meet) -> list[Move]:
        left = []
        s = meet
        while fwd[s] is not None:
            prev, m = fwd[s]
            left.append(m)
            s = prev
        left.reverse()
        right = []
        s = meet
        while bwd[s] is not None:
            nxt, m = bwd[s]
            right.append(Move("elem", m.index, -m.direction))
            s = nxt
        return left + right

    for s in starts:
        if s in bwd:
            return HurwitzPath(path_to(s), nodes)
    f_front, b_front = list(starts), [dst]
    while f_front and b_front:
        grow_fwd = len(f_front) <= len(b_front)
        front, seen, other = (f_front, fwd, bwd) if grow_fwd else (b_front, bwd, fwd)
        new_front = []
        for s in front:
            for t, m in _neighbors(table, s):
                if t in seen:
                    continue
                seen[t] = (s, m)
                nodes += 1
                if t in other:
                    return HurwitzPath(path_to(t), nodes)
                if nodes > budget:
                    raise SearchExhausted(nodes)
                new_front.append(t)
        if grow_fwd:
            f_front = new_front
        else:
            b_front = new_front
    raise SearchExhausted(nodes)
