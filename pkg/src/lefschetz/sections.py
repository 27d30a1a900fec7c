"""Section families: hypothesis checks, the sigma_k factorizations, certificates,
and the abelian invariant separating the monodromy groups G_k.
"""
from __future__ import annotations

import hashlib
import json
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from typing import Any

from . import library, zlin
from .fibcalc import (
    PositiveFactorization,
    factorization_to_json,
    is_identity_factorization,
    product,
)
from .mcg import (
    Curve,
    MappingClass,
    apply,
    compose,
    equal,
    invert,
    point_push,
    transport_twist,
)
from .words import Word, abelianize, algebraic_intersection, equal_elements


class HypothesisError(ValueError):
    pass


class LedgerMissing(ValueError):
    pass


@dataclass(frozen=True)
class TheoremHypothesis:
    delta: Curve
    gamma: Word

    def to_json(self) -> dict:
        return {"delta": self.delta.name, "delta_word": str(self.delta.based_word),
                "delta_homology": list(self.delta.homology), "gamma": str(self.gamma)}


@dataclass
class Certificate:
    kind: str
    inputs_digest: str
    verdict: bool
    payload: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "inputs_digest": self.inputs_digest,
                "verdict": self.verdict, "payload": self.payload}


def digest(obj: Any) -> str:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _inputs(F: PositiveFactorization, H: TheoremHypothesis | None = None, **extra) -> dict:
    d = {"factorization": factorization_to_json(F)}
    if H is not None:
        d["hypothesis"] = H.to_json()
    d.update(extra)
    return d


def _split(F: PositiveFactorization) -> int:
    if F.split_index is None:
        raise HypothesisError("factorization has no split index")
    return F.split_index


def check_hypotheses(F: PositiveFactorization, H: TheoremHypothesis) -> Certificate:
    """Check the section-family hypotheses; the payload names the first failed clause."""
    dg = digest(_inputs(F, H))

    def fail(clause: str, reason: str) -> Certificate:
        return Certificate("hypothesis", dg, False, {"failed_clause": clause, "reason": reason})

    r1 = _split(F)
    if not 0 < r1 < len(F.letters):
        return fail("split", "split index must leave both subwords nonempty")
    if not H.gamma:
        return fail("gamma", "gamma must be a nontrivial loop")
    if H.delta.separating.is_separating or not any(H.delta.homology):
        return fail("i", "delta is separating (zero homology)")
    prefix_l = [c.homology for c in F.prefix]
    suffix_l = [c.homology for c in F.suffix]
    cp = zlin.lattice_membership(H.delta.homology, prefix_l)
    cs = zlin.lattice_membership(H.delta.homology, suffix_l)
    if cp is None or cs is None:
        which = "prefix" if cp is None else "suffix"
        return fail("ii", f"[delta] is not in the {which} vanishing-cycle lattice")
    pairing = algebraic_intersection(abelianize(H.gamma), H.delta.homology)
    if abs(pairing) != 1:
        return fail("iii", f"algebraic intersection of gamma and delta is {pairing}")
    if not equal_elements(apply(product(F.prefix, F.genus), H.gamma), H.gamma):
        return fail("iv", "the prefix monodromy does not fix gamma")
    if not is_identity_factorization(F):
        return fail("product", "factorization product is not the identity")
    return Certificate("hypothesis", dg, True, {
        "split_index": r1,
        "intersection": pairing,
        "intersection_basis": ("attested" if H.delta.attested_simple else "surrogate-only"),
        "prefix_coefficients": cp,
        "suffix_coefficients": cs,
    })


def build_sigma_k(F: PositiveFactorization, H: TheoremHypothesis, k: int,
                  check: bool = True) -> PositiveFactorization:
    """Replace each prefix letter l by P_gamma^k(l); the suffix is untouched."""
    if check:
        cert = check_hypotheses(F, H)
        if not cert.verdict:
            raise HypothesisError(f"hypotheses fail: {cert.payload}")
    if k == 0:
        return F
    P = point_push(H.gamma ** k)
    r1 = _split(F)
    new_prefix = tuple(transport_twist(P, c) for c in F.prefix)
    G = replace(F, letters=F.suffix + new_prefix, split_index=r1)
    if not is_identity_factorization(G):
        raise HypothesisError(f"sigma_{k} product is not the identity")
    return G


def distinctness_certificate(F: PositiveFactorization, H: TheoremHypothesis,
                             k1: int, k2: int) -> Certificate:
    cert = check_hypotheses(F, H)
    if not cert.verdict:
        raise HypothesisError(f"hypotheses fail: {cert.payload}")
    pairing = k1 - k2
    return Certificate("distinctness", digest(_inputs(F, H, k1=k1, k2=k2)), pairing != 0, {
        "k1": k1, "k2": k2, "pairing": pairing,
        "basis": "theorem-backed: the pairing of the torus class with the difference "
                 "of the two section classes equals k1 - k2 once the hypotheses hold",
        "hypothesis_digest": cert.inputs_digest,
    })


def self_intersection(F: PositiveFactorization) -> int:
    if F.boundary_exponent is None:
        raise LedgerMissing("factorization has no boundary-exponent ledger")
    return -F.boundary_exponent


def self_intersection_certificate(F: PositiveFactorization) -> Certificate:
    s = self_intersection(F)
    return Certificate("self-intersection", digest(_inputs(F)), True,
                       {"self_intersection": s, "ledger": F.boundary_exponent})


@dataclass
class MonodromyGroupDescription:
    genus: int
    k: int
    generators: list[Curve]
    seed_loop: Word

    @property
    def seed(self) -> MappingClass:
        return point_push(self.seed_loop)


def seed_loop(c: Curve, gamma: Word, k: int) -> Word:
    """``gamma^-k (gamma_c gamma)^k`` with ``gamma_c = T_c(gamma) gamma^-1``."""
    tg = apply(c.twist, gamma)
    return gamma ** (-k) * tg ** k


def extract_seed_pointpush(c: Curve, gamma: Word, k: int,
                           generators: Sequence[Curve] | None = None) -> MonodromyGroupDescription:
    """Describe G_k and validate ``T_c T_{P_gamma^k(c)}^-1 = P_loop``."""
    g = c.genus
    loop = seed_loop(c, gamma, k)
    moved = transport_twist(point_push(gamma ** k), c)
    lhs = compose(c.twist, invert(moved.twist))
    if not equal(lhs, point_push(loop)):
        raise HypothesisError("seed identity fails for this curve and loop")
    if generators is None:
        generators = [library.base_twist(n, g) for n in library.chain_names(g)]
    return MonodromyGroupDescription(g, k, list(generators), loop)


def group_separation_invariant(D: MonodromyGroupDescription, sample_radius: int = 2) -> int:
    """Content of the lattice spanned by abelianized f(seed loop), |f| <= radius.

    f ranges over reduced words in the generating twists and their inverses;
    conjugating the seed by f gives the point-push of f(loop).
    """
    maps: list[MappingClass] = []
    for c in D.generators:
        maps += [c.twist, invert(c.twist)]
    vectors = []

    def walk(loop: Word, depth: int, last: int) -> None:
        vectors.append(abelianize(loop))
        if depth == sample_radius:
            return
        for j, f in enumerate(maps):
            if last >= 0 and j == last ^ 1:
                continue
            walk(apply(f, loop), depth + 1, j)

    walk(D.seed_loop, 0, -1)
    return zlin.lattice_content(vectors)


def separation_certificate(D1: MonodromyGroupDescription, D2: MonodromyGroupDescription,
                           radius: int = 2) -> Certificate:
    c1 = group_separation_invariant(D1, radius)
    c2 = group_separation_invariant(D2, radius)
    inputs = {"genus": D1.genus, "k1": D1.k, "k2": D2.k, "radius": radius,
              "loop1": str(D1.seed_loop), "loop2": str(D2.seed_loop)}
    return Certificate("group-separation", digest(inputs), c1 != c2,
                       {"content1": c1, "content2": c2, "k1": D1.k, "k2": D2.k,
                        "radius": radius})


def check_trivial_h1_criterion(F1: PositiveFactorization,
                               F2: PositiveFactorization) -> Certificate:
    out = {}
    verdict = True
    for tag, F in (("first", F1), ("second", F2)):
        full = zlin.lattice_is_full([c.homology for c in F.letters], 2 * F.genus)
        out[tag] = full
        verdict = verdict and full
    inputs = {"first": factorization_to_json(F1), "second": factorization_to_json(F2)}
    return Certificate("trivial-h1", digest(inputs), verdict, out)


def library_hypothesis(g: int, delta: str | None = None, gamma: str | None = None) -> TheoremHypothesis:
    """Default data: delta = c_{2g}, gamma = its library dual loop."""
    d = library.base_twist(delta or f"c{2 * g}", g)
    gm = library.gamma(g) if gamma is None else Word.parse(gamma, g)
    return TheoremHypothesis(d, gm)
