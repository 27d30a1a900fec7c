"""Command-line front end.

Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fibcalc, invariants, library, sections, zlin
from .mcg import (
    Curve,
    MappingClass,
    homology_rep,
    point_push,
    validate_automorphism,
)
from .words import Word, WordError, abelianize

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

EXAMPLES = ("chain-power", "chain-power-selfsum", "indecomposable", "mg-prime",
            "double-odd-chain")
INDECOMPOSABLE_JUMP = 6


class InputError(Exception):
    pass


def _emit(obj: dict, out: str | None) -> None:
    text = fibcalc.dumps(obj)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(path: str) -> tuple[fibcalc.PositiveFactorization, dict]:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON in {path}: {e}") from e
    if not isinstance(raw, dict):
        raise InputError(f"{path}: expected a JSON object")
    try:
        return fibcalc.factorization_from_json(raw), raw
    except (fibcalc.FactorizationError, WordError, library.UnknownCurveError) as e:
        raise InputError(f"{path}: {e}") from e


def build_example(name: str, g: int) -> tuple[fibcalc.PositiveFactorization, dict]:
    """Return the factorization and extra file metadata."""
    if g < 2:
        raise InputError("genus must be at least 2")
    if name == "chain-power":
        return fibcalc.build_chain_power_example(g), {}
    if name == "chain-power-selfsum":
        return fibcalc.build_chain_power_selfsum(g), {}
    if name == "double-odd-chain":
        return fibcalc.build_double_odd_chain_example(g), {}
    if name in ("indecomposable", "mg-prime"):
        F, log, Mp = fibcalc.build_indecomposable_example(g, with_mg_prime=True)
        if name == "mg-prime":
            return Mp, {"derivation": log.to_json()}
        base = invariants.endo_signature(Mp)
        return F, {"derivation": log.to_json(),
                   "substitution": {"base_sigma": base, "base_route": "endo",
                                    "base_letters": len(Mp),
                                    "signature_jump": INDECOMPOSABLE_JUMP}}
    raise InputError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")


def cmd_example(args) -> int:
    F, meta = build_example(args.name, args.g)
    data = fibcalc.factorization_to_json(F)
    data.update(meta)
    _emit(data, args.out)
    print(f"{args.name} g={F.genus}: {len(F)} letters, boundary exponent "
          f"{F.boundary_exponent}, split index {F.split_index}", file=sys.stderr)
    return EXIT_PASS


def verify_factorization(F: fibcalc.PositiveFactorization) -> list[str]:
    problems = []
    for pos, c in enumerate(F.letters):
        if not validate_automorphism(c.twist):
            problems.append(f"letter {pos} ({c.name}): twist is not a valid automorphism")
        elif homology_rep(c.twist) != zlin.transvection(c.homology):
            problems.append(f"letter {pos} ({c.name}): twist does not match its homology")
        if abelianize(c.based_word) != c.homology:
            problems.append(f"letter {pos} ({c.name}): homology differs from the based word")
    if F.boundary_exponent is not None and F.boundary_exponent < 0:
        problems.append("negative boundary exponent for a positive factorization")
    if not problems and not fibcalc.is_identity_factorization(F):
        problems.append("product is not the identity")
    return problems


def cmd_verify(args) -> int:
    F, _ = _load(args.file)
    problems = verify_factorization(F)
    report = {"file": args.file, "letters": len(F), "genus": F.genus,
              "boundary_exponent": F.boundary_exponent, "verdict": not problems,
              "problems": problems}
    _emit(report, args.out)
    return EXIT_PASS if not problems else EXIT_FAIL


def _curve_arg(text: str, g: int) -> Curve:
    try:
        return library.base_twist(text, g)
    except library.UnknownCurveError:
        pass
    try:
        w = Word.parse(text, g)
    except WordError as e:
        raise InputError(f"{text!r} is neither a library curve nor a word: {e}") from e
    # explicit words are used through their homology only
    return Curve(text, w, MappingClass.identity(g), attested_simple=False)


def _loop_arg(text: str, g: int) -> Word:
    if text == "gamma":
        return library.gamma(g)
    if text in ("gamma_2g", "gamma2g"):
        return library.gamma_2g(g)
    try:
        return Word.parse(text, g)
    except WordError as e:
        raise InputError(f"bad loop {text!r}: {e}") from e


def _k_range(text: str) -> list[int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError as e:
        raise InputError(f"--k-range expects LO:HI, got {text!r}") from e
    if lo > hi:
        raise InputError("empty k range")
    return list(range(lo, hi + 1))


def cmd_sections(args) -> int:
    F, _ = _load(args.file)
    if F.split_index is None:
        raise InputError("factorization file has no split_index")
    g = F.genus
    H = sections.TheoremHypothesis(_curve_arg(args.delta or f"c{2 * g}", g),
                                   _loop_arg(args.gamma, g))
    cert = sections.check_hypotheses(F, H)
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    results = {"hypothesis": cert.to_json()}
    if not cert.verdict:
        _emit(results, str(out / "sections.json") if out else None)
        return EXIT_FAIL
    ks = _k_range(args.k_range)
    built = {}
    for k in ks:
        S = sections.build_sigma_k(F, H, k, check=False)
        built[k] = S
        if out:
            fibcalc.save_factorization(S, out / f"sigma_{k}.json")
    results["self_intersection"] = {str(k): sections.self_intersection(S)
                                    for k, S in built.items()}
    results["distinctness"] = [sections.distinctness_certificate(F, H, a, b).to_json()
                               for i, a in enumerate(ks) for b in ks[i + 1:]]
    _emit(results, str(out / "sections.json") if out else None)
    ok = all(c["verdict"] for c in results["distinctness"])
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_invariants(args) -> int:
    F, raw = _load(args.file)
    route = args.sigma_route
    try:
        if route == "endo":
            sigma = invariants.endo_signature(F)
        elif route == "meyer":
            sigma = invariants.meyer_signature(F)
        else:
            sub = raw.get("substitution") or {}
            base = args.base_sigma if args.base_sigma is not None else sub.get("base_sigma")
            jump = args.jump if args.jump is not None else sub.get("signature_jump")
            if base is None or jump is None:
                print("substitution route needs a base signature and a jump", file=sys.stderr)
                return EXIT_FAIL
            sigma = invariants.substitution_signature(int(base), int(jump)).result
    except invariants.InvariantError as e:
        print(f"invariants: {e}", file=sys.stderr)
        return EXIT_FAIL
    rep = invariants.topological_report(F, sigma, route)
    _emit(rep.to_json(), args.out)
    print(f"n={rep.n} chi={rep.chi} sigma={rep.sigma} ({route}) c1^2={rep.c1_squared} "
          f"b+>={rep.b_plus_lower}", file=sys.stderr)
    return EXIT_PASS


def _conjugators(specs: list[str], g: int) -> dict[str, MappingClass]:
    out = {}
    for s in specs:
        if s.startswith("push:"):
            out[s] = point_push(_loop_arg(s[5:], g))
        else:
            out[s] = _curve_arg(s, g).twist
    return out


def cmd_hurwitz(args) -> int:
    F1, _ = _load(args.file1)
    F2, _ = _load(args.file2)
    if F1.genus != F2.genus or len(F1) != len(F2):
        raise InputError("hurwitz needs factorizations of equal genus and length")
    conj = _conjugators(args.conjugators or [], F1.genus)
    try:
        path = fibcalc.hurwitz_search(F1, F2, args.budget, conj)
    except fibcalc.SearchExhausted as e:
        _emit({"verdict": "inconclusive", "nodes": e.nodes}, args.out)
        return EXIT_INCONCLUSIVE
    replayed = fibcalc.replay(F1, path.moves, conj)
    ok = fibcalc.factorizations_equal(replayed, F2)
    _emit({"verdict": "equivalent" if ok else "replay-mismatch", **path.to_json()}, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_separate(args) -> int:
    g = args.g
    if g < 2:
        raise InputError("genus must be at least 2")
    c = library.base_twist(f"c{2 * g}", g)
    gm = library.gamma(g)
    D1 = sections.extract_seed_pointpush(c, gm, args.k1)
    D2 = sections.extract_seed_pointpush(c, gm, args.k2)
    cert = sections.separation_certificate(D1, D2, args.radius)
    _emit(cert.to_json(), args.out)
    return EXIT_PASS if cert.verdict else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lefschetz", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True)

    e = sub.add_parser("example", help="build an example factorization")
    e.add_argument("name")
    e.add_argument("--g", type=int, default=2)
    e.add_argument("--out")
    e.set_defaults(func=cmd_example)

    v = sub.add_parser("verify", help="recheck a factorization file")
    v.add_argument("file")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sections", help="build the section family and certificates")
    s.add_argument("file")
    s.add_argument("--delta")
    s.add_argument("--gamma", default="gamma")
    s.add_argument("--k-range", default="-3:3")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sections)

    i = sub.add_parser("invariants", help="chi, sigma, c1^2 and the b+ bound")
    i.add_argument("file")
    i.add_argument("--sigma-route", choices=("endo", "meyer", "substitution"), default="endo")
    i.add_argument("--base-sigma", type=int)
    i.add_argument("--jump", type=int)
    i.add_argument("--out")
    i.set_defaults(func=cmd_invariants)

    h = sub.add_parser("hurwitz", help="search for a Hurwitz equivalence")
    h.add_argument("file1")
    h.add_argument("file2")
    h.add_argument("--budget", type=int, default=10**5)
    h.add_argument("--conjugators", nargs="*")
    h.add_argument("--out")
    h.set_defaults(func=cmd_hurwitz)

    sp = sub.add_parser("separate", help="separate the monodromy groups G_k1, G_k2")
    sp.add_argument("--k1", type=int, required=True)
    sp.add_argument("--k2", type=int, required=True)
    sp.add_argument("--g", type=int, default=2)
    sp.add_argument("--radius", type=int, default=2)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_separate)
    return p


def _join_negative_values(argv: list[str]) -> list[str]:
    # let "--k-range -3:3" and "--k1 -2" through argparse
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in ("--k-range", "--k1", "--k2", "--base-sigma", "--jump"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-"):
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PASS if e.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, WordError, library.UnknownCurveError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
