"""Numerical invariants of Lefschetz fibrations given by positive factorizations."""
from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import cache
from importlib import resources

from . import zlin
from .fibcalc import PositiveFactorization
from .mcg import homology_rep


class InvariantError(ValueError):
    pass


class AttestationError(InvariantError):
    pass


class CalibrationError(InvariantError):
    pass


def euler_characteristic(F: PositiveFactorization) -> int:
    return 4 - 4 * F.genus + len(F.letters)


def endo_contribution(g: int, separating_genus: int | None) -> Fraction:
    if separating_genus is None:
        return Fraction(-(g + 1), 2 * g + 1)
    h = separating_genus
    return Fraction(4 * h * (g - h), 2 * g + 1) - 1


def endo_signature(F: PositiveFactorization, hyperelliptic_attestation: bool | None = None) -> int:
    """Sum of per-letter local signatures for hyperelliptic fibrations.

    ``hyperelliptic_attestation`` overrides the per-letter flags when given.
    """
    if hyperelliptic_attestation is False:
        raise AttestationError("factorization is not attested hyperelliptic")
    if hyperelliptic_attestation is None:
        bad = [c.name for c in F.letters if not c.hyperelliptic]
        if bad:
            raise AttestationError(f"letters without hyperelliptic attestation: {bad[:5]}")
    total = sum((endo_contribution(F.genus, c.separating.genus) for c in F.letters), Fraction(0))
    if total.denominator != 1:
        raise AttestationError(f"non-integral Endo sum {total}")
    return int(total)


def meyer_cocycle(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> int:
    """Meyer's cocycle: signature of the form on
    ``V = {(x, y) : (A^-1 - I) x + (B - I) y = 0}`` given by
    ``((x1, y1), (x2, y2)) -> omega(x1 + y1, (I - B) y2)``.
    """
    if not (zlin.symplectic_check(A) and zlin.symplectic_check(B)):
        raise InvariantError("meyer_cocycle needs symplectic matrices")
    n = len(A)
    Ai = zlin.symplectic_inverse(A)
    M = [[Ai[i][j] - (i == j) for j in range(n)] + [B[i][j] - (i == j) for j in range(n)]
         for i in range(n)]
    K = zlin.nullspace(M)
    if not K:
        return 0
    IB = [[(i == j) - B[i][j] for j in range(n)] for i in range(n)]
    sums = [[x + y for x, y in zip(v[:n], v[n:])] for v in K]
    imgs = [zlin.mat_vec(IB, v[n:]) for v in K]
    G = [[zlin.pairing(u, w) for w in imgs] for u in sums]
    S = [[G[i][j] + G[j][i] for j in range(len(K))] for i in range(len(K))]
    return zlin.form_signature(S)


def meyer_signature(F: PositiveFactorization) -> int:
    """Telescoped Meyer cocycle over partial monodromies, minus one per separating letter.

    With ``rho_j`` the homology action of ``l_j`` and ``P_j = rho_j ... rho_1``,
    the sum is ``sum_j tau(P_j, rho_{j+1})``.
    """
    n = 2 * F.genus
    P = zlin.identity(n)
    total = 0
    for c in reversed(F.letters):
        R = homology_rep(c.twist)
        total += meyer_cocycle(P, R)
        P = zlin.mat_mul(R, P)
    if P != zlin.identity(n):
        raise InvariantError("homology monodromy is not the identity")
    return total - sum(1 for c in F.letters if c.separating.is_separating)


@dataclass(frozen=True)
class SubstitutionRecord:
    base: int
    signature_jump: int
    result: int


def substitution_signature(base: int, jump: int) -> SubstitutionRecord:
    return SubstitutionRecord(base, jump, base + jump)


@dataclass(frozen=True)
class InvariantReport:
    genus: int
    n: int
    chi: int
    sigma: int
    method: str
    c1_squared: int
    b_plus_lower: int | None

    def to_json(self) -> dict:
        return asdict(self)


def topological_report(F: PositiveFactorization, sigma: int, method: str) -> InvariantReport:
    chi = euler_characteristic(F)
    c1 = 2 * chi + 3 * sigma
    b = chi - 2 + sigma
    return InvariantReport(F.genus, len(F.letters), chi, sigma, method, c1,
                           b // 2 if b % 2 == 0 else None)


@cache
def calibration_cases() -> tuple[dict, ...]:
    text = resources.files("lefschetz").joinpath("data/calibration.json").read_text()
    return tuple(json.loads(text)["cases"])


def run_calibration(max_genus: int = 3) -> list[tuple[dict, int]]:
    """Recompute every calibration anchor; raise on the first mismatch."""
    from .fibcalc import build_chain_power_example, build_indecomposable_example

    out = []
    for case in calibration_cases():
        g = case["genus"]
        if g > max_genus:
            continue
        if case["example"] == "chain-power":
            F = build_chain_power_example(g)
        else:
            Fm, _, Mp = build_indecomposable_example(g, with_mg_prime=True)
            F = Mp if case["example"] == "mg-prime" else Fm
        s = meyer_signature(F)
        if s != case["sigma"]:
            raise CalibrationError(f"{case['example']} g={g}: got {s}, expected {case['sigma']}")
        out.append((case, s))
    return out
