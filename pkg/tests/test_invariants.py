import random
from fractions import Fraction

import pytest

from lefschetz import fibcalc as fc
from lefschetz import invariants as inv
from lefschetz import library, zlin
from lefschetz.mcg import homology_rep


def random_symplectic(rng, g, n_factors=4):
    M = zlin.identity(2 * g)
    curves = list(library.curve_library(g).values())
    for _ in range(n_factors):
        c = rng.choice(curves)
        T = zlin.transvection(c.homology)
        if rng.random() < 0.5:
            T = zlin.symplectic_inverse(T)
        M = zlin.mat_mul(M, T)
    return M


def test_euler_characteristic():
    assert inv.euler_characteristic(fc.from_names(2, [])) == -4
    F = fc.build_indecomposable_example(2)[0]
    assert inv.euler_characteristic(F) == 26


def test_endo_contributions():
    assert inv.endo_contribution(2, None) == Fraction(-3, 5)
    assert inv.endo_contribution(3, 1) == Fraction(8, 7) - 1
    assert inv.endo_contribution(2, 0) == -1


@pytest.mark.parametrize("g", [2, 3])
def test_endo_signature_values(g):
    F = fc.build_chain_power_example(g)
    assert inv.endo_signature(F) == -2 * g * (4 * g + 2) * (g + 1) // (2 * g + 1)
    _, _, Mp = fc.build_indecomposable_example(g, with_mg_prime=True)
    assert inv.endo_signature(Mp) == -8 * g - 8
    assert inv.endo_signature(fc.from_names(g, [])) == 0


def test_endo_requires_attestation():
    F = fc.build_indecomposable_example(2)[0]
    with pytest.raises(inv.AttestationError):
        inv.endo_signature(F)
    with pytest.raises(inv.AttestationError):
        inv.endo_signature(fc.build_chain_power_example(2), hyperelliptic_attestation=False)


def test_endo_non_integral_total():
    F = fc.from_names(2, ["c1"])
    with pytest.raises(inv.AttestationError):
        inv.endo_signature(F)


def test_meyer_cocycle_normalization():
    rng = random.Random(1)
    I = zlin.identity(4)
    for _ in range(30):
        A = random_symplectic(rng, 2)
        assert inv.meyer_cocycle(I, A) == 0
        assert inv.meyer_cocycle(A, I) == 0
        assert inv.meyer_cocycle(A, zlin.symplectic_inverse(A)) == 0


def test_meyer_cocycle_identity():
    rng = random.Random(2)
    for _ in range(150):
        A, B, C = (random_symplectic(rng, 2) for _ in range(3))
        AB, BC = zlin.mat_mul(A, B), zlin.mat_mul(B, C)
        lhs = inv.meyer_cocycle(A, B) + inv.meyer_cocycle(AB, C)
        rhs = inv.meyer_cocycle(A, BC) + inv.meyer_cocycle(B, C)
        assert lhs == rhs


def test_meyer_cocycle_rejects_nonsymplectic():
    D = zlin.identity(4)
    D[0][0] = 2
    with pytest.raises(inv.InvariantError):
        inv.meyer_cocycle(D, zlin.identity(4))


@pytest.mark.parametrize("g", [2, 3])
def test_meyer_agrees_with_endo(g):
    F = fc.build_chain_power_example(g)
    assert inv.meyer_signature(F) == inv.endo_signature(F)
    _, _, Mp = fc.build_indecomposable_example(g, with_mg_prime=True)
    assert inv.meyer_signature(Mp) == inv.endo_signature(Mp) == -8 * g - 8


@pytest.mark.parametrize("g", [2, 3])
def test_meyer_on_indecomposable_matches_substitution(g):
    F, _, Mp = fc.build_indecomposable_example(g, with_mg_prime=True)
    rec = inv.substitution_signature(inv.endo_signature(Mp), 6)
    assert rec.result == -8 * g - 2
    assert inv.meyer_signature(F) == rec.result


def test_meyer_empty_and_nonidentity():
    assert inv.meyer_signature(fc.from_names(2, [])) == 0
    with pytest.raises(inv.InvariantError):
        inv.meyer_signature(fc.from_names(2, ["c1", "c2"]))


def test_substitution_record():
    assert inv.substitution_signature(-24, 6).result == -18
    assert inv.substitution_signature(7, 0).result == 7


@pytest.mark.parametrize("g", [2, 3, 4])
def test_report_for_indecomposable(g):
    F = fc.build_indecomposable_example(g)[0]
    rep = inv.topological_report(F, -8 * g - 2, "substitution")
    assert (rep.n, rep.chi, rep.sigma, rep.c1_squared, rep.b_plus_lower) == \
        (16 * g - 2, 12 * g + 2, -8 * g - 2, -2, 2 * g - 1)


def test_report_definitional_identities():
    rep = inv.topological_report(fc.from_names(2, []), 0, "endo")
    assert (rep.chi, rep.sigma, rep.c1_squared) == (-4, 0, -8)
    assert rep.b_plus_lower == -3
    odd = inv.topological_report(fc.from_names(2, ["c1"]), 0, "meyer")
    assert odd.b_plus_lower is None


def test_invariants_survive_moves_and_conjugation():
    rng = random.Random(3)
    F = fc.build_chain_power_example(2)
    for _ in range(40):
        F = fc.elementary_transformation(F, rng.randint(1, len(F) - 1), rng.choice((1, -1)))
    assert inv.euler_characteristic(F) == 36
    assert inv.meyer_signature(F) == -24
    assert inv.endo_signature(F) == -24
    C = fc.global_conjugate(F, library.base_twist("c2", 2).twist, hyperelliptic=True)
    assert inv.meyer_signature(C) == -24
    assert inv.endo_signature(C) == -24


def test_calibration_suite():
    done = inv.run_calibration(max_genus=3)
    assert len(done) == len(inv.calibration_cases()) == 6


def test_homology_monodromy_of_identity_word():
    F = fc.build_chain_power_example(2)
    P = zlin.identity(4)
    for c in reversed(F.letters):
        P = zlin.mat_mul(homology_rep(c.twist), P)
    assert P == zlin.identity(4)
