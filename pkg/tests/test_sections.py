import pytest

from lefschetz import fibcalc as fc
from lefschetz import library, sections
from lefschetz.mcg import Curve, point_push, transport_twist
from lefschetz.words import Word, abelianize, equal_elements

G = 2


@pytest.fixture(scope="module")
def selfsum():
    return fc.build_chain_power_selfsum(G)


@pytest.fixture(scope="module")
def indecomposable():
    return fc.build_indecomposable_example(G)[0]


@pytest.fixture(scope="module")
def hyp():
    return sections.library_hypothesis(G)


# hypotheses

def test_selfsum_passes(selfsum, hyp):
    cert = sections.check_hypotheses(selfsum, hyp)
    assert cert.verdict, cert.payload
    assert cert.payload["intersection"] in (1, -1)
    assert cert.payload["intersection_basis"] == "attested"


@pytest.mark.parametrize("g", [2, 3])
def test_indecomposable_passes(g):
    F = fc.build_indecomposable_example(g)[0]
    cert = sections.check_hypotheses(F, sections.library_hypothesis(g))
    assert cert.verdict, cert.payload


def test_separating_delta_fails_clause_i(indecomposable):
    H = sections.library_hypothesis(G, delta="d")
    cert = sections.check_hypotheses(indecomposable, H)
    assert not cert.verdict
    assert cert.payload["failed_clause"] == "i"


def test_lattice_clause(selfsum):
    # a prefix made of c1 and c2 only cannot express [c4]
    F = fc.PositiveFactorization(G, selfsum.letters, True, 2, 2)
    F = F.with_letters(selfsum.letters[:-2] + (library.base_twist("c1", G),) * 2)
    cert = sections.check_hypotheses(F, sections.library_hypothesis(G))
    assert cert.payload["failed_clause"] == "ii"


def test_intersection_clause(selfsum):
    H = sections.library_hypothesis(G, gamma="b1")
    cert = sections.check_hypotheses(selfsum, H)
    assert cert.payload["failed_clause"] == "iii"


def test_explicit_delta_is_surrogate_only(selfsum):
    c4 = library.base_twist("c4", G)
    explicit = Curve("b2", Word.parse("b2", G), c4.twist, attested_simple=False)
    cert = sections.check_hypotheses(selfsum, sections.TheoremHypothesis(explicit,
                                                                          library.gamma(G)))
    assert cert.verdict
    assert cert.payload["intersection_basis"] == "surrogate-only"


def test_fixing_clause(indecomposable):
    # a1a2 meets c4 once homologically but the prefix moves it
    H = sections.TheoremHypothesis(library.base_twist("c4", G), Word.parse("a1a2", G))
    cert = sections.check_hypotheses(indecomposable, H)
    assert cert.payload["failed_clause"] == "iv"


def test_missing_split_is_an_error():
    F = fc.build_chain_power_example(G)
    with pytest.raises(sections.HypothesisError):
        sections.check_hypotheses(F, sections.library_hypothesis(G))


# sigma_k

@pytest.mark.parametrize("k", [-3, -2, -1, 1, 2, 3])
def test_sigma_k_products(selfsum, hyp, k):
    S = sections.build_sigma_k(selfsum, hyp, k)
    assert fc.is_identity_factorization(S)
    r1 = selfsum.split_index
    assert S.suffix == selfsum.suffix
    assert [c.homology for c in S.prefix] == [c.homology for c in selfsum.prefix]
    assert sections.self_intersection(S) == -2
    back = sections.build_sigma_k(S, hyp, -k)
    assert fc.factorizations_equal(back, selfsum)
    assert S.split_index == r1


def test_sigma_0_is_identity_map(selfsum, hyp):
    assert sections.build_sigma_k(selfsum, hyp, 0) is selfsum


@pytest.mark.parametrize("k", [-2, 1, 3])
def test_sigma_k_on_indecomposable(indecomposable, hyp, k):
    S = sections.build_sigma_k(indecomposable, hyp, k)
    assert fc.is_identity_factorization(S)
    assert sections.self_intersection(S) == -2


def test_sigma_k_refuses_failed_hypotheses(indecomposable):
    with pytest.raises(sections.HypothesisError):
        sections.build_sigma_k(indecomposable, sections.library_hypothesis(G, delta="d"), 1)


def test_pushed_letters_distinct_but_homologous():
    c = library.base_twist(f"c{2 * G}", G)
    gm = library.gamma(G)
    moved = [transport_twist(point_push(gm ** k), c) for k in range(6)]
    for i in range(6):
        assert moved[i].homology == c.homology
        for j in range(i + 1, 6):
            assert not equal_elements(moved[i].based_word, moved[j].based_word)
            assert not moved[i].same_curve(moved[j])


# certificates

@pytest.mark.parametrize("k1,k2,pairing,distinct", [(3, 3, 0, False), (1, 0, 1, True),
                                                    (-2, 5, -7, True)])
def test_distinctness(selfsum, hyp, k1, k2, pairing, distinct):
    cert = sections.distinctness_certificate(selfsum, hyp, k1, k2)
    assert cert.payload["pairing"] == pairing
    assert cert.verdict == distinct
    assert cert.payload["basis"].startswith("theorem-backed")
    again = sections.distinctness_certificate(selfsum, hyp, k1, k2)
    assert again.to_json() == cert.to_json()


def test_self_intersection_values(selfsum, indecomposable):
    assert sections.self_intersection(indecomposable) == -2
    assert sections.self_intersection(fc.build_chain_power_example(G)) == -1
    assert sections.self_intersection(selfsum) == -2
    cert = sections.self_intersection_certificate(selfsum)
    assert cert.payload["self_intersection"] == -2
    with pytest.raises(sections.LedgerMissing):
        sections.self_intersection(fc.build_double_odd_chain_example(G))


# group separation

def test_seed_pointpush():
    c = library.base_twist(f"c{2 * G}", G)
    gm = library.gamma(G)
    D0 = sections.extract_seed_pointpush(c, gm, 0)
    assert not D0.seed_loop.letters
    g2 = abelianize(library.gamma_2g(G))
    for k in (1, 2, -3):
        D = sections.extract_seed_pointpush(c, gm, k)
        h = abelianize(D.seed_loop)
        assert h in (tuple(k * x for x in g2), tuple(-k * x for x in g2))


@pytest.mark.parametrize("radius", [0, 1, 2])
def test_separation_invariant_is_abs_k(radius):
    c = library.base_twist(f"c{2 * G}", G)
    gm = library.gamma(G)
    for k in (-2, 0, 1, 3):
        D = sections.extract_seed_pointpush(c, gm, k)
        assert sections.group_separation_invariant(D, radius) == abs(k)


def test_separation_certificate():
    c = library.base_twist(f"c{2 * G}", G)
    gm = library.gamma(G)
    D3, D5, Dm3 = (sections.extract_seed_pointpush(c, gm, k) for k in (3, 5, -3))
    assert sections.separation_certificate(D3, D5).verdict
    assert not sections.separation_certificate(D3, Dm3).verdict


# trivial-H1 criterion

def test_trivial_h1_criterion(indecomposable):
    F = fc.build_chain_power_example(G)
    assert sections.check_trivial_h1_criterion(F, F).verdict
    single = fc.from_names(G, ["c1"] * 6)
    assert not sections.check_trivial_h1_criterion(F, single).verdict
    cert = sections.check_trivial_h1_criterion(indecomposable, indecomposable)
    assert cert.verdict
