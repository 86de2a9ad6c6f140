import numpy as np
import pytest

from knuthovals import (bent_from_hyperoval, build_design, design_invariants,
                        development_design, difference_set,
                        distinguish_designs, group_order_stats,
                        linpoly_values, og_hyperoval, orbit_intersections,
                        sigma_orbit, standard_hyperoval)
from knuthovals.designs import (Design, InfinityNotInOval, NotADifferenceSet,
                                ParameterMismatch, permute_design,
                                secant_line_block, six_condition,
                                triple_intersection_sample, walsh_spectrum)
from knuthovals.ovals import NotTypeA, NotTypeB, graph_hyperoval_b
from knuthovals.plane import INFINITY_POINT
from knuthovals.reference import (REFERENCE_CLASSES, SIX_INTERSECTION_ROWS,
                                  reference_alpha, reference_coeffs)


@pytest.fixture(scope="module")
def os5(kn5):
    return standard_hyperoval(kn5)


@pytest.fixture(scope="module")
def design5(kn5, os5):
    return build_design(kn5, os5)


def test_sigma_orbit_size_and_membership(kn5, os5):
    orbit = sigma_orbit(kn5, os5)
    q = kn5.q
    assert len(orbit) == q * q
    assert len({o.points for o in orbit}) == q * q
    assert all(INFINITY_POINT in o.points for o in orbit)


def test_sigma_orbit_pairwise_intersections_sampled(kn5, os5):
    orbit = [np.array(sorted(o.points)) for o in sigma_orbit(kn5, os5)]
    rng = np.random.default_rng(61)
    for _ in range(1000):
        i, j = rng.choice(len(orbit), 2, replace=False)
        common = np.intersect1d(orbit[i], orbit[j])
        assert len(common) == 2 and common[0] == INFINITY_POINT


def test_sigma_orbit_pairwise_full_n3(ctx3, kn3):
    orbit = [np.array(sorted(o.points))
             for o in sigma_orbit(kn3, standard_hyperoval(kn3))]
    for i in range(len(orbit)):
        for j in range(i + 1, len(orbit)):
            common = np.intersect1d(orbit[i], orbit[j])
            assert len(common) == 2 and common[0] == INFINITY_POINT


def test_sigma_orbit_rejects_type_b(ctx5, kn5):
    with pytest.raises(NotTypeA):
        sigma_orbit(kn5, og_hyperoval(ctx5))


def test_design_parameters(design5):
    assert design5.params == (1024, 528, 272)
    assert len(design5.blocks) == 1024
    assert design5.blocks[0].bit_count() == 528


def test_design_invariants(design5):
    inv = design_invariants(design5)
    assert inv.rank2 <= design5.v
    assert all(inv.degree_checks.values())
    rng = np.random.default_rng(67)
    copy = permute_design(design5, rng.permutation(design5.v),
                          rng.permutation(design5.v))
    assert design_invariants(copy).rank2 == inv.rank2


def test_difference_sets_both_groups(kn5, os5):
    q = kn5.q
    d1 = difference_set(kn5, os5, "G1")
    d2 = difference_set(kn5, os5, "G2")
    assert len(d1) == len(d2) == q * q // 2 + q // 2 == 528
    assert {e.group for e in d1} == {"G1"}
    assert {e.group for e in d2} == {"G2"}


def test_difference_set_rejects_wrong_block(ctx5, kn5):
    # a type-(b) hyperoval's secant block is not a difference set in G1
    with pytest.raises(NotADifferenceSet):
        difference_set(kn5, og_hyperoval(ctx5), "G1")


def test_group_order_stats(kn5):
    g1 = group_order_stats(kn5, "G1")
    assert g1.histogram == {1: 1, 2: 1023}
    assert g1.abelian and g1.exponent == 2 and g1.certified == "C2^10"
    g2 = group_order_stats(kn5, "G2")
    assert g2.histogram == {1: 1, 2: 31, 4: 992}
    assert g2.histogram.get(1, 0) + g2.histogram.get(2, 0) == 32
    assert g2.abelian and g2.exponent == 4 and g2.certified == "C4^5"


def test_bent_standard(kn5, os5):
    bent = bent_from_hyperoval(kn5, os5)
    assert bent.is_bent
    assert set(bent.spectrum) == {-32, 32}
    assert int(bent.indicator.sum()) == 528


def test_bent_all_reference_type_a(ctx5, kn5):
    from knuthovals.ovals import graph_hyperoval_a

    for row in REFERENCE_CLASSES[("kn", "a")]:
        values = linpoly_values(ctx5, reference_coeffs(ctx5, row))
        oval = graph_hyperoval_a(kn5, values)
        assert bent_from_hyperoval(kn5, oval).is_bent


def test_bent_requires_infinity(ctx5, kn5):
    with pytest.raises(InfinityNotInOval):
        bent_from_hyperoval(kn5, og_hyperoval(ctx5))


def test_all_zero_function_is_not_bent():
    spec = walsh_spectrum(np.ones(1024, dtype=np.int64))
    assert 1024 in set(int(v) for v in spec)  # constant: maximal coefficient


def test_bent_support_is_the_g1_difference_set(kn5, os5):
    bent = bent_from_hyperoval(kn5, os5)
    d1 = difference_set(kn5, os5, "G1")
    support = {int(i) for i in np.nonzero(bent.indicator)[0]}
    expected = {(e.u << kn5.n) | e.v for e in d1}
    assert support == expected


def test_orbit_intersections_og(ctx5, kn5):
    oval = og_hyperoval(ctx5)
    values = orbit_intersections(kn5, oval)
    assert len(values) == kn5.q ** 2 - 1
    assert set(values) <= {0, 2, 4}
    assert not six_condition(kn5, oval)


@pytest.mark.parametrize("plane_label", ["kn", "kn_td"])
def test_orbit_intersections_reference_rows(ctx5, kn5, td5, plane_label):
    plane = kn5 if plane_label == "kn" else td5
    six_rows = SIX_INTERSECTION_ROWS[(plane_label, "b")]
    for row in REFERENCE_CLASSES[(plane_label, "b")]:
        values = linpoly_values(ctx5, reference_coeffs(ctx5, row))
        oval = graph_hyperoval_b(plane, values, reference_alpha(ctx5, row))
        inter = orbit_intersections(plane, oval)
        assert set(inter) <= {0, 2, 4, 6}
        has_six = 6 in inter
        assert has_six == six_condition(plane, oval)
        assert has_six == (row["no"] in six_rows)


def test_orbit_intersections_rejects_type_a(kn5, os5):
    with pytest.raises(NotTypeB):
        orbit_intersections(kn5, os5)


def test_development_design_matches_parameters(kn5, os5, design5):
    dev = development_design(kn5, os5)
    assert dev.params == design5.params


def test_distinguish_same_design_inconclusive(design5):
    res = distinguish_designs(design5, design5)
    assert res.outcome == "inconclusive"
    assert res.detail["tv_distance"] == 0.0


def test_distinguish_permuted_copies_inconclusive(design5):
    rng = np.random.default_rng(71)
    for _ in range(5):
        copy = permute_design(design5, rng.permutation(design5.v),
                              rng.permutation(design5.v))
        res = distinguish_designs(design5, copy, samples=2000, seed=3)
        assert res.outcome == "inconclusive"


def test_distinguish_parameter_mismatch(design5):
    other = Design(4, 3, 2, (0b0111, 0b1011, 0b1101, 0b1110))
    with pytest.raises(ParameterMismatch):
        distinguish_designs(design5, other)


def test_distinguish_block_vs_development(kn5, os5, design5):
    dev = development_design(kn5, os5)
    res = distinguish_designs(design5, dev, samples=2000, seed=5)
    assert res.outcome in ("distinguished", "inconclusive")
    assert "rank2" in res.detail


def test_rank2_separates_most_reference_designs(ctx5, kn5):
    """2-ranks of the five type-(a) designs (derived by direct elimination)
    and the resulting pairwise distinguishing outcomes at the default seed:
    only the (2, 4) pair stays inconclusive."""
    from itertools import combinations

    from knuthovals.ovals import graph_hyperoval_a

    designs = {}
    for row in REFERENCE_CLASSES[("kn", "a")]:
        values = linpoly_values(ctx5, reference_coeffs(ctx5, row))
        d = build_design(kn5, graph_hyperoval_a(kn5, values))
        designs[row["no"]] = (d, design_invariants(d).rank2)
    assert {no: rank for no, (d, rank) in designs.items()} == \
        {1: 62, 2: 62, 3: 60, 4: 62, 5: 56}
    outcomes = {}
    for i, j in combinations(sorted(designs), 2):
        outcomes[(i, j)] = distinguish_designs(designs[i][0], designs[j][0])
    for pair in ((1, 3), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)):
        assert outcomes[pair].outcome == "distinguished"
        assert outcomes[pair].witness == "rank2"
    for pair in ((1, 2), (1, 4)):  # separated by the triple distribution
        assert outcomes[pair].outcome == "distinguished"
        assert outcomes[pair].witness == "triple_intersections"
    assert outcomes[(2, 4)].outcome == "inconclusive"


def test_secant_block_size_any_member(kn5, os5):
    orbit = sigma_orbit(kn5, os5)
    q = kn5.q
    for member in orbit[:8]:
        assert secant_line_block(kn5, member.points).bit_count() \
            == q * (q + 1) // 2


def test_triple_sample_deterministic(design5):
    h1 = triple_intersection_sample(design5, samples=500, seed=9)
    h2 = triple_intersection_sample(design5, samples=500, seed=9)
    assert h1 == h2
