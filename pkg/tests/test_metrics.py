import numpy as np
import pytest

from guessgap.dist import Shape, VarId, marginal_pair, validate_tripartite
from guessgap.errors import InvalidDistribution, OutOfRange
from guessgap.family import build_counterexample
from guessgap.metrics import (
    InfoReport,
    analyze_tripartite,
    binary_entropy,
    guessing_probability,
    mutual_information,
    shannon_entropy,
)

from oracles import H_004, H_QUARTER, I_AB_FAMILY, I_AE_005


def test_shannon_entropy_uniform():
    assert shannon_entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-15)


def test_shannon_entropy_point_mass():
    assert shannon_entropy([1.0, 0.0]) == 0.0


def test_shannon_entropy_three_quarters():
    assert shannon_entropy([0.75, 0.25]) == pytest.approx(H_QUARTER, abs=1e-15)


def test_shannon_entropy_rejects_bad_input():
    with pytest.raises(InvalidDistribution):
        shannon_entropy([0.5, 0.4])
    with pytest.raises(InvalidDistribution):
        shannon_entropy([1.2, -0.2])


def test_binary_entropy_values():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.04) == pytest.approx(H_004, abs=1e-15)


def test_binary_entropy_symmetry():
    rng = np.random.Generator(np.random.PCG64(1))
    for p in rng.uniform(0.0, 1.0, size=40):
        assert binary_entropy(p) == pytest.approx(binary_entropy(1.0 - p), abs=1e-12)


def test_binary_entropy_out_of_range():
    with pytest.raises(OutOfRange):
        binary_entropy(-0.01)
    with pytest.raises(OutOfRange):
        binary_entropy(1.01)


def test_mutual_information_independence():
    assert mutual_information([[0.25, 0.25], [0.25, 0.25]]) == pytest.approx(0.0, abs=1e-12)


def test_mutual_information_perfect_correlation():
    assert mutual_information([[0.5, 0.0], [0.0, 0.5]]) == pytest.approx(1.0, abs=1e-15)


def test_mutual_information_family_constant_in_epsilon():
    for eps in (0.0, 0.01, 0.1, 0.25):
        pair = marginal_pair(build_counterexample(eps), VarId.ALICE, VarId.BOB)
        assert mutual_information(pair) == pytest.approx(I_AB_FAMILY, abs=1e-14)


def test_mutual_information_transpose_symmetric():
    rng = np.random.Generator(np.random.PCG64(2))
    for _ in range(25):
        t = rng.standard_gamma(1.0, size=(3, 4))
        t /= t.sum()
        assert mutual_information(t) == pytest.approx(mutual_information(t.T), abs=1e-12)


def test_mutual_information_rejects_bad_table():
    with pytest.raises(InvalidDistribution):
        mutual_information([[0.7, 0.7], [-0.2, -0.2]])


def test_guessing_probability_family():
    d = build_counterexample(0.01)
    assert guessing_probability(marginal_pair(d, VarId.ALICE, VarId.BOB)) == 0.75
    assert guessing_probability(marginal_pair(d, VarId.ALICE, VarId.EVE)) == 0.73


def test_guessing_probability_useless_observation():
    assert guessing_probability([[0.25, 0.25], [0.25, 0.25]]) == pytest.approx(0.5, abs=1e-15)


def test_guessing_probability_permutation_invariance():
    rng = np.random.Generator(np.random.PCG64(4))
    for _ in range(20):
        t = rng.standard_gamma(1.0, size=(3, 5))
        t /= t.sum()
        base = guessing_probability(t)
        rp = rng.permutation(3)
        cp = rng.permutation(5)
        assert guessing_probability(t[rp][:, cp]) == pytest.approx(base, abs=1e-15)


def test_guessing_probability_one_iff_pure_columns():
    pure = np.array([[0.3, 0.0, 0.2], [0.0, 0.5, 0.0]])
    assert guessing_probability(pure) == pytest.approx(1.0, abs=1e-12)
    mixed = np.array([[0.3, 0.1, 0.2], [0.0, 0.4, 0.0]])
    assert guessing_probability(mixed) < 1.0 - 1e-6


def test_analyze_family_flags():
    rep = analyze_tripartite(build_counterexample(0.01))
    assert rep.premise_holds and rep.implication_violated
    assert rep.h_a == pytest.approx(1.0, abs=1e-15)


def test_analyze_perfect_eavesdropper():
    # Eve = exact copy of Alice, Bob independent and uniform
    t = np.zeros((2, 2, 2))
    for i in range(2):
        for j in range(2):
            t[i, j, j] = 0.25
    rep = analyze_tripartite(validate_tripartite(t.reshape(-1), Shape(2, 2, 2)))
    assert rep.p_e == pytest.approx(1.0, abs=1e-15)
    assert rep.p_b == pytest.approx(0.5, abs=1e-15)
    assert not rep.premise_holds
    assert not rep.implication_violated


def test_analyze_family_outside_violation_region():
    rep = analyze_tripartite(build_counterexample(0.05))
    assert rep.premise_holds
    assert not rep.implication_violated
    assert rep.i_ae == pytest.approx(I_AE_005, abs=1e-12)
    assert rep.i_ab == pytest.approx(I_AB_FAMILY, abs=1e-12)


def test_analyze_margin_parameter():
    d = build_counterexample(0.01)  # slack is exactly 0.02
    assert analyze_tripartite(d, margin=0.02).premise_holds
    assert not analyze_tripartite(d, margin=0.03).premise_holds


def test_analyze_rejects_tampered_distribution():
    d = build_counterexample(0.01)
    bad = d.__class__(shape=d.shape, probs=d.probs * 0.5)
    with pytest.raises(InvalidDistribution):
        analyze_tripartite(bad)


def test_report_invariants_random():
    rng = np.random.Generator(np.random.PCG64(6))
    for _ in range(60):
        ne = int(rng.integers(2, 5))
        draws = rng.standard_gamma(0.8, size=4 * ne)
        d = validate_tripartite(draws / draws.sum(), Shape(2, 2, ne))
        rep = analyze_tripartite(d)
        a_max = float(d.probs.sum(axis=(0, 2)).max())
        assert -1e-12 <= rep.i_ab <= rep.h_a + 1e-12
        assert -1e-12 <= rep.i_ae <= rep.h_a + 1e-12
        assert rep.p_b >= a_max - 1e-12
        assert rep.p_e >= a_max - 1e-12
        assert rep.p_b <= 1.0 + 1e-12 and rep.p_e <= 1.0 + 1e-12
        assert rep.fano_slack_b >= -1e-9
        assert rep.fano_slack_e >= -1e-9
        if rep.implication_violated:
            assert rep.premise_holds


def test_report_as_dict_has_gap():
    rep = analyze_tripartite(build_counterexample(0.01))
    d = rep.as_dict()
    assert set(d) == {
        "p_b", "p_e", "i_ab", "i_ae", "h_a", "premise_holds",
        "implication_violated", "fano_slack_b", "fano_slack_e", "gap",
    }
    assert d["gap"] == rep.i_ae - rep.i_ab
    assert isinstance(rep, InfoReport)
