import os

import pytest

import sparsemod

DATA = os.path.join(os.path.dirname(__file__), "..", "..", "data")


def karate():
    return sparsemod.read_edge_list(os.path.join(DATA, "karate.txt"), one_indexed=True)


def test_graph_basics():
    g = sparsemod.parse_edge_list("a b\nb c\na c\n")
    assert (g.node_count, g.edge_count) == (3, 3)
    assert g.labels == ["a", "b", "c"]
    assert g.edges() == [(0, 1), (0, 2), (1, 2)]


def test_parse_error():
    with pytest.raises(ValueError):
        sparsemod.parse_edge_list("1 2\n3\n")


def test_modularity_two_triangles():
    g = sparsemod.Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert sparsemod.modularity(g, [0, 0, 0, 1, 1, 1]) == pytest.approx(0.5)
    assert sparsemod.modularity(g, [0] * 6) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        sparsemod.modularity(g, [0, 1])


def test_detect_karate():
    report = sparsemod.detect(karate())
    assert abs(report["modularity"] - 0.420) <= 0.001
    assert report["lp_bound"] >= report["modularity"] - 1e-9
    assert len(report["membership"]) == 34


def test_lp_formulations_agree():
    g = sparsemod.Graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
    sparse = sparsemod.solve_lp(g)
    complete = sparsemod.solve_lp(g, formulation="complete")
    assert sparse["objective"] == pytest.approx(complete["objective"], abs=1e-6)
    assert complete["constraints"] == 60
    assert sparsemod.constraint_counts(karate())[0] == 17952


def test_following_and_generation():
    g = sparsemod.generate_power_law(1000.0, 2.5, seed=1)
    membership, followee_of = sparsemod.following(g, 1)
    assert len(membership) == g.node_count == len(followee_of)
    assert sparsemod.modularity(g, membership) >= 0.9 * sparsemod.following_lower_bound(2.5)
