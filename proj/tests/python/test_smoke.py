from fractions import Fraction

import pytest

import mlsparse as ml


def tri():
    return ml.Graph([(1, 2, 1), (2, 3, 1), (1, 3, 3)])


def test_graph_roundtrip_and_distances():
    g = ml.Graph.parse("1 2 1\n2 3 1\n")
    assert g.num_vertices == 3 and g.num_edges == 2
    assert ml.distance(g, 1, 3) == 2
    assert ml.Graph.parse(g.format()).edges == g.edges
    assert ml.diameter(tri()) == 2


def test_bad_graph_raises_value_error():
    with pytest.raises(ValueError):
        ml.Graph.parse("1 2 1\n1 2 2\n")


def test_exact_oracle_on_triangle():
    edges, weight = ml.solve_exact(tri(), [(1, 3)], "id")
    assert edges == [(1, 2), (2, 3)]
    assert weight == 2
    assert "Binary" in ml.export_lp(tri(), [(1, 3)])


def test_steiner_and_closure():
    star = ml.Graph([(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    edges, weight = ml.steiner_tree(star, [1, 2, 3])
    assert weight == 3 and len(edges) == 3
    assert ml.steiner_tree(star, [1, 2, 3], exact=True)[1] == 3
    assert all(w == 2 for _, _, w, _ in ml.metric_closure(star, [1, 2, 3]))


def test_spanners():
    c4 = ml.Graph([(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 1)])
    assert len(ml.greedy_spanner(c4, 3)[0]) == 3
    assert len(ml.greedy_spanner(c4, 2)[0]) == 4
    assert ml.subsetwise_spanner(c4, [1, 3], "x2")[1] == 2


def test_ratio_values():
    r = ml.composite_guarantee(2)
    assert r["t_exact"] == Fraction(4, 3)
    assert r["y"] == [Fraction(2, 3), Fraction(1, 3)]
    assert ml.single_q_guarantee([1, 2, 3], 3) == 2
    assert ml.base_b_ratio(3) == Fraction(9, 2)
    q, value = ml.best_q([1, 0, 0])
    assert q == [1, 2] and value == 1


def test_multilevel_algorithms_agree_with_exact_on_path():
    g = ml.Graph([(1, 2, 1), (2, 3, 1)])
    levels = [[1, 2, 3], [1, 3]]
    for algorithm in ("round", "composite", "closure", "exact"):
        sol = ml.multilevel(g, levels, f="id", algorithm=algorithm)
        assert sol["cost"] == 4
        assert sol["grades"] == {(1, 2): 2, (2, 3): 2}


def test_multilevel_rejects_bad_quantizer():
    g = ml.Graph([(1, 2, 1), (2, 3, 1)])
    with pytest.raises(ValueError):
        ml.multilevel(g, [[1, 2, 3], [1, 3]], algorithm="round", q=[2])


def test_experiment_and_plot_are_deterministic():
    a = ml.run_experiment(n=[8], ell=[2], t=[2], trials=2, seed=4)
    b = ml.run_experiment(n=[8], ell=[2], t=["2"], trials=2, seed=4, jobs=2)
    assert a == b
    assert a.splitlines()[0].startswith("generator,n,ell,t")
    assert len(a.splitlines()) == 5
    svg = ml.plot_svg(a)
    assert svg.startswith("<?xml") and svg == ml.plot_svg(a)


def test_generators():
    g = ml.gen_er(10, 3)
    assert g.is_connected() and g.format() == ml.gen_er(10, 3).format()
    assert [len(t) for t in ml.sample_terminals(g, 3, 1)] == [7, 5, 2]
