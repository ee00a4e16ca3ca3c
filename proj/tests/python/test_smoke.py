import pytest

import aopc


K3 = "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"


def test_parse_and_color():
    g = aopc.parse_dimacs(K3)
    assert (g.n, g.m) == (3, 3)
    res = aopc.chromatic_number(g)
    assert res["status"] == "optimal"
    assert res["chromatic"] == 3
    assert sorted(v for cls in res["classes"] for v in cls) == [0, 1, 2]


def test_solve_ao_matches_brute_force():
    for name, kappa, z in [("K3", 2, 2), ("K3", 3, 2), ("C5", 3, 2), ("petersen", 4, 3)]:
        res = aopc.solve_ao(aopc.named_graph(name), kappa)
        assert res["status"] == "optimal"
        assert res["z"] == z
        assert len(res["orientation"]) == aopc.named_graph(name).m


def test_chromatic_agrees_with_brute_force():
    for name in ["C5", "K4", "paw", "petersen", "C7"]:
        g = aopc.named_graph(name)
        chi = aopc.chromatic_number(g, threads=2)["chromatic"]
        assert chi == aopc.brute_force_chromatic(g)
        assert chi == 1 + aopc.brute_force_min_diameter(g)


def test_fap_modes():
    tri = {"links": 3, "pairs": [{"i": 0, "j": 1, "d": 1}, {"i": 1, "j": 2, "d": 1},
                                 {"i": 0, "j": 2, "d": 1}]}
    assert aopc.solve_fap(tri)["spectrum"] == 2
    assert aopc.solve_fap({**tri, "spectrum": 1})["status"] == "infeasible"
    soft = {**tri, "spectrum": 1,
            "pairs": [{**p, "c": 1.0} for p in tri["pairs"]]}
    assert aopc.solve_fap(soft)["cost"] == pytest.approx(1.0)


def test_polytope():
    g = aopc.named_graph("K3")
    assert aopc.polytope_dimension(g, 2) == 7
    rows = aopc.classify(g, 3, "cycle")
    assert [r["class"] for r in rows] == ["facet", "facet"]


def test_errors():
    with pytest.raises(aopc.ParseError):
        aopc.parse_dimacs("p edge 2 1\ne 1 1\n")
    with pytest.raises(ValueError):
        aopc.Graph(2, [(0, 0)])
    with pytest.raises(aopc.UnsupportedInstance):
        aopc.polytope_dimension(aopc.named_graph("petersen"), 2)
