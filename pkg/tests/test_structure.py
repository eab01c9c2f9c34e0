import pytest

from onematch.generators import GenConfig, generate
from onematch.graph import Matching, build_graph
from onematch.matching import eliminate_bounded_augmenting_paths
from onematch.structure import (
    StructureError,
    alternating_levels,
    back_edge_violations,
    find_cycle_flowers,
    find_stem_blossoms,
    horizontal_violations,
    path_violations,
)


def test_triangle_is_a_cycle_flower():
    g = build_graph(3, [(0, 1), (0, 2), (1, 2)])
    m = Matching([(1, 2)])
    fl = find_cycle_flowers(g, m)
    assert fl.F_C == {0} and fl.V_C == {0, 1, 2}
    assert fl.fc_witness == {0: (1, 2)} and fl.M_C == {(1, 2)}


def test_stem_with_blossom():
    # free 0, stem 0-1=2, blossom 2-3=4-2
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (2, 4), (3, 4)])
    m = Matching([(1, 2), (3, 4)])
    fl = find_stem_blossoms(g, m, find_cycle_flowers(g, m))
    assert fl.F_C == set()
    assert fl.T_B == {2} and fl.M_B == {(3, 4)} and fl.V_B == {2, 3, 4}
    assert fl.tb_witness == {2: (3, 4)}


def test_short_augmenting_path_breaks_the_precondition():
    g = build_graph(2, [(0, 1)])
    with pytest.raises(StructureError):
        find_cycle_flowers(g, Matching())


def test_levels_along_an_alternating_path():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    m = Matching([(1, 2), (3, 4)])
    dec = alternating_levels(g, m, set())
    assert [sorted(x) for x in dec.levels] == [[0], [1], [2], [3]]
    assert dec.beyond == {4}
    assert dec.witness_paths[3] == (0, 1, 2, 3)
    assert dec.M_S == {(1, 2)} and dec.M_U == {(3, 4)}
    assert path_violations(dec) == []
    assert horizontal_violations(g, m, dec) == []


def test_removed_vertices_are_skipped():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    dec = alternating_levels(g, Matching([(1, 2), (3, 4)]), {2})
    assert dec.levels[1] == {1} and dec.levels[2] == set()
    assert dec.vertices == {0, 1, 3, 4}


def test_adjacent_free_vertices_are_horizontal():
    g = build_graph(2, [(0, 1)])
    dec = alternating_levels(g, Matching(), set())
    assert horizontal_violations(g, Matching(), dec) == [(0, 1)]


@pytest.mark.parametrize("seed", range(12))
def test_structure_on_generated_instances(seed):
    d = generate(GenConfig(14 + seed, seed, 0.5, 0.3))
    g = d.to_graph()
    m = eliminate_bounded_augmenting_paths(g, None, 9)
    fl = find_stem_blossoms(g, m, find_cycle_flowers(g, m))
    assert len(fl.F_C) <= len(fl.M_C) and len(fl.T_B) <= len(fl.M_B)
    dec = alternating_levels(g, m, fl.V_C | fl.V_B)
    assert path_violations(dec) == []
    assert horizontal_violations(g, m, dec) == []
    assert back_edge_violations(g, dec) == []
