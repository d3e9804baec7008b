import inspect
from fractions import Fraction

import pytest

from systolic_atlas.exceptions import LimitError, ParamError
from systolic_atlas.graphs import canonical_code, complete_k4, dumbbell, heawood, theta
from systolic_atlas.graphs.census import enumerate_census
from systolic_atlas.mdp import (
    MdpVertex,
    Unreached,
    ball,
    ball_bound,
    counting_estimates,
    distance_to_set,
    intersection_bound_f,
    mdp_diameter,
    mdp_is_connected,
    movable_matchings,
    _neighbor_codes_task,
    neighbor_codes,
    neighbor_table,
    neighbors,
    separation_radius,
)


def _has_loop(graph):
    return bool(graph.loop_vertices())


def test_neighbors_of_genus_two_classes():
    theta_vertex = MdpVertex.from_graph(theta())
    dumbbell_vertex = MdpVertex.from_graph(dumbbell())
    assert neighbors(theta_vertex) == [dumbbell_vertex]
    assert neighbors(dumbbell_vertex) == [theta_vertex]
    assert theta_vertex.genus == 2
    assert theta_vertex.graph() == canonical_code(theta()).to_graph()


def test_movable_matchings():
    assert len(movable_matchings(theta())) == 3
    assert len(movable_matchings(dumbbell())) == 1
    # 6 single edges and 3 perfect matchings
    assert len(movable_matchings(complete_k4())) == 9


@pytest.mark.parametrize("radius", [0, 1, 2])
def test_ball_sizes(radius):
    start = MdpVertex.from_graph(complete_k4())
    distances = ball(start, radius)
    assert distances[start.code] == 0
    assert len(distances) <= ball_bound(3, radius)
    assert all(d <= radius for d in distances.values())
    assert set(distances) <= set(enumerate_census(4).codes)


@pytest.mark.parametrize("vertex_count", [2, 4, 6, 8])
def test_ball_bound_on_census(vertex_count):
    for code in enumerate_census(vertex_count).codes:
        start = MdpVertex.from_graph(code.to_graph())
        for radius in range(4):
            assert len(ball(start, radius)) <= ball_bound(start.genus, radius)


def test_ball_bound():
    assert ball_bound(3, 2) == 81
    assert ball_bound(2, 0) == 1
    with pytest.raises(ParamError):
        ball_bound(1, 1)
    with pytest.raises(ParamError):
        ball(MdpVertex.from_graph(theta()), -1)


def test_distance_to_set():
    start = MdpVertex.from_graph(theta())
    assert distance_to_set(start, _has_loop, 3) == 1
    assert distance_to_set(start, _has_loop, 0) == Unreached(0)
    assert distance_to_set(MdpVertex.from_graph(dumbbell()), _has_loop, 0) == 0
    assert distance_to_set(start, lambda graph: False, 2) == Unreached(2)
    with pytest.raises(ParamError):
        distance_to_set(start, _has_loop, -1)


def test_neighbor_limit():
    too_large = MdpVertex.from_graph(heawood())
    with pytest.raises(LimitError):
        neighbors(too_large)
    with pytest.raises(LimitError):
        ball(too_large, 1)
    with pytest.raises(LimitError):
        neighbor_table(12)
    with pytest.raises(LimitError):
        neighbors(MdpVertex.from_graph(complete_k4()), settings={"mdp": {"neighbor_v_max": 2}})


@pytest.mark.parametrize("vertex_count", [2, 4, 6])
def test_move_graph_is_symmetric_and_connected(vertex_count):
    adjacency = neighbor_table(vertex_count)
    assert set(adjacency) == set(enumerate_census(vertex_count).codes)
    for code, others in adjacency.items():
        assert code not in others
        for other in others:
            assert code in adjacency[other]
    assert mdp_is_connected(vertex_count)


def test_neighbor_table_task_can_be_shipped_to_ray():
    # ray.remote only accepts plain functions and classes
    assert inspect.isfunction(_neighbor_codes_task)
    assert _neighbor_codes_task(canonical_code(theta())) == neighbor_codes(canonical_code(theta()))


def test_neighbor_table_with_ray_workers():
    ray = pytest.importorskip("ray")
    try:
        assert neighbor_table(4, threads=2) == neighbor_table(4, threads=1)
    finally:
        ray.shutdown()


def test_mdp_diameter():
    assert mdp_diameter(2) == 1
    assert mdp_diameter(4) >= 1


def test_counting_estimates():
    estimates = counting_estimates(10, 0.5, 3)
    assert estimates["loops"] == 5
    assert estimates["reduced_vertices"] == 8
    assert estimates["reverse_count_bound"] == 4096
    assert estimates["reduction_rounds_bound"] == 4
    assert estimates["packing_threshold"] == 1
    assert estimates["h"] == Fraction(1, 2)
    assert counting_estimates(2, 0.9, 1)["reverse_count_bound"] == Fraction(1, 8)
    assert counting_estimates(3, Fraction(1, 3), 2)["loops"] == 1


@pytest.mark.parametrize("g,h,max_length", [(1, 0.5, 1), (5, 0, 1), (5, 1.0, 1), (5, 0.5, 0)])
def test_counting_estimates_invalid(g, h, max_length):
    with pytest.raises(ParamError):
        counting_estimates(g, h, max_length)


@pytest.mark.parametrize("k,expected", [(1, 0), (2, 8), (3, 54)])
def test_intersection_bound_f(k, expected):
    assert intersection_bound_f(k) == expected


def test_separation_radius():
    assert separation_radius(2, 1.0, 2) == 0
    assert separation_radius(5, 0.5, 71) == 1
    with pytest.raises(ParamError):
        separation_radius(5, 0.5, 0)


if __name__ == "__main__":
    pytest.main([__file__])
