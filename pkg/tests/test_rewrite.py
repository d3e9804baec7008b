import math

import networkx as nx
import pytest

from systolic_atlas.exceptions import (
    GadgetError,
    InvalidCycleError,
    LoopMoveError,
    OverlapError,
    ParamError,
)
from systolic_atlas.graphs import (
    attach_loop_gadget,
    canonical_code,
    complete_k4,
    cube,
    dumbbell,
    from_edge_list,
    girth,
    heawood,
    petersen,
    prism,
    short_cycles,
    theta,
    to_networkx,
)
from systolic_atlas.graphs.census import enumerate_census
from systolic_atlas.graphs.multigraph import Cycle
from systolic_atlas.rewrite import (
    MoveSet,
    apply_moveset,
    girth_lift,
    insert_octagon_gadget,
    move_slots,
    reduce_cycle_to_loop,
    reduction_round,
    reduction_rounds,
    reinsert_loops,
    remove_loop_gadgets,
    whitehead,
)


def _vertex_disjoint_edges(graph):
    used, picked = set(), []
    for h, p in graph.edges():
        ends = {h // 3, p // 3}
        if len(ends) == 2 and not ends & used:
            picked.append(h)
            used |= ends
    return picked


def test_theta_moves():
    assert canonical_code(whitehead(theta(), 0, "A")) == canonical_code(dumbbell())
    assert whitehead(theta(), 0, "B") == theta()


def test_dumbbell_bar_moves():
    for variant in ["A", "B"]:
        assert canonical_code(whitehead(dumbbell(), 2, variant)) == canonical_code(theta())


def test_k4_moves():
    # only one variant on a K4 edge creates a digon, the other gives K4 back up to relabeling
    moved_a = whitehead(complete_k4(), 0, "A")
    moved_b = whitehead(complete_k4(), 0, "B")
    assert girth(moved_a) == 2
    assert canonical_code(moved_b) == canonical_code(complete_k4())
    for e, _ in complete_k4().edges():
        girths = sorted(girth(whitehead(complete_k4(), e, variant)) for variant in ["A", "B"])
        assert girths == [2, 3]


@pytest.mark.parametrize("graph", [theta(), complete_k4(), prism(), petersen(), cube()])
def test_move_is_an_involution(graph):
    for e, _ in graph.edges():
        if graph.is_loop(e):
            continue
        for variant in ["A", "B"]:
            moved = whitehead(graph, e, variant)
            assert moved.vertex_count == graph.vertex_count
            assert moved.edge(e) == graph.edge(e)
            assert whitehead(moved, e, variant) == graph


def test_move_slots():
    assert move_slots(complete_k4(), 3) == (0, 3, 1, 2, 4, 5)
    with pytest.raises(LoopMoveError):
        move_slots(dumbbell(), 0)


def test_moveset_equals_sequential_moves():
    graph = petersen()
    edges = _vertex_disjoint_edges(graph)
    assert len(edges) >= 3
    variants = ["A", "B", "A", "B", "A"][: len(edges)]
    sequential = graph
    for e, variant in zip(edges, variants):
        sequential = whitehead(sequential, e, variant)
    assert apply_moveset(graph, MoveSet.of(list(zip(edges, variants)))) == sequential


def test_moveset_errors():
    with pytest.raises(ParamError):
        MoveSet.of([])
    with pytest.raises(ParamError):
        MoveSet.of([(0, "C")])
    with pytest.raises(ParamError):
        whitehead(theta(), 0, "C")
    with pytest.raises(OverlapError):
        apply_moveset(theta(), MoveSet.of([(0, "A"), (1, "A")]))
    with pytest.raises(LoopMoveError):
        apply_moveset(dumbbell(), MoveSet.of([(0, "A")]))
    with pytest.raises(LoopMoveError):
        whitehead(dumbbell(), 1, "B")
    assert MoveSet.of([(2, "A")]).to_json(dumbbell()) == [[[2, 5], "A"]]


def test_octagon_gadget():
    lifted, segment, octagon = insert_octagon_gadget(theta(), 0)
    assert lifted.vertex_count == 18
    assert len(segment) == 8
    assert len(octagon) == 8
    assert girth(lifted) == 2
    for v in octagon:
        assert len(lifted.neighbors(v)) == 3


# every lift of the census up to V=10 stays within these distortion constants
LIFT_MAX_A = 9.0
LIFT_MAX_B = 16.0


@pytest.mark.parametrize("vertex_count", [2, 4, 6, 8, 10])
def test_girth_lift_on_census(vertex_count):
    for graph in enumerate_census(vertex_count).graphs():
        lifted, correspondence = girth_lift(graph, sample_pairs=200)
        assert girth(lifted) >= 6
        assert correspondence.forward == {v: v for v in range(vertex_count)}
        assert correspondence.gadget_count >= 1
        assert lifted.vertex_count == vertex_count + 16 * correspondence.gadget_count
        assert 1.0 <= correspondence.a <= LIFT_MAX_A
        assert 0.0 <= correspondence.b <= LIFT_MAX_B
        assert correspondence.measured_pairs == vertex_count * (vertex_count - 1) // 2


@pytest.mark.parametrize("permutation", [(5, 3, 1, 0, 2, 4), (1, 0, 3, 2, 5, 4), (2, 4, 0, 5, 1, 3)])
def test_girth_lift_ignores_input_labels(permutation):
    for graph in enumerate_census(6).graphs():
        lifted, correspondence = girth_lift(graph, sample_pairs=50)
        relifted, recorrespondence = girth_lift(graph.relabeled(list(permutation)), sample_pairs=50)
        assert correspondence.gadget_count == recorrespondence.gadget_count
        assert nx.weisfeiler_lehman_graph_hash(nx.Graph(to_networkx(lifted))) == nx.weisfeiler_lehman_graph_hash(
            nx.Graph(to_networkx(relifted))
        )


def test_octagon_gadget_starts_at_given_half_edge():
    forward, segment, _ = insert_octagon_gadget(theta(), 0)
    backward, same_ids, _ = insert_octagon_gadget(theta(), 3)
    assert segment == same_ids == list(range(2, 10))
    assert 0 in forward.neighbors(segment[0])
    assert 1 in backward.neighbors(segment[0])


def test_girth_lift_keeps_large_girth():
    lifted, correspondence = girth_lift(heawood())
    assert lifted == heawood()
    assert correspondence.gadget_count == 0
    assert correspondence.a == 1.0
    assert correspondence.b == 0.0
    assert correspondence.coverage_radius == 0
    assert set(correspondence.to_dict()) == {"a", "b", "coverage_radius", "gadget_count", "measured_pairs"}


@pytest.mark.parametrize("length,rounds", [(1, 0), (2, 1), (3, 2), (4, 3), (5, 3), (6, 4), (8, 4), (10, 5)])
def test_reduction_rounds(length, rounds):
    assert reduction_rounds(length) == rounds


def test_reduction_rounds_invalid():
    with pytest.raises(ParamError):
        reduction_rounds(0)


def test_theta_digon_becomes_loop():
    digon = short_cycles(theta(), 2)[0]
    moved, loop, move_set = reduction_round(theta(), digon)
    assert len(move_set.moves) == 1
    assert loop.length == 1
    assert moved.is_loop(loop.steps[0][0])
    assert canonical_code(moved) == canonical_code(dumbbell())


@pytest.mark.parametrize(
    "graph,length",
    [(theta(), 2), (complete_k4(), 3), (cube(), 4), (petersen(), 5), (heawood(), 6)],
)
def test_reduce_shortest_cycle_to_loop(graph, length):
    cycle = short_cycles(graph, length)[0]
    assert cycle.length == length
    reduced, trace, loop = reduce_cycle_to_loop(graph, cycle)
    assert len(trace) == reduction_rounds(length)
    assert loop.length == 1
    assert reduced.is_loop(loop.steps[0][0])
    assert reduced.vertex_count == graph.vertex_count
    assert girth(reduced) == 1


def _circular_ladder(length):
    outer = [(i, (i + 1) % length) for i in range(length)]
    inner = [(length + i, length + (i + 1) % length) for i in range(length)]
    rungs = [(i, length + i) for i in range(length)]
    graph = from_edge_list(2 * length, outer + inner + rungs)
    steps = []
    for i in range(length):
        out = next(h for h in graph.half_edges(i) if graph.partner(h) // 3 == (i + 1) % length)
        steps.append((out, graph.partner(out)))
    return graph, Cycle(tuple(range(length)), tuple(steps))


@pytest.mark.parametrize("length", range(6, 21))
def test_reduce_long_cycles(length):
    graph, cycle = _circular_ladder(length)
    lengths = [length]
    current, image = graph, cycle
    while image.length > 1:
        current, image, _ = reduction_round(current, image)
        lengths.append(image.length)
    assert lengths[1:] == [l // 2 + 1 if l >= 3 else 1 for l in lengths[:-1]]
    assert len(lengths) - 1 == reduction_rounds(length) <= math.ceil(math.log2(length)) + 2
    reduced, trace, loop = reduce_cycle_to_loop(graph, cycle)
    assert len(trace) == reduction_rounds(length)
    assert reduced.is_loop(loop.steps[0][0])


def test_reduction_round_shrinks_cycle():
    cycle = short_cycles(heawood(), 6)[0]
    moved, image, move_set = reduction_round(heawood(), cycle)
    assert image.length == 4
    assert len(move_set.moves) == 2
    moved, image, move_set = reduction_round(moved, image)
    assert image.length == 3
    assert len(move_set.moves) == 1


def test_invalid_cycles():
    with pytest.raises(InvalidCycleError):
        reduction_round(dumbbell(), short_cycles(dumbbell(), 1)[0])
    broken = Cycle((0, 1), ((0, 3), (4, 0)))
    with pytest.raises(InvalidCycleError):
        reduce_cycle_to_loop(theta(), broken)
    mismatched = Cycle((0, 1, 2), ((0, 3), (4, 6)))
    with pytest.raises(InvalidCycleError):
        reduction_round(complete_k4(), mismatched)


def test_remove_loop_gadget():
    looped = attach_loop_gadget(theta(), 0)
    assert looped.is_loop(10)
    assert remove_loop_gadgets(looped, [10]) == theta()
    assert reinsert_loops(theta(), [0]) == looped
    twice = reinsert_loops(cube(), [0, 6])
    assert twice.loop_vertices() == [9, 11]
    assert canonical_code(remove_loop_gadgets(twice, [28, 34])) == canonical_code(cube())


def test_remove_loop_gadget_errors():
    looped = attach_loop_gadget(theta(), 0)
    with pytest.raises(GadgetError):
        remove_loop_gadgets(looped, [0])
    with pytest.raises(GadgetError):
        remove_loop_gadgets(looped, [10, 11])
    with pytest.raises(GadgetError):
        remove_loop_gadgets(dumbbell(), [0])


if __name__ == "__main__":
    pytest.main([__file__])
