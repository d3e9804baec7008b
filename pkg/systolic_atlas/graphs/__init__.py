from typing import Callable, Dict

from .multigraph import (
    CanonicalCode,
    CubicMultigraph,
    Cycle,
    CyclePacking,
    MultigraphBuilder,
    attach_loop_gadget,
    bfs_distances,
    canonical_code,
    canonical_labeling,
    disjoint_cycle_packing,
    distance_coloring,
    from_cmg,
    from_edge_list,
    girth,
    insert_edge,
    packing_hypothesis_holds,
    pants_disjoint_edge_partition,
    read_cmg,
    short_cycles,
    to_cmg,
    to_networkx,
    write_cmg,
)


def theta() -> CubicMultigraph:
    return from_edge_list(2, [(0, 1), (0, 1), (0, 1)])


def dumbbell() -> CubicMultigraph:
    return from_edge_list(2, [(0, 0), (1, 1), (0, 1)])


def complete_k4() -> CubicMultigraph:
    return from_edge_list(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def complete_bipartite_k33() -> CubicMultigraph:
    return from_edge_list(6, [(u, v) for u in range(3) for v in range(3, 6)])


def prism() -> CubicMultigraph:
    return from_edge_list(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    )


def cube() -> CubicMultigraph:
    square = [(0, 1), (1, 2), (2, 3), (0, 3)]
    return from_edge_list(
        8, square + [(u + 4, v + 4) for u, v in square] + [(v, v + 4) for v in range(4)]
    )


def petersen() -> CubicMultigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def heawood() -> CubicMultigraph:
    ring = [(i, (i + 1) % 14) for i in range(14)]
    chords = [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return from_edge_list(14, ring + chords)


NAMED_GRAPHS: Dict[str, Callable[[], CubicMultigraph]] = {
    "theta": theta,
    "dumbbell": dumbbell,
    "K4": complete_k4,
    "K33": complete_bipartite_k33,
    "prism": prism,
    "cube": cube,
    "petersen": petersen,
    "heawood": heawood,
}
