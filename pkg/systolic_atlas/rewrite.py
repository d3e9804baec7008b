"""
Graph surgeries on cubic multigraphs: Whitehead moves and simultaneous move sets, the
octagon gadget that lifts girth to 6, cycle halving by simultaneous moves and removal of
loop gadgets.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import (
    GadgetError,
    InvalidCycleError,
    LoopMoveError,
    NonTerminationError,
    OverlapError,
    ParamError,
    ValidationError,
)
from .graphs.multigraph import (
    CubicMultigraph,
    Cycle,
    MultigraphBuilder,
    attach_loop_gadget,
    bfs_distances,
    canonical_labeling,
    girth,
    owner,
    short_cycles,
)

VARIANTS = ("A", "B")

# octagon vertex i is joined to segment vertex OCTAGON_PAIRING[i]
OCTAGON_PAIRING = {1: 1, 2: 4, 3: 7, 4: 2, 5: 5, 6: 8, 7: 3, 8: 6}

TARGET_GIRTH = 6


@dataclass(frozen=True)
class MoveSet:
    """
    Whitehead moves on pairwise vertex-disjoint non-loop edges, applied simultaneously.
    Edges are given by one of their half-edges.
    """

    moves: Tuple[Tuple[int, str], ...]

    def __post_init__(self):
        if not self.moves:
            raise ParamError("A move set needs at least one move.")
        for _, variant in self.moves:
            if variant not in VARIANTS:
                raise ParamError(f"Unknown move variant {variant}. Choose one of {VARIANTS}.")

    @classmethod
    def of(cls, moves: Sequence[Tuple[int, str]]) -> "MoveSet":
        return cls(tuple((int(e), str(variant)) for e, variant in moves))

    def validate(self, graph: CubicMultigraph) -> None:
        used = set()
        for e, _ in self.moves:
            if graph.is_loop(e):
                raise LoopMoveError(f"Edge {graph.edge(e)} is a loop and cannot be moved.")
            ends = {owner(e), owner(graph.partner(e))}
            if ends & used:
                raise OverlapError(f"Edge {graph.edge(e)} shares a vertex with another move.")
            used |= ends

    def to_json(self, graph: CubicMultigraph) -> List:
        return [[list(graph.edge(e)), variant] for e, variant in self.moves]


@dataclass
class Correspondence:
    """
    Vertex map from a source graph into a target graph with its measured distortion:
    d_target <= a * d_source and d_target - d_source <= b over the measured pairs.
    """

    forward: Dict[int, int]
    a: float = 1.0
    b: float = 0.0
    coverage_radius: int = 0
    gadget_count: int = 0
    measured_pairs: int = 0

    def to_dict(self) -> Dict:
        return {
            "a": self.a,
            "b": self.b,
            "coverage_radius": self.coverage_radius,
            "gadget_count": self.gadget_count,
            "measured_pairs": self.measured_pairs,
        }


def move_slots(graph: CubicMultigraph, e: int) -> Tuple[int, int, int, int, int, int]:
    """
    Half-edges (hu, hv, a1, a2, b1, b2) of the move on edge e: hu < hv are the halves of e,
    a1 < a2 the other half-edges at owner(hu), b1 < b2 those at owner(hv).
    """
    if graph.is_loop(e):
        raise LoopMoveError(f"Edge {graph.edge(e)} is a loop and cannot be moved.")
    hu, hv = graph.edge(e)
    a1, a2 = sorted(h for h in graph.half_edges(owner(hu)) if h != hu)
    b1, b2 = sorted(h for h in graph.half_edges(owner(hv)) if h != hv)
    return hu, hv, a1, a2, b1, b2


def move_transposition(graph: CubicMultigraph, e: int, variant: str) -> Tuple[int, int]:
    """
    Slot swap realizing the move: A keeps a1 with b1 (swap a2, b1), B keeps a1 with b2 (swap a2, b2).
    """
    _, _, _, a2, b1, b2 = move_slots(graph, e)
    if variant == "A":
        return a2, b1
    if variant == "B":
        return a2, b2
    raise ParamError(f"Unknown move variant {variant}. Choose one of {VARIANTS}.")


def _conjugate(graph: CubicMultigraph, swap: Dict[int, int]) -> CubicMultigraph:
    pairing = graph.pairing
    new_pairing = [0] * len(pairing)
    for h in range(len(pairing)):
        source = swap.get(h, h)
        target = pairing[source]
        new_pairing[h] = swap.get(target, target)
    return CubicMultigraph(graph.vertex_count, new_pairing)


def _swap_map(transpositions: Sequence[Tuple[int, int]]) -> Dict[int, int]:
    swap: Dict[int, int] = {}
    for x, y in transpositions:
        swap[x] = y
        swap[y] = x
    return swap


def whitehead(graph: CubicMultigraph, e: int, variant: str) -> CubicMultigraph:
    """
    Whitehead move on the non-loop edge e: the edge is kept and the four other half-edges at
    its endpoints are regrouped. Applying the same move twice gives back the same graph.
    :param graph: the graph
    :param e: any half-edge of the moved edge
    :param variant: "A" or "B"
    :return: moved graph on the same vertices
    """
    return _conjugate(graph, _swap_map([move_transposition(graph, e, variant)]))


def apply_moveset(graph: CubicMultigraph, move_set: MoveSet) -> CubicMultigraph:
    """
    Applies all moves at once. Moves on vertex-disjoint edges commute, so the result equals
    any sequential application.
    """
    move_set.validate(graph)
    swap = _swap_map([move_transposition(graph, e, variant) for e, variant in move_set.moves])
    return _conjugate(graph, swap)


def insert_octagon_gadget(graph: CubicMultigraph, e: int) -> Tuple[CubicMultigraph, List[int], List[int]]:
    """
    Subdivides edge e into nine segments and joins a new octagon to the eight interior
    vertices following OCTAGON_PAIRING.
    :return: new graph, segment vertices s1..s8 (from the side of half-edge e), octagon vertices h1..h8
    """
    builder = MultigraphBuilder(graph)
    segment = builder.subdivide(e, 8)
    octagon = [builder.add_vertex() for _ in range(8)]
    for i in range(8):
        builder.connect(3 * octagon[i] + 1, 3 * octagon[(i + 1) % 8])
    for i, j in OCTAGON_PAIRING.items():
        builder.connect(3 * octagon[i - 1] + 2, 3 * segment[j - 1] + 2)
    return builder.build(), segment, octagon


def measure_distortion(
    source: CubicMultigraph,
    target: CubicMultigraph,
    forward: Dict[int, int],
    sample_pairs: Optional[int] = None,
    seed: int = 0,
) -> Tuple[float, float, int]:
    """
    Largest stretch d'/d and additive gap d' - d over vertex pairs, all pairs when there are at
    most sample_pairs of them, otherwise a seeded sample.
    :return: (a, b, number of measured pairs)
    """
    vertices = sorted(forward)
    pairs = [(u, v) for i, u in enumerate(vertices) for v in vertices[i + 1 :]]
    if sample_pairs is not None and len(pairs) > sample_pairs:
        rng = np.random.default_rng(seed)
        chosen = rng.choice(len(pairs), size=sample_pairs, replace=False)
        pairs = [pairs[int(i)] for i in sorted(chosen)]
    source_distances: Dict[int, Dict[int, int]] = {}
    target_distances: Dict[int, Dict[int, int]] = {}
    a, b = 1.0, 0.0
    for u, v in pairs:
        if u not in source_distances:
            source_distances[u] = bfs_distances(source, u)
            target_distances[u] = bfs_distances(target, forward[u])
        d = source_distances[u][v]
        d_target = target_distances[u][forward[v]]
        a = max(a, d_target / d)
        b = max(b, float(d_target - d))
    return a, b, len(pairs)


def coverage_radius(graph: CubicMultigraph, centers: Sequence[int]) -> int:
    """Largest distance from a vertex of graph to the nearest center."""
    distances = {c: 0 for c in centers}
    queue = deque(centers)
    while queue:
        x = queue.popleft()
        for y in graph.neighbors(x):
            if y not in distances:
                distances[y] = distances[x] + 1
                queue.append(y)
    return max(distances.values())


def _least_short_cycle_edge(graph: CubicMultigraph, rank: Dict[int, int]) -> int:
    """
    Least edge of the least cycle shorter than the target girth. Cycles compare by length, then
    by the sorted ranks of their vertices and edges; edges by the ranks of their ends, half-edge id
    last. The returned half-edge sits at the lower ranked end.
    """

    def ranked(v: int) -> int:
        return rank.get(v, v)

    def edge_rank(edge: Tuple[int, int]) -> Tuple[int, int]:
        return tuple(sorted((ranked(owner(edge[0])), ranked(owner(edge[1])))))

    cycle = min(
        short_cycles(graph, TARGET_GIRTH - 1),
        key=lambda c: (
            c.length,
            sorted(ranked(v) for v in c.vertices),
            sorted(edge_rank(edge) for edge in c.edges),
            c.sort_key(),
        ),
    )
    edge = min(cycle.edges, key=lambda e: (edge_rank(e), e))
    # the gadget is numbered from the side of the returned half-edge
    return min(edge, key=lambda h: (ranked(owner(h)), h))


def girth_lift(
    graph: CubicMultigraph, sample_pairs: Optional[int] = 2000, seed: int = 0
) -> Tuple[CubicMultigraph, Correspondence]:
    """
    Raises the girth to at least 6 by octagon gadgets. While a cycle shorter than 6 exists, the
    least such cycle loses its least edge to a gadget, both ordered by the canonical labels of the
    input graph; gadget vertices rank after them by id. Original vertices keep their ids, so the
    correspondence is the identity on them.
    :param graph: the graph
    :param sample_pairs: cap on the vertex pairs used for the distortion measurement
    :param seed: seed of the pair sample
    :return: lifted graph and the correspondence with measured (a, b)
    """
    cap = 10 * graph.edge_count
    lifted = graph
    gadgets = 0
    rank = None
    while girth(lifted) < TARGET_GIRTH:
        if gadgets >= cap:
            raise NonTerminationError(f"Girth lift did not finish after {cap} gadgets.")
        if rank is None:
            rank = canonical_labeling(graph)[1]
        lifted, _, _ = insert_octagon_gadget(lifted, _least_short_cycle_edge(lifted, rank))
        gadgets += 1
    forward = {v: v for v in range(graph.vertex_count)}
    a, b, measured = measure_distortion(graph, lifted, forward, sample_pairs, seed)
    correspondence = Correspondence(
        forward=forward,
        a=a,
        b=b,
        coverage_radius=coverage_radius(lifted, list(forward.values())),
        gadget_count=gadgets,
        measured_pairs=measured,
    )
    return lifted, correspondence


def _cycle_entries(graph: CubicMultigraph, cycle: Cycle) -> List[Tuple[int, int]]:
    """
    Per cycle vertex, the half-edge the cycle enters by and the one it leaves by.
    """
    length = cycle.length
    if length < 1 or len(cycle.vertices) != length:
        raise InvalidCycleError("Cycle vertices and steps do not match.")
    if len(set(cycle.vertices)) != length:
        raise InvalidCycleError(f"Cycle {cycle.vertices} is not simple.")
    entries = []
    for i in range(length):
        out, _ = cycle.steps[i]
        _, inn = cycle.steps[i - 1]
        if owner(out) != cycle.vertices[i] or owner(inn) != cycle.vertices[i]:
            raise InvalidCycleError(f"Step half-edges do not sit at cycle vertex {cycle.vertices[i]}.")
        if not 0 <= out < 3 * graph.vertex_count or graph.partner(out) != cycle.steps[i][1]:
            raise InvalidCycleError(f"Half-edges {cycle.steps[i]} do not form an edge.")
        if length > 1 and inn == out:
            raise InvalidCycleError(f"Cycle enters and leaves vertex {cycle.vertices[i]} by the same half-edge.")
        entries.append((inn, out))
    return entries


def _cycle_from_entries(entries: List[Tuple[int, int]]) -> Cycle:
    vertices = tuple(owner(inn) for inn, _ in entries)
    steps = tuple((entries[i][1], entries[(i + 1) % len(entries)][0]) for i in range(len(entries)))
    return Cycle(vertices, steps)


def reduction_round(graph: CubicMultigraph, cycle: Cycle) -> Tuple[CubicMultigraph, Cycle, MoveSet]:
    """
    One halving round: simultaneous moves on cycle edges e_0, e_2, ..., each merging the two
    ends of its edge into one cycle vertex. A cycle of length l >= 3 comes out with length
    floor(l/2) + 1; a cycle of length 2 becomes a loop.
    :return: new graph, the image of the cycle, the applied move set
    """
    entries = _cycle_entries(graph, cycle)
    length = len(entries)
    if length < 2:
        raise InvalidCycleError("A loop cannot be reduced further.")
    move_count = 1 if length == 2 else (length + 1) // 2 - 1
    moves = []
    for k in range(move_count):
        i = 2 * k
        in_u, _ = entries[i]
        _, out_v = entries[i + 1]
        edge_half = cycle.steps[i][0]
        hu, _, a1, _, b1, _ = move_slots(graph, edge_half)
        if owner(hu) == cycle.vertices[i]:
            cu, cv = in_u, out_v
        else:
            cu, cv = out_v, in_u
        variant = "A" if (cu == a1) == (cv == b1) else "B"
        moves.append((edge_half, variant))
    move_set = MoveSet.of(moves)
    swap = _swap_map([move_transposition(graph, e, variant) for e, variant in move_set.moves])
    moved = apply_moveset(graph, move_set)
    new_entries = []
    i = 0
    while i < length:
        if i < 2 * move_count and i % 2 == 0:
            new_entries.append((swap.get(entries[i][0], entries[i][0]), swap.get(entries[i + 1][1], entries[i + 1][1])))
            i += 2
        else:
            new_entries.append((swap.get(entries[i][0], entries[i][0]), swap.get(entries[i][1], entries[i][1])))
            i += 1
    new_cycle = _cycle_from_entries(new_entries)
    expected = 1 if length == 2 else length // 2 + 1
    assert new_cycle.length == expected, f"cycle of length {length} became {new_cycle.length}"
    _cycle_entries(moved, new_cycle)
    return moved, new_cycle, move_set


def reduce_cycle_to_loop(graph: CubicMultigraph, cycle: Cycle) -> Tuple[CubicMultigraph, List[MoveSet], Cycle]:
    """
    Iterates halving rounds until the cycle is a loop.
    :return: final graph, the move set of every round, the final loop
    """
    trace: List[MoveSet] = []
    current = graph
    _cycle_entries(current, cycle)
    while cycle.length > 1:
        current, cycle, move_set = reduction_round(current, cycle)
        trace.append(move_set)
    assert current.is_loop(cycle.steps[0][0]), "reduction did not end in a loop"
    return current, trace, cycle


def next_cycle_length(length: int) -> int:
    return 1 if length == 2 else length // 2 + 1


def reduction_rounds(length: int) -> int:
    """Rounds needed to turn a cycle of the given length into a loop."""
    if length < 1:
        raise ParamError(f"Cycle length must be >= 1, got {length}.")
    rounds = 0
    while length > 1:
        length = next_cycle_length(length)
        rounds += 1
    return rounds


def remove_loop_gadgets(graph: CubicMultigraph, loops: Sequence[int]) -> CubicMultigraph:
    """
    Deletes each listed loop together with its vertex and the edge hanging it, then smooths
    the vertex it hung from. Surviving vertices keep their relative order.
    :param graph: the graph
    :param loops: one half-edge per removed loop
    :return: graph with 2 * len(loops) fewer vertices
    """
    loop_vertices = []
    for h in loops:
        if not graph.is_loop(h):
            raise GadgetError(f"Edge {graph.edge(h)} is not a loop.")
        loop_vertices.append(owner(h))
    if len(set(loop_vertices)) != len(loop_vertices):
        raise GadgetError("Loops must sit at distinct vertices.")
    if graph.vertex_count - 2 * len(loop_vertices) < 2:
        raise GadgetError(
            f"Removing {len(loop_vertices)} loop gadgets from {graph.vertex_count} vertices leaves fewer than 2."
        )
    hubs = []
    for x in loop_vertices:
        (stem,) = [h for h in graph.half_edges(x) if not graph.is_loop(h)]
        y = owner(graph.partner(stem))
        if y in loop_vertices:
            raise GadgetError(f"Loop vertex {x} hangs from loop vertex {y}, which is removed too.")
        hubs.append((x, y, graph.partner(stem)))
    if len({y for _, y, _ in hubs}) != len(hubs):
        raise GadgetError("Two loop gadgets hang from the same vertex.")
    pairing = list(graph.pairing)
    removed = set()
    for x, y, stem_end in hubs:
        c1, c2 = [h for h in range(3 * y, 3 * y + 3) if h != stem_end]
        if pairing[c1] == c2:
            raise GadgetError(f"Smoothing vertex {y} would leave a closed circle.")
        p1, p2 = pairing[c1], pairing[c2]
        pairing[p1] = p2
        pairing[p2] = p1
        removed.update((x, y))
    survivors = [v for v in range(graph.vertex_count) if v not in removed]
    relabel = {v: i for i, v in enumerate(survivors)}
    new_pairing = [0] * (3 * len(survivors))
    for v in survivors:
        for k in range(3):
            partner = pairing[3 * v + k]
            new_pairing[3 * relabel[v] + k] = 3 * relabel[owner(partner)] + partner % 3
    try:
        return CubicMultigraph(len(survivors), new_pairing)
    except ValidationError as e:
        raise GadgetError(f"Loop removal produced an invalid graph: {e}") from e


def reinsert_loops(graph: CubicMultigraph, edges: Sequence[int]) -> CubicMultigraph:
    """Hangs one loop gadget off each listed edge, in order."""
    for e in edges:
        graph = attach_loop_gadget(graph, e)
    return graph
