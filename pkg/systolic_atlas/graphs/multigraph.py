"""
Half-edge representation of connected cubic multigraphs (loops and parallel edges allowed)
together with the graph algorithms the rest of the package is built on: girth, BFS,
canonical codes, short cycles, distance colorings, edge partitions and cycle packings.

Half-edges 3v, 3v+1 and 3v+2 belong to vertex v. An edge is a pair of half-edges and is
referenced by either of its half-edges; its normalized form is (h, h') with h < h'.
"""

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from ..exceptions import DegreeError, DisconnectedError, ParamError

Edge = Tuple[int, int]

CMG_HEADER = "cmg1"


def owner(h: int) -> int:
    """Vertex of a half-edge."""
    return h // 3


class CubicMultigraph:
    """
    Immutable connected 3-regular multigraph stored as a fixed-point-free involution on half-edges.
    """

    def __init__(self, vertex_count: int, pairing: Sequence[int]):
        """
        Initializes and validates the graph.
        :param vertex_count: number of vertices V
        :param pairing: involution on range(3V); pairing[h] is the half-edge glued to h
        """
        if vertex_count < 1:
            raise ParamError(f"A cubic multigraph needs at least one vertex, got {vertex_count}.")
        if len(pairing) != 3 * vertex_count:
            raise DegreeError(
                f"Expected {3 * vertex_count} half-edges for {vertex_count} vertices, got {len(pairing)}."
            )
        for h, partner in enumerate(pairing):
            if not 0 <= partner < len(pairing):
                raise DegreeError(f"Half-edge {h} is glued to nonexistent half-edge {partner}.")
            if partner == h or pairing[partner] != h:
                raise DegreeError(f"Pairing is not a fixed-point-free involution at half-edge {h}.")
        self._vertex_count = int(vertex_count)
        self._pairing = tuple(int(p) for p in pairing)
        if not self._is_connected():
            raise DisconnectedError("The multigraph is not connected.")

    @property
    def vertex_count(self) -> int:
        return self._vertex_count

    @property
    def pairing(self) -> Tuple[int, ...]:
        return self._pairing

    @property
    def edge_count(self) -> int:
        return 3 * self._vertex_count // 2

    @property
    def genus(self) -> int:
        """Genus of the closed surface whose pants decomposition has this dual graph."""
        return (self._vertex_count + 2) // 2

    def partner(self, h: int) -> int:
        return self._pairing[h]

    def half_edges(self, v: int) -> Tuple[int, int, int]:
        self._check_vertex(v)
        return 3 * v, 3 * v + 1, 3 * v + 2

    def edge(self, h: int) -> Edge:
        """Normalized edge containing half-edge h."""
        partner = self._pairing[h]
        return (h, partner) if h < partner else (partner, h)

    def endpoints(self, h: int) -> Tuple[int, int]:
        """Endpoints (u, v) with u <= v of the edge containing h."""
        u, v = owner(h), owner(self._pairing[h])
        return (u, v) if u <= v else (v, u)

    def is_loop(self, h: int) -> bool:
        return owner(h) == owner(self._pairing[h])

    def edges(self) -> List[Edge]:
        """All edges in order of their smaller half-edge."""
        return [(h, p) for h, p in enumerate(self._pairing) if h < p]

    def edge_list(self) -> List[Tuple[int, int]]:
        """Sorted vertex pairs (u <= v), one per edge."""
        return sorted(self.endpoints(h) for h, _ in self.edges())

    def loop_vertices(self) -> List[int]:
        return sorted({owner(h) for h, _ in self.edges() if self.is_loop(h)})

    def neighbor_multiplicities(self, v: int) -> Dict[int, int]:
        """
        Number of edges from v to each vertex; a loop at v counts once under key v.
        """
        counts: Dict[int, int] = {}
        for h in self.half_edges(v):
            w = owner(self._pairing[h])
            if w == v and self._pairing[h] < h:
                continue
            counts[w] = counts.get(w, 0) + 1
        return counts

    def neighbors(self, v: int) -> List[int]:
        """Distinct vertices adjacent to v, excluding v itself."""
        return sorted(w for w in self.neighbor_multiplicities(v) if w != v)

    def relabeled(self, permutation: Sequence[int]) -> "CubicMultigraph":
        """
        Returns the isomorphic graph in which vertex v is renamed permutation[v].
        """
        assert sorted(permutation) == list(
            range(self._vertex_count)
        ), "permutation must be a permutation of the vertices"
        new_pairing = [0] * len(self._pairing)
        for h, p in enumerate(self._pairing):
            new_h = 3 * permutation[owner(h)] + h % 3
            new_p = 3 * permutation[owner(p)] + p % 3
            new_pairing[new_h] = new_p
        return CubicMultigraph(self._vertex_count, new_pairing)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self._vertex_count:
            raise IndexError(f"Vertex {v} out of range for a graph with {self._vertex_count} vertices.")

    def _is_connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for k in range(3):
                w = owner(self._pairing[3 * v + k])
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self._vertex_count

    def __eq__(self, other):
        if not isinstance(other, CubicMultigraph):
            return NotImplemented
        return self._vertex_count == other._vertex_count and self._pairing == other._pairing

    def __hash__(self):
        return hash((self._vertex_count, self._pairing))

    def __len__(self):
        return self._vertex_count

    def __repr__(self):
        return f"CubicMultigraph(V={self._vertex_count}, edges={self.edge_list()})"


class MultigraphBuilder:
    """
    Mutable pairing used to assemble new graphs by surgery. Unpaired half-edges are -1
    until build() validates the result.
    """

    def __init__(self, graph: Optional[CubicMultigraph] = None):
        self.pairing: List[int] = list(graph.pairing) if graph is not None else []

    @property
    def vertex_count(self) -> int:
        return len(self.pairing) // 3

    def add_vertex(self) -> int:
        v = self.vertex_count
        self.pairing.extend([-1, -1, -1])
        return v

    def connect(self, h1: int, h2: int) -> None:
        self.pairing[h1] = h2
        self.pairing[h2] = h1

    def subdivide(self, h: int, k: int) -> List[int]:
        """
        Subdivides the edge containing h by k new vertices, listed from the side of h.
        Each new vertex w uses 3w towards h, 3w+1 away from h and leaves 3w+2 free.
        """
        far = self.pairing[h]
        previous = h
        created = []
        for _ in range(k):
            w = self.add_vertex()
            self.connect(previous, 3 * w)
            previous = 3 * w + 1
            created.append(w)
        self.connect(previous, far)
        return created

    def build(self) -> CubicMultigraph:
        assert -1 not in self.pairing, "builder still has unpaired half-edges"
        return CubicMultigraph(self.vertex_count, self.pairing)


def from_edge_list(vertex_count: int, edges: Iterable[Sequence[int]]) -> CubicMultigraph:
    """
    Builds a graph from vertex pairs. Edges get half-edges in input order; at each vertex the
    slots are filled in order of appearance, so the assignment is deterministic.
    :param vertex_count: number of vertices V
    :param edges: 3V/2 vertex pairs, repeats and loops allowed
    :return: validated CubicMultigraph
    """
    edges = [tuple(edge) for edge in edges]
    for edge in edges:
        if len(edge) != 2:
            raise ParamError(f"Edge {edge} does not have two endpoints.")
        for v in edge:
            if not 0 <= v < vertex_count:
                raise IndexError(f"Vertex {v} out of range for a graph with {vertex_count} vertices.")
    degree = [0] * vertex_count
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    bad = [v for v, d in enumerate(degree) if d != 3]
    if bad:
        raise DegreeError(f"Vertices {bad} do not have degree 3 (degrees {[degree[v] for v in bad]}).")
    next_slot = [3 * v for v in range(vertex_count)]
    pairing = [-1] * (3 * vertex_count)
    for u, v in edges:
        hu = next_slot[u]
        next_slot[u] += 1
        hv = next_slot[v]
        next_slot[v] += 1
        pairing[hu] = hv
        pairing[hv] = hu
    return CubicMultigraph(vertex_count, pairing)


def to_cmg(graph: CubicMultigraph) -> str:
    lines = [CMG_HEADER, f"v {graph.vertex_count}"]
    lines.extend(f"e {u} {v}" for u, v in graph.edge_list())
    return "\n".join(lines) + "\n"


def from_cmg(text: str) -> CubicMultigraph:
    """
    Parses the .cmg text format: a header line, a vertex count line and one line per edge.
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != CMG_HEADER:
        raise ParamError(f"Missing '{CMG_HEADER}' header.")
    if len(lines) < 2 or not lines[1].startswith("v "):
        raise ParamError("Second line must be 'v <V>'.")
    try:
        vertex_count = int(lines[1].split()[1])
        edges = []
        for line in lines[2:]:
            tag, u, v = line.split()
            if tag != "e":
                raise ValueError(line)
            edges.append((int(u), int(v)))
    except ValueError as e:
        raise ParamError(f"Malformed .cmg line: {e}") from e
    return from_edge_list(vertex_count, edges)


def read_cmg(path: str) -> CubicMultigraph:
    with open(path) as f:
        return from_cmg(f.read())


def write_cmg(graph: CubicMultigraph, path: str) -> None:
    with open(path, "w", newline="\n") as f:
        f.write(to_cmg(graph))


def to_networkx(graph: CubicMultigraph) -> nx.MultiGraph:
    nx_graph = nx.MultiGraph()
    nx_graph.add_nodes_from(range(graph.vertex_count))
    for h, p in graph.edges():
        nx_graph.add_edge(owner(h), owner(p), key=h)
    return nx_graph


def bfs_distances(graph: CubicMultigraph, v: int, radius: Optional[int] = None) -> Dict[int, int]:
    """
    Unweighted BFS distances from v.
    :param graph: the graph
    :param v: source vertex
    :param radius: optional cutoff; vertices further away are omitted
    :return: vertex -> distance
    """
    graph._check_vertex(v)
    distances = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if radius is not None and distances[x] >= radius:
            continue
        for y in graph.neighbors(x):
            if y not in distances:
                distances[y] = distances[x] + 1
                queue.append(y)
    return distances


def distance_matrix(graph: CubicMultigraph) -> np.ndarray:
    return np.array(
        [
            [bfs_distances(graph, v)[w] for w in range(graph.vertex_count)]
            for v in range(graph.vertex_count)
        ]
    )


def girth(graph: CubicMultigraph) -> int:
    """
    Length of a shortest cycle: 1 with a loop, 2 with a parallel pair, otherwise the BFS minimum.
    """
    if graph.loop_vertices():
        return 1
    for v in range(graph.vertex_count):
        if any(m >= 2 for m in graph.neighbor_multiplicities(v).values()):
            return 2
    best = None
    for root in range(graph.vertex_count):
        distances = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in graph.neighbors(x):
                if y not in distances:
                    distances[y] = distances[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    length = distances[x] + distances[y] + 1
                    if best is None or length < best:
                        best = length
    assert best is not None, "a connected cubic graph always contains a cycle"
    return best


class CanonicalCode(str):
    """
    Isomorphism-invariant key "V|u1-v1;u2-v2;..." of a cubic multigraph: the smallest string over
    all vertex relabelings. Labels are zero-padded to a common width, so this is also the
    numerically smallest sorted edge list.
    """

    @property
    def vertex_count(self) -> int:
        return int(self.split("|", 1)[0])

    @property
    def edge_pairs(self) -> List[Tuple[int, int]]:
        body = self.split("|", 1)[1]
        return [tuple(int(x) for x in part.split("-")) for part in body.split(";")]

    def to_graph(self) -> CubicMultigraph:
        return from_edge_list(self.vertex_count, self.edge_pairs)


def format_code(vertex_count: int, edge_pairs: Iterable[Tuple[int, int]]) -> CanonicalCode:
    """Labels are zero-padded to the width of V - 1, so string order and numeric order agree."""
    width = len(str(vertex_count - 1))
    return CanonicalCode(f"{vertex_count}|" + ";".join(f"{u:0{width}d}-{v:0{width}d}" for u, v in edge_pairs))


def canonical_labeling(graph: CubicMultigraph) -> Tuple[CanonicalCode, Dict[int, int]]:
    """
    Computes the canonical code by search over labelings that number vertices in BFS order.

    The sorted edge list of a labeling is the concatenation of rows, row i holding the edges
    from vertex i to vertices labeled >= i. In a minimizing labeling the unlabeled neighbors
    of vertex i always receive the next free labels, higher multiplicity first, so only the
    start vertex and the order inside equal-multiplicity groups branch. Branches whose rows
    already exceed the best prefix are cut.
    :param graph: the graph
    :return: CanonicalCode and a minimizing labeling, vertex -> label
    """
    n = graph.vertex_count
    multiplicities = [graph.neighbor_multiplicities(v) for v in range(n)]
    best: List[Optional[List[Tuple[int, int]]]] = [None]
    best_label: Dict[int, int] = {}

    def extend(order: List[int], label: Dict[int, int], sequence: List[Tuple[int, int]], i: int):
        if i == n:
            if best[0] is None or sequence < best[0]:
                best[0] = list(sequence)
                best_label.clear()
                best_label.update(label)
            return
        v = order[i]
        row = []
        fresh: Dict[int, List[int]] = {}
        for w, m in multiplicities[v].items():
            if w in label:
                if label[w] >= i:
                    row.extend([(i, label[w])] * m)
            else:
                fresh.setdefault(m, []).append(w)
        groups = [sorted(fresh[m]) for m in sorted(fresh, reverse=True)]
        for arrangement in itertools.product(*(itertools.permutations(g) for g in groups)):
            new_order = list(order)
            new_label = dict(label)
            new_row = list(row)
            for group in arrangement:
                for w in group:
                    new_label[w] = len(new_order)
                    new_order.append(w)
                    new_row.extend([(i, new_label[w])] * multiplicities[v][w])
            new_row.sort()
            new_sequence = sequence + new_row
            if best[0] is not None and new_sequence > best[0][: len(new_sequence)]:
                continue
            extend(new_order, new_label, new_sequence, i + 1)

    for start in range(n):
        extend([start], {start: 0}, [], 0)
    return format_code(n, best[0]), dict(best_label)


def canonical_code(graph: CubicMultigraph) -> CanonicalCode:
    return canonical_labeling(graph)[0]


def brute_force_code(graph: CubicMultigraph) -> CanonicalCode:
    """
    Canonical code by minimizing over all V! relabelings. Only usable for small V.
    """
    n = graph.vertex_count
    edge_list = graph.edge_list()
    best = None
    for permutation in itertools.permutations(range(n)):
        relabeled = sorted(
            tuple(sorted((permutation[u], permutation[v]))) for u, v in edge_list
        )
        if best is None or relabeled < best:
            best = relabeled
    return format_code(n, best)


def is_isomorphic(first: CubicMultigraph, second: CubicMultigraph) -> bool:
    return canonical_code(first) == canonical_code(second)


@dataclass(frozen=True)
class Cycle:
    """
    A cycle given by its vertex sequence and, per traversed edge, the half-edge leaving
    vertices[i] and the half-edge entering vertices[i + 1].
    """

    vertices: Tuple[int, ...]
    steps: Tuple[Tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple((min(a, b), max(a, b)) for a, b in self.steps)

    def sort_key(self):
        return self.length, self.vertices, self.edges


def short_cycles(graph: CubicMultigraph, max_length: int) -> List[Cycle]:
    """
    All cycles with at most max_length edges, each once, ordered by (length, vertices, edges).
    Parallel strands give distinct cycles.
    """
    cycles: List[Cycle] = []
    if max_length < 1:
        return cycles
    pairing = graph.pairing
    for h, p in graph.edges():
        if graph.is_loop(h):
            cycles.append(Cycle((owner(h),), ((h, p),)))
    if max_length >= 2:
        for h, p in graph.edges():
            u, v = owner(h), owner(p)
            if u >= v:
                continue
            for back_out in graph.half_edges(v):
                back_in = pairing[back_out]
                if back_out != p and owner(back_in) == u and (min(back_out, back_in) > h):
                    cycles.append(Cycle((u, v), ((h, p), (back_out, back_in))))
    if max_length >= 3:
        for start in range(graph.vertex_count):
            _extend_simple_paths(graph, start, [start], [], max_length, cycles)
    cycles.sort(key=Cycle.sort_key)
    return cycles


def _extend_simple_paths(graph, start, path, steps, max_length, cycles):
    x = path[-1]
    for out in graph.half_edges(x):
        inn = graph.partner(out)
        w = owner(inn)
        if w == x:
            continue
        if w == start and len(path) >= 3 and path[1] < path[-1]:
            cycles.append(Cycle(tuple(path), tuple(steps + [(out, inn)])))
        elif w > start and w not in path and len(path) < max_length:
            _extend_simple_paths(graph, start, path + [w], steps + [(out, inn)], max_length, cycles)


def distance_coloring(graph: CubicMultigraph, n: int) -> Dict[int, int]:
    """
    Greedy coloring in which same-colored vertices are at distance >= n.
    :param graph: the graph
    :param n: minimum distance between vertices of the same color, >= 2
    :return: vertex -> color, colors numbered from 0
    """
    if n < 2:
        raise ParamError(f"Distance coloring needs n >= 2, got {n}.")
    colors: Dict[int, int] = {}
    for v in range(graph.vertex_count):
        used = {
            colors[w]
            for w in bfs_distances(graph, v, radius=n - 1)
            if w in colors
        }
        color = 0
        while color in used:
            color += 1
        colors[v] = color
    return colors


def coloring_bound(n: int) -> int:
    return 3 * (2**n - 1) + 1


def pants_disjoint_edge_partition(graph: CubicMultigraph) -> List[List[Edge]]:
    """
    Greedy partition of the edges into classes of pairwise vertex-disjoint edges.
    Every edge conflicts with at most 4 others, so at most 5 classes are used.
    """
    classes: List[List[Edge]] = []
    class_vertices: List[set] = []
    for h, p in graph.edges():
        ends = {owner(h), owner(p)}
        for index, vertices in enumerate(class_vertices):
            if not ends & vertices:
                classes[index].append((h, p))
                vertices.update(ends)
                break
        else:
            classes.append([(h, p)])
            class_vertices.append(set(ends))
    assert len(classes) <= 5, f"greedy edge partition used {len(classes)} classes"
    return classes


@dataclass
class CyclePacking:
    """
    Vertex-disjoint cycles of length at most max_length.
    """

    cycles: List[Cycle]
    max_length: int
    method: str = "greedy"
    greedy_size: int = 0
    centers: List[int] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.cycles)

    def __len__(self):
        return len(self.cycles)


def packing_threshold(vertex_count: int, max_length: int) -> int:
    return vertex_count // (3 * 2 ** (max_length - 1))


def _ball_contains(ball: Dict[int, int], cycle: Cycle) -> bool:
    return all(v in ball for v in cycle.vertices)


def packing_hypothesis_holds(graph: CubicMultigraph, max_length: int) -> bool:
    """
    True iff the radius-L ball of every vertex contains a whole cycle of length <= L.
    """
    cycles = short_cycles(graph, max_length)
    for v in range(graph.vertex_count):
        ball = bfs_distances(graph, v, radius=max_length)
        if not any(_ball_contains(ball, cycle) for cycle in cycles):
            return False
    return True


def greedy_cycle_packing(graph: CubicMultigraph, max_length: int) -> CyclePacking:
    """
    Picks centers pairwise at distance >= 2L+1, takes the least short cycle inside each
    center's L-ball, then adds disjoint short cycles until the packing is maximal.
    """
    cycles = short_cycles(graph, max_length)
    centers: List[int] = []
    chosen: List[Cycle] = []
    used = set()
    if not cycles:
        return CyclePacking([], max_length, "greedy", 0, [])
    for v in range(graph.vertex_count):
        near = bfs_distances(graph, v, radius=2 * max_length)
        if any(c in near for c in centers):
            continue
        centers.append(v)
        ball = bfs_distances(graph, v, radius=max_length)
        for cycle in cycles:
            if _ball_contains(ball, cycle) and not used & set(cycle.vertices):
                chosen.append(cycle)
                used.update(cycle.vertices)
                break
    for cycle in cycles:
        if not used & set(cycle.vertices):
            chosen.append(cycle)
            used.update(cycle.vertices)
    chosen.sort(key=Cycle.sort_key)
    return CyclePacking(chosen, max_length, "greedy", len(chosen), centers)


def exact_cycle_packing(graph: CubicMultigraph, max_length: int) -> List[Cycle]:
    """
    Maximum number of vertex-disjoint cycles of length <= L by backtracking.
    """
    cycles = short_cycles(graph, max_length)
    vertex_sets = [frozenset(cycle.vertices) for cycle in cycles]
    best: List[List[int]] = [[]]

    def search(index: int, used: frozenset, picked: List[int]):
        if len(picked) > len(best[0]):
            best[0] = list(picked)
        if index == len(cycles):
            return
        # every further cycle takes at least one unused vertex
        if len(picked) + (graph.vertex_count - len(used)) <= len(best[0]):
            return
        if not vertex_sets[index] & used:
            search(index + 1, used | vertex_sets[index], picked + [index])
        search(index + 1, used, picked)

    search(0, frozenset(), [])
    return [cycles[i] for i in best[0]]


def disjoint_cycle_packing(
    graph: CubicMultigraph, max_length: int, exact_v_max: int = 10
) -> CyclePacking:
    """
    Packs vertex-disjoint cycles of length at most max_length.
    :param graph: the graph
    :param max_length: L >= 1
    :param exact_v_max: graphs up to this size are also packed exactly, and the exact packing is returned
    :return: CyclePacking; method is "exact" when the exact search ran
    """
    if max_length < 1:
        raise ParamError(f"Cycle length bound must be >= 1, got {max_length}.")
    packing = greedy_cycle_packing(graph, max_length)
    if graph.vertex_count <= exact_v_max:
        exact = exact_cycle_packing(graph, max_length)
        assert len(exact) >= packing.greedy_size, "exact packing smaller than greedy packing"
        packing = CyclePacking(
            sorted(exact, key=Cycle.sort_key),
            max_length,
            "exact",
            packing.greedy_size,
            packing.centers,
        )
    return packing


def insert_edge(graph: CubicMultigraph, e1: int, e2: int) -> CubicMultigraph:
    """
    Subdivides edges e1 and e2 (referenced by a half-edge) and joins the two new vertices.
    If both refer to the same edge it is subdivided twice and the new vertices form a parallel pair.
    """
    builder = MultigraphBuilder(graph)
    if graph.edge(e1) == graph.edge(e2):
        x, y = builder.subdivide(e1, 2)
    else:
        (x,) = builder.subdivide(e1, 1)
        (y,) = builder.subdivide(e2, 1)
    builder.connect(3 * x + 2, 3 * y + 2)
    return builder.build()


def attach_loop_gadget(graph: CubicMultigraph, e: int) -> CubicMultigraph:
    """
    Subdivides edge e and hangs a new vertex carrying a loop off the subdivision vertex.
    """
    builder = MultigraphBuilder(graph)
    (x,) = builder.subdivide(e, 1)
    y = builder.add_vertex()
    builder.connect(3 * x + 2, 3 * y)
    builder.connect(3 * y + 1, 3 * y + 2)
    return builder.build()
