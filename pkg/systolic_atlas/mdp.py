"""
Quotient of the diagonal pants graph: isomorphism classes of cubic multigraphs on 2g-2
vertices, joined when one simultaneous Whitehead move set turns one class into the other.
"""

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple, Union

from .exceptions import LimitError, ParamError
from .graphs.census import enumerate_census
from .graphs.multigraph import CanonicalCode, CubicMultigraph, canonical_code, owner
from .rewrite import VARIANTS, MoveSet, apply_moveset
from .utils import log, parallel_map

NEIGHBOR_V_MAX = 10


@dataclass(frozen=True)
class MdpVertex:
    """
    A vertex of the move graph: the canonical code of a cubic multigraph.
    """

    code: CanonicalCode

    @classmethod
    def from_graph(cls, graph: CubicMultigraph) -> "MdpVertex":
        return cls(canonical_code(graph))

    @property
    def vertex_count(self) -> int:
        return CanonicalCode(self.code).vertex_count

    @property
    def genus(self) -> int:
        return (self.vertex_count + 2) // 2

    def graph(self) -> CubicMultigraph:
        return CanonicalCode(self.code).to_graph()


@dataclass(frozen=True)
class Unreached:
    """No vertex satisfying the predicate lies within r_max moves."""

    r_max: int


def _neighbor_v_max(settings: Optional[Dict]) -> int:
    if settings is None:
        return NEIGHBOR_V_MAX
    return settings.get("mdp", {}).get("neighbor_v_max", NEIGHBOR_V_MAX)


def _check_limit(vertex_count: int, settings: Optional[Dict]) -> None:
    v_max = _neighbor_v_max(settings)
    if vertex_count > v_max:
        raise LimitError(f"Neighbor generation is capped at V={v_max}, got V={vertex_count}.")


def movable_matchings(graph: CubicMultigraph) -> List[Tuple[int, ...]]:
    """
    All non-empty sets of pairwise vertex-disjoint non-loop edges, as tuples of half-edges.
    """
    edges = [h for h, _ in graph.edges() if not graph.is_loop(h)]
    matchings: List[Tuple[int, ...]] = []

    def extend(start: int, used: frozenset, picked: Tuple[int, ...]):
        for index in range(start, len(edges)):
            e = edges[index]
            ends = {owner(e), owner(graph.partner(e))}
            if ends & used:
                continue
            matching = picked + (e,)
            matchings.append(matching)
            extend(index + 1, used | ends, matching)

    extend(0, frozenset(), ())
    return matchings


@lru_cache(maxsize=None)
def neighbor_codes(code: str) -> Tuple[CanonicalCode, ...]:
    """
    Sorted codes reachable from code by one move set, every matching with every A/B assignment,
    excluding code itself.
    """
    graph = CanonicalCode(code).to_graph()
    found = set()
    for matching in movable_matchings(graph):
        for variants in itertools.product(VARIANTS, repeat=len(matching)):
            moved = apply_moveset(graph, MoveSet(tuple(zip(matching, variants))))
            found.add(canonical_code(moved))
    found.discard(code)
    return tuple(sorted(found))


def _neighbor_codes_task(code: str) -> Tuple[CanonicalCode, ...]:
    # ray.remote needs a plain function, not the lru_cache wrapper
    return neighbor_codes(code)


def neighbors(vertex: MdpVertex, settings: Optional[Dict] = None) -> List[MdpVertex]:
    """
    Classes one simultaneous move set away from vertex.
    :param vertex: the start class
    :param settings: settings dictionary; mdp.neighbor_v_max caps the vertex count
    :return: sorted list of MdpVertex
    """
    _check_limit(vertex.vertex_count, settings)
    return [MdpVertex(code) for code in neighbor_codes(vertex.code)]


def neighbor_table(
    vertex_count: int,
    threads: int = 1,
    settings: Optional[Dict] = None,
    verbose: bool = False,
    **census_kwargs,
) -> Dict[CanonicalCode, Tuple[CanonicalCode, ...]]:
    """
    Adjacency of the whole move graph for one V, computed with ray workers when threads > 1.
    """
    _check_limit(vertex_count, settings)
    table = enumerate_census(vertex_count, settings=settings, **census_kwargs)
    log(f"Computing move neighbors of {table.count} classes on {vertex_count} vertices ...", verbose)
    results = parallel_map(_neighbor_codes_task, list(table.codes), threads, verbose)
    adjacency = {code: tuple(CanonicalCode(n) for n in result) for code, result in zip(table.codes, results)}
    return adjacency


def ball(vertex: MdpVertex, radius: int, settings: Optional[Dict] = None) -> Dict[CanonicalCode, int]:
    """
    BFS ball in the move graph.
    :return: code -> distance for every class within radius moves
    """
    if radius < 0:
        raise ParamError(f"Radius must be >= 0, got {radius}.")
    _check_limit(vertex.vertex_count, settings)
    distances = {vertex.code: 0}
    frontier = [vertex.code]
    for step in range(1, radius + 1):
        next_frontier = []
        for code in frontier:
            for other in neighbor_codes(code):
                if other not in distances:
                    distances[other] = step
                    next_frontier.append(other)
        frontier = sorted(next_frontier)
        if not frontier:
            break
    return distances


def distance_to_set(
    vertex: MdpVertex,
    predicate: Callable[[CubicMultigraph], bool],
    r_max: int,
    settings: Optional[Dict] = None,
) -> Union[int, Unreached]:
    """
    Least number of moves from vertex to a class whose graph satisfies predicate.
    :return: the distance, or Unreached(r_max)
    """
    if r_max < 0:
        raise ParamError(f"r_max must be >= 0, got {r_max}.")
    _check_limit(vertex.vertex_count, settings)
    seen = {vertex.code}
    frontier = [vertex.code]
    for step in range(r_max + 1):
        for code in frontier:
            if predicate(CanonicalCode(code).to_graph()):
                return step
        if step == r_max:
            break
        next_frontier = []
        for code in frontier:
            for other in neighbor_codes(code):
                if other not in seen:
                    seen.add(other)
                    next_frontier.append(other)
        frontier = sorted(next_frontier)
        if not frontier:
            break
    return Unreached(r_max)


def multi_source_distances(
    adjacency: Dict[CanonicalCode, Tuple[CanonicalCode, ...]], sources
) -> Dict[CanonicalCode, int]:
    distances = {code: 0 for code in sources}
    queue = deque(sorted(distances))
    while queue:
        code = queue.popleft()
        for other in adjacency[code]:
            if other not in distances:
                distances[other] = distances[code] + 1
                queue.append(other)
    return distances


def eccentricities(adjacency: Dict[CanonicalCode, Tuple[CanonicalCode, ...]]) -> Dict[CanonicalCode, Optional[int]]:
    result = {}
    for code in adjacency:
        distances = multi_source_distances(adjacency, [code])
        result[code] = max(distances.values()) if len(distances) == len(adjacency) else None
    return result


def mdp_is_connected(vertex_count: int, **kwargs) -> bool:
    adjacency = neighbor_table(vertex_count, **kwargs)
    start = next(iter(adjacency))
    return len(multi_source_distances(adjacency, [start])) == len(adjacency)


def mdp_diameter(vertex_count: int, **kwargs) -> Optional[int]:
    """Diameter of the move graph on V vertices, None if it is disconnected."""
    values = eccentricities(neighbor_table(vertex_count, **kwargs)).values()
    if any(value is None for value in values):
        return None
    return max(values)


def ball_bound(g: int, r: int) -> int:
    """Upper bound (3^{g-1})^r on the size of a radius-r ball."""
    if g < 2 or r < 0:
        raise ParamError(f"ball_bound needs g >= 2 and r >= 0, got g={g}, r={r}.")
    return (3 ** (g - 1)) ** r


def intersection_bound_f(k: int) -> int:
    """f(K) = sum_{i=1}^{K-1} 2^i K^2."""
    if k < 1:
        raise ParamError(f"K must be >= 1, got {k}.")
    return sum(2**i for i in range(1, k)) * k * k


def _exact_fraction(h) -> Fraction:
    return Fraction(str(h)) if isinstance(h, float) else Fraction(h)


def counting_estimates(g: int, h, max_length: int) -> Dict:
    """
    Exact bookkeeping of the loop-reduction counting argument.
    :param g: genus >= 2
    :param h: proportion in (0, 1); floats are read by their decimal representation
    :param max_length: cycle length bound L >= 1
    :return: loops = ceil(hg), reduced_vertices, reverse_count_bound, reduction_rounds_bound,
        packing_threshold and log10_bad_count_bound
    """
    if g < 2:
        raise ParamError(f"Genus must be >= 2, got {g}.")
    h_exact = _exact_fraction(h)
    if not 0 < h_exact < 1:
        raise ParamError(f"h must lie in (0, 1), got {h}.")
    if max_length < 1:
        raise ParamError(f"L must be >= 1, got {max_length}.")
    loops = math.ceil(h_exact * g)
    exponent = 3 * (g - loops) - 3
    reverse_count_bound = 2**exponent if exponent >= 0 else Fraction(1, 2**-exponent)
    h_float = float(h_exact)
    log10_bad_count_bound = (
        2 * (1 - h_float) * g * math.log10(g)
        + (3 * (1 - h_float) * g - 3) * math.log10(2)
        + (g - 1) * math.log2(max_length) * math.log10(3)
    )
    return {
        "g": g,
        "h": h_exact,
        "L": max_length,
        "loops": loops,
        "vertex_drop": 2 * loops,
        "reduced_vertices": 2 * g - 2 - 2 * loops,
        "reverse_count_bound": reverse_count_bound,
        "reduction_rounds_bound": (max_length - 1).bit_length() + 2,
        "packing_threshold": (2 * g - 2) // (3 * 2 ** (max_length - 1)),
        "log10_bad_count_bound": log10_bad_count_bound,
        "log10_census_scale": 2 * g * math.log10(g),
    }


def separation_radius(g: int, nu: float, census_count: int) -> int:
    """
    Least r with g^{nu g} (3^{g-1})^r >= census_count, evaluated in log space.
    """
    if g < 2 or census_count < 1:
        raise ParamError(f"separation_radius needs g >= 2 and a positive count, got g={g}, count={census_count}.")
    deficit = math.log(census_count) - nu * g * math.log(g)
    if deficit <= 0:
        return 0
    return math.ceil(deficit / ((g - 1) * math.log(3)) - 1e-12)
