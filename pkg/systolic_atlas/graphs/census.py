"""
Census of connected cubic multigraphs up to isomorphism, with a file cache, random
sampling and a growth report.
"""

import math
import os
import warnings
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np
import pandas as pd

from ..exceptions import LimitError, NonTerminationError, ParamError
from ..utils import chunk, load_settings, log, parallel_map, resolve_cache_dir
from .multigraph import (
    CanonicalCode,
    CubicMultigraph,
    attach_loop_gadget,
    canonical_code,
    from_edge_list,
    girth,
    insert_edge,
)

CACHE_VERSION = "v2"

_MEMORY_CACHE: Dict[int, "CensusTable"] = {}


@dataclass(frozen=True)
class CensusTable:
    """
    Sorted, duplicate-free canonical codes of all connected cubic multigraphs on V vertices.
    """

    vertex_count: int
    codes: Tuple[CanonicalCode, ...]

    def __post_init__(self):
        assert list(self.codes) == sorted(set(self.codes)), "census codes must be sorted and unique"

    @property
    def count(self) -> int:
        return len(self.codes)

    def __len__(self):
        return len(self.codes)

    def __iter__(self):
        return iter(self.codes)

    def __contains__(self, code):
        return code in set(self.codes)

    def graphs(self) -> List[CubicMultigraph]:
        return [code.to_graph() for code in self.codes]

    def header(self) -> str:
        return f"census {CACHE_VERSION} V={self.vertex_count} count={self.count}"

    def save(self, path: str) -> None:
        with open(path, "w", newline="\n") as f:
            f.write(self.header() + "\n")
            for code in self.codes:
                f.write(code + "\n")

    @classmethod
    def load(cls, path: str, vertex_count: int) -> Optional["CensusTable"]:
        """
        Reads a cache file. Returns None, with a warning, if the header does not match its content.
        """
        with open(path) as f:
            lines = [line.rstrip("\n") for line in f if line.strip()]
        if not lines:
            warnings.warn(f"Empty census cache {path}, regenerating.")
            return None
        codes = tuple(CanonicalCode(line) for line in lines[1:])
        expected = f"census {CACHE_VERSION} V={vertex_count} count={len(codes)}"
        if lines[0] != expected or list(codes) != sorted(set(codes)):
            warnings.warn(f"Stale census cache {path} (header '{lines[0]}'), regenerating.")
            return None
        return cls(vertex_count, codes)


def cache_path(cache_dir: str, vertex_count: int) -> str:
    return os.path.join(cache_dir, f"census_V{vertex_count}.txt")


def _check_vertex_count(vertex_count: int) -> None:
    if vertex_count < 2 or vertex_count % 2 != 0:
        raise ParamError(f"Cubic multigraphs need an even number of vertices >= 2, got {vertex_count}.")


def _check_limit(vertex_count: int, allow_large: bool, settings: Dict) -> None:
    v_max = settings["census"]["v_max"]
    v_max_override = settings["census"]["v_max_override"]
    if vertex_count > v_max_override or (vertex_count > v_max and not allow_large):
        raise LimitError(
            f"Census for V={vertex_count} exceeds the configured limit V_max={v_max} "
            f"(up to {v_max_override} with the override flag)."
        )


def base_census() -> List[CanonicalCode]:
    theta = from_edge_list(2, [(0, 1), (0, 1), (0, 1)])
    dumbbell = from_edge_list(2, [(0, 0), (1, 1), (0, 1)])
    return sorted({canonical_code(theta), canonical_code(dumbbell)})


def augment(graph: CubicMultigraph) -> Set[CanonicalCode]:
    """
    Codes of all graphs obtained from graph by one vertex-adding primitive: bridging two
    (possibly equal) edges with a new edge, or hanging a loop gadget off an edge.
    """
    edges = [h for h, _ in graph.edges()]
    codes = set()
    for i, e1 in enumerate(edges):
        for e2 in edges[i:]:
            codes.add(canonical_code(insert_edge(graph, e1, e2)))
        codes.add(canonical_code(attach_loop_gadget(graph, e1)))
    return codes


def _augment_codes(codes: Iterable[str]) -> Set[CanonicalCode]:
    result = set()
    for code in codes:
        result |= augment(CanonicalCode(code).to_graph())
    return result


def enumerate_census(
    vertex_count: int,
    cache_dir: Optional[str] = None,
    allow_large: bool = False,
    threads: int = 1,
    use_cache: bool = True,
    settings: Optional[Dict] = None,
    verbose: bool = False,
) -> CensusTable:
    """
    Enumerates all connected cubic multigraphs on V vertices up to isomorphism.

    census(V) is grown from census(V-2): every connected cubic multigraph on V >= 4 vertices
    loses two vertices either by deleting a loop vertex or by deleting a non-bridge edge and
    smoothing its ends, so applying both inverse primitives in every position reaches
    everything. Results are deduplicated by canonical code and sorted.
    :param vertex_count: even V >= 2
    :param cache_dir: directory for census_V<V>.txt files, resolved by resolve_cache_dir
    :param allow_large: permit V above census.v_max up to census.v_max_override
    :param threads: ray workers used for the expansion
    :param use_cache: read and write cache files
    :param settings: settings dictionary, defaults to the packaged settings
    :param verbose: print progress
    :return: CensusTable
    """
    _check_vertex_count(vertex_count)
    if settings is None:
        settings = load_settings()
    _check_limit(vertex_count, allow_large, settings)
    if vertex_count in _MEMORY_CACHE:
        return _MEMORY_CACHE[vertex_count]
    path = None
    if use_cache:
        path = cache_path(resolve_cache_dir(cache_dir), vertex_count)
        if os.path.exists(path):
            table = CensusTable.load(path, vertex_count)
            if table is not None:
                _MEMORY_CACHE[vertex_count] = table
                return table
    if vertex_count == 2:
        codes = base_census()
    else:
        parent = enumerate_census(
            vertex_count - 2,
            cache_dir=cache_dir,
            allow_large=allow_large,
            threads=threads,
            use_cache=use_cache,
            settings=settings,
            verbose=verbose,
        )
        log(f"Expanding {parent.count} graphs on {parent.vertex_count} vertices ...", verbose)
        if threads > 1:
            parts = parallel_map(
                _augment_codes, chunk(list(parent.codes), threads), threads, verbose
            )
        else:
            parts = [_augment_codes(parent.codes)]
        codes = sorted(set().union(*parts))
    table = CensusTable(vertex_count, tuple(codes))
    log(f"Census V={vertex_count}: {table.count} graphs", verbose)
    if path is not None:
        table.save(path)
    _MEMORY_CACHE[vertex_count] = table
    return table


def clear_memory_cache() -> None:
    _MEMORY_CACHE.clear()


def exhaustive_census(vertex_count: int) -> CensusTable:
    """
    Oracle census: every symmetric multiplicity matrix with row sums 3 (a loop counts 2),
    connected ones deduplicated by canonical code. No pruning, only for small V.
    """
    _check_vertex_count(vertex_count)
    codes = set()
    for edges in _labeled_edge_lists(vertex_count):
        try:
            graph = from_edge_list(vertex_count, edges)
        except ValueError:
            continue
        codes.add(canonical_code(graph))
    return CensusTable(vertex_count, tuple(sorted(codes)))


def _labeled_edge_lists(n: int):
    degree = [0] * n

    def fill(i: int, j: int, edges: List[Tuple[int, int]]):
        if i == n:
            yield list(edges)
            return
        if j == i:
            # loop at i
            for loops in (0, 1):
                if degree[i] + 2 * loops <= 3:
                    degree[i] += 2 * loops
                    yield from fill(i, j + 1, edges + [(i, i)] * loops)
                    degree[i] -= 2 * loops
            return
        if j == n:
            if degree[i] == 3:
                yield from fill(i + 1, i + 1, edges)
            return
        for m in range(min(3 - degree[i], 3 - degree[j]), -1, -1):
            degree[i] += m
            degree[j] += m
            yield from fill(i, j + 1, edges + [(i, j)] * m)
            degree[i] -= m
            degree[j] -= m

    yield from fill(0, 0, [])


def count_simple(table: CensusTable) -> int:
    """
    Number of census entries without loops and parallel edges.
    """
    return sum(1 for graph in table.graphs() if girth(graph) >= 3)


def sample_uniform(
    vertex_count: int, seed: int, table: Optional[CensusTable] = None, **census_kwargs
) -> CubicMultigraph:
    """
    Uniform draw over isomorphism classes with numpy's PCG64 generator seeded by seed.
    """
    if table is None:
        table = enumerate_census(vertex_count, **census_kwargs)
    rng = np.random.default_rng(seed)
    return table.codes[int(rng.integers(table.count))].to_graph()


def sample_configuration(vertex_count: int, seed: int, max_attempts: int = 10000) -> CubicMultigraph:
    """
    Configuration-model draw: a uniform perfect matching of the 3V half-edges, redrawn until
    connected. Not uniform over isomorphism classes.
    """
    _check_vertex_count(vertex_count)
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        permutation = rng.permutation(3 * vertex_count)
        pairing = [0] * (3 * vertex_count)
        for a, b in zip(permutation[0::2], permutation[1::2]):
            pairing[int(a)] = int(b)
            pairing[int(b)] = int(a)
        try:
            return CubicMultigraph(vertex_count, pairing)
        except ValueError:
            continue
    raise NonTerminationError(f"No connected configuration found in {max_attempts} attempts.")


def growth_report(v_max: int, **census_kwargs) -> pd.DataFrame:
    """
    Census counts per genus next to g^{2g} and the ratio log(count) / (2g log g).
    """
    rows = []
    for vertex_count in range(2, v_max + 1, 2):
        g = (vertex_count + 2) // 2
        count = enumerate_census(vertex_count, **census_kwargs).count
        rows.append(
            {
                "g": g,
                "V": vertex_count,
                "count": count,
                "g^{2g}": g ** (2 * g),
                "log(count)/(2g log g)": math.log(count) / (2 * g * math.log(g)),
            }
        )
    report = pd.DataFrame(rows)
    counts = report["count"]
    assert counts.is_unique and counts.is_monotonic_increasing, "census counts must grow strictly with V"
    return report
