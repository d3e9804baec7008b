import math
import os
import warnings
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from .exceptions import EmptySetError, ParamError
from .graphs.census import enumerate_census
from .graphs.multigraph import CanonicalCode, disjoint_cycle_packing
from .mdp import eccentricities, multi_source_distances, neighbor_table
from .utils import handle_overwrite, log, write_output

EXACT_PACKING_V_MAX = 10


@dataclass
class GenusResult:
    """
    Sparsity measurements for one genus.
    """

    g: int
    V: int
    count: int
    loops_required: int
    badset_size: int
    fraction: float
    method: str
    diameter: Optional[int]
    distances: List[int] = field(default_factory=list)
    median_distance: Optional[float] = None
    flag: Optional[str] = None


@dataclass
class SparsityReport:
    """
    Bad-set sizes and sampled move distances to the bad set over a genus range.
    """

    g_min: int
    g_max: int
    L: int
    h: float
    trials: int
    seed: int
    results: List[GenusResult] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return asdict(self)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "g": r.g,
                    "V": r.V,
                    "count": r.count,
                    "badset_size": r.badset_size,
                    "badset_fraction": r.fraction,
                    "median_distance": r.median_distance,
                    "diameter": r.diameter,
                    "method": r.method,
                    "flag": r.flag,
                }
                for r in self.results
            ]
        )


def bad_set(codes, max_length: int, loops_required: int) -> List[CanonicalCode]:
    """
    Codes whose graphs carry at least loops_required disjoint cycles of length <= L.
    """
    bad = []
    for code in codes:
        graph = CanonicalCode(code).to_graph()
        packing = disjoint_cycle_packing(graph, max_length, exact_v_max=EXACT_PACKING_V_MAX)
        if packing.size >= loops_required:
            bad.append(code)
    return bad


def check_bad_set(g: int, badset_size: int, count: int) -> None:
    if badset_size == 0 or badset_size == count:
        raise EmptySetError(
            f"g={g}: bad set holds {badset_size} of {count} classes, distances are degenerate."
        )


def sparsity_experiment(
    g_min: int,
    g_max: int,
    max_length: int,
    h: float,
    trials: int,
    seed: int,
    threads: int = 1,
    verbose: bool = False,
    **census_kwargs,
) -> SparsityReport:
    """
    For each genus in the range: the bad set of classes with at least ceil(hg) disjoint cycles of
    length <= L, and the move distance to it from `trials` uniform census draws. Draws for genus g
    use numpy's generator seeded with (seed, g), so every genus is reproducible on its own.
    :param g_min: smallest genus, >= 2
    :param g_max: largest genus
    :param max_length: cycle length bound L
    :param h: proportion in (0, 1)
    :param trials: uniform draws per genus
    :param seed: base seed
    :param threads: ray workers for the neighbor tables
    :param verbose: print progress
    :return: SparsityReport
    """
    if g_min < 2 or g_max < g_min:
        raise ParamError(f"Invalid genus range {g_min}..{g_max}.")
    if trials < 1:
        raise ParamError(f"trials must be >= 1, got {trials}.")
    if max_length < 1:
        raise ParamError(f"L must be >= 1, got {max_length}.")
    h_exact = Fraction(str(h))
    if not 0 < h_exact < 1:
        raise ParamError(f"h must lie in (0, 1), got {h}.")
    report = SparsityReport(g_min, g_max, max_length, float(h), trials, seed)
    for g in range(g_min, g_max + 1):
        vertex_count = 2 * g - 2
        loops_required = math.ceil(h_exact * g)
        table = enumerate_census(vertex_count, threads=threads, verbose=verbose, **census_kwargs)
        log(f"g={g}: classifying {table.count} classes ...", verbose)
        bad = bad_set(table.codes, max_length, loops_required)
        adjacency = neighbor_table(vertex_count, threads=threads, verbose=verbose, **census_kwargs)
        eccentricity = eccentricities(adjacency).values()
        diameter = None if any(e is None for e in eccentricity) else max(eccentricity)
        result = GenusResult(
            g=g,
            V=vertex_count,
            count=table.count,
            loops_required=loops_required,
            badset_size=len(bad),
            fraction=len(bad) / table.count,
            method="exact" if vertex_count <= EXACT_PACKING_V_MAX else "greedy",
            diameter=diameter,
        )
        try:
            check_bad_set(g, len(bad), table.count)
        except EmptySetError as e:
            result.flag = f"EmptySetError: {e}"
            warnings.warn(str(e))
        rng = np.random.default_rng([seed, g])
        draws = rng.integers(table.count, size=trials)
        if bad:
            distances = multi_source_distances(adjacency, bad)
            result.distances = [int(distances[table.codes[int(i)]]) for i in draws]
            result.median_distance = float(np.median(result.distances))
        report.results.append(result)
    return report


def run_sparsity(
    g_min: int,
    g_max: int,
    max_length: int,
    h: float,
    trials: int,
    seed: int,
    path_out: Optional[str] = None,
    overwrite: bool = False,
    **kwargs,
) -> SparsityReport:
    """
    Runs the experiment and stores report.json and sparsity.csv in path_out.
    """
    report = sparsity_experiment(g_min, g_max, max_length, h, trials, seed, **kwargs)
    if path_out is not None:
        handle_overwrite(path_out, overwrite)
        write_output(report.to_dict(), os.path.join(path_out, "report.json"))
        write_output(
            report.to_dict(),
            os.path.join(path_out, "sparsity.csv"),
            output_format="csv",
            table=report.to_frame(),
        )
    return report
