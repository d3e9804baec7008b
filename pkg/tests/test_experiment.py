import json
import os

import pandas as pd
import pytest

from systolic_atlas.exceptions import EmptySetError, ParamError
from systolic_atlas.experiment import bad_set, check_bad_set, run_sparsity, sparsity_experiment
from systolic_atlas.graphs import canonical_code, dumbbell
from systolic_atlas.graphs.census import enumerate_census


def test_bad_set_of_small_genera():
    assert bad_set(enumerate_census(2).codes, 1, 1) == [canonical_code(dumbbell())]
    assert len(bad_set(enumerate_census(4).codes, 1, 2)) == 2
    assert len(bad_set(enumerate_census(2).codes, 2, 1)) == 2


def test_check_bad_set():
    check_bad_set(3, 2, 5)
    with pytest.raises(EmptySetError):
        check_bad_set(3, 0, 5)
    with pytest.raises(EmptySetError):
        check_bad_set(3, 5, 5)


def test_sparsity_fractions():
    report = sparsity_experiment(2, 3, 1, 0.5, trials=20, seed=1)
    first, second = report.results
    assert first.fraction == pytest.approx(0.5)
    assert second.fraction == pytest.approx(0.4)
    assert first.loops_required == 1
    assert second.loops_required == 2
    for result in report.results:
        assert result.flag is None
        assert len(result.distances) == 20
        assert result.diameter is not None
        assert all(0 <= d <= result.diameter for d in result.distances)
        assert result.method == "exact"


def test_sparsity_is_reproducible():
    first = sparsity_experiment(2, 4, 2, 0.5, trials=15, seed=3)
    second = sparsity_experiment(2, 4, 2, 0.5, trials=15, seed=3)
    assert first.to_dict() == second.to_dict()


def test_degenerate_bad_set_is_flagged():
    with pytest.warns(UserWarning):
        report = sparsity_experiment(2, 2, 3, 0.25, trials=5, seed=0)
    (result,) = report.results
    assert result.badset_size == result.count
    assert result.flag.startswith("EmptySetError")
    assert result.distances == [0] * 5


def test_sparsity_trend_over_largest_genera():
    report = sparsity_experiment(4, 6, 3, 0.25, trials=100, seed=0)
    fractions = [result.fraction for result in report.results]
    assert fractions == pytest.approx([16 / 17, 66 / 71, 368 / 388])
    # the fraction drops from g=4 to g=5 and rises again at g=6
    assert fractions[1] < fractions[0] < fractions[2]
    medians = [result.median_distance for result in report.results]
    assert medians == sorted(medians)
    assert medians == [0.0, 0.0, 0.0]


@pytest.mark.parametrize(
    "g_min,g_max,max_length,h,trials",
    [(1, 3, 1, 0.5, 5), (3, 2, 1, 0.5, 5), (2, 3, 0, 0.5, 5), (2, 3, 1, 1.5, 5), (2, 3, 1, 0.5, 0)],
)
def test_invalid_parameters(g_min, g_max, max_length, h, trials):
    with pytest.raises(ParamError):
        sparsity_experiment(g_min, g_max, max_length, h, trials, seed=0)


def test_run_sparsity_writes_results(tmp_path):
    path_out = str(tmp_path / "sparsity")
    report = run_sparsity(2, 3, 1, 0.5, 10, 0, path_out=path_out)
    with open(os.path.join(path_out, "report.json")) as f:
        stored = json.load(f)
    assert stored["L"] == 1
    assert len(stored["results"]) == 2
    frame = pd.read_csv(os.path.join(path_out, "sparsity.csv"))
    assert frame["g"].tolist() == [2, 3]
    assert frame["badset_fraction"].tolist() == pytest.approx([0.5, 0.4])
    assert report.to_frame().shape[0] == 2


if __name__ == "__main__":
    pytest.main([__file__])
