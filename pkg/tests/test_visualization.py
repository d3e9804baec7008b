import pandas as pd
import pytest

from systolic_atlas.experiment import sparsity_experiment
from systolic_atlas.graphs.census import growth_report
from systolic_atlas.visualization import GrowthPlot, SparsityPlot, create_html


@pytest.fixture
def growth():
    return growth_report(6)


@pytest.fixture
def sparsity():
    return sparsity_experiment(2, 3, 1, 0.5, trials=10, seed=0).to_frame()


def test_growth_plot(growth):
    plot = GrowthPlot(growth)
    assert len(plot.fig.data) == 3
    assert list(plot.fig.data[0].x) == [2, 3, 4]
    assert plot.fig.data[2].type == "bar"


def test_growth_plot_requires_columns():
    with pytest.raises(AssertionError):
        GrowthPlot(pd.DataFrame({"g": [2], "count": [2]}))


def test_sparsity_plot(sparsity):
    plot = SparsityPlot(sparsity)
    assert len(plot.fig.data) == 3
    assert list(plot.fig.data[0].y) == pytest.approx([0.5, 0.4])


def test_sparsity_plot_skips_missing_distances():
    frame = pd.DataFrame(
        {"g": [3, 2], "badset_fraction": [0.0, 0.5], "median_distance": [None, 1.0], "diameter": [2, 1]}
    )
    plot = SparsityPlot(frame)
    assert list(plot.fig.data[0].x) == [2, 3]
    assert list(plot.fig.data[1].x) == [2]


def test_create_html(tmp_path, growth, sparsity):
    path = str(tmp_path / "html" / "report.html")
    claims = {"pentagon": {"s": 4.3973, "b": 7.772}, "census_V6": 17}
    assert create_html(path, growth, sparsity, claims, title="Atlas") == path
    with open(path) as f:
        page = f.read()
    assert page.startswith("<!DOCTYPE html>")
    assert "<title>Atlas</title>" in page
    assert "Sparsity trend" in page
    assert "s=4.3973" in page
    assert page.rstrip().endswith("</html>")


def test_create_html_without_sparsity(tmp_path, growth):
    path = str(tmp_path / "growth.html")
    create_html(path, growth)
    with open(path) as f:
        page = f.read()
    assert "Census growth" in page
    assert "Sparsity trend" not in page


if __name__ == "__main__":
    pytest.main([__file__])
