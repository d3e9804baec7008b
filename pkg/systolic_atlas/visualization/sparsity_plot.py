import pandas as pd
import plotly.graph_objects as go
from plotly.subplots import make_subplots


class SparsityPlot:
    def __init__(self, df: pd.DataFrame):
        """
        :param df: SparsityReport.to_frame(), one row per genus
        """
        self.df = df.sort_values("g")
        self.fig = make_subplots(
            rows=1,
            cols=2,
            subplot_titles=("Bad-set fraction", "Median move distance to the bad set"),
        )
        self.__draw_sparsity__()

    def __draw_sparsity__(self):
        g = self.df["g"].tolist()
        self.fig.add_trace(
            go.Scatter(x=g, y=self.df["badset_fraction"], mode="lines+markers", name="fraction"),
            row=1,
            col=1,
        )
        # genera with an empty bad set have no distances
        measured = self.df.dropna(subset=["median_distance"])
        self.fig.add_trace(
            go.Scatter(
                x=measured["g"],
                y=measured["median_distance"],
                mode="lines+markers",
                name="median distance",
            ),
            row=1,
            col=2,
        )
        if "diameter" in measured.columns:
            self.fig.add_trace(
                go.Scatter(
                    x=measured["g"],
                    y=measured["diameter"],
                    mode="markers",
                    marker=dict(symbol="x"),
                    name="diameter",
                ),
                row=1,
                col=2,
            )
        self.fig.update_xaxes(title_text="genus g", dtick=1)
        self.fig.update_yaxes(range=[0, 1.05], row=1, col=1)
        self.fig.update_layout(title="Sparsity of graphs with many short disjoint cycles")
