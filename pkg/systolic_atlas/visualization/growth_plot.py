import numpy as np
import pandas as pd
import plotly.graph_objects as go
from plotly.subplots import make_subplots


class GrowthPlot:
    """
    Census counts per genus on a log scale next to g^{2g}, and the ratio log(count) / (2g log g).
    """

    def __init__(self, df: pd.DataFrame):
        """
        :param df: output of growth_report
        """
        assert {"g", "count", "g^{2g}", "log(count)/(2g log g)"} <= set(
            df.columns
        ), f"Growth table misses columns, got {list(df.columns)}"
        self.df = df.sort_values("g")
        self.fig = make_subplots(
            rows=2,
            cols=1,
            subplot_titles=("Census size against g^{2g}", "log(count) / (2g log g)"),
        )
        self.__draw_growth__()

    def __draw_growth__(self):
        g = self.df["g"].tolist()
        self.fig.add_trace(
            go.Scatter(
                x=g,
                y=np.log10(self.df["count"].astype(float)),
                mode="lines+markers",
                name="log10 count",
            ),
            row=1,
            col=1,
        )
        self.fig.add_trace(
            go.Scatter(
                x=g,
                y=np.log10(self.df["g^{2g}"].astype(float)),
                mode="lines",
                line=dict(dash="dash"),
                name="log10 g^{2g}",
            ),
            row=1,
            col=1,
        )
        self.fig.add_trace(
            go.Bar(x=g, y=self.df["log(count)/(2g log g)"], name="ratio"),
            row=2,
            col=1,
        )
        self.fig.update_xaxes(title_text="genus g", dtick=1)
        self.fig.update_yaxes(title_text="log10", row=1, col=1)
        self.fig.update_layout(title="Growth of the cubic multigraph census", height=800)
