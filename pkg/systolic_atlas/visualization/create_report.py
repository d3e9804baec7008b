import os
from typing import Dict, Optional

import pandas as pd

from ..utils import log
from .growth_plot import GrowthPlot
from .sparsity_plot import SparsityPlot

PAGE_HEAD = """<!DOCTYPE html>
<html>
<head>
<meta charset="utf-8">
<title>{title}</title>
<style>
body {{ font-family: sans-serif; margin: 2em; }}
table {{ border-collapse: collapse; }}
td, th {{ border: 1px solid #ccc; padding: 0.3em 0.6em; }}
</style>
</head>
<body>
"""


def _claims_table(claims: Dict) -> pd.DataFrame:
    rows = []
    for name, value in claims.items():
        if isinstance(value, dict):
            value = ", ".join(f"{key}={val}" for key, val in value.items() if not isinstance(val, (dict, list)))
        rows.append({"claim": name, "value": value})
    return pd.DataFrame(rows)


def create_html(
    path_out: str,
    growth: pd.DataFrame,
    sparsity: Optional[pd.DataFrame] = None,
    claims: Optional[Dict] = None,
    title: str = "Systolic atlas report",
    verbose: bool = False,
) -> str:
    """
    Writes a standalone HTML page with the census growth figure, the sparsity trend and a table of
    the checked claims. The first figure embeds plotly.js so the page works offline.
    :param path_out: html file to write
    :param growth: growth_report table
    :param sparsity: SparsityReport.to_frame(), optional
    :param claims: flat or one-level nested dictionary of checked quantities
    :param title: page title
    :param verbose: print progress
    :return: path_out
    """
    log(f"Writing report to {path_out} ...", verbose)
    directory = os.path.dirname(os.path.abspath(path_out))
    os.makedirs(directory, exist_ok=True)
    figures = [("Census growth", GrowthPlot(growth).fig)]
    if sparsity is not None and len(sparsity) > 0:
        figures.append(("Sparsity trend", SparsityPlot(sparsity).fig))
    with open(path_out, "w", newline="\n") as f:
        f.write(PAGE_HEAD.format(title=title))
        f.write(f"<h1>{title}</h1>\n")
        for index, (heading, fig) in enumerate(figures):
            f.write(f"<h2>{heading}</h2>\n")
            f.write(fig.to_html(full_html=False, include_plotlyjs=index == 0))
            f.write("\n")
        f.write("<h2>Census table</h2>\n")
        f.write(growth.to_html(index=False))
        if claims:
            f.write("<h2>Checked quantities</h2>\n")
            f.write(_claims_table(claims).to_html(index=False))
        f.write("</body>\n")
        f.write("</html>\n")
    return path_out
