__all__ = ["GrowthPlot", "SparsityPlot", "create_html"]

from .growth_plot import GrowthPlot
from .sparsity_plot import SparsityPlot
from .create_report import create_html
