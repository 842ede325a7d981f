"""Static-figure rendering for vfdrelay sweep CSVs."""

from .plotting import PlotDataError, plot_params, plot_rates

__version__ = "0.1.0"
