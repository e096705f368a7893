"""Figure rendering for entrates scan CSVs."""

__version__ = "0.1.0"

from .render import PlotJob, SchemaError, render

__all__ = ["PlotJob", "SchemaError", "render", "__version__"]
