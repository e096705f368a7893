"""Asymptotic entanglement transformation rates, bounds and witnesses."""

__version__ = "0.1.0"

from ._kernel import HAVE_COMPILED

__all__ = ["HAVE_COMPILED", "__version__"]
