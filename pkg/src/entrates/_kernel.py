"""Kernel selection: compiled extension when available, numpy fallback otherwise."""

try:
    from . import _eof_cy as kernel

    HAVE_COMPILED = True
except ImportError:  # extension not built
    from . import _eof_py as kernel

    HAVE_COMPILED = False

ensemble_entropy = kernel.ensemble_entropy
optimize_rows = kernel.optimize_rows
