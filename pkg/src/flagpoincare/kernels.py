"""Kernel backend selected at import: compiled if built, else pure Python."""

try:
    from ._kernels import n_statistic_labels, nstat_histogram
    BACKEND = "cython"
except ImportError:  # extension not built
    from ._kernels_py import n_statistic_labels, nstat_histogram
    BACKEND = "python"

__all__ = ["BACKEND", "n_statistic_labels", "nstat_histogram"]
