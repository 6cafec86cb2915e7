"""Kernel selection: the compiled extension when present, else pure Python."""
try:
    from ._ckernels import compositions, count_bounded, union_find
    BACKEND = "cython"
except ImportError:  # extension not built
    from ._pykernels import compositions, count_bounded, union_find
    BACKEND = "python"

__all__ = ["BACKEND", "compositions", "count_bounded", "union_find"]
