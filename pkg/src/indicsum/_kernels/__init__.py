"""N-gram counting kernels.

A compiled Cython extension is preferred when it was built; otherwise
the pure-Python implementation is used.  Both compute identical
results.  Set ``INDICSUM_NGRAM_BACKEND=python`` to force the fallback
(the benchmark and the tests use this to compare the two paths).
"""

import os

from . import _ngram_py

if os.environ.get("INDICSUM_NGRAM_BACKEND", "").lower() == "python":
    clipped_ngram_stats = _ngram_py.clipped_ngram_stats
    KERNEL_BACKEND = "python"
else:
    try:
        from ._ngram import clipped_ngram_stats

        KERNEL_BACKEND = "cython"
    except ImportError:
        clipped_ngram_stats = _ngram_py.clipped_ngram_stats
        KERNEL_BACKEND = "python"

__all__ = ["clipped_ngram_stats", "KERNEL_BACKEND"]
