"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``RECONLAB_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("RECONLAB_PURE_PYTHON"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"

canon = kernels.canon
count_embeddings = kernels.count_embeddings
