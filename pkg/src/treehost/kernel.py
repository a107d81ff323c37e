"""Selects the compiled search kernel, falling back to pure Python.

Set ``TREEHOST_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernel_py

BACKEND = "python"
search = _kernel_py.search

if os.environ.get("TREEHOST_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as _compiled
    except ImportError:  # extension not built
        pass
    else:
        search = _compiled.search
        BACKEND = "cython"

__all__ = ["search", "BACKEND"]
