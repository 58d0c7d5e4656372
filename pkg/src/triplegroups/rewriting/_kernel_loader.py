"""Pick the compiled kernel when available; TRIPLEGROUPS_PURE=1 forces Python."""

import os

if os.environ.get("TRIPLEGROUPS_PURE") == "1":
    from ._kernel_py import expand, free_reduce

    BACKEND = "python"
else:
    try:
        from ._kernel import expand, free_reduce  # type: ignore[import-not-found]

        BACKEND = "cython"
    except ImportError:
        from ._kernel_py import expand, free_reduce

        BACKEND = "python"

__all__ = ["BACKEND", "expand", "free_reduce"]
