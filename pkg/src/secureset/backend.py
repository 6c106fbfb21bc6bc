"""Compute backend selection.

The hot witness-search kernel exists twice: a numba-compiled version and a
pure-numpy fallback.  `SECURESET_BACKEND` picks one:

  auto   use numba when importable, else numpy (default)
  numba  require the JIT kernels, fail if numba is missing
  numpy  force the fallback

Both implementations are importable directly (`_kernels_numba`,
`_kernels_numpy`) for benchmarks and cross-checks.
"""

import os

_requested = os.environ.get("SECURESET_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"SECURESET_BACKEND must be auto, numba or numpy, not {_requested!r}"
    )

if _requested == "numpy":
    from . import _kernels_numpy as _impl

    _name = "numpy"
else:
    try:
        from . import _kernels_numba as _impl

        _name = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import _kernels_numpy as _impl

        _name = "numpy"

witness_search = _impl.witness_search


def active_backend() -> str:
    """Name of the kernel implementation in use ("numba" or "numpy")."""
    return _name
