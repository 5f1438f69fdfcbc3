"""Backend selection for the hot kernels.

The compiled extension ``_ckernel`` is used when it was built; otherwise the
pure-Python ``_pykernel`` is used.  Setting ``GAMMAWALD_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _pykernel

_backend = _pykernel
if os.environ.get("GAMMAWALD_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernel as _backend  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _backend = _pykernel


def get_backend(name=None):
    """Return a kernel module: ``"python"``, ``"compiled"`` or the default."""
    if name is None:
        return _backend
    if name == "python":
        return _pykernel
    if name == "compiled":
        from . import _ckernel

        return _ckernel
    raise ValueError(f"unknown kernel backend {name!r}")


def compiled_available():
    try:
        from . import _ckernel  # noqa: F401
    except ImportError:
        return False
    return True


BACKEND = _backend.BACKEND
