"""Backend selection: compiled Cython kernels with a pure numpy fallback.

The choice happens once at import. ``HOINFO_BACKEND=python`` or
``HOINFO_BACKEND=compiled`` forces a backend (the latter raises if the
extension was never built). ``use_backend`` temporarily swaps the active
kernels, which the benchmark and the backend-parity tests rely on.
"""
import os
from contextlib import contextmanager

from . import _kernels_py


def load_backend(name):
    """Return the kernel module for ``name`` ('python' or 'compiled')."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _kernels_cy
        return _kernels_cy
    raise ValueError(f"unknown backend {name!r}")


def _select():
    forced = os.environ.get("HOINFO_BACKEND")
    if forced:
        return load_backend(forced), forced
    try:
        return load_backend("compiled"), "compiled"
    except ImportError:
        return _kernels_py, "python"


kernels, _active_name = _select()


def active_backend():
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return _active_name


def compiled_available():
    try:
        load_backend("compiled")
    except ImportError:
        return False
    return True


@contextmanager
def use_backend(name):
    """Temporarily switch the active kernels (benchmarks and tests)."""
    global kernels, _active_name
    prev = kernels, _active_name
    kernels, _active_name = load_backend(name), name
    try:
        yield kernels
    finally:
        kernels, _active_name = prev
