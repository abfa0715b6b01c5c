"""MLZO1 public API: picks the compiled kernels when available.

``BACKEND`` reports which implementation won the import race ("cython" or
"python"). Both backends are importable side by side for differential tests
and for the backend comparison benchmark.
"""

from minigrid.codec import _mlzo1_py as python_backend

try:
    from minigrid.codec import _mlzo1 as cython_backend
except ImportError:  # extension not built; fall back to the pure twin
    cython_backend = None

if cython_backend is not None:
    _active = cython_backend
    BACKEND = "cython"
else:
    _active = python_backend
    BACKEND = "python"

MAGIC = python_backend.MAGIC


def compress(data: bytes) -> bytes:
    return _active.compress(data)


def decompress(stream: bytes) -> bytes:
    return _active.decompress(stream)


def backends() -> dict[str, object]:
    """Importable kernel modules keyed by backend name."""
    found = {"python": python_backend}
    if cython_backend is not None:
        found["cython"] = cython_backend
    return found
