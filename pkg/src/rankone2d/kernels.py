"""Backend selection for the hot direction-search kernel.

The compiled extension is preferred; the numpy fallback is used when the
extension was not built.  ``BACKEND`` records which one is active.
"""

from __future__ import annotations

try:
    from ._speedups import BACKEND_NAME as BACKEND, direction_min_batch
except ImportError:  # pragma: no cover - depends on build environment
    from ._kernels import BACKEND_NAME as BACKEND, direction_min_batch

__all__ = ["BACKEND", "direction_min_batch", "available_backends"]


def available_backends() -> dict:
    """All importable kernel backends, for tests and benchmarks."""
    from . import _kernels

    backends = {_kernels.BACKEND_NAME: _kernels.direction_min_batch}
    try:
        from . import _speedups

        backends[_speedups.BACKEND_NAME] = _speedups.direction_min_batch
    except ImportError:  # pragma: no cover
        pass
    return backends
