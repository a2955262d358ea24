"""Kernel backend selection and threaded drivers.

The compiled Cython kernels are used when available; the numpy fallback
is always present.  Set OVOID_KERNELS=py to force the fallback or
OVOID_KERNELS=cy to require the compiled module.  Both backends produce
identical outputs; shards are recombined in index order, so results do
not depend on the thread count.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels_py as _py
from .fields import GFTables  # re-export for callers  # noqa: F401

_requested = os.environ.get("OVOID_KERNELS", "auto").strip().lower()
_cy = None
if _requested in ("auto", "", "cy", "cython"):
    try:
        from . import _kernels_cy as _cy
    except ImportError:
        _cy = None
        if _requested in ("cy", "cython"):
            raise ImportError(
                "OVOID_KERNELS requested the compiled kernels but "
                "ovoidcodes._kernels_cy is not built"
            )
elif _requested not in ("py", "python"):
    raise ValueError(f"unknown OVOID_KERNELS value {_requested!r}")

BACKEND = "cython" if _cy is not None else "python"


def _impl(backend):
    if backend is None:
        return _cy if _cy is not None else _py
    if backend in ("cy", "cython"):
        if _cy is None:
            raise RuntimeError("compiled kernels are not available")
        return _cy
    if backend in ("py", "python"):
        return _py
    raise ValueError(f"unknown backend {backend!r}")


def available_backends():
    return ("python",) if _cy is None else ("python", "cython")


def _shards(total, threads):
    threads = max(1, min(int(threads), total or 1))
    bounds = np.linspace(0, total, threads + 1, dtype=np.int64)
    return [(int(bounds[i]), int(bounds[i + 1])) for i in range(threads) if bounds[i] < bounds[i + 1]]


def sweep_sections(dual, tables, start, stop, backend=None):
    dual = np.ascontiguousarray(dual, dtype=np.uint16)
    return _impl(backend).sweep_sections(dual, tables, int(start), int(stop))


def sweep_sections_all(dual, tables, n_points, threads=1, backend=None):
    """Section counts for every canonical point rank of PG(7,q)."""
    shards = _shards(n_points, threads)
    if len(shards) == 1:
        return sweep_sections(dual, tables, 0, n_points, backend=backend)
    with ThreadPoolExecutor(max_workers=len(shards)) as pool:
        parts = list(
            pool.map(lambda se: sweep_sections(dual, tables, se[0], se[1], backend=backend), shards)
        )
    return np.concatenate(parts)


def orbit_bfs(mats, tables, seeds, n_points, backend=None):
    mats = np.ascontiguousarray(mats, dtype=np.uint16)
    seeds = np.ascontiguousarray(seeds, dtype=np.int64)
    return _impl(backend).orbit_bfs(mats, tables, seeds, int(n_points))


def codeword_hist(gen, tables, m_start, m_stop, backend=None):
    gen = np.ascontiguousarray(gen, dtype=np.uint16)
    return _impl(backend).codeword_hist(gen, tables, int(m_start), int(m_stop))


def codeword_hist_all(gen, tables, threads=1, backend=None):
    """Weight histogram over all q^k messages for the generator rows gen."""
    total = int(tables.q) ** int(gen.shape[0])
    shards = _shards(total, threads)
    if len(shards) == 1:
        return codeword_hist(gen, tables, 0, total, backend=backend)
    with ThreadPoolExecutor(max_workers=len(shards)) as pool:
        parts = list(
            pool.map(lambda se: codeword_hist(gen, tables, se[0], se[1], backend=backend), shards)
        )
    return np.sum(parts, axis=0)
