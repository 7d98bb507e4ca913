"""Inner loops for slice binning, dominance and run detection.

Every kernel has two implementations with identical semantics: a numba
``@njit`` version and a pure-numpy version. The active one is chosen once at
import time. Set ``SILENTMINE_DISABLE_JIT=1`` (or run without numba
installed) to use the numpy path.

Activity codes are small integers shared with :mod:`silentmine.calllog`::

    0 = Accept, 1 = Reject, 2 = Missed, 3 = Outgoing

Outgoing records are never counted.
"""
from __future__ import annotations

import os

import numpy as np

ACCEPT, REJECT, MISSED, OUTGOING = 0, 1, 2, 3
N_COUNTED = 3


def _env_disabled() -> bool:
    return os.environ.get("SILENTMINE_DISABLE_JIT", "").strip().lower() in {"1", "true", "yes", "on"}


# --------------------------------------------------------------------------
# numpy path


def bin_counts_numpy(minutes: np.ndarray, codes: np.ndarray, edges: np.ndarray) -> np.ndarray:
    n_slices = len(edges) - 1
    idx = np.searchsorted(edges, minutes, side="right") - 1
    keep = (idx >= 0) & (minutes < edges[-1]) & (codes < N_COUNTED)
    flat = idx[keep].astype(np.int64) * N_COUNTED + codes[keep].astype(np.int64)
    return np.bincount(flat, minlength=n_slices * N_COUNTED).reshape(n_slices, N_COUNTED)


def dominant_mask_numpy(counts: np.ndarray, t: float, min_events: int) -> np.ndarray:
    total = counts.sum(axis=1)
    unavail = counts[:, REJECT] + counts[:, MISSED]
    ratio = unavail / np.maximum(total, 1)
    return (total > 0) & (total >= min_events) & (ratio >= t)


def run_bounds_numpy(mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    padded = np.zeros(len(mask) + 2, dtype=np.int8)
    padded[1:-1] = mask
    step = np.diff(padded)
    return np.flatnonzero(step == 1), np.flatnonzero(step == -1)


# --------------------------------------------------------------------------
# numba path


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def bin_counts(minutes, codes, edges):
        n_slices = len(edges) - 1
        out = np.zeros((n_slices, N_COUNTED), dtype=np.int64)
        lo_edge = edges[0]
        hi_edge = edges[-1]
        for i in range(len(minutes)):
            m = minutes[i]
            c = codes[i]
            if c >= N_COUNTED or m < lo_edge or m >= hi_edge:
                continue
            # last edge <= m
            lo, hi = 0, n_slices
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if edges[mid] <= m:
                    lo = mid
                else:
                    hi = mid
            out[lo, c] += 1
        return out

    @njit(cache=True)
    def dominant_mask(counts, t, min_events):
        n = counts.shape[0]
        out = np.zeros(n, dtype=np.bool_)
        for i in range(n):
            total = counts[i, 0] + counts[i, 1] + counts[i, 2]
            if total == 0 or total < min_events:
                continue
            if (counts[i, 1] + counts[i, 2]) / total >= t:
                out[i] = True
        return out

    @njit(cache=True)
    def run_bounds(mask):
        n = len(mask)
        starts = np.empty(n, dtype=np.int64)
        stops = np.empty(n, dtype=np.int64)
        k = 0
        i = 0
        while i < n:
            if mask[i]:
                j = i
                while j < n and mask[j]:
                    j += 1
                starts[k] = i
                stops[k] = j
                k += 1
                i = j
            else:
                i += 1
        return starts[:k], stops[:k]

    return bin_counts, dominant_mask, run_bounds


try:
    bin_counts_numba, dominant_mask_numba, run_bounds_numba = _build_numba()
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    bin_counts_numba = dominant_mask_numba = run_bounds_numba = None
    NUMBA_AVAILABLE = False

USE_JIT = NUMBA_AVAILABLE and not _env_disabled()


def bin_counts(minutes, codes, edges) -> np.ndarray:
    """Count Accept/Reject/Missed records per slice.

    ``edges`` holds the ``n + 1`` sorted slice boundaries in minutes; slice
    ``k`` is the half-open interval ``[edges[k], edges[k+1])``. Returns an
    ``(n, 3)`` int64 array whose columns follow the activity codes.
    """
    minutes = np.ascontiguousarray(minutes, dtype=np.int64)
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    edges = np.ascontiguousarray(edges, dtype=np.int64)
    if USE_JIT:
        return bin_counts_numba(minutes, codes, edges)
    return bin_counts_numpy(minutes, codes, edges)


def dominant_mask(counts, t: float, min_events: int = 1) -> np.ndarray:
    """Boolean mask of slices where (Reject+Missed)/total >= t.

    Slices with fewer than ``max(min_events, 1)`` counted events are never
    dominant.
    """
    counts = np.ascontiguousarray(counts, dtype=np.int64)
    if USE_JIT:
        return dominant_mask_numba(counts, float(t), int(min_events))
    return dominant_mask_numpy(counts, float(t), int(min_events))


def run_bounds(mask) -> tuple[np.ndarray, np.ndarray]:
    """Start (inclusive) and stop (exclusive) indices of maximal True runs."""
    mask = np.ascontiguousarray(mask, dtype=np.bool_)
    if USE_JIT:
        return run_bounds_numba(mask)
    return run_bounds_numpy(mask)
