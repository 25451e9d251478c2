"""Batched bigram-cosine kernels.

Scoring one query n-gram against every candidate lexicon entry is the hot
numeric loop of the matcher (large datasets index tens of thousands of value
strings). Entry bigram vectors are stored CSR-style:

* ``indptr``  -- int64[n_entries + 1], row boundaries
* ``ids``     -- int32[nnz], bigram vocabulary ids per row
* ``counts``  -- float32[nnz], bigram multiplicities
* ``norms``   -- float32[n_entries], per-row 2-norms

Two implementations are provided: a numba ``@njit`` kernel and a pure-numpy
fallback. ``NL2VIS_KERNEL`` selects one (``numba`` | ``numpy``); the default
(``auto``) prefers numba when it imports. Both return identical scores up to
float32 rounding; ``benchmarks/bench_kernels.py`` compares their throughput.
"""

from __future__ import annotations

import logging
import os

import numpy as np

logger = logging.getLogger(__name__)

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


def batch_cosine_numpy(qvec, q_norm, indptr, ids, counts, norms, rows):
    """Cosine of the query vector against each CSR row in ``rows``."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return np.zeros(0, dtype=np.float32)
    starts = indptr[rows]
    ends = indptr[rows + 1]
    lengths = ends - starts
    total = int(lengths.sum())
    if total == 0:
        return np.zeros(rows.size, dtype=np.float32)
    # flat gather indices: for each selected row, the range start..end
    row_offsets = np.concatenate(([0], np.cumsum(lengths)[:-1]))
    flat = np.repeat(starts - row_offsets, lengths) + np.arange(total, dtype=np.int64)
    prods = qvec[ids[flat]] * counts[flat]
    # segment sums via cumulative-sum differences (robust to empty rows)
    csum = np.concatenate(([0.0], np.cumsum(prods, dtype=np.float64)))
    bounds = np.concatenate(([0], np.cumsum(lengths)))
    dots = csum[bounds[1:]] - csum[bounds[:-1]]
    denom = norms[rows].astype(np.float64) * q_norm
    scores = np.where(denom > 0, dots / np.maximum(denom, 1e-30), 0.0)
    return np.minimum(scores, 1.0).astype(np.float32)


@njit(cache=True)
def _batch_cosine_numba(qvec, q_norm, indptr, ids, counts, norms, rows):  # pragma: no cover - jit
    out = np.zeros(rows.size, dtype=np.float32)
    for r in range(rows.size):
        row = rows[r]
        dot = 0.0
        for k in range(indptr[row], indptr[row + 1]):
            dot += qvec[ids[k]] * counts[k]
        denom = norms[row] * q_norm
        if denom > 0.0:
            score = dot / denom
            out[r] = 1.0 if score > 1.0 else score
    return out


def batch_cosine_numba(qvec, q_norm, indptr, ids, counts, norms, rows):
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return np.zeros(0, dtype=np.float32)
    return _batch_cosine_numba(qvec, np.float32(q_norm), indptr, ids, counts,
                               norms, rows)


def active_kernel_name() -> str:
    """Resolve the kernel selected by the NL2VIS_KERNEL environment flag."""
    choice = os.environ.get("NL2VIS_KERNEL", "auto").lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not _HAVE_NUMBA:
            logger.warning("NL2VIS_KERNEL=numba but numba is unavailable; "
                           "falling back to numpy")
            return "numpy"
        return "numba"
    return "numba" if _HAVE_NUMBA else "numpy"


def batch_cosine(qvec, q_norm, indptr, ids, counts, norms, rows):
    """Dispatch to the active kernel implementation."""
    if active_kernel_name() == "numba":
        return batch_cosine_numba(qvec, q_norm, indptr, ids, counts, norms, rows)
    return batch_cosine_numpy(qvec, q_norm, indptr, ids, counts, norms, rows)
