"""Counting kernels with a compiled fast path.

The Cython extension is used when it imported cleanly; otherwise (or when
FOLDLP_FORCE_PY=1 is set) the NumPy reference implementation takes over.
Both expose the same functions with identical semantics: `popcount`,
`and_popcount`, `score_masks`, `threshold_sweep`.
"""

from __future__ import annotations

import os

import numpy as np

from . import _purekern

_impl = _purekern
if os.environ.get("FOLDLP_FORCE_PY") != "1":
    try:
        from . import _cext as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND: str = _impl.BACKEND
GAIN_EPS: float = _purekern.GAIN_EPS

popcount = _impl.popcount
and_popcount = _impl.and_popcount
score_masks = _impl.score_masks
threshold_sweep = _impl.threshold_sweep


def best_threshold(pos_vals: np.ndarray, neg_vals: np.ndarray) -> tuple[float, float, int, int]:
    """Sort the two samples together and run the threshold sweep."""
    values = np.concatenate([np.asarray(pos_vals, dtype=np.float64),
                             np.asarray(neg_vals, dtype=np.float64)])
    labels = np.concatenate([np.ones(len(pos_vals), dtype=np.uint8),
                             np.zeros(len(neg_vals), dtype=np.uint8)])
    order = np.argsort(values, kind="stable")
    return _impl.threshold_sweep(
        np.ascontiguousarray(values[order]),
        np.ascontiguousarray(labels[order]),
    )


def available_backends() -> dict[str, object]:
    """Importable kernel implementations, for benchmarks and tests."""
    out: dict[str, object] = {"numpy": _purekern}
    try:
        from . import _cext

        out["cython"] = _cext
    except ImportError:
        pass
    return out
