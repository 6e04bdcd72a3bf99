"""NumPy implementations of the counting kernels.

Semantics here are the reference; the Cython module in _cext.pyx mirrors
them.  All masks are little-endian bitsets packed into uint64 words.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"

# Two gains closer than this are treated as tied, in which case the earlier
# candidate (lower threshold / earlier feature) wins.  Keeps argmax results
# independent of summation order.
GAIN_EPS = 1e-12


def popcount(mask: np.ndarray) -> int:
    return int(np.bitwise_count(mask).sum())


def and_popcount(a: np.ndarray, b: np.ndarray) -> int:
    return int(np.bitwise_count(a & b).sum())


def score_masks(stack: np.ndarray, pos: np.ndarray, neg: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-candidate covered-positive / covered-negative counts.

    stack: (n_candidates, n_words) uint64; pos/neg: (n_words,) uint64.
    """
    p1 = np.bitwise_count(stack & pos).sum(axis=1).astype(np.int64)
    n1 = np.bitwise_count(stack & neg).sum(axis=1).astype(np.int64)
    return p1, n1


def _xlog2x(a: np.ndarray) -> np.ndarray:
    return np.where(a > 0, a * np.log2(np.maximum(a, 1)), 0.0)


def threshold_sweep(values: np.ndarray, is_pos: np.ndarray) -> tuple[float, float, int, int]:
    """Best binary split of a value-sorted sample by entropy gain.

    ``values`` must already be sorted ascending, ``is_pos`` carries the
    class bit per value.  Candidate thresholds are the observed values; a
    threshold v sends ``x <= v`` left.  Returns (threshold, gain,
    positives_left, negatives_left); gain 0.0 with threshold nan means no
    split improves on the unsplit sample.
    """
    t = len(values)
    total_p = int(is_pos.sum())
    total_n = t - total_p
    if t == 0 or total_p == 0 or total_n == 0:
        return (float("nan"), 0.0, 0, 0)

    cum_p = np.cumsum(is_pos, dtype=np.int64)
    cum_t = np.arange(1, t + 1, dtype=np.int64)
    # Splittable boundaries: last index of each run of equal values, except
    # the final run (an empty right branch is no split at all).
    cut = np.nonzero(values[:-1] != values[1:])[0]
    if len(cut) == 0:
        return (float("nan"), 0.0, 0, 0)

    p_le = cum_p[cut].astype(np.float64)
    t_le = cum_t[cut].astype(np.float64)
    n_le = t_le - p_le
    p_gt = total_p - p_le
    t_gt = t - t_le
    n_gt = t_gt - p_gt

    # t*H(p,n) == t*log2(t) - p*log2(p) - n*log2(n)
    def weighted(tt, pp, nn):
        return _xlog2x(tt) - _xlog2x(pp) - _xlog2x(nn)

    base = weighted(np.float64(t), np.float64(total_p), np.float64(total_n))
    gains = (base - weighted(t_le, p_le, n_le) - weighted(t_gt, p_gt, n_gt)) / t

    best = float(np.max(gains))
    if best <= GAIN_EPS:
        return (float("nan"), 0.0, 0, 0)
    idx = int(np.argmax(gains >= best - GAIN_EPS))  # first tied boundary
    j = int(cut[idx])
    return (float(values[j]), float(gains[idx]), int(cum_p[j]), int(cum_t[j] - cum_p[j]))
