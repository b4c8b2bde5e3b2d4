"""Summation of alternating series by iterated averaging of partial sums.

Averaging adjacent partial sums and taking the apex of the resulting
triangle realizes the Euler transformation: for an eventually-alternating
sequence with smoothly varying magnitudes it converges geometrically, and it
returns the Abel value for series whose terms only approach a constant (or
grow polynomially), which is exactly the boundary behaviour the transform
evaluations at z = -1 produce.
"""

from __future__ import annotations

import numpy as np

_DEFAULT_DIRECT = 64


def euler_alternating_sum(terms, n_direct: int = _DEFAULT_DIRECT):
    """Sum of ``terms`` (signed, eventually alternating).

    The first ``n_direct`` terms are added directly; the rest are summed by
    iterated averaging of their partial sums.  Returns
    ``(value, error_estimate)`` where the estimate is the gap closed by the
    final averaging stage.
    """
    terms = np.asarray(terms, dtype=float)
    if terms.size == 0:
        return 0.0, 0.0
    if terms.size <= n_direct + 2:
        value = float(terms.sum())
        return value, float(abs(terms[-1]))
    head = float(terms[:n_direct].sum())
    row = np.cumsum(terms[n_direct:])
    apex_prev = float(row[0])
    while row.size > 1:
        apex_prev = float(row[0])
        row = 0.5 * (row[:-1] + row[1:])
    apex = float(row[0])
    est = abs(apex - apex_prev) + 4e-16 * (abs(head) + abs(apex))
    return head + apex, est
