"""Numerov recurrences for ``w'' = g(x) w`` on a uniform grid.

Both directions rescale on the fly so that exponentially growing solutions
never overflow; only the shape of ``w`` matters to the callers.
"""

import numpy as np

from ._accel import jit

_BIG = 1e150


@jit
def numerov_outward(g, h, w0, w1, stop, turning):
    """Integrate from index 0 up to ``stop`` (inclusive).

    Returns the solution on ``[0, stop]`` and the number of sign changes.  When
    ``turning >= 0`` the integration ends early once the solution grows
    monotonically beyond index ``turning``, after which ``g > 0`` rules out
    further nodes; the tail of the array is left at zero.
    """
    n = stop + 1
    w = np.zeros(n)
    t = h * h / 12.0
    w[0] = w0
    w[1] = w1
    nodes = 0
    if w0 * w1 < 0.0:
        nodes += 1
    for i in range(1, n - 1):
        w[i + 1] = (2.0 * (1.0 + 5.0 * t * g[i]) * w[i] - (1.0 - t * g[i - 1]) * w[i - 1]) / (1.0 - t * g[i + 1])
        if not np.isfinite(w[i + 1]):
            break
        if w[i + 1] * w[i] < 0.0:
            nodes += 1
        if turning >= 0 and i > turning and w[i + 1] * w[i] > 0.0 and abs(w[i + 1]) > abs(w[i]):
            break
        if abs(w[i + 1]) > _BIG:
            for j in range(i + 2):
                w[j] /= _BIG
    return w, nodes


@jit
def numerov_inward(g, h, wl, wl1, stop):
    """Integrate from the last index down to ``stop`` (inclusive).

    ``wl`` and ``wl1`` are the values at the last and second-to-last points.
    Returns the full-length array (zeros below ``stop``) and the sign changes.
    """
    n = g.shape[0]
    w = np.zeros(n)
    t = h * h / 12.0
    w[n - 1] = wl
    w[n - 2] = wl1
    nodes = 0
    if wl * wl1 < 0.0:
        nodes += 1
    for i in range(n - 2, stop, -1):
        w[i - 1] = (2.0 * (1.0 + 5.0 * t * g[i]) * w[i] - (1.0 - t * g[i + 1]) * w[i + 1]) / (1.0 - t * g[i - 1])
        if w[i - 1] * w[i] < 0.0:
            nodes += 1
        if abs(w[i - 1]) > _BIG:
            for j in range(i - 1, n):
                w[j] /= _BIG
    return w, nodes


@jit
def count_nodes(w, tol):
    """Sign changes of ``w`` ignoring samples with ``|w| <= tol * max|w|``."""
    peak = 0.0
    for i in range(w.shape[0]):
        if abs(w[i]) > peak:
            peak = abs(w[i])
    floor = tol * peak
    nodes = 0
    last = 0.0
    for i in range(w.shape[0]):
        v = w[i]
        if abs(v) <= floor or v == 0.0:
            continue
        if last != 0.0 and v * last < 0.0:
            nodes += 1
        last = v
    return nodes
