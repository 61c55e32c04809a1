"""Pure-numpy implementation of the hot grid kernels."""

from __future__ import annotations

import numpy as np


def discrete_volume_and_grad(theta, cos_mid, tan_mid, dalpha, dbeta, jump):
    """Midpoint-rule graph area of a periodic angle grid, with gradient.

    ``theta`` is (na, nb); column nb wraps to column 0 plus ``jump``
    (= 2*pi*winding).  Cell (i, j) sits between latitude rows i, i+1 and
    longitude columns j, j+1; ``cos_mid``/``tan_mid`` hold cos/tan of the
    (na-1,) midpoint latitudes.  Returns (value, grad) with grad shaped
    like ``theta``; summation order is fixed, so results are reproducible.
    """
    theta = np.asarray(theta, dtype=float)
    na, nb = theta.shape
    ext = np.empty((na, nb + 1))
    ext[:, :nb] = theta
    ext[:, nb] = theta[:, 0] + jump

    t00 = ext[:-1, :-1]
    t01 = ext[:-1, 1:]
    t10 = ext[1:, :-1]
    t11 = ext[1:, 1:]

    db = ((t01 + t11) - (t00 + t10)) / (2.0 * dbeta)
    da = ((t10 + t11) - (t00 + t01)) / (2.0 * dalpha)

    cm = cos_mid[:, None]
    slope = tan_mid[:, None] + db / cm
    th2 = -da
    s = np.sqrt(1.0 + slope * slope + th2 * th2)
    w = cm * (dalpha * dbeta)
    value = float(np.sum(s * w))

    # d(value)/d(corner) assembled from the two chain-rule factors.
    gs = w * slope / (s * 2.0 * dbeta * cm)   # via d(slope)/d(theta_b-derivative)
    g2 = w * th2 / (s * 2.0 * dalpha)         # via d(th2)/d(theta_a-derivative)

    gext = np.zeros((na, nb + 1))
    gext[:-1, :-1] += -gs + g2
    gext[:-1, 1:] += gs + g2
    gext[1:, :-1] += -gs - g2
    gext[1:, 1:] += gs - g2

    grad = gext[:, :nb].copy()
    grad[:, 0] += gext[:, nb]
    return value, grad
