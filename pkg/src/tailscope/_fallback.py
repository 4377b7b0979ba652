"""Pure numpy implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable or when
``TAILSCOPE_PURE=1`` is set.
"""

import numpy as np


def z_profile(ys, mult, n, vmax):
    """``Z_1 .. Z_vmax`` from distinct counts ``ys`` with multiplicities ``mult``.

    Uses the ratio-product form

        Z_v = sum_k (Y_k / n) * prod_{j=1..v} (n - j - Y_k + 1) / (n - j)

    where a factor whose numerator reaches zero zeroes that term for every
    larger ``v``. Requires ``vmax <= n - 1``.
    """
    ys = np.asarray(ys, dtype=np.int64)
    mult = np.asarray(mult, dtype=np.float64)
    j = np.arange(1, vmax + 1, dtype=np.int64)
    out = np.zeros(vmax, dtype=np.float64)
    # bound the (rows x vmax) scratch matrix to ~4M doubles
    step = max(1, 4_000_000 // max(vmax, 1))
    for lo in range(0, ys.size, step):
        y = ys[lo:lo + step]
        num = (n - j)[None, :] - y[:, None] + 1
        factors = np.maximum(num, 0) / (n - j)[None, :]
        prods = np.cumprod(factors, axis=1)
        weights = mult[lo:lo + step] * y / n
        out += np.sum(weights[:, None] * prods, axis=0)
    return out


def kendall_trend(x, y):
    """Kendall tau-a: (concordant - discordant) / (m choose 2); ties count zero."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    m = x.size
    if m < 2:
        return 0.0
    sx = np.sign(x[None, :] - x[:, None])
    sy = np.sign(y[None, :] - y[:, None])
    s = np.triu(sx * sy, k=1).sum()
    return float(s) / (0.5 * m * (m - 1))
