"""Independent reference computations used by the test suite.

Everything here is deliberately written from scratch against the math,
not by calling the library's fast paths: RK4 advection of the normalized
flow, brute-force moving averages, direct Sobol construction, and the
directional autocorrelation estimator.
"""

import numpy as np


def bilinear_ref(arr, x, y):
    """Reference bilinear sample of a 2-D array at (x, y), centers at integers."""
    h, w = arr.shape
    x0 = min(int(np.floor(x)), w - 2)
    y0 = min(int(np.floor(y)), h - 2)
    fx = x - x0
    fy = y - y0
    top = arr[y0, x0] * (1 - fx) + arr[y0, x0 + 1] * fx
    bot = arr[y0 + 1, x0] * (1 - fx) + arr[y0 + 1, x0 + 1] * fx
    return top * (1 - fy) + bot * fy


def rk4_flow_path(field, start, arc_length, step):
    """RK4 integration of the unit-speed flow from `start`; returns positions.

    Stops early at the domain boundary or where the field magnitude drops
    below 1e-9. Positions are sampled every `step` of arc length.
    """
    w, h = field.width, field.height

    def direction(x, y):
        vx = bilinear_ref(field.vx, x, y)
        vy = bilinear_ref(field.vy, x, y)
        m = np.hypot(vx, vy)
        if m < 1e-9:
            return None
        return vx / m, vy / m

    x, y = float(start[0]), float(start[1])
    pts = [(x, y)]
    n = int(round(arc_length / step))
    for _ in range(n):
        k1 = direction(x, y)
        if k1 is None:
            break
        p2 = (x + 0.5 * step * k1[0], y + 0.5 * step * k1[1])
        if not (0 <= p2[0] <= w - 1 and 0 <= p2[1] <= h - 1):
            break
        k2 = direction(*p2)
        if k2 is None:
            break
        p3 = (x + 0.5 * step * k2[0], y + 0.5 * step * k2[1])
        if not (0 <= p3[0] <= w - 1 and 0 <= p3[1] <= h - 1):
            break
        k3 = direction(*p3)
        if k3 is None:
            break
        p4 = (x + step * k3[0], y + step * k3[1])
        if not (0 <= p4[0] <= w - 1 and 0 <= p4[1] <= h - 1):
            break
        k4 = direction(*p4)
        if k4 is None:
            break
        nx = x + step * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]) / 6.0
        ny = y + step * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]) / 6.0
        if not (0 <= nx <= w - 1 and 0 <= ny <= h - 1):
            break
        x, y = nx, ny
        pts.append((x, y))
    return np.array(pts)


def rk4_flow_cells(field, starts, n_arc, substeps=4):
    """Batch RK4 advection sampling the nearest cell at each integer arc.

    Returns (cells, ok): cells[a, j] is the (x, y) cell of path j after
    arc length a; ok[a, j] flags paths still inside the domain.
    """
    vx, vy = field.vx, field.vy
    h, w = vx.shape

    def vel(x, y):
        x0 = np.minimum(np.floor(x), w - 2).astype(int)
        y0 = np.minimum(np.floor(y), h - 2).astype(int)
        fx = x - x0
        fy = y - y0

        def bi(a):
            return (a[y0, x0] * (1 - fx) + a[y0, x0 + 1] * fx) * (1 - fy) + (
                a[y0 + 1, x0] * (1 - fx) + a[y0 + 1, x0 + 1] * fx
            ) * fy

        ux, uy = bi(vx), bi(vy)
        m = np.sqrt(ux * ux + uy * uy)
        m = np.where(m < 1e-9, np.inf, m)
        return ux / m, uy / m

    x = starts[:, 0].astype(float).copy()
    y = starts[:, 1].astype(float).copy()
    alive = np.ones(len(x), bool)
    cells = np.zeros((n_arc + 1, len(x), 2), int)
    ok = np.zeros((n_arc + 1, len(x)), bool)
    cells[0, :, 0] = np.round(x)
    cells[0, :, 1] = np.round(y)
    ok[0] = True
    hs = 1.0 / substeps
    for a in range(1, n_arc + 1):
        for _ in range(substeps):
            k1x, k1y = vel(x, y)
            k2x, k2y = vel(np.clip(x + 0.5 * hs * k1x, 0, w - 1), np.clip(y + 0.5 * hs * k1y, 0, h - 1))
            k3x, k3y = vel(np.clip(x + 0.5 * hs * k2x, 0, w - 1), np.clip(y + 0.5 * hs * k2y, 0, h - 1))
            k4x, k4y = vel(np.clip(x + hs * k3x, 0, w - 1), np.clip(y + hs * k3y, 0, h - 1))
            nx = x + hs * (k1x + 2 * k2x + 2 * k3x + k4x) / 6.0
            ny = y + hs * (k1y + 2 * k2y + 2 * k3y + k4y) / 6.0
            alive &= np.isfinite(nx) & np.isfinite(ny)
            alive &= (nx >= 0) & (nx <= w - 1) & (ny >= 0) & (ny <= h - 1)
            x = np.where(alive, nx, x)
            y = np.where(alive, ny, y)
        cells[a, :, 0] = np.round(x)
        cells[a, :, 1] = np.round(y)
        ok[a] = alive
    return cells, ok


def moving_average_rows(pixels, taps):
    """Centered `taps`-point moving average of each row (full-tap columns only)."""
    pix = pixels.astype(float)
    padded = np.pad(pix, ((0, 0), (1, 0)))
    csum = np.cumsum(padded, axis=1)
    return (csum[:, taps:] - csum[:, :-taps]) / taps


def sobol_point_direct(i):
    """Point i (0-based) of the 2-D Sobol sequence by direct construction.

    Dimension 1 is the base-2 radical inverse; dimension 2 XORs the x+1
    direction numbers. The emitted order applies gray(i+1) so it matches
    the recurrence-based generator point for point.
    """
    bits = 32
    m = 1
    v2 = []
    for k in range(1, bits + 1):
        v2.append(m << (bits - k))
        m = (2 * m) ^ m
    g = (i + 1) ^ ((i + 1) >> 1)
    xi = 0
    yi = 0
    for b in range(bits):
        if (g >> b) & 1:
            xi ^= 1 << (bits - 1 - b)
            yi ^= v2[b]
    return xi / 2.0**bits, yi / 2.0**bits


def directional_corr_length(field, img, ramp_rate, m_norm, max_lag, grid_step=16):
    """Integral autocorrelation length of the tone ramp along the flow.

    Paths are advected with RK4 from a coarse pixel grid; at each arc lag
    the circular correlation of the ramp residual (tone minus the expected
    magnitude-weighted climb) is computed, and the lags are summed. Long
    coherent streaks keep the residual phase aligned, so the sum grows
    with streak length.
    """
    h, w = img.shape
    gy, gx = np.mgrid[grid_step // 2 : h : grid_step, grid_step // 2 : w : grid_step]
    starts = np.stack([gx.ravel(), gy.ravel()], axis=1)
    cells, ok = rk4_flow_cells(field, starts, max_lag)
    tones = img[cells[..., 1], cells[..., 0]].astype(float)
    mhat = m_norm[cells[..., 1], cells[..., 0]]
    ramp = np.zeros_like(tones)
    ramp[1:] = ramp_rate * np.cumsum(mhat[1:], axis=0)
    z = np.exp(2j * np.pi * (tones - ramp) / 256.0)
    total = 0.0
    for lag in range(1, max_lag + 1):
        mask = ok[lag] & ok[0]
        total += float(np.abs((z[lag][mask] / z[0][mask]).mean()))
    return total


def star_discrepancy_grid(pts, grid=256):
    """Grid-restricted star discrepancy over anchored boxes [0,i/grid)x[0,j/grid)."""
    n = len(pts)
    hist = np.zeros((grid, grid))
    ix = np.floor(pts[:, 0] * grid).astype(int)
    iy = np.floor(pts[:, 1] * grid).astype(int)
    np.add.at(hist, (ix, iy), 1.0)
    cum = hist.cumsum(axis=0).cumsum(axis=1) / n
    edges = np.arange(1, grid + 1) / grid
    vol = np.outer(edges, edges)
    return float(np.abs(cum - vol).max())
