"""Two-dimensional Sobol low-discrepancy sequence and grid seed ordering.

Direction numbers (32-bit, v_k = m_k / 2^k):
  dimension 1: van der Corput in base 2, m_k = 1 for every k;
  dimension 2: primitive polynomial x + 1 with m_1 = 1, giving
               m = 1, 3, 5, 15, 17, 51, 85, 255, 257, ... via
               m_k = (2 * m_{k-1}) XOR m_{k-1}.

Points are emitted in the Antonov-Saleev (Gray code) order with the
initial all-zeros point skipped, so the sequence starts
(0.5, 0.5), (0.75, 0.25), (0.25, 0.75), ... Point i is reproducible in
isolation: it equals the XOR of the direction numbers selected by the set
bits of gray(i + 1), which is what `sobol_2d` computes; the first 2^k
points always form the same set as the natural-order construction.
"""

import math

import numpy as np

_BITS = 32
_SCALE = 1.0 / (1 << _BITS)


def _direction_numbers() -> tuple[np.ndarray, np.ndarray]:
    v1 = np.zeros(_BITS, dtype=np.uint32)
    v2 = np.zeros(_BITS, dtype=np.uint32)
    m = 1
    for k in range(1, _BITS + 1):
        v1[k - 1] = 1 << (_BITS - k)
        v2[k - 1] = m << (_BITS - k)
        m = (2 * m) ^ m
    return v1, v2


_V1, _V2 = _direction_numbers()


def sobol_2d(n: int, start: int = 0) -> np.ndarray:
    """Points start..start+n-1 of the 2-D Sobol sequence, shape (n, 2) in [0,1)^2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    idx = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    gray = idx ^ (idx >> np.uint64(1))
    xi = np.zeros(n, dtype=np.uint32)
    yi = np.zeros(n, dtype=np.uint32)
    for b in range(_BITS):
        has_bit = ((gray >> np.uint64(b)) & np.uint64(1)).astype(bool)
        xi[has_bit] ^= _V1[b]
        yi[has_bit] ^= _V2[b]
    out = np.empty((n, 2), dtype=np.float64)
    out[:, 0] = xi * _SCALE
    out[:, 1] = yi * _SCALE
    return out


def seed_cells(width: int, height: int, fraction: float) -> np.ndarray:
    """First ceil(fraction * width * height) distinct cells hit by the sequence.

    Sobol points are scaled to the grid and floored to integer cells;
    repeats of an already-collected cell are skipped so the low-discrepancy
    spread survives. Returns an (n, 2) int32 array of (x, y) in emission
    order. fraction must lie in (0, 1].
    """
    if not (0.0 < fraction <= 1.0):
        raise ValueError("fraction must lie in (0, 1]")
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be positive")
    total = width * height
    # Back off a hair before ceil so 0.30 * 10000 = 3000.0000000000005 in
    # floats still yields 3000.
    target = int(math.ceil(fraction * total - 1e-9))
    target = max(1, min(target, total))
    # Every grid cell contains a dyadic box of side 2^-ceil(log2(2*dim)),
    # and the first 2^(mx+my) points hit each such box at least once, so
    # the scan below always terminates within `cap` points.
    mx = max(1, math.ceil(math.log2(2 * width)))
    my = max(1, math.ceil(math.log2(2 * height)))
    cap = 1 << (mx + my)
    seen = np.zeros(total, dtype=bool)
    collected: list[np.ndarray] = []
    count = 0
    start = 0
    block = 4096
    while count < target and start < cap:
        pts = sobol_2d(min(block, cap - start), start=start)
        start += len(pts)
        xs = np.floor(pts[:, 0] * width).astype(np.int64)
        ys = np.floor(pts[:, 1] * height).astype(np.int64)
        flat = ys * width + xs
        # First occurrence within the block, then drop cells seen earlier.
        _, first = np.unique(flat, return_index=True)
        first.sort()
        flat = flat[first]
        flat = flat[~seen[flat]]
        if count + len(flat) > target:
            flat = flat[: target - count]
        seen[flat] = True
        cells = np.empty((len(flat), 2), dtype=np.int32)
        cells[:, 0] = flat % width
        cells[:, 1] = flat // width
        collected.append(cells)
        count += len(flat)
    if count < target:
        raise AssertionError("sobol seed scan failed to cover the grid")
    return np.concatenate(collected, axis=0)
