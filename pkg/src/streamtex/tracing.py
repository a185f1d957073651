"""Streamline tracing through a vector field.

A streamline is traced from a seed cell center in both the flow direction
(positive leg) and against it (negative leg), each leg covering arc length
up to L/2 in cell units. Advection uses midpoint (RK2) steps on the
bilinearly sampled, *normalized* field, so the integration parameter is
arc length. A leg stops when the field magnitude drops below eps at the
current or midpoint sample, or when a step would leave the sampling
domain [0, width-1] x [0, height-1].

Cell recording uses hysteresis: the active cell changes only when the
position moves strictly more than half a cell away from it on some axis.
Exact half-cell positions therefore stay with the current cell, which
keeps the recorded cells and offsets symmetric in the two legs (on a
uniform field, step 0.5 yields cells at integer offsets -(L-1)/2..(L-1)/2).

The same per-step arithmetic drives the single-seed `trace`, the stored
batch form used by the oriented-streamline painter, and the accumulating
form used by the convolution renderers, so every consumer sees identical
cell sequences.
"""

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .fields import VectorField2D, magnitude_map

EPS_SCALE = 1e-6
EPS_FLOOR = 1e-12


@dataclass(frozen=True)
class TraceParams:
    """Streamline length L (odd, in cells), integration step, vanish threshold.

    eps=None derives the threshold from the field at trace time:
    max(1e-6 * m_max, 1e-12), a scale-invariant reading of "the field
    vanishes".
    """

    L: int
    step: float = 0.5
    eps: float | None = None

    def validate(self) -> None:
        if not isinstance(self.L, int) or self.L < 1:
            raise ValueError("L must be a positive integer")
        if self.L % 2 == 0:
            raise ValueError("L must be odd")
        if not (0.0 < self.step <= 1.0):
            raise ValueError("step must lie in (0, 1]")
        if self.eps is not None and not (self.eps > 0.0):
            raise ValueError("eps must be > 0")

    def resolve_eps(self, m_max: float) -> float:
        if self.eps is not None:
            return self.eps
        return max(EPS_SCALE * m_max, EPS_FLOOR)

    def steps_per_leg(self) -> int:
        return int((self.L / 2.0) / self.step + 1e-9)


@dataclass(frozen=True)
class Streamline:
    """Ordered cell path through the grid, centered on its seed cell.

    cells[k] = (x, y); offsets[k] is the signed arc length at which the
    cell was entered, negative upstream of the seed. The seed sits at
    offset 0. Offsets are strictly increasing and bounded by L/2.
    """

    seed: tuple[int, int]
    cells: np.ndarray
    offsets: np.ndarray
    L: int

    def __len__(self) -> int:
        return len(self.offsets)


def _bilinear(vxf, vyf, x, y, w, h):
    # Same arithmetic as fields.sample_bilinear (keep in sync); vxf/vyf are
    # the raveled component arrays, gathered by flat index for speed.
    x0 = np.minimum(np.floor(x), w - 2)
    y0 = np.minimum(np.floor(y), h - 2)
    fx = x - x0
    fy = y - y0
    gx = 1.0 - fx
    idx = y0.astype(np.intp) * w + x0.astype(np.intp)
    ax = vxf[idx] * gx + vxf[idx + 1] * fx
    bx = vxf[idx + w] * gx + vxf[idx + w + 1] * fx
    ay = vyf[idx] * gx + vyf[idx + 1] * fx
    by = vyf[idx + w] * gx + vyf[idx + w + 1] * fx
    return ax * (1.0 - fy) + bx * fy, ay * (1.0 - fy) + by * fy


def _leg_steps(
    field: VectorField2D,
    seeds_x: np.ndarray,
    seeds_y: np.ndarray,
    sign: float,
    params: TraceParams,
    eps: float,
) -> Iterator[tuple[float, np.ndarray, np.ndarray, np.ndarray]]:
    """Advect one leg for a batch of seeds, one RK2 step at a time.

    Yields (arc, recorded, cell_x, cell_y) after every step: `recorded`
    flags lanes whose active cell changed on this step, and cell_x/cell_y
    are the current integer-valued cells as float arrays. Lanes advance
    independently, so results do not depend on how seeds are batched.
    """
    h, w = field.vx.shape
    vxf = np.ascontiguousarray(field.vx).ravel()
    vyf = np.ascontiguousarray(field.vy).ravel()
    xmax = float(w - 1)
    ymax = float(h - 1)
    step = params.step
    half = 0.5 * step
    x = seeds_x.astype(np.float64).copy()
    y = seeds_y.astype(np.float64).copy()
    cx = x.copy()
    cy = y.copy()
    alive = np.ones(x.shape, dtype=bool)
    for k in range(1, params.steps_per_leg() + 1):
        with np.errstate(divide="ignore", invalid="ignore"):
            svx, svy = _bilinear(vxf, vyf, x, y, w, h)
            m1 = np.sqrt(svx * svx + svy * svy)
            alive &= m1 >= eps
            hx = x + (sign * svx / m1) * half
            hy = y + (sign * svy / m1) * half
            alive &= (hx >= 0.0) & (hx <= xmax) & (hy >= 0.0) & (hy <= ymax)
            hx = np.where(alive, hx, 0.0)
            hy = np.where(alive, hy, 0.0)
            svx2, svy2 = _bilinear(vxf, vyf, hx, hy, w, h)
            m2 = np.sqrt(svx2 * svx2 + svy2 * svy2)
            alive &= m2 >= eps
            nx = x + (sign * svx2 / m2) * step
            ny = y + (sign * svy2 / m2) * step
            alive &= (nx >= 0.0) & (nx <= xmax) & (ny >= 0.0) & (ny <= ymax)
        x = np.where(alive, nx, x)
        y = np.where(alive, ny, y)
        # Hysteresis cell tracking; |x - cx| <= 0.5 holds after each update,
        # so lanes that stopped moving can never flag a change again.
        dx = x - cx
        ncx = np.where(dx > 0.5, np.ceil(x - 0.5), np.where(dx < -0.5, np.floor(x + 0.5), cx))
        dy = y - cy
        ncy = np.where(dy > 0.5, np.ceil(y - 0.5), np.where(dy < -0.5, np.floor(y + 0.5), cy))
        recorded = (ncx != cx) | (ncy != cy)
        cx = ncx
        cy = ncy
        yield k * step, recorded, cx, cy
        if not alive.any():
            break


@dataclass
class _LegRecord:
    valid: np.ndarray  # (n, K) bool
    cx: np.ndarray  # (n, K) int32
    cy: np.ndarray  # (n, K) int32
    arcs: np.ndarray  # (K,) float64


@dataclass
class BatchTraces:
    """Stored traces for a batch of seeds (cells + signed offsets per seed)."""

    seeds: np.ndarray
    neg: _LegRecord
    pos: _LegRecord
    L: int

    def streamline_arrays(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Cells (m, 2) and ascending offsets (m,) for seed i."""
        nk = np.nonzero(self.neg.valid[i])[0]
        pk = np.nonzero(self.pos.valid[i])[0]
        m = len(nk) + 1 + len(pk)
        cells = np.empty((m, 2), dtype=np.int32)
        offsets = np.empty(m, dtype=np.float64)
        a = len(nk)
        cells[:a, 0] = self.neg.cx[i, nk[::-1]]
        cells[:a, 1] = self.neg.cy[i, nk[::-1]]
        offsets[:a] = -self.neg.arcs[nk[::-1]]
        cells[a] = self.seeds[i]
        offsets[a] = 0.0
        cells[a + 1 :, 0] = self.pos.cx[i, pk]
        cells[a + 1 :, 1] = self.pos.cy[i, pk]
        offsets[a + 1 :] = self.pos.arcs[pk]
        return cells, offsets


def _record_leg(field, seeds_x, seeds_y, sign, params, eps) -> _LegRecord:
    n = len(seeds_x)
    K = params.steps_per_leg()
    valid = np.zeros((K, n), dtype=bool)
    cxs = np.zeros((K, n), dtype=np.int32)
    cys = np.zeros((K, n), dtype=np.int32)
    arcs = np.arange(1, K + 1, dtype=np.float64) * params.step
    for k, (_arc, recorded, cx, cy) in enumerate(
        _leg_steps(field, seeds_x, seeds_y, sign, params, eps)
    ):
        valid[k] = recorded
        cxs[k] = cx.astype(np.int32)
        cys[k] = cy.astype(np.int32)
    return _LegRecord(valid.T.copy(), cxs.T.copy(), cys.T.copy(), arcs)


def trace_batch(
    field: VectorField2D,
    seeds: np.ndarray,
    params: TraceParams,
    eps: float | None = None,
) -> BatchTraces:
    """Trace every seed in `seeds` ((n, 2) integer cells) through the field."""
    params.validate()
    seeds = np.asarray(seeds, dtype=np.int64).reshape(-1, 2)
    w, h = field.width, field.height
    if len(seeds) and not (
        (seeds[:, 0] >= 0).all()
        and (seeds[:, 0] < w).all()
        and (seeds[:, 1] >= 0).all()
        and (seeds[:, 1] < h).all()
    ):
        raise ValueError("seed cell outside the grid")
    if eps is None:
        eps = params.resolve_eps(magnitude_map(field).m_max)
    sx = seeds[:, 0].astype(np.float64)
    sy = seeds[:, 1].astype(np.float64)
    pos = _record_leg(field, sx, sy, 1.0, params, eps)
    neg = _record_leg(field, sx, sy, -1.0, params, eps)
    return BatchTraces(seeds.astype(np.int32), neg, pos, params.L)


def trace(field: VectorField2D, seed: tuple[int, int], params: TraceParams) -> Streamline:
    """Local streamline through `seed`, honoring the boundary and vanish stops.

    Truncated legs shorten the streamline; they never raise. A seed whose
    field magnitude is below eps yields the seed cell alone.
    """
    x, y = int(seed[0]), int(seed[1])
    if not (0 <= x < field.width and 0 <= y < field.height):
        raise ValueError(f"seed {seed} outside the grid")
    batch = trace_batch(field, np.array([[x, y]]), params)
    cells, offsets = batch.streamline_arrays(0)
    return Streamline((x, y), cells, offsets, params.L)
