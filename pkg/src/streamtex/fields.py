"""Analytic test fields, field file I/O, magnitude maps, and bilinear sampling.

Grid convention: cell (0, 0) is the top-left corner, x grows rightward and
y grows downward, matching raster order. Continuous coordinates put cell
centers at integers, so the samplable domain is [0, width-1] x [0, height-1].
All generators return unit-scale, dimensionless vectors.
"""

import csv
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import FieldParseError, FieldValidationError


class Vec2(NamedTuple):
    vx: float
    vy: float


@dataclass(frozen=True)
class VectorField2D:
    """2-D vector field on a Cartesian lattice, stored as (height, width) arrays."""

    vx: np.ndarray
    vy: np.ndarray

    def __post_init__(self):
        vx = np.asarray(self.vx, dtype=np.float64)
        vy = np.asarray(self.vy, dtype=np.float64)
        object.__setattr__(self, "vx", vx)
        object.__setattr__(self, "vy", vy)
        if vx.ndim != 2 or vx.shape != vy.shape:
            raise ValueError("vx and vy must be 2-D arrays of equal shape")
        if vx.shape[0] < 2 or vx.shape[1] < 2:
            raise ValueError("field must be at least 2x2 cells")
        if not (np.isfinite(vx).all() and np.isfinite(vy).all()):
            raise FieldValidationError("field contains non-finite components")

    @property
    def width(self) -> int:
        return self.vx.shape[1]

    @property
    def height(self) -> int:
        return self.vx.shape[0]

    def vector_at(self, x: int, y: int) -> Vec2:
        return Vec2(float(self.vx[y, x]), float(self.vy[y, x]))


@dataclass(frozen=True)
class MagnitudeMap:
    """Per-cell field magnitude with its cached global maximum."""

    m: np.ndarray
    m_max: float

    @property
    def width(self) -> int:
        return self.m.shape[1]

    @property
    def height(self) -> int:
        return self.m.shape[0]


def uniform_field(width: int, height: int, vx: float = 1.0, vy: float = 0.0) -> VectorField2D:
    """Constant field, mostly useful as a test fixture."""
    return VectorField2D(
        np.full((height, width), vx, dtype=np.float64),
        np.full((height, width), vy, dtype=np.float64),
    )


def _check_dims(width: int, height: int):
    if width < 2 or height < 2:
        raise ValueError("width and height must both be >= 2")


def _check_center(width, height, center):
    cx, cy = center
    if not (0 <= cx <= width - 1 and 0 <= cy <= height - 1):
        raise ValueError(f"center {center} lies outside the grid")


def make_vortex(
    width: int,
    height: int,
    center: tuple[float, float] | None = None,
    clockwise: bool = True,
) -> VectorField2D:
    """Unit-magnitude vortex tangent to circles about `center`.

    `clockwise` is meant in image coordinates (y down): at the 3 o'clock
    position the clockwise field points toward +y. The cell exactly at the
    center, if any, carries v = (0, 0).
    """
    _check_dims(width, height)
    if center is None:
        center = ((width - 1) / 2.0, (height - 1) / 2.0)
    _check_center(width, height, center)
    x = np.arange(width, dtype=np.float64)
    y = np.arange(height, dtype=np.float64)
    gx, gy = np.meshgrid(x, y)
    rx = gx - center[0]
    ry = gy - center[1]
    r = np.sqrt(rx * rx + ry * ry)
    with np.errstate(divide="ignore", invalid="ignore"):
        vx = np.where(r > 0.0, -ry / r, 0.0)
        vy = np.where(r > 0.0, rx / r, 0.0)
    if not clockwise:
        vx = -vx
        vy = -vy
    return VectorField2D(vx, vy)


def make_two_vortices(
    width: int,
    height: int,
    centers: tuple[tuple[float, float], tuple[float, float]] | None = None,
    falloff: float | None = None,
) -> VectorField2D:
    """Two superposed vortices with Gaussian magnitude decay exp(-r^2/falloff^2).

    The decay makes the field strength vary across the frame, which is what
    magnitude-enhancement renderings are meant to reveal. Each vortex term
    is additionally masked to vanish within about half a cell of the other
    center, so both centers are exact stagnation points; beyond a couple of
    cells the mask is indistinguishable from 1. Defaults: centers at one
    third and two thirds of the width, falloff of a quarter width.
    """
    _check_dims(width, height)
    if centers is None:
        centers = ((width / 3.0, (height - 1) / 2.0), (2.0 * width / 3.0, (height - 1) / 2.0))
    if falloff is None:
        falloff = width / 4.0
    if falloff <= 0.0:
        raise ValueError("falloff must be > 0")
    (ax, ay), (bx, by) = centers
    if ax == bx and ay == by:
        raise ValueError("vortex centers must be distinct")
    for c in centers:
        _check_center(width, height, c)
    x = np.arange(width, dtype=np.float64)
    y = np.arange(height, dtype=np.float64)
    gx, gy = np.meshgrid(x, y)
    vx = np.zeros((height, width))
    vy = np.zeros((height, width))
    inv_f2 = 1.0 / (falloff * falloff)
    stagnation_r2 = 0.25  # (half a cell)^2
    for (cx, cy), (ox, oy) in ((centers[0], centers[1]), (centers[1], centers[0])):
        rx = gx - cx
        ry = gy - cy
        r2 = rx * rx + ry * ry
        r = np.sqrt(r2)
        qx = gx - ox
        qy = gy - oy
        mask = 1.0 - np.exp(-(qx * qx + qy * qy) / stagnation_r2)
        decay = np.exp(-r2 * inv_f2) * mask
        with np.errstate(divide="ignore", invalid="ignore"):
            vx += np.where(r > 0.0, -ry / r * decay, 0.0)
            vy += np.where(r > 0.0, rx / r * decay, 0.0)
    return VectorField2D(vx, vy)


def make_vortex_cells(
    width: int,
    height: int,
    wavelength: float,
    amplitude_gradient: bool = False,
) -> VectorField2D:
    """Periodic array of counter-rotating vortex cells (period 2*wavelength).

    v = (sin(pi x/l) cos(pi y/l), -cos(pi x/l) sin(pi y/l)), which is
    divergence-free. With `amplitude_gradient` the field is scaled by a
    linear envelope rising from 0.2 at the left edge to 1.0 at the right,
    so the magnitude varies slowly across the frame.
    """
    _check_dims(width, height)
    if wavelength < 4:
        raise ValueError("wavelength must be >= 4 cells")
    a = math.pi / wavelength
    x = np.arange(width, dtype=np.float64)
    y = np.arange(height, dtype=np.float64)
    gx, gy = np.meshgrid(x, y)
    vx = np.sin(a * gx) * np.cos(a * gy)
    vy = -np.cos(a * gx) * np.sin(a * gy)
    if amplitude_gradient:
        env = 0.2 + 0.8 * gx / (width - 1)
        vx = vx * env
        vy = vy * env
    return VectorField2D(vx, vy)


def magnitude_map(field: VectorField2D) -> MagnitudeMap:
    """Per-cell magnitude sqrt(vx^2 + vy^2) and its global maximum."""
    m = np.sqrt(field.vx * field.vx + field.vy * field.vy)
    return MagnitudeMap(m, float(m.max()))


def sample_bilinear(field: VectorField2D, x: float, y: float) -> Vec2:
    """Bilinear interpolation of the four surrounding cell vectors.

    Exact at integer coordinates. Valid for 0 <= x <= width-1 and
    0 <= y <= height-1; anything else raises ValueError.
    """
    w = field.width
    h = field.height
    if not (0.0 <= x <= w - 1 and 0.0 <= y <= h - 1):
        raise ValueError(f"coordinate ({x}, {y}) outside [0, {w - 1}] x [0, {h - 1}]")
    # Clamp the base cell so x = width-1 resolves to fx = 1 on the last pair.
    x0 = min(math.floor(x), w - 2)
    y0 = min(math.floor(y), h - 2)
    fx = x - x0
    fy = y - y0
    vx = field.vx
    vy = field.vy
    ax = vx[y0, x0] * (1.0 - fx) + vx[y0, x0 + 1] * fx
    bx = vx[y0 + 1, x0] * (1.0 - fx) + vx[y0 + 1, x0 + 1] * fx
    ay = vy[y0, x0] * (1.0 - fx) + vy[y0, x0 + 1] * fx
    by = vy[y0 + 1, x0] * (1.0 - fx) + vy[y0 + 1, x0 + 1] * fx
    return Vec2(float(ax * (1.0 - fy) + bx * fy), float(ay * (1.0 - fy) + by * fy))


# ---------------------------------------------------------------------------
# File formats
#
# text-grid: first line "<width> <height>", then width*height lines in
# row-major order, each "<vx> <vy>". Lines starting with '#' are comments.
# csv: header "x,y,vx,vy", one row per cell, any order, every cell exactly once.
# ---------------------------------------------------------------------------


def save_field(field: VectorField2D, path) -> None:
    """Write the canonical text-grid form (shortest round-tripping floats, LF)."""
    lines = [f"{field.width} {field.height}\n"]
    vx = field.vx.tolist()
    vy = field.vy.tolist()
    for j in range(field.height):
        row_x = vx[j]
        row_y = vy[j]
        for i in range(field.width):
            lines.append(f"{row_x[i]!r} {row_y[i]!r}\n")
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.writelines(lines)


def load_field(path, format: str = "text-grid") -> VectorField2D:
    """Read a field file in the given format ("text-grid" or "csv")."""
    if format == "text-grid":
        return _load_text_grid(path)
    if format == "csv":
        return _load_csv(path)
    raise ValueError(f"unknown field format {format!r}")


def _parse_float(token: str, lineno: int) -> float:
    try:
        v = float(token)
    except ValueError:
        raise FieldParseError(f"non-numeric token {token!r}", lineno) from None
    if not math.isfinite(v):
        raise FieldValidationError(f"line {lineno}: non-finite component {token!r}")
    return v


def _load_text_grid(path) -> VectorField2D:
    width = height = None
    data_x: list[float] = []
    data_y: list[float] = []
    with open(path, "r", encoding="ascii") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if width is None:
                if len(tokens) != 2:
                    raise FieldParseError("header must be '<width> <height>'", lineno)
                try:
                    width, height = int(tokens[0]), int(tokens[1])
                except ValueError:
                    raise FieldParseError("header must hold two integers", lineno) from None
                if width < 2 or height < 2:
                    raise FieldParseError("dimensions must be >= 2", lineno)
                continue
            if len(data_x) >= width * height:
                raise FieldParseError("more vector rows than width*height", lineno)
            if len(tokens) != 2:
                raise FieldParseError(f"expected 2 tokens, found {len(tokens)}", lineno)
            data_x.append(_parse_float(tokens[0], lineno))
            data_y.append(_parse_float(tokens[1], lineno))
    if width is None:
        raise FieldParseError("empty field file", None)
    if len(data_x) != width * height:
        raise FieldParseError(
            f"expected {width * height} vector rows, found {len(data_x)}", None
        )
    vx = np.array(data_x, dtype=np.float64).reshape(height, width)
    vy = np.array(data_y, dtype=np.float64).reshape(height, width)
    return VectorField2D(vx, vy)


def _load_csv(path) -> VectorField2D:
    cells: dict[tuple[int, int], tuple[float, float]] = {}
    max_x = max_y = -1
    with open(path, "r", encoding="ascii", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [t.strip() for t in header] != ["x", "y", "vx", "vy"]:
            raise FieldParseError("csv header must be 'x,y,vx,vy'", 1)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise FieldParseError(f"expected 4 columns, found {len(row)}", lineno)
            try:
                x, y = int(row[0]), int(row[1])
            except ValueError:
                raise FieldParseError("cell coordinates must be integers", lineno) from None
            if x < 0 or y < 0:
                raise FieldParseError("cell coordinates must be non-negative", lineno)
            if (x, y) in cells:
                raise FieldParseError(f"duplicate cell ({x}, {y})", lineno)
            cells[(x, y)] = (_parse_float(row[2], lineno), _parse_float(row[3], lineno))
            max_x = max(max_x, x)
            max_y = max(max_y, y)
    width, height = max_x + 1, max_y + 1
    if width < 2 or height < 2:
        raise FieldParseError("csv field must span at least 2x2 cells", None)
    if len(cells) != width * height:
        raise FieldParseError(
            f"csv field incomplete: {len(cells)} of {width * height} cells present", None
        )
    vx = np.empty((height, width))
    vy = np.empty((height, width))
    for (x, y), (cvx, cvy) in cells.items():
        vx[y, x] = cvx
        vy[y, x] = cvy
    return VectorField2D(vx, vy)
