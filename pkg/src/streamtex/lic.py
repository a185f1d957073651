"""Convolution rendering: LIC with a box kernel, OLIC with a ramp kernel.

Every output pixel traces its own streamline and averages the input
texture along it:

    out(x, y) = round( sum_p in(p) h(s_p) / sum_p h(s_p) )

where s_p is the signed arc offset of cell p. The division by the weight
sum keeps a constant texture invariant and handles streamlines truncated
at the boundary; pixels whose field vanishes at the seed copy their input
tone instead of being rendered.

The output image may be partitioned into horizontal tiles rendered
concurrently; every pixel depends only on read-only inputs, so the result
is bit-identical for any tile count.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fields import VectorField2D, magnitude_map
from .textures import GrayImage
from .tracing import TraceParams, _leg_steps


@dataclass(frozen=True)
class Kernel:
    """Convolution weights h(s) over signed arc offsets s in [-L/2, L/2].

    box:  h(s) = 1 (symmetric moving average; direction-blind).
    ramp: h(s) = (s + L/2 + 1) / (L + 1), strictly increasing with the
          flow, which breaks the upstream/downstream symmetry and makes
          droplet smears encode orientation sense.
    """

    shape: str
    length: int

    def __post_init__(self):
        if self.shape not in ("box", "ramp"):
            raise ValueError(f"unknown kernel shape {self.shape!r}")
        if not isinstance(self.length, int) or self.length < 1 or self.length % 2 == 0:
            raise ValueError("kernel length must be a positive odd integer")

    @classmethod
    def box(cls, length: int) -> "Kernel":
        return cls("box", length)

    @classmethod
    def ramp(cls, length: int) -> "Kernel":
        return cls("ramp", length)

    def weight(self, s: float) -> float:
        if self.shape == "box":
            return 1.0
        return (s + self.length / 2.0 + 1.0) / (self.length + 1.0)


def _convolve_rows(field, img_f, y0, y1, kernel, params, eps):
    w = field.width
    n = (y1 - y0) * w
    seeds_x = np.tile(np.arange(w, dtype=np.float64), y1 - y0)
    seeds_y = np.repeat(np.arange(y0, y1, dtype=np.float64), w)
    sx_i = seeds_x.astype(np.intp)
    sy_i = seeds_y.astype(np.intp)
    w0 = kernel.weight(0.0)
    acc = img_f[sy_i, sx_i] * w0
    wsum = np.full(n, w0)
    for sign in (1.0, -1.0):
        for arc, recorded, cx, cy in _leg_steps(field, seeds_x, seeds_y, sign, params, eps):
            wk = kernel.weight(sign * arc)
            vals = img_f[cy.astype(np.intp), cx.astype(np.intp)]
            acc += np.where(recorded, vals * wk, 0.0)
            wsum += np.where(recorded, wk, 0.0)
    tones = np.floor(acc / wsum + 0.5)
    np.clip(tones, 0.0, 255.0, out=tones)
    out = tones.astype(np.uint8).reshape(y1 - y0, w)
    # Vanishing field at the seed: keep the input tone.
    svx = field.vx[y0:y1]
    svy = field.vy[y0:y1]
    seed_mag = np.sqrt(svx * svx + svy * svy)
    src = img_f[y0:y1]
    vanished = seed_mag < eps
    out[vanished] = src[vanished].astype(np.uint8)
    return out


def lic(
    field: VectorField2D,
    input_image: GrayImage,
    kernel: Kernel,
    params: TraceParams,
    tiles: int = 1,
) -> GrayImage:
    """Render the input texture convolved along per-pixel streamlines."""
    params.validate()
    if (input_image.height, input_image.width) != (field.height, field.width):
        raise ValueError("input texture dimensions must equal field dimensions")
    if kernel.length != params.L:
        raise ValueError("kernel length must equal params.L")
    if tiles < 1:
        raise ValueError("tiles must be >= 1")
    eps = params.resolve_eps(magnitude_map(field).m_max)
    img_f = input_image.pixels.astype(np.float64)
    h = field.height
    bounds = np.linspace(0, h, min(tiles, h) + 1).astype(int)
    spans = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    out = np.empty((h, field.width), dtype=np.uint8)
    if len(spans) == 1:
        out[:] = _convolve_rows(field, img_f, 0, h, kernel, params, eps)
    else:
        def work(span):
            y0, y1 = span
            out[y0:y1] = _convolve_rows(field, img_f, y0, y1, kernel, params, eps)

        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            list(pool.map(work, spans))
    return GrayImage(out)


def olic(
    field: VectorField2D,
    droplets: GrayImage,
    params: TraceParams,
    tiles: int = 1,
) -> GrayImage:
    """Ramp-kernel convolution of a droplet texture (oriented smears)."""
    return lic(field, droplets, Kernel.ramp(params.L), params, tiles=tiles)
