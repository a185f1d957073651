"""Input textures: white noise for LIC, sparse droplet maps for OLIC.

Both generators are deterministic functions of their seed (see rng.py), so
renders are reproducible byte for byte.
"""

from dataclasses import dataclass

import numpy as np

from .rng import SplitMix64, u64_block


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale raster stored as a (height, width) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("pixels must be a non-empty 2-D array")
        if px.dtype != np.uint8:
            if px.min() < 0 or px.max() > 255:
                raise ValueError("gray tones must lie in [0, 255]")
            if not np.issubdtype(px.dtype, np.integer) and not (px == np.floor(px)).all():
                raise ValueError("gray tones must be integers")
            px = px.astype(np.uint8)
        object.__setattr__(self, "pixels", px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def constant_image(width: int, height: int, tone: int) -> GrayImage:
    return GrayImage(np.full((height, width), tone, dtype=np.uint8))


def white_noise(width: int, height: int, rng_seed: int) -> GrayImage:
    """Every pixel drawn independently and uniformly from [0, 255]."""
    if width < 1 or height < 1:
        raise ValueError("dimensions must be positive")
    tones = (u64_block(rng_seed, width * height) >> np.uint64(56)).astype(np.uint8)
    return GrayImage(tones.reshape(height, width))


DROPLET_RADIUS = 2
DROPLET_TONE = 255


def droplet_texture(width: int, height: int, density: float, rng_seed: int) -> GrayImage:
    """Sparse bright droplets (radius 2 px, tone 255) on a black background.

    `density` counts droplets per 1000 pixels; the realized number is
    round(density * width * height / 1000). Droplet centers come from the
    seeded stream, one (x, y) pair per droplet, and may overlap or clip at
    the frame edge.
    """
    if width < 1 or height < 1:
        raise ValueError("dimensions must be positive")
    if density <= 0:
        raise ValueError("density must be > 0")
    img = np.zeros((height, width), dtype=np.uint8)
    n = int(round(density * width * height / 1000.0))
    gen = SplitMix64(rng_seed)
    r = DROPLET_RADIUS
    offs = [
        (dx, dy)
        for dy in range(-r, r + 1)
        for dx in range(-r, r + 1)
        if dx * dx + dy * dy <= r * r
    ]
    for _ in range(n):
        x = gen.next_below(width)
        y = gen.next_below(height)
        for dx, dy in offs:
            px = x + dx
            py = y + dy
            if 0 <= px < width and 0 <= py < height:
                img[py, px] = DROPLET_TONE
    return GrayImage(img)
