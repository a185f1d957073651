"""Magnitude enhancement of a rendered streamline map.

out(x, y) = round( in(x, y) * (M(x, y)/M_max)^alpha * 255/H ), clamped to
[0, 255], where H is the brightest tone of the input map. Regions of high
field strength come out lighter; alpha tunes how aggressively weak-field
regions are darkened. alpha = 0 reduces to pure tone normalization (the
magnitude factor is defined as 1 even where M = 0), which maps the
brightest input tone to exactly 255.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFieldError, DegenerateImageError
from .fields import MagnitudeMap
from .textures import GrayImage

ALPHA_MAX = 8.0


@dataclass(frozen=True)
class EnhanceParams:
    alpha: float = 1.0

    def validate(self) -> None:
        if not (0.0 <= self.alpha <= ALPHA_MAX):
            raise ValueError(f"alpha must lie in [0, {ALPHA_MAX}]")


def enhance_magnitude(
    image: GrayImage, mags: MagnitudeMap, params: EnhanceParams
) -> GrayImage:
    """Reweight gray tones by relative field magnitude and renormalize."""
    params.validate()
    if (image.height, image.width) != (mags.height, mags.width):
        raise ValueError("image and magnitude map dimensions must match")
    if mags.m_max <= 0.0:
        raise DegenerateFieldError("magnitude map is zero everywhere")
    pixels = image.pixels.astype(np.float64)
    high = float(pixels.max())
    if high == 0.0:
        raise DegenerateImageError("input map is all black; tone scale undefined")
    ratio = mags.m / mags.m_max
    factor = np.power(ratio, params.alpha) if params.alpha != 0.0 else np.ones_like(ratio)
    out = np.floor(pixels * factor * 255.0 / high + 0.5)
    np.clip(out, 0.0, 255.0, out=out)
    return GrayImage(out.astype(np.uint8))
