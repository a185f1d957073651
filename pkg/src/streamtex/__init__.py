"""Dense grayscale streamline textures for 2-D vector fields.

Pipeline: build or load a vector field, generate an input texture, render
with `lic` (box-kernel convolution), `olic` (ramp-kernel convolution of
droplets), or `tosl` (tone-ramped oriented streamlines), then optionally
reweight tones by field magnitude with `enhance_magnitude`.
"""

from .enhance import EnhanceParams, enhance_magnitude
from .errors import (
    DegenerateFieldError,
    DegenerateImageError,
    FieldParseError,
    FieldValidationError,
    StreamtexError,
)
from .fields import (
    MagnitudeMap,
    Vec2,
    VectorField2D,
    load_field,
    magnitude_map,
    make_two_vortices,
    make_vortex,
    make_vortex_cells,
    sample_bilinear,
    save_field,
    uniform_field,
)
from .imageio import read_pgm, read_png, write_pgm, write_png
from .lic import Kernel, lic, olic
from .sobol import seed_cells, sobol_2d
from .textures import GrayImage, constant_image, droplet_texture, white_noise
from .tosl import ToslConfig, ToslResult, tosl
from .tracing import Streamline, TraceParams, trace

__version__ = "0.1.0"

__all__ = [
    "DegenerateFieldError",
    "DegenerateImageError",
    "EnhanceParams",
    "FieldParseError",
    "FieldValidationError",
    "GrayImage",
    "Kernel",
    "MagnitudeMap",
    "Streamline",
    "StreamtexError",
    "ToslConfig",
    "ToslResult",
    "TraceParams",
    "Vec2",
    "VectorField2D",
    "constant_image",
    "droplet_texture",
    "enhance_magnitude",
    "lic",
    "load_field",
    "magnitude_map",
    "make_two_vortices",
    "make_vortex",
    "make_vortex_cells",
    "olic",
    "read_pgm",
    "read_png",
    "sample_bilinear",
    "save_field",
    "seed_cells",
    "sobol_2d",
    "tosl",
    "trace",
    "uniform_field",
    "white_noise",
    "write_pgm",
    "write_png",
]
