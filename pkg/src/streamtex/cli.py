"""Command-line front end: field selection -> texture -> render -> enhance -> file.

Exit codes: 0 success, 2 invalid parameter, 3 degenerate field/image,
4 I/O failure. Every run writes a `<out>.manifest` file of key=value lines
holding the effective value of every parameter, defaults included, so a
rendering is reproducible from its manifest alone.

The single --seed flag controls all randomness: the noise, droplet, and
tone streams use sub-seeds derived from it with fixed labels.
"""

import argparse
import sys
from dataclasses import dataclass

from .enhance import EnhanceParams, enhance_magnitude
from .errors import (
    DegenerateFieldError,
    DegenerateImageError,
    FieldParseError,
    FieldValidationError,
    StreamtexError,
)
from .fields import (
    VectorField2D,
    load_field,
    magnitude_map,
    make_two_vortices,
    make_vortex,
    make_vortex_cells,
    save_field,
)
from .imageio import write_pgm, write_png
from .lic import Kernel, lic, olic
from .rng import derive_seed
from .textures import droplet_texture, white_noise
from .tosl import ToslConfig, tosl
from .tracing import TraceParams

BUILTIN_FIELDS = ("vortex", "two-vortices", "vortex-cells")
DEFAULT_DROPLET_DENSITY = 1.0


@dataclass
class RenderJob:
    """Validated description of one rendering run."""

    field_source: str
    algo: str
    out: str
    width: int = 512
    height: int = 512
    file_format: str = "text-grid"
    L: int = 31
    alpha: float | None = None
    seed: int = 1
    seed_fraction: float = 0.30
    ramp_rate: float | None = None
    step: float = 0.5
    eps: float | None = None
    out_format: str | None = None
    tiles: int = 1
    droplet_density: float = DEFAULT_DROPLET_DENSITY
    wavelength: float | None = None
    falloff: float | None = None
    amplitude_gradient: bool = False
    figure: str | None = None

    def validate(self) -> None:
        if self.algo not in ("lic", "olic", "tosl"):
            raise ValueError(f"--algo must be lic, olic or tosl, not {self.algo!r}")
        if self.L < 1 or self.L % 2 == 0:
            raise ValueError(f"--L must be a positive odd integer, not {self.L}")
        if self.alpha is not None and not (0.0 <= self.alpha <= 8.0):
            raise ValueError(f"--alpha must lie in [0, 8], not {self.alpha}")
        if not (0.0 < self.seed_fraction <= 1.0):
            raise ValueError(f"--seed-fraction must lie in (0, 1], not {self.seed_fraction}")
        if self.ramp_rate is not None and not (self.ramp_rate > 0.0):
            raise ValueError(f"--ramp-rate must be > 0, not {self.ramp_rate}")
        if not (0.0 < self.step <= 1.0):
            raise ValueError(f"--step must lie in (0, 1], not {self.step}")
        if self.eps is not None and not (self.eps > 0.0):
            raise ValueError(f"--eps must be > 0, not {self.eps}")
        if self.width < 2 or self.height < 2:
            raise ValueError(f"--size must be at least 2x2, not {self.width}x{self.height}")
        if self.tiles < 1:
            raise ValueError(f"--tiles must be >= 1, not {self.tiles}")
        if self.out_format not in (None, "pgm", "png"):
            raise ValueError(f"--out-format must be pgm or png, not {self.out_format!r}")
        if self.file_format not in ("text-grid", "csv"):
            raise ValueError(f"--format must be text-grid or csv, not {self.file_format!r}")
        if not (self.field_source in BUILTIN_FIELDS or self.field_source.startswith("file:")):
            raise ValueError(
                f"--field must be one of {', '.join(BUILTIN_FIELDS)} or file:PATH,"
                f" not {self.field_source!r}"
            )

    def resolve_out_format(self) -> str:
        if self.out_format:
            return self.out_format
        return "png" if self.out.lower().endswith(".png") else "pgm"


def build_field(job: RenderJob) -> VectorField2D:
    src = job.field_source
    if src.startswith("file:"):
        return load_field(src[5:], format=job.file_format)
    if src == "vortex":
        return make_vortex(job.width, job.height)
    if src == "two-vortices":
        return make_two_vortices(job.width, job.height, falloff=job.falloff)
    if src == "vortex-cells":
        wavelength = job.wavelength if job.wavelength is not None else job.width / 4.0
        return make_vortex_cells(
            job.width, job.height, wavelength, amplitude_gradient=job.amplitude_gradient
        )
    raise ValueError(f"unknown field source {src!r}")


def run(job: RenderJob) -> None:
    """Execute a render job: build, render, optionally enhance, write files."""
    job.validate()
    fld = build_field(job)
    if job.field_source.startswith("file:"):
        job.width = fld.width
        job.height = fld.height
    params = TraceParams(L=job.L, step=job.step, eps=job.eps)
    if job.algo == "lic":
        source = white_noise(job.width, job.height, derive_seed(job.seed, "noise"))
        image = lic(fld, source, Kernel.box(job.L), params, tiles=job.tiles)
    elif job.algo == "olic":
        source = droplet_texture(
            job.width, job.height, job.droplet_density, derive_seed(job.seed, "droplets")
        )
        image = olic(fld, source, params, tiles=job.tiles)
    else:
        config = ToslConfig(
            L=job.L,
            seed_fraction=job.seed_fraction,
            ramp_rate=job.ramp_rate,
            tone_rng_seed=derive_seed(job.seed, "tones"),
        )
        image = tosl(fld, config, params)
    if job.alpha is not None:
        image = enhance_magnitude(image, magnitude_map(fld), EnhanceParams(job.alpha))
    out_format = job.resolve_out_format()
    if out_format == "png":
        write_png(image, job.out)
    else:
        write_pgm(image, job.out)
    write_manifest(job, params, fld)
    if job.figure:
        from .report import save_figure

        caption = (
            f"algo={job.algo} L={job.L} seed={job.seed}"
            + (f" alpha={job.alpha}" if job.alpha is not None else "")
        )
        save_figure(image, job.figure, title=job.field_source, caption=caption)


def manifest_entries(job: RenderJob, params: TraceParams, fld: VectorField2D) -> list[tuple[str, str]]:
    eps = params.resolve_eps(magnitude_map(fld).m_max)
    ramp = job.ramp_rate if job.ramp_rate is not None else 255.0 / job.L
    entries = [
        ("field", job.field_source),
        ("format", job.file_format),
        ("algo", job.algo),
        ("width", str(job.width)),
        ("height", str(job.height)),
        ("L", str(job.L)),
        ("alpha", "none" if job.alpha is None else repr(float(job.alpha))),
        ("seed", str(job.seed)),
        ("seed_fraction", repr(float(job.seed_fraction))),
        ("ramp_rate", repr(float(ramp))),
        ("step", repr(float(job.step))),
        ("eps", repr(float(eps))),
        ("tiles", str(job.tiles)),
        ("droplet_density", repr(float(job.droplet_density))),
        ("out", job.out),
        ("out_format", job.resolve_out_format()),
    ]
    return entries


def write_manifest(job: RenderJob, params: TraceParams, fld: VectorField2D) -> None:
    lines = [f"{k}={v}\n" for k, v in manifest_entries(job, params, fld)]
    with open(job.out + ".manifest", "w", encoding="utf-8", newline="\n") as f:
        f.writelines(lines)


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"size must look like 512x512, not {text!r}"
        ) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streamtex",
        description="Render dense grayscale streamline textures of 2-D vector fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    render = sub.add_parser("render", help="render a field to a grayscale image")
    render.add_argument(
        "--field",
        required=True,
        help=f"builtin field ({', '.join(BUILTIN_FIELDS)}) or file:PATH",
    )
    render.add_argument("--format", default="text-grid", choices=("text-grid", "csv"),
                        help="file field format (with --field file:PATH)")
    render.add_argument("--algo", required=True, choices=("lic", "olic", "tosl"))
    render.add_argument("--L", type=int, default=31, help="streamline length in cells (odd)")
    render.add_argument("--alpha", type=float, nargs="?", const=1.0, default=None,
                        help="magnitude-enhancement exponent; omit to skip enhancement")
    render.add_argument("--seed", type=int, default=1, help="master seed for all randomness")
    render.add_argument("--size", type=_parse_size, default=(512, 512), metavar="WxH")
    render.add_argument("--seed-fraction", type=float, default=0.30)
    render.add_argument("--ramp-rate", type=float, default=None,
                        help="tones per cell at unit magnitude (default 255/L)")
    render.add_argument("--step", type=float, default=0.5, help="integration step in cells")
    render.add_argument("--eps", type=float, default=None,
                        help="vanishing-field threshold (default 1e-6 * max magnitude)")
    render.add_argument("--out", required=True, help="output image path")
    render.add_argument("--out-format", choices=("pgm", "png"), default=None)
    render.add_argument("--tiles", type=int, default=1, help="parallel row tiles for lic/olic")
    render.add_argument("--droplet-density", type=float, default=DEFAULT_DROPLET_DENSITY,
                        help="droplets per 1000 pixels (olic input texture)")
    render.add_argument("--wavelength", type=float, default=None,
                        help="vortex-cells wavelength in cells (default width/4)")
    render.add_argument("--falloff", type=float, default=None,
                        help="two-vortices Gaussian falloff in cells (default width/4)")
    render.add_argument("--amplitude-gradient", action="store_true",
                        help="apply the slow amplitude envelope to vortex-cells")
    render.add_argument("--figure", default=None,
                        help="also save a matplotlib figure of the map to this path")

    fieldgen = sub.add_parser("fieldgen", help="emit a builtin field as a text-grid file")
    fieldgen.add_argument("--field", required=True, choices=BUILTIN_FIELDS)
    fieldgen.add_argument("--size", type=_parse_size, default=(512, 512), metavar="WxH")
    fieldgen.add_argument("--out", required=True)
    fieldgen.add_argument("--wavelength", type=float, default=None)
    fieldgen.add_argument("--falloff", type=float, default=None)
    fieldgen.add_argument("--amplitude-gradient", action="store_true")
    return parser


def cmd_render(args) -> int:
    job = RenderJob(
        field_source=args.field,
        algo=args.algo,
        out=args.out,
        width=args.size[0],
        height=args.size[1],
        file_format=args.format,
        L=args.L,
        alpha=args.alpha,
        seed=args.seed,
        seed_fraction=args.seed_fraction,
        ramp_rate=args.ramp_rate,
        step=args.step,
        eps=args.eps,
        out_format=args.out_format,
        tiles=args.tiles,
        droplet_density=args.droplet_density,
        wavelength=args.wavelength,
        falloff=args.falloff,
        amplitude_gradient=args.amplitude_gradient,
        figure=args.figure,
    )
    run(job)
    return 0


def cmd_fieldgen(args) -> int:
    width, height = args.size
    if args.field == "vortex":
        fld = make_vortex(width, height)
    elif args.field == "two-vortices":
        fld = make_two_vortices(width, height, falloff=args.falloff)
    else:
        wavelength = args.wavelength if args.wavelength is not None else width / 4.0
        fld = make_vortex_cells(width, height, wavelength,
                                amplitude_gradient=args.amplitude_gradient)
    save_field(fld, args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "render":
            return cmd_render(args)
        return cmd_fieldgen(args)
    except (ValueError, FieldParseError, FieldValidationError) as exc:
        print(f"streamtex: error: {exc}", file=sys.stderr)
        return 2
    except (DegenerateFieldError, DegenerateImageError) as exc:
        print(f"streamtex: degenerate input: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"streamtex: i/o error: {exc}", file=sys.stderr)
        return 4
    except StreamtexError as exc:
        print(f"streamtex: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
