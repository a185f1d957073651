"""Thick oriented streamline rendering.

Each streamline is painted, not convolved: the upstream end gets a
pseudo-random start tone and the tone then climbs along the flow at
ramp_rate * m/m_max tones per cell, so the dark-to-light direction of a
streak encodes the flow sense and the climb rate encodes the local field
strength. Seeds are processed in Sobol order first (a low-discrepancy
subset covering ~seed_fraction of the grid, which decorrelates the start
tones of neighboring streaks), then every remaining cell in row-major
order. Painting is first-writer-wins: later streamlines trace through
painted pixels, advancing their ramp, but do not repaint them. Every
pixel ends up painted exactly once; cells the flow never reaches seed
their own single-cell streamline and keep a fresh start tone.

Painting order is inherently sequential; only the tracing of upcoming
seeds is batched, which leaves the result identical to a fully
sequential execution.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFieldError
from .fields import VectorField2D, magnitude_map
from .rng import SplitMix64
from .sobol import seed_cells
from .textures import GrayImage
from .tracing import TraceParams, trace_batch

_CHUNK = 4096

WRAP_MODULO = "modulo-256"
WRAP_CLAMP = "clamp"


@dataclass(frozen=True)
class ToslConfig:
    """Streamline length, Sobol seed fraction, tone ramp rate, wrap policy.

    ramp_rate k is the tone increment per cell at unit (relative)
    magnitude; None selects 255/L, one full dark-to-light ramp per
    streamline. wrap "modulo-256" lets long streaks cycle through the
    tone range repeatedly (the default); "clamp" saturates at 255 and is
    mostly useful for analysis.
    """

    L: int
    seed_fraction: float = 0.30
    ramp_rate: float | None = None
    tone_rng_seed: int = 0
    wrap: str = WRAP_MODULO

    def validate(self) -> None:
        if not isinstance(self.L, int) or self.L < 1 or self.L % 2 == 0:
            raise ValueError("L must be a positive odd integer")
        if not (0.0 < self.seed_fraction <= 1.0):
            raise ValueError("seed_fraction must lie in (0, 1]")
        if self.ramp_rate is not None and not (self.ramp_rate > 0.0):
            raise ValueError("ramp_rate must be > 0")
        if self.wrap not in (WRAP_MODULO, WRAP_CLAMP):
            raise ValueError(f"unknown wrap policy {self.wrap!r}")

    def effective_ramp_rate(self) -> float:
        return self.ramp_rate if self.ramp_rate is not None else 255.0 / self.L


@dataclass
class ToslResult:
    """Rendered image plus per-pixel painter provenance for diagnostics.

    paint_ids[y, x] is the ordinal of the streamline that painted the
    pixel; streak_seeds, start_tones and seed_was_sobol are indexed by
    that ordinal.
    """

    image: GrayImage
    paint_ids: np.ndarray
    streak_seeds: np.ndarray
    start_tones: np.ndarray
    seed_was_sobol: np.ndarray


def _seed_order(width: int, height: int, fraction: float) -> tuple[np.ndarray, int]:
    sobol_cells = seed_cells(width, height, fraction)
    in_sobol = np.zeros(width * height, dtype=bool)
    in_sobol[sobol_cells[:, 1].astype(np.int64) * width + sobol_cells[:, 0]] = True
    rest_flat = np.nonzero(~in_sobol)[0]
    rest = np.empty((len(rest_flat), 2), dtype=np.int32)
    rest[:, 0] = rest_flat % width
    rest[:, 1] = rest_flat // width
    return np.concatenate([sobol_cells, rest], axis=0), len(sobol_cells)


def tosl(
    field: VectorField2D,
    config: ToslConfig,
    params: TraceParams | None = None,
    details: bool = False,
) -> GrayImage | ToslResult:
    """Render the field as a dense map of tone-ramped oriented streamlines."""
    config.validate()
    if params is None:
        params = TraceParams(L=config.L)
    params.validate()
    if params.L != config.L:
        raise ValueError("params.L must equal config.L")
    mags = magnitude_map(field)
    if mags.m_max == 0.0:
        raise DegenerateFieldError(
            "field magnitude is zero everywhere; no streamlines exist"
        )
    eps = params.resolve_eps(mags.m_max)
    w = field.width
    h = field.height
    m_norm = (mags.m / mags.m_max).ravel()
    rate = config.effective_ramp_rate()
    clamp = config.wrap == WRAP_CLAMP

    seeds, n_sobol = _seed_order(w, h, config.seed_fraction)
    canvas = np.zeros(w * h, dtype=np.uint8)
    painted = np.zeros(w * h, dtype=bool)
    paint_ids = np.full(w * h, -1, dtype=np.int32)
    tone_gen = SplitMix64(config.tone_rng_seed)
    streak_seeds: list[tuple[int, int]] = []
    start_tones: list[int] = []
    was_sobol: list[bool] = []

    for a in range(0, len(seeds), _CHUNK):
        chunk = seeds[a : a + _CHUNK]
        todo_mask = ~painted[chunk[:, 1].astype(np.int64) * w + chunk[:, 0]]
        todo = chunk[todo_mask]
        if len(todo) == 0:
            continue
        sobol_flags = (np.nonzero(todo_mask)[0] + a) < n_sobol
        batch = trace_batch(field, todo, params, eps=eps)
        for j in range(len(todo)):
            sx, sy = int(todo[j, 0]), int(todo[j, 1])
            seed_flat = sy * w + sx
            if painted[seed_flat]:
                continue
            g0 = float(tone_gen.next_tone())
            cells, offsets = batch.streamline_arrays(j)
            flat = cells[:, 1].astype(np.int64) * w + cells[:, 0]
            if len(flat) == 1:
                tones = np.array([g0])
            else:
                incr = rate * m_norm[flat[1:]] * np.diff(offsets)
                tones = np.empty(len(flat))
                tones[0] = g0
                tones[1:] = g0 + np.cumsum(incr)
            tones = np.floor(tones + 0.5).astype(np.int64)
            if clamp:
                np.clip(tones, 0, 255, out=tones)
            else:
                tones &= 255
            # A tight spiral can revisit a cell within one streamline;
            # the first visit wins there too.
            _, first = np.unique(flat, return_index=True)
            targets = flat[first]
            unpainted = ~painted[targets]
            targets = targets[unpainted]
            canvas[targets] = tones[first][unpainted]
            painted[targets] = True
            paint_ids[targets] = len(streak_seeds)
            streak_seeds.append((sx, sy))
            start_tones.append(int(g0))
            was_sobol.append(bool(sobol_flags[j]))

    image = GrayImage(canvas.reshape(h, w))
    if not details:
        return image
    return ToslResult(
        image=image,
        paint_ids=paint_ids.reshape(h, w),
        streak_seeds=np.array(streak_seeds, dtype=np.int32),
        start_tones=np.array(start_tones, dtype=np.int16),
        seed_was_sobol=np.array(was_sobol, dtype=bool),
    )
