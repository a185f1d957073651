"""Optional matplotlib figure output for rendered maps.

The figure path exists for quick visual inspection and reports; the
byte-exact artifacts remain the PGM/PNG writers in imageio. matplotlib is
imported lazily so the core library does not depend on it.
"""

from .errors import StreamtexError
from .textures import GrayImage


def save_figure(image: GrayImage, path, title: str = "", caption: str = "") -> None:
    """Render the gray map to a matplotlib figure file (format by extension)."""
    try:
        import matplotlib
    except ImportError as exc:
        raise StreamtexError(
            "matplotlib is required for figure output; install streamtex[figures]"
        ) from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    dpi = 100.0
    fig_w = max(3.2, image.width / dpi)
    fig_h = max(3.2, image.height / dpi) + (0.6 if title or caption else 0.0)
    fig, ax = plt.subplots(figsize=(fig_w, fig_h), dpi=dpi)
    ax.imshow(image.pixels, cmap="gray", vmin=0, vmax=255, interpolation="nearest")
    ax.set_xlabel("x (cells)")
    ax.set_ylabel("y (cells)")
    if title:
        ax.set_title(title)
    if caption:
        fig.text(0.5, 0.01, caption, ha="center", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
