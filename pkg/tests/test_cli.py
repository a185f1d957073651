"""Command-line behavior: exit codes, manifests, determinism, field files."""

import numpy as np
import pytest

from streamtex import read_pgm, read_png, save_field, uniform_field
from streamtex.cli import main


def run_cli(*args):
    return main(list(args))


def render_args(tmp_path, out_name="out.pgm", **overrides):
    args = {
        "--field": "vortex",
        "--algo": "lic",
        "--L": "13",
        "--size": "64x64",
        "--seed": "7",
        "--out": str(tmp_path / out_name),
    }
    args.update(overrides)
    flat = ["render"]
    for k, v in args.items():
        if v is None:
            flat.append(k)
        else:
            flat.extend([k, v])
    return flat


class TestRender:
    def test_repeat_runs_are_byte_identical(self, tmp_path):
        out = tmp_path / "a.pgm"
        assert run_cli("render", "--field", "vortex", "--algo", "lic", "--L", "13",
                       "--size", "64x64", "--seed", "7", "--out", str(out)) == 0
        first = out.read_bytes()
        assert run_cli("render", "--field", "vortex", "--algo", "lic", "--L", "13",
                       "--size", "64x64", "--seed", "7", "--out", str(out)) == 0
        assert out.read_bytes() == first

    def test_manifest_lists_every_knob(self, tmp_path):
        out = tmp_path / "a.pgm"
        assert run_cli(*render_args(tmp_path, out_name="a.pgm")) == 0
        manifest = dict(
            line.split("=", 1)
            for line in (tmp_path / "a.pgm.manifest").read_text().splitlines()
        )
        for key in ("field", "format", "algo", "width", "height", "L", "alpha",
                    "seed", "seed_fraction", "ramp_rate", "step", "eps", "tiles",
                    "droplet_density", "out", "out_format"):
            assert key in manifest, key
        assert manifest["alpha"] == "none"
        assert manifest["width"] == "64"
        assert manifest["out_format"] == "pgm"

    def test_png_and_pgm_outputs_are_pixel_identical(self, tmp_path):
        a = tmp_path / "a.pgm"
        b = tmp_path / "b.png"
        base = render_args(tmp_path, out_name="a.pgm")
        assert run_cli(*base) == 0
        assert run_cli(*render_args(tmp_path, out_name="b.png")) == 0
        assert np.array_equal(read_pgm(a).pixels, read_png(b).pixels)

    def test_all_algorithms_run(self, tmp_path):
        for algo in ("lic", "olic", "tosl"):
            out = f"{algo}.pgm"
            assert run_cli(*render_args(tmp_path, out_name=out, **{"--algo": algo})) == 0
            img = read_pgm(tmp_path / out)
            assert (img.width, img.height) == (64, 64)

    def test_streak_length_comparison_pair(self, tmp_path):
        # Same field and seed at two streamline lengths gives distinct maps.
        common = {"--field": "vortex-cells", "--algo": "tosl", "--size": "96x96",
                  "--wavelength": "24"}
        assert run_cli(*render_args(tmp_path, out_name="l31.pgm",
                                    **common, **{"--L": "31"})) == 0
        assert run_cli(*render_args(tmp_path, out_name="l101.pgm",
                                    **common, **{"--L": "101"})) == 0
        a = read_pgm(tmp_path / "l31.pgm").pixels
        b = read_pgm(tmp_path / "l101.pgm").pixels
        assert not np.array_equal(a, b)

    def test_enhanced_render_with_alpha(self, tmp_path):
        args = render_args(tmp_path, out_name="e.pgm",
                           **{"--field": "two-vortices", "--algo": "tosl",
                              "--L": "31", "--alpha": "1.0"})
        assert run_cli(*args) == 0
        manifest = (tmp_path / "e.pgm.manifest").read_text()
        assert "alpha=1.0" in manifest

    def test_bare_alpha_flag_defaults_to_one(self, tmp_path):
        args = render_args(tmp_path, out_name="e2.pgm", **{"--alpha": None})
        assert run_cli(*args) == 0
        assert "alpha=1.0" in (tmp_path / "e2.pgm.manifest").read_text()

    def test_file_field_round_trip(self, tmp_path):
        fld = uniform_field(24, 16, 0.0, 1.0)
        path = tmp_path / "f.txt"
        save_field(fld, path)
        args = ["render", "--field", f"file:{path}", "--algo", "lic", "--L", "13",
                "--seed", "3", "--out", str(tmp_path / "ff.pgm")]
        assert run_cli(*args) == 0
        img = read_pgm(tmp_path / "ff.pgm")
        assert (img.width, img.height) == (24, 16)

    def test_figure_output(self, tmp_path):
        pytest.importorskip("matplotlib")
        args = render_args(tmp_path, out_name="fig.pgm",
                           **{"--figure": str(tmp_path / "fig.png")})
        assert run_cli(*args) == 0
        assert (tmp_path / "fig.png").stat().st_size > 0


class TestExitCodes:
    def test_even_length_exits_2(self, tmp_path, capsys):
        assert run_cli(*render_args(tmp_path, **{"--L": "12"})) == 2
        assert "--L" in capsys.readouterr().err

    def test_negative_alpha_exits_2(self, tmp_path, capsys):
        assert run_cli(*render_args(tmp_path, **{"--alpha": "-1"})) == 2
        assert "--alpha" in capsys.readouterr().err

    def test_fraction_out_of_range_exits_2(self, tmp_path, capsys):
        assert run_cli(*render_args(tmp_path, **{"--seed-fraction": "1.5"})) == 2
        assert "--seed-fraction" in capsys.readouterr().err

    def test_zero_field_file_exits_3(self, tmp_path):
        path = tmp_path / "zero.txt"
        path.write_text("2 2\n" + "0 0\n" * 4)
        args = ["render", "--field", f"file:{path}", "--algo", "tosl", "--L", "5",
                "--out", str(tmp_path / "z.pgm")]
        assert run_cli(*args) == 3

    def test_missing_field_file_exits_4(self, tmp_path):
        args = ["render", "--field", "file:/nonexistent/f.txt", "--algo", "lic",
                "--L", "13", "--out", str(tmp_path / "m.pgm")]
        assert run_cli(*args) == 4

    def test_malformed_field_file_exits_2(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2 2\n1 0\n0 1 9\n0 0\n0 0\n")
        args = ["render", "--field", f"file:{path}", "--algo", "lic",
                "--L", "13", "--out", str(tmp_path / "m.pgm")]
        assert run_cli(*args) == 2

    def test_unwritable_output_exits_4(self, tmp_path):
        args = render_args(tmp_path)
        args[args.index("--out") + 1] = "/nonexistent-dir/deep/a.pgm"
        assert run_cli(*args) == 4


class TestFieldgen:
    def test_emits_loadable_text_grid(self, tmp_path):
        out = tmp_path / "f.txt"
        assert run_cli("fieldgen", "--field", "vortex", "--size", "32x32",
                       "--out", str(out)) == 0
        from streamtex import load_field

        fld = load_field(out)
        assert (fld.width, fld.height) == (32, 32)

    def test_vortex_cells_with_envelope(self, tmp_path):
        out = tmp_path / "c.txt"
        assert run_cli("fieldgen", "--field", "vortex-cells", "--size", "48x48",
                       "--wavelength", "12", "--amplitude-gradient",
                       "--out", str(out)) == 0
        from streamtex import load_field, magnitude_map

        m = magnitude_map(load_field(out))
        assert m.m_max > 0
