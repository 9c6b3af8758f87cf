from __future__ import annotations

import json

import numpy as np

from modgrid.cli import main
from modgrid.export import save_png

from conftest import make_gradient_image


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_template_subcommand(tmp_path, capsys):
    out = tmp_path / "t.mcfg"
    code, stdout, _ = run(["template", "--rows", "2", "--cols", "3", "-o", str(out)], capsys)
    assert code == 0
    assert out.read_text() == "000\n000\n"
    assert "rows=2" in stdout and "cols=3" in stdout


def test_template_bad_dims_is_usage_error(tmp_path, capsys):
    code, _, stderr = run(["template", "--rows", "0", "--cols", "3", "-o", str(tmp_path / "t")], capsys)
    assert code == 1
    assert "usage error" in stderr


def test_assisted_outputs_and_used_config(tmp_path, capsys):
    cfg = tmp_path / "c.mcfg"
    cfg.write_text("1*\n2", encoding="utf-8")
    out = tmp_path / "logo"
    code, stdout, _ = run(
        ["assisted", "--config", str(cfg), "--width", "100", "--height", "80",
         "--seed", "11", "-o", str(out)],
        capsys,
    )
    assert code == 0
    assert (tmp_path / "logo.svg").exists()
    assert (tmp_path / "logo.png").exists()
    assert (tmp_path / "logo.used.mcfg").read_text() == "1*\n20\n"
    assert "seed=11" in stdout  # reproducible from the log line


def test_assisted_orientation_from_config_dir(tmp_path, capsys):
    (tmp_path / "horizontal.mcfg").write_text("111\n", encoding="utf-8")
    (tmp_path / "vertical.mcfg").write_text("1\n1\n1\n", encoding="utf-8")
    out = tmp_path / "h"
    code, stdout, _ = run(
        ["assisted", "--config-dir", str(tmp_path), "--width", "200", "--height", "100",
         "--seed", "1", "-o", str(out)],
        capsys,
    )
    assert code == 0
    assert (tmp_path / "h.used.mcfg").read_text() == "111\n"
    assert "horizontal" in stdout

    code, stdout, _ = run(
        ["assisted", "--config-dir", str(tmp_path), "--width", "100", "--height", "100",
         "--seed", "1", "-o", str(tmp_path / "v")],
        capsys,
    )
    assert code == 0  # square canvas uses the vertical configuration
    assert (tmp_path / "v.used.mcfg").read_text() == "1\n1\n1\n"


def test_assisted_needs_config_or_dir(tmp_path, capsys):
    code, _, stderr = run(
        ["assisted", "--width", "10", "--height", "10", "-o", str(tmp_path / "x")], capsys
    )
    assert code == 1
    assert "config" in stderr


def test_missing_config_file_is_input_error(tmp_path, capsys):
    code, _, stderr = run(
        ["assisted", "--config", str(tmp_path / "nope.mcfg"), "--width", "10",
         "--height", "10", "-o", str(tmp_path / "x")],
        capsys,
    )
    assert code == 2
    assert "input error" in stderr


def test_auto_rows_zero_usage_error(tmp_path, capsys):
    code, _, stderr = run(
        ["auto", "--image", "whatever.png", "--rows", "0", "-o", str(tmp_path / "x")], capsys
    )
    assert code == 1
    assert "rows" in stderr


def test_auto_missing_image_input_error(tmp_path, capsys):
    code, _, stderr = run(
        ["auto", "--image", str(tmp_path / "missing.png"), "--rows", "4",
         "-o", str(tmp_path / "x")],
        capsys,
    )
    assert code == 2


def test_auto_generates_reproducibly(tmp_path, capsys):
    img = tmp_path / "in.png"
    save_png(make_gradient_image(64, 32), img)
    argv = ["auto", "--image", str(img), "--rows", "4", "--tau", "0.1",
            "--seed", "77", "-o", str(tmp_path / "a")]
    code, stdout, _ = run(argv, capsys)
    assert code == 0
    assert "seed=77" in stdout and "rows=4" in stdout and "tau=0.1" in stdout
    first_svg = (tmp_path / "a.svg").read_bytes()
    first_png = (tmp_path / "a.png").read_bytes()

    argv[-1] = str(tmp_path / "b")
    code, _, _ = run(argv, capsys)
    assert code == 0
    assert (tmp_path / "b.svg").read_bytes() == first_svg
    assert (tmp_path / "b.png").read_bytes() == first_png


def test_auto_echoes_defaults(tmp_path, capsys):
    img = tmp_path / "in.png"
    save_png(make_gradient_image(32, 16), img)
    code, stdout, _ = run(
        ["auto", "--image", str(img), "--rows", "2", "--seed", "1",
         "-o", str(tmp_path / "o")],
        capsys,
    )
    assert code == 0
    for key in ("norm_min=0.0", "norm_max=1.0", "place_max=0.98", "tau=0.05",
                "skip_dark=False", "s=3", "px_per_unit=1.0"):
        assert key in stdout


def test_sequence_outputs_numbered(tmp_path, capsys):
    frames = tmp_path / "frames"
    frames.mkdir()
    img = make_gradient_image(32, 16)
    for i in range(3):
        save_png(img, frames / f"f{i}.png")
    out_dir = tmp_path / "out"
    code, stdout, _ = run(
        ["sequence", "--frames", str(frames), "--rows", "2", "--seed", "3",
         "-o", str(out_dir)],
        capsys,
    )
    assert code == 0
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == [
        "frame_0000.png", "frame_0000.svg",
        "frame_0001.png", "frame_0001.svg",
        "frame_0002.png", "frame_0002.svg",
    ]
    assert "generated=3" in stdout


def test_sequence_reports_bad_frames(tmp_path, capsys):
    frames = tmp_path / "frames"
    frames.mkdir()
    save_png(make_gradient_image(32, 16), frames / "a.png")
    (frames / "b.png").write_bytes(b"junk")
    out_dir = tmp_path / "out"
    code, _, stderr = run(
        ["sequence", "--frames", str(frames), "--rows", "2", "--seed", "3",
         "-o", str(out_dir)],
        capsys,
    )
    assert code == 0
    assert "b.png" in stderr
    assert (out_dir / "frame_0000.svg").exists()
    assert not (out_dir / "frame_0001.svg").exists()


def test_sequence_empty_directory_input_error(tmp_path, capsys):
    frames = tmp_path / "frames"
    frames.mkdir()
    code, _, stderr = run(
        ["sequence", "--frames", str(frames), "--rows", "2", "-o", str(tmp_path / "o")],
        capsys,
    )
    assert code == 2


def test_profile_subcommand_writes_cache(tmp_path, capsys):
    (tmp_path / "m.svg").write_text('<svg viewBox="0 0 4 4"><rect width="4" height="4"/></svg>')
    code, stdout, _ = run(["profile", "--palette", str(tmp_path), "--s", "2"], capsys)
    assert code == 0
    cache = json.loads((tmp_path / "profiles.json").read_text())
    assert len(cache["entries"]) == 1
    (key,) = cache["entries"]
    assert key == "m.svg::s=2::res=96"
    assert cache["entries"][key]["values"] == [0.0, 0.0, 0.0, 0.0]


def test_palette_dir_flag_and_env(tmp_path, capsys, monkeypatch):
    pal_dir = tmp_path / "pal"
    pal_dir.mkdir()
    (pal_dir / "a.svg").write_text('<svg viewBox="0 0 4 4"><rect width="4" height="4"/></svg>')
    cfg = tmp_path / "c.mcfg"
    cfg.write_text("1\n", encoding="utf-8")

    monkeypatch.setenv("MODGRID_PALETTE", str(pal_dir))
    code, stdout, _ = run(
        ["assisted", "--config", str(cfg), "--width", "10", "--height", "10",
         "--seed", "0", "-o", str(tmp_path / "e")],
        capsys,
    )
    assert code == 0
    assert str(pal_dir) in stdout

    buf = np.asarray(__import__("PIL.Image", fromlist=["Image"]).open(tmp_path / "e.png"))
    assert (buf == 0).all()  # single all-black module fills the canvas


def test_bad_color_flag_usage_error(tmp_path, capsys):
    cfg = tmp_path / "c.mcfg"
    cfg.write_text("1\n", encoding="utf-8")
    code, _, stderr = run(
        ["assisted", "--config", str(cfg), "--width", "10", "--height", "10",
         "--fg", "red", "-o", str(tmp_path / "x")],
        capsys,
    )
    assert code == 1


def test_unknown_subcommand_usage_error(capsys):
    code, _, stderr = run(["frobnicate"], capsys)
    assert code == 1


def test_profile_order_two_is_one_flag_away(tmp_path, capsys):
    img = tmp_path / "in.png"
    save_png(make_gradient_image(32, 16), img)
    code, stdout, _ = run(
        ["auto", "--image", str(img), "--rows", "2", "--s", "2", "--seed", "1",
         "-o", str(tmp_path / "s2")],
        capsys,
    )
    assert code == 0
    assert "s=2" in stdout
    assert (tmp_path / "s2.svg").exists()
