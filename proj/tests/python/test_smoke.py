"""Smoke tests for the python bindings."""

import math
import os

import pytest

import expbrush as eb


def test_scalar_maps():
    assert eb.growth(0.0) == 0.0
    assert eb.growth_inv(1.0) == pytest.approx(math.log(2.0), abs=1e-15)
    assert eb.growth_inv_iter(4, 1.0) == pytest.approx(0.35279251707865, abs=1e-12)
    assert eb.inv_square_partial_sum(100) < math.pi**2 / 2


def test_tips_and_shift():
    assert eb.tip("0") == 0.0
    assert eb.tip("1,0", 32) == pytest.approx(math.log1p(2 * math.pi), abs=1e-12)
    assert eb.shift("3,1,4") == "1,4"
    assert eb.shift("1|2,3") == "2|3,2"


def test_cylinders():
    assert eb.cylinder_interval("0", 1) == ("0", "1")
    assert eb.cylinder_interval("0", 2) == ("1/2", "3/4")


def test_classify_states():
    assert eb.classify(1.0, "0", 6)["state"] == "CERTIFIED-ESCAPING"
    assert eb.classify(0.0, "0", 6)["state"] == "UNKNOWN"
    assert eb.classify(1.9, "1,1", 5)["state"] == "LEFT-DOMAIN"


def test_boxes_and_curve():
    addrs = ["0", "0,0,2", "0,-1", "-1", "-1,2,1", "0,1"]
    out = eb.build_boxes(addrs, kmax=3)
    assert out["valid"]
    assert len(out["levels"]) == 4
    assert out["levels"][1]["boxes"][0]["c"] == "1/2"

    svg = eb.curve_svg(addrs, kmax=3)
    assert svg.startswith("<?xml")
    assert "<svg" in svg


def test_render(tmp_path):
    png = tmp_path / "probe.png"
    eb.render_png(str(png), a=-1.0, width=16, height=16, max_steps=32)
    data = png.read_bytes()
    assert data[1:4] == b"PNG"


def test_errors():
    with pytest.raises(eb.BrushError):
        eb.growth_inv(-1.0)
    with pytest.raises(Exception):
        eb.find_fixed_point(0.5)
