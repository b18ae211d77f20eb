import math

import numpy as np
import pytest

import dtuna


def test_dichotomy_peak():
    v = np.linspace(0.0, 1.0, 100001).reshape(1, -1)
    f = dtuna.dichotomy(v, 0.5)
    assert f.shape == v.shape
    assert v[0, int(np.argmax(f))] == pytest.approx(0.25, abs=1e-5)


def test_psnr_closed_form():
    a = np.full((8, 8, 3), 0.2)
    b = np.full((8, 8, 3), 0.7)
    assert dtuna.psnr(a, b) == pytest.approx(20 * math.log10(2), abs=1e-9)


def test_identity_params_round_trip():
    scene = dtuna.synthetic_scene(48, 32, 3)
    assert scene.dtype == np.uint8 and scene.shape == (32, 48, 3)
    lo, hi = float(scene.min()), float(scene.max())
    scene = np.round((scene - lo) * 255.0 / (hi - lo)).astype(np.uint8)
    out, flags = dtuna.tuna_enhance(scene, dtuna.TunaParams(1, 0, 0, 0, 1, 0.5, 1))
    assert np.array_equal(out, scene)
    assert not any(flags.values())


def test_sbx_identity():
    assert dtuna.sbx_crossover(0.3, 0.9, 0.5) == (0.3, 0.9)


def test_optimize_improves_dark_image():
    ref = dtuna.synthetic_scene(64, 48, 2)
    low = dtuna.synth_darken(ref, 3.0)
    cfg = dtuna.GAConfig()
    cfg.population_size = 14
    cfg.generations = 5
    cfg.runs = 1
    res = dtuna.optimize_image(low, ref, "tuna", cfg)
    baseline = dtuna.psnr(dtuna.normalize_u8(low), dtuna.normalize_u8(ref))
    assert res.psnr > baseline


def test_invalid_argument_maps_to_exception():
    with pytest.raises(dtuna.InvalidArgument):
        dtuna.gamma_correct(np.zeros((2, 2, 3)), -1.0)


def test_benchmark_csv(tmp_path):
    for sub in ("low", "high"):
        (tmp_path / sub).mkdir()
    ref = dtuna.synthetic_scene(32, 24, 4)
    dtuna.write_png(tmp_path / "high" / "x.png", ref)
    dtuna.write_png(tmp_path / "low" / "x.png", dtuna.synth_darken(ref, 2.0))
    csv, failures = dtuna.run_benchmark(tmp_path, "dichotomy", params=[0.4], record_timing=False)
    assert failures == 0
    lines = csv.strip().split("\n")
    assert lines[0].startswith("image,method,psnr")
    assert lines[1].startswith("x.png,dichotomy,")
