import math

import pytest

import heatsym


def heat():
    return heatsym.HeatModel("K=1,Q=0")


def test_catalog():
    keys = [m.key for m in heatsym.list_models()]
    assert "K=1,Q=0" in keys
    assert heatsym.generators(heat()) == ["X1", "X2", "X3", "X4", "X5", "X6"]
    assert "EQ55A" in heatsym.schemes(heat())


def test_bad_model_raises():
    with pytest.raises(heatsym.HeatsymError):
        heatsym.HeatModel("K=cosh(u),Q=0")


def test_kernel_run_is_accurate():
    layer = heatsym.uniform_layer(0.0, -8.0, 8.0, 161, lambda x: heatsym.kernel_value(0.0, x))
    layers = heatsym.run("EQ55A", heat(), layer, heatsym.uniform_time(1.0, 400))
    assert len(layers) == 401
    last = layers[-1]
    err = max(abs(u - heatsym.kernel_value(last.t, x)) for x, u in zip(last.x, last.u))
    assert err < 1e-3
    assert heatsym.max_residual("EQ55A", heat(), layers) < 1e-10
    assert heatsym.invariance_defect("EQ55A", heat(), "X4", layers, 3, 50, 0.1) < 1e-8


def test_arbitrary_coefficients_need_callables():
    model = heatsym.representative_model("SH11")
    layer = heatsym.uniform_layer(0.0, -1.0, 1.0, 21, lambda x: 1.0 + 0.1 * math.cos(x))
    with pytest.raises(heatsym.HeatsymError):
        heatsym.run("SH11", model, layer, heatsym.uniform_time(0.01, 2))
    layers = heatsym.run("SH11", model, layer, heatsym.uniform_time(0.01, 2), K=lambda u: 1 + u * u, Q=lambda u: u)
    assert len(layers) == 3


def test_transform_roundtrip(tmp_path):
    model = heatsym.HeatModel("K=e^u,Q=d", delta=1.0)
    layer = heatsym.uniform_layer(0.0, -3.0, 3.0, 13, lambda x: 1.0 + 0.5 * math.exp(-x * x))
    layers = heatsym.run("SH22", model, layer, heatsym.log_time_mesh(1.0, 1.0, 1.0, 40))
    image = heatsym.transform("CH22", layers, delta=1.0)
    assert heatsym.max_residual("SH21", heatsym.HeatModel("K=e^u,Q=0"), image) < 1e-10
    path = tmp_path / "sol.csv"
    heatsym.write_csv(str(path), image)
    back = heatsym.transform("CH22", heatsym.read_csv(str(path)), delta=1.0, inverse=True)
    assert max(abs(a - b) for a, b in zip(back[-1].u, layers[-1].u)) < 1e-12
