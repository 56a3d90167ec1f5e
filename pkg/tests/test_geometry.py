import math

import numpy as np
import pytest

from varsurf import get_entry, jets
from varsurf.geometry import (
    DegenerateSurfaceError,
    FundamentalMagnitudes,
    SurfacePointJets,
    area_integrand,
    fundamental_magnitudes,
    gaussian_curvature_numerator,
    mean_curvature_numerator,
    metric_determinant,
    normal_numerator,
)
from varsurf.tpoly import TPoly

PARAM = {
    "hump": lambda u, v: np.array([u, v, 16 * u * v * (1 - u) * (1 - v)]),
    "bilinear": lambda u, v: np.array([u + v - 2 * u * v, v, u]),
    "hemiellipsoid": lambda u, v: np.array([np.sin(u) * np.cos(v), np.sin(u) * np.sin(v), np.cos(u)]),
}


def surface(name, u, v, order=2):
    e = get_entry(name)
    return SurfacePointJets(*e.components(jets.seed("u", u, order), jets.seed("v", v, order)))


def flat(u, v, order=2):
    uj, vj = jets.seed("u", u, order), jets.seed("v", v, order)
    return SurfacePointJets(uj, vj, uj * 0.0)


def values(m):
    return [np.asarray(getattr(m, k).value) for k in "EFGefg"]


def test_normal_numerator_examples():
    n = [c.value for c in normal_numerator(flat(0.3, 0.6))]
    assert n == [0.0, 0.0, 1.0]
    n = [c.value for c in normal_numerator(surface("hemiellipsoid", math.pi / 2, 0.0))]
    np.testing.assert_allclose(n, [1, 0, 0], atol=1e-15)
    u, v = 1.1, 0.4
    n = [c.value for c in normal_numerator(surface("hemiellipsoid", u, v))]
    np.testing.assert_allclose(n, math.sin(u) * PARAM["hemiellipsoid"](u, v), atol=1e-15)
    n = [c.value for c in normal_numerator(surface("bilinear", 0.5, 0.5))]
    np.testing.assert_allclose(n, [-1, 0, 0], atol=1e-15)


def test_bilinear_magnitudes():
    rng = np.random.default_rng(0)
    u, v = rng.uniform(0, 1, 30), rng.uniform(0, 1, 30)
    got = values(fundamental_magnitudes(surface("bilinear", u, v)))
    want = [1 + (1 - 2 * v) ** 2, (1 - 2 * u) * (1 - 2 * v), 1 + (1 - 2 * u) ** 2, 0 * u, 2 + 0 * u, 0 * u]
    for g, w in zip(got, want):
        np.testing.assert_allclose(g, w, atol=1e-14)
    m = fundamental_magnitudes(surface("bilinear", u, v))
    np.testing.assert_allclose(mean_curvature_numerator(m).value, -4 * (1 - 2 * u) * (1 - 2 * v), atol=1e-13)
    np.testing.assert_allclose(gaussian_curvature_numerator(m).value, -4.0, atol=1e-14)


def test_hemisphere_magnitudes():
    u = np.linspace(0.1, 3.0, 9)
    v = np.linspace(0.2, 2.9, 9)
    m = fundamental_magnitudes(surface("hemiellipsoid", u, v))
    s = np.sin(u)
    want = [1 + 0 * u, 0 * u, s**2, -s, 0 * u, -(s**3)]
    for g, w in zip(values(m), want):
        np.testing.assert_allclose(g, w, atol=1e-14)
    np.testing.assert_allclose(mean_curvature_numerator(m).value, -2 * s**3, atol=1e-14)
    np.testing.assert_allclose(gaussian_curvature_numerator(m).value, s**4, atol=1e-14)
    np.testing.assert_allclose(area_integrand(m), s, atol=1e-14)


def test_flat_and_hump_centre():
    m = fundamental_magnitudes(flat(np.array([0.2, 0.7]), np.array([0.4, 0.1])))
    for g in values(m)[3:]:
        np.testing.assert_array_equal(g, 0.0)
    np.testing.assert_array_equal(gaussian_curvature_numerator(m).value, 0.0)
    np.testing.assert_array_equal(area_integrand(m), 1.0)
    assert mean_curvature_numerator(fundamental_magnitudes(surface("hump", 0.5, 0.5))).value == pytest.approx(-16.0)
    assert area_integrand(fundamental_magnitudes(surface("bilinear", 0.5, 0.5))) == pytest.approx(1.0)


def test_output_orders():
    p = surface("hump", 0.3, 0.3, order=4)
    assert all(c.order == 3 for c in normal_numerator(p))
    assert fundamental_magnitudes(p).E.order == 2


def test_mixed_orders_rejected():
    with pytest.raises(ValueError):
        SurfacePointJets(jets.seed("u", 0, 2), jets.seed("v", 0, 2), jets.seed("u", 0, 3))
    with pytest.raises(ValueError):
        SurfacePointJets(jets.seed("u", 0, 2), jets.seed("v", 0, 2).as_tpoly(), jets.seed("u", 0, 2))


def test_tpoly_magnitudes_need_t_for_area():
    uj, vj = jets.seed("u", 0.4, 2), jets.seed("v", 0.6, 2)
    z = (uj * vj).as_tpoly() * TPoly([0.0, 1.0])
    p = SurfacePointJets(uj.as_tpoly(), vj.as_tpoly(), z)
    m = fundamental_magnitudes(p)
    with pytest.raises(ValueError):
        area_integrand(m)
    assert area_integrand(m, t=0.0) == pytest.approx(1.0)
    assert m.at_t(0.5).E.value == pytest.approx(1 + 0.25 * 0.6**2)


def test_negative_metric_rejected():
    one = jets.seed("u", 0.0, 0) * 0.0 + 1.0
    m = FundamentalMagnitudes(one, one * 2.0, one, one, one, one)
    with pytest.raises(DegenerateSurfaceError, match="node 0"):
        area_integrand(m)


def _fd_true_mean_curvature(f, u, v, h=1e-4):
    xu = (f(u + h, v) - f(u - h, v)) / (2 * h)
    xv = (f(u, v + h) - f(u, v - h)) / (2 * h)
    xuu = (f(u + h, v) - 2 * f(u, v) + f(u - h, v)) / h**2
    xvv = (f(u, v + h) - 2 * f(u, v) + f(u, v - h)) / h**2
    xuv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h * h)
    n = np.cross(xu, xv, axis=0)
    nn = np.linalg.norm(n, axis=0)
    n = n / nn
    E, F, G = (xu * xu).sum(0), (xu * xv).sum(0), (xv * xv).sum(0)
    e, ff, g = (n * xuu).sum(0), (n * xuv).sum(0), (n * xvv).sum(0)
    W = E * G - F * F
    return (e * G - 2 * ff * F + g * E) / (2 * W), W, nn


@pytest.mark.parametrize("name", sorted(PARAM))
def test_numerator_consistency(name):
    rng = np.random.default_rng(7)
    u0, u1, v0, v1 = get_entry(name).domain
    u = rng.uniform(u0 + 0.05, u1 - 0.05, 100)
    v = rng.uniform(v0 + 0.05, v1 - 0.05, 100)
    hnum = mean_curvature_numerator(fundamental_magnitudes(surface(name, u, v))).value
    htrue, W, nn = _fd_true_mean_curvature(PARAM[name], u, v)
    big = np.abs(htrue) > 1e-3
    assert np.all(np.sign(hnum[big]) == np.sign(htrue[big]))
    np.testing.assert_allclose(hnum[big], (2 * W * htrue * nn)[big], rtol=1e-5)


def test_metric_determinant_nonnegative_at_random_t():
    rng = np.random.default_rng(8)
    u, v = rng.uniform(0, 1, 50), rng.uniform(0, 1, 50)
    uj, vj = jets.seed("u", u, 2).as_tpoly(), jets.seed("v", v, 2).as_tpoly()
    bump = uj * vj * (1.0 - uj) * (1.0 - vj)
    p = SurfacePointJets(uj, vj, bump * TPoly([0.0, 3.0]))
    m = fundamental_magnitudes(p)
    for t in rng.uniform(-2, 2, 10):
        mt = m.at_t(t)
        assert np.all(mt.E.value >= -1e-10) and np.all(mt.G.value >= -1e-10)
        assert np.all(metric_determinant(mt).value >= -1e-10)
