"""Scaling contours and contour-deformed operators."""

import numpy as np
import pytest
import scipy.linalg as sla

from isores import (
    Discretization,
    build_contour,
    discretize,
    make_model,
    mode_operator,
    scaled_operator,
)
from isores.errors import ContourInfeasibleError, InvalidParameterError


def test_contour_core_and_tail():
    c = build_contour(0.4, 4.0, 8.0)
    t = np.linspace(0.0, 3.9, 50)
    assert np.allclose(c.point(t), t)
    t = np.linspace(8.0, 20.0, 50)
    assert np.allclose(np.angle(c.point(t)), 0.4, atol=1e-12)
    # symmetric in t -> -t: r(-t) = -conj-free mirror with same angle
    assert c.angle(-10.0) == pytest.approx(0.4)
    assert c.point(-10.0) == pytest.approx(-10.0 * np.exp(0.4j))


def test_contour_monotone_angle():
    for ramp in ("smoothstep", "exp_blend"):
        c = build_contour(0.35, 2.0, 6.0, ramp=ramp)
        t = np.linspace(0.0, 10.0, 4000)
        phi = c.angle(t)
        assert np.all(np.diff(phi) >= -1e-14)
        assert phi[0] == 0.0
        assert phi[-1] == pytest.approx(0.35)


def test_contour_velocity_consistency():
    c = build_contour(0.3, 3.0, 7.0, ramp="exp_blend")
    t = np.linspace(0.5, 9.5, 200)
    h = 1e-6
    fd = (c.point(t + h) - c.point(t - h)) / (2 * h)
    assert np.allclose(c.velocity(t), fd, atol=1e-6)
    assert np.allclose(c.conj_point(t), np.conj(c.point(t)))
    assert np.allclose(c.conj_velocity(t), np.conj(c.velocity(t)))


def test_contour_rejects_bad_parameters():
    with pytest.raises(InvalidParameterError):
        build_contour(-0.1, 1.0, 2.0)
    with pytest.raises(InvalidParameterError):
        build_contour(0.3, 2.0, 1.0)
    with pytest.raises(InvalidParameterError):
        build_contour(0.3, 1.0, 2.0, ramp="linear")
    # steep ramp with large theta violates the tangent-sector condition
    with pytest.raises(ContourInfeasibleError):
        build_contour(1.5, 1.0, 1.02)


def test_scaled_operator_theta_independence_of_core():
    # inside the undeformed core the scaled potential equals the real one
    m = make_model("catenoid")
    op = mode_operator(m, 1)
    c = build_contour(0.4, 8.0, 16.0, ramp="exp_blend")
    sop = scaled_operator(op, c)
    t = np.linspace(-7.5, 7.5, 40)
    assert np.allclose(sop.potential(t), op.potential(t))
    assert np.allclose(sop.metric_factor(t), 1.0)


def test_continuum_rotates_to_two_theta():
    # Ritz values of the scaled free catenoid accumulate on arg z = 2 theta
    m = make_model("catenoid")
    theta = 0.4
    c = build_contour(theta, 8.0, 16.0, ramp="exp_blend")
    d = Discretization("chebyshev_collocation", 240, -32.0, 32.0)
    A = discretize(scaled_operator(mode_operator(m, 0), c), d)
    w = sla.eigvals(A)
    # near the threshold the Ritz values sample the rotated ray; far from it
    # the box modes of the undeformed core take over
    sel = w[(np.abs(w) > 0.1) & (np.abs(w) < 3.0)]
    assert sel.size > 10
    assert np.all(np.abs(np.angle(sel) - 2 * theta) < 0.05)


def test_scaling_reveals_cylinder_resonance():
    # mode-2 cylinder resonance sigma = 2i maps to z = 2i(1 - 2i) = 4 + 2i,
    # inside the sector swept by 2 theta = 0.8
    m = make_model("hyperbolic_cylinder")
    c = build_contour(0.4, 6.0, 12.0, ramp="exp_blend")
    d = Discretization("chebyshev_collocation", 260, -24.0, 24.0)
    A = discretize(scaled_operator(mode_operator(m, 2), c), d)
    w = sla.eigvals(A)
    z = w[np.argmin(np.abs(w - (4 + 2j)))]
    assert abs(z - (4 + 2j)) < 1e-3
