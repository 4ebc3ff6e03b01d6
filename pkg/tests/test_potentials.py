"""Homogeneous shift-potential components and their algebra."""

import numpy as np
import pytest

from isores import (
    geometric_family,
    geometric_tail_bound,
    homogeneous_component,
    potential_sum,
    symmetrize,
    truncate,
    zero_potential,
)
from isores.errors import InvalidParameterError
from isores.potentials import _radial_cutoff, bump_profile


def test_weight_zero_rejected():
    with pytest.raises(InvalidParameterError):
        homogeneous_component(0, "bump", center=0.0, width=1.0, amplitude=1.0)


def test_bump_profile_support_and_peak():
    p = bump_profile(2.0, 1.0, 3.0)
    assert p(2.0) == pytest.approx(3.0)
    assert p(0.99) == 0.0
    assert p(3.01) == 0.0
    assert 0 < p(2.5) < 3.0


def test_geometric_component_values():
    # amplitude * rho^(m-1) / sqrt(r^2 + a^2)
    c = homogeneous_component(3, "geometric_catenoid", rho=0.5, a=2.0,
                              amplitude=4.0)
    assert c.profile(0.0) == pytest.approx(4.0 * 0.25 / 2.0)
    assert c.profile(2.0) == pytest.approx(4.0 * 0.25 / np.sqrt(8.0))
    assert c.sup_norm == pytest.approx(0.5)
    with pytest.raises(InvalidParameterError):
        homogeneous_component(-1, "geometric_catenoid", rho=0.5)
    with pytest.raises(InvalidParameterError):
        homogeneous_component(1, "geometric_catenoid", rho=1.5)


def test_geometric_family_weights_and_summability():
    v = geometric_family(0.5, 6, a=1.0, amplitude=2.0)
    assert v.weights == [1, 2, 3, 4, 5, 6]
    assert v.one_signed
    # sup norms form the geometric series 2 * rho^(m-1)
    assert v.summability == pytest.approx(2.0 * sum(0.5**k for k in range(6)))
    tail = geometric_tail_bound(0.5, 6, amplitude=2.0)
    assert tail == pytest.approx(2.0 * 0.5**6 / 0.5)


def test_potential_sum_merges_duplicate_weights():
    a = homogeneous_component(2, "bump", center=0.0, width=1.0, amplitude=1.0)
    b = homogeneous_component(2, "bump", center=0.5, width=1.0, amplitude=2.0)
    v = potential_sum([a, b])
    assert len(v.components) == 1
    comp = v.components[0]
    r = np.array([0.2])
    assert comp.profile(r)[0] == pytest.approx(
        float(a.profile(r)[0] + b.profile(r)[0])
    )
    assert comp.sup_norm == pytest.approx(3.0)


def test_one_signed_flag():
    pos = potential_sum([
        homogeneous_component(1, "bump", center=0.0, width=1.0, amplitude=1.0),
        homogeneous_component(4, "bump", center=0.0, width=1.0, amplitude=1.0),
    ])
    assert pos.one_signed
    assert not symmetrize(pos).one_signed
    assert zero_potential().one_signed


def test_symmetrize_adds_conjugate_mirror():
    v = geometric_family(0.4, 3)
    s = symmetrize(v)
    assert s.weights == [-3, -2, -1, 1, 2, 3]
    r = np.linspace(0.0, 4.0, 9)
    for m in (1, 2, 3):
        plus = next(c for c in s.components if c.weight == m)
        minus = next(c for c in s.components if c.weight == -m)
        assert np.allclose(minus.profile(r), np.conj(plus.profile(r)))
    # the symmetrized multiplication operator is real valued:
    # sum_m V_m(r) e^{i m th} + conj(V_m(r)) e^{-i m th} is real
    th = 0.7
    total = sum(c.profile(r) * np.exp(1j * c.weight * th) for c in s.components)
    assert np.max(np.abs(np.imag(total))) < 1e-14


def test_scaled_potential():
    v = geometric_family(0.5, 3).scaled(2.0)
    assert v.summability == pytest.approx(2.0 * geometric_family(0.5, 3).summability)
    assert v.scaled(0.0).components == ()


def test_radial_cutoff_plateau_and_support():
    chi = _radial_cutoff(3.0)
    r = np.linspace(0.0, 2.9, 20)
    assert np.allclose(chi(r), 1.0)
    assert np.allclose(chi(np.array([6.5, 8.0])), 0.0, atol=1e-300)
    mid = chi(np.linspace(3.2, 5.8, 40))
    assert np.all((mid > 0) & (mid < 1))
    assert np.all(np.diff(mid) < 0)


def test_radial_cutoff_smoothness():
    # all low-order finite differences stay bounded near the edges,
    # consistent with a C^infinity blend
    chi = _radial_cutoff(2.0)
    h = 1e-3
    for r0 in (2.0, 4.0):
        vals = chi(r0 + h * np.arange(-4, 5))
        d3 = np.diff(vals, 3) / h**3
        assert np.max(np.abs(d3)) < 1e3


def test_truncate_weights_and_support():
    v = symmetrize(geometric_family(0.5, 8))
    t = truncate(v, 3, 4.0)
    assert t.weights == [-3, -2, -1, 1, 2, 3]
    for comp in t.components:
        assert comp.support_radius == pytest.approx(8.0)
        assert abs(comp.profile(np.array([9.0]))[0]) == 0.0
        # untouched in the plateau
    full = next(c for c in v.components if c.weight == 2)
    cut = next(c for c in t.components if c.weight == 2)
    r = np.linspace(0.0, 3.9, 10)
    assert np.allclose(cut.profile(r), full.profile(r))
    with pytest.raises(InvalidParameterError):
        truncate(v, 0, 4.0)
    with pytest.raises(InvalidParameterError):
        truncate(v, 3, -1.0)
