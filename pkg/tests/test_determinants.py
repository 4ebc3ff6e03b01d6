"""Regularized determinants and zero counting."""

import numpy as np
import pytest
import scipy.linalg as sla

from isores import (
    Discretization,
    count_zeros,
    det_reg,
    geometric_family,
    ls_determinant,
    ls_kernel,
    make_model,
    symmetrize,
    truncate,
)
from isores.determinants import DetFunction
from isores.errors import SingularFreeResolventError, WindingError
from isores.grid import assemble_coupled


def test_det_reg_p1_is_plain_determinant():
    rng = np.random.default_rng(0)
    K = 0.3 * (rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))
    want = np.linalg.det(np.eye(6) + K)
    assert det_reg(K, p=1) == pytest.approx(want, rel=1e-10)


def test_det_reg_p2_formula():
    # det_2(I+K) = det(I+K) * exp(-tr K)
    rng = np.random.default_rng(1)
    K = 0.2 * (rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
    want = np.linalg.det(np.eye(5) + K) * np.exp(-np.trace(K))
    assert det_reg(K, p=2) == pytest.approx(want, rel=1e-10)


def test_det_reg_nilpotent_is_one():
    K = np.diag(np.arange(1.0, 5.0), 1)  # strictly upper triangular
    for p in (1, 2, 3):
        assert det_reg(K, p) == pytest.approx(1.0, abs=1e-13)
    with pytest.raises(ValueError):
        det_reg(K, 0)


def fixture():
    m = make_model("catenoid")
    v = truncate(geometric_family(0.5, 6), 6, 3.5)
    d = Discretization("finite_difference_2nd", 50, -15.0, 15.0)
    free = assemble_coupled(m, None, -3, 3, None, d)
    coupled = assemble_coupled(m, None, -3, 3, v, d)
    return m, v, d, free, coupled


def test_ls_determinant_one_signed_is_one():
    m, v, d, free, coupled = fixture()
    rng = np.random.default_rng(5)
    for _ in range(6):
        s = complex(rng.uniform(0.3, 3.0), rng.uniform(0.2, 1.5))
        for p in (1, 2, 3):
            val = ls_determinant(m, -3, 3, v, s, d, p=p, free=free,
                                 coupled=coupled)
            assert abs(val - 1.0) < 1e-12


def test_ls_determinant_symmetrized_moves():
    m, v, d, free, _ = fixture()
    sv = symmetrize(v)
    coupled = assemble_coupled(m, None, -3, 3, sv, d)
    val = ls_determinant(m, -3, 3, sv, 1.0 + 0.5j, d, free=free,
                         coupled=coupled)
    assert abs(val - 1.0) > 1e-6


def test_ls_kernel_refuses_near_free_eigenvalue():
    m, v, d, free, coupled = fixture()
    w = sla.eigvals(free.diagonal[0])
    s = complex(w[np.argmin(np.abs(w.imag))])  # catenoid z = sigma
    with pytest.raises(SingularFreeResolventError):
        ls_kernel(m, -3, 3, v, s, d, free=free, coupled=coupled)


def test_count_zeros_polynomial():
    f = lambda z: (z - 0.5) ** 2 * (z + 1.0)
    assert count_zeros(f, 0.0, 2.0) == 3
    assert count_zeros(f, 0.5, 0.3) == 2
    assert count_zeros(f, 5.0, 1.0) == 0
    # the circle through the zero at -1 hits a vanishing sample
    with pytest.raises(WindingError):
        count_zeros(f, 0.0, 1.0, q_nodes=256)
    with pytest.raises(ValueError):
        count_zeros(f, 0.0, 1.0, q_nodes=8)


def test_det_function_wrapper():
    m, v, d, free, coupled = fixture()
    fn = DetFunction(2, lambda s: ls_kernel(m, -3, 3, v, s, d, free=free,
                                            coupled=coupled))
    assert count_zeros(fn, 1.0 + 0.8j, 0.3, q_nodes=64) == 0
