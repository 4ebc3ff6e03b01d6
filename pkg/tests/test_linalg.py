"""Dense eigen, rank, Jordan and projector machinery."""

import numpy as np
import pytest
import scipy.linalg as sla

from isores import (
    eigen_all,
    jordan_structure,
    restrict_to_cluster,
    spectral_projector,
)
from isores.errors import AmbiguousClusterError, EigenvalueOnContourError
from isores.linalg import rank_numeric


def jordan_block(lam, k):
    return lam * np.eye(k) + np.diag(np.ones(k - 1), 1)


def test_eigen_all_matches_scipy():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
    w = np.sort_complex(eigen_all(A))
    assert np.allclose(w, np.sort_complex(sla.eigvals(A)))
    w2, v = eigen_all(A, vectors=True)
    assert np.allclose(A @ v, v @ np.diag(w2), atol=1e-10)


def test_rank_numeric():
    A = np.diag([1.0, 1e-3, 1e-12])
    assert rank_numeric(A) == 2
    assert rank_numeric(np.zeros((4, 4))) == 0
    with pytest.raises(ValueError):
        rank_numeric(A, tol=0.0)


def test_jordan_synthetic_blocks():
    cases = [
        (jordan_block(2.0, 3), 2.0, (3, 1, 3, (2, 1, 0, 0))),
        (np.diag([5.0, 5.0, 7.0]), 5.0, (2, 2, 1, (1, 1))),
        (sla.block_diag(jordan_block(1.0, 2), jordan_block(1.0, 2)),
         1.0, (4, 2, 2, (2, 0, 0))),
        (sla.block_diag(jordan_block(0.0, 3), np.array([[4.0]])),
         0.0, (3, 1, 3, (3, 2, 1, 1))),
    ]
    for A, lam, (alg, geo, order, ranks) in cases:
        rep = jordan_structure(A, lam)
        assert rep.algebraic_multiplicity == alg
        assert rep.geometric_multiplicity == geo
        assert rep.order == order
        assert rep.rank_sequence == ranks


def test_jordan_exact_rank_sequences_under_similarity():
    # similarity transforms must not change the detected structure
    rng = np.random.default_rng(7)
    A = sla.block_diag(jordan_block(1.5, 2), np.diag([1.5, -3.0]))
    S = rng.standard_normal((4, 4)) + 0.1 * np.eye(4)
    B = S @ A @ np.linalg.inv(S)
    rep = jordan_structure(B, 1.5)
    assert rep.algebraic_multiplicity == 3
    assert rep.geometric_multiplicity == 2
    assert rep.order == 2


def test_jordan_ambiguous_cluster_raises():
    # singular values straddling the threshold without a clean gap
    A = np.diag([1.0, 3e-8, 5e-9]) + 1.0 * np.eye(3)
    with pytest.raises(AmbiguousClusterError):
        jordan_structure(A, 1.0)


def test_spectral_projector_idempotent_and_rank():
    A = sla.block_diag(jordan_block(1.0, 2), np.diag([4.0, 6.0]))
    P = spectral_projector(A, 1.0, 0.5)
    assert np.max(np.abs(P @ P - P)) < 1e-10
    assert np.trace(P).real == pytest.approx(2.0, abs=1e-10)
    assert np.max(np.abs(A @ P - P @ A)) < 1e-10


def test_spectral_projector_refuses_contour_eigenvalue():
    A = np.diag([1.0, 1.5, 3.0])
    with pytest.raises(EigenvalueOnContourError):
        spectral_projector(A, 1.0, 0.5)


def test_restrict_to_cluster_preserves_jordan_data():
    A = sla.block_diag(jordan_block(2.0, 2), np.diag([-1.0, 5.0, 9.0]))
    rng = np.random.default_rng(3)
    S = rng.standard_normal((5, 5)) + 0.2 * np.eye(5)
    B = S @ A @ np.linalg.inv(S)
    R, k = restrict_to_cluster(B, 2.0, 0.4)
    assert k == 2
    rep = jordan_structure(R, 2.0)
    assert rep.algebraic_multiplicity == 2
    assert rep.geometric_multiplicity == 1
    assert rep.order == 2
    with pytest.raises(AmbiguousClusterError):
        restrict_to_cluster(B, 100.0, 0.1)
