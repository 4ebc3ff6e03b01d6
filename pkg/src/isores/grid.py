"""Discretization of (scaled) radial operators and mode-coupled assembly."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError, ModeRangeError
from .models import RadialOperator
from .scaling import ScaledRadialOperator

FINITE_DIFFERENCE_2ND = "finite_difference_2nd"
CHEBYSHEV_COLLOCATION = "chebyshev_collocation"


@dataclass(frozen=True)
class Discretization:
    """Truncated-domain grid with Dirichlet conditions at the box ends."""

    scheme: str
    n: int
    t_min: float
    t_max: float

    def __post_init__(self):
        if self.scheme not in (FINITE_DIFFERENCE_2ND, CHEBYSHEV_COLLOCATION):
            raise InvalidParameterError(f"unknown scheme {self.scheme!r}")
        if self.n < 16:
            raise InvalidParameterError("need at least 16 interior nodes")
        if not self.t_max > self.t_min:
            raise InvalidParameterError("empty truncation box")

    def nodes(self):
        """Interior nodes (Dirichlet boundary nodes excluded)."""
        if self.scheme == FINITE_DIFFERENCE_2ND:
            return np.linspace(self.t_min, self.t_max, self.n + 2)[1:-1]
        return self._lobatto()[1:-1]

    def _lobatto(self):
        k = np.arange(self.n + 2)
        x = -np.cos(np.pi * k / (self.n + 1))  # increasing on [-1, 1]
        return self.t_min + 0.5 * (x + 1.0) * (self.t_max - self.t_min)

    def quadrature_weights(self):
        """Weights making sum(w * u * v) approximate the L2 pairing on the box."""
        if self.scheme == FINITE_DIFFERENCE_2ND:
            h = (self.t_max - self.t_min) / (self.n + 1)
            return np.full(self.n, h)
        # Clenshaw-Curtis weights on the interior Lobatto nodes
        full = _clenshaw_curtis(self.n + 1) * 0.5 * (self.t_max - self.t_min)
        return full[1:-1]


def _clenshaw_curtis(n):
    """Clenshaw-Curtis weights on n+1 Chebyshev-Lobatto points of [-1, 1]."""
    if n == 0:
        return np.array([2.0])
    k = np.arange(n + 1)
    w = np.zeros(n + 1)
    v = np.ones(n - 1)
    for m in range(1, n // 2 + 1):
        factor = 2.0 if 2 * m < n else 1.0
        v -= factor * np.cos(2.0 * m * np.pi * k[1:-1] / n) / (4.0 * m * m - 1.0)
    w[1:-1] = 2.0 * v / n
    w[0] = w[-1] = 1.0 / (n * n - (n % 2 == 0))
    return w


def _cheb_diff_matrix(nodes):
    """Differentiation matrix on arbitrary distinct nodes (barycentric form)."""
    n = len(nodes)
    x = nodes.reshape(-1, 1)
    c = np.ones(n)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** np.arange(n)
    dx = x - x.T + np.eye(n)
    D = np.outer(c, 1.0 / c) / dx
    D -= np.diag(D.sum(axis=1))
    return D


def discretize(op, d: Discretization):
    """Dense matrix of the operator with Dirichlet conditions at the box ends.

    RadialOperator gives -d^2/dt^2 + W(t); ScaledRadialOperator gives the
    contour pullback -c d/dt(c d/dt .) + W(r(t)) with c = 1/r'.
    """
    scaled = isinstance(op, ScaledRadialOperator)
    if not scaled and not isinstance(op, RadialOperator):
        raise InvalidParameterError("expected a RadialOperator or ScaledRadialOperator")

    if d.scheme == FINITE_DIFFERENCE_2ND:
        t = d.nodes()
        h = (d.t_max - d.t_min) / (d.n + 1)
        w = op.potential(t)
        if scaled:
            c_node = 1.0 / op.contour.conj_velocity(t)
            c_half_p = 1.0 / op.contour.conj_velocity(t + 0.5 * h)
            c_half_m = 1.0 / op.contour.conj_velocity(t - 0.5 * h)
        else:
            c_node = c_half_p = c_half_m = np.ones_like(t)
        dtype = np.result_type(w, c_node, float)
        A = np.zeros((d.n, d.n), dtype=dtype)
        main = c_node * (c_half_p + c_half_m) / h**2 + w
        np.fill_diagonal(A, main)
        off_u = -c_node[:-1] * c_half_p[:-1] / h**2
        off_l = -c_node[1:] * c_half_m[1:] / h**2
        A[np.arange(d.n - 1), np.arange(1, d.n)] = off_u
        A[np.arange(1, d.n), np.arange(d.n - 1)] = off_l
        return A

    full = d._lobatto()
    D = _cheb_diff_matrix(full)
    w = op.potential(full)
    if scaled:
        c = 1.0 / op.contour.conj_velocity(full)
    else:
        c = np.ones_like(full)
    C = np.diag(np.asarray(c, dtype=np.result_type(c, float)))
    L = -C @ D @ C @ D + np.diag(w)
    return L[1:-1, 1:-1]


@dataclass(frozen=True)
class BlockOperator:
    """Mode-coupled dense operator with per-block bookkeeping."""

    j_min: int
    j_max: int
    block_size: int
    diagonal: dict          # j -> (n, n) matrix
    coupling: dict          # (j_to, j_from) -> (n,) diagonal entries
    discretization: Discretization
    dropped_couplings: tuple = field(default=())

    @property
    def modes(self):
        return list(range(self.j_min, self.j_max + 1))

    @property
    def dimension(self):
        return (self.j_max - self.j_min + 1) * self.block_size

    def row_range(self, j):
        """Partition: rows occupied by mode j."""
        i = (j - self.j_min) * self.block_size
        return i, i + self.block_size

    def to_matrix(self):
        n = self.block_size
        dtype = complex
        A = np.zeros((self.dimension, self.dimension), dtype=dtype)
        for j, blk in self.diagonal.items():
            i0, i1 = self.row_range(j)
            A[i0:i1, i0:i1] = blk
        for (jp, j), diag in self.coupling.items():
            r0, r1 = self.row_range(jp)
            c0, c1 = self.row_range(j)
            A[r0:r1, c0:c1] = np.diag(diag)
        return A


def assemble_coupled(model, contour, j_min, j_max, potential, d: Discretization,
                     coupling_scale: float = 1.0) -> BlockOperator:
    """Block operator of the mode-reduced Laplacian plus a weighted potential.

    Diagonal blocks discretize the (scaled) mode operators; each potential
    component of weight m contributes the diagonal multiplication block
    mode j -> mode j+m.  Couplings falling outside [j_min, j_max] are
    recorded, not silently dropped.
    """
    from .models import mode_operator
    from .scaling import scaled_operator

    if j_min > j_max:
        raise ModeRangeError("empty mode range")
    nodes = d.nodes()
    diagonal = {}
    for j in range(j_min, j_max + 1):
        op = mode_operator(model, j)
        if contour is not None:
            op = scaled_operator(op, contour)
        diagonal[j] = discretize(op, d)

    coupling = {}
    dropped = []
    if potential is not None:
        if contour is not None:
            pts = contour.conj_point(nodes)
        else:
            pts = nodes
        for comp in potential.components:
            vals = coupling_scale * np.asarray(comp.profile(pts), dtype=complex)
            for j in range(j_min, j_max + 1):
                jp = j + comp.weight
                if j_min <= jp <= j_max:
                    key = (jp, j)
                    if key in coupling:
                        coupling[key] = coupling[key] + vals
                    else:
                        coupling[key] = vals.copy()
                else:
                    dropped.append((jp, j))
    return BlockOperator(
        j_min=j_min,
        j_max=j_max,
        block_size=d.n,
        diagonal=diagonal,
        coupling=coupling,
        discretization=d,
        dropped_couplings=tuple(sorted(set(dropped))),
    )


def triangularity_check(block: BlockOperator) -> float:
    """Max |entry| over blocks below the mode-increasing block triangle.

    Components with weights of one sign only populate blocks j -> j+m on one
    side of the diagonal; 0 certifies strict block triangularity.
    """
    worst = 0.0
    for (jp, j), diag in block.coupling.items():
        if jp < j:
            worst = max(worst, float(np.max(np.abs(diag))))
    return worst
