"""Resonance location: contour-scaling route, Jost route, and comparisons."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from . import linalg
from .errors import (
    InvalidParameterError,
    ModeRangeError,
    OverflowGuardError,
    WindingError,
)
from .grid import (
    CHEBYSHEV_COLLOCATION,
    Discretization,
    assemble_coupled,
    discretize,
    triangularity_check,
)
from .models import (
    FULL_LINE,
    HYPERBOLIC_CYLINDER,
    HYPERBOLIC_PLANE,
    mode_operator,
)
from .scaling import build_contour, scaled_operator

# ---------------------------------------------------------------------------
# result containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResonanceEntry:
    sigma: complex
    multiplicity: int
    order: int
    diagnostics: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class ResonanceSet:
    model: str
    j_min: int
    j_max: int
    entries: tuple

    def __post_init__(self):
        ordered = tuple(
            sorted(self.entries, key=lambda e: (e.sigma.real, e.sigma.imag))
        )
        object.__setattr__(self, "entries", ordered)

    def locations(self):
        return np.array([e.sigma for e in self.entries], dtype=complex)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class MatchReport:
    matched: tuple            # (entry_left, entry_right, displacement)
    unmatched_left: tuple
    unmatched_right: tuple
    multiplicity_mismatches: tuple

    @property
    def max_displacement(self) -> float:
        if not self.matched:
            return 0.0
        return max(d for _, _, d in self.matched)


def compare_sets(a: ResonanceSet, b: ResonanceSet, tol: float) -> MatchReport:
    """Greedy nearest matching of two resonance sets under a displacement cap."""
    left = list(a.entries)
    right = list(b.entries)
    pairs = []
    if left and right:
        cand = []
        for i, ea in enumerate(left):
            for k, eb in enumerate(right):
                d = abs(ea.sigma - eb.sigma)
                if d <= tol:
                    cand.append((d, i, k))
        cand.sort()
        used_l, used_r = set(), set()
        for d, i, k in cand:
            if i in used_l or k in used_r:
                continue
            used_l.add(i)
            used_r.add(k)
            pairs.append((left[i], right[k], d))
    used_l = {id(p[0]) for p in pairs}
    used_r = {id(p[1]) for p in pairs}
    un_l = tuple(e for e in left if id(e) not in used_l)
    un_r = tuple(e for e in right if id(e) not in used_r)
    mism = tuple(
        (ea.sigma, ea.multiplicity, eb.multiplicity)
        for ea, eb, _ in pairs
        if ea.multiplicity != eb.multiplicity
    )
    return MatchReport(tuple(pairs), un_l, un_r, mism)


# ---------------------------------------------------------------------------
# Jost route (hyperbolic models: exponentially decaying mode potentials)
# ---------------------------------------------------------------------------

_SERIES_TERMS = 60


def _tail_series_coeffs(op, nus, terms=_SERIES_TERMS):
    """Coefficients of the outgoing solutions e^{-nu r} sum c_n e^{-2 n r}.

    W_j - shift = sum_k U_k e^{-2kr}; the recurrence is
    c_n = sum_{k=1..n} U_k c_{n-k} / (4 n (nu + n)).  Vectorized over an
    array of nu values: returns an array of shape (terms + 1, len(nus)).
    """
    nus = np.asarray(nus, dtype=complex)
    c = np.zeros((terms + 1, nus.size), dtype=complex)
    c[0] = 1.0
    U = np.array([op.tail_series_coefficient(k) for k in range(1, terms + 1)])
    for n in range(1, terms + 1):
        denom = 4.0 * n * (nus + n)
        if np.any(np.abs(denom) < 1e-12):
            raise OverflowGuardError(
                "outgoing expansion degenerates at a half-integer sigma"
            )
        c[n] = (U[:n][::-1] @ c[:n]) / denom
    return c


def _outgoing_solution(op, nus, r):
    """Values and derivatives of the outgoing Jost solutions at radius r."""
    nus = np.asarray(nus, dtype=complex)
    c = _tail_series_coeffs(op, nus)
    q = np.exp(-2.0 * r)
    n = np.arange(c.shape[0])[:, None]
    qn = q**n
    f = np.exp(-nus * r) * np.sum(c * qn, axis=0)
    fp = np.exp(-nus * r) * np.sum(c * (-nus[None, :] - 2.0 * n) * qn, axis=0)
    return f, fp


def _rk4_second_order(op, r_grid, energies, y0, dy0):
    """Fixed-step RK4 for w'' = (W(r) - shift - E) w, vectorized over E.

    The coefficient W - shift is sampled once on the grid and its midpoints;
    the integration then advances all energy channels together.
    """
    r_grid = np.asarray(r_grid, dtype=float)
    mids = 0.5 * (r_grid[:-1] + r_grid[1:])
    P = op.potential(r_grid) - op.spectral_shift
    Pm = op.potential(mids) - op.spectral_shift
    E = np.asarray(energies, dtype=complex)
    y = np.broadcast_to(np.asarray(y0, dtype=complex), E.shape).copy()
    dy = np.broadcast_to(np.asarray(dy0, dtype=complex), E.shape).copy()
    h = np.diff(r_grid)
    for i in range(len(r_grid) - 1):
        a0 = P[i] - E
        am = Pm[i] - E
        a1 = P[i + 1] - E
        hi = h[i]
        k1y, k1d = dy, a0 * y
        k2y = dy + 0.5 * hi * k1d
        k2d = am * (y + 0.5 * hi * k1y)
        k3y = dy + 0.5 * hi * k2d
        k3d = am * (y + 0.5 * hi * k2y)
        k4y = dy + hi * k3d
        k4d = a1 * (y + hi * k3y)
        y = y + hi / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        dy = dy + hi / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
    return y, dy


def _regular_solution_grid(r0, r_match, steps):
    """Geometric spacing near the coordinate pole, uniform after 0.5."""
    n_geo = max(steps // 3, 100)
    geo = np.geomspace(r0, min(0.5, r_match), n_geo)
    if r_match > 0.5:
        uni = np.linspace(0.5, r_match, max(steps - n_geo, 100))
        return np.concatenate([geo[:-1], uni])
    return geo


def _jost_batch(model, j, sigmas, r_start: float = 30.0, steps: int = 1600):
    """Connection coefficients a(sigma) for an array of sigma values."""
    if model.name not in (HYPERBOLIC_PLANE, HYPERBOLIC_CYLINDER):
        raise InvalidParameterError("Jost route requires a hyperbolic model")
    op = mode_operator(model, j)
    sigmas = np.asarray(sigmas, dtype=complex)
    nus = sigmas - 0.5
    if np.max(np.abs(nus.real)) * r_start > 700.0:
        raise OverflowGuardError("exponential factor exceeds floating-point range")
    # cap the matching radius: relative roundoff in the recessive coefficient
    # grows like eps * exp(2 |Re nu| r_match)
    r_match = min(r_start, 2.5)
    z = np.asarray(model.spectral_value(sigmas), dtype=complex)
    energy = z - op.spectral_shift  # equals -nu^2

    f, fp = _outgoing_solution(op, nus, r_match)
    if model.name == HYPERBOLIC_PLANE:
        # regular solution r^p (1 + b1 r^2) from a small radius outward
        p = op.centrifugal_exponent()
        nu2 = float(j) ** 2
        c0 = 0.25 - (nu2 - 0.25) / 3.0
        b1 = (c0 - z) / (4.0 * p + 2.0)
        r0 = 1e-3
        w0 = r0**p * (1.0 + b1 * r0 * r0)
        dw0 = p * r0 ** (p - 1.0) * (1.0 + b1 * r0 * r0) + r0**p * 2.0 * b1 * r0
        grid = _regular_solution_grid(r0, r_match, steps)
        w, dw = _rk4_second_order(op, grid, energy, w0, dw0)
        return w * fp - dw * f
    # full line, even potential: outgoing at both ends; the Wronskian of the
    # mirrored solution with itself reduces to 2 f(0) f'(0)
    grid = np.linspace(r_match, 0.0, max(steps, 200))
    w, dw = _rk4_second_order(op, grid, energy, f, fp)
    return 2.0 * w * dw


def _full_line_factors(model, j, sigmas, r_start: float = 30.0, steps: int = 1600):
    """The pair (w(0), w'(0)) whose product is the full-line coefficient.

    A mode resonance is a zero of exactly one factor (even or odd sector),
    so polishing can work on that factor alone.  The short matching radius
    keeps the integrated amplitudes small and the evaluation noise low.
    """
    op = mode_operator(model, j)
    sigmas = np.asarray(sigmas, dtype=complex)
    nus = sigmas - 0.5
    r_match = min(r_start, 1.5)
    z = np.asarray(model.spectral_value(sigmas), dtype=complex)
    energy = z - op.spectral_shift
    f, fp = _outgoing_solution(op, nus, r_match)
    grid = np.linspace(r_match, 0.0, max(steps, 200))
    return _rk4_second_order(op, grid, energy, f, fp)


def jost_function(model, j, sigma, r_start: float = 30.0, steps: int = 1600) -> complex:
    """Connection coefficient a(sigma) of the mode-j radial problem.

    Wronskian of the regular (or left-outgoing) solution with the outgoing
    solution continued from infinity.  Zeros in Re sigma < 1/2 are
    resonances of the mode.  The outgoing solution is evaluated through its
    convergent exponential-tail expansion at a matching radius capped so the
    exponential dichotomy cannot amplify roundoff.
    """
    return complex(_jost_batch(model, j, [complex(sigma)], r_start, steps)[0])


_ARTIFACT_GAP = 1e-3


def _pole_factors(region, pad=1.0):
    """sigma = 1/2 - n points where the tail expansion may have poles."""
    re_min, re_max = region[0] - pad, region[1] + pad
    pts = []
    n = 1
    while 0.5 - n >= re_min:
        if 0.5 - n <= re_max:
            pts.append(0.5 - n)
        n += 1
    return pts


def _boundary_samples(re0, re1, im0, im1, per_side):
    top = [complex(re0 + (re1 - re0) * k / per_side, im0) for k in range(per_side)]
    right = [complex(re1, im0 + (im1 - im0) * k / per_side) for k in range(per_side)]
    bot = [complex(re1 - (re1 - re0) * k / per_side, im1) for k in range(per_side)]
    left = [complex(re0, im1 - (im1 - im0) * k / per_side) for k in range(per_side)]
    return top + right + bot + left


def _winding(values):
    """Accumulated phase of a sampled closed curve, in turns."""
    v = np.asarray(values, dtype=complex)
    if np.any(np.abs(v) == 0.0):
        raise WindingError("exact zero on counting contour")
    ratios = np.angle(np.roll(v, -1) / v)
    if np.any(np.abs(ratios) > 0.75 * np.pi):
        raise WindingError("phase step too large; refine the boundary sampling")
    total = ratios.sum() / (2.0 * np.pi)
    n = round(total)
    if abs(total - n) > 0.1:
        raise WindingError(f"non-integer winding {total:.3f}")
    return int(n)


def find_resonances_jost(model, j, region, tol: float = 1e-6,
                         r_start: float = 30.0, steps: int = 1600) -> ResonanceSet:
    """Zeros of the mode-j connection coefficient inside a rectangle.

    region = (re_min, re_max, im_min, im_max) in the sigma plane.  Winding
    numbers over subdivided rectangles localize zeros; candidates are then
    Newton-polished and checked to be genuine zeros (the regularizing factor
    removing expansion poles can introduce phantom ones).
    """
    re0, re1, im0, im1 = map(float, region)
    poles = _pole_factors((re0, re1))
    # the full-line connection coefficient is a product of two boundary
    # values of the tail expansion, so its expansion poles are double
    pole_order = 2 if model.radial_domain == FULL_LINE else 1

    def h_batch(ss):
        ss = np.asarray(ss, dtype=complex)
        vals = _jost_batch(model, j, ss, r_start, steps)
        for p in poles:
            vals = vals * (ss - p) ** pole_order
        return vals

    found = []

    def subdivide(box, depth):
        b_re0, b_re1, b_im0, b_im1 = box
        for attempt in range(6):
            grow = 1.0 + 0.03 * attempt
            cx, cy = 0.5 * (b_re0 + b_re1), 0.5 * (b_im0 + b_im1)
            hw = 0.5 * (b_re1 - b_re0) * grow
            hh = 0.5 * (b_im1 - b_im0) * grow
            per_side = 32 * (1 + attempt)
            samples = _boundary_samples(cx - hw, cx + hw, cy - hh, cy + hh, per_side)
            try:
                vals = h_batch(samples)
                w = _winding(vals)
                break
            except WindingError:
                if attempt == 5:
                    raise
        if w == 0:
            return
        if max(b_re1 - b_re0, b_im1 - b_im0) < 0.2 or depth > 14:
            found.append(((b_re0 + b_re1) / 2.0 + 1j * (b_im0 + b_im1) / 2.0, w))
            return
        mx, my = 0.5 * (b_re0 + b_re1), 0.5 * (b_im0 + b_im1)
        subdivide((b_re0, mx, b_im0, my), depth + 1)
        subdivide((mx, b_re1, b_im0, my), depth + 1)
        subdivide((b_re0, mx, my, b_im1), depth + 1)
        subdivide((mx, b_re1, my, b_im1), depth + 1)

    # nudge the outer box off lattice-aligned boundaries
    subdivide((re0 + 1.3e-4, re1 + 1.3e-4, im0 + 1.7e-4, im1 + 1.7e-4), 0)

    entries = []
    for s0, mult in found:
        s = s0
        for _ in range(60):
            d = 1e-6
            hs, hplus, hminus = h_batch([s, s + d, s - d])
            hp = (hplus - hminus) / (2.0 * d)
            if hp == 0:
                break
            step = mult * hs / hp
            s = s - step
            if abs(step) < 0.25 * tol:
                break
        if model.radial_domain == FULL_LINE:
            # refine on the boundary factor that owns the zero; for an
            # even-multiplicity zero target the factor's critical point
            # instead, which is a simple zero of its derivative
            for _ in range(30):
                d = 1e-4
                pts = [s, s + d, s - d]
                w3, dw3 = _full_line_factors(model, j, pts, r_start, steps)
                g = w3 if abs(w3[0]) < abs(dw3[0]) else dw3
                g1 = (g[1] - g[2]) / (2.0 * d)
                if mult % 2 == 0:
                    g2 = (g[1] - 2.0 * g[0] + g[2]) / (d * d)
                    if g2 == 0:
                        break
                    step = g1 / g2
                else:
                    if g1 == 0:
                        break
                    step = g[0] / g1
                s = s - step
                if abs(step) < 0.05 * tol:
                    break
        # reject phantom zeros created by the pole-cancelling factor
        if any(abs(s - p) < _ARTIFACT_GAP for p in poles):
            probes = _jost_batch(
                model, j,
                [s + 1e-4, s - 1e-4, s + 1e-4j, s - 1e-4j, s + 0.05 + 0.05j],
                r_start, steps,
            )
            a_near = np.min(np.abs(probes[:4]))
            a_ref = abs(probes[4])
            if a_near > 1e-4 * max(a_ref, 1.0):
                continue
        # dilation during the winding retries can hand the same zero to two
        # sibling boxes; keep one polished representative
        if any(abs(s - e.sigma) < 1e-4 for e in entries):
            continue
        # multiplicity by a winding circle small enough to exclude the poles
        radius = 0.05
        for p in poles:
            radius = min(radius, 0.5 * abs(s - p))
        circle = s + radius * np.exp(2j * np.pi * np.arange(64) / 64)
        mult = _winding(h_batch(circle))
        entries.append(
            ResonanceEntry(
                sigma=complex(s),
                multiplicity=mult,
                order=1,
                diagnostics={"route": "jost", "mode": j, "winding": mult},
            )
        )
    return ResonanceSet(model.name, j, j, tuple(entries))


def jost_union(model, j_range, region, tol: float = 1e-6) -> ResonanceSet:
    """Multiset union of per-mode Jost resonances over a range of modes."""
    entries = []
    for j in j_range:
        sub = find_resonances_jost(model, j, region, tol)
        entries.extend(sub.entries)
    return ResonanceSet(model.name, min(j_range), max(j_range), tuple(entries))


# ---------------------------------------------------------------------------
# complex-scaling route (catenoid)
# ---------------------------------------------------------------------------


def _block_eigenvalues(block):
    """Multiset of eigenvalues; exact per-block reduction when triangular."""
    if triangularity_check(block) == 0.0 and all(
        jp >= j for (jp, j) in block.coupling
    ):
        vals = [linalg.eigen_all(blk) for _, blk in sorted(block.diagonal.items())]
        return np.concatenate(vals) if vals else np.array([], dtype=complex)
    return linalg.eigen_all(block.to_matrix())


def _in_region(z, region):
    re0, re1, im0, im1 = region
    return (re0 <= z.real <= re1) & (im0 <= z.imag <= im1)


def _off_ray(z, thetas, margin=0.05):
    """Angular distance to every rotated continuum ray exceeds the margin."""
    ang = np.angle(z)
    return all(abs(ang - 2.0 * th) > margin for th in thetas)


def _local_jordan(A, lam0, k_guess, tol=1e-8):
    """Jordan data of a large matrix at lam0 via an invariant-subspace restriction."""
    n = A.shape[0]
    k = min(n, max(2 * k_guess + 2, 4))
    rng = np.random.default_rng(7)
    B = A - (lam0 + 1e-9) * np.eye(n)
    lu, piv = sla.lu_factor(B)
    X = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    for _ in range(3):
        X = sla.lu_solve((lu, piv), X)
        X, _ = np.linalg.qr(X)
    M = X.conj().T @ A @ X
    w = linalg.eigen_all(M)
    keep = np.abs(w - lam0) < 1e-4 * max(1.0, abs(lam0))
    rep = linalg.jordan_structure(M, lam0, tol)
    # restrict the report to the cluster actually near lam0
    alg = int(np.count_nonzero(keep))
    if alg == 0:
        alg = rep.algebraic_multiplicity
    return linalg.JordanReport(
        location=complex(lam0),
        algebraic_multiplicity=alg,
        geometric_multiplicity=min(rep.geometric_multiplicity, alg),
        order=rep.order,
        rank_sequence=rep.rank_sequence,
    )


def find_resonances_scaling(
    model,
    j_min,
    j_max,
    potential,
    thetas,
    ns,
    region,
    r0: float = 8.0,
    r1: float = 16.0,
    r_max: float = 32.0,
    scheme: str = CHEBYSHEV_COLLOCATION,
    stability_tol: float = 1e-6,
    ray_margin: float = 0.05,
    compute_order: bool = True,
    ramp: str = "exp_blend",
) -> ResonanceSet:
    """Stable discrete eigenvalues of the scaled coupled assemblies.

    Every (theta, n) pair yields one spectrum; a candidate is accepted when
    it recurs in all spectra within stability_tol, stays off every rotated
    continuum ray by ray_margin radians, and lies inside the z-plane region
    rectangle (re_min, re_max, im_min, im_max).
    """
    if model.radial_domain != FULL_LINE:
        raise InvalidParameterError("scaling route expects a full-line model")
    thetas = sorted(set(float(t) for t in thetas))
    ns = sorted(set(int(n) for n in ns))
    if not thetas or not ns:
        raise InvalidParameterError("need at least one theta and one n")

    runs = []
    assemblies = {}
    for th in thetas:
        contour = build_contour(th, r0, r1, ramp=ramp) if th > 0 else None
        for n in ns:
            d = Discretization(scheme, n, -r_max, r_max)
            block = assemble_coupled(model, contour, j_min, j_max, potential, d)
            w = _block_eigenvalues(block)
            cand = np.array(
                [z for z in w if _in_region(z, region) and _off_ray(z, thetas, ray_margin)],
                dtype=complex,
            )
            runs.append(((th, n), cand))
            assemblies[(th, n)] = block

    anchors = runs[0][1]
    finest_key = (thetas[-1], ns[-1])
    entries = []
    for z0 in anchors:
        cluster = [z0]
        ok = True
        for (_, _), cand in runs[1:]:
            if cand.size == 0:
                ok = False
                break
            d = np.abs(cand - z0)
            if d.min() > stability_tol:
                ok = False
                break
            cluster.append(cand[d.argmin()])
        if not ok:
            continue
        spread = float(max(abs(c - z0) for c in cluster))
        if abs(z0) < 5.0 * stability_tol:
            continue  # numerically indistinguishable from the corner of the rays
        # multiplicity: coincident eigenvalues within the finest run
        fin = runs[-1][1]
        mult = int(np.count_nonzero(np.abs(fin - z0) <= 10.0 * stability_tol))
        mult = max(mult, 1)
        order = 1
        if compute_order and mult > 1:
            rep = _local_jordan(assemblies[finest_key].to_matrix(), z0, mult)
            order = rep.order
        entries.append(
            ResonanceEntry(
                sigma=complex(z0),
                multiplicity=mult,
                order=order,
                diagnostics={
                    "route": "scaling",
                    "theta_n_spread": spread,
                    "thetas": tuple(thetas),
                    "ns": tuple(ns),
                },
            )
        )
    # deduplicate anchors that clustered onto the same point
    unique = []
    for e in sorted(entries, key=lambda e: (e.sigma.real, e.sigma.imag)):
        if unique and abs(unique[-1].sigma - e.sigma) <= 10.0 * stability_tol:
            continue
        unique.append(e)
    return ResonanceSet(model.name, j_min, j_max, tuple(unique))


def persistence_sweep(model, j_min, j_max, potential, t_grid, thetas, ns, region,
                      **kwargs):
    """Displacement of the resonance set along t -> t * V, relative to t = 0."""
    base = None
    curve = []
    for t in t_grid:
        v_t = potential.scaled(float(t)) if potential is not None else None
        rs = find_resonances_scaling(
            model, j_min, j_max, v_t, thetas, ns, region, compute_order=False, **kwargs
        )
        if base is None:
            base = rs
            curve.append((float(t), 0.0, 0, 0))
            continue
        rep = compare_sets(base, rs, tol=1e-3)
        curve.append(
            (
                float(t),
                rep.max_displacement,
                len(rep.unmatched_left),
                len(rep.unmatched_right),
            )
        )
    return base, curve


# ---------------------------------------------------------------------------
# order-growth pairing (Prop. "order strictly greater than 1" mechanism)
# ---------------------------------------------------------------------------


def order_pairing(component, r_nodes, psi_a, psi_b, weights, mode_a, mode_b) -> complex:
    """Bilinear pairing integral V_m psi_a psi_b on the grid.

    A nonzero value predicts Jordan coupling (order >= 2) between the two
    modes sharing the eigenvalue; the pairing is bilinear, not sesquilinear.
    """
    if mode_b != mode_a + component.weight:
        raise ModeRangeError(
            f"modes {mode_a}->{mode_b} do not match weight {component.weight}"
        )
    vals = np.asarray(component.profile(np.asarray(r_nodes)), dtype=complex)
    return complex(np.sum(np.asarray(weights) * vals * np.asarray(psi_a) * np.asarray(psi_b)))


def order_growth_fixture(model, j, m, component, r_box, n,
                         scheme: str = "finite_difference_2nd"):
    """Two-mode shared-eigenvalue fixture exhibiting the order-raising mechanism.

    Discretizes modes j and j+m on [r_min, r_box] with Dirichlet walls, shifts
    the second block so its lowest eigenvalue coincides with the first block's,
    and couples them by the weight-m multiplication.  Returns a dict with the
    coupled matrix, the shared eigenvalue, and the predicted pairing.
    """
    d = Discretization(scheme, n, 1e-6, r_box)
    nodes = d.nodes()
    wts = d.quadrature_weights()
    A = discretize(mode_operator(model, j), d)
    B = discretize(mode_operator(model, j + m), d)
    wa, va = sla.eigh(np.real(A))
    wb, vb = sla.eigh(np.real(B))
    lam = wa[0]
    B_shift = B + (lam - wb[0]) * np.eye(n)
    psi_a = va[:, 0]
    psi_b = vb[:, 0]
    pairing = order_pairing(component, nodes, psi_a, psi_b, wts, j, j + m)
    C = np.diag(np.asarray(component.profile(nodes), dtype=float))
    dim = 2 * n
    M = np.zeros((dim, dim))
    M[:n, :n] = A
    M[n:, n:] = B_shift
    M[n:, :n] = C
    return {
        "matrix": M,
        "eigenvalue": float(lam),
        "pairing": pairing,
        "nodes": nodes,
        "weights": wts,
        "psi_a": psi_a,
        "psi_b": psi_b,
    }
