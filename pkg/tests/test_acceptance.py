"""End-to-end acceptance checks, one per headline property.

Each test computes a single boolean verdict from the stated tolerances and
prints one pass/fail line before asserting, so the full scorecard is visible
in the captured output even when a criterion fails.
"""

import time

import numpy as np
import pytest
import scipy.linalg as sla
from scipy.special import jn_zeros, sph_harm_y
from sympy.physics.wigner import gaunt

import isores
from isores import (
    Discretization,
    assemble_coupled,
    build_contour,
    cap_from_model,
    compare_sets,
    count_zeros,
    det_reg,
    dirichlet_mode_spectrum,
    discretize,
    find_resonances_scaling,
    geometric_family,
    homogeneous_component,
    jordan_structure,
    jost_union,
    ls_determinant,
    make_model,
    mode_operator,
    mode_resolvent_decay,
    multiplication_matrix,
    nilpotency_power,
    order_growth_fixture,
    order_pairing,
    persistence_sweep,
    phase_conjugation_residual,
    potential_sum,
    restrict_to_cluster,
    scaled_operator,
    shift_verify,
    symmetrize,
    truncate,
    weyl_bound_check,
)
from isores.sphere import basis_indices


def verdict(num, label, ok):
    print(f"criterion {num} ({label}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num} ({label}) failed"


def counterexample_potential():
    return symmetrize(truncate(geometric_family(0.5, 8, amplitude=8.0), 8, 3.5))


@pytest.fixture(scope="module")
def counterexample_sets():
    """Free and symmetrized-potential catenoid resonance sets."""
    m = make_model("catenoid")
    v = counterexample_potential()
    kw = dict(r_max=48.0, stability_tol=5e-5)
    region = (1.2, 2.2, 0.4, 1.0)
    free = find_resonances_scaling(m, -2, 2, None, [0.3, 0.4], [500, 600],
                                   region, **kw)
    pert = find_resonances_scaling(m, -2, 2, v, [0.3, 0.4], [500, 600],
                                   region, **kw)
    return free, pert


@pytest.fixture(scope="module")
def theta_stability_runs():
    """Perturbed catenoid candidates per fixed n, resolved across two thetas."""
    m = make_model("catenoid")
    v = counterexample_potential()
    region = (1.2, 2.2, 0.4, 1.0)
    out = {}
    for n in (500, 600):
        out[n] = find_resonances_scaling(
            m, -2, 2, v, [0.3, 0.4], [n], region,
            r_max=48.0, stability_tol=1e-6,
        )
    return out


def test_criterion_1_hyperbolic_plane_free_resonances():
    t0 = time.time()
    m = make_model("hyperbolic_plane")
    region = (-3.6, 0.4, -0.4, 0.4)
    rs = jost_union(m, range(-3, 4), region, tol=1e-6)
    locs = rs.locations()

    mode0 = jost_union(m, [0], region, tol=1e-6).locations()
    ok = (
        mode0.size == 4
        and np.allclose(np.sort(mode0.real), [-3, -2, -1, 0], atol=1e-6)
        and np.max(np.abs(mode0.imag)) < 1e-6
    )
    for k in range(4):
        hits = np.count_nonzero(np.abs(locs - (-k)) < 1e-6)
        ok = ok and hits == 2 * k + 1
    ok = ok and all(e.order == 1 for e in rs.entries)
    elapsed = time.time() - t0
    ok = ok and elapsed < 60.0
    verdict(1, "hyperbolic plane free resonances", ok)


def test_criterion_2_cylinder_lattice():
    m = make_model("hyperbolic_cylinder", ell=2.0 * np.pi)
    region = (-2.5, 0.5, -2.5, 2.5)
    rs = jost_union(m, range(-2, 3), region, tol=1e-6)
    got = rs.locations()
    want = []
    for j in range(-2, 3):
        for s in m.oracle_resonances(j, region[0], im_max=region[3]):
            if region[0] <= s.real <= region[1] and abs(s.imag) <= region[3]:
                want.append(s)
    ok = got.size > 0 and len(want) > 0
    ok = ok and all(np.min(np.abs(got - w)) < 1e-6 for w in want)
    ok = ok and all(min(abs(g - w) for w in want) < 1e-6 for g in got)
    verdict(2, "hyperbolic cylinder lattice", ok)


def test_criterion_3_catenoid_isoresonance():
    t0 = time.time()
    m = make_model("catenoid")
    v = geometric_family(0.5, 8)
    region = (0.02, 3.0, 0.002, 1.0)
    free = find_resonances_scaling(m, -6, 6, None, [0.3, 0.4], [300, 500],
                                   region)
    pert = find_resonances_scaling(m, -6, 6, v, [0.3, 0.4], [300, 500],
                                   region)
    rep = compare_sets(free, pert, tol=1e-3)
    ok = (
        not rep.unmatched_left
        and not rep.unmatched_right
        and not rep.multiplicity_mismatches
        and rep.max_displacement < 1e-8
    )
    _, curve = persistence_sweep(m, -6, 6, v, [0.0, 0.25, 0.5, 0.75, 1.0],
                                 [0.3, 0.4], [300, 500], region)
    ok = ok and all(d < 1e-8 and ul == 0 and ur == 0 for _, d, ul, ur in curve)
    ok = ok and (time.time() - t0) < 600.0
    verdict(3, "catenoid isoresonance and persistence", ok)


def test_criterion_4_counterexample_control(counterexample_sets):
    free, pert = counterexample_sets
    rep = compare_sets(free, pert, tol=1e-3)
    created = len(rep.unmatched_right)
    ok = rep.max_displacement > 1e-4 or rep.unmatched_left or rep.unmatched_right
    # regression baseline for the created resonances in this window
    ok = bool(ok) and created == 2
    verdict(4, "symmetrized counterexample", ok)


def test_criterion_5_determinant_identity():
    m = make_model("catenoid")
    d = Discretization("finite_difference_2nd", 50, -15.0, 15.0)
    fixtures = [
        truncate(geometric_family(0.5, 6), 6, 3.5),
        truncate(geometric_family(0.3, 4, amplitude=3.0), 4, 2.5),
        potential_sum([
            homogeneous_component(2, "bump", center=1.0, width=1.5, amplitude=2.0),
            homogeneous_component(5, "bump", center=0.5, width=2.0, amplitude=1.0),
        ]),
    ]
    rng = np.random.default_rng(42)
    ok = True
    for v in fixtures:
        ok = ok and v.one_signed
        free = assemble_coupled(m, None, -3, 3, None, d)
        coupled = assemble_coupled(m, None, -3, 3, v, d)
        for _ in range(20):
            s = complex(rng.uniform(0.3, 3.0), rng.uniform(0.2, 1.5))
            vals = [ls_determinant(m, -3, 3, v, s, d, p=p, free=free,
                                   coupled=coupled) for p in (1, 2, 3)]
            ok = ok and all(abs(val - 1.0) < 1e-12 for val in vals)
        for _ in range(5):
            c = complex(rng.uniform(0.8, 2.2), rng.uniform(0.5, 1.2))
            r = rng.uniform(0.1, 0.3)
            fn = lambda s: ls_determinant(m, -3, 3, v, s, d, free=free,
                                          coupled=coupled)
            ok = ok and count_zeros(fn, c, r, q_nodes=64) == 0
    verdict(5, "regularized determinant identity", ok)


def test_criterion_6_order_growth():
    m = make_model("hyperbolic_plane")
    comp = homogeneous_component(2, "bump", center=1.2, width=0.8, amplitude=3.0)
    fx = order_growth_fixture(m, 1, 2, comp, 8.0, 160)
    R, k = restrict_to_cluster(fx["matrix"], fx["eigenvalue"], 0.05)
    rep = jordan_structure(R, fx["eigenvalue"])
    ok = (
        abs(fx["pairing"]) > 1e-6
        and rep.order == 2
        and rep.algebraic_multiplicity == 2
        and rep.geometric_multiplicity == 1
    )
    far = homogeneous_component(2, "bump", center=2.4, width=1.0, amplitude=0.5)
    p_far = order_pairing(far, fx["nodes"], fx["psi_a"], fx["psi_b"],
                          fx["weights"], 1, 3)
    mix = potential_sum(
        [comp, far.scaled(-complex(fx["pairing"]).real / p_far.real)]
    ).components[0]
    ctrl = order_growth_fixture(m, 1, 2, mix, 8.0, 160)
    R0, _ = restrict_to_cluster(ctrl["matrix"], ctrl["eigenvalue"], 0.05)
    rep0 = jordan_structure(R0, ctrl["eigenvalue"])
    ok = ok and abs(ctrl["pairing"]) < 1e-8 and rep0.order == 1
    ok = ok and abs(ctrl["eigenvalue"] - fx["eigenvalue"]) < 1e-10

    # synthetic rank-sequence fixtures with exactly known answers
    J = sla.block_diag(np.array([[2.0, 1.0], [0.0, 2.0]]), [[2.0]])
    rng = np.random.default_rng(3)
    T = rng.standard_normal((3, 3)) + np.eye(3) * 2
    synth = jordan_structure(T @ J @ np.linalg.inv(T), 2.0)
    ok = ok and (synth.algebraic_multiplicity, synth.geometric_multiplicity,
                 synth.order) == (3, 2, 2)
    diag = jordan_structure(np.diag([5.0, 5.0, 9.0]), 5.0)
    ok = ok and (diag.algebraic_multiplicity, diag.order) == (2, 1)
    verdict(6, "order growth mechanism", ok)


def test_criterion_7_weyl_envelope():
    t0 = time.time()
    flat = cap_from_model(make_model("euclidean_plane"), 1.0)
    ok = True
    for j in range(0, 31):
        mu = dirichlet_mode_spectrum(flat, j, 1)[0]
        want = jn_zeros(j, 1)[0] ** 2
        ok = ok and abs(mu - want) / want < 1e-6
        # the envelope window only holds from j = 3 on: the exact values
        # mu_1(1) = 14.68 and mu_1(2) = 6.59 sit above it, as the Bessel
        # oracle itself certifies, so the pointwise oracle is the binding
        # check at small j
        if j >= 3:
            ok = ok and 0.9 <= mu / j**2 <= 6.0
    hyp = cap_from_model(make_model("hyperbolic_plane"), 2.0)
    rep = weyl_bound_check(hyp, range(1, 31))
    ok = ok and rep["passed"]
    ok = ok and (time.time() - t0) < 120.0
    verdict(7, "Weyl envelope on caps", ok)


def test_criterion_8_mode_resolvent_decay():
    m = make_model("hyperbolic_plane")
    rep = mode_resolvent_decay(m, 2.0, 3.0, range(5, 41, 5))
    ok = -2.2 <= rep["fitted_slope"] <= -1.8
    rep2 = mode_resolvent_decay(m, 2.0, 3.0, range(0, 41, 5))
    weighted = {j: (1 + j**2) * v for j, v in rep2["norms"].items()}
    sup_at = max(weighted, key=weighted.get)
    ok = ok and np.isfinite(max(weighted.values())) and abs(sup_at) <= 5
    verdict(8, "mode-resolvent decay", ok)


def test_criterion_9_scaling_sector(theta_stability_runs):
    # continuum Ritz values hug the rotated ray arg z = 2 theta
    m = make_model("catenoid")
    ok = True
    for theta in (0.3, 0.4):
        for n in (240, 360):
            c = build_contour(theta, 8.0, 16.0, ramp="exp_blend")
            d = Discretization("chebyshev_collocation", n, -32.0, 32.0)
            A = discretize(scaled_operator(mode_operator(m, 0), c), d)
            w = sla.eigvals(A)
            sel = w[(np.abs(w) > 0.1) & (np.abs(w) < 3.0)]
            ok = ok and sel.size > 10
            ok = ok and np.max(np.abs(np.angle(sel) - 2 * theta)) < 0.05

    # accepted candidates agree across the two thetas to 1e-6 at each n
    for n, rs in theta_stability_runs.items():
        ok = ok and len(rs) > 0
        for e in rs.entries:
            ok = ok and e.diagnostics["theta_n_spread"] < 1e-6
    # and the candidates found at the two n values pair up
    pair = compare_sets(theta_stability_runs[500], theta_stability_runs[600],
                        tol=1e-3)
    ok = ok and not pair.unmatched_left and not pair.unmatched_right
    verdict(9, "complex-scaling sector and theta stability", ok)


def test_criterion_10_sphere_shift():
    ok = True
    for k in (1, 2, 3):
        s = multiplication_matrix(k, 8)
        rep = shift_verify(s)
        ok = ok and rep["max_violation"] < 1e-12 and rep["triangular_in_m"]
        p = nilpotency_power(s)
        ok = ok and np.max(np.abs(np.linalg.matrix_power(s.matrix, p))) < 1e-12
        ok = ok and phase_conjugation_residual(s, 0.7) < 1e-12

        th = 0.7
        ck = ((np.sin(th) ** k) / sph_harm_y(k, k, th, 0.0)).real
        idx = basis_indices(8)
        for a, (lp, mp) in enumerate(idx):
            for b, (l, m) in enumerate(idx):
                if mp != m + k:
                    continue
                g = float(gaunt(lp, k, l, -mp, k, m))
                want = ck * (-1) ** mp * g
                ok = ok and abs(s.matrix[a, b] - want) < 1e-10
    verdict(10, "sphere highest-weight shift", ok)
