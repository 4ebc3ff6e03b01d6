"""Experiment runner: config parsing, pipelines, persistence, plotting.

Usage:
    isores run <config.json> [--out DIR] [--threads K] [--seed N]
    isores check <config.json> [--out DIR] [--threads K] [--seed N]

`check` additionally asserts the experiment's acceptance thresholds and
exits 1 when they fail.  Exit codes: 0 success, 1 failed check, 2 config
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, compactspec, determinants, potentials, resonances, sphere
from .errors import ConfigError, IsoresError
from .grid import Discretization
from .models import make_model

EXPERIMENTS = (
    "free_resonances",
    "isoresonance",
    "counterexample",
    "persistence",
    "order_growth",
    "weyl_bounds",
    "mode_decay",
    "determinant_scan",
    "sphere_shift",
)

CSV_HEADER = [
    "model", "experiment", "j_min", "j_max", "theta", "n", "t",
    "re_sigma", "im_sigma", "multiplicity", "order", "displacement",
]


def _require(cfg, path, key, types=None):
    if key not in cfg:
        raise ConfigError(f"{path}.{key}", "missing required field")
    val = cfg[key]
    if types is not None and not isinstance(val, types):
        raise ConfigError(f"{path}.{key}", f"expected {types}, got {type(val).__name__}")
    return val


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(str(path), f"cannot parse: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError(str(path), "top level must be an object")
    version = _require(cfg, "", "schema_version", int)
    if version != 1:
        raise ConfigError("schema_version", f"unsupported version {version}")
    exp = _require(cfg, "", "experiment", str)
    if exp not in EXPERIMENTS:
        raise ConfigError("experiment", f"unknown experiment {exp!r}")
    return cfg


def config_hash(cfg: dict) -> str:
    canon = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _build_model(cfg):
    block = _require(cfg, "", "model", dict)
    name = _require(block, "model", "name", str)
    params = {k: v for k, v in block.items() if k != "name"}
    return make_model(name, **params)


def _build_potential(cfg):
    block = cfg.get("potential")
    if not block:
        return None
    path = "potential"
    if "family" in block and block["family"] == "geometric":
        v = potentials.geometric_family(
            rho=float(_require(block, path, "rho", (int, float))),
            m_max=int(block.get("m_max", 8)),
            a=float(block.get("a", 1.0)),
            amplitude=float(block.get("amplitude", 1.0)),
        )
    elif "components" in block:
        comps = []
        for i, c in enumerate(block["components"]):
            kind = _require(c, f"{path}.components[{i}]", "kind", str)
            m = int(_require(c, f"{path}.components[{i}]", "m", int))
            params = {k: v for k, v in c.items() if k not in ("kind", "m")}
            comps.append(potentials.homogeneous_component(m, kind, **params))
        v = potentials.potential_sum(comps)
    else:
        raise ConfigError(path, "need either family=geometric or components")
    if "truncate_m" in block:
        v = potentials.truncate(
            v, int(block["truncate_m"]), float(block.get("r_cut", 16.0))
        )
    if block.get("symmetrize", False):
        v = potentials.symmetrize(v)
    return v


def _numerics(cfg):
    num = cfg.get("numerics", {})
    if not isinstance(num, dict):
        raise ConfigError("numerics", "must be an object")
    return num


# ---------------------------------------------------------------------------
# experiment pipelines: each returns (rows, summary, check_passed)
# ---------------------------------------------------------------------------


def _entry_rows(model, exp, rs, theta="", n="", t="", displacement=""):
    rows = []
    for e in rs.entries:
        rows.append([
            model.name, exp, rs.j_min, rs.j_max, theta, n, t,
            f"{e.sigma.real:.12g}", f"{e.sigma.imag:.12g}",
            e.multiplicity, e.order, displacement,
        ])
    return rows


def _scaling_kwargs(num):
    kw = {}
    for key in ("r0", "r1", "r_max", "scheme", "stability_tol", "ray_margin", "ramp"):
        if key in num:
            kw[key] = num[key]
    return kw


def _run_free(model, cfg, rng):
    num = _numerics(cfg)
    region = tuple(num.get("region", (-3.6, 0.4, -0.4, 0.4)))
    if model.has_oracle:
        j_min = int(num.get("j_min", 0))
        j_max = int(num.get("j_max", 0))
        rs = resonances.jost_union(model, range(j_min, j_max + 1), region,
                                   tol=float(num.get("tol", 1e-6)))
        oracle_entries = []
        for j in range(j_min, j_max + 1):
            oracle_entries.extend(
                model.oracle_resonances(j, region[0], im_max=region[3])
            )
        want = sorted(
            (s for s in oracle_entries
             if region[0] <= s.real <= region[1] and region[2] <= s.imag <= region[3]),
            key=lambda s: (s.real, s.imag),
        )
        got = sorted(rs.locations(), key=lambda s: (s.real, s.imag))
        tol = float(num.get("tol", 1e-6))
        matched = bool(
            want
            and got
            and all(min(abs(w - g) for g in got) < tol for w in want)
            and all(min(abs(g - w) for w in want) < tol for g in got)
        )
        summary = {
            "found": [[s.real, s.imag] for s in got],
            "oracle": [[s.real, s.imag] for s in want],
            "oracle_matched": matched,
        }
        return _entry_rows(model, "free_resonances", rs), summary, matched, (rs, None)
    rs = resonances.find_resonances_scaling(
        model,
        int(num.get("j_min", -2)), int(num.get("j_max", 2)),
        None,
        num.get("thetas", [0.3, 0.4]), num.get("ns", [200, 280]),
        region, **_scaling_kwargs(num),
    )
    summary = {"found": [[e.sigma.real, e.sigma.imag] for e in rs.entries]}
    return _entry_rows(model, "free_resonances", rs), summary, True, (rs, None)


def _run_isoresonance(model, cfg, rng, symmetrized=False):
    num = _numerics(cfg)
    v = _build_potential(cfg)
    if v is None:
        raise ConfigError("potential", "isoresonance experiments need a potential")
    if symmetrized and not any(c.weight < 0 for c in v.components):
        v = potentials.symmetrize(v)
    region = tuple(num.get("region", (0.02, 3.0, 0.002, 1.0)))
    args = (
        int(num.get("j_min", -6)), int(num.get("j_max", 6)),
    )
    thetas = num.get("thetas", [0.3, 0.4])
    ns = num.get("ns", [300, 500])
    kw = _scaling_kwargs(num)
    free = resonances.find_resonances_scaling(
        model, *args, None, thetas, ns, region, **kw
    )
    pert = resonances.find_resonances_scaling(
        model, *args, v, thetas, ns, region, **kw
    )
    rep = resonances.compare_sets(free, pert, tol=float(num.get("match_tol", 1e-3)))
    exp = "counterexample" if symmetrized else "isoresonance"
    rows = _entry_rows(model, exp, free, theta=";".join(map(str, thetas)),
                       n=";".join(map(str, ns)), t=0)
    rows += _entry_rows(model, exp, pert, theta=";".join(map(str, thetas)),
                        n=";".join(map(str, ns)), t=1,
                        displacement=f"{rep.max_displacement:.3e}")
    summary = {
        "free_count": len(free),
        "perturbed_count": len(pert),
        "max_displacement": rep.max_displacement,
        "unmatched_free": len(rep.unmatched_left),
        "unmatched_perturbed": len(rep.unmatched_right),
        "multiplicity_mismatches": len(rep.multiplicity_mismatches),
        "one_signed": v.one_signed,
    }
    if symmetrized:
        ok = rep.max_displacement > 1e-4 or rep.unmatched_left or rep.unmatched_right
        ok = bool(ok)
    else:
        ok = (
            rep.max_displacement < 1e-8
            and not rep.unmatched_left
            and not rep.unmatched_right
            and not rep.multiplicity_mismatches
        )
    return rows, summary, ok, (free, pert)


def _run_persistence(model, cfg, rng):
    num = _numerics(cfg)
    v = _build_potential(cfg)
    region = tuple(num.get("region", (0.02, 3.0, 0.002, 1.0)))
    t_grid = num.get("t_grid", [0.0, 0.25, 0.5, 0.75, 1.0])
    base, curve = resonances.persistence_sweep(
        model, int(num.get("j_min", -6)), int(num.get("j_max", 6)), v,
        t_grid, num.get("thetas", [0.3, 0.4]), num.get("ns", [300, 500]),
        region, **_scaling_kwargs(num),
    )
    rows = []
    for t, disp, ul, ur in curve:
        rows.append([model.name, "persistence", num.get("j_min", -6),
                     num.get("j_max", 6), "", "", t, "", "", "", "",
                     f"{disp:.3e}"])
    flat = all(d < 1e-8 and ul == 0 and ur == 0 for _, d, ul, ur in curve)
    summary = {"curve": [[t, d, ul, ur] for t, d, ul, ur in curve],
               "flat_below_1e8": bool(flat), "base_count": len(base)}
    return rows, summary, bool(flat), (base, None)


def _run_order_growth(model, cfg, rng):
    num = _numerics(cfg)
    comp = potentials.homogeneous_component(
        int(num.get("m", 1)), "bump",
        center=float(num.get("bump_center", 1.2)),
        width=float(num.get("bump_width", 0.8)),
        amplitude=float(num.get("bump_amplitude", 0.5)),
    )
    far = potentials.homogeneous_component(
        int(num.get("m", 1)), "bump",
        center=float(num.get("control_center", 2.4)),
        width=float(num.get("control_width", 1.0)),
        amplitude=0.5,
    )
    j = int(num.get("j", 1))
    n = int(num.get("n", 160))
    r_box = float(num.get("r_box", 8.0))
    fix = resonances.order_growth_fixture(model, j, comp.weight, comp, r_box, n)
    # zero-pairing control: cancel the pairing of the two bumps against the
    # same pair of eigenfunctions, keeping the coupling itself nonzero
    p_far = resonances.order_pairing(
        far, fix["nodes"], fix["psi_a"], fix["psi_b"], fix["weights"],
        j, j + comp.weight,
    )
    mix = potentials.potential_sum(
        [comp, far.scaled(-complex(fix["pairing"]).real / p_far.real)]
    ).components[0]
    ctrl = resonances.order_growth_fixture(model, j, mix.weight, mix, r_box, n)
    from . import linalg

    radius = float(num.get("cluster_radius", 0.05))
    rep = linalg.jordan_structure(
        linalg.restrict_to_cluster(fix["matrix"], fix["eigenvalue"], radius)[0],
        fix["eigenvalue"],
    )
    rep_ctrl = linalg.jordan_structure(
        linalg.restrict_to_cluster(ctrl["matrix"], ctrl["eigenvalue"], radius)[0],
        ctrl["eigenvalue"],
    )
    ok = (
        abs(fix["pairing"]) > 1e-8
        and rep.order == 2
        and rep.algebraic_multiplicity == 2
        and abs(ctrl["pairing"]) < 1e-8
        and rep_ctrl.order == 1
    )
    summary = {
        "pairing": abs(fix["pairing"]),
        "order": rep.order,
        "algebraic_multiplicity": rep.algebraic_multiplicity,
        "control_pairing": abs(ctrl["pairing"]),
        "control_order": rep_ctrl.order,
        "eigenvalue": fix["eigenvalue"],
    }
    rows = [[model.name, "order_growth", j, j + comp.weight, "", n, "",
             f"{fix['eigenvalue']:.12g}", "0", rep.algebraic_multiplicity,
             rep.order, ""]]
    return rows, summary, bool(ok), None


def _run_weyl(model, cfg, rng):
    num = _numerics(cfg)
    cap = compactspec.cap_from_model(
        model, float(num.get("R", 1.0)),
        collar=bool(num.get("collar", False)),
        collar_width=float(num.get("collar_width", 0.0)),
    )
    j_values = num.get("j_values", list(range(0, 31)))
    n = int(num.get("n", 4000))
    report = compactspec.weyl_bound_check(cap, j_values, n)
    rows = [[model.name, "weyl_bounds", j, j, "", n, "", f"{mu:.12g}", "0",
             "", "", ""] for j, mu in sorted(report["mu1"].items())]
    summary = {k: v for k, v in report.items() if k != "mu1"}
    summary["mu1"] = {str(j): mu for j, mu in report["mu1"].items()}
    return rows, summary, bool(report["passed"]), None


def _run_mode_decay(model, cfg, rng):
    num = _numerics(cfg)
    sigma = complex(num.get("sigma_re", 2.0), num.get("sigma_im", 0.0))
    cutoff = float(num.get("cutoff", 3.0))
    n = int(num.get("n", 600))
    slope_j = num.get("slope_j_values", list(range(5, 41)))
    sup_j = num.get("sup_j_values", list(range(0, 41)))
    rep = compactspec.mode_resolvent_decay(model, sigma, cutoff, slope_j, n=n)
    rep_sup = compactspec.mode_resolvent_decay(model, sigma, cutoff, sup_j, n=n)
    ok = (
        -2.2 <= rep["fitted_slope"] <= -1.8
        and abs(rep_sup["weighted_sup_at"]) <= 5
        and np.isfinite(rep_sup["weighted_sup"])
    )
    norms = dict(rep_sup["norms"])
    norms.update(rep["norms"])
    rows = [[model.name, "mode_decay", j, j, "", n, "",
             f"{v:.6g}", "", "", "", ""] for j, v in sorted(norms.items())]
    summary = {
        "fitted_slope": rep["fitted_slope"],
        "weighted_sup_at": rep_sup["weighted_sup_at"],
        "weighted_sup": rep_sup["weighted_sup"],
    }
    return rows, summary, bool(ok), None


def _run_determinant_scan(model, cfg, rng):
    num = _numerics(cfg)
    v = _build_potential(cfg)
    if v is None:
        v = potentials.geometric_family(0.5, 4)
    j_min, j_max = int(num.get("j_min", -3)), int(num.get("j_max", 3))
    d = Discretization(
        num.get("scheme", "finite_difference_2nd"), int(num.get("n", 80)),
        -float(num.get("r_max", 12.0)), float(num.get("r_max", 12.0)),
    )
    n_sigma = int(num.get("n_sigma", 20))
    sigmas = [
        complex(rng.uniform(0.3, 4.0), rng.uniform(-2.0, -0.3))
        for _ in range(n_sigma)
    ]
    from .grid import assemble_coupled

    free = assemble_coupled(model, None, j_min, j_max, None, d)
    coupled = assemble_coupled(model, None, j_min, j_max, v, d)
    worst = 0.0
    p_values = num.get("p_values", [1, 2, 3])
    for s in sigmas:
        vals = [
            determinants.ls_determinant(
                model, j_min, j_max, v, s, d, p=p, free=free, coupled=coupled
            )
            for p in p_values
        ]
        worst = max(worst, max(abs(val - 1.0) for val in vals))
    zero_counts = []
    fn = determinants.DetFunction(
        2,
        lambda s: determinants.ls_kernel(
            model, j_min, j_max, v, s, d, free=free, coupled=coupled
        ),
    )
    for _ in range(int(num.get("n_contours", 5))):
        center = complex(rng.uniform(0.5, 3.0), rng.uniform(-1.5, -0.5))
        zero_counts.append(
            determinants.count_zeros(fn, center, 0.2, q_nodes=64)
        )
    ok = worst < 1e-12 and all(c == 0 for c in zero_counts)
    summary = {"max_det_deviation": worst, "zero_counts": zero_counts,
               "p_values": p_values}
    rows = [[model.name, "determinant_scan", j_min, j_max, "", d.n, "",
             "", "", "", "", f"{worst:.3e}"]]
    return rows, summary, bool(ok), None


def _run_sphere_shift(model, cfg, rng):
    num = _numerics(cfg)
    results = {}
    ok = True
    rows = []
    for k in num.get("k_values", [1, 2, 3]):
        s = sphere.multiplication_matrix(int(k), int(num.get("l_max", 8)))
        rep = sphere.shift_verify(s)
        p = sphere.nilpotency_power(s)
        nil = float(np.max(np.abs(np.linalg.matrix_power(s.matrix, p))))
        phase = sphere.phase_conjugation_residual(s, 0.7)
        results[str(k)] = {
            "max_violation": rep["max_violation"],
            "triangular_in_m": rep["triangular_in_m"],
            "nilpotency_residual": nil,
            "phase_residual": phase,
        }
        ok = ok and rep["max_violation"] < 1e-12 and nil < 1e-10 and phase < 1e-12
        rows.append(["sphere", "sphere_shift", "", "", "", s.dimension, "",
                     "", "", "", "", f"{rep['max_violation']:.3e}"])
    return rows, results, bool(ok), None


# ---------------------------------------------------------------------------
# persistence layer
# ---------------------------------------------------------------------------


def _write_outputs(out_dir: Path, cfg, rows, summary, passed, sets):
    out_dir.mkdir(parents=True, exist_ok=True)
    h = config_hash(cfg)
    header_note = f"# isores {__version__} config={h}"
    out = cfg.get("output", {})
    csv_path = out_dir / out.get("csv", "results.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        fh.write(header_note + "\n")
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        writer.writerows(rows)
    payload = {
        "tool_version": __version__,
        "config_hash": h,
        "experiment": cfg["experiment"],
        "passed": bool(passed),
        "summary": summary,
    }
    json_path = out_dir / out.get("json", "summary.json")
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if out.get("svg") and sets is not None:
        _write_svg(out_dir / out["svg"], cfg, sets)
    return csv_path, json_path


def _write_svg(path: Path, cfg, sets):
    free, pert = sets
    width, height = 640, 480
    pts = list(free.locations()) + (list(pert.locations()) if pert else [])
    if pts:
        re = [p.real for p in pts]
        im = [p.imag for p in pts]
        re0, re1 = min(re) - 0.5, max(re) + 0.5
        im0, im1 = min(im) - 0.5, max(im) + 0.5
    else:
        re0, re1, im0, im1 = -4.0, 1.0, -1.0, 1.0

    def sx(x):
        return 40 + (x - re0) / (re1 - re0) * (width - 80)

    def sy(y):
        return height - 40 - (y - im0) / (im1 - im0) * (height - 80)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{sx(re0)}" y1="{sy(0)}" x2="{sx(re1)}" y2="{sy(0)}" '
        'stroke="#999" stroke-width="1"/>',
        f'<line x1="{sx(0)}" y1="{sy(im0)}" x2="{sx(0)}" y2="{sy(im1)}" '
        'stroke="#999" stroke-width="1"/>',
    ]
    num = cfg.get("numerics", {})
    for th in num.get("thetas", []):
        ang = 2.0 * float(th)
        x1, y1 = sx(0), sy(0)
        rr = max(re1 - re0, im1 - im0)
        x2, y2 = sx(rr * np.cos(ang)), sy(rr * np.sin(ang))
        parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            'stroke="#d88" stroke-dasharray="4 3"/>'
        )
    for e in free.entries:
        parts.append(
            f'<circle cx="{sx(e.sigma.real):.1f}" cy="{sy(e.sigma.imag):.1f}" '
            'r="5" fill="none" stroke="black"/>'
        )
    if pert is not None:
        for e in pert.entries:
            x, y = sx(e.sigma.real), sy(e.sigma.imag)
            parts.append(
                f'<path d="M {x-4:.1f} {y-4:.1f} L {x+4:.1f} {y+4:.1f} '
                f'M {x-4:.1f} {y+4:.1f} L {x+4:.1f} {y-4:.1f}" stroke="blue"/>'
            )
    parts.append("</svg>")
    path.write_text("\n".join(parts), encoding="utf-8")


_RUNNERS = {
    "free_resonances": _run_free,
    "isoresonance": lambda m, c, r: _run_isoresonance(m, c, r, symmetrized=False),
    "counterexample": lambda m, c, r: _run_isoresonance(m, c, r, symmetrized=True),
    "persistence": _run_persistence,
    "order_growth": _run_order_growth,
    "weyl_bounds": _run_weyl,
    "mode_decay": _run_mode_decay,
    "determinant_scan": _run_determinant_scan,
    "sphere_shift": _run_sphere_shift,
}


def run(config_path: str, out_dir: str = ".", check: bool = False,
        seed: int = 0, threads: int = 0) -> int:
    """Execute one experiment config; returns the process exit code."""
    limiter = None
    if threads > 0:
        try:
            from threadpoolctl import threadpool_limits

            limiter = threadpool_limits(limits=threads)
        except ImportError:
            pass
    try:
        cfg = load_config(config_path)
        rng = np.random.default_rng(seed)
        if cfg["experiment"] == "sphere_shift":
            model = None
        else:
            model = _build_model(cfg)
        rows, summary, passed, sets = _RUNNERS[cfg["experiment"]](model, cfg, rng)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except IsoresError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    finally:
        if limiter is not None:
            limiter.unregister()
    _write_outputs(Path(out_dir), cfg, rows, summary, passed, sets)
    status = "pass" if passed else "fail"
    print(f"{cfg['experiment']}: {status}")
    if check and not passed:
        return 1
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="isores", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in ("run", "check"):
        p = sub.add_parser(cmd)
        p.add_argument("config")
        p.add_argument("--out", default=".")
        p.add_argument("--threads", type=int, default=0)
        p.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    return run(args.config, out_dir=args.out, check=args.command == "check",
               seed=args.seed, threads=args.threads)


if __name__ == "__main__":
    sys.exit(main())
