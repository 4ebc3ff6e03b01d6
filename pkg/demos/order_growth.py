"""Resonance order growth from a shared eigenvalue across two modes.

Two Fourier modes of the hyperbolic plane share a box eigenvalue. A shift
potential couples them one way; when the pairing integral of the potential
against the two eigenfunctions is nonzero, the shared eigenvalue becomes a
defective (Jordan) eigenvalue of order 2 without moving. Cancelling the
pairing with a second bump restores order 1, again without moving the
eigenvalue.
"""

from isores import (
    homogeneous_component,
    jordan_structure,
    make_model,
    order_growth_fixture,
    order_pairing,
    potential_sum,
    restrict_to_cluster,
)


def report(tag, fix):
    R, k = restrict_to_cluster(fix["matrix"], fix["eigenvalue"], 0.05)
    rep = jordan_structure(R, fix["eigenvalue"])
    print(f"{tag}: eigenvalue {fix['eigenvalue']:.10f}, "
          f"pairing {abs(fix['pairing']):.3e}, "
          f"alg mult {rep.algebraic_multiplicity}, "
          f"geom mult {rep.geometric_multiplicity}, order {rep.order}")
    return rep


def main():
    m = make_model("hyperbolic_plane")
    comp = homogeneous_component(2, "bump", center=1.2, width=0.8, amplitude=3.0)
    fix = order_growth_fixture(m, 1, 2, comp, 8.0, 160)
    report("coupled", fix)

    far = homogeneous_component(2, "bump", center=2.4, width=1.0, amplitude=0.5)
    p_far = order_pairing(far, fix["nodes"], fix["psi_a"], fix["psi_b"],
                          fix["weights"], 1, 3)
    mix = potential_sum(
        [comp, far.scaled(-complex(fix["pairing"]).real / p_far.real)]
    ).components[0]
    ctrl = order_growth_fixture(m, 1, 2, mix, 8.0, 160)
    report("control", ctrl)
    drift = abs(ctrl["eigenvalue"] - fix["eigenvalue"])
    print(f"eigenvalue drift between the two potentials: {drift:.2e}")


if __name__ == "__main__":
    main()
