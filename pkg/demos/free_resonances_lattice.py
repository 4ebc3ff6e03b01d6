"""Free resonances of the hyperbolic plane and cylinder via Jost functions.

The radial Jost function of each Fourier mode vanishes exactly at the
resonances. For the hyperbolic plane the mode-0 zeros are the negative
integers together with 0; the full surface picks up multiplicity 2k+1 at
sigma = -k from the modes |j| <= k. For the cylinder of circumference
2*pi the zeros fill the lattice -N + iZ.
"""

import numpy as np

from isores import jost_union, make_model


def main():
    m = make_model("hyperbolic_plane")
    region = (-3.6, 0.4, -0.4, 0.4)
    print("hyperbolic plane, modes |j| <= 3, window Re in [-3.6, 0.4]:")
    rs = jost_union(m, range(-3, 4), region)
    locs = rs.locations()
    for k in range(4):
        hits = np.count_nonzero(np.abs(locs - (-k)) < 1e-6)
        print(f"  sigma = {-k:2d}: found {hits} entries (expected {2 * k + 1})")

    cyl = make_model("hyperbolic_cylinder", ell=2.0 * np.pi)
    region = (-1.5, 0.5, -1.5, 1.5)
    print("\ncylinder ell = 2 pi, modes |j| <= 1:")
    rs = jost_union(cyl, range(-1, 2), region)
    for e in sorted(rs.entries, key=lambda e: (e.sigma.real, e.sigma.imag)):
        print(f"  sigma = {e.sigma.real:+.6f} {e.sigma.imag:+.6f}i "
              f"(mult {e.multiplicity}, order {e.order})")
    print("expected lattice points: 0, -1, +-i, -1 +- i")


if __name__ == "__main__":
    main()
