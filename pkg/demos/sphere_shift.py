"""Highest-weight shift on the sphere: the compact sanity model.

Multiplication by (x1 + i x2)^k raises the azimuthal index of every
spherical harmonic by exactly k, so its matrix in the harmonic basis is
strictly triangular in m and nilpotent on any truncation. This is the
compact analogue of the one-signed shift potentials on surfaces of
revolution.
"""

import numpy as np

from isores import (
    multiplication_matrix,
    nilpotency_power,
    phase_conjugation_residual,
    shift_verify,
)


def main():
    for k in (1, 2, 3):
        s = multiplication_matrix(k, 6)
        rep = shift_verify(s)
        p = nilpotency_power(s)
        nil = np.max(np.abs(np.linalg.matrix_power(s.matrix, p)))
        phase = phase_conjugation_residual(s, 0.7)
        print(f"k = {k}: dimension {s.dimension}, "
              f"forbidden entries <= {rep['max_violation']:.1e}, "
              f"S^{p} max entry {nil:.1e}, "
              f"rotation equivariance residual {phase:.1e}")


if __name__ == "__main__":
    main()
