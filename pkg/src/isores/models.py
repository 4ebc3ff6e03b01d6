"""Surfaces of revolution and their per-mode radial Schrodinger operators.

A metric dr^2 + f(r)^2 dtheta^2 separates over angular modes.  Conjugating
the mode-j piece of the Laplacian by f^{1/2} turns it into

    -d^2/dr^2 + W_j(r),   W_j = q + nu_j^2 / f^2,
    q = f''/(2 f) - (f'/f)^2 / 4,

with nu_j the angular frequency of mode j.  All coefficient evaluators
accept real and complex r so that scaled (contour-deformed) operators can
sample them off the real axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContinuationDomainError, InvalidParameterError

CATENOID = "catenoid"
HYPERBOLIC_PLANE = "hyperbolic_plane"
EUCLIDEAN_PLANE = "euclidean_plane"
HYPERBOLIC_CYLINDER = "hyperbolic_cylinder"

MODEL_NAMES = (CATENOID, HYPERBOLIC_PLANE, EUCLIDEAN_PLANE, HYPERBOLIC_CYLINDER)

HALF_LINE_WITH_POLE = "half_line_with_pole"
FULL_LINE = "full_line"

# Distance from the catenoid warp's branch points +-ia below which complex
# evaluation is refused.
_POLE_GUARD = 1e-6


@dataclass(frozen=True)
class ModelSurface:
    """One of the built-in surfaces of revolution."""

    name: str
    neck_or_scale: float  # catenoid neck a; cylinder circumference ell; unused otherwise

    @property
    def radial_domain(self) -> str:
        if self.name in (CATENOID, HYPERBOLIC_CYLINDER):
            return FULL_LINE
        return HALF_LINE_WITH_POLE

    # -- warp -----------------------------------------------------------

    def _guard_catenoid(self, r):
        r = np.asarray(r)
        if np.iscomplexobj(r):
            a = self.neck_or_scale
            if np.any(np.abs(r - 1j * a) < _POLE_GUARD) or np.any(
                np.abs(r + 1j * a) < _POLE_GUARD
            ):
                raise ContinuationDomainError(
                    "catenoid warp evaluated at its branch point +-ia"
                )
        return r

    def warp(self, r):
        """f(r); principal branch for complex r."""
        if self.name == CATENOID:
            r = self._guard_catenoid(r)
            return np.sqrt(r * r + self.neck_or_scale**2)
        if self.name == HYPERBOLIC_PLANE:
            return np.sinh(r)
        if self.name == HYPERBOLIC_CYLINDER:
            return np.cosh(r)
        return np.asarray(r, dtype=np.result_type(r, float))

    def warp_d1(self, r):
        """f'(r)."""
        if self.name == CATENOID:
            r = self._guard_catenoid(r)
            return r / np.sqrt(r * r + self.neck_or_scale**2)
        if self.name == HYPERBOLIC_PLANE:
            return np.cosh(r)
        if self.name == HYPERBOLIC_CYLINDER:
            return np.sinh(r)
        return np.ones_like(np.asarray(r, dtype=np.result_type(r, float)))

    def warp_d2(self, r):
        """f''(r)."""
        if self.name == CATENOID:
            r = self._guard_catenoid(r)
            a2 = self.neck_or_scale**2
            return a2 / (r * r + a2) ** 1.5
        if self.name == HYPERBOLIC_PLANE:
            return np.sinh(r)
        if self.name == HYPERBOLIC_CYLINDER:
            return np.cosh(r)
        return np.zeros_like(np.asarray(r, dtype=np.result_type(r, float)))

    # -- conventions ----------------------------------------------------

    def boundary_coordinate(self, r):
        """Boundary-defining coordinate x(r) near infinity."""
        if self.name == CATENOID:
            return 1.0 / np.abs(r)
        return np.exp(-np.abs(r))

    def spectral_value(self, sigma):
        """Map the resonance coordinate sigma to the operator spectral value z."""
        sigma = np.asarray(sigma, dtype=complex)
        if self.name in (HYPERBOLIC_PLANE, HYPERBOLIC_CYLINDER):
            return sigma * (1.0 - sigma)
        if self.name == EUCLIDEAN_PLANE:
            return sigma * sigma
        return sigma

    def angular_frequency(self, j: int) -> float:
        """Frequency of the angular factor for integer mode j."""
        if self.name == HYPERBOLIC_CYLINDER:
            return 2.0 * np.pi * j / self.neck_or_scale
        return float(j)

    # -- known resonances ----------------------------------------------

    @property
    def has_oracle(self) -> bool:
        return self.name in (HYPERBOLIC_PLANE, HYPERBOLIC_CYLINDER)

    def oracle_resonances(self, j: int, re_min: float, im_max: float = 0.0):
        """Exact resonances of mode j in {Re sigma >= re_min, |Im sigma| <= im_max}.

        hyperbolic_plane: sigma = -k for k >= |j|, each simple.
        hyperbolic_cylinder: sigma = -n +- i 2*pi*j/ell, n in N (mode 0 gives
        the real points -n, as a double zero of the connection coefficient).
        """
        out = []
        if self.name == HYPERBOLIC_PLANE:
            k = abs(j)
            while -k >= re_min:
                out.append(complex(-k))
                k += 1
        elif self.name == HYPERBOLIC_CYLINDER:
            nu = self.angular_frequency(j)
            if abs(nu) <= im_max + 1e-12:
                n = 0
                while -n >= re_min:
                    if j == 0:
                        out.append(complex(-n))
                    else:
                        out.append(complex(-n, nu))
                        out.append(complex(-n, -nu))
                    n += 1
        else:
            raise InvalidParameterError(f"no resonance oracle for {self.name}")
        return sorted(out, key=lambda s: (s.real, s.imag))


def make_model(name: str, **params) -> ModelSurface:
    """Construct a built-in model.

    catenoid takes a != 0 (neck radius, default 1); hyperbolic_cylinder takes
    ell > 0 (cross-section circumference, default 2*pi).
    """
    if name not in MODEL_NAMES:
        raise InvalidParameterError(f"unknown model {name!r}")
    if name == CATENOID:
        a = float(params.pop("a", 1.0))
        if a == 0.0:
            raise InvalidParameterError("catenoid neck parameter a must be nonzero")
        scale = abs(a)
    elif name == HYPERBOLIC_CYLINDER:
        ell = float(params.pop("ell", 2.0 * np.pi))
        if ell <= 0.0:
            raise InvalidParameterError("cylinder circumference ell must be positive")
        scale = ell
    else:
        scale = 0.0
    if params:
        raise InvalidParameterError(f"unexpected parameters for {name}: {sorted(params)}")
    return ModelSurface(name=name, neck_or_scale=scale)


REGULAR_POLE = "regular_pole"
DECAY_AT_MINUS_INFINITY = "decay_at_minus_infinity"


@dataclass(frozen=True)
class RadialOperator:
    """The conjugated mode operator -d^2/dr^2 + W_j(r)."""

    model: ModelSurface
    mode: int
    frequency: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "frequency", self.model.angular_frequency(self.mode))

    @property
    def left_bc(self) -> str:
        if self.model.radial_domain == HALF_LINE_WITH_POLE:
            return REGULAR_POLE
        return DECAY_AT_MINUS_INFINITY

    @property
    def spectral_shift(self) -> float:
        """Constant part of W_j at infinity (continuum threshold in z)."""
        if self.model.name in (HYPERBOLIC_PLANE, HYPERBOLIC_CYLINDER):
            return 0.25
        return 0.0

    def centrifugal_exponent(self) -> float:
        """p with regular solution ~ r^p at a coordinate pole (half-line models)."""
        return abs(self.mode) + 0.5

    def base_potential(self, r):
        """q(r), the mode-independent part of W_j."""
        name = self.model.name
        if name == CATENOID:
            self.model._guard_catenoid(np.asarray(r))
            a2 = self.model.neck_or_scale**2
            s = np.asarray(r) ** 2 + a2
            return (2.0 * a2 - np.asarray(r) ** 2) / (4.0 * s * s)
        if name == HYPERBOLIC_PLANE:
            # 1/2 - coth(r)^2/4, written to stay accurate for complex r
            return 0.25 - 0.25 / np.sinh(r) ** 2
        if name == HYPERBOLIC_CYLINDER:
            return 0.25 + 0.25 / np.cosh(r) ** 2
        return -0.25 / np.asarray(r) ** 2

    def potential(self, r):
        """W_j(r) = q(r) + nu_j^2 / f(r)^2."""
        name = self.model.name
        nu2 = self.frequency**2
        if name == CATENOID:
            self.model._guard_catenoid(np.asarray(r))
            a2 = self.model.neck_or_scale**2
            s = np.asarray(r) ** 2 + a2
            return (2.0 * a2 - np.asarray(r) ** 2) / (4.0 * s * s) + nu2 / s
        if name == HYPERBOLIC_PLANE:
            return 0.25 + (nu2 - 0.25) / np.sinh(r) ** 2
        if name == HYPERBOLIC_CYLINDER:
            return 0.25 + (nu2 + 0.25) / np.cosh(r) ** 2
        return (nu2 - 0.25) / np.asarray(r) ** 2

    def tail_potential_coefficient(self) -> float:
        """U0 in W_j(r) - spectral_shift ~ U0 * e^{-2r} (hyperbolic models)."""
        nu2 = self.frequency**2
        if self.model.name == HYPERBOLIC_PLANE:
            return 4.0 * (nu2 - 0.25)
        if self.model.name == HYPERBOLIC_CYLINDER:
            return 4.0 * (nu2 + 0.25)
        raise InvalidParameterError("exponential tail only for hyperbolic models")

    def tail_series_coefficient(self, k: int) -> float:
        """U_k in W_j(r) - shift = sum_k U_k e^{-2kr} (hyperbolic models)."""
        nu2 = self.frequency**2
        if self.model.name == HYPERBOLIC_PLANE:
            # csch^2 r = 4 sum_{k>=1} k e^{-2kr}
            return 4.0 * k * (nu2 - 0.25)
        if self.model.name == HYPERBOLIC_CYLINDER:
            # sech^2 r = 4 sum_{k>=1} (-1)^{k+1} k e^{-2kr}
            return 4.0 * k * (nu2 + 0.25) * (-1.0) ** (k + 1)
        raise InvalidParameterError("exponential tail only for hyperbolic models")


def mode_operator(model: ModelSurface, j: int) -> RadialOperator:
    """Radial Schrodinger operator of angular mode j."""
    return RadialOperator(model=model, mode=int(j))


def spectral_value(model: ModelSurface, sigma):
    """z = Phi(sigma) for the model's spectral-parameter convention."""
    return model.spectral_value(sigma)
