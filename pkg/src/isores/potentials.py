"""Homogeneous shift-potential components, sums, truncations and controls.

A component of weight m acts by multiplication with V_m(r) e^{i m theta},
mapping angular mode j to mode j+m.  Sums whose weights share one sign make
every coupled assembly strictly block triangular; symmetrizing destroys that
and is the adversarial control.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .errors import InvalidParameterError

_SECTOR_GUARD = 1e-6


@dataclass(frozen=True)
class ModePotential:
    """One S^1-homogeneous multiplication component V_m(r) e^{i m theta}."""

    weight: int
    profile: Callable
    sup_norm: float
    support_radius: Optional[float] = None  # None means unbounded support
    continuable: bool = False
    label: str = ""

    def scaled(self, factor: float) -> "ModePotential":
        prof = self.profile
        return replace(
            self,
            profile=lambda r, _p=prof, _f=factor: _f * np.asarray(_p(r)),
            sup_norm=abs(factor) * self.sup_norm,
            label=f"{factor}*{self.label}" if self.label else "",
        )


def bump_profile(center: float, width: float, amplitude: float):
    """C^infinity bump: amplitude at center, support [center-width, center+width]."""

    def prof(r):
        r = np.asarray(r, dtype=float)
        u = (r - center) / width
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        ui = u[inside]
        out[inside] = amplitude * np.exp(1.0 - 1.0 / (1.0 - ui * ui))
        return out

    return prof


def homogeneous_component(m: int, kind: str, **params) -> ModePotential:
    """Built-in weight-m profiles.

    kind:
      bump(center, width, amplitude)          compactly supported, real line only
      rational_decay(amplitude, power)        amplitude*(1+r^2)^(-power/2), sector analytic
      geometric_catenoid(rho, a, amplitude)   amplitude*rho^(m-1)*(r^2+a^2)^(-1/2)
    """
    m = int(m)
    if m == 0:
        raise InvalidParameterError(
            "weight 0 is S^1-invariant and excluded from shift potentials"
        )
    if kind == "bump":
        center = float(params["center"])
        width = float(params["width"])
        amplitude = float(params["amplitude"])
        if width <= 0:
            raise InvalidParameterError("bump width must be positive")
        return ModePotential(
            weight=m,
            profile=bump_profile(center, width, amplitude),
            sup_norm=abs(amplitude),
            support_radius=abs(center) + width,
            continuable=False,
            label=f"bump(m={m})",
        )
    if kind == "rational_decay":
        amplitude = float(params["amplitude"])
        power = float(params["power"])
        if power <= 0:
            raise InvalidParameterError("decay power must be positive")

        def prof(r, _a=amplitude, _p=power):
            r = np.asarray(r)
            if np.iscomplexobj(r) and (
                np.any(np.abs(r - 1j) < _SECTOR_GUARD)
                or np.any(np.abs(r + 1j) < _SECTOR_GUARD)
            ):
                from .errors import ContinuationDomainError

                raise ContinuationDomainError("rational profile at its branch point")
            return _a * (1.0 + r * r) ** (-0.5 * _p)

        return ModePotential(
            weight=m,
            profile=prof,
            sup_norm=abs(amplitude),
            support_radius=None,
            continuable=True,
            label=f"rational(m={m})",
        )
    if kind == "geometric_catenoid":
        rho = float(params["rho"])
        a = float(params.get("a", 1.0))
        amplitude = float(params.get("amplitude", 1.0))
        if not (0.0 <= rho < 1.0):
            raise InvalidParameterError("geometric ratio rho must lie in [0, 1)")
        if m < 0:
            raise InvalidParameterError("the geometric family has positive weights")
        coeff = amplitude * rho ** (m - 1)

        def prof(r, _c=coeff, _a=a):
            r = np.asarray(r)
            return _c / np.sqrt(r * r + _a * _a)

        return ModePotential(
            weight=m,
            profile=prof,
            sup_norm=abs(coeff) / abs(a),
            support_radius=None,
            continuable=True,
            label=f"geometric(m={m},rho={rho})",
        )
    raise InvalidParameterError(f"unknown profile kind {kind!r}")


def geometric_family(rho: float, m_max: int, a: float = 1.0,
                     amplitude: float = 1.0) -> "PotentialSum":
    """First m_max weights of the closed-form geometric potential."""
    comps = [
        homogeneous_component(m, "geometric_catenoid", rho=rho, a=a, amplitude=amplitude)
        for m in range(1, m_max + 1)
    ]
    return potential_sum(comps)


def geometric_tail_bound(rho: float, m_kept: int, a: float = 1.0,
                         amplitude: float = 1.0) -> float:
    """sup-norm of the discarded weights: x_max * rho^m_kept / (1 - rho)."""
    return abs(amplitude) / abs(a) * rho**m_kept / (1.0 - rho)


@dataclass(frozen=True)
class PotentialSum:
    """A finite family of homogeneous components with its summability certificate."""

    components: tuple
    summability: float
    one_signed: bool

    def scaled(self, factor: float) -> "PotentialSum":
        if factor == 0.0:
            return PotentialSum((), 0.0, True)
        return PotentialSum(
            tuple(c.scaled(factor) for c in self.components),
            abs(factor) * self.summability,
            self.one_signed,
        )

    @property
    def weights(self):
        return sorted(c.weight for c in self.components)


def potential_sum(components) -> PotentialSum:
    """Combine components; duplicate weights are merged by profile addition."""
    merged = {}
    for comp in components:
        if comp.weight in merged:
            prev = merged[comp.weight]
            p1, p2 = prev.profile, comp.profile
            supp = None
            if prev.support_radius is not None and comp.support_radius is not None:
                supp = max(prev.support_radius, comp.support_radius)
            merged[comp.weight] = ModePotential(
                weight=comp.weight,
                profile=lambda r, _a=p1, _b=p2: np.asarray(_a(r)) + np.asarray(_b(r)),
                sup_norm=prev.sup_norm + comp.sup_norm,
                support_radius=supp,
                continuable=prev.continuable and comp.continuable,
                label=f"{prev.label}+{comp.label}",
            )
        else:
            merged[comp.weight] = comp
    comps = tuple(merged[w] for w in sorted(merged))
    summability = float(sum(c.sup_norm for c in comps))
    signs = {np.sign(c.weight) for c in comps}
    return PotentialSum(comps, summability, len(signs) <= 1)


def _radial_cutoff(r_cut: float, a: float = 1.0):
    """Smooth cutoff: 1 on [-r_cut, r_cut], 0 outside [-2 r_cut, 2 r_cut].

    C^infinity on the real axis (exponential blend), so spectral
    discretizations of the truncated potential converge at full rate.  For
    complex arguments it uses the sector-analytic radius sqrt(r^2 + a^2)
    and plateau-clamps by real part; core-supported truncations are only
    ever sampled at real points, where the clamp is exact.
    """
    b = np.hypot(r_cut, a)
    c = np.hypot(2.0 * r_cut, a)

    def chi(r):
        r = np.asarray(r)
        rho = np.sqrt(r * r + a * a)
        u = (rho - b) / (c - b)
        if np.iscomplexobj(r):
            u = np.where(np.real(u) < 0.0, 0.0, np.where(np.real(u) > 1.0, 1.0, u))
            ur = np.real(u)
        else:
            u = np.clip(u, 0.0, 1.0)
            ur = u
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            ea = np.where(ur > 0.0, np.exp(-1.0 / np.maximum(ur, 1e-300)), 0.0)
            eb = np.where(ur < 1.0, np.exp(-1.0 / np.maximum(1.0 - ur, 1e-300)), 0.0)
        return 1.0 - ea / (ea + eb)

    return chi


def truncate(v: PotentialSum, m_keep: int, r_cut: float) -> PotentialSum:
    """Keep weights with |m| <= m_keep and apply the smooth radial cutoff."""
    if m_keep < 1:
        raise InvalidParameterError("must keep at least weight 1")
    if r_cut <= 0:
        raise InvalidParameterError("cutoff radius must be positive")
    chi = _radial_cutoff(r_cut)
    out = []
    for comp in v.components:
        if abs(comp.weight) > m_keep:
            continue
        prof = comp.profile
        out.append(
            ModePotential(
                weight=comp.weight,
                profile=lambda r, _p=prof, _c=chi: np.asarray(_p(r)) * _c(r),
                sup_norm=comp.sup_norm,
                support_radius=2.0 * r_cut
                if comp.support_radius is None
                else min(comp.support_radius, 2.0 * r_cut),
                continuable=comp.continuable,
                label=f"chi*{comp.label}",
            )
        )
    return potential_sum(out)


def symmetrize(v: PotentialSum) -> PotentialSum:
    """Real-valued control: add the conjugate-mirror component of each weight."""
    out = list(v.components)
    for comp in v.components:
        prof = comp.profile
        out.append(
            ModePotential(
                weight=-comp.weight,
                profile=lambda r, _p=prof: np.conj(np.asarray(_p(np.conj(r)))),
                sup_norm=comp.sup_norm,
                support_radius=comp.support_radius,
                continuable=comp.continuable,
                label=f"conj:{comp.label}",
            )
        )
    return potential_sum(out)


def zero_potential() -> PotentialSum:
    return PotentialSum((), 0.0, True)
