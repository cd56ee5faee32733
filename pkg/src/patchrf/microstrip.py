"""Closed-form microstrip physics.

Quasi-static Hammerstad formulas for effective permittivity and
characteristic impedance, numerical width synthesis, fringing-field length
extension, rectangular patch dimensioning, and guided wavelength.

All functions are pure and take SI units (meters, hertz, ohms).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import C0
from .errors import UnreachableImpedanceError

# Width search window for impedance synthesis, in units of substrate height.
_W_OVER_H_MIN = 0.01
_W_OVER_H_MAX = 100.0


@dataclass(frozen=True)
class Substrate:
    """Dielectric slab with a single metallization layer.

    epsilon_r : relative permittivity (>= 1; 1 is the vacuum limit)
    h         : dielectric thickness (m)
    tan_delta : dielectric loss tangent
    t         : metallization thickness (m), used only by the optional
                thickness refinement
    sigma     : metal conductivity (S/m)
    """

    epsilon_r: float
    h: float
    tan_delta: float = 0.0
    t: float = 0.0
    sigma: float = 5.8e7

    def __post_init__(self):
        if self.epsilon_r < 1.0:
            raise ValueError(f"epsilon_r must be >= 1, got {self.epsilon_r}")
        if self.h <= 0.0:
            raise ValueError(f"substrate height must be positive, got {self.h}")
        if not 0.0 <= self.tan_delta < 1.0:
            raise ValueError(f"tan_delta must be in [0, 1), got {self.tan_delta}")
        if self.t < 0.0:
            raise ValueError(f"metallization thickness must be >= 0, got {self.t}")
        if self.sigma <= 0.0:
            raise ValueError(f"conductivity must be positive, got {self.sigma}")


@dataclass(frozen=True)
class PatchGeometry:
    """Rectangular patch: radiating width ``w``, resonant length ``l``.

    ``delta_l`` is the fringing extension of one edge; the electrically
    effective length is ``l + 2 * delta_l``.
    """

    w: float
    l: float
    delta_l: float
    f0: float

    def __post_init__(self):
        for name in ("w", "l", "delta_l", "f0"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    @property
    def l_eff(self) -> float:
        return self.l + 2.0 * self.delta_l


@dataclass(frozen=True)
class MicrostripLine:
    """A microstrip trace: width, characteristic impedance, effective
    permittivity and physical length."""

    w: float
    z0: float
    eps_eff: float
    length: float

    def __post_init__(self):
        if self.w <= 0.0 or self.z0 <= 0.0 or self.length < 0.0:
            raise ValueError("line width and impedance must be positive, length >= 0")
        if self.eps_eff < 1.0:
            raise ValueError(f"eps_eff must be >= 1, got {self.eps_eff}")


def effective_permittivity(w: float, substrate: Substrate) -> float:
    """Quasi-static effective permittivity of a microstrip of width ``w``.

    Hammerstad form; the narrow-strip branch (w/h < 1) carries the extra
    0.04*(1 - w/h)^2 correction so both branches join continuously at
    w/h = 1.
    """
    if w <= 0.0:
        raise ValueError(f"width must be positive, got {w}")
    er = substrate.epsilon_r
    ratio = w / substrate.h
    filling = (1.0 + 12.0 / ratio) ** -0.5
    if ratio < 1.0:
        filling += 0.04 * (1.0 - ratio) ** 2
    return (er + 1.0) / 2.0 + (er - 1.0) / 2.0 * filling


def thickness_corrected_width(w: float, substrate: Substrate) -> float:
    """Effective strip width accounting for finite metallization thickness.

    Returns ``w`` unchanged for zero thickness. The correction is
    sub-percent for the usual t << h and is therefore applied only when
    explicitly requested.
    """
    if w <= 0.0:
        raise ValueError(f"width must be positive, got {w}")
    t, h = substrate.t, substrate.h
    if t <= 0.0:
        return w
    dw = (t / math.pi) * math.log(
        4.0 * math.e / ((t / h) ** 2 + ((1.0 / math.pi) / (w / t + 1.1)) ** 2)
    )
    dw_prime = dw * (1.0 + 1.0 / substrate.epsilon_r) / 2.0
    return w + dw_prime


def z0_microstrip(w: float, substrate: Substrate, *, thickness_corrected: bool = False) -> float:
    """Characteristic impedance of a microstrip of width ``w``.

    Uses the narrow-strip log form for w/h < 1 and the wide-strip form
    otherwise, both evaluated with the effective permittivity of the same
    width. ``thickness_corrected`` folds the metal thickness into an
    effective width first.
    """
    if w <= 0.0:
        raise ValueError(f"width must be positive, got {w}")
    if thickness_corrected:
        w = thickness_corrected_width(w, substrate)
    eps = effective_permittivity(w, substrate)
    ratio = w / substrate.h
    if ratio < 1.0:
        return 60.0 / math.sqrt(eps) * math.log(8.0 / ratio + ratio / 4.0)
    return (120.0 * math.pi / math.sqrt(eps)) / (
        ratio + 1.393 + 0.677 * math.log(ratio + 1.444)
    )


def synthesize_width(z0_target: float, substrate: Substrate, *, tol_ohm: float = 0.01) -> float:
    """Find the trace width whose characteristic impedance is ``z0_target``.

    Bisection on the (monotone decreasing) impedance-vs-width curve.
    Raises UnreachableImpedanceError when the target lies outside the range
    achievable for w/h in [0.01, 100], or falls inside the small jump of
    the two-branch impedance formula at w/h = 1.
    """
    if z0_target <= 0.0:
        raise ValueError(f"target impedance must be positive, got {z0_target}")
    h = substrate.h
    lo, hi = _W_OVER_H_MIN * h, _W_OVER_H_MAX * h
    z_lo, z_hi = z0_microstrip(lo, substrate), z0_microstrip(hi, substrate)
    if not z_hi <= z0_target <= z_lo:
        raise UnreachableImpedanceError(
            f"{z0_target:.3f} ohm outside achievable range "
            f"[{z_hi:.3f}, {z_lo:.3f}] ohm on this substrate"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if z0_microstrip(mid, substrate) > z0_target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    w = 0.5 * (lo + hi)
    if abs(z0_microstrip(w, substrate) - z0_target) >= tol_ohm:
        raise UnreachableImpedanceError(
            f"{z0_target:.3f} ohm falls in the branch discontinuity of the "
            f"impedance formula near w/h = 1"
        )
    return w


def fringing_extension(w: float, substrate: Substrate) -> float:
    """Fringing-field length extension of one radiating edge."""
    if w <= 0.0:
        raise ValueError(f"width must be positive, got {w}")
    eps = effective_permittivity(w, substrate)
    ratio = w / substrate.h
    return (
        0.412
        * substrate.h
        * ((eps + 0.3) * (ratio + 0.264))
        / ((eps - 0.258) * (ratio + 0.813))
    )


def patch_dimensions(f0: float, substrate: Substrate) -> PatchGeometry:
    """Dimension a rectangular patch resonating at ``f0``.

    Width from the standard half-wave formula with the (er+1)/2 average
    permittivity; length from the half guided wave at the width's effective
    permittivity, shortened by twice the fringing extension.
    """
    if f0 <= 0.0:
        raise ValueError(f"design frequency must be positive, got {f0}")
    w = C0 / (2.0 * f0) * math.sqrt(2.0 / (substrate.epsilon_r + 1.0))
    eps = effective_permittivity(w, substrate)
    delta_l = fringing_extension(w, substrate)
    l = C0 / (2.0 * f0 * math.sqrt(eps)) - 2.0 * delta_l
    return PatchGeometry(w=w, l=l, delta_l=delta_l, f0=f0)


def guided_wavelength(f: float, substrate: Substrate) -> float:
    """Wavelength in the dielectric-filled line, c / (f * sqrt(epsilon_r))."""
    if f <= 0.0:
        raise ValueError(f"frequency must be positive, got {f}")
    return C0 / (f * math.sqrt(substrate.epsilon_r))


def microstrip_line(z0_target: float, substrate: Substrate, length: float) -> MicrostripLine:
    """Synthesize a line of the requested impedance and physical length."""
    w = synthesize_width(z0_target, substrate)
    return MicrostripLine(
        w=w,
        z0=z0_target,
        eps_eff=effective_permittivity(w, substrate),
        length=length,
    )


def dielectric_attenuation(f: float, substrate: Substrate, eps_eff: float) -> float:
    """Dielectric attenuation constant of a microstrip, in Np/m.

    Standard quasi-TEM loss term driven by tan(delta); zero for a lossless
    or air substrate.
    """
    er = substrate.epsilon_r
    if substrate.tan_delta == 0.0 or er == 1.0:
        return 0.0
    k0 = 2.0 * math.pi * f / C0
    return (
        k0
        * er
        * (eps_eff - 1.0)
        * substrate.tan_delta
        / (2.0 * math.sqrt(eps_eff) * (er - 1.0))
    )
