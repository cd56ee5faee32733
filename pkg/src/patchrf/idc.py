"""Interdigital capacitor lumped model.

Series capacitance from the coplanar-strip elliptic-integral ratio, series
resistance from the RF surface resistivity of the metallization, and the
lumped two-port (shunt parasitic - series RC - shunt parasitic).

Capacitor dimensions must stay well below a quarter guided wavelength for
the lumped model to hold; ``idc_two_port`` warns above one eighth and
refuses above one quarter.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .constants import C0, MU0
from .errors import ModelValidityError
from .network import (
    TwoPort,
    cascade,
    series_impedance_two_port,
    shunt_admittance_two_port,
)

# Branch point of the elliptic-ratio approximation; the two log forms meet
# here to ~1e-4.
_ELLIPTIC_BRANCH_K = 0.7


@dataclass(frozen=True)
class IdcGeometry:
    """Finger layout of an interdigital capacitor.

    ``n_fingers`` counts individual fingers (not pairs). ``terminal_width``
    is the feeding strip width; it does not enter the capacitance model but
    is part of the physical layout.
    """

    finger_width: float
    gap: float
    finger_length: float
    n_fingers: int
    terminal_width: float = 0.0

    def __post_init__(self):
        for name in ("finger_width", "gap", "finger_length"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.n_fingers < 2:
            raise ValueError(f"need at least 2 fingers, got {self.n_fingers}")
        if self.terminal_width < 0.0:
            raise ValueError(f"terminal_width must be >= 0, got {self.terminal_width}")


@dataclass(frozen=True)
class IdcLumped:
    """Element values of the capacitor's lumped equivalent."""

    c_series: float
    r_series: float
    c_shunt_1: float = 0.0
    c_shunt_2: float = 0.0

    def __post_init__(self):
        if self.c_series <= 0.0:
            raise ValueError(f"series capacitance must be positive, got {self.c_series}")
        if self.r_series < 0.0 or self.c_shunt_1 < 0.0 or self.c_shunt_2 < 0.0:
            raise ValueError("resistance and shunt capacitances must be >= 0")


def geometric_modulus(finger_width: float, gap: float) -> tuple[float, float]:
    """Elliptic modulus pair (k, k') of the finger/gap cross-section.

    k = tan^2(w*pi / (4*(w + G))); k' = sqrt(1 - k^2). Both lie in (0, 1)
    for positive dimensions.
    """
    if finger_width <= 0.0 or gap <= 0.0:
        raise ValueError("finger width and gap must be positive")
    k = math.tan(finger_width * math.pi / (4.0 * (finger_width + gap))) ** 2
    if k >= 1.0:
        raise ModelValidityError(
            f"gap too small relative to finger width: modulus k = {k:.6f} >= 1"
        )
    return k, math.sqrt(1.0 - k * k)


def elliptic_ratio(k: float) -> float:
    """Complete elliptic integral ratio K(k)/K'(k), log-form approximation.

    Self-dual across the k = 0.7 branch point: ratio(k) * ratio(k') = 1
    identically, and the two branches join continuously.
    """
    if not 0.0 < k < 1.0:
        raise ValueError(f"modulus must be in (0, 1), got {k}")

    def log_form(m: float) -> float:
        s = math.sqrt(m)
        return math.log(2.0 * (1.0 + s) / (1.0 - s)) / math.pi

    if k < _ELLIPTIC_BRANCH_K:
        return 1.0 / log_form(math.sqrt(1.0 - k * k))
    return log_form(k)


def series_capacitance(geom: IdcGeometry, eps_eff: float) -> float:
    """Series capacitance of the interdigital structure, in farads.

    Classical coplanar-strip estimate: proportional to the elliptic ratio,
    the number of gaps (fingers - 1) and the finger length. The underlying
    fit takes length in micrometers and yields picofarads; the result is
    converted to SI.
    """
    if eps_eff < 1.0:
        raise ValueError(f"eps_eff must be >= 1, got {eps_eff}")
    k, _ = geometric_modulus(geom.finger_width, geom.gap)
    ratio = elliptic_ratio(k)
    length_um = geom.finger_length * 1e6
    c_pf = (eps_eff * 1e-3 / (18.0 * math.pi)) * ratio * (geom.n_fingers - 1) * length_um
    return c_pf * 1e-12


def surface_resistivity(f: float, sigma: float) -> float:
    """Frequency-dependent RF surface resistivity sqrt(pi*f*mu0/sigma)."""
    if f <= 0.0 or sigma <= 0.0:
        raise ValueError("frequency and conductivity must be positive")
    return math.sqrt(math.pi * f * MU0 / sigma)


def series_resistance(geom: IdcGeometry, f: float, sigma: float) -> float:
    """Ohmic series resistance of the finger metallization,
    (4*L / (3*w*N)) * R_F."""
    r_f = surface_resistivity(f, sigma)
    return 4.0 * geom.finger_length / (3.0 * geom.finger_width * geom.n_fingers) * r_f


def idc_lumped(
    geom: IdcGeometry,
    eps_eff: float,
    f: float,
    sigma: float,
    shunt_caps: tuple[float, float] = (0.0, 0.0),
) -> IdcLumped:
    """Lumped element values of the capacitor at frequency ``f``.

    No closed form exists for the parasitic shunt capacitors; they default
    to zero and may be supplied by the caller.
    """
    return IdcLumped(
        c_series=series_capacitance(geom, eps_eff),
        r_series=series_resistance(geom, f, sigma),
        c_shunt_1=shunt_caps[0],
        c_shunt_2=shunt_caps[1],
    )


def _check_electrical_size(geom: IdcGeometry, f: float, eps_eff: float) -> None:
    lam = C0 / (f * math.sqrt(eps_eff))
    if geom.finger_length >= lam / 4.0:
        raise ModelValidityError(
            f"finger length {geom.finger_length:.4g} m exceeds a quarter "
            f"wavelength ({lam / 4.0:.4g} m); the lumped model does not apply"
        )
    if geom.finger_length >= lam / 8.0:
        warnings.warn(
            f"finger length {geom.finger_length:.4g} m exceeds lambda/8 "
            f"({lam / 8.0:.4g} m); lumped model accuracy degrades",
            stacklevel=3,
        )


def idc_two_port(
    geom: IdcGeometry,
    eps_eff: float,
    f: float,
    sigma: float,
    shunt_caps: tuple[float, float] = (0.0, 0.0),
) -> TwoPort:
    """Chain matrix of the capacitor's lumped equivalent at frequency ``f``:
    shunt C1, series (Rs + 1/(j*w*Cs)), shunt C2."""
    if f <= 0.0:
        raise ValueError(f"frequency must be positive, got {f}")
    _check_electrical_size(geom, f, eps_eff)
    lumped = idc_lumped(geom, eps_eff, f, sigma, shunt_caps)
    omega = 2.0 * math.pi * f
    net = series_impedance_two_port(
        lumped.r_series + 1.0 / (1j * omega * lumped.c_series), f
    )
    if lumped.c_shunt_1 > 0.0:
        net = cascade(shunt_admittance_two_port(1j * omega * lumped.c_shunt_1, f), net)
    if lumped.c_shunt_2 > 0.0:
        net = cascade(net, shunt_admittance_two_port(1j * omega * lumped.c_shunt_2, f))
    return net


@dataclass(frozen=True)
class IdcElement:
    """Interdigital capacitor placed in a network chain."""

    geom: IdcGeometry
    eps_eff: float
    sigma: float
    shunt_caps: tuple[float, float] = (0.0, 0.0)

    def two_port(self, f: float) -> TwoPort:
        return idc_two_port(self.geom, self.eps_eff, f, self.sigma, self.shunt_caps)
