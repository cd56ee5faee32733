"""Two-port circuit algebra and frequency-domain analysis.

Chain (ABCD) matrices for lines and lumped elements, cascading,
S-parameter and reflection-coefficient computation, circuit-level patch
load models, S11 sweeps, -10 dB bandwidth extraction, Smith-chart
coordinates and the quarter-wave transformer relation.

Networks are described declaratively: an ordered tuple of elements (each
exposing ``two_port(f)``) terminated by a load (exposing ``impedance(f)``),
so a sweep re-evaluates every element at every frequency.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Protocol

import numpy as np

from .constants import C0
from .errors import FrequencyMismatchError, NoBandError, NoResonanceError
from .microstrip import (
    PatchGeometry,
    Substrate,
    effective_permittivity,
    z0_microstrip,
)
from .radiation import slot_admittance


@dataclass(frozen=True)
class TwoPort:
    """Chain (ABCD) matrix of a two-port at a single frequency."""

    a: complex
    b: complex
    c: complex
    d: complex
    f: float

    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    def input_impedance(self, z_load: complex) -> complex:
        """Impedance looking into port 1 with ``z_load`` on port 2."""
        if cmath.isinf(z_load):
            if self.c == 0:
                return complex("inf")
            return self.a / self.c
        den = self.c * z_load + self.d
        if den == 0:
            raise ZeroDivisionError("singular network: C*ZL + D = 0")
        return (self.a * z_load + self.b) / den


def identity_two_port(f: float) -> TwoPort:
    return TwoPort(1.0, 0.0, 0.0, 1.0, f)


def series_impedance_two_port(z: complex, f: float) -> TwoPort:
    return TwoPort(1.0, z, 0.0, 1.0, f)


def shunt_admittance_two_port(y: complex, f: float) -> TwoPort:
    return TwoPort(1.0, 0.0, y, 1.0, f)


def tline_two_port(
    z0: float, eps_eff: float, length: float, f: float, *, alpha: float = 0.0
) -> TwoPort:
    """Transmission-line chain matrix.

    Lossless unless an attenuation constant ``alpha`` (Np/m) is supplied,
    in which case the hyperbolic form with gamma = alpha + j*beta is used.
    """
    if z0 <= 0.0 or eps_eff < 1.0 or length < 0.0 or f <= 0.0:
        raise ValueError("invalid transmission-line parameters")
    beta = 2.0 * math.pi * f * math.sqrt(eps_eff) / C0
    if alpha == 0.0:
        bl = beta * length
        cos_bl, sin_bl = math.cos(bl), math.sin(bl)
        return TwoPort(
            complex(cos_bl), 1j * z0 * sin_bl, 1j * sin_bl / z0, complex(cos_bl), f
        )
    gl = complex(alpha, beta) * length
    return TwoPort(
        cmath.cosh(gl), z0 * cmath.sinh(gl), cmath.sinh(gl) / z0, cmath.cosh(gl), f
    )


def gap_coupling_two_port(c_series: float, c_shunt: float, f: float) -> TwoPort:
    """Series/shunt capacitor pair modeling a coupling gap in the feed."""
    if c_series <= 0.0:
        raise ValueError(f"series capacitance must be positive, got {c_series}")
    if c_shunt < 0.0:
        raise ValueError(f"shunt capacitance must be >= 0, got {c_shunt}")
    omega = 2.0 * math.pi * f
    net = series_impedance_two_port(1.0 / (1j * omega * c_series), f)
    if c_shunt > 0.0:
        net = cascade(net, shunt_admittance_two_port(1j * omega * c_shunt, f))
    return net


def cascade(first: TwoPort, second: TwoPort) -> TwoPort:
    """Chain-matrix product of two two-ports at the same frequency."""
    if not math.isclose(first.f, second.f, rel_tol=1e-9, abs_tol=0.0):
        raise FrequencyMismatchError(
            f"cannot cascade two-ports at {first.f} Hz and {second.f} Hz"
        )
    return TwoPort(
        first.a * second.a + first.b * second.c,
        first.a * second.b + first.b * second.d,
        first.c * second.a + first.d * second.c,
        first.c * second.b + first.d * second.d,
        first.f,
    )


def s_parameters(net: TwoPort, z_ref: float) -> tuple[complex, complex, complex, complex]:
    """(S11, S12, S21, S22) of a two-port for a real reference impedance."""
    if z_ref <= 0.0:
        raise ValueError(f"reference impedance must be positive, got {z_ref}")
    a, b, c, d = net.a, net.b, net.c, net.d
    den = a + b / z_ref + c * z_ref + d
    s11 = (a + b / z_ref - c * z_ref - d) / den
    s12 = 2.0 * (a * d - b * c) / den
    s21 = 2.0 / den
    s22 = (-a + b / z_ref - c * z_ref + d) / den
    return s11, s12, s21, s22


def input_reflection(network: TwoPort, load: complex, z_source: float) -> complex:
    """Reflection coefficient at the network input against ``z_source``."""
    if z_source <= 0.0:
        raise ValueError(f"source impedance must be positive, got {z_source}")
    zin = network.input_impedance(load)
    if cmath.isinf(zin):
        return complex(1.0)
    return (zin - z_source) / (zin + z_source)


def s11_db(gamma: complex) -> float:
    """Reflection coefficient magnitude in dB; floored to avoid -inf."""
    return 20.0 * math.log10(max(abs(gamma), 1e-30))


def quarter_wave_z0(z_source: float, z_load: float) -> float:
    """Characteristic impedance of the quarter-wave transformer matching
    two real impedances: sqrt(z_source * z_load)."""
    if z_source <= 0.0 or z_load <= 0.0:
        raise ValueError("transformer terminal impedances must be positive and real")
    return math.sqrt(z_source * z_load)


def smith_coordinates(zin: complex, z_ref: float) -> tuple[float, float]:
    """Cartesian Smith-chart coordinates (Re gamma, Im gamma) of ``zin``."""
    if z_ref <= 0.0:
        raise ValueError(f"reference impedance must be positive, got {z_ref}")
    den = zin + z_ref
    if den == 0:
        raise ZeroDivisionError("zin = -z_ref is a pole of the chart mapping")
    gamma = (zin - z_ref) / den
    return gamma.real, gamma.imag


# --------------------------------------------------------------------------
# Loads and network descriptions
# --------------------------------------------------------------------------


class TwoPortElement(Protocol):
    def two_port(self, f: float) -> TwoPort: ...


class LoadModel(Protocol):
    def impedance(self, f: float) -> complex: ...


@dataclass(frozen=True)
class FixedLoad:
    """Frequency-independent termination."""

    z: complex

    def impedance(self, f: float) -> complex:
        return complex(self.z)


@dataclass(frozen=True)
class ParallelRlcLoad:
    """Parallel RLC resonator load."""

    r: float
    l: float
    c: float

    @classmethod
    def from_q(cls, r: float, f0: float, q: float) -> "ParallelRlcLoad":
        c = q / (2.0 * math.pi * f0 * r)
        l = 1.0 / ((2.0 * math.pi * f0) ** 2 * c)
        return cls(r=r, l=l, c=c)

    @property
    def f0(self) -> float:
        return 1.0 / (2.0 * math.pi * math.sqrt(self.l * self.c))

    @property
    def q(self) -> float:
        return self.r * math.sqrt(self.c / self.l)

    def impedance(self, f: float) -> complex:
        omega = 2.0 * math.pi * f
        y = 1.0 / self.r + 1j * (omega * self.c - 1.0 / (omega * self.l))
        return 1.0 / y


@dataclass(frozen=True)
class TwoSlotPatchLoad:
    """Patch input impedance from the two radiating-slot line model.

    Slot 2's admittance is transformed through a microstrip section of the
    patch width and length ``patch.l`` and combined in parallel with slot
    1's admittance. ``slot_dim`` selects the dimension substituted as the
    radiating slot length: ``"width"`` (default) or ``"length"``.
    """

    patch: PatchGeometry
    substrate: Substrate
    slot_dim: str = "width"

    def _slot_length(self) -> float:
        if self.slot_dim == "width":
            return self.patch.w
        if self.slot_dim == "length":
            return self.patch.l
        raise ValueError(f"unknown slot_dim {self.slot_dim!r}")

    def impedance(self, f: float) -> complex:
        y_slot = slot_admittance(self._slot_length(), self.patch.delta_l, f).admittance
        z0 = z0_microstrip(self.patch.w, self.substrate)
        eps = effective_permittivity(self.patch.w, self.substrate)
        y0 = 1.0 / z0
        t = math.tan(2.0 * math.pi * f * math.sqrt(eps) / C0 * self.patch.l)
        y_transformed = y0 * (y_slot + 1j * y0 * t) / (y0 + 1j * y_slot * t)
        return 1.0 / (y_slot + y_transformed)


@dataclass(frozen=True)
class ScaledLoad:
    """Load with its impedance scaled by a real factor (ideal-tap model)."""

    inner: LoadModel
    factor: float

    def impedance(self, f: float) -> complex:
        return self.factor * self.inner.impedance(f)


def patch_load_two_slot(
    patch: PatchGeometry, substrate: Substrate, f: float, *, slot_dim: str = "width"
) -> complex:
    """Two-slot line-model input impedance of the patch at frequency ``f``."""
    return TwoSlotPatchLoad(patch, substrate, slot_dim).impedance(f)


@dataclass(frozen=True)
class TransmissionLineElement:
    """Uniform line segment placed in a network chain."""

    z0: float
    eps_eff: float
    length: float
    alpha: float = 0.0

    def two_port(self, f: float) -> TwoPort:
        return tline_two_port(self.z0, self.eps_eff, self.length, f, alpha=self.alpha)


@dataclass(frozen=True)
class GapElement:
    """Coupling gap in the feed: series plus shunt capacitance."""

    c_series: float
    c_shunt: float = 0.0

    def two_port(self, f: float) -> TwoPort:
        return gap_coupling_two_port(self.c_series, self.c_shunt, f)


@dataclass(frozen=True)
class NetworkDescription:
    """Source-to-load ordered element chain terminated by a load model."""

    elements: tuple
    load: LoadModel

    def chain(self, f: float) -> TwoPort:
        net = identity_two_port(f)
        for element in self.elements:
            net = cascade(net, element.two_port(f))
        return net

    def input_impedance(self, f: float) -> complex:
        return self.chain(f).input_impedance(self.load.impedance(f))


# --------------------------------------------------------------------------
# Sweeps
# --------------------------------------------------------------------------


class SweepPoint(NamedTuple):
    f: float
    s11: complex
    zin: complex


@dataclass(frozen=True)
class SweepResult:
    """Per-frequency reflection records of one network."""

    points: tuple[SweepPoint, ...]

    def __post_init__(self):
        freqs = [p.f for p in self.points]
        if any(b <= a for a, b in zip(freqs, freqs[1:])):
            raise ValueError("sweep frequencies must be strictly increasing")

    @property
    def freqs(self) -> np.ndarray:
        return np.array([p.f for p in self.points])

    @property
    def s11(self) -> np.ndarray:
        return np.array([p.s11 for p in self.points])

    @property
    def zin(self) -> np.ndarray:
        return np.array([p.zin for p in self.points])

    @property
    def s11_db(self) -> np.ndarray:
        return 20.0 * np.log10(np.maximum(np.abs(self.s11), 1e-30))

    def minimum(self) -> SweepPoint:
        return self.points[int(np.argmin(self.s11_db))]


def sweep_s11(
    description: NetworkDescription,
    f_min: float,
    f_max: float,
    n: int,
    *,
    z_source: float = 50.0,
) -> SweepResult:
    """Evaluate the chain and its input reflection on a uniform grid."""
    if not f_min < f_max:
        raise ValueError(f"need f_min < f_max, got {f_min} >= {f_max}")
    if n < 2:
        raise ValueError(f"need at least 2 sweep points, got {n}")
    points = []
    for i in range(n):
        f = f_min + (f_max - f_min) * i / (n - 1)
        try:
            net = description.chain(f)
            z_load = description.load.impedance(f)
            zin = net.input_impedance(z_load)
            gamma = input_reflection(net, z_load, z_source)
        except Exception as exc:
            msg = f"sweep failed at {f:.6g} Hz: {exc}"
            try:
                wrapped = type(exc)(msg)
            except Exception:
                wrapped = RuntimeError(msg)
            raise wrapped from exc
        points.append(SweepPoint(f=f, s11=gamma, zin=zin))
    return SweepResult(points=tuple(points))


def bandwidth_minus_10db(sweep: SweepResult, *, threshold_db: float = -10.0) -> float:
    """Width of the contiguous band around the sweep's global |S11| minimum
    where S11 stays at or below ``threshold_db``.

    Band edges are located by linear interpolation of S11(dB) between
    samples; a band running into the sweep edge is clipped there.
    """
    db = sweep.s11_db
    freqs = sweep.freqs
    i_min = int(np.argmin(db))
    if db[i_min] > threshold_db:
        raise NoBandError(
            f"sweep minimum {db[i_min]:.2f} dB never reaches {threshold_db:.2f} dB"
        )

    def interp_edge(i_out: int, i_in: int) -> float:
        # threshold crossing between an outside sample and an inside sample
        span = db[i_in] - db[i_out]
        frac = (threshold_db - db[i_out]) / span
        return freqs[i_out] + frac * (freqs[i_in] - freqs[i_out])

    lo = i_min
    while lo > 0 and db[lo - 1] <= threshold_db:
        lo -= 1
    f_lo = freqs[0] if lo == 0 else interp_edge(lo - 1, lo)

    hi = i_min
    while hi < len(db) - 1 and db[hi + 1] <= threshold_db:
        hi += 1
    f_hi = freqs[-1] if hi == len(db) - 1 else interp_edge(hi + 1, hi)
    return float(f_hi - f_lo)


class RlcFit(NamedTuple):
    """Parallel RLC equivalent fitted to a narrowband impedance sweep."""

    r: float
    l: float
    c: float

    @property
    def f0(self) -> float:
        return 1.0 / (2.0 * math.pi * math.sqrt(self.l * self.c))

    @property
    def q(self) -> float:
        return self.r * math.sqrt(self.c / self.l)

    def impedance(self, f: float) -> complex:
        return ParallelRlcLoad(self.r, self.l, self.c).impedance(f)


def rlc_fit(sweep: SweepResult) -> RlcFit:
    """Fit a parallel RLC to a swept impedance around its resonance.

    The resonance is the reactance zero crossing with the largest
    resistance (a parallel-type resonance); R is the interpolated
    resistance there, C follows from the susceptance slope dB/df = 4*pi*C
    and L from the resonant frequency.
    """
    freqs = sweep.freqs
    zin = sweep.zin
    im = zin.imag
    sign_change = np.nonzero(np.sign(im[:-1]) * np.sign(im[1:]) < 0)[0]
    if len(sign_change) == 0:
        raise NoResonanceError("impedance sweep does not bracket a reactance zero")
    # parallel resonance: pick the crossing with the largest local resistance
    i = int(max(sign_change, key=lambda k: max(zin[k].real, zin[k + 1].real)))
    frac = -im[i] / (im[i + 1] - im[i])
    f0 = float(freqs[i] + frac * (freqs[i + 1] - freqs[i]))
    r = float(zin[i].real + frac * (zin[i + 1].real - zin[i].real))
    y = 1.0 / zin
    slope = (y[i + 1].imag - y[i].imag) / (freqs[i + 1] - freqs[i])
    if slope <= 0.0:
        raise NoResonanceError(
            "susceptance slope is not positive at the crossing; "
            "not a parallel-type resonance"
        )
    c = float(slope) / (4.0 * math.pi)
    l = 1.0 / ((2.0 * math.pi * f0) ** 2 * c)
    return RlcFit(r=r, l=l, c=c)


def find_resonance(
    load: LoadModel, f_lo: float, f_hi: float, *, n_scan: int = 501
) -> tuple[float, float]:
    """Locate the parallel-type resonance of a one-port load in a band.

    Scans for reactance sign changes, picks the one with the largest
    resistance and refines it by bisection. Returns (f_res, r_res).
    """
    freqs = np.linspace(f_lo, f_hi, n_scan)
    zs = np.array([load.impedance(float(f)) for f in freqs])
    im = zs.imag
    sign_change = np.nonzero(np.sign(im[:-1]) * np.sign(im[1:]) < 0)[0]
    if len(sign_change) == 0:
        raise NoResonanceError(
            f"no reactance zero crossing in [{f_lo:.4g}, {f_hi:.4g}] Hz"
        )
    i = int(max(sign_change, key=lambda k: max(zs[k].real, zs[k + 1].real)))
    f_a, f_b = float(freqs[i]), float(freqs[i + 1])
    im_a = zs[i].imag
    for _ in range(80):
        f_m = 0.5 * (f_a + f_b)
        im_m = load.impedance(f_m).imag
        if im_a * im_m <= 0.0:
            f_b = f_m
        else:
            f_a, im_a = f_m, im_m
    f_res = 0.5 * (f_a + f_b)
    return f_res, load.impedance(f_res).real
