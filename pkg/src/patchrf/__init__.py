"""patchrf: rectangular microstrip patch antenna design and matching.

Closed-form patch synthesis, a two-slot radiation model, interdigital
capacitor lumped modeling, two-port circuit analysis, and automatic
matching-network synthesis, with CSV/Touchstone/JSON output via the
``patchrf`` command-line tool.
"""

from .constants import C0, EPS0, ETA0, MU0
from .errors import (
    ConfigError,
    Error,
    FrequencyMismatchError,
    ModelValidityError,
    NoBandError,
    NoResonanceError,
    UnreachableImpedanceError,
)
from .microstrip import (
    MicrostripLine,
    PatchGeometry,
    Substrate,
    dielectric_attenuation,
    effective_permittivity,
    fringing_extension,
    guided_wavelength,
    microstrip_line,
    patch_dimensions,
    synthesize_width,
    thickness_corrected_width,
    z0_microstrip,
)
from .radiation import (
    RadiationSummary,
    SlotAdmittance,
    bessel_j0,
    directivity_estimate,
    gain_and_efficiency,
    mutual_conductance,
    radiation_summary,
    resonant_input_impedance,
    self_conductance,
    slot_admittance,
)
from .idc import (
    IdcElement,
    IdcGeometry,
    IdcLumped,
    elliptic_ratio,
    geometric_modulus,
    idc_lumped,
    idc_two_port,
    series_capacitance,
    series_resistance,
    surface_resistivity,
)
from .network import (
    FixedLoad,
    GapElement,
    NetworkDescription,
    ParallelRlcLoad,
    RlcFit,
    ScaledLoad,
    SweepPoint,
    SweepResult,
    TransmissionLineElement,
    TwoPort,
    TwoSlotPatchLoad,
    bandwidth_minus_10db,
    cascade,
    find_resonance,
    gap_coupling_two_port,
    identity_two_port,
    input_reflection,
    patch_load_two_slot,
    quarter_wave_z0,
    rlc_fit,
    s_parameters,
    s11_db,
    series_impedance_two_port,
    shunt_admittance_two_port,
    smith_coordinates,
    sweep_s11,
    tline_two_port,
)
from .matching import (
    DesignAnalysis,
    MatchResult,
    MatchSpec,
    analyze_description,
    build_match_chain,
    comparison_report,
    exhaustive_grid_search,
    inset_scale_factor,
    quarter_wave_design,
    reference_inset_design,
    resonance_aligned_length,
    synthesize_match,
)

__version__ = "0.1.0"
