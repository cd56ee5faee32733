"""Closed-form microstrip physics: permittivity, impedance, widths, patch
dimensioning. Derived expectations are computed by inline re-evaluation of
the raw formulas, independent of the library code paths."""

import math

import pytest

from patchrf.errors import UnreachableImpedanceError
from patchrf.microstrip import (
    MicrostripLine,
    PatchGeometry,
    Substrate,
    dielectric_attenuation,
    effective_permittivity,
    fringing_extension,
    guided_wavelength,
    patch_dimensions,
    synthesize_width,
    thickness_corrected_width,
    z0_microstrip,
)

C0 = 299_792_458.0


def _eps_eff_oracle(w, h, er):
    ratio = w / h
    filling = (1 + 12 * h / w) ** -0.5
    if ratio < 1:
        filling += 0.04 * (1 - ratio) ** 2
    return (er + 1) / 2 + (er - 1) / 2 * filling


def _z0_oracle(w, h, er):
    eps = _eps_eff_oracle(w, h, er)
    ratio = w / h
    if ratio < 1:
        return 60 / math.sqrt(eps) * math.log(8 * h / w + w / (4 * h))
    return 120 * math.pi / (math.sqrt(eps) * (ratio + 1.393 + 0.677 * math.log(ratio + 1.444)))


class TestEffectivePermittivity:
    def test_reference_anchor(self, epoxy):
        # 35 mm strip on the design substrate: 4.022 within 1%
        assert effective_permittivity(35e-3, epoxy) == pytest.approx(4.022, rel=0.01)

    @pytest.mark.parametrize("w", [0.1e-3, 1e-3, 35e-3])
    def test_vacuum_limit_is_exactly_one(self, w):
        air = Substrate(epsilon_r=1.0, h=1.52e-3)
        assert effective_permittivity(w, air) == 1.0

    def test_wide_branch_matches_hand_evaluation(self, epoxy):
        w = 2.9438e-3
        assert effective_permittivity(w, epoxy) == pytest.approx(
            _eps_eff_oracle(w, 1.52e-3, 4.32), rel=1e-12
        )

    def test_narrow_branch_matches_hand_evaluation(self, epoxy):
        w = 0.5e-3
        assert effective_permittivity(w, epoxy) == pytest.approx(
            _eps_eff_oracle(w, 1.52e-3, 4.32), rel=1e-12
        )

    def test_monotone_nondecreasing_in_width(self, epoxy):
        widths = [1.52e-3 * 10 ** (i / 25 - 1.3) for i in range(100)]
        values = [effective_permittivity(w, epoxy) for w in widths]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_bounded_by_substrate_permittivity(self, epoxy):
        for w in (0.1e-3, 1e-3, 10e-3, 100e-3):
            eps = effective_permittivity(w, epoxy)
            assert 1.0 < eps <= epoxy.epsilon_r

    def test_rejects_nonpositive_width(self, epoxy):
        with pytest.raises(ValueError):
            effective_permittivity(0.0, epoxy)


class TestCharacteristicImpedance:
    def test_50_ohm_anchor(self, epoxy):
        # 2.9438 mm is the tabulated 50-ohm width for this substrate
        assert z0_microstrip(2.9438e-3, epoxy) == pytest.approx(50.0, rel=0.03)

    def test_branch_boundary_continuity(self, epoxy):
        h = epoxy.h
        below = z0_microstrip(h * (1 - 1e-6), epoxy)
        above = z0_microstrip(h * (1 + 1e-6), epoxy)
        assert abs(below - above) < 1.0

    def test_wide_branch_matches_hand_evaluation(self, epoxy):
        assert z0_microstrip(10e-3, epoxy) == pytest.approx(
            _z0_oracle(10e-3, 1.52e-3, 4.32), rel=1e-12
        )

    def test_strictly_decreasing_in_width(self, epoxy):
        widths = [1.52e-3 * 10 ** (i * 3.3 / 99 - 1.3) for i in range(100)]
        values = [z0_microstrip(w, epoxy) for w in widths]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_finite_over_design_space(self):
        for er in (1.0001, 2.2, 4.32, 9.8, 13.0):
            sub = Substrate(epsilon_r=er, h=1.0e-3)
            for woh in (0.05, 0.3, 1.0, 5.0, 30.0, 100.0):
                z = z0_microstrip(woh * sub.h, sub)
                eps = effective_permittivity(woh * sub.h, sub)
                assert math.isfinite(z) and z > 0
                assert math.isfinite(eps)


class TestWidthSynthesis:
    def test_50_ohm_width_anchor(self, epoxy):
        w = synthesize_width(50.0, epoxy)
        assert w == pytest.approx(2.9438e-3, rel=0.03)

    def test_round_trip_identity(self, epoxy):
        for woh in (0.2, 0.5, 1.5, 3.0, 8.0, 20.0):
            w = woh * epoxy.h
            w_back = synthesize_width(z0_microstrip(w, epoxy), epoxy)
            assert w_back == pytest.approx(w, rel=1e-3)

    def test_matches_independent_bisection(self, epoxy):
        target = 106.07
        lo, hi = 0.01 * epoxy.h, 100 * epoxy.h
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if _z0_oracle(mid, 1.52e-3, 4.32) > target:
                lo = mid
            else:
                hi = mid
        assert synthesize_width(target, epoxy) == pytest.approx(0.5 * (lo + hi), rel=1e-3)

    def test_achieved_impedance_within_tolerance(self, epoxy):
        for target in (20.0, 50.0, 75.0, 106.07, 150.0):
            w = synthesize_width(target, epoxy)
            assert abs(z0_microstrip(w, epoxy) - target) < 0.01

    @pytest.mark.parametrize("target", [0.5, 400.0])
    def test_unreachable_target_raises(self, epoxy, target):
        with pytest.raises(UnreachableImpedanceError):
            synthesize_width(target, epoxy)


class TestFringingExtension:
    def test_matches_hand_evaluation(self, epoxy):
        w, h, er = 35e-3, 1.52e-3, 4.32
        eps = _eps_eff_oracle(w, h, er)
        expected = 0.412 * h * ((eps + 0.3) * (w / h + 0.264)) / (
            (eps - 0.258) * (w / h + 0.813)
        )
        assert fringing_extension(w, epoxy) == pytest.approx(expected, rel=1e-12)

    def test_scales_linearly_with_height_at_fixed_ratio(self):
        a = Substrate(epsilon_r=4.32, h=1.0e-3)
        b = Substrate(epsilon_r=4.32, h=2.0e-3)
        # same w/h keeps eps_eff fixed, so the extension is proportional to h
        assert fringing_extension(2e-3, b) == pytest.approx(
            2 * fringing_extension(1e-3, a), rel=1e-12
        )

    def test_positive_over_design_space(self):
        for er in (1.5, 4.32, 10.2):
            sub = Substrate(epsilon_r=er, h=0.8e-3)
            for woh in (0.1, 1.0, 10.0, 60.0):
                assert fringing_extension(woh * sub.h, sub) > 0


class TestPatchDimensions:
    def test_width_anchor(self, epoxy):
        patch = patch_dimensions(2.45e9, epoxy)
        assert patch.w == pytest.approx(37.5e-3, rel=0.01)

    def test_width_inversely_proportional_to_frequency(self, epoxy):
        assert patch_dimensions(1.225e9, epoxy).w == pytest.approx(
            2 * patch_dimensions(2.45e9, epoxy).w, rel=1e-12
        )

    def test_length_matches_chained_hand_evaluation(self, epoxy):
        # independent sequential evaluation: width, permittivity at that
        # width, fringing extension, then the shortened half-wave length
        f0, h, er = 2.45e9, 1.52e-3, 4.32
        w = C0 / (2 * f0) * math.sqrt(2 / (er + 1))
        eps = _eps_eff_oracle(w, h, er)
        dl = 0.412 * h * ((eps + 0.3) * (w / h + 0.264)) / ((eps - 0.258) * (w / h + 0.813))
        l_expected = C0 / (2 * f0 * math.sqrt(eps)) - 2 * dl
        patch = patch_dimensions(f0, epoxy)
        assert patch.l == pytest.approx(l_expected, rel=1e-3)
        assert patch.l_eff == pytest.approx(patch.l + 2 * patch.delta_l, rel=1e-15)

    def test_effective_length_exceeds_physical(self, epoxy):
        patch = patch_dimensions(2.45e9, epoxy)
        assert patch.l_eff > patch.l


class TestGuidedWavelength:
    def test_reference_value(self, epoxy):
        assert guided_wavelength(2.45e9, epoxy) == pytest.approx(58.91e-3, rel=0.005)

    def test_quarter_wave_value(self, epoxy):
        assert guided_wavelength(2.45e9, epoxy) / 4 == pytest.approx(14.72e-3, rel=0.005)

    def test_halves_when_frequency_doubles(self, epoxy):
        assert guided_wavelength(4.9e9, epoxy) == pytest.approx(
            guided_wavelength(2.45e9, epoxy) / 2, rel=1e-12
        )


class TestThicknessCorrection:
    def test_zero_thickness_is_identity(self):
        sub = Substrate(epsilon_r=4.32, h=1.52e-3, t=0.0)
        assert thickness_corrected_width(2.9438e-3, sub) == 2.9438e-3

    def test_correction_widens_line_slightly(self, epoxy):
        w = 2.9438e-3
        w_eff = thickness_corrected_width(w, epoxy)
        assert w_eff > w
        # 35 um foil on 1.52 mm dielectric shifts the impedance only ~1%
        plain = z0_microstrip(w, epoxy)
        corrected = z0_microstrip(w, epoxy, thickness_corrected=True)
        assert corrected < plain
        assert abs(corrected - plain) / plain < 0.02


class TestValidation:
    def test_substrate_field_checks(self):
        with pytest.raises(ValueError):
            Substrate(epsilon_r=0.9, h=1e-3)
        with pytest.raises(ValueError):
            Substrate(epsilon_r=4.32, h=0.0)
        with pytest.raises(ValueError):
            Substrate(epsilon_r=4.32, h=1e-3, tan_delta=1.0)
        with pytest.raises(ValueError):
            Substrate(epsilon_r=4.32, h=1e-3, sigma=0.0)

    def test_patch_geometry_checks(self):
        with pytest.raises(ValueError):
            PatchGeometry(w=0.0, l=1e-3, delta_l=1e-4, f0=1e9)
        with pytest.raises(ValueError):
            PatchGeometry(w=1e-3, l=1e-3, delta_l=1e-4, f0=0.0)

    def test_line_checks(self):
        with pytest.raises(ValueError):
            MicrostripLine(w=1e-3, z0=50.0, eps_eff=0.9, length=1e-3)

    def test_vacuum_has_no_dielectric_loss(self):
        air = Substrate(epsilon_r=1.0, h=1.52e-3)
        assert dielectric_attenuation(2.45e9, air, 1.0) == 0.0

    def test_lossy_substrate_attenuation_positive(self, epoxy):
        eps = effective_permittivity(2.9438e-3, epoxy)
        assert dielectric_attenuation(2.45e9, epoxy, eps) > 0
