"""Command-line interface.

Subcommands:

* ``design``  - closed-form patch synthesis and impedance summary
* ``match``   - capacitor matching-network synthesis plus sweep files
* ``sweep``   - S11/impedance sweep of an explicit design
* ``compare`` - side-by-side comparison of several designs

Configuration is a JSON file (mm/GHz units); results are emitted as JSON
or aligned text, with sweep data as CSV, Touchstone and Smith-chart files.
Exit codes: 0 success, 1 runtime/model error, 2 configuration error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional

from . import io as io_mod
from .config import (
    MM,
    GHZ,
    PF,
    CompareConfig,
    DesignConfig,
    SCHEMA_VERSION,
    load_config_file,
    parse_compare_config,
    parse_design_config,
)
from .errors import ConfigError, Error
from .idc import IdcGeometry, series_capacitance, series_resistance
from .matching import (
    MatchSpec,
    analyze_description,
    build_match_chain,
    comparison_report,
    exhaustive_grid_search,
    quarter_wave_design,
    reference_inset_design,
    resonance_aligned_length,
    synthesize_match,
)
from .microstrip import (
    PatchGeometry,
    Substrate,
    effective_permittivity,
    fringing_extension,
    guided_wavelength,
    patch_dimensions,
    synthesize_width,
)
from .network import (
    NetworkDescription,
    TransmissionLineElement,
    TwoSlotPatchLoad,
    bandwidth_minus_10db,
    find_resonance,
    input_reflection,
    quarter_wave_z0,
    s11_db,
    sweep_s11,
)
from .radiation import radiation_summary


def _match_spec(cfg: DesignConfig, substrate: Substrate) -> MatchSpec:
    if cfg.idc is None:
        raise ConfigError("idc", "this command requires an idc block")
    idc = cfg.idc
    f0 = cfg.patch.f0_ghz * GHZ
    bounds = (0.2e-3, 0.0)
    if idc.finger_length_bounds_mm is not None:
        bounds = (idc.finger_length_bounds_mm[0] * MM, idc.finger_length_bounds_mm[1] * MM)
    if idc.n_fingers is not None:
        options = (idc.n_fingers,)
    elif idc.n_fingers_options is not None:
        options = idc.n_fingers_options
    else:
        options = (2, 3, 4, 5, 6, 7, 8)
    return MatchSpec(
        f0=f0,
        z_source=cfg.match.z_source_ohm,
        finger_length_bounds=bounds,
        n_fingers_options=options,
        finger_width=idc.finger_width_mm * MM,
        gap=idc.gap_mm * MM,
        terminal_width=idc.terminal_width_mm * MM,
        target_db=cfg.match.target_db,
        feed_length=None if cfg.feed.length_mm is None else cfg.feed.length_mm * MM,
        shunt_caps=(idc.shunt_caps_pf[0] * PF, idc.shunt_caps_pf[1] * PF),
    )


def _fixed_geometry(cfg: DesignConfig) -> IdcGeometry:
    idc = cfg.idc
    return IdcGeometry(
        finger_width=idc.finger_width_mm * MM,
        gap=idc.gap_mm * MM,
        finger_length=idc.finger_length_mm * MM,
        n_fingers=idc.n_fingers if idc.n_fingers is not None else 3,
        terminal_width=idc.terminal_width_mm * MM,
    )


def build_design_report(cfg: DesignConfig) -> dict:
    substrate = cfg.substrate.to_substrate()
    f0 = cfg.patch.f0_ghz * GHZ
    synthesized = patch_dimensions(f0, substrate)
    analyzed = cfg.patch.to_patch(substrate)
    z_source = cfg.match.z_source_ohm

    load = TwoSlotPatchLoad(analyzed, substrate)
    f_res, r_res = find_resonance(load, 0.8 * f0, 1.2 * f0)
    summary = radiation_summary(analyzed, substrate, f0)
    w_feed = synthesize_width(cfg.feed.z0_ohm, substrate)
    lam_g = guided_wavelength(f0, substrate)

    z0_transformer = quarter_wave_z0(z_source, r_res)
    w_tr = synthesize_width(z0_transformer, substrate)
    eps_tr = effective_permittivity(w_tr, substrate)

    return {
        "schema_version": SCHEMA_VERSION,
        "f0_ghz": cfg.patch.f0_ghz,
        "synthesized_patch": {
            "w_mm": synthesized.w / MM,
            "l_mm": synthesized.l / MM,
            "delta_l_mm": synthesized.delta_l / MM,
            "l_eff_mm": synthesized.l_eff / MM,
            "eps_eff": effective_permittivity(synthesized.w, substrate),
        },
        "analyzed_patch": {
            "w_mm": analyzed.w / MM,
            "l_mm": analyzed.l / MM,
            "delta_l_mm": analyzed.delta_l / MM,
            "eps_eff": effective_permittivity(analyzed.w, substrate),
            "resonance_ghz": f_res / GHZ,
            "zin_resonant_ohm": r_res,
            "zin_slot_pair_quadrature_ohm": summary.zin_resonant,
            "g1_siemens": summary.g1,
            "g12_siemens": summary.g12,
            "directivity_db": summary.directivity_db,
        },
        "feed_line": {
            "z0_ohm": cfg.feed.z0_ohm,
            "width_mm": w_feed / MM,
            "lambda_g_mm": lam_g / MM,
            "quarter_wave_mm": lam_g / 4.0 / MM,
        },
        "transformer": {
            "z0_ohm": z0_transformer,
            "width_mm": w_tr / MM,
            "length_mm": 299792458.0 / (4.0 * f0 * math.sqrt(eps_tr)) / MM,
            "length_substrate_convention_mm": lam_g / 4.0 / MM,
            "eps_eff": eps_tr,
        },
    }


def build_match_report(
    cfg: DesignConfig, out_dir: Path, *, exhaustive: bool = False
) -> tuple[dict, dict]:
    """Returns (report, files) where files maps kind -> path."""
    substrate = cfg.substrate.to_substrate()
    patch = cfg.patch.to_patch(substrate)
    spec = _match_spec(cfg, substrate)
    f0 = spec.f0

    if cfg.idc.is_fixed:
        geometry = _fixed_geometry(cfg)
        desc = build_match_chain(patch, substrate, spec, geometry)
        sweep_cfg = cfg.sweep
        f_lo = sweep_cfg.f_min_ghz * GHZ if sweep_cfg else 0.9 * f0
        f_hi = sweep_cfg.f_max_ghz * GHZ if sweep_cfg else 1.1 * f0
        n = sweep_cfg.n_points if sweep_cfg else 1001
        sweep = sweep_s11(desc, f_lo, f_hi, n, z_source=spec.z_source)
        net = desc.chain(f0)
        s11_f0 = s11_db(input_reflection(net, desc.load.impedance(f0), spec.z_source))
        eps_idc = effective_permittivity(spec.finger_width, substrate)
        result_geometry = geometry
        achieved = s11_f0 <= spec.target_db
        c_series = series_capacitance(geometry, eps_idc)
        r_series = series_resistance(geometry, f0, substrate.sigma)
        optimized = False
    else:
        result = synthesize_match(patch, substrate, spec)
        sweep_cfg = cfg.sweep
        if sweep_cfg is not None:
            desc = build_match_chain(patch, substrate, spec, result.geometry)
            sweep = sweep_s11(
                desc,
                sweep_cfg.f_min_ghz * GHZ,
                sweep_cfg.f_max_ghz * GHZ,
                sweep_cfg.n_points,
                z_source=spec.z_source,
            )
        else:
            sweep = result.sweep
        result_geometry = result.geometry
        s11_f0 = result.s11_at_f0
        achieved = result.achieved
        c_series = result.c_series
        r_series = result.r_series
        optimized = True

    try:
        bandwidth_hz = bandwidth_minus_10db(sweep)
    except Error:
        bandwidth_hz = None

    report = {
        "schema_version": SCHEMA_VERSION,
        "f0_ghz": f0 / GHZ,
        "optimized": optimized,
        "achieved": achieved,
        "target_db": spec.target_db,
        "s11_at_f0_db": s11_f0,
        "bandwidth_mhz": None if bandwidth_hz is None else bandwidth_hz / 1e6,
        "geometry": {
            "n_fingers": result_geometry.n_fingers,
            "finger_length_mm": result_geometry.finger_length / MM,
            "finger_width_mm": result_geometry.finger_width / MM,
            "gap_mm": result_geometry.gap / MM,
            "terminal_width_mm": result_geometry.terminal_width / MM,
        },
        "c_series_pf": c_series / PF,
        "r_series_ohm": r_series,
    }
    if exhaustive and not cfg.idc.is_fixed:
        grid_geometry, grid_db = exhaustive_grid_search(patch, substrate, spec)
        report["grid_best_db"] = grid_db
        report["grid_geometry"] = {
            "n_fingers": grid_geometry.n_fingers,
            "finger_length_mm": grid_geometry.finger_length / MM,
        }
        report["grid_agreement_db"] = abs(grid_db - s11_f0)

    out_dir.mkdir(parents=True, exist_ok=True)
    files = {
        "report": out_dir / "match_report.json",
        "csv": out_dir / "match_sweep.csv",
        "touchstone": out_dir / "match_sweep.s1p",
        "smith": out_dir / "match_smith.csv",
    }
    io_mod.write_sweep_csv(files["csv"], sweep)
    io_mod.write_touchstone_oneport(files["touchstone"], sweep, spec.z_source)
    io_mod.write_smith_csv(files["smith"], sweep, spec.z_source)
    report["files"] = {k: str(v) for k, v in files.items() if k != "report"}
    io_mod.write_json_report(files["report"], report)
    return report, files


def run_sweep_files(cfg: DesignConfig, out_dir: Path) -> dict:
    if cfg.sweep is None:
        raise ConfigError("sweep", "the sweep command requires a sweep block")
    if cfg.idc is None or not cfg.idc.is_fixed:
        raise ConfigError(
            "idc.finger_length_mm",
            "the sweep command requires explicit capacitor geometry (no optimization)",
        )
    substrate = cfg.substrate.to_substrate()
    patch = cfg.patch.to_patch(substrate)
    spec = _match_spec(cfg, substrate)
    desc = build_match_chain(patch, substrate, spec, _fixed_geometry(cfg))
    sweep = sweep_s11(
        desc,
        cfg.sweep.f_min_ghz * GHZ,
        cfg.sweep.f_max_ghz * GHZ,
        cfg.sweep.n_points,
        z_source=spec.z_source,
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    files = {
        "csv": out_dir / "sweep.csv",
        "touchstone": out_dir / "sweep.s1p",
        "smith": out_dir / "smith.csv",
    }
    io_mod.write_sweep_csv(files["csv"], sweep)
    io_mod.write_touchstone_oneport(files["touchstone"], sweep, spec.z_source)
    io_mod.write_smith_csv(files["smith"], sweep, spec.z_source)
    low = sweep.minimum()
    return {
        "schema_version": SCHEMA_VERSION,
        "n_points": len(sweep.points),
        "min_s11_db": 20.0 * math.log10(max(abs(low.s11), 1e-30)),
        "f_at_min_ghz": low.f / GHZ,
        "files": {k: str(v) for k, v in files.items()},
    }


def _analyze_compare_design(cfg: DesignConfig, compare: CompareConfig):
    substrate = cfg.substrate.to_substrate()
    f0 = cfg.patch.f0_ghz * GHZ
    f_lo = compare.sweep.f_min_ghz * GHZ
    f_hi = compare.sweep.f_max_ghz * GHZ
    n = compare.sweep.n_points
    z_source = compare.match.z_source_ohm

    if cfg.kind == "quarter_wave" and not cfg.patch.has_override:
        # dimension the reference patch so its circuit model resonates at f0
        w = patch_dimensions(f0, substrate).w
        l = resonance_aligned_length(w, substrate, f0)
        patch = PatchGeometry(w=w, l=l, delta_l=fringing_extension(w, substrate), f0=f0)
    else:
        patch = cfg.patch.to_patch(substrate)

    if cfg.kind == "idc":
        spec = _match_spec(cfg, substrate)
        if cfg.idc.is_fixed:
            desc = build_match_chain(patch, substrate, spec, _fixed_geometry(cfg))
        else:
            result = synthesize_match(patch, substrate, spec)
            desc = build_match_chain(patch, substrate, spec, result.geometry)
    elif cfg.kind == "quarter_wave":
        line = quarter_wave_design(patch, substrate, f0, z_source)
        desc = NetworkDescription(
            elements=(
                TransmissionLineElement(
                    z0=line.z0, eps_eff=line.eps_eff, length=line.length
                ),
            ),
            load=TwoSlotPatchLoad(patch, substrate),
        )
    else:  # inset
        desc = reference_inset_design(
            substrate,
            patch,
            cfg.inset.slit_length_mm * MM,
            feed_z0=cfg.feed.z0_ohm,
            feed_length=None if cfg.feed.length_mm is None else cfg.feed.length_mm * MM,
        )

    _, zin_res = find_resonance(desc.load, 0.8 * f0, 1.2 * f0)
    summary = radiation_summary(patch, substrate, f0)
    analysis, sweep = analyze_description(
        cfg.name,
        cfg.kind,
        desc,
        f_lo,
        f_hi,
        n,
        z_source=z_source,
        zin_resonant=zin_res,
        directivity_db=summary.directivity_db,
    )
    return analysis, sweep


def build_compare_report(compare: CompareConfig) -> dict:
    analyses = []
    for design_cfg in compare.designs:
        analysis, _ = _analyze_compare_design(design_cfg, compare)
        analyses.append(analysis)
    report = comparison_report(analyses)
    report["schema_version"] = SCHEMA_VERSION
    return report


# --------------------------------------------------------------------------
# Output formatting and entry points
# --------------------------------------------------------------------------


def _print_text(report: dict, indent: str = "") -> None:
    for key, value in report.items():
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _print_text(value, indent + "  ")
        elif isinstance(value, float):
            print(f"{indent}{key}: {value:.6g}")
        else:
            print(f"{indent}{key}: {value}")


def _print_compare_table(report: dict) -> None:
    designs = report["designs"]
    metrics = [k for k in designs[0] if k not in ("name", "kind")]
    name_w = max(len("metric"), *(len(m) for m in metrics)) + 2
    col_w = max(14, *(len(d["name"]) + 2 for d in designs))
    header = "metric".ljust(name_w) + "".join(d["name"].rjust(col_w) for d in designs)
    print(header)
    print("-" * len(header))
    for metric in metrics:
        row = metric.ljust(name_w)
        for d in designs:
            value = d[metric]
            cell = "-" if value is None else f"{value:.4g}"
            row += cell.rjust(col_w)
        print(row)


def _emit(report: dict, fmt: str, *, table: bool = False) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, allow_nan=False))
    elif table:
        _print_compare_table(report)
    else:
        _print_text(report)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="JSON configuration file")
    parser.add_argument(
        "--out-dir", default=".", help="directory for emitted files (default: .)"
    )
    parser.add_argument(
        "--format", choices=("json", "text"), default="text", help="report format"
    )


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patchrf",
        description="Rectangular patch antenna design and capacitor matching",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("design", "closed-form patch synthesis and impedance summary"),
        ("match", "synthesize the capacitor matching network"),
        ("sweep", "sweep an explicit design and emit data files"),
        ("compare", "compare several designs over a common sweep"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        if name == "match":
            p.add_argument("--exhaustive", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    out_dir = Path(args.out_dir)
    try:
        data = load_config_file(args.config)
        if args.command == "design":
            report = build_design_report(parse_design_config(data))
            _emit(report, args.format)
        elif args.command == "match":
            report, _ = build_match_report(
                parse_design_config(data), out_dir, exhaustive=args.exhaustive
            )
            _emit(report, args.format)
        elif args.command == "sweep":
            report = run_sweep_files(parse_design_config(data), out_dir)
            _emit(report, args.format)
        elif args.command == "compare":
            report = build_compare_report(parse_compare_config(data))
            out_dir.mkdir(parents=True, exist_ok=True)
            io_mod.write_json_report(out_dir / "comparison.json", report)
            if args.format == "json":
                _emit(report, "json")
            else:
                _print_compare_table(report)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (Error, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
