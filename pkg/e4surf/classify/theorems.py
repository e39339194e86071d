"""Scripted scenarios checking the classification theorems on concrete instances"""

import logging
import math
import os
from typing import Any, Callable, Dict, Mapping, Optional

import numpy as np
import yaml

from e4surf.classify.classify import ClassificationReport, check_evolute, check_H_parallel, check_parallel
from e4surf.classify.evolute import EvoluteSolution, solve_evolute_offsets
from e4surf.errors import ConfigError, FlatnessError, NoEvoluteError
from e4surf.frame.frame import FrameFunction, frame_function
from e4surf.frame.parallel import parallelize_frame
from e4surf.invariants.invariants import invariant_report
from e4surf.patch.catalog import VranceanuSurface, make_catalog_surface
from e4surf.patch.patch import SurfacePatch
from e4surf.patch.surface_file import load_surface_file
from e4surf.transport.offsets import EvoluteOffsets, OffsetField, offset_field, parse_offset_spec
from e4surf.transport.transport import transport_surface
from e4surf.utils.grid import GridSpec, grid_for
from e4surf.utils.utils import deep_merge

_logger: logging.Logger = logging.getLogger(__name__)

SCENARIOS_FILE = os.path.join(os.path.dirname(__file__), "scenarios.yaml")

_parsed_file: Dict[str, Any] = {}

# keys that only make sense together with the surface they were written for
_SURFACE_BOUND_KEYS = ("params", "range", "file")


def load_scenarios(path: str = SCENARIOS_FILE) -> Dict[str, Any]:
    """Parses the scenarios file once and caches it

    Args:
        path (str): Path to the scenarios file

    Returns:
        dict: Parsed file
    """
    if path not in _parsed_file:
        with open(path, encoding="utf-8") as yaml_file:
            _parsed_file[path] = yaml.safe_load(yaml_file)
    return _parsed_file[path]  # type: ignore


def scenario_config(theorem_id: str, overrides: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
    """Resolves the configuration of one scenario

    Defaults, then the scenario, then the overrides are deep-merged. Overriding the surface drops
    the scenario's parameters and ranges.

    Args:
        theorem_id (str): Scenario id
        overrides (Mapping): User overrides

    Returns:
        dict: Scenario configuration
    """
    scenarios = load_scenarios()
    if theorem_id not in scenarios["scenarios"]:
        raise ConfigError(f"unknown theorem id '{theorem_id}', expected one of {sorted(scenarios['scenarios'])}")
    scenario = dict(scenarios["scenarios"][theorem_id])
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    if "surface" in overrides or "file" in overrides:
        scenario.pop("surface", None)
        for key in _SURFACE_BOUND_KEYS:
            scenario.pop(key, None)
    return deep_merge(scenarios["defaults"], scenario, overrides)


def _surface(cfg: Mapping[str, Any]) -> SurfacePatch:
    if cfg.get("file"):
        return load_surface_file(cfg["file"])
    if not cfg.get("surface"):
        raise ConfigError("scenario names no surface")
    return make_catalog_surface(cfg["surface"], cfg.get("params"))


def _grid(cfg: Mapping[str, Any], s: SurfacePatch) -> GridSpec:
    ranges = cfg.get("range") or {}
    return grid_for(s.domain, str(cfg["grid"]), ranges.get("u"), ranges.get("v"))


def _offsets(cfg: Mapping[str, Any], s: SurfacePatch, frame: FrameFunction) -> OffsetField:
    if not cfg.get("offsets"):
        raise ConfigError("scenario needs an offset spec")
    kind, params = parse_offset_spec(str(cfg["offsets"]))
    return offset_field(kind, params, s, frame, cfg.get("offset_params"))


def _new_report(
    theorem_id: str, s: SurfacePatch, grid: Optional[GridSpec], cfg: Mapping[str, Any]
) -> ClassificationReport:
    report = ClassificationReport(theorem_id, s.describe(), grid, {})
    report.metadata["description"] = cfg.get("description", "")
    report.metadata["config"] = {k: v for k, v in cfg.items() if k != "description"}
    return report


def _agreement(report: ClassificationReport, name: str, left: bool, right: bool) -> None:
    report.checks[name] = 0.0 if left == right else 1.0
    report.tolerances[name] = 0.0


def _verify_t3(cfg: Dict[str, Any], s: SurfacePatch, grid: GridSpec, frame: FrameFunction) -> ClassificationReport:
    """Parallelizes the frame first, then checks the constant-offset transport in it"""
    report = _new_report("T3", s, grid, cfg)
    flatness_tol = float(cfg.get("flatness_tol", 1e-6))
    report.tolerances["max_kn"] = flatness_tol
    try:
        field = parallelize_frame(s, grid, frame, flatness_tol)
    except FlatnessError as ex:
        report.checks["max_kn"] = abs(ex.kn)
        report.statistics["worst_node"] = list(ex.node)
        report.flags.append("non-flat-normal-bundle")
        _logger.info("T3: %s", ex)
        return report
    report.checks["max_kn"] = field.max_kn
    parallel = check_parallel(s, _offsets(cfg, s, frame), grid, float(cfg["tol"]), field.frame)
    report.checks["parallel_residual"] = parallel.residual_max
    report.tolerances["parallel_residual"] = float(cfg["tol"])
    report.statistics["theta_range"] = [float(field.theta.min()), float(field.theta.max())]
    return report


def _verify_t4(cfg: Dict[str, Any], s: SurfacePatch, grid: GridSpec, frame: FrameFunction) -> ClassificationReport:
    report = _new_report("T4", s, grid, cfg)
    tol = float(cfg["tol"])
    parallel = check_parallel(s, _offsets(cfg, s, frame), grid, tol, frame)
    h_parallel = check_H_parallel(s, grid, tol, frame)
    _agreement(report, "agreement", parallel.passed, h_parallel.passed)
    report.flags.extend(h_parallel.flags)
    report.statistics.update(
        {
            "transport_parallel": parallel.passed,
            "transport_residual_max": parallel.residual_max,
            "h_parallel": h_parallel.passed,
            "h_parallel_residual_max": h_parallel.residual_max,
        }
    )
    return report


def _verify_t5(cfg: Dict[str, Any], s: SurfacePatch, grid: GridSpec, frame: FrameFunction) -> ClassificationReport:
    report = _new_report("T5", s, grid, cfg)
    tol = float(cfg["tol"])
    parallel = check_parallel(s, _offsets(cfg, s, frame), grid, tol, frame)
    squares, sums = [], []
    for _, _, u, v in grid.nodes():
        c = invariant_report(s, u, v, frame).curvature
        squares.append(c.K1**2 + c.K2**2)
        sums.append(c.K)
    squares_dev = float(np.max(np.abs(np.array(squares) - np.mean(squares))))
    sums_dev = float(np.max(np.abs(np.array(sums) - np.mean(sums))))
    _agreement(report, "agreement", parallel.passed, squares_dev <= tol)
    report.statistics.update(
        {
            "transport_parallel": parallel.passed,
            "squared_curvature_sum_deviation": squares_dev,
            "gaussian_curvature_deviation": sums_dev,
            "gaussian_curvature_mean": float(np.mean(sums)),
        }
    )
    return report


def _verify_t7(cfg: Dict[str, Any], s: SurfacePatch, grid: GridSpec, frame: FrameFunction) -> ClassificationReport:
    report = _new_report("T7", s, grid, cfg)
    report.tolerances["condition"] = float(cfg.get("condition_tol", 1e-8))
    unsolved = 0
    for _, _, u, v in grid.nodes():
        result = solve_evolute_offsets(s, u, v, frame)
        if isinstance(result, EvoluteSolution):
            report.add_node(u, v, condition=result.mean_curvature_residual)
        else:
            unsolved += 1
    report.statistics["unsolved_nodes"] = unsolved
    if unsolved:
        report.flags.append("no-evolute" if unsolved == grid.size else "partial-evolute")
        return report
    evolute = check_evolute(s, EvoluteOffsets(s, frame), grid, float(cfg["tol"]), frame)
    report.checks["evolute_residual"] = evolute.residual_max
    report.tolerances["evolute_residual"] = float(cfg["tol"])
    return report


def _verify_t8(cfg: Dict[str, Any], s: SurfacePatch, grid: GridSpec, frame: FrameFunction) -> ClassificationReport:
    report = _new_report("T8", s, grid, cfg)
    report.tolerances["kn_given_evolute"] = float(cfg.get("kn_tol", 1e-4))
    try:
        evolute = check_evolute(s, _offsets(cfg, s, frame), grid, float(cfg["tol"]), frame)
    except NoEvoluteError as ex:
        report.checks["kn_given_evolute"] = 0.0
        report.flags.append("no-evolute")
        _logger.info("T8: %s", ex)
        return report
    max_kn = max(abs(invariant_report(s, u, v, frame).curvature.KN) for _, _, u, v in grid.nodes())
    report.checks["kn_given_evolute"] = max_kn if evolute.passed else 0.0
    report.statistics.update(
        {"evolute": evolute.passed, "evolute_residual_max": evolute.residual_max, "max_kn": max_kn}
    )
    return report


def _verify_t9(cfg: Dict[str, Any], s: SurfacePatch, grid: GridSpec, frame: FrameFunction) -> ClassificationReport:
    report = _new_report("T9", s, grid, cfg)
    report.tolerances["solution_found"] = 0.0
    rng = np.random.default_rng(int(cfg.get("seed", 0)))
    samples = int(cfg.get("samples", 25))
    minimal = True
    for u, v in zip(rng.uniform(*grid.u_range, samples), rng.uniform(*grid.v_range, samples)):
        u, v = float(u), float(v)
        c = invariant_report(s, u, v, frame).curvature
        minimal = minimal and c.Hnorm <= float(cfg["tol"])
        result = solve_evolute_offsets(s, u, v, frame)
        report.add_node(u, v, solution_found=1.0 if isinstance(result, EvoluteSolution) else 0.0)
    if not minimal:
        report.flags.append("not-minimal")
    return report


def _verify_t10(cfg: Dict[str, Any], s: SurfacePatch, grid: GridSpec, frame: FrameFunction) -> ClassificationReport:
    """Compares the solved evolute with the closed form of the exponential profile"""
    if not isinstance(s, VranceanuSurface):
        raise ConfigError(f"T10 needs a rotation surface of the Vranceanu family, got {s.name}")
    report = _new_report("T10", s, grid, cfg)
    report.tolerances.update(
        {
            "closed_form": float(cfg.get("closed_form_tol", 1e-8)),
            "offsets": float(cfg.get("offsets_tol", 1e-9)),
            "ode": float(cfg.get("ode_tol", 1e-12)),
            "unsolved": 0.0,
        }
    )
    ts = transport_surface(s, EvoluteOffsets(s, frame), frame)
    for _, _, u, v in grid.nodes():
        ode = abs(s.ode_residual(v))
        result = solve_evolute_offsets(s, u, v, frame)
        if not isinstance(result, EvoluteSolution):
            report.add_node(u, v, unsolved=1.0, ode=ode)
            continue
        r, r1, _ = s.profile(v)
        offsets = max(abs(result.f1 - math.hypot(r, r1)), abs(result.f2))
        closed_form = float(np.max(np.abs(ts.position(u, v) - s.evolute_closed_form(u, v))))
        report.add_node(u, v, closed_form=closed_form, offsets=offsets, ode=ode)
    return report


def _verify_c1(cfg: Dict[str, Any], s: SurfacePatch, grid: GridSpec, frame: FrameFunction) -> ClassificationReport:
    report = _new_report("C1", s, grid, cfg)
    tol = float(cfg["tol"])
    parallel = check_parallel(s, _offsets(cfg, s, frame), grid, tol, frame)
    deviation = parallel.statistics["squared_sum_deviation"]
    report.checks["squared_sum_given_parallel"] = deviation if parallel.passed else 0.0
    report.tolerances["squared_sum_given_parallel"] = 10 * tol * grid.diameter
    report.statistics.update({"transport_parallel": parallel.passed, "squared_sum_deviation": deviation})
    return report


def _verify_c2(cfg: Dict[str, Any], s: SurfacePatch, grid: GridSpec, frame: FrameFunction) -> ClassificationReport:
    report = _new_report("C2", s, grid, cfg)
    tol = float(cfg["tol"])
    evolute = check_evolute(s, _offsets(cfg, s, frame), grid, tol, frame)
    deviation = max(abs(invariant_report(s, u, v, frame).curvature.Hnorm - 1.0) for _, _, u, v in grid.nodes())
    _agreement(report, "agreement", evolute.passed, deviation <= tol)
    report.statistics.update(
        {
            "evolute": evolute.passed,
            "evolute_residual_max": evolute.residual_max,
            "unit_mean_curvature_deviation": deviation,
        }
    )
    return report


def _verify_p1(cfg: Dict[str, Any], s: SurfacePatch, grid: GridSpec, frame: FrameFunction) -> ClassificationReport:
    report = _new_report("P1", s, grid, cfg)
    h_parallel = check_H_parallel(s, grid, float(cfg["tol"]), frame)
    deviation = h_parallel.statistics["h_squared_deviation"]
    applies = h_parallel.passed and "minimal" not in h_parallel.flags
    report.checks["h_squared_deviation"] = deviation if applies else 0.0
    report.tolerances["h_squared_deviation"] = float(cfg.get("deviation_tol", 1e-6))
    report.flags.extend(h_parallel.flags)
    report.statistics.update(
        {"h_parallel": h_parallel.passed, "h_squared_mean": h_parallel.statistics["h_squared_mean"]}
    )
    return report


THEOREMS: Dict[str, Callable[[Dict[str, Any], SurfacePatch, GridSpec, FrameFunction], ClassificationReport]] = {
    "T3": _verify_t3,
    "T4": _verify_t4,
    "T5": _verify_t5,
    "T7": _verify_t7,
    "T8": _verify_t8,
    "T9": _verify_t9,
    "T10": _verify_t10,
    "C1": _verify_c1,
    "C2": _verify_c2,
    "P1": _verify_p1,
}


def verify_theorem(theorem_id: str, overrides: Optional[Mapping[str, Any]] = None) -> ClassificationReport:
    """Runs one theorem scenario

    Args:
        theorem_id (str): One of T3, T4, T5, T7, T8, T9, T10, C1, C2, P1
        overrides (Mapping): surface, file, params, grid, range, offsets, offset_params, tol, frame

    Returns:
        ClassificationReport: Report whose verdict says whether the checkable direction holds
    """
    if theorem_id not in THEOREMS:
        raise ConfigError(f"unknown theorem id '{theorem_id}', expected one of {sorted(THEOREMS)}")
    cfg = scenario_config(theorem_id, overrides)
    s = _surface(cfg)
    grid = _grid(cfg, s)
    frame = frame_function(s, str(cfg.get("frame", "auto")))
    _logger.info("Verifying %s on %s over a %dx%d grid", theorem_id, s.name, grid.nu, grid.nv)
    report = THEOREMS[theorem_id](cfg, s, grid, frame)
    _logger.info("%s: %s (residual max %.3e)", theorem_id, report.verdict, report.residual_max)
    return report
