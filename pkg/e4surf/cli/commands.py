"""Command handlers"""

import contextlib
import json
import logging
import os
import sys
from typing import Any, Dict, Iterator, List, Optional, TextIO

import numpy as np

from e4surf.arguments import THEOREM_IDS, parse_args
from e4surf.classify.classify import chen_dichotomy, check_evolute, check_H_parallel, check_parallel
from e4surf.classify.theorems import load_scenarios, verify_theorem
from e4surf.cli.config import RunConfig
from e4surf.cli.mesh import parse_projection, write_obj
from e4surf.errors import ConfigError, E4SurfError, exit_code_for
from e4surf.invariants.report import grid_invariants, write_invariants_csv
from e4surf.logging import set_verbosity
from e4surf.patch.catalog import list_catalog
from e4surf.transport.offsets import OFFSET_KINDS, offset_field, parse_offset_spec
from e4surf.transport.transport import regularity_report, transport_surface

_logger: logging.Logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DEGENERATE = 3
EXIT_FAILED = 4

DEFAULT_TOLERANCES = {"parallel": 1e-6, "evolute": 1e-5, "hparallel": 1e-6, "chen": 1e-6}


@contextlib.contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if not path:
        yield sys.stdout
        return
    directory = os.path.dirname(path)
    if directory and not os.path.isdir(directory):
        raise ConfigError(f"output directory {directory} does not exist")
    with open(path, "w", encoding="utf-8", newline="") as stream:
        yield stream


def _write_json(data: Dict[str, Any], path: Optional[str]) -> None:
    with _output(path) as stream:
        stream.write(json.dumps(data, indent=2) + "\n")
    if path:
        _logger.info("Wrote %s", path)


def cmd_list(cfg: RunConfig) -> int:
    """Lists catalog surfaces, offset kinds and theorem scenarios"""
    scenarios = load_scenarios()["scenarios"]
    lines: List[str] = ["surfaces:"]
    for entry in list_catalog():
        defaults = [f"{k}={v}" for k, v in dict(entry["defaults"]).items()]  # type: ignore
        params = ", ".join(list(entry["required"]) + defaults)  # type: ignore
        lines.append(f"  {entry['name']:<22}{entry['description']} [{params}] domain {entry['domain']}")
    lines.append("offsets:")
    lines.extend(f"  {kind}" for kind in OFFSET_KINDS)
    lines.append("theorems:")
    lines.extend(f"  {tid:<5}{scenarios[tid].get('description', '')}" for tid in THEOREM_IDS)
    with _output(cfg.out) as stream:
        stream.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_invariants(cfg: RunConfig) -> int:
    """Writes the invariants CSV over the grid"""
    s = cfg.build_surface()
    grid = cfg.build_grid(s)
    reports = grid_invariants(s, grid, cfg.build_frame(s))
    with _output(cfg.out) as stream:
        write_invariants_csv(reports, stream)
    if cfg.out:
        _logger.info("Wrote %d rows to %s", len(reports), cfg.out)
    return EXIT_OK


def cmd_transport(cfg: RunConfig) -> int:
    """Samples the transport, writes the projected mesh and the regularity report"""
    assert cfg.offsets is not None
    s = cfg.build_surface()
    grid = cfg.build_grid(s)
    frame = cfg.build_frame(s)
    project = parse_projection(cfg.project)
    kind, params = parse_offset_spec(cfg.offsets)
    ts = transport_surface(s, offset_field(kind, params, s, frame, cfg.offset_params), frame)
    vertices = np.array([project(ts.position(u, v)) for _, _, u, v in grid.nodes()])
    with _output(cfg.out) as stream:
        write_obj(vertices, grid, stream)
    report = regularity_report(ts, grid)
    report_path = cfg.report or (os.path.splitext(cfg.out)[0] + ".json" if cfg.out else None)
    if report_path:
        _write_json(report.to_dict(), report_path)
    else:
        sys.stderr.write(json.dumps(report.to_dict(), indent=2) + "\n")
    _logger.info("Transport %s: %d of %d nodes degenerate", ts.name, report.degenerate_count, grid.size)
    return EXIT_DEGENERATE if report.degenerate else EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    """Runs one classification and writes its JSON report"""
    assert cfg.mode is not None
    s = cfg.build_surface()
    grid = cfg.build_grid(s)
    frame = cfg.build_frame(s)
    tol = cfg.tol or DEFAULT_TOLERANCES[cfg.mode]
    if cfg.mode == "chen":
        result = chen_dichotomy(s, grid, tol, frame)
        _write_json(result.to_dict(), cfg.out)
        _logger.info("Dichotomy on %s: %s", s.name, result.verdict)
        return EXIT_OK if result.passed else EXIT_FAILED
    if cfg.mode == "hparallel":
        report = check_H_parallel(s, grid, tol, frame)
    else:
        assert cfg.offsets is not None
        kind, params = parse_offset_spec(cfg.offsets)
        off = offset_field(kind, params, s, frame, cfg.offset_params)
        check = check_parallel if cfg.mode == "parallel" else check_evolute
        report = check(s, off, grid, tol, frame)
    _write_json(report.to_dict(), cfg.out)
    _logger.info("%s on %s: %s (residual max %.3e)", cfg.mode, s.name, report.verdict, report.residual_max)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_verify(cfg: RunConfig) -> int:
    """Runs a theorem scenario with the command-line overrides"""
    assert cfg.theorem is not None
    report = verify_theorem(cfg.theorem, cfg.verify_overrides())
    _write_json(report.to_dict(), cfg.out)
    return EXIT_OK if report.passed else EXIT_FAILED


COMMANDS = {
    "list": cmd_list,
    "invariants": cmd_invariants,
    "transport": cmd_transport,
    "classify": cmd_classify,
    "verify": cmd_verify,
}


def run(argv: List[str]) -> int:
    """Parses the command line, runs the command and maps failures to exit codes

    Args:
        argv (list): Arguments without the program name

    Returns:
        int: Exit code
    """
    try:
        args = parse_args(argv)
        set_verbosity(args.verbosity)
        cfg = RunConfig.from_args(args)
        return COMMANDS[cfg.command](cfg)
    except E4SurfError as ex:
        _logger.error("Error: %s", ex)
        return exit_code_for(ex)
