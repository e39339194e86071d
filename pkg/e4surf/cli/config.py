"""Run configuration built from the parsed command line"""

import argparse
import os
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from e4surf.errors import ConfigError
from e4surf.frame.frame import FrameFunction, frame_function
from e4surf.patch.catalog import CATALOG, make_catalog_surface
from e4surf.patch.patch import SurfacePatch
from e4surf.patch.surface_file import load_surface_file
from e4surf.utils.grid import GridSpec, grid_for
from e4surf.utils.utils import parse_bindings

DEFAULT_GRID = "16x16"

_RANGE_RE = re.compile(r"^\s*([uv])\s*:\s*([^,]+),([^,]+)\s*$")


def parse_ranges(items: List[str]) -> Dict[str, Tuple[float, float]]:
    """Parses `u:a,b` / `v:a,b` sub-ranges

    Args:
        items (list): Range texts

    Returns:
        dict: Ranges keyed by variable
    """
    ranges: Dict[str, Tuple[float, float]] = {}
    for item in items:
        match = _RANGE_RE.match(item)
        if not match:
            raise ConfigError(f"range must look like u:a,b or v:a,b, got '{item}'")
        try:
            lo, hi = float(match.group(2)), float(match.group(3))
        except ValueError as ex:
            raise ConfigError(f"range bounds must be real numbers, got '{item}'") from ex
        if match.group(1) in ranges:
            raise ConfigError(f"range for {match.group(1)} given twice")
        ranges[match.group(1)] = (lo, hi)
    return ranges


@dataclass(frozen=True)
class RunConfig:
    command: str
    surface: Optional[str] = None
    surface_file: Optional[str] = None
    params: Dict[str, float] = field(default_factory=dict)
    grid: Optional[str] = None
    ranges: Dict[str, Tuple[float, float]] = field(default_factory=dict)
    offsets: Optional[str] = None
    offset_params: Dict[str, float] = field(default_factory=dict)
    frame: Optional[str] = None
    tol: Optional[float] = None
    project: str = "drop:4"
    out: Optional[str] = None
    report: Optional[str] = None
    mode: Optional[str] = None
    theorem: Optional[str] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """Validates the parsed arguments

        Args:
            args (argparse.Namespace): Parsed command line

        Returns:
            RunConfig: Configuration
        """
        surface, surface_file = None, None
        if args.surface:
            if args.surface in CATALOG:
                surface = args.surface
            elif args.surface.endswith(".json") or os.path.sep in args.surface:
                if not os.path.isfile(args.surface):
                    raise ConfigError(f"surface file {args.surface} does not exist")
                surface_file = args.surface
            else:
                raise ConfigError(f"unknown catalog surface '{args.surface}', expected one of {sorted(CATALOG)}")
        if surface_file and args.params:
            raise ConfigError("--param applies to catalog surfaces; put parameters in the surface file")
        if args.tol is not None and args.tol <= 0:
            raise ConfigError(f"tolerance must be positive, got {args.tol}")
        config = cls(
            command=args.command,
            surface=surface,
            surface_file=surface_file,
            params=parse_bindings(args.params),
            grid=args.grid,
            ranges=parse_ranges(args.ranges),
            offsets=args.offsets,
            offset_params=parse_bindings(args.offset_params),
            frame=args.frame,
            tol=args.tol,
            project=args.project,
            out=args.out,
            report=args.report,
            mode=getattr(args, "mode", None),
            theorem=getattr(args, "theorem", None),
        )
        if config.command in ("invariants", "transport", "classify") and not (surface or surface_file):
            raise ConfigError(f"{config.command} needs --surface")
        if config.command == "transport" and not config.offsets:
            raise ConfigError("transport needs --offsets")
        if config.command == "classify" and config.mode in ("parallel", "evolute") and not config.offsets:
            raise ConfigError(f"classify {config.mode} needs --offsets")
        return config

    def build_surface(self) -> SurfacePatch:
        if self.surface_file:
            return load_surface_file(self.surface_file)
        if not self.surface:
            raise ConfigError("no surface given")
        return make_catalog_surface(self.surface, self.params)

    def build_grid(self, s: SurfacePatch) -> GridSpec:
        return grid_for(s.domain, self.grid or DEFAULT_GRID, self.ranges.get("u"), self.ranges.get("v"))

    def build_frame(self, s: SurfacePatch) -> FrameFunction:
        return frame_function(s, self.frame or "auto")

    def verify_overrides(self) -> Dict[str, object]:
        """Scenario overrides of the verify command; unset flags keep the scenario defaults"""
        overrides: Dict[str, object] = {
            "surface": self.surface,
            "file": self.surface_file,
            "grid": self.grid,
            "offsets": self.offsets,
            "tol": self.tol,
            "frame": self.frame,
        }
        if self.params:
            overrides["params"] = dict(self.params)
        if self.offset_params:
            overrides["offset_params"] = dict(self.offset_params)
        if self.ranges:
            overrides["range"] = {k: list(v) for k, v in self.ranges.items()}
        return {k: v for k, v in overrides.items() if v is not None}
