"""Grid sweeps of the invariants and their CSV form"""

import csv
import io
import logging
from typing import List, Optional, TextIO

from e4surf.frame.frame import FrameFunction, frame_function
from e4surf.invariants.invariants import InvariantReport, invariant_report
from e4surf.patch.patch import SurfacePatch
from e4surf.utils.grid import GridSpec
from e4surf.utils.utils import format_float

_logger: logging.Logger = logging.getLogger(__name__)

CSV_HEADER = ["u", "v", "g11", "g12", "g22", "K1", "K2", "K", "H1", "H2", "Hnorm", "KN"]


def grid_invariants(s: SurfacePatch, grid: GridSpec, frame: Optional[FrameFunction] = None) -> List[InvariantReport]:
    """Evaluates the invariant stack at every grid node, u outer

    Args:
        s (SurfacePatch): Patch
        grid (GridSpec): Grid inside the patch domain
        frame (FrameFunction): Normal frame, the patch frame by default

    Returns:
        list: One report per node
    """
    frame = frame or frame_function(s)
    reports = []
    for i, j, u, v in grid.nodes():
        _logger.debug("Invariants at node (%d, %d) u=%.6g v=%.6g", i, j, u, v)
        reports.append(invariant_report(s, u, v, frame))
    return reports


def csv_row(report: InvariantReport) -> List[str]:
    m, c = report.metric, report.curvature
    values = [report.u, report.v, m.g11, m.g12, m.g22, c.K1, c.K2, c.K, c.H1, c.H2, c.Hnorm, c.KN]
    return [format_float(x) for x in values]


def write_invariants_csv(reports: List[InvariantReport], stream: TextIO) -> None:
    """Writes the invariant report with a fixed header, one row per node"""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for report in reports:
        writer.writerow(csv_row(report))


def invariants_csv(reports: List[InvariantReport]) -> str:
    buffer = io.StringIO()
    write_invariants_csv(reports, buffer)
    return buffer.getvalue()
