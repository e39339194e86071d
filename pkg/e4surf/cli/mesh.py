"""Projection to 3D and OBJ-subset meshes"""

import re
from typing import Callable, List, TextIO

import numpy as np

from e4surf.errors import ConfigError, NumericError
from e4surf.utils.grid import GridSpec
from e4surf.utils.utils import format_float

Projection = Callable[[np.ndarray], np.ndarray]

POLE_EPS = 1e-12


def _drop(axis: int) -> Projection:
    def _project(x: np.ndarray) -> np.ndarray:
        return np.delete(np.asarray(x, dtype=float), axis)

    return _project


def _stereographic(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        return np.zeros(3)
    p = x / norm
    denominator = 1.0 - p[3]
    if denominator < POLE_EPS:
        raise NumericError(f"point {x.tolist()} projects to the pole of the stereographic projection")
    return p[:3] / denominator


def parse_projection(text: str) -> Projection:
    """Parses `drop:k` (k in 1..4) or `stereo`

    Args:
        text (str): Projection spec

    Returns:
        Projection: Map from E4 to E3
    """
    if text.strip() == "stereo":
        return _stereographic
    match = re.fullmatch(r"\s*drop\s*:\s*([1-4])\s*", text)
    if not match:
        raise ConfigError(f"projection must be drop:k with k in 1..4 or stereo, got '{text}'")
    return _drop(int(match.group(1)) - 1)


def grid_faces(grid: GridSpec) -> List[List[int]]:
    """Two triangles per grid cell, 1-based vertex indices, vertices ordered u outer"""
    faces = []
    for i in range(grid.nu - 1):
        for j in range(grid.nv - 1):
            a = i * grid.nv + j + 1
            b = (i + 1) * grid.nv + j + 1
            faces.append([a, b, b + 1])
            faces.append([a, b + 1, a + 1])
    return faces


def write_obj(vertices: np.ndarray, grid: GridSpec, stream: TextIO) -> None:
    """Writes `v x y z` lines then `f i j k` lines

    Args:
        vertices (np.ndarray): Projected vertices, shape (nu * nv, 3), u outer
        grid (GridSpec): Grid the vertices were sampled on
        stream (TextIO): Output
    """
    if len(vertices) != grid.size:
        raise ValueError(f"expected {grid.size} vertices, got {len(vertices)}")
    for vertex in vertices:
        stream.write("v " + " ".join(format_float(c) for c in vertex) + "\n")
    for face in grid_faces(grid):
        stream.write("f " + " ".join(str(k) for k in face) + "\n")
