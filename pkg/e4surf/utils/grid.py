"""Parameter domains and sampling grids"""

import math
import re
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Optional, Sequence, Tuple

import numpy as np

from e4surf.errors import ConfigError

_EDGE_EPS = 1e-12


@dataclass(frozen=True)
class Domain:
    """Parameter box [u_min, u_max] x [v_min, v_max]"""

    u_min: float
    u_max: float
    v_min: float
    v_max: float

    def __post_init__(self) -> None:
        if not (self.u_min < self.u_max and self.v_min < self.v_max):
            raise ConfigError(f"degenerate domain box {self}")

    @property
    def u_range(self) -> Tuple[float, float]:
        return (self.u_min, self.u_max)

    @property
    def v_range(self) -> Tuple[float, float]:
        return (self.v_min, self.v_max)

    def contains(self, u: float, v: float, pad: float = 0.0) -> bool:
        """Checks that the box [u-pad, u+pad] x [v-pad, v+pad] lies inside the domain"""
        eps = _EDGE_EPS * (1.0 + max(abs(self.u_min), abs(self.u_max), abs(self.v_min), abs(self.v_max)))
        return (
            self.u_min - eps <= u - pad
            and u + pad <= self.u_max + eps
            and self.v_min - eps <= v - pad
            and v + pad <= self.v_max + eps
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"u": [self.u_min, self.u_max], "v": [self.v_min, self.v_max]}


@dataclass(frozen=True)
class GridSpec:
    """Inclusive nu x nv grid over a sub-box of a patch domain"""

    nu: int
    nv: int
    u_range: Tuple[float, float]
    v_range: Tuple[float, float]

    def __post_init__(self) -> None:
        if self.nu < 2 or self.nv < 2:
            raise ConfigError(f"grid must be at least 2x2, got {self.nu}x{self.nv}")
        if not (self.u_range[0] < self.u_range[1] and self.v_range[0] < self.v_range[1]):
            raise ConfigError(f"degenerate grid range u={self.u_range} v={self.v_range}")

    @classmethod
    def over(cls, domain: Domain, nu: int, nv: int) -> "GridSpec":
        return cls(nu, nv, domain.u_range, domain.v_range)

    @classmethod
    def parse(cls, text: str, u_range: Tuple[float, float], v_range: Tuple[float, float]) -> "GridSpec":
        """Parses `NUxNV`

        Args:
            text (str): Grid size, e.g. 32x32
            u_range (tuple): u sub-range
            v_range (tuple): v sub-range

        Returns:
            GridSpec: Grid
        """
        match = re.fullmatch(r"\s*(\d+)\s*[xX]\s*(\d+)\s*", text)
        if not match:
            raise ConfigError(f"grid must look like NUxNV, got '{text}'")
        return cls(int(match.group(1)), int(match.group(2)), u_range, v_range)

    @property
    def u_values(self) -> np.ndarray:
        return np.linspace(self.u_range[0], self.u_range[1], self.nu)

    @property
    def v_values(self) -> np.ndarray:
        return np.linspace(self.v_range[0], self.v_range[1], self.nv)

    @property
    def du(self) -> float:
        return (self.u_range[1] - self.u_range[0]) / (self.nu - 1)

    @property
    def dv(self) -> float:
        return (self.v_range[1] - self.v_range[0]) / (self.nv - 1)

    @property
    def size(self) -> int:
        return self.nu * self.nv

    @property
    def diameter(self) -> float:
        return math.hypot(self.u_range[1] - self.u_range[0], self.v_range[1] - self.v_range[0])

    def nodes(self) -> Iterator[Tuple[int, int, float, float]]:
        """Yields (i, j, u, v), u outer, v inner"""
        v_values = self.v_values
        for i, u in enumerate(self.u_values):
            for j, v in enumerate(v_values):
                yield i, j, float(u), float(v)

    @property
    def box(self) -> Domain:
        return Domain(self.u_range[0], self.u_range[1], self.v_range[0], self.v_range[1])

    def within(self, domain: Domain) -> bool:
        return domain.contains(self.u_range[0], self.v_range[0]) and domain.contains(
            self.u_range[1], self.v_range[1]
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"nu": self.nu, "nv": self.nv, "u": list(self.u_range), "v": list(self.v_range)}


def grid_for(
    domain: Domain,
    size: str,
    u_range: Optional[Sequence[float]] = None,
    v_range: Optional[Sequence[float]] = None,
) -> GridSpec:
    """Grid of the given size over a sub-box of a domain, the whole domain by default

    Args:
        domain (Domain): Patch domain
        size (str): NUxNV
        u_range (list): u sub-range
        v_range (list): v sub-range

    Returns:
        GridSpec: Grid inside the domain
    """
    u = (float(u_range[0]), float(u_range[1])) if u_range else domain.u_range
    v = (float(v_range[0]), float(v_range[1])) if v_range else domain.v_range
    grid = GridSpec.parse(size, u, v)
    if not grid.within(domain):
        raise ConfigError(f"grid range u={list(u)} v={list(v)} leaves the domain {domain.to_dict()}")
    return grid
