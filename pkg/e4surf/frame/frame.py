"""Normal frames, their numerical derivatives and torsion coefficients"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from e4surf.errors import ConfigError, FrameBranchError, IrregularPointError
from e4surf.patch.patch import REGULARITY_EPS, Jet2, SurfacePatch
from e4surf.utils.grid import Domain
from e4surf.utils.numeric import first_derivative_stencil

_logger: logging.Logger = logging.getLogger(__name__)

FRAME_FD_STEP = 1e-4
RESIDUAL_EPS = 1e-8
ALIGNMENT_MIN = 0.9
FRAME_KINDS = ("auto", "analytic", "gram_schmidt")


@dataclass(frozen=True, eq=False)
class NormalFrame:
    """Orthonormal basis N1, N2 of the normal space at one point"""

    n1: np.ndarray
    n2: np.ndarray

    def normal(self, alpha: int) -> np.ndarray:
        """N_alpha with a 0-based index"""
        return self.n1 if alpha == 0 else self.n2

    def rotated(self, theta: float) -> "NormalFrame":
        """Frame rotated by theta inside the normal plane"""
        c, s = math.cos(theta), math.sin(theta)
        return NormalFrame(c * self.n1 + s * self.n2, -s * self.n1 + c * self.n2)

    def orthonormality_defect(self) -> float:
        return float(
            max(abs(self.n1 @ self.n1 - 1.0), abs(self.n2 @ self.n2 - 1.0), abs(self.n1 @ self.n2))
        )

    def normality_defect(self, j: Jet2) -> float:
        return float(max(abs(n @ t) for n in (self.n1, self.n2) for t in (j.xu, j.xv)))


@dataclass(frozen=True, eq=False)
class FrameJet:
    """Frame with its first partial derivatives"""

    frame: NormalFrame
    n1u: np.ndarray
    n1v: np.ndarray
    n2u: np.ndarray
    n2v: np.ndarray

    def derivative(self, alpha: int, i: int) -> np.ndarray:
        """(N_alpha)_{u^i} with 0-based indices"""
        if alpha == 0:
            return self.n1u if i == 0 else self.n1v
        return self.n2u if i == 0 else self.n2v


@dataclass(frozen=True)
class Torsion:
    """Torsion coefficients T_i^12; T_i^21 = -T_i^12 and T_i^aa = 0"""

    t1: float
    t2: float

    def component(self, i: int) -> float:
        return self.t1 if i == 0 else self.t2

    def coefficient(self, i: int, alpha: int, beta: int) -> float:
        """T_i^{alpha beta} with 0-based indices"""
        if alpha == beta:
            return 0.0
        sign = 1.0 if alpha == 0 else -1.0
        return sign * self.component(i)


FrameFunction = Callable[[float, float], NormalFrame]


def _sign_normalized(n: np.ndarray) -> np.ndarray:
    for component in n:
        if abs(component) > 1e-12:
            return n if component > 0 else -n
    return n


def gram_schmidt_frame(j: Jet2) -> NormalFrame:
    """Normal frame by modified Gram-Schmidt over (x_u, x_v, e1, e2, e3, e4)

    Seeds whose residual after projection is shorter than 1e-8 are skipped; each normal
    vector has its first non-zero component positive.

    Args:
        j (Jet2): Jet at a regular point

    Returns:
        NormalFrame: Deterministic frame
    """
    basis: List[np.ndarray] = []
    for seed in [j.xu, j.xv, *np.eye(4)]:
        residual = np.array(seed, dtype=float)
        for b in basis:
            residual = residual - (residual @ b) * b
        norm = float(np.linalg.norm(residual))
        if norm < RESIDUAL_EPS:
            continue
        basis.append(residual / norm)
        if len(basis) == 4:
            break
    if len(basis) < 4:
        raise IrregularPointError(j.gram)
    return NormalFrame(_sign_normalized(basis[2]), _sign_normalized(basis[3]))


def normal_frame(s: SurfacePatch, u: float, v: float, kind: str = "auto") -> NormalFrame:
    """Normal frame of a patch at (u, v)

    Args:
        s (SurfacePatch): Patch
        u (float): u parameter
        v (float): v parameter
        kind (str): `auto` (analytic when available), `analytic` or `gram_schmidt`

    Returns:
        NormalFrame: Frame
    """
    if kind not in FRAME_KINDS:
        raise ConfigError(f"unknown frame kind '{kind}', expected one of {FRAME_KINDS}")
    j = s.jet(u, v)
    if j.gram <= REGULARITY_EPS:
        raise IrregularPointError(j.gram, (u, v))
    if kind != "gram_schmidt":
        analytic = s.analytic_frame(u, v)
        if analytic is not None:
            return NormalFrame(*analytic)
        if kind == "analytic":
            raise ConfigError(f"surface {s.name} has no analytic normal frame")
    return gram_schmidt_frame(j)


def frame_function(s: SurfacePatch, kind: str = "auto") -> FrameFunction:
    """Binds a patch and frame kind into a (u, v) -> NormalFrame callable"""
    if kind not in FRAME_KINDS:
        raise ConfigError(f"unknown frame kind '{kind}', expected one of {FRAME_KINDS}")
    if kind == "analytic" and not s.has_analytic_frame:
        raise ConfigError(f"surface {s.name} has no analytic normal frame")

    def _frame(u: float, v: float) -> NormalFrame:
        return normal_frame(s, u, v, kind)

    return _frame


def _aligned(frame: NormalFrame, center: NormalFrame, where: Tuple[float, float]) -> NormalFrame:
    vectors = []
    for alpha in (0, 1):
        n, ref = frame.normal(alpha), center.normal(alpha)
        dot = float(n @ ref)
        if abs(dot) < ALIGNMENT_MIN:
            raise FrameBranchError(
                f"N{alpha + 1} jumps on the stencil at (u={where[0]:.6g}, v={where[1]:.6g}): alignment {dot:.3f}"
            )
        vectors.append(n if dot > 0 else -n)
    return NormalFrame(vectors[0], vectors[1])


def frame_derivatives(
    s: SurfacePatch,
    u: float,
    v: float,
    h: float = FRAME_FD_STEP,
    frame: Optional[FrameFunction] = None,
    domain: Optional[Domain] = None,
) -> FrameJet:
    """Differentiates the normal frame numerically

    Central differences where the stencil fits the box, second-order one-sided otherwise.
    Stencil frames are sign-aligned to the center frame before differencing.

    Args:
        s (SurfacePatch): Patch
        u (float): u parameter
        v (float): v parameter
        h (float): Step
        frame (FrameFunction): Frame to differentiate, the patch frame by default
        domain (Domain): Box the stencil must stay in, the patch domain by default

    Returns:
        FrameJet: Frame and its partial derivatives
    """
    frame = frame or frame_function(s)
    box = domain or s.domain
    center = frame(u, v)

    def _partial(axis: int) -> Tuple[np.ndarray, np.ndarray]:
        t, lo, hi = (u, box.u_min, box.u_max) if axis == 0 else (v, box.v_min, box.v_max)
        offsets, weights = first_derivative_stencil(t, h, lo, hi)
        d1, d2 = np.zeros(4), np.zeros(4)
        for offset, weight in zip(offsets, weights):
            if offset == 0.0:
                f = center
            else:
                point = (u + offset, v) if axis == 0 else (u, v + offset)
                f = _aligned(frame(*point), center, (u, v))
            d1 = d1 + weight * f.n1
            d2 = d2 + weight * f.n2
        return d1, d2

    n1u, n2u = _partial(0)
    n1v, n2v = _partial(1)
    return FrameJet(center, n1u, n1v, n2u, n2v)


def torsion_coefficients(fj: FrameJet) -> Torsion:
    """T_i^12 = <(N1)_{u^i}, N2>"""
    return Torsion(float(fj.n1u @ fj.frame.n2), float(fj.n1v @ fj.frame.n2))
