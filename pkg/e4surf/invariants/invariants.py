"""Metric, second fundamental form and curvature invariants of a surface in E4

Index conventions: arrays are 0-based, `c[alpha, i, j]` stores c_ij^alpha,
`w[alpha, i, k]` stores c_alpha^{ik} and `gamma[k, i, j]` stores Gamma^k_ij.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from e4surf.errors import IrregularPointError
from e4surf.frame.frame import (
    FRAME_FD_STEP,
    FrameFunction,
    FrameJet,
    NormalFrame,
    Torsion,
    frame_derivatives,
    frame_function,
    torsion_coefficients,
)
from e4surf.patch.patch import REGULARITY_EPS, Jet2, SurfacePatch
from e4surf.utils.grid import Domain
from e4surf.utils.numeric import derivative

_logger: logging.Logger = logging.getLogger(__name__)

CROSS_CHECK_TOL = 1e-10


@dataclass(frozen=True)
class Metric:
    g11: float
    g12: float
    g22: float
    g: float
    ginv11: float
    ginv12: float
    ginv22: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.g11, self.g12], [self.g12, self.g22]])

    @property
    def inverse(self) -> np.ndarray:
        return np.array([[self.ginv11, self.ginv12], [self.ginv12, self.ginv22]])


@dataclass(frozen=True, eq=False)
class Christoffel:
    gamma: np.ndarray

    def symbol(self, k: int, i: int, j: int) -> float:
        return float(self.gamma[k, i, j])


@dataclass(frozen=True, eq=False)
class SecondFundamentalForm:
    c: np.ndarray

    def coefficient(self, alpha: int, i: int, j: int) -> float:
        return float(self.c[alpha, i, j])


@dataclass(frozen=True, eq=False)
class WeingartenForms:
    w: np.ndarray

    def coefficient(self, alpha: int, i: int, k: int) -> float:
        return float(self.w[alpha, i, k])


@dataclass(frozen=True)
class CurvatureReport:
    u: float
    v: float
    K1: float
    K2: float
    K: float
    H1: float
    H2: float
    Hnorm: float
    KN: float


@dataclass(frozen=True, eq=False)
class InvariantReport:
    """Every invariant at one point, computed with one frame"""

    u: float
    v: float
    jet: Jet2
    frame: NormalFrame
    metric: Metric
    christoffel: Christoffel
    sff: SecondFundamentalForm
    weingarten: WeingartenForms
    curvature: CurvatureReport
    frame_jet: Optional[FrameJet] = None
    torsion: Optional[Torsion] = None


def first_fundamental_form(j: Jet2) -> Metric:
    """Coefficients of the first fundamental form and their inverse

    Args:
        j (Jet2): Jet

    Returns:
        Metric: Metric at the jet's point
    """
    g11 = float(j.xu @ j.xu)
    g12 = float(j.xu @ j.xv)
    g22 = float(j.xv @ j.xv)
    g = g11 * g22 - g12 * g12
    if not g > REGULARITY_EPS:
        raise IrregularPointError(g)
    return Metric(g11, g12, g22, g, g22 / g, -g12 / g, g11 / g)


def christoffel(j: Jet2, m: Metric, half: bool = True) -> Christoffel:
    """Christoffel symbols from exact metric derivatives

    Args:
        j (Jet2): Jet
        m (Metric): Metric at the same point
        half (bool): Use the conventional factor 1/2; False reproduces the printed form without it

    Returns:
        Christoffel: Symbols Gamma^k_ij
    """
    tangents = (j.xu, j.xv)
    # dg[k, i, j] = d/du^k g_ij
    dg = np.zeros((2, 2, 2))
    for k in range(2):
        for i in range(2):
            for jj in range(2):
                dg[k, i, jj] = j.second(i, k) @ tangents[jj] + tangents[i] @ j.second(jj, k)
    ginv = m.inverse
    factor = 0.5 if half else 1.0
    gamma = np.zeros((2, 2, 2))
    for k in range(2):
        for i in range(2):
            for jj in range(2):
                gamma[k, i, jj] = factor * sum(
                    ginv[k, lo] * (dg[i, jj, lo] + dg[jj, lo, i] - dg[lo, i, jj]) for lo in range(2)
                )
    return Christoffel(gamma)


def second_fundamental_form(j: Jet2, f: NormalFrame) -> SecondFundamentalForm:
    """c_ij^alpha = <x_{u^i u^j}, N_alpha>"""
    c = np.zeros((2, 2, 2))
    for alpha in range(2):
        n = f.normal(alpha)
        for i in range(2):
            for jj in range(2):
                c[alpha, i, jj] = j.second(i, jj) @ n
    return SecondFundamentalForm(c)


def weingarten_forms(sff: SecondFundamentalForm, m: Metric) -> WeingartenForms:
    """c_alpha^{ik} = sum_j c_ij^alpha g^{jk}; all four (i, k) components are kept"""
    return WeingartenForms(np.einsum("aij,jk->aik", sff.c, m.inverse))


def _cross_check(name: str, value: float, other: float) -> None:
    if abs(value - other) > CROSS_CHECK_TOL * (1.0 + abs(value)):
        _logger.warning("%s disagrees between its two formulas: %.17g vs %.17g", name, value, other)


def gaussian_curvature(sff: SecondFundamentalForm, m: Metric) -> Tuple[float, float, float]:
    """K_alpha = (c_11 c_22 - c_12^2) / g and K = K_1 + K_2

    Args:
        sff (SecondFundamentalForm): Second fundamental form
        m (Metric): Metric

    Returns:
        tuple: K1, K2, K
    """
    c = sff.c
    k = [float((c[a, 0, 0] * c[a, 1, 1] - c[a, 0, 1] ** 2) / m.g) for a in range(2)]
    w = weingarten_forms(sff, m).w
    for a in range(2):
        _cross_check(f"K{a + 1}", k[a], float(w[a, 0, 0] * w[a, 1, 1] - w[a, 0, 1] * w[a, 1, 0]))
    return k[0], k[1], k[0] + k[1]


def mean_curvature(sff: SecondFundamentalForm, m: Metric) -> Tuple[float, float, float]:
    """H_alpha = (g22 c_11 + g11 c_22 - 2 g12 c_12) / 2g and the norm of the mean curvature vector

    Args:
        sff (SecondFundamentalForm): Second fundamental form
        m (Metric): Metric

    Returns:
        tuple: H1, H2, Hnorm
    """
    c = sff.c
    h = [float((m.g22 * c[a, 0, 0] + m.g11 * c[a, 1, 1] - 2 * m.g12 * c[a, 0, 1]) / (2 * m.g)) for a in range(2)]
    w = weingarten_forms(sff, m).w
    for a in range(2):
        _cross_check(f"H{a + 1}", h[a], float(0.5 * (w[a, 0, 0] + w[a, 1, 1])))
    return h[0], h[1], math.hypot(h[0], h[1])


def normal_curvature(sff: SecondFundamentalForm, m: Metric) -> float:
    """K_N = S_12^12 / sqrt(g) with S_12^12 = sum_mn (c_1m^1 c_n2^2 - c_2m^1 c_n1^2) g^mn"""
    c, ginv = sff.c, m.inverse
    s = sum(
        (c[0, 0, a] * c[1, b, 1] - c[0, 1, a] * c[1, b, 0]) * ginv[a, b] for a in range(2) for b in range(2)
    )
    return float(s / math.sqrt(m.g))


def torsion_at(
    s: SurfacePatch,
    u: float,
    v: float,
    h: float = FRAME_FD_STEP,
    frame: Optional[FrameFunction] = None,
    domain: Optional[Domain] = None,
) -> Torsion:
    return torsion_coefficients(frame_derivatives(s, u, v, h, frame, domain))


def normal_curvature_fd(
    s: SurfacePatch,
    u: float,
    v: float,
    h: float = FRAME_FD_STEP,
    frame: Optional[FrameFunction] = None,
    domain: Optional[Domain] = None,
) -> float:
    """Normal curvature from derivatives of the torsion coefficients, (1/sqrt g)((T1)_v - (T2)_u)

    Args:
        s (SurfacePatch): Patch
        u (float): u parameter
        v (float): v parameter
        h (float): Step for both the frame and the torsion derivatives
        frame (FrameFunction): Continuous frame, the patch frame by default
        domain (Domain): Box the stencils must stay in

    Returns:
        float: K_N
    """
    frame = frame or frame_function(s)
    box = domain or s.domain
    t1_v = derivative(
        lambda t: np.array([torsion_at(s, u, t, h, frame, box).t1]), v, h, box.v_min, box.v_max
    )
    t2_u = derivative(
        lambda t: np.array([torsion_at(s, t, v, h, frame, box).t2]), u, h, box.u_min, box.u_max
    )
    m = first_fundamental_form(s.jet(u, v))
    return float((t1_v[0] - t2_u[0]) / math.sqrt(m.g))


def gauss_residual(j: Jet2, gamma: Christoffel, sff: SecondFundamentalForm, f: NormalFrame) -> float:
    """Largest component of x_{u^i u^j} - sum_k Gamma^k_ij x_{u^k} - sum_a c_ij^a N_a"""
    tangents = (j.xu, j.xv)
    worst = 0.0
    for i, jj in ((0, 0), (0, 1), (1, 1)):
        r = j.second(i, jj).copy()
        for k in range(2):
            r -= gamma.gamma[k, i, jj] * tangents[k]
        for alpha in range(2):
            r -= sff.c[alpha, i, jj] * f.normal(alpha)
        worst = max(worst, float(np.max(np.abs(r))))
    return worst


def weingarten_residual(j: Jet2, fj: FrameJet, w: WeingartenForms, t: Torsion) -> float:
    """Largest component of (N_a)_{u^i} + sum_k c_a^{ik} x_{u^k} - sum_b T_i^{ab} N_b"""
    tangents = (j.xu, j.xv)
    worst = 0.0
    for alpha in range(2):
        for i in range(2):
            r = fj.derivative(alpha, i).copy()
            for k in range(2):
                r += w.w[alpha, i, k] * tangents[k]
            for beta in range(2):
                r -= t.coefficient(i, alpha, beta) * fj.frame.normal(beta)
            worst = max(worst, float(np.max(np.abs(r))))
    return worst


def compatibility_residual(j: Jet2, fj: FrameJet, sff: SecondFundamentalForm) -> float:
    """Largest |c_ij^a + <x_{u^i}, (N_a)_{u^j}>|"""
    tangents = (j.xu, j.xv)
    return float(
        max(
            abs(sff.c[alpha, i, jj] + tangents[i] @ fj.derivative(alpha, jj))
            for alpha in range(2)
            for i in range(2)
            for jj in range(2)
        )
    )


def invariant_report(
    s: SurfacePatch,
    u: float,
    v: float,
    frame: Optional[FrameFunction] = None,
    with_torsion: bool = False,
    h: float = FRAME_FD_STEP,
    domain: Optional[Domain] = None,
) -> InvariantReport:
    """Computes the full invariant stack at (u, v)

    Args:
        s (SurfacePatch): Patch
        u (float): u parameter
        v (float): v parameter
        frame (FrameFunction): Normal frame, the patch frame by default
        with_torsion (bool): Also differentiate the frame and compute torsion coefficients
        h (float): Frame derivative step
        domain (Domain): Box the frame stencils must stay in

    Returns:
        InvariantReport: Report
    """
    frame = frame or frame_function(s)
    j = s.jet(u, v)
    try:
        m = first_fundamental_form(j)
    except IrregularPointError as ex:
        raise IrregularPointError(ex.gram, (u, v)) from ex
    f = frame(u, v)
    sff = second_fundamental_form(j, f)
    k1, k2, k = gaussian_curvature(sff, m)
    h1, h2, hnorm = mean_curvature(sff, m)
    kn = normal_curvature(sff, m)
    fj: Optional[FrameJet] = None
    t: Optional[Torsion] = None
    if with_torsion:
        fj = frame_derivatives(s, u, v, h, frame, domain)
        t = torsion_coefficients(fj)
    return InvariantReport(
        u=u,
        v=v,
        jet=j,
        frame=f,
        metric=m,
        christoffel=christoffel(j, m),
        sff=sff,
        weingarten=weingarten_forms(sff, m),
        curvature=CurvatureReport(u, v, k1, k2, k, h1, h2, hnorm, kn),
        frame_jet=fj,
        torsion=t,
    )
