import math
import unittest

import numpy as np

from e4surf.errors import ConfigError, FlatnessError, FrameBranchError, IrregularPointError
from e4surf.frame.frame import (
    NormalFrame,
    Torsion,
    frame_derivatives,
    frame_function,
    gram_schmidt_frame,
    normal_frame,
    torsion_coefficients,
)
from e4surf.frame.parallel import integrate_rotation, parallelize_frame
from e4surf.invariants.invariants import torsion_at
from e4surf.patch.catalog import make_catalog_surface
from e4surf.patch.patch import make_expression_surface
from e4surf.utils.grid import GridSpec

E = np.eye(4)


class TestNormalFrame(unittest.TestCase):
    def test_normal_frame_vranceanu(self):
        s = make_catalog_surface("vranceanu", {"lambda": 1.0, "mu": 1.0})
        f = normal_frame(s, 0.0, 0.0)
        np.testing.assert_allclose(f.n1, np.array([-1.0, 0.0, 1.0, 0.0]) / math.sqrt(2.0), atol=1e-15)
        np.testing.assert_allclose(f.n2, [0.0, 0.0, 0.0, -1.0], atol=1e-15)

    def test_normal_frame_gram_schmidt_plane(self):
        f = normal_frame(make_catalog_surface("plane"), 0.2, 0.3, "gram_schmidt")
        np.testing.assert_array_equal(f.n1, E[2])
        np.testing.assert_array_equal(f.n2, E[3])
        np.testing.assert_array_equal(normal_frame(make_catalog_surface("plane"), 0.2, 0.3).n1, E[2])

    def test_normal_frame_orthonormal(self):
        rng = np.random.default_rng(3)
        for name, params in (("vranceanu", {"lambda": 1.0, "mu": 0.3}), ("complex_curve", {}), ("sphere", {})):
            s = make_catalog_surface(name, params)
            for kind in ("analytic", "gram_schmidt"):
                for u, v in zip(
                    rng.uniform(s.domain.u_min, s.domain.u_max, 10), rng.uniform(s.domain.v_min, s.domain.v_max, 10)
                ):
                    with self.subTest(surface=name, kind=kind, u=u, v=v):
                        f = normal_frame(s, u, v, kind)
                        self.assertLessEqual(f.orthonormality_defect(), 1e-12)
                        self.assertLessEqual(f.normality_defect(s.jet(u, v)), 1e-12)

    def test_normal_frame_errors(self):
        plane = make_catalog_surface("plane")
        with self.assertRaises(ConfigError):
            normal_frame(plane, 0.0, 0.0, "analytic")
        with self.assertRaises(ConfigError):
            frame_function(plane, "analytic")
        with self.assertRaises(ConfigError):
            normal_frame(plane, 0.0, 0.0, "moving")

    def test_normal_frame_irregular(self):
        s = make_expression_surface(["u*v", "v", "0", "0"])
        with self.assertRaises(IrregularPointError) as cm:
            normal_frame(s, 0.5, 0.0)
        self.assertEqual(cm.exception.point, (0.5, 0.0))

    def test_gram_schmidt_frame_sign(self):
        f = gram_schmidt_frame(make_catalog_surface("complex_curve").jet(0.4, -0.3))
        for n in (f.n1, f.n2):
            first = next(c for c in n if abs(c) > 1e-12)
            self.assertGreater(first, 0.0)

    def test_rotated(self):
        f = NormalFrame(E[2], E[3]).rotated(0.5 * math.pi)
        np.testing.assert_allclose(f.n1, E[3], atol=1e-15)
        np.testing.assert_allclose(f.n2, -E[2], atol=1e-15)
        self.assertLessEqual(NormalFrame(E[2], E[3]).rotated(0.3).orthonormality_defect(), 1e-15)


class TestFrameDerivatives(unittest.TestCase):
    def test_torsion_vranceanu(self):
        mu = 0.7
        s = make_catalog_surface("vranceanu", {"lambda": 1.3, "mu": mu})
        for u, v in ((0.5, 0.5), (2.0, 1.0), (0.0, 0.0), (2 * math.pi, 0.5 * math.pi)):
            with self.subTest(u=u, v=v):
                t = torsion_at(s, u, v)
                self.assertAlmostEqual(t.t1, -mu / math.sqrt(1.0 + mu * mu), delta=1e-7)
                self.assertAlmostEqual(t.t2, 0.0, delta=1e-7)

    def test_torsion_complex_curve(self):
        s = make_catalog_surface("complex_curve")
        u, v = 0.3, -0.4
        t = torsion_at(s, u, v)
        s2 = 1.0 + 4 * u * u + 4 * v * v
        self.assertAlmostEqual(t.t1, 4 * v / s2, delta=1e-7)
        self.assertAlmostEqual(t.t2, -4 * u / s2, delta=1e-7)

    def test_torsion_clifford(self):
        t = torsion_at(make_catalog_surface("clifford_torus"), 1.0, 2.0)
        self.assertAlmostEqual(t.t1, 0.0, delta=1e-9)
        self.assertAlmostEqual(t.t2, 0.0, delta=1e-9)

    def test_frame_derivatives_aligns_signs(self):
        plane = make_catalog_surface("plane")

        def flipping(u, v):
            return NormalFrame(E[2] if u < 0.5 else -E[2], E[3])

        fj = frame_derivatives(plane, 0.49995, 0.0, frame=flipping)
        for alpha in (0, 1):
            for i in (0, 1):
                np.testing.assert_allclose(fj.derivative(alpha, i), np.zeros(4), atol=1e-12)

    def test_frame_derivatives_branch_error(self):
        plane = make_catalog_surface("plane")

        def swapping(u, v):
            return NormalFrame(E[2], E[3]) if u < 0.5 else NormalFrame(E[3], E[2])

        with self.assertRaises(FrameBranchError):
            frame_derivatives(plane, 0.49995, 0.0, frame=swapping)

    def test_torsion_coefficients(self):
        t = Torsion(0.25, -0.5)
        self.assertEqual(t.coefficient(0, 0, 1), 0.25)
        self.assertEqual(t.coefficient(0, 1, 0), -0.25)
        self.assertEqual(t.coefficient(1, 1, 0), 0.5)
        self.assertEqual(t.coefficient(1, 1, 1), 0.0)
        fj = frame_derivatives(make_catalog_surface("clifford_torus"), 1.0, 1.0)
        self.assertEqual(torsion_coefficients(fj), Torsion(float(fj.n1u @ fj.frame.n2), float(fj.n1v @ fj.frame.n2)))


class TestParallel(unittest.TestCase):
    def test_integrate_rotation(self):
        t1 = np.ones((3, 4))
        t2 = np.full((3, 4), 2.0)
        theta = integrate_rotation(t1, t2, 0.5, 0.25)
        expected = np.array([[-0.5 * i - 0.5 * j for j in range(4)] for i in range(3)])
        np.testing.assert_allclose(theta, expected, atol=1e-15)

    def test_parallelize_frame(self):
        s = make_catalog_surface("vranceanu", {"lambda": 1.0, "mu": 1.0})
        grid = GridSpec(8, 8, (0.0, 2.0), (0.0, 1.0))
        field = parallelize_frame(s, grid)
        self.assertLessEqual(field.max_kn, 1e-6)
        np.testing.assert_allclose(field.theta[:, 0], grid.u_values / math.sqrt(2.0), atol=1e-7)
        for u, v in ((0.5, 0.5), (1.3, 0.2), (1.9, 0.9)):
            with self.subTest(u=u, v=v):
                t = torsion_at(s, u, v, frame=field.frame, domain=grid.box)
                self.assertAlmostEqual(t.t1, 0.0, delta=1e-6)
                self.assertAlmostEqual(t.t2, 0.0, delta=1e-6)
        f = field.frame_at(3, 4)
        self.assertLessEqual(f.orthonormality_defect(), 1e-12)

    def test_parallelize_frame_not_flat(self):
        s = make_catalog_surface("complex_curve")
        with self.assertRaises(FlatnessError) as cm:
            parallelize_frame(s, GridSpec(4, 4, (0.2, 0.8), (0.2, 0.8)))
        self.assertGreater(abs(cm.exception.kn), 1e-6)
