import math
import unittest

import numpy as np

from e4surf.classify.classify import (
    CHEN_VERDICTS,
    ClassificationReport,
    chen_dichotomy,
    check_evolute,
    check_H_parallel,
    check_parallel,
    fit_hypersphere,
)
from e4surf.patch.catalog import make_catalog_surface
from e4surf.transport.offsets import ConstantOffsets, offset_field, parse_offset_spec
from e4surf.utils.grid import GridSpec

SMALL_GRID = GridSpec(5, 5, (0.1, 0.9), (0.1, 0.9))


class TestClassificationReport(unittest.TestCase):
    def test_classification_report(self):
        report = ClassificationReport("parallel", {"name": "plane"}, SMALL_GRID, {"a": 1e-3, "b": 1e-3})
        report.add_node(0.0, 0.0, a=1e-4, b=2e-4)
        report.add_node(0.5, 0.0, a=5e-3, b=0.0)
        report.add_node(1.0, 0.0, a=2e-3, b=0.0)
        self.assertFalse(report.passed)
        self.assertEqual(report.verdict, "fail")
        self.assertEqual(report.residual_max, 5e-3)
        self.assertEqual(report.residual_max_of("b"), 2e-4)
        self.assertEqual([node.u for node in report.failed_nodes], [0.5, 1.0])
        data = report.to_dict()
        self.assertEqual(data["verdict"], "fail")
        self.assertEqual(len(data["nodes_failed"]), 2)
        self.assertEqual(data["grid"], SMALL_GRID.to_dict())

    def test_classification_report_checks(self):
        report = ClassificationReport("T0", {}, None, {"x": 0.0})
        report.checks["x"] = 0.0
        self.assertTrue(report.passed)
        report.checks["x"] = 1.0
        self.assertEqual(report.failed_checks, ["x"])
        self.assertFalse(report.passed)
        self.assertIsNone(report.to_dict()["grid"])

    def test_classification_report_empty(self):
        report = ClassificationReport("T0", {}, None, {})
        self.assertTrue(report.passed)
        self.assertEqual(report.residual_max, 0.0)
        self.assertEqual(report.residual_mean, 0.0)


class TestCheckParallel(unittest.TestCase):
    def test_check_parallel_clifford(self):
        report = check_parallel(make_catalog_surface("clifford_torus"), ConstantOffsets(0.3, 0.4), SMALL_GRID)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.statistics["squared_sum_mean"], 0.25, delta=1e-15)
        self.assertAlmostEqual(report.statistics["squared_sum_deviation"], 0.0, delta=1e-15)

    def test_check_parallel_vranceanu_constant(self):
        s = make_catalog_surface("vranceanu", {"lambda": 1.0, "mu": 1.0})
        report = check_parallel(s, ConstantOffsets(0.3, 0.4), SMALL_GRID)
        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.residual_max_of("f1_u"), 0.4 / math.sqrt(2.0), delta=1e-6)

    def test_check_parallel_vranceanu_rotating(self):
        s = make_catalog_surface("vranceanu", {"lambda": 1.0, "mu": 1.0})
        kind, params = parse_offset_spec("custom:0.5*cos(u/sqrt(2));0.5*sin(u/sqrt(2))")
        report = check_parallel(s, offset_field(kind, params, s), SMALL_GRID)
        self.assertTrue(report.passed, report.to_dict())
        self.assertAlmostEqual(report.statistics["squared_sum_deviation"], 0.0, delta=1e-12)


class TestCheckEvolute(unittest.TestCase):
    def test_check_evolute_clifford(self):
        clifford = make_catalog_surface("clifford_torus")
        self.assertTrue(check_evolute(clifford, offset_field("evolute", {}, clifford), SMALL_GRID).passed)
        report = check_evolute(clifford, ConstantOffsets(0.3, 0.4), SMALL_GRID)
        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.residual_max_of("uu"), 0.7, delta=1e-6)
        self.assertAlmostEqual(report.statistics["mean_curvature_condition"], 0.65, delta=1e-12)

    def test_check_evolute_vranceanu(self):
        s = make_catalog_surface("vranceanu", {"lambda": 1.0, "mu": 1.0})
        report = check_evolute(s, offset_field("evolute", {}, s), SMALL_GRID)
        self.assertTrue(report.passed, report.to_dict())
        self.assertLessEqual(report.statistics["mean_curvature_condition"], 1e-12)


class TestCheckHParallel(unittest.TestCase):
    def test_check_H_parallel_clifford(self):
        report = check_H_parallel(make_catalog_surface("clifford_torus"), SMALL_GRID)
        self.assertTrue(report.passed)
        self.assertNotIn("minimal", report.flags)
        self.assertAlmostEqual(report.statistics["h_squared_mean"], 0.5, delta=1e-14)
        self.assertAlmostEqual(report.statistics["h_norm_max"], math.sqrt(0.5), delta=1e-14)

    def test_check_H_parallel_minimal(self):
        report = check_H_parallel(make_catalog_surface("complex_curve"), SMALL_GRID)
        self.assertTrue(report.passed)
        self.assertIn("minimal", report.flags)

    def test_check_H_parallel_translation_parabola(self):
        report = check_H_parallel(make_catalog_surface("translation_parabola"), SMALL_GRID)
        self.assertFalse(report.passed)
        slope = max(1.5 * u * (1 + u * u) ** -2.5 for u in SMALL_GRID.u_values)
        self.assertAlmostEqual(report.residual_max_of("h1_u"), slope, delta=1e-6)


class TestChen(unittest.TestCase):
    def test_fit_hypersphere(self):
        rng = np.random.default_rng(11)
        directions = rng.normal(size=(40, 4))
        directions /= np.linalg.norm(directions, axis=1)[:, None]
        center = np.array([1.0, -2.0, 0.5, 0.0])
        fitted, radius, deviation = fit_hypersphere(center + 3.0 * directions)
        np.testing.assert_allclose(fitted, center, atol=1e-10)
        self.assertAlmostEqual(radius, 3.0, delta=1e-10)
        self.assertLessEqual(deviation, 1e-12)

    def test_chen_dichotomy(self):
        cases = {
            "clifford_torus": "flat-normal-bundle",
            "complex_curve": "H-zero",
            "translation_parabola": "not-H-parallel",
            "sphere": "flat-normal-bundle",
        }
        for name, verdict in cases.items():
            with self.subTest(surface=name):
                result = chen_dichotomy(make_catalog_surface(name), SMALL_GRID)
                self.assertIn(result.verdict, CHEN_VERDICTS)
                self.assertEqual(result.verdict, verdict)
                self.assertTrue(result.passed)

    def test_chen_dichotomy_clifford_in_hypersphere(self):
        result = chen_dichotomy(make_catalog_surface("clifford_torus"), SMALL_GRID)
        self.assertTrue(result.hypersphere)
        self.assertAlmostEqual(result.radius, math.sqrt(2.0), delta=1e-10)
        data = result.to_dict()
        self.assertEqual(data["verdict"], "flat-normal-bundle")
        self.assertEqual(data["h_parallel"]["verdict"], "pass")
