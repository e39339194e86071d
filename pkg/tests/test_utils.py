import logging
import math
import unittest

import numpy as np

from e4surf.errors import ConfigError, OutOfDomainError
from e4surf.logging import logger, set_verbosity
from e4surf.utils.grid import Domain, GridSpec, grid_for
from e4surf.utils.numeric import derivative, first_derivative_stencil
from e4surf.utils.utils import deep_merge, format_float, parse_bindings, parse_key_value


class TestUtils(unittest.TestCase):
    def test_logger(self):
        with self.assertLogs("e4surf", level="INFO") as cm:
            logger.info("first message")
        self.assertEqual(cm.output, ["INFO:e4surf:first message"])

    def test_set_verbosity(self):
        set_verbosity(True)
        self.assertEqual(logger.level, logging.DEBUG)
        set_verbosity(False)
        self.assertEqual(logger.level, logging.INFO)

    def test_deep_merge(self):
        a = {"grid": "16x16", "params": {"lambda": 1.0, "mu": 1.0}}
        b = {"params": {"mu": 0.5}, "tol": 1e-3}
        self.assertEqual(
            deep_merge(a, b),
            {"grid": "16x16", "params": {"lambda": 1.0, "mu": 0.5}, "tol": 1e-3},
        )
        self.assertEqual(a["params"]["mu"], 1.0)

    def test_format_float(self):
        self.assertEqual(format_float(1.0), "1.0000000000000000e+00")
        self.assertEqual(format_float(-0.25), "-2.5000000000000000e-01")
        self.assertEqual(float(format_float(math.pi)), math.pi)

    def test_parse_key_value(self):
        self.assertEqual(parse_key_value("lambda=1.5"), ("lambda", 1.5))
        self.assertEqual(parse_key_value(" mu = -2e-1"), ("mu", -0.2))
        for text in ("lambda", "1x=2", "mu=abc"):
            with self.subTest(text=text):
                with self.assertRaises(ConfigError):
                    parse_key_value(text)

    def test_parse_bindings(self):
        self.assertEqual(parse_bindings(["a=1", "b=2", "a=3"]), {"a": 3.0, "b": 2.0})
        self.assertEqual(parse_bindings([]), {})


class TestGrid(unittest.TestCase):
    def test_domain(self):
        domain = Domain(0.0, 1.0, -1.0, 1.0)
        self.assertTrue(domain.contains(0.0, 1.0))
        self.assertTrue(domain.contains(0.5, 0.0, pad=0.5))
        self.assertFalse(domain.contains(0.5, 0.0, pad=0.6))
        self.assertFalse(domain.contains(1.1, 0.0))
        self.assertEqual(domain.to_dict(), {"u": [0.0, 1.0], "v": [-1.0, 1.0]})
        with self.assertRaises(ConfigError):
            Domain(1.0, 0.0, 0.0, 1.0)

    def test_grid_spec(self):
        grid = GridSpec.parse("3x2", (0.0, 1.0), (0.0, 2.0))
        self.assertEqual((grid.nu, grid.nv, grid.size), (3, 2, 6))
        self.assertEqual(grid.du, 0.5)
        self.assertEqual(grid.dv, 2.0)
        self.assertEqual(
            list(grid.nodes()),
            [
                (0, 0, 0.0, 0.0),
                (0, 1, 0.0, 2.0),
                (1, 0, 0.5, 0.0),
                (1, 1, 0.5, 2.0),
                (2, 0, 1.0, 0.0),
                (2, 1, 1.0, 2.0),
            ],
        )
        self.assertAlmostEqual(grid.diameter, math.sqrt(5.0))
        self.assertEqual(grid.box, Domain(0.0, 1.0, 0.0, 2.0))

    def test_grid_spec_invalid(self):
        for text in ("16", "1x16", "axb", "16x16x16"):
            with self.subTest(text=text):
                with self.assertRaises(ConfigError):
                    GridSpec.parse(text, (0.0, 1.0), (0.0, 1.0))

    def test_grid_for(self):
        domain = Domain(0.0, 2 * math.pi, 0.0, 0.5 * math.pi)
        grid = grid_for(domain, "8x8", v_range=[0.0, 1.0])
        self.assertEqual(grid.u_range, (0.0, 2 * math.pi))
        self.assertEqual(grid.v_range, (0.0, 1.0))
        with self.assertRaises(ConfigError):
            grid_for(domain, "8x8", v_range=[0.0, 2.0])


class TestNumeric(unittest.TestCase):
    def test_first_derivative_stencil(self):
        self.assertEqual(first_derivative_stencil(0.5, 0.1, 0.0, 1.0)[0], (-0.1, 0.1))
        self.assertEqual(first_derivative_stencil(0.0, 0.1, 0.0, 1.0)[0], (0.0, 0.1, 0.2))
        self.assertEqual(first_derivative_stencil(1.0, 0.1, 0.0, 1.0)[0], (0.0, -0.1, -0.2))
        with self.assertRaises(OutOfDomainError):
            first_derivative_stencil(0.5, 0.4, 0.3, 0.7)

    def test_derivative(self):
        for t in (0.0, 0.5, 1.0):
            with self.subTest(t=t):
                value = derivative(lambda s: np.array([s * s, math.sin(s)]), t, 1e-5, 0.0, 1.0)
                np.testing.assert_allclose(value, [2 * t, math.cos(t)], atol=1e-8)
