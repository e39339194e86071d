import unittest

from e4surf.arguments import parse_args
from e4surf.errors import ConfigError


class TestArguments(unittest.TestCase):
    def test_parse_args_help(self):
        with self.assertRaises(SystemExit) as cm:
            parse_args(["--help"])
        self.assertEqual(cm.exception.code, 0)

    def test_parse_args_empty(self):
        with self.assertRaises(ConfigError):
            parse_args([])

    def test_parse_args_transport(self):
        args = parse_args(
            [
                "transport",
                "--surface",
                "vranceanu",
                "--param",
                "lambda=1",
                "--param",
                "mu=0.5",
                "--offsets",
                "constant:0.3,0.4",
                "--grid",
                "8x8",
                "-v",
            ]
        )
        self.assertEqual(args.command, "transport")
        self.assertEqual(args.params, ["lambda=1", "mu=0.5"])
        self.assertEqual(args.offsets, "constant:0.3,0.4")
        self.assertEqual(args.project, "drop:4")
        self.assertTrue(args.verbosity)
        self.assertIsNone(args.tol)

    def test_parse_args_classify(self):
        args = parse_args(["classify", "chen", "--surface", "sphere", "--tol", "1e-4"])
        self.assertEqual(args.mode, "chen")
        self.assertEqual(args.tol, 1e-4)
        self.assertFalse(args.verbosity)

    def test_parse_args_verify(self):
        args = parse_args(["verify", "T3", "--range", "u:0,1", "v:0,0.5"])
        self.assertEqual(args.theorem, "T3")
        self.assertEqual(args.ranges, ["u:0,1", "v:0,0.5"])

    def test_parse_args_errors(self):
        cases = [
            ["mesh"],
            ["classify", "geodesic", "--surface", "plane"],
            ["invariants", "--frame", "moving"],
            ["invariants", "--tol", "small"],
        ]
        for argv in cases:
            with self.subTest(argv=argv):
                with self.assertRaises(ConfigError):
                    parse_args(argv)
