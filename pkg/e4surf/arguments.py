"""Argument parsing module"""

import argparse
from typing import Any, NoReturn

from e4surf.errors import ConfigError

THEOREM_IDS = ("T3", "T4", "T5", "T7", "T8", "T9", "T10", "C1", "C2", "P1")
CLASSIFY_MODES = ("parallel", "evolute", "hparallel", "chen")


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise ConfigError(message)


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)

    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        dest="verbosity",
        help="increase verbosity",
    )

    parser.add_argument(
        "--surface",
        action="store",
        dest="surface",
        help="catalog surface id or path to a JSON surface definition",
        type=str,
    )

    parser.add_argument(
        "--param",
        action="append",
        default=[],
        dest="params",
        help="surface parameter binding k=v, repeatable",
        type=str,
    )

    parser.add_argument(
        "--grid",
        action="store",
        dest="grid",
        help="grid size NUxNV",
        type=str,
    )

    parser.add_argument(
        "--range",
        action="store",
        nargs="+",
        default=[],
        dest="ranges",
        help="grid sub-ranges, e.g. u:0,1 v:0,0.5",
        type=str,
    )

    parser.add_argument(
        "--offsets",
        action="store",
        dest="offsets",
        help="offset spec: constant:f1,f2 | htype | ktype | evolute | custom:<expr1>;<expr2>",
        type=str,
    )

    parser.add_argument(
        "--offset-param",
        action="append",
        default=[],
        dest="offset_params",
        help="parameter binding k=v for custom offset expressions, repeatable",
        type=str,
    )

    parser.add_argument(
        "--frame",
        action="store",
        choices=("auto", "analytic", "gram_schmidt"),
        dest="frame",
        help="normal frame: analytic when available (auto), analytic only, or Gram-Schmidt",
        type=str,
    )

    parser.add_argument(
        "--tol",
        action="store",
        dest="tol",
        help="tolerance override",
        type=float,
    )

    parser.add_argument(
        "--project",
        action="store",
        default="drop:4",
        dest="project",
        help="4D to 3D projection for meshes: drop:k or stereo",
        type=str,
    )

    parser.add_argument(
        "--out",
        action="store",
        dest="out",
        help="output path, standard output when omitted",
        type=str,
    )

    parser.add_argument(
        "--report",
        action="store",
        dest="report",
        help="regularity report path of the transport command",
        type=str,
    )

    return parser


def parse_args(args: Any) -> argparse.Namespace:
    parser = _ArgumentParser(
        description="Invariants, normal transports and classification of surfaces in E4",
    )
    common = _common_parser()
    subparsers = parser.add_subparsers(dest="command", metavar="command", parser_class=_ArgumentParser)
    subparsers.required = True

    subparsers.add_parser("list", parents=[common], help="list catalog surfaces, offset kinds and theorem ids")
    subparsers.add_parser("invariants", parents=[common], help="write the invariants CSV over a grid")
    subparsers.add_parser("transport", parents=[common], help="write the transport mesh and regularity report")

    classify = subparsers.add_parser("classify", parents=[common], help="classify a transport or surface")
    classify.add_argument(
        "mode",
        action="store",
        choices=CLASSIFY_MODES,
        help="classification to run",
        type=str,
    )

    verify = subparsers.add_parser("verify", parents=[common], help="run a theorem scenario")
    verify.add_argument(
        "theorem",
        action="store",
        help=f"theorem id, one of {', '.join(THEOREM_IDS)}",
        type=str,
    )

    return parser.parse_args(args)
