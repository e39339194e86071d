"""Main application"""

import sys

from e4surf.cli.commands import run


def main() -> None:
    """Main handler"""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
