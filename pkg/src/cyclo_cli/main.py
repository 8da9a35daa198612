from __future__ import annotations

import sys

from cyclo.cli import main as cyclo_main


def main() -> int:
    return cyclo_main(sys.argv[1:])


if __name__ == "__main__":
    raise SystemExit(main())
