from __future__ import annotations

import sys

from cyclo.cli import main as cyclo_main


def main(argv=None) -> int:
    args = sys.argv[1:] if argv is None else list(argv)
    return cyclo_main(["verify", *args])


if __name__ == "__main__":
    raise SystemExit(main())
