#!/usr/bin/env python3
from __future__ import annotations

import argparse
import logging
from typing import Iterator, List, Optional

from sympy import primerange

from cyclo.errors import HypothesisError
from cyclo.numtheory import Parameters, validate_parameters
from cyclo.render import dumps, params_json

logger = logging.getLogger(__name__)


def scan(
    p_max: int,
    q_max: int,
    s_max: int = 1,
    t_max: int = 1,
    l_max: Optional[int] = None,
    n_max: Optional[int] = None,
) -> Iterator[Parameters]:
    """Tuples (p, q, s, t, l) in the given ranges that satisfy every hypothesis, in lexicographic order."""
    l_max = l_max if l_max is not None else max(p_max, q_max)
    ps = [p for p in primerange(3, p_max + 1) if p % 4 == 3]
    qs = list(primerange(3, q_max + 1))
    ls = list(primerange(2, l_max + 1))
    for p in ps:
        for q in qs:
            if q == p:
                continue
            for s in range(1, s_max + 1):
                for t in range(1, t_max + 1):
                    if n_max is not None and p**s * q**t > n_max:
                        continue
                    for l in ls:
                        try:
                            yield validate_parameters(p, q, s, t, l)
                        except HypothesisError as e:
                            logger.debug("skip %s: %s (%s)", (p, q, s, t, l), e, e.hypothesis)


def add_arguments(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--p-max", type=int, default=11, help="largest p to try (p ≡ 3 mod 4)")
    ap.add_argument("--q-max", type=int, default=13, help="largest q to try")
    ap.add_argument("--s-max", type=int, default=1)
    ap.add_argument("--t-max", type=int, default=1)
    ap.add_argument("--l-max", type=int, default=None, help="largest field characteristic (default: max(p-max, q-max))")
    ap.add_argument("--n-max", type=int, default=None, help="skip tuples with n above this")
    ap.add_argument("--output", choices=("text", "json"), default="text")


def run(args: argparse.Namespace) -> int:
    found: List[Parameters] = list(scan(args.p_max, args.q_max, args.s_max, args.t_max, args.l_max, args.n_max))
    if args.output == "json":
        print(dumps([params_json(P) for P in found]))
        return 0
    for P in found:
        kind = "QR" if P.qr_case else "QNR"
        print(f"{P.as_tuple()}  n={P.n}  m={P.extension_degree}  g={P.g}  {kind}")
    print(f"✓ {len(found)} valid tuple(s)")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="cyclo-sweep", description="List (p, q, s, t, l) tuples satisfying the standing hypotheses.")
    add_arguments(ap)
    return run(ap.parse_args(argv))


if __name__ == "__main__":
    raise SystemExit(main())
