"""Command-line entry point: ``cyclo <command> --p P --q Q --s S --t T --l L``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 the
parameters violate a standing hypothesis.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Callable, Dict, List, Optional

from cyclo import render
from cyclo.codes import (
    all_selections,
    duadic_code,
    min_distance_exhaustive,
    minimal_code,
    odd_like_min_weight,
)
from cyclo.cosets import C, Cs, cyclotomic_classes, enumerate_cosets, representative
from cyclo.errors import (
    BudgetExceededError,
    ConfigError,
    HypothesisError,
    IndexRangeError,
    SelectionShapeError,
    UnreachableResidueError,
)
from cyclo.gf import GaussData, build_gauss, find_alpha_index
from cyclo.idempotents import all_idempotents
from cyclo.numtheory import Parameters, validate_parameters
from cyclo.ring import chi
from cyclo.settings import Settings, get_settings
from cyclo.tools import sweep
from cyclo.verify import run_verification, write_receipt

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3

COMMANDS = ("validate", "cosets", "classes", "chi", "idempotents", "verify", "codes", "sweep")


# =========================
# Parsing
# =========================

def _params_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    grp = parent.add_argument_group("parameters")
    for name in ("p", "q", "s", "t", "l"):
        grp.add_argument(f"--{name}", type=int, required=True)
    grp.add_argument("--g", type=int, default=None, help="common primitive root mod p^s and q^t (default: smallest by CRT)")
    alpha = parent.add_mutually_exclusive_group()
    alpha.add_argument("--alpha-index", type=int, default=0, help="take the k-th accepted primitive n-th root α")
    alpha.add_argument("--residue-sum", type=int, default=None, help="take the first α whose residue Gauss sum R equals this")
    parent.add_argument("--output", choices=("text", "json"), default="text")
    parent.add_argument("--budget", type=int, default=None, help="max codewords to enumerate (env CYCLO_BUDGET)")
    parent.add_argument("--max-n", type=int, default=None, help="largest accepted length n (env CYCLO_MAX_N)")
    parent.add_argument("--workers", type=int, default=None, help="enumeration worker threads (env CYCLO_WORKERS)")
    return parent


def _verbosity_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    return parent


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclo", description="Cyclotomic cosets, idempotents and minimal cyclic codes of length p^s q^t.")
    sub = ap.add_subparsers(dest="command", required=True)
    params = _params_parent()
    verbosity = _verbosity_parent()

    sub.add_parser("validate", parents=[params, verbosity], help="check the hypotheses and print n, g, v, m")
    sub.add_parser("cosets", parents=[params, verbosity], help="list the l-cyclotomic cosets")
    sub.add_parser("classes", parents=[params, verbosity], help="list the cyclotomic classes D0, D1")
    sub.add_parser("chi", parents=[params, verbosity], help="list the χ polynomials")

    p = sub.add_parser("idempotents", parents=[params, verbosity], help="primitive idempotents as χ combinations")
    p.add_argument("--method", choices=("closed-form", "oracle", "checked"), default="checked")

    p = sub.add_parser("verify", parents=[params, verbosity], help="run every closed form against its oracle")
    p.add_argument("--receipt", action="store_true", help="write a log + JSON receipt (env CYCLO_RECEIPTS_DIR)")
    p.add_argument("--receipts-dir", type=Path, default=None)

    p = sub.add_parser("codes", parents=[params, verbosity], help="minimal codes and duadic-type codes")
    p.add_argument("--anchor", type=int, nargs=2, metavar=("I", "J"), default=None,
                   help="build the duadic codes on the block starting at level (I, J)")
    p.add_argument("--distances", action="store_true", help="compute exact minimum distances within the budget")
    p.add_argument("--odd-like", action="store_true", help="enumerate odd-like weights of the duadic codes")

    p = sub.add_parser("sweep", parents=[verbosity], help="list valid (p, q, s, t, l) tuples in a range")
    sweep.add_arguments(p)
    return ap


def _configure_logging(verbose: int, settings: Settings) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _effective_settings(args: argparse.Namespace, settings: Settings) -> Settings:
    overrides = {}
    for name in ("budget", "max_n", "workers"):
        value = getattr(args, name, None)
        if value is not None:
            if value < 1:
                raise ConfigError(f"--{name.replace('_', '-')} must be >= 1, got {value}")
            overrides[name] = value
    if getattr(args, "receipts_dir", None) is not None:
        overrides["receipts_dir"] = args.receipts_dir
    return replace(settings, **overrides)


def _parameters(args: argparse.Namespace, settings: Settings) -> Parameters:
    if args.p > 1 and args.q > 1 and args.s >= 0 and args.t >= 0:
        n = args.p**args.s * args.q**args.t
        if n > settings.max_n:
            raise HypothesisError(f"n = {n} exceeds the length cap {settings.max_n}", hypothesis="length-cap")
    return validate_parameters(args.p, args.q, args.s, args.t, args.l, args.g)


def _gauss(args: argparse.Namespace, params: Parameters) -> GaussData:
    index = args.alpha_index
    if args.residue_sum is not None:
        index = find_alpha_index(params, args.residue_sum)
        logger.info("R = %d first reached at alpha index %d", args.residue_sum % params.l, index)
    args.alpha_index = index
    return build_gauss(params, index)


# =========================
# Commands
# =========================

def cmd_validate(args, params: Parameters, settings: Settings) -> int:
    if args.output == "json":
        print(render.dumps(render.params_json(params)))
        return EXIT_OK
    for line in render.params_text(params):
        print(line)
    print("✓ all hypotheses hold")
    return EXIT_OK


def cmd_cosets(args, params: Parameters, settings: Settings) -> int:
    system = enumerate_cosets(params)
    if args.output == "json":
        cosets = sorted(system.cosets, key=lambda c: c.representative)
        print(render.dumps({"params": render.params_json(params),
                            "cosets": [render.coset_json(params, c) for c in cosets]}))
        return EXIT_OK
    for line in render.cosets_text(system):
        print(line)
    return EXIT_OK


def cmd_classes(args, params: Parameters, settings: Settings) -> int:
    system = enumerate_cosets(params)
    d0, d1 = cyclotomic_classes(params)
    match = (d0 == frozenset(system.coset(C(0, 0)).elements), d1 == frozenset(system.coset(Cs(0, 0)).elements))
    if args.output == "json":
        print(render.dumps({"params": render.params_json(params), "D0": sorted(d0), "D1": sorted(d1),
                            "D0_is_C1": match[0], "D1_is_Cg": match[1]}))
        return EXIT_OK
    print(f"D0 = {{{', '.join(map(str, sorted(d0)))}}}")
    print(f"D1 = {{{', '.join(map(str, sorted(d1)))}}}")
    print(f"{'✓' if match[0] else '✗'} D0 = C_1")
    print(f"{'✓' if match[1] else '✗'} D1 = C_{params.g}")
    return EXIT_OK if all(match) else EXIT_VERIFY_FAILED


def cmd_chi(args, params: Parameters, settings: Settings) -> int:
    system = enumerate_cosets(params)
    labels = sorted(system.labels, key=lambda lab: representative(params, lab))
    if args.output == "json":
        rows = []
        for lab in labels:
            row = render.label_json(params, lab)
            row["support"] = chi(system, lab).support().tolist()
            rows.append(row)
        print(render.dumps({"params": render.params_json(params), "chi": rows}))
        return EXIT_OK
    for lab in labels:
        print(f"{lab.chi_name(params)}(x) = {chi(system, lab).to_text()}")
    return EXIT_OK


def cmd_idempotents(args, params: Parameters, settings: Settings) -> int:
    system = enumerate_cosets(params)
    gauss = _gauss(args, params)
    family = all_idempotents(system, gauss, method=args.method)
    if args.output == "json":
        ordered = sorted(family, key=lambda e: representative(params, e.label))
        print(render.dumps({
            "params": render.params_json(params),
            "alpha_index": args.alpha_index,
            "gauss": render.gauss_json(gauss),
            "idempotents": [render.idempotent_json(params, e) for e in ordered],
        }))
        return EXIT_OK
    for line in render.params_text(params):
        print(line)
    for line in render.idempotents_text(params, gauss, family):
        print(line)
    return EXIT_OK


def cmd_verify(args, params: Parameters, settings: Settings) -> int:
    gauss = _gauss(args, params)
    report = run_verification(params, args.alpha_index, settings, gauss=gauss)
    if args.output == "json":
        print(render.dumps(render.report_json(report)))
    else:
        for line in render.params_text(params):
            print(line)
        for line in report.summary_lines():
            print(line)
    if args.receipt:
        log_path, json_path = write_receipt(receipts_dir=settings.receipts_dir, report=report)
        if log_path and json_path:
            print(f"🧾 Run receipt: {log_path}", file=sys.stderr)
            print(f"🧾 Run receipt (json): {json_path}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def _distance_entry(code, settings: Settings) -> Dict[str, object]:
    try:
        d = min_distance_exhaustive(code, settings.budget, settings.shard_size, settings.workers)
        return {"value": d, "kind": "exact"}
    except BudgetExceededError as e:
        return {"value": None, "kind": "skipped", "needed": e.needed}


def cmd_codes(args, params: Parameters, settings: Settings) -> int:
    system = enumerate_cosets(params)
    gauss = _gauss(args, params)
    anchor = tuple(args.anchor) if args.anchor else None

    minimal: List[Dict[str, object]] = []
    for lab in sorted(system.labels, key=lambda lab: representative(params, lab)):
        code = minimal_code(system, gauss, lab)
        row = render.code_json(params, lab, code)
        if args.distances:
            row["computed_distance"] = _distance_entry(code, settings)
        minimal.append(row)

    duadic: List[Dict[str, object]] = []
    violated = False
    for sel in all_selections(params, anchor):
        code = duadic_code(system, gauss, sel)
        row: Dict[str, object] = {"A": sel.A.tolist(), "anchor": list(sel.anchor), "code": code.to_json()}
        if args.odd_like:
            res = odd_like_min_weight(code, settings.budget, settings.shard_size, settings.workers)
            row["odd_like"] = {"value": res.value, "kind": res.kind, "examined": res.examined,
                               "bound": res.bound, "verdict": res.verdict}
            violated |= not res.consistent
        duadic.append(row)

    if args.output == "json":
        print(render.dumps({"params": render.params_json(params), "minimal": minimal, "duadic": duadic}))
    else:
        for line in render.codes_text(params, minimal, duadic):
            print(line)
    return EXIT_VERIFY_FAILED if violated else EXIT_OK


HANDLERS: Dict[str, Callable[..., int]] = {
    "validate": cmd_validate,
    "cosets": cmd_cosets,
    "classes": cmd_classes,
    "chi": cmd_chi,
    "idempotents": cmd_idempotents,
    "verify": cmd_verify,
    "codes": cmd_codes,
}


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        settings = _effective_settings(args, get_settings())
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _configure_logging(args.verbose, settings)

    if args.command == "sweep":
        return sweep.run(args)

    try:
        params = _parameters(args, settings)
        return HANDLERS[args.command](args, params, settings)
    except HypothesisError as e:
        print(f"error: {e} [hypothesis: {e.hypothesis}]", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (IndexRangeError, SelectionShapeError, ConfigError, UnreachableResidueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
