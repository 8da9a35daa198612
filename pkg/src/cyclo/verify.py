"""Full verification of one parameter tuple, plus run receipts.

``run_verification`` executes every cross-check the library offers and
collects the outcome per section. ``write_receipt`` stores the result as a
human-readable log and a JSON file side by side.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from cyclo import poly
from cyclo.codes import (
    all_selections,
    codeword,
    duadic_code,
    min_distance_exhaustive,
    minimal_code,
    product_check,
)
from cyclo.cosets import C, CosetSystem, Cs, additive_coset_form, cyclotomic_classes, enumerate_cosets
from cyclo.cyclotomy import CountCheck, count_sweep, product_formula_sweep
from cyclo.errors import BudgetExceededError
from cyclo.gf import GaussData, build_gauss
from cyclo.identities import IdentityCheck, identity_sweep, structure_sweep
from cyclo.idempotents import (
    chi_eval,
    chi_eval_table,
    compare_closed_form,
    idempotent_oracle,
    minimal_polynomial,
    verify_idempotent,
)
from cyclo.numtheory import Parameters
from cyclo.settings import Settings, get_settings

logger = logging.getLogger(__name__)


@dataclass
class SectionResult:
    name: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)
    # rules checked here whose closed form corrects the published one
    corrections: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)


@dataclass
class VerificationReport:
    params: Tuple[int, int, int, int, int]
    n: int
    alpha_index: int
    residue_sum: int
    nonresidue_sum: int
    sections: List[SectionResult]
    started: str
    seconds: float

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sections)

    def payload(self) -> Dict[str, object]:
        """Everything but the timing, so equal runs serialise to equal bytes."""
        out: Dict[str, object] = asdict(self)
        del out["started"], out["seconds"]
        out["ok"] = self.ok
        return out

    def summary_lines(self) -> List[str]:
        lines = []
        for s in self.sections:
            mark = "✓" if s.ok else "✗"
            extra = f", {len(s.skipped)} skipped" if s.skipped else ""
            lines.append(f"{mark} {s.name}: {s.checks} checks, {len(s.failures)} failures{extra}")
            for msg in s.failures[:10]:
                lines.append(f"    - {msg}")
            for msg in s.corrections:
                lines.append(f"    ~ {msg}")
        return lines


def _structure(system: CosetSystem) -> SectionResult:
    P = system.params
    sec = SectionResult("cosets")
    sec.checks += 1
    if len(system) != P.coset_count:
        sec.fail(f"{len(system)} cosets, expected {P.coset_count}")
    sec.checks += 1
    if sum(len(c) for c in system.cosets) != P.n:
        sec.fail("coset sizes do not sum to n")
    for coset in system.cosets:
        sec.checks += 1
        if set(additive_coset_form(P, coset.label).elements) != set(coset.elements):
            sec.fail(f"additive form of {coset.label.symbol()} differs")
    d0, d1 = cyclotomic_classes(P)
    sec.checks += 2
    if d0 != frozenset(system.coset(C(0, 0)).elements):
        sec.fail("D0 ≠ C_1")
    if d1 != frozenset(system.coset(Cs(0, 0)).elements):
        sec.fail("D1 ≠ C_g")
    return sec


def _corrections(checks: Sequence[Union[CountCheck, IdentityCheck]]) -> List[str]:
    seen = {c.key: c.deviation for c in checks if c.deviation}
    return [f"{key}: {text}" for key, text in seen.items()]


def _counts(system: CosetSystem) -> SectionResult:
    sec = SectionResult("cyclotomic numbers")
    checks = count_sweep(system)
    sec.checks += len(checks)
    for c in checks:
        if not c.ok:
            sec.fail(f"{c.key} {dict(c.indices)}: closed {c.expected}, oracle {c.actual}")
    sec.corrections = _corrections(checks)
    mismatches = product_formula_sweep(system)
    sec.checks += len(system) ** 3
    for A, X, Y, got, want in mismatches:
        sec.fail(f"product formula {A.symbol()}+{X.symbol()}->{Y.symbol()}: {got} vs {want}")
    return sec


def _identities(system: CosetSystem) -> SectionResult:
    sec = SectionResult("χ product identities")
    checks = identity_sweep(system)
    sec.checks += len(checks)
    for c in checks:
        if not c.ok:
            sec.fail(f"{c.key} {dict(c.indices)} over {c.over}: residual weight {c.residual_weight}")
    sec.corrections = _corrections(checks)
    bad_pairs = structure_sweep(system)
    sec.checks += len(system) * (len(system) + 1) // 2
    for X, Y in bad_pairs:
        sec.fail(f"structure constants of {X.symbol()}·{Y.symbol()}")
    return sec


def _idempotents(system: CosetSystem, gauss: GaussData) -> SectionResult:
    sec = SectionResult("idempotents")
    for label in compare_closed_form(system, gauss):
        sec.fail(f"closed form ≠ oracle at {label.symbol()}")
    sec.checks += len(system)
    family = [idempotent_oracle(system, gauss, label) for label in system.labels]
    for e in family:
        report = verify_idempotent(system, gauss, e, family)
        sec.checks += 4
        for msg in report.failures:
            sec.fail(f"{e.label.symbol()}: {msg}")
    for label in system.labels:
        direct = chi_eval_table(system, gauss, label)
        closed = np.array([chi_eval(system, gauss, label, u) for u in range(system.params.n)], dtype=np.int64)
        sec.checks += 1
        if not np.array_equal(direct, closed):
            u = int(np.flatnonzero(direct != closed)[0])
            sec.fail(f"χ evaluation of {label.symbol()} at u={u}: closed {closed[u]}, direct {direct[u]}")
    return sec


def _codes(system: CosetSystem, gauss: GaussData, settings: Settings) -> SectionResult:
    P = system.params
    sec = SectionResult("codes")
    product = np.array([1], dtype=np.int64)
    dims = 0
    for label in system.labels:
        product = poly.mul(product, minimal_polynomial(system, gauss, label).poly, P.l)
        dims += minimal_code(system, gauss, label).dimension
    sec.checks += 2
    if not np.array_equal(product, poly.x_power_minus_one(P.n, P.l)):
        sec.fail("Π M ≠ x^n - 1")
    if dims != P.n:
        sec.fail(f"Σ dimensions = {dims} ≠ {P.n}")

    for j in range(P.t + 1):
        code = minimal_code(system, gauss, C(P.s, j))
        try:
            d = min_distance_exhaustive(code, settings.budget, settings.shard_size, settings.workers)
        except BudgetExceededError as e:
            sec.skipped.append(f"distance of C({P.s},{j}): {e}")
            continue
        sec.checks += 1
        if d != code.distance.value:
            sec.fail(f"distance of C({P.s},{j}) is {d}, expected {code.distance.value}")

    rng = np.random.default_rng(0)
    for sel in all_selections(P):
        code = duadic_code(system, gauss, sel)
        for _ in range(4):
            msg = rng.integers(0, P.l, size=code.dimension)
            sec.checks += 1
            if not product_check(code, P, codeword(code, msg)):
                sec.fail(f"a(x)a(x^g) not a multiple of the section sum for A={sel.A.tolist()}")
    return sec


def run_verification(
    params: Parameters,
    alpha_index: int = 0,
    settings: Optional[Settings] = None,
    gauss: Optional[GaussData] = None,
) -> VerificationReport:
    settings = settings or get_settings()
    started = datetime.now()
    system = enumerate_cosets(params)
    gauss = gauss or build_gauss(params, alpha_index)
    sections = [
        _structure(system),
        _counts(system),
        _identities(system),
        _idempotents(system, gauss),
        _codes(system, gauss, settings),
    ]
    seconds = (datetime.now() - started).total_seconds()
    report = VerificationReport(
        params=params.as_tuple(),
        n=params.n,
        alpha_index=alpha_index,
        residue_sum=gauss.residue_sum,
        nonresidue_sum=gauss.nonresidue_sum,
        sections=sections,
        started=started.isoformat(timespec="seconds"),
        seconds=seconds,
    )
    logger.info("verification of %s finished in %.2fs: %s", params.as_tuple(), seconds, "ok" if report.ok else "FAILED")
    return report


def write_receipt(
        *,
        receipts_dir: Path,
        report: VerificationReport,
) -> Tuple[Optional[Path], Optional[Path]]:
    """
    Writes a human-readable receipt + a JSON receipt.
    Returns (log_path, json_path). Never raises (best-effort).
    """
    try:
        receipts_dir = receipts_dir.resolve()
        receipts_dir.mkdir(parents=True, exist_ok=True)

        stamp = datetime.now().strftime("%Y-%m-%d_%H%M%S")
        tag = "_".join(str(x) for x in report.params)
        log_path = receipts_dir / f"cyclo_verify_{tag}_{stamp}.log"
        json_path = receipts_dir / f"cyclo_verify_{tag}_{stamp}.json"

        lines: List[str] = []
        lines.append(f"=== cyclo verification receipt ({report.started}) ===")
        lines.append(f"(p, q, s, t, l): {report.params}")
        lines.append(f"n: {report.n}")
        lines.append(f"alpha index: {report.alpha_index}  R = {report.residue_sum}  N = {report.nonresidue_sum}")
        lines.append(f"Runtime: {report.seconds:.2f}s")
        lines.append("")
        lines.extend(report.summary_lines())
        for s in report.sections:
            if s.skipped:
                lines.append("")
                lines.append(f"Skipped in {s.name}:")
                lines.extend(f"  - {msg}" for msg in s.skipped)
        lines.append("")
        lines.append(f"Result: {'PASS' if report.ok else 'FAIL'}")
        log_path.write_text("\n".join(lines) + "\n", encoding="utf-8")

        payload = report.payload()
        payload["started"] = report.started
        payload["seconds"] = report.seconds
        json_path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        return log_path, json_path
    except Exception as e:
        logger.warning("receipt not written: %s", e)
        return None, None
