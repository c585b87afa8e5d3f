"""Sampled check of area(w) <= D n^2 max area(w_i) over corridor fillings."""

from __future__ import annotations

import logging
import random
import sys
from collections.abc import Sequence
from typing import Any

from pydantic import BaseModel, Field

from cadist.exceptions import BudgetExceededError
from cadist.filling.area import DEFAULT_MAX_AREA, area, area_lower_bound
from cadist.filling.corridor import FillingCertificate, check_certificate, corridor_fill
from cadist.groups import CayleyGraph, Presentation, Word, free_reduce, render_word
from cadist.parallel import ordered_map
from cadist.structures import CayleyAutomaticStructure

logger = logging.getLogger(__name__)

EXACT_CELL_LENGTH = 12
CELL_NODE_BUDGET = 200_000


class DehnCase(BaseModel):
    loop: list[str]
    area: int | None = None
    max_cell_area: int = 0
    cell_areas_exact: bool = True
    bound: float = 0.0
    margin: float | None = None
    failure: dict[str, Any] | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None and self.margin is not None and self.margin >= 0


class DehnReport(BaseModel):
    """Finite sample only; cell areas that are not exact are lower bounds."""

    structure: str
    presentation: str
    n: int
    dehn_constant: float
    seed: int
    cases: list[DehnCase] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def min_margin(self) -> float | None:
        margins = [c.margin for c in self.cases if c.margin is not None]
        return min(margins) if margins else None


def sample_loops(graph: CayleyGraph, n: int, count: int, rng: random.Random) -> list[Word]:
    """Random loops of length <= n: a random word of length n // 2 closed by a geodesic."""
    names = graph.model.standard_generators().names
    identity = graph.model.identity()
    loops = []
    for _ in range(count):
        word = tuple(rng.choice(names) for _ in range(n // 2))
        cap = sys.maxsize if graph.closed_form else n
        back = graph.geodesic(graph.evaluate(word), identity, cap)
        loops.append(word + back)
    return loops


def cell_area(presentation: Presentation, word: Sequence[str], max_area: int) -> tuple[int, bool]:
    """(area, exact) for a cell word; a lower bound when exact search is out of reach."""
    reduced = free_reduce(word, presentation.inverses)
    if len(reduced) <= EXACT_CELL_LENGTH:
        try:
            return area(presentation, reduced, max_area, node_budget=CELL_NODE_BUDGET).area, True
        except BudgetExceededError:
            pass
    return area_lower_bound(presentation, reduced), False


def dehn_case(
    s: CayleyAutomaticStructure,
    presentation: Presentation,
    loop: Sequence[str],
    n: int,
    *,
    certificate: FillingCertificate | None = None,
    max_area: int = DEFAULT_MAX_AREA,
) -> DehnCase:
    """One loop: exact area against D n^2 times the largest cell area.

    Raises:
        AreaExceedsMaxError: If the loop's area exceeds max_area
    """
    cert = certificate if certificate is not None else corridor_fill(s, loop)
    case = DehnCase(loop=list(loop))
    check = check_certificate(s, cert)
    if not (check.free_reduction_identity and check.cells_are_loops):
        case.failure = check.first_failure
        return case
    case.area = area(presentation, s.expand(loop), max_area).area
    for cell in cert.cells:
        value, exact = cell_area(presentation, s.expand(cell.boundary), max_area)
        case.max_cell_area = max(case.max_cell_area, value)
        case.cell_areas_exact = case.cell_areas_exact and exact
    case.bound = s.filling_constants.dehn * n * n * case.max_cell_area
    case.margin = case.bound - case.area
    if case.margin < 0:
        case.failure = {"reason": "area exceeds bound", "loop": render_word(loop)}
    return case


def dehn_inequality_check(
    s: CayleyAutomaticStructure,
    presentation: Presentation,
    n: int,
    *,
    samples: int = 8,
    seed: int = 0,
    max_area: int = DEFAULT_MAX_AREA,
    workers: int = 1,
) -> DehnReport:
    """Check the inequality on seeded random loops of length <= n.

    Raises:
        AreaExceedsMaxError: If a sampled loop's area exceeds max_area
    """
    rng = random.Random(seed)
    loops = sample_loops(s.graph, n, samples, rng)
    cases = ordered_map(
        lambda w: dehn_case(s, presentation, w, n, max_area=max_area), loops, workers
    )
    report = DehnReport(
        structure=s.name,
        presentation=presentation.name,
        n=n,
        dehn_constant=s.filling_constants.dehn,
        seed=seed,
        cases=cases,
    )
    logger.info(
        "Dehn check on %s at n=%d: %s, min margin %s",
        s.name,
        n,
        "passed" if report.passed else "failed",
        report.min_margin,
        extra={"structure": s.name},
    )
    return report
