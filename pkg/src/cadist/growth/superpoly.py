"""Sampled evidence for super-quadratic, super-polynomial and strongly super-polynomial growth."""

from __future__ import annotations

import logging
import math
from itertools import accumulate

from pydantic import BaseModel, Field

from cadist.growth.functions import GroundTruth, SymbolicFunction
from cadist.parallel import ordered_map

logger = logging.getLogger(__name__)

SUPERQUADRATIC_RANGE = 10**5
STRONG_RANGE = 10**6
STRONG_SAMPLES = 400
LOG_TOLERANCE = 1e-12


class QuadraticRow(BaseModel):
    M: int
    largest_n: int | None = None


class SuperquadraticReport(BaseModel):
    """For each M the largest sampled n with f(n) <= M n^2.

    The sample counts as super-quadratic evidence when every such n lies in
    the lower half of the range.
    """

    function: str
    range_end: int
    rows: list[QuadraticRow] = Field(default_factory=list)
    ground_truth: bool | None = None

    @property
    def evidence(self) -> bool:
        half = self.range_end // 2
        return all(r.largest_n is None or r.largest_n < half for r in self.rows)

    @property
    def agrees(self) -> bool | None:
        return None if self.ground_truth is None else self.evidence == self.ground_truth

    @property
    def label(self) -> str:
        return f"verified on [1, {self.range_end}]"


def superquadratic_check(
    f: SymbolicFunction, m_max: int = 8, range_end: int = SUPERQUADRATIC_RANGE
) -> SuperquadraticReport:
    logs = [f.ln(n) for n in range(range_end + 1)]
    report = SuperquadraticReport(
        function=f.spec, range_end=range_end, ground_truth=f.ground_truth.superquadratic
    )
    for m in range(1, m_max + 1):
        ln_m = math.log(m)
        largest = None
        for n in range(range_end, 0, -1):
            bound = ln_m + 2 * math.log(n)
            if logs[n] <= bound + LOG_TOLERANCE * max(1.0, abs(bound)):
                largest = n
                break
        report.rows.append(QuadraticRow(M=m, largest_n=largest))
    logger.info(
        "Super-quadratic evidence for %s on [1, %d]: %s",
        f.spec,
        range_end,
        report.evidence,
    )
    return report


def superpoly_samples(f: SymbolicFunction, points: list[int]) -> list[tuple[int, float]]:
    """ln f(n) / ln n at each point n >= 2; growing without bound means super-polynomial."""
    return [(n, f.ln(n) / math.log(n)) for n in points if n >= 2]


def geometric_points(end: int, count: int) -> list[int]:
    ratio = end ** (1 / count)
    points = sorted({max(1, min(end, round(ratio**i))) for i in range(count + 1)} | {end})
    return points


class StrongWitness(BaseModel):
    """n^2 f(n) t(n) <= K f(M n) on the sample for a staircase t >= 2 from N on."""

    K: int
    M: int
    N: int
    t_at_end: float


class StrongReport(BaseModel):
    function: str
    k_max: int
    m_max: int
    range_end: int
    witnesses: list[StrongWitness] = Field(default_factory=list)
    ground_truth: GroundTruth = Field(default_factory=GroundTruth)

    @property
    def found(self) -> bool:
        return bool(self.witnesses)

    @property
    def label(self) -> str:
        return f"verified on [1, {self.range_end}] at {STRONG_SAMPLES} sample points"


def _strong_cell(
    f: SymbolicFunction, points: list[int], k: int, m: int
) -> StrongWitness | None:
    """Witness for one (K, M), or None.

    The largest admissible ln t(n) is ln K + ln f(Mn) - 2 ln n - ln f(n); a
    non-decreasing t stays below its suffix minimum. The cell survives when
    that envelope reaches ln 2 and still grows afterwards.
    """
    ln_k = math.log(k)
    values = [ln_k + f.ln(m * n) - 2 * math.log(n) - f.ln(n) for n in points]
    envelope = list(accumulate(reversed(values), min))[::-1]
    start = next((i for i, v in enumerate(envelope) if v >= math.log(2)), None)
    if start is None or envelope[-1] <= envelope[start]:
        return None
    return StrongWitness(K=k, M=m, N=points[start], t_at_end=math.exp(min(envelope[-1], 700.0)))


def strongly_superpoly_check(
    f: SymbolicFunction,
    k_max: int = 2**10,
    m_max: int = 8,
    range_end: int = STRONG_RANGE,
    *,
    workers: int = 1,
) -> StrongReport:
    """Search K in {1, 2, 4, ..., K_max} and M in [1, M_max] for witnesses of n^2 f << f."""
    points = [n for n in geometric_points(range_end, STRONG_SAMPLES) if f.ln(n) > -math.inf]
    ks = [1 << i for i in range(k_max.bit_length()) if 1 << i <= k_max]
    grid = [(k, m) for k in ks for m in range(1, m_max + 1)]
    found = ordered_map(lambda cell: _strong_cell(f, points, *cell), grid, workers)
    report = StrongReport(
        function=f.spec,
        k_max=k_max,
        m_max=m_max,
        range_end=range_end,
        witnesses=[w for w in found if w is not None],
        ground_truth=f.ground_truth,
    )
    logger.info(
        "Strongly super-polynomial search for %s: %d witnesses", f.spec, len(report.witnesses)
    )
    return report
