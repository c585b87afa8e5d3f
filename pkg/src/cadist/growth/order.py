"""The preorder g <= K f(M n): witness verification and finite-range refutation grids."""

from __future__ import annotations

import logging
import math
from decimal import Decimal, localcontext

from pydantic import BaseModel, Field

from cadist.exceptions import (
    DomainShortfallError,
    InsufficientRangeError,
    ParameterRangeError,
)
from cadist.growth.functions import DECIMAL_PRECISION, SymbolicFunction
from cadist.parallel import ordered_map

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 20_000
SAMPLE_POINTS = 4_000
FLOAT_TOLERANCE = 1e-9
STEP_RANGE = 2**32
DEFAULT_RANGE = 10**4


class OrderWitness(BaseModel):
    """(K, M, N) for g(n) <= K f(M n) on n >= N."""

    K: int = Field(ge=1)
    M: int = Field(ge=1)
    N: int = Field(default=1, ge=1)


def leq_at(g: SymbolicFunction, f: SymbolicFunction, n: int, k: int, m: int) -> bool | None:
    """Decide g(n) <= K f(M n); None when even the decimal bracket cannot tell.

    Exact integers first, then floats with a relative tolerance, then
    decimal brackets widened outwards with next_plus/next_minus.
    """
    if g == f and k >= 1 and m >= 1:
        return True
    gv, fv = g.exact(n), f.exact(m * n)
    if gv is not None and fv is not None:
        return gv <= k * fv
    lg, lf = g.ln(n), math.log(k) + f.ln(m * n)
    if lg == -math.inf:
        return True
    if lf == -math.inf:
        return False
    tol = FLOAT_TOLERANCE * max(1.0, abs(lg), abs(lf))
    if lg < lf - tol:
        return True
    if lg > lf + tol:
        return False
    with localcontext() as ctx:
        ctx.prec = DECIMAL_PRECISION
        dg = g.ln_decimal(n)
        df = Decimal(k).ln() + f.ln_decimal(m * n)
        slack = Decimal(10) ** (10 - DECIMAL_PRECISION) * max(Decimal(1), abs(dg), abs(df))
        g_hi = (dg + slack).next_plus()
        f_lo = (df - slack).next_minus()
        if g_hi <= f_lo:
            return True
        if (dg - slack).next_minus() > (df + slack).next_plus():
            return False
    return None


def _sample_points(start: int, end: int, count: int = SAMPLE_POINTS) -> list[int]:
    points = {start, end}
    ratio = (end / start) ** (1 / count) if start > 0 else 2.0
    x = float(max(start, 1))
    while x <= end:
        points.add(int(x))
        x = max(x * ratio, x + 1)
    step = max(1, (end - start) // count)
    points.update(range(start, end + 1, step))
    return sorted(p for p in points if start <= p <= end)


def candidate_points(
    g: SymbolicFunction,
    f: SymbolicFunction,
    m: int,
    start: int,
    end: int,
    *,
    breakpoints_only: bool = False,
) -> tuple[str, list[int]]:
    """Points at which checking g(n) <= K f(M n) decides the whole range.

    Exhaustive on short ranges. When g or f is a step function the other
    side is monotone on each piece, so the left end of every g-piece and
    the right end of every f(M .)-piece suffice. Otherwise a sample.
    With breakpoints_only the breakpoint set is used on any range.

    Raises:
        ParameterRangeError: If breakpoints_only is set and neither side is a step function
    """
    if breakpoints_only and not (g.is_step or f.is_step):
        raise ParameterRangeError(
            "breakpoints_only", f"{g.spec} vs {f.spec}", "one side must be a step function"
        )
    if end - start <= EXHAUSTIVE_LIMIT and not breakpoints_only:
        return "exhaustive", list(range(start, end + 1))
    if g.is_step or f.is_step:
        points = {start, end}
        for p in g.breakpoints(end):
            points.update((p, p - 1))
        for b in f.breakpoints(m * end):
            q = -(-b // m)
            points.update((q, q - 1))
        return "breakpoints", sorted(p for p in points if start <= p <= end)
    return "sampled", _sample_points(start, end)


class PreceqReport(BaseModel):
    g: str
    f: str
    witness: OrderWitness
    range_end: int
    mode: str
    checked: int
    holds: bool
    undecided: int = 0
    violation: int | None = None

    @property
    def label(self) -> str:
        return f"verified on [{self.witness.N}, {self.range_end}] ({self.mode})"


def _check_domains(g: SymbolicFunction, f: SymbolicFunction, w: OrderWitness, end: int) -> None:
    if end < w.N:
        raise InsufficientRangeError(f"Empty range [{w.N}, {end}]")
    for fn, need in ((g, end), (f, w.M * end)):
        if fn.domain_end is not None and fn.domain_end < need:
            raise DomainShortfallError(
                f"{fn.spec} is defined up to {fn.domain_end}, the check needs {need}"
            )


def check_preceq(
    g: SymbolicFunction,
    f: SymbolicFunction,
    w: OrderWitness,
    range_end: int,
    *,
    breakpoints_only: bool = False,
) -> PreceqReport:
    """g(n) <= K f(M n) for n in [N, range_end], a finite-range check.

    Raises:
        DomainShortfallError: If g or f is not defined far enough
        InsufficientRangeError: If range_end < N
        ParameterRangeError: If breakpoints_only is set and neither side is a step function
    """
    _check_domains(g, f, w, range_end)
    mode, points = candidate_points(
        g, f, w.M, w.N, range_end, breakpoints_only=breakpoints_only
    )
    undecided = 0
    for n in points:
        outcome = leq_at(g, f, n, w.K, w.M)
        if outcome is False:
            return PreceqReport(
                g=g.spec,
                f=f.spec,
                witness=w,
                range_end=range_end,
                mode=mode,
                checked=len(points),
                holds=False,
                undecided=undecided,
                violation=n,
            )
        if outcome is None:
            undecided += 1
    return PreceqReport(
        g=g.spec,
        f=f.spec,
        witness=w,
        range_end=range_end,
        mode=mode,
        checked=len(points),
        holds=undecided == 0,
        undecided=undecided,
    )


def verify_preceq(
    g: SymbolicFunction, f: SymbolicFunction, w: OrderWitness, range_end: int
) -> bool:
    """True iff g(n) <= K f(M n) holds on every n in [N, range_end]."""
    return check_preceq(g, f, w, range_end).holds


def default_range(g: SymbolicFunction, f: SymbolicFunction) -> int:
    return STEP_RANGE if g.is_step or f.is_step else DEFAULT_RANGE


class GridCell(BaseModel):
    K: int
    M: int
    refuted: bool
    violation: int | None = None


class GridReport(BaseModel):
    """Refutations are exact; survivors are only not refuted on the range."""

    g: str
    f: str
    k_max: int
    m_max: int
    n_start: int
    range_end: int
    mode: str
    cells: list[GridCell] = Field(default_factory=list)

    @property
    def surviving(self) -> list[tuple[int, int]]:
        return [(c.K, c.M) for c in self.cells if not c.refuted]

    @property
    def all_refuted(self) -> bool:
        return all(c.refuted for c in self.cells)

    @property
    def label(self) -> str:
        return f"verified on [{self.n_start}, {self.range_end}] ({self.mode})"


def refute_preceq_grid(
    g: SymbolicFunction,
    f: SymbolicFunction,
    k_max: int,
    m_max: int,
    range_end: int,
    *,
    n_start: int = 1,
    workers: int = 1,
    breakpoints_only: bool = False,
) -> GridReport:
    """For each (K, M) in [1, K_max] x [1, M_max], the largest n violating g(n) <= K f(M n).

    A refuted cell records its largest violation, so every witness
    (K, M, N) with N at most that point is refuted.
    """
    grid = [(k, m) for k in range(1, k_max + 1) for m in range(1, m_max + 1)]
    modes: set[str] = set()

    def scan(cell: tuple[int, int]) -> GridCell:
        k, m = cell
        mode, points = candidate_points(
            g, f, m, n_start, range_end, breakpoints_only=breakpoints_only
        )
        modes.add(mode)
        for n in reversed(points):
            if leq_at(g, f, n, k, m) is False:
                return GridCell(K=k, M=m, refuted=True, violation=n)
        return GridCell(K=k, M=m, refuted=False)

    cells = ordered_map(scan, grid, workers)
    report = GridReport(
        g=g.spec,
        f=f.spec,
        k_max=k_max,
        m_max=m_max,
        n_start=n_start,
        range_end=range_end,
        mode="+".join(sorted(modes)),
        cells=cells,
    )
    logger.info(
        "Grid %s vs %s (%dx%d) on [%d, %d]: %d surviving",
        g.spec,
        f.spec,
        k_max,
        m_max,
        n_start,
        range_end,
        len(report.surviving),
    )
    return report


class Comparability(BaseModel):
    g_below_f: GridReport
    f_below_g: GridReport

    @property
    def comparable(self) -> bool:
        return bool(self.g_below_f.surviving or self.f_below_g.surviving)


def compare_both(
    g: SymbolicFunction,
    f: SymbolicFunction,
    k_max: int,
    m_max: int,
    range_end: int,
    *,
    workers: int = 1,
    breakpoints_only: bool = False,
) -> Comparability:
    return Comparability(
        g_below_f=refute_preceq_grid(
            g, f, k_max, m_max, range_end, workers=workers, breakpoints_only=breakpoints_only
        ),
        f_below_g=refute_preceq_grid(
            f, g, k_max, m_max, range_end, workers=workers, breakpoints_only=breakpoints_only
        ),
    )


def compare_with_constant(
    f: SymbolicFunction, c: SymbolicFunction, grid: tuple[int, int], range_end: int
) -> Comparability:
    """Grid search in both directions between f and a constant; one side should survive."""
    return compare_both(f, c, grid[0], grid[1], range_end)


def compose_witnesses(first: OrderWitness, second: OrderWitness) -> OrderWitness:
    """Witness for a <= c from a <= b (first) and b <= c (second)."""
    return OrderWitness(
        K=first.K * second.K,
        M=first.M * second.M,
        N=max(first.N, second.N * first.M),
    )


def affine_witnesses(
    h: SymbolicFunction, range_end: int
) -> tuple[OrderWitness, OrderWitness]:
    """(h below f, f below h) for h = D f(An + B) + C built by normalize_affine.

    h(n) <= D f(2An) + C <= (D + 1) f(2An) once An >= B and f(2An) >= C;
    the second threshold is found numerically on [1, range_end].

    Raises:
        InsufficientRangeError: If f(2An) stays below C on the range
    """
    if h.inner is None:
        return OrderWitness(K=1, M=1, N=h.start), OrderWitness(K=1, M=1, N=h.start)
    f = h.inner
    a, b, c, d = (int(x) for x in h.params)
    n1 = next((n for n in _threshold_candidates(range_end) if _at_least(f, 2 * a * n, c)), None)
    if n1 is None:
        raise InsufficientRangeError(f"{f.spec} stays below {c} on [1, {range_end}]")
    n1 = _refine_threshold(f, 2 * a, c, n1)
    up = OrderWitness(K=d + 1, M=2 * a, N=max(-(-b // a), n1, 1))
    down = OrderWitness(K=1, M=1, N=max(f.start, 1))
    return up, down


def _at_least(f: SymbolicFunction, n: int, c: int) -> bool:
    if c <= 0:
        return True
    v = f.exact(n)
    return v >= c if v is not None else f.ln(n) >= math.log(c)


def _threshold_candidates(end: int) -> list[int]:
    out, n = [], 1
    while n <= end:
        out.append(n)
        n *= 2
    return out


def _refine_threshold(f: SymbolicFunction, scale: int, c: int, upper: int) -> int:
    lo, hi = max(1, upper // 2), upper
    if _at_least(f, scale * lo, c):
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _at_least(f, scale * mid, c):
            hi = mid
        else:
            lo = mid
    return hi
