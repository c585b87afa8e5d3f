"""Symbolic non-decreasing functions N -> R>=0 with exact, float and decimal evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from enum import StrEnum
from pathlib import Path

from cadist.exceptions import DomainShortfallError, InvalidStepFunctionError, ParameterRangeError
from cadist.filling.step import StepFunction
from cadist.profile import read_profile_csv

DECIMAL_PRECISION = 60
EXACT_EXP_LIMIT = 4096


class Kind(StrEnum):
    CONSTANT = "constant"
    IDENTITY = "identity"
    POWER = "power"
    N2LOGN = "n2logn"
    EXP = "exp"
    FALPHA = "falpha"
    STEP = "step"
    INCOMPARABLE = "incomparable"
    TABLE = "table"
    AFFINE = "affine"


@dataclass(frozen=True)
class GroundTruth:
    """Known asymptotic classification; None when the catalog makes no claim."""

    superquadratic: bool | None = None
    superpolynomial: bool | None = None
    strongly_superpolynomial: bool | None = None


def incomparable_breakpoint(i: int) -> int:
    """n_i = 2^(2^i): n_0 = 2 and n_{i+1} = n_i^2."""
    return 1 << (1 << i)


def incomparable_step(n: int) -> int:
    """n_i on [n_i, n_{i+1}) for even i, n_{i+1} there for odd i, and 2 below n_0."""
    if n < 2:
        return 2
    i = ((n.bit_length() - 1).bit_length()) - 1
    low = incomparable_breakpoint(i)
    return low if i % 2 == 0 else low * low


def _is_int(x: float) -> bool:
    return float(x).is_integer()


def _logaddexp(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = max(a, b), min(a, b)
    return hi + math.log1p(math.exp(lo - hi))


def _dlogaddexp(a: Decimal, b: Decimal) -> Decimal:
    if a.is_infinite():
        return b
    if b.is_infinite():
        return a
    hi, lo = max(a, b), min(a, b)
    return hi + (1 + (lo - hi).exp()).ln()


def _dln(value: int) -> Decimal:
    return Decimal(value).ln() if value > 0 else Decimal("-Infinity")


@dataclass(frozen=True)
class SymbolicFunction:
    """A member of the function catalog.

    ``params`` holds the numeric parameters of the kind: (c,) for constants,
    (alpha,) for powers, exponentials and f_alpha, (A, B, C, D) for the
    affine form D f(An + B) + C of ``inner``.
    """

    kind: Kind
    params: tuple[float, ...] = ()
    start: int = 1
    inner: SymbolicFunction | None = None
    steps: StepFunction | None = None
    table: tuple[int, ...] | None = None
    label: str = field(default="", compare=False)

    @property
    def spec(self) -> str:
        if self.label:
            return self.label
        p = ",".join(f"{x:g}" for x in self.params)
        match self.kind:
            case Kind.IDENTITY | Kind.N2LOGN:
                return str(self.kind)
            case Kind.INCOMPARABLE:
                return "step:incomparable"
            case Kind.STEP:
                assert self.steps is not None
                return "step:" + ",".join(map(str, self.steps.breakpoints))
            case Kind.AFFINE:
                assert self.inner is not None
                return f"affine:{p}:{self.inner.spec}"
            case _:
                return f"{self.kind}:{p}"

    @property
    def domain_end(self) -> int | None:
        """Largest n the function is defined at; None when unbounded."""
        if self.kind == Kind.TABLE:
            assert self.table is not None
            return len(self.table) - 1
        if self.kind == Kind.AFFINE:
            assert self.inner is not None
            end = self.inner.domain_end
            if end is None:
                return None
            a, b = int(self.params[0]), int(self.params[1])
            return (end - b) // a
        return None

    @property
    def is_step(self) -> bool:
        """Piecewise constant with computable breakpoints."""
        if self.kind == Kind.AFFINE:
            assert self.inner is not None
            return self.inner.is_step
        return self.kind in (Kind.STEP, Kind.INCOMPARABLE, Kind.TABLE, Kind.CONSTANT)

    @property
    def is_zero(self) -> bool:
        if self.kind == Kind.CONSTANT:
            return self.params[0] == 0
        if self.kind == Kind.STEP:
            return False
        if self.kind == Kind.TABLE:
            assert self.table is not None
            return not any(self.table)
        return False

    def _check_domain(self, n: int) -> None:
        end = self.domain_end
        if n < 0 or (end is not None and n > end):
            raise DomainShortfallError(f"{self.spec} is defined on [0, {end}], asked for {n}")

    def exact(self, n: int) -> int | None:
        """f(n) as an integer, or None when f(n) is not an exact small integer.

        Raises:
            DomainShortfallError: Outside the domain
        """
        self._check_domain(n)
        match self.kind:
            case Kind.CONSTANT:
                return int(self.params[0]) if _is_int(self.params[0]) else None
            case Kind.IDENTITY:
                return n
            case Kind.POWER:
                return n ** int(self.params[0]) if _is_int(self.params[0]) else None
            case Kind.EXP:
                if _is_int(self.params[0]) and n <= EXACT_EXP_LIMIT:
                    return int(self.params[0]) ** n
                return None
            case Kind.STEP:
                assert self.steps is not None
                return self.steps(n)
            case Kind.INCOMPARABLE:
                return incomparable_step(n)
            case Kind.TABLE:
                assert self.table is not None
                return self.table[n]
            case Kind.AFFINE:
                assert self.inner is not None
                a, b, c, d = (int(x) for x in self.params)
                v = self.inner.exact(a * n + b)
                return None if v is None else d * v + c
            case _:
                return None

    def ln(self, n: int) -> float:
        """ln f(n) as a float; -inf where f(n) = 0."""
        v = self.exact(n)
        if v is not None:
            return math.log(v) if v > 0 else -math.inf
        match self.kind:
            case Kind.CONSTANT:
                return math.log(self.params[0]) if self.params[0] > 0 else -math.inf
            case Kind.POWER:
                return self.params[0] * math.log(n) if n > 0 else -math.inf
            case Kind.N2LOGN:
                return 2 * math.log(n) + math.log(math.log(n)) if n > 1 else -math.inf
            case Kind.EXP:
                return n * math.log(self.params[0])
            case Kind.FALPHA:
                return math.log(self.params[0]) * math.log(max(n, 1)) ** 1.5
            case Kind.AFFINE:
                assert self.inner is not None
                a, b, c, d = self.params
                inner = math.log(d) + self.inner.ln(int(a) * n + int(b))
                return _logaddexp(inner, math.log(c) if c > 0 else -math.inf)
        raise AssertionError(self.kind)

    def ln_decimal(self, n: int) -> Decimal:
        """ln f(n) in the current decimal context; -Infinity where f(n) = 0."""
        v = self.exact(n)
        if v is not None:
            return _dln(v)
        match self.kind:
            case Kind.CONSTANT:
                c = Decimal(repr(self.params[0]))
                return c.ln() if c > 0 else Decimal("-Infinity")
            case Kind.POWER:
                return Decimal(repr(self.params[0])) * _dln(n) if n > 0 else Decimal("-Infinity")
            case Kind.N2LOGN:
                if n <= 1:
                    return Decimal("-Infinity")
                ln_n = _dln(n)
                return 2 * ln_n + ln_n.ln()
            case Kind.EXP:
                return n * Decimal(repr(self.params[0])).ln()
            case Kind.FALPHA:
                return Decimal(repr(self.params[0])).ln() * _dln(max(n, 1)) ** Decimal("1.5")
            case Kind.AFFINE:
                assert self.inner is not None
                a, b, c, d = (int(x) for x in self.params)
                inner = _dln(d) + self.inner.ln_decimal(a * n + b)
                return _dlogaddexp(inner, _dln(c))
        raise AssertionError(self.kind)

    def __call__(self, n: int) -> float:
        v = self.exact(n)
        if v is not None:
            return float(v)
        try:
            return math.exp(self.ln(n))
        except OverflowError:
            return math.inf

    def breakpoints(self, end: int) -> list[int]:
        """Points p <= end with f(p) != f(p - 1), for step-like kinds."""
        match self.kind:
            case Kind.CONSTANT:
                return []
            case Kind.STEP:
                assert self.steps is not None
                return [b for b in self.steps.breakpoints if b <= end]
            case Kind.INCOMPARABLE:
                out = []
                i = 0
                while (p := incomparable_breakpoint(i)) <= end:
                    out.append(p)
                    i += 1
                return out
            case Kind.TABLE:
                assert self.table is not None
                last = min(end, len(self.table) - 1)
                return [p for p in range(1, last + 1) if self.table[p] != self.table[p - 1]]
            case Kind.AFFINE:
                assert self.inner is not None
                a, b = int(self.params[0]), int(self.params[1])
                inner = self.inner.breakpoints(a * end + b)
                return sorted({max(0, -(-(p - b) // a)) for p in inner if p >= b})
        return []

    @property
    def ground_truth(self) -> GroundTruth:
        match self.kind:
            case Kind.CONSTANT | Kind.IDENTITY | Kind.INCOMPARABLE:
                return GroundTruth(False, False, False)
            case Kind.POWER:
                return GroundTruth(self.params[0] > 2, False, False)
            case Kind.N2LOGN:
                return GroundTruth(True, False, False)
            case Kind.EXP:
                return GroundTruth(True, True, True)
            case Kind.FALPHA:
                return GroundTruth(True, True, False)
            case Kind.AFFINE:
                assert self.inner is not None
                return self.inner.ground_truth
        return GroundTruth()


def constant(c: float) -> SymbolicFunction:
    if c < 0:
        raise ParameterRangeError("c", c, "must be >= 0")
    return SymbolicFunction(Kind.CONSTANT, (c,))


def identity() -> SymbolicFunction:
    return SymbolicFunction(Kind.IDENTITY)


def power(alpha: float) -> SymbolicFunction:
    if alpha <= 0:
        raise ParameterRangeError("alpha", alpha, "must be > 0")
    return SymbolicFunction(Kind.POWER, (alpha,))


def n2logn() -> SymbolicFunction:
    return SymbolicFunction(Kind.N2LOGN)


def exponential(alpha: float) -> SymbolicFunction:
    if alpha <= 1:
        raise ParameterRangeError("alpha", alpha, "must be > 1")
    return SymbolicFunction(Kind.EXP, (alpha,))


def f_alpha(alpha: float) -> SymbolicFunction:
    """alpha^((ln n)^1.5): super-polynomial but not strongly super-polynomial."""
    if alpha <= 1:
        raise ParameterRangeError("alpha", alpha, "must be > 1")
    return SymbolicFunction(Kind.FALPHA, (alpha,))


def step(breakpoints: tuple[int, ...]) -> SymbolicFunction:
    return SymbolicFunction(Kind.STEP, steps=StepFunction(breakpoints), start=0)


def incomparable() -> SymbolicFunction:
    return SymbolicFunction(Kind.INCOMPARABLE)


def table(values: tuple[int, ...], label: str = "") -> SymbolicFunction:
    """Sampled non-decreasing table, e.g. a distance profile.

    Raises:
        ParameterRangeError: If the table is empty or decreases
    """
    if not values:
        raise ParameterRangeError("table", "empty", "must have at least one value")
    for n in range(1, len(values)):
        if values[n] < values[n - 1]:
            raise ParameterRangeError("table", f"n={n}", "values must be non-decreasing")
    return SymbolicFunction(Kind.TABLE, table=tuple(values), start=0, label=label)


def normalize_affine(f: SymbolicFunction, a: int, b: int, c: int, d: int) -> SymbolicFunction:
    """n -> D f(An + B) + C, which is equivalent to f.

    Raises:
        ParameterRangeError: If A or D is below 1, B or C is negative, or f is zero
    """
    for name, value, low in (("A", a, 1), ("B", b, 0), ("C", c, 0), ("D", d, 1)):
        if value < low:
            raise ParameterRangeError(name, value, f"must be >= {low}")
    if f.is_zero:
        raise ParameterRangeError("f", f.spec, "must not be the zero function")
    if (a, b, c, d) == (1, 0, 0, 1):
        return f
    return SymbolicFunction(Kind.AFFINE, (a, b, c, d), start=f.start, inner=f)


CATALOG: dict[str, SymbolicFunction] = {
    "constant:5": constant(5),
    "identity": identity(),
    "power:2": power(2),
    "power:3": power(3),
    "n2logn": n2logn(),
    "exp:2": exponential(2),
    "falpha:2": f_alpha(2),
    "step:incomparable": incomparable(),
}


def parse_function(spec: str) -> SymbolicFunction:
    """Parse 'identity', 'power:3', 'exp:2', 'falpha:2', 'constant:5', 'n2logn',
    'step:incomparable', 'step:16,24,32', 'table:profile.csv' or 'affine:A,B,C,D:<spec>'.

    Raises:
        ParameterRangeError: On an unknown kind or bad parameters
    """
    kind, _, rest = spec.strip().partition(":")
    try:
        match kind:
            case "identity":
                return identity()
            case "n2logn":
                return n2logn()
            case "constant":
                return constant(float(rest))
            case "power":
                return power(float(rest))
            case "exp":
                return exponential(float(rest))
            case "falpha":
                return f_alpha(float(rest))
            case "step" if rest == "incomparable":
                return incomparable()
            case "step":
                return step(tuple(int(x) for x in rest.split(",")))
            case "table":
                profile = read_profile_csv(Path(rest))
                return table(tuple(profile.values), label=spec)
            case "affine":
                params, _, inner = rest.partition(":")
                a, b, c, d = (int(x) for x in params.split(","))
                return normalize_affine(parse_function(inner), a, b, c, d)
    except (ValueError, InvalidStepFunctionError) as e:
        raise ParameterRangeError("function", spec, f"could not be parsed: {e}") from e
    except OSError as e:
        raise ParameterRangeError("function", spec, f"table file unreadable: {e}") from e
    raise ParameterRangeError("function", spec, f"unknown kind {kind!r}")
