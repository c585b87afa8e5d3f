"""Step functions built from increasing loop lengths, and the lamplighter witness loops."""

from __future__ import annotations

from bisect import bisect_right
from collections.abc import Sequence
from dataclasses import dataclass

from cadist.exceptions import InvalidStepFunctionError
from cadist.groups import Word, dense_witness_loop


@dataclass(frozen=True)
class StepFunction:
    """phi(n) = l_i for l_i <= n < l_{i+1}, and 0 below l_1."""

    breakpoints: tuple[int, ...]

    def __post_init__(self) -> None:
        b = list(self.breakpoints)
        if not b or any(x < 0 for x in b) or any(x >= y for x, y in zip(b, b[1:], strict=False)):
            raise InvalidStepFunctionError(b)

    def __call__(self, n: int) -> int:
        i = bisect_right(self.breakpoints, n)
        return self.breakpoints[i - 1] if i else 0

    def piece(self, n: int) -> tuple[int, int | None]:
        """The half-open interval [l_i, l_{i+1}) holding n; l_{i+1} is None past the last."""
        i = bisect_right(self.breakpoints, n)
        start = self.breakpoints[i - 1] if i else 0
        end = self.breakpoints[i] if i < len(self.breakpoints) else None
        return start, end


def phi_step_function(lengths: Sequence[int]) -> StepFunction:
    """Step function through the given lengths.

    Raises:
        InvalidStepFunctionError: If lengths are empty or not strictly increasing
    """
    return StepFunction(tuple(int(x) for x in lengths))


def dense_loop_lengths(n_max: int) -> list[int]:
    """Lengths 8n + 8 of the lamplighter witness loops for n = 1..n_max."""
    return [8 * n + 8 for n in range(1, n_max + 1)]


def dense_loops(n_max: int) -> list[tuple[int, Word]]:
    return [(n, dense_witness_loop(n)) for n in range(1, n_max + 1)]
