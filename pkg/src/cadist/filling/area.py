"""Exact area of small identity words by iterative deepening over relator insertions."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

from pydantic import BaseModel, Field

from cadist.exceptions import (
    AreaExceedsMaxError,
    EnumerationBudgetError,
    UnknownGeneratorError,
)
from cadist.groups import Presentation, Word, free_reduce, render_word

logger = logging.getLogger(__name__)

DEFAULT_MAX_AREA = 8
DEFAULT_NODE_BUDGET = 2_000_000


class AreaStep(BaseModel):
    """Insert ``relator`` before index ``position`` and freely reduce to ``result``."""

    position: int
    relator: list[str]
    result: list[str]


class AreaResult(BaseModel):
    word: list[str]
    area: int
    certificate: list[AreaStep] = Field(default_factory=list)


def area(
    presentation: Presentation,
    word: Sequence[str],
    max_area: int = DEFAULT_MAX_AREA,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> AreaResult:
    """Minimal number of relator applications reducing word to the empty word.

    One application inserts a cyclic conjugate of a relator or its inverse at
    any position of the freely reduced word and freely reduces again; deleting
    a relator subword is the insertion of its inverse next to it.

    Args:
        presentation: Generators, formal inverses and relators
        word: Word over the presentation alphabet
        max_area: Deepest search
        node_budget: Largest number of expanded search nodes

    Returns:
        AreaResult with a replayable certificate

    Raises:
        UnknownGeneratorError: On a token outside the presentation
        AreaExceedsMaxError: If no filling with at most max_area applications exists
        EnumerationBudgetError: If the search expands more than node_budget nodes
    """
    alphabet = presentation.alphabet
    for token in word:
        if token not in alphabet:
            raise UnknownGeneratorError(token, alphabet)
    inverse = presentation.inverses
    family = presentation.relator_family()
    longest = max((len(r) for r in family), default=0)
    start = free_reduce(word, inverse)

    failed: dict[Word, int] = {}
    nodes = 0

    def search(v: Word, remaining: int) -> list[AreaStep] | None:
        nonlocal nodes
        if not v:
            return []
        if remaining == 0 or len(v) > remaining * longest:
            return None
        if failed.get(v, -1) >= remaining:
            return None
        nodes += 1
        if nodes > node_budget:
            raise EnumerationBudgetError(node_budget)
        bound = (remaining - 1) * longest
        for pos in range(len(v) + 1):
            for r in family:
                nxt = free_reduce(v[:pos] + r + v[pos:], inverse)
                if len(nxt) > bound:
                    continue
                rest = search(nxt, remaining - 1)
                if rest is not None:
                    return [AreaStep(position=pos, relator=list(r), result=list(nxt)), *rest]
        failed[v] = remaining
        return None

    lower = math.ceil(len(start) / longest) if longest else 0
    for depth in range(lower, max_area + 1):
        steps = search(start, depth)
        if steps is not None:
            logger.debug("area(%s) = %d after %d nodes", render_word(word), depth, nodes)
            return AreaResult(word=list(word), area=depth, certificate=steps)
    raise AreaExceedsMaxError(render_word(word), max_area)


def replay(presentation: Presentation, result: AreaResult) -> bool:
    """True iff the certificate reduces the word to empty in exactly ``area`` applications."""
    inverse = presentation.inverses
    family = set(presentation.relator_family())
    current = free_reduce(result.word, inverse)
    for step in result.certificate:
        if tuple(step.relator) not in family or not 0 <= step.position <= len(current):
            return False
        current = free_reduce(
            current[: step.position] + tuple(step.relator) + current[step.position :], inverse
        )
        if list(current) != step.result:
            return False
    return not current and len(result.certificate) == result.area


def area_lower_bound(presentation: Presentation, word: Sequence[str]) -> int:
    """ceil(|reduced word| / longest relator): each application shortens by at most that much."""
    longest = max((len(r) for r in presentation.relator_family()), default=0)
    reduced = free_reduce(word, presentation.inverses)
    if not reduced:
        return 0
    return math.ceil(len(reduced) / longest) if longest else 0
