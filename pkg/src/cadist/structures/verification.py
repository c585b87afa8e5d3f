"""Bounded verification of the defining conditions of a Cayley automatic structure."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Any

from pydantic import BaseModel, Field

from cadist.automata import (
    Alphabet,
    Convolution,
    SyncAutomaton,
    cylindrify,
    enumerate_convolutions,
    product,
)
from cadist.groups import Word, render_word
from cadist.parallel import ordered_flat_map, ordered_map
from cadist.structures.structure import DEFAULT_WORD_BUDGET, CayleyAutomaticStructure

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    """Outcome of one condition; the counterexample is the first in enumeration order."""

    name: str
    passed: bool
    checked: int = 0
    counterexample: dict[str, Any] | None = None


class VerificationReport(BaseModel):
    structure: str
    depth: int
    m: int
    e: int
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if not c.passed), None)


def _w(word: Sequence[str]) -> str:
    return render_word(word)


def check_regularity(s: CayleyAutomaticStructure) -> CheckResult:
    """Shapes, alphabets and padding closure of L and every multiplier."""
    checked = 1
    if not s.language.padding_closed():
        return CheckResult(
            name="regularity",
            passed=False,
            checked=checked,
            counterexample={"automaton": "language", "reason": "not padding closed"},
        )
    for token in s.generators.names:
        checked += 1
        a = s.multipliers[token]
        if a.tapes != 2 or a.alphabet != s.language.alphabet:
            reason = "wrong shape"
        elif not a.padding_closed():
            reason = "not padding closed"
        else:
            continue
        return CheckResult(
            name="regularity",
            passed=False,
            checked=checked,
            counterexample={"automaton": f"multiplier {token}", "reason": reason},
        )
    return CheckResult(name="regularity", passed=True, checked=checked)


def check_bijectivity(
    s: CayleyAutomaticStructure, words: Sequence[Word], workers: int = 1
) -> CheckResult:
    """psi is injective on the sample and psi^-1 returns each sampled word."""
    values = ordered_map(s.psi, words, workers)
    first: dict[Any, Word] = {}
    for w, g in zip(words, values, strict=True):
        if g in first:
            return CheckResult(
                name="bijectivity",
                passed=False,
                checked=len(first),
                counterexample={"u": _w(first[g]), "v": _w(w), "reason": "same element"},
            )
        first[g] = w
        back = s.psi_inverse(g)
        if back != w:
            return CheckResult(
                name="bijectivity",
                passed=False,
                checked=len(first),
                counterexample={"u": _w(w), "psi_inverse": _w(back), "reason": "normal form"},
            )
    return CheckResult(name="bijectivity", passed=True, checked=len(words))


def _short_words(alphabet: Alphabet, n: int) -> SyncAutomaton:
    """All words of length <= n."""
    delta = {i: {(a,): [i + 1] for a in alphabet.letters} for i in range(n)}
    return SyncAutomaton(1, alphabet, n + 1, 0, list(range(n + 1)), delta)


def check_soundness(s: CayleyAutomaticStructure, depth: int, workers: int = 1) -> CheckResult:
    """Every accepted pair (u, v) with |u| <= depth has u, v in L and psi(v) = psi(u) s.

    Partners are followed to length depth + m, the range completeness
    examines from the same sample.
    """
    m, _ = s.constants

    def scan(token: str) -> tuple[int, dict[str, Any] | None]:
        value = s.generators.value(token)
        a = s.multipliers[token]
        if a.tapes != 2:
            return 0, {"generator": token, "reason": "wrong shape"}
        bounded = product(a, cylindrify(_short_words(a.alphabet, depth), 2, [0]))
        count = 0
        for conv in enumerate_convolutions(bounded, depth + m):
            count += 1
            u, v = conv.words
            reason = None
            if not s.in_language(u) or not s.in_language(v):
                reason = "pair outside L"
            elif s.psi(v) != s.model.multiply(s.psi(u), value):
                reason = "wrong product"
            if reason:
                return count, {"generator": token, "u": _w(u), "v": _w(v), "reason": reason}
        return count, None

    results = ordered_map(scan, list(s.generators.names), workers)
    total = 0
    for count, failure in results:
        total += count
        if failure is not None:
            return CheckResult(
                name="soundness", passed=False, checked=total, counterexample=failure
            )
    return CheckResult(name="soundness", passed=True, checked=total)


def check_completeness(
    s: CayleyAutomaticStructure, words: Sequence[Word], workers: int = 1
) -> CheckResult:
    """For u in the sample and every generator, (u, psi^-1(psi(u) s)) is accepted.

    The partner may be longer than u by at most m letters.
    """
    m, _ = s.constants

    def scan(chunk: Sequence[Word]) -> list[dict[str, Any]]:
        failures = []
        for u in chunk:
            g = s.psi(u)
            for token in s.generators.names:
                v = s.psi_inverse(s.model.multiply(g, s.generators.value(token)))
                reason = None
                if not s.in_language(v):
                    reason = "normal form outside L"
                elif len(v) > len(u) + m:
                    reason = "partner longer than |u| + m"
                elif not s.multipliers[token].accepts(Convolution.of(u, v)):
                    reason = "multiplier rejects"
                if reason:
                    failures.append({"generator": token, "u": _w(u), "v": _w(v), "reason": reason})
                    return failures
        return failures

    failures = ordered_flat_map(scan, list(words), workers)
    if failures:
        return CheckResult(
            name="completeness", passed=False, checked=len(words), counterexample=failures[0]
        )
    return CheckResult(name="completeness", passed=True, checked=len(words) * len(s.generators))


def verify_structure(
    s: CayleyAutomaticStructure,
    depth: int,
    *,
    budget: int = DEFAULT_WORD_BUDGET,
    workers: int = 1,
) -> VerificationReport:
    """Check regularity, bijectivity, soundness and completeness on L^{<=depth}.

    Raises:
        EnumerationBudgetError: If the sample exceeds the word budget
    """
    m, e = s.constants
    report = VerificationReport(structure=s.name, depth=depth, m=m, e=e)
    report.checks.append(check_regularity(s))
    words = list(s.words(depth, budget))
    logger.info(
        "Verifying %s on %d words (depth %d)",
        s.name,
        len(words),
        depth,
        extra={"structure": s.name},
    )
    report.checks.append(check_bijectivity(s, words, workers))
    report.checks.append(check_soundness(s, depth, workers))
    report.checks.append(check_completeness(s, words, workers))
    for check in report.checks:
        level = logging.INFO if check.passed else logging.WARNING
        logger.log(level, "%s: %s", check.name, "ok" if check.passed else check.counterexample)
    return report
