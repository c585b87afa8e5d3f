"""Cayley distance function h(n) = max d(pi(w), psi(w)) over L^{<=n}, and related bounds."""

from __future__ import annotations

import csv
import json
import logging
import sys
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from cadist.exceptions import (
    DistanceCapExceededError,
    InsufficientRangeError,
    ParameterRangeError,
)
from cadist.groups import Word, render_word
from cadist.parallel import ordered_flat_map
from cadist.structures.structure import DEFAULT_WORD_BUDGET, CayleyAutomaticStructure

logger = logging.getLogger(__name__)

CAP_MARGIN = 16


class ProfileEntry(BaseModel):
    n: int
    h: int
    witness: list[str] | None = None


class DistanceProfile(BaseModel):
    """h(n) for 0 <= n <= n_max with the first maximiser in enumeration order."""

    structure: str
    m: int
    e: int
    entries: list[ProfileEntry] = Field(default_factory=list)

    @property
    def n_max(self) -> int:
        return self.entries[-1].n if self.entries else -1

    @property
    def values(self) -> list[int]:
        return [entry.h for entry in self.entries]

    def h(self, n: int) -> int:
        """h(n) on the computed range.

        Raises:
            InsufficientRangeError: If n is negative or beyond n_max
        """
        if not 0 <= n <= self.n_max:
            raise InsufficientRangeError(
                f"Profile of {self.structure} covers 0..{self.n_max}, asked for {n}"
            )
        return self.entries[n].h


def default_radius_cap(s: CayleyAutomaticStructure, n: int) -> int:
    """No cap for closed-form metrics; m n + e + margin for search-based ones."""
    if s.graph.closed_form:
        return sys.maxsize
    m, e = s.constants
    return m * n + e + CAP_MARGIN


def _distances(
    s: CayleyAutomaticStructure, words: Sequence[Word], cap: int, workers: int
) -> list[int]:
    def chunk(part: Sequence[Word]) -> list[int]:
        out = []
        for w in part:
            try:
                out.append(s.graph.distance(s.pi(w), s.psi(w), cap))
            except DistanceCapExceededError:
                raise DistanceCapExceededError(cap, render_word(w)) from None
        return out

    return ordered_flat_map(chunk, words, workers)


def compute_h(
    s: CayleyAutomaticStructure,
    n_max: int,
    *,
    budget: int = DEFAULT_WORD_BUDGET,
    radius_cap: int | None = None,
    workers: int = 1,
) -> DistanceProfile:
    """Exact h(n) for n = 0..n_max.

    h(0) is 0 when the empty word is not in L.

    Args:
        s: Merged structure (pi defined on L)
        n_max: Largest word length
        budget: Word budget for the enumeration
        radius_cap: Distance cap; defaults to default_radius_cap(s, n_max)
        workers: Threads for the distance fan-out

    Raises:
        EnumerationBudgetError: If L^{<=n_max} exceeds the budget
        DistanceCapExceededError: With the offending word, if a distance exceeds the cap
    """
    cap = default_radius_cap(s, n_max) if radius_cap is None else radius_cap
    words = list(s.words(n_max, budget))
    distances = _distances(s, words, cap, workers)
    m, e = s.constants

    best = 0
    witness: Word | None = None
    by_length: dict[int, list[tuple[Word, int]]] = {}
    for w, d in zip(words, distances, strict=True):
        by_length.setdefault(len(w), []).append((w, d))
    entries = []
    for n in range(n_max + 1):
        for w, d in by_length.get(n, []):
            if witness is None or d > best:
                best, witness = d, w
        entries.append(
            ProfileEntry(n=n, h=best, witness=list(witness) if witness is not None else None)
        )
    logger.info(
        "h profile of %s to n=%d over %d words: h(n_max)=%d",
        s.name,
        n_max,
        len(words),
        best,
        extra={"structure": s.name},
    )
    return DistanceProfile(structure=s.name, m=m, e=e, entries=entries)


class LengthBoundReport(BaseModel):
    """|u| <= m d(1, psi(u)) + e over L^{<=n}; slack is the right side minus |u|."""

    structure: str
    n: int
    m: int
    e: int
    checked: int
    min_slack: int | None = None
    max_slack: int | None = None
    violation: list[str] | None = None

    @property
    def passed(self) -> bool:
        return self.violation is None


def check_length_bound(
    s: CayleyAutomaticStructure,
    n: int,
    *,
    budget: int = DEFAULT_WORD_BUDGET,
    workers: int = 1,
) -> LengthBoundReport:
    m, e = s.constants
    words = list(s.words(n, budget))
    identity = s.model.identity()
    cap = sys.maxsize if s.graph.closed_form else m * n + e + CAP_MARGIN

    def chunk(part: Sequence[Word]) -> list[int]:
        return [s.graph.distance(identity, s.psi(w), cap) for w in part]

    norms = ordered_flat_map(chunk, words, workers)
    report = LengthBoundReport(structure=s.name, n=n, m=m, e=e, checked=len(words))
    for w, d in zip(words, norms, strict=True):
        slack = m * d + e - len(w)
        if report.min_slack is None or slack < report.min_slack:
            report.min_slack = slack
        if report.max_slack is None or slack > report.max_slack:
            report.max_slack = slack
        if slack < 0 and report.violation is None:
            report.violation = list(w)
    if report.violation is not None:
        logger.warning(
            "Length bound fails for %s at %s",
            s.name,
            report.violation,
            extra={"structure": s.name},
        )
    return report


def check_equivalence_constants(
    p: DistanceProfile, q: DistanceProfile, k: int, m: int, n_start: int
) -> bool:
    """p.h(n) <= K q.h(M n) for n in [N, min(p.n_max, q.n_max // M)].

    A finite-range witness check only.

    Raises:
        InsufficientRangeError: If the range is empty
    """
    if k < 1:
        raise ParameterRangeError("K", k, "must be >= 1")
    if m < 1:
        raise ParameterRangeError("M", m, "must be >= 1")
    end = min(p.n_max, q.n_max // m)
    if n_start < 0 or n_start > end:
        raise InsufficientRangeError(
            f"Profiles {p.structure} (n<={p.n_max}) and {q.structure} (n<={q.n_max}) "
            f"do not cover [{n_start}, {end}] with M={m}"
        )
    return all(p.h(n) <= k * q.h(m * n) for n in range(n_start, end + 1))


def fellow_traveler_constant(
    s: CayleyAutomaticStructure, n: int, *, budget: int = DEFAULT_WORD_BUDGET
) -> int:
    """Largest d(pi(u[:j]), pi(v[:j])) over u in L^{<=n}, v = psi^-1(psi(u) a), a non-trivial."""
    identity = s.model.identity()
    cap = sys.maxsize if s.graph.closed_form else 2 * n + CAP_MARGIN
    best = 0
    tokens = [t for t in s.generators.names if s.generators.value(t) != identity]
    for u in s.words(n, budget):
        g = s.psi(u)
        for token in tokens:
            v = s.psi_inverse(s.model.multiply(g, s.generators.value(token)))
            for j in range(max(len(u), len(v)) + 1):
                best = max(best, s.graph.distance(s.pi(u[:j]), s.pi(v[:j]), cap))
    return best


class TransportReport(BaseModel):
    """Both transport inequalities on lengths <= n."""

    n: int
    m1: int
    m2: int
    original_distance_bound: bool
    profile_bound: bool
    first_violation: dict[str, Any] | None = None

    @property
    def passed(self) -> bool:
        return self.original_distance_bound and self.profile_bound


def check_transport_inequalities(
    original: CayleyAutomaticStructure,
    moved: CayleyAutomaticStructure,
    n: int,
    *,
    budget: int = DEFAULT_WORD_BUDGET,
) -> TransportReport:
    """d_S(pi(w), psi(w)) <= M1 h'(M2 |w|) on L^{<=n} and h'(k) <= M2 h(M1 k) for k <= n.

    Raises:
        InsufficientRangeError: If moved carries no transport constants
    """
    if moved.transport is None:
        raise InsufficientRangeError(f"{moved.name} is not a transported structure")
    m1, m2 = moved.transport
    h_old = compute_h(original, m1 * n, budget=budget)
    h_new = compute_h(moved, m2 * n, budget=budget)
    report = TransportReport(
        n=n, m1=m1, m2=m2, original_distance_bound=True, profile_bound=True
    )
    cap = default_radius_cap(original, n)
    for w in original.words(n, budget):
        d = original.graph.distance(original.pi(w), original.psi(w), cap)
        if d > m1 * h_new.h(m2 * len(w)):
            report.original_distance_bound = False
            report.first_violation = {"word": render_word(w), "distance": d}
            break
    for k in range(n + 1):
        if h_new.h(k) > m2 * h_old.h(m1 * k):
            report.profile_bound = False
            report.first_violation = report.first_violation or {"n": k, "h": h_new.h(k)}
            break
    return report


def profile_rows(profile: DistanceProfile) -> list[list[str]]:
    return [
        [str(e.n), str(e.h), render_word(e.witness) if e.witness is not None else ""]
        for e in profile.entries
    ]


def write_profile_csv(
    profile: DistanceProfile, path: Path, header: Mapping[str, Any] | None = None
) -> None:
    """CSV n,h,witness preceded by '# key: value' header lines."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        for key, value in (header or {}).items():
            f.write(f"# {key}: {json.dumps(value, sort_keys=True)}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["n", "h", "witness"])
        writer.writerows(profile_rows(profile))


def read_profile_csv(path: Path, structure: str = "table") -> DistanceProfile:
    """Read back a profile CSV; header lines are skipped."""
    with open(path, newline="") as f:
        lines = [line for line in f if not line.startswith("#")]
    rows = list(csv.DictReader(lines))
    entries = [
        ProfileEntry(n=int(r["n"]), h=int(r["h"]), witness=_parse_witness(r["witness"]))
        for r in rows
    ]
    return DistanceProfile(structure=structure, m=0, e=0, entries=entries)


def _parse_witness(text: str) -> list[str]:
    return text.split() if " " in text else list(text)
