"""Corridor decomposition of a loop into cells bounded by normal-form rows."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from typing import Any

from pydantic import BaseModel, Field

from cadist.automata import PADDING, Convolution, PaddedTuple, SyncAutomaton
from cadist.exceptions import (
    InsufficientRangeError,
    MultiplierRejectsError,
    NotALoopError,
    StructureError,
)
from cadist.groups import Word, conjugate_product, free_reduce, inverse_word, render_word
from cadist.profile import DistanceProfile, compute_h, default_radius_cap
from cadist.structures import CayleyAutomaticStructure
from cadist.structures.structure import DEFAULT_WORD_BUDGET

logger = logging.getLogger(__name__)


class Cell(BaseModel):
    """One cell rho w rho^-1; ``corridor`` is 1-based, ``row`` the upper row of the cell."""

    corridor: int
    row: int
    conjugator: list[str]
    boundary: list[str]


class FillingCertificate(BaseModel):
    """Cells whose conjugate product freely equals the loop.

    ``profile_h`` lists h(0), h(1), ... of the profile the certificate was
    built against; ``h_value`` is its value at ``h_argument``, the smaller of
    c|loop| + d and the last length it covers, and enters the perimeter
    bound 4 h + sigma. ``geodesic_lengths`` maps each normal-form length used
    by a row to its longest geodesic, none of which may exceed h at that
    length. ``truncated`` marks a profile that stops short of c|loop| + d.
    """

    structure: str
    loop: list[str]
    cells: list[Cell] = Field(default_factory=list)
    constants: dict[str, float | int]
    row_depth: int = 0
    bound_argument: int
    h_argument: int
    h_value: int
    h_source: str
    truncated: bool = False
    profile_h: list[int] = Field(default_factory=list)
    geodesic_lengths: dict[int, int] = Field(default_factory=dict)
    max_cell_perimeter: int = 0
    perimeter_bound: int

    @property
    def within_bound(self) -> bool:
        return self.max_cell_perimeter <= self.perimeter_bound


class CertificateCheck(BaseModel):
    free_reduction_identity: bool
    cells_are_loops: bool
    geodesics_within_h: bool = True
    profile_matches: bool = True
    perimeter_within_bound: bool
    cell_count_within_bound: bool
    first_failure: dict[str, Any] | None = None

    @property
    def passed(self) -> bool:
        return (
            self.free_reduction_identity
            and self.cells_are_loops
            and self.geodesics_within_h
            and self.profile_matches
            and self.perimeter_within_bound
            and self.cell_count_within_bound
        )


def _tape(labels: Sequence[PaddedTuple], k: int) -> Word:
    return tuple(label[k] for label in labels if label[k] != PADDING)


class _Corridor:
    """Rows of one corridor between u_{i-1} and u_i along generator ``token``."""

    def __init__(
        self,
        s: CayleyAutomaticStructure,
        token: str,
        left: Word,
        right: Word,
        geodesic: Callable[[Word], Word],
    ) -> None:
        self.s = s
        self.token = token
        self.left = left
        self.right = right
        self.geodesic = geodesic
        self.automaton: SyncAutomaton = s.multipliers[token]
        conv = Convolution.of(left, right)
        run = self.automaton.accepting_run(conv)
        if run is None:
            raise MultiplierRejectsError(token, render_word(left), render_word(right))
        self.run = run
        self.labels = conv.padded()
        self.depth = 0

    @property
    def length(self) -> int:
        return len(self.labels)

    def row(self, j: int) -> Word:
        """x_L gamma(A) s gamma(B)^-1 x_R^-1, from pi(left[:j]) to pi(right[:j])."""
        completion = self.automaton.shortest_completion(self.run[j])
        full = self.labels[:j] + completion
        a, b = _tape(full, 0), _tape(full, 1)
        for word in (a, b):
            if not self.s.in_language(word):
                raise StructureError(
                    f"Completion of M_{self.token} leaves L at {render_word(word)!r}",
                    {"generator": self.token, "word": render_word(word)},
                )
        self.depth = max(self.depth, len(a), len(b))
        inverse = self.s.generators.inverse_map
        x_left, x_right = _tape(completion, 0), _tape(completion, 1)
        return (
            x_left
            + self.geodesic(a)
            + (self.token,)
            + inverse_word(self.geodesic(b), inverse)
            + inverse_word(x_right, inverse)
        )

    def cells(self, index: int) -> list[Cell]:
        """Bottom cell at the basepoint, then one cell per pair of consecutive rows."""
        if self.length == 0:
            return [Cell(corridor=index, row=0, conjugator=[], boundary=list(self.row(0)))]
        inverse = self.s.generators.inverse_map
        rows = {j: self.row(j) for j in range(1, self.length + 1)}
        out = [
            Cell(
                corridor=index,
                row=1,
                conjugator=[],
                boundary=list(self.left[:1] + rows[1] + inverse_word(self.right[:1], inverse)),
            )
        ]
        for j in range(1, self.length):
            boundary = (
                inverse_word(rows[j], inverse)
                + self.left[j : j + 1]
                + rows[j + 1]
                + inverse_word(self.right[j : j + 1], inverse)
            )
            out.append(
                Cell(
                    corridor=index,
                    row=j + 1,
                    conjugator=list(self.right[:j]),
                    boundary=list(boundary),
                )
            )
        return out


def corridor_fill(
    s: CayleyAutomaticStructure,
    loop: Sequence[str],
    *,
    profile: DistanceProfile | None = None,
    radius_cap: int | None = None,
    budget: int = DEFAULT_WORD_BUDGET,
) -> FillingCertificate:
    """Decompose a loop into corridor cells.

    For g_i the prefix values of the loop, u_i = psi^-1(g_i) and
    gamma_i = geodesic(pi(u_i), g_i). Corridor i runs between u_{i-1} and u_i;
    row j joins their length-j prefixes through the shortest completion of
    the accepting run of M_{s_i} at j. Cells are listed corridor by corridor,
    bottom to top, and conjugated back to the basepoint of the loop.

    Without a profile, h is computed to the row depth of the filling.

    Args:
        s: Merged structure
        loop: Word over the generators evaluating to the identity
        profile: Distance profile used for the perimeter bound
        radius_cap: Geodesic search cap for search-based metrics
        budget: Word budget when the profile is computed here

    Raises:
        NotALoopError: If loop is not the identity
        MultiplierRejectsError: If a multiplier rejects consecutive normal forms
        StructureError: If the structure is not merged
        InsufficientRangeError: If the supplied profile is empty
        BudgetExceededError: If a geodesic exceeds the cap
    """
    loop = tuple(loop)
    graph = s.graph
    if not graph.is_identity(loop):
        raise NotALoopError(render_word(loop))
    if not s.merged:
        raise StructureError(f"{s.name}: corridor filling needs a merged structure")
    if profile is not None and profile.n_max < 0:
        raise InsufficientRangeError(f"Profile of {profile.structure} is empty")

    constants = s.filling_constants
    argument = math.ceil(constants.c * len(loop) + constants.d)
    cap = radius_cap if radius_cap is not None else default_radius_cap(s, argument)
    inverse = s.generators.inverse_map

    geodesics: dict[Word, Word] = {}
    geodesic_lengths: dict[int, int] = {}

    def geodesic(word: Word) -> Word:
        if word not in geodesics:
            path = graph.geodesic(s.pi(word), s.psi(word), cap)
            geodesics[word] = path
            geodesic_lengths[len(word)] = max(geodesic_lengths.get(len(word), 0), len(path))
        return geodesics[word]

    values = [s.model.identity()]
    for token in loop:
        values.append(s.model.multiply(values[-1], s.generators.value(token)))
    normal_forms = [s.psi_inverse(g) for g in values]
    base = inverse_word(normal_forms[0] + geodesic(normal_forms[0]), inverse)

    cells: list[Cell] = []
    depth = 0
    for i, token in enumerate(loop, start=1):
        corridor = _Corridor(s, token, normal_forms[i - 1], normal_forms[i], geodesic)
        for cell in corridor.cells(i):
            cell.conjugator = list(free_reduce(base + tuple(cell.conjugator), inverse))
            cells.append(cell)
        depth = max(depth, corridor.depth)

    h_source = "profile"
    if profile is None:
        depth_used = max(geodesic_lengths, default=0)
        profile = compute_h(s, depth_used, budget=budget, radius_cap=radius_cap)
        h_source = "computed"
    h_argument = min(argument, profile.n_max)
    h_value = profile.h(h_argument)
    cert = FillingCertificate(
        structure=s.name,
        loop=list(loop),
        cells=cells,
        constants=constants.as_dict(),
        row_depth=depth,
        bound_argument=argument,
        h_argument=h_argument,
        h_value=h_value,
        h_source=h_source,
        truncated=profile.n_max < argument,
        profile_h=profile.values,
        geodesic_lengths=dict(sorted(geodesic_lengths.items())),
        max_cell_perimeter=max((len(c.boundary) for c in cells), default=0),
        perimeter_bound=4 * h_value + constants.sigma,
    )
    logger.info(
        "Filled %s loop of length %d with %d cells, max perimeter %d (bound %d)",
        s.name,
        len(loop),
        len(cells),
        cert.max_cell_perimeter,
        cert.perimeter_bound,
        extra={"structure": s.name},
    )
    return cert


def cell_count_bound_check(cert: FillingCertificate) -> bool:
    """|cells| <= n (m n / 2 + e) with n = |loop|."""
    n = len(cert.loop)
    m, e = int(cert.constants["m"]), int(cert.constants["e"])
    return 2 * len(cert.cells) <= n * (m * n + 2 * e)


def _geodesic_failure(cert: FillingCertificate) -> dict[str, Any] | None:
    for length, longest in sorted(cert.geodesic_lengths.items()):
        if length >= len(cert.profile_h):
            return {
                "reason": "row word beyond profile",
                "length": length,
                "profile_n": len(cert.profile_h) - 1,
            }
        if longest > cert.profile_h[length]:
            return {
                "reason": "geodesic exceeds h",
                "length": length,
                "geodesic": longest,
                "h": cert.profile_h[length],
            }
    return None


def check_certificate(
    s: CayleyAutomaticStructure,
    cert: FillingCertificate,
    *,
    profile: DistanceProfile | None = None,
    budget: int = DEFAULT_WORD_BUDGET,
) -> CertificateCheck:
    """Recheck a certificate against the structure's group and inverse map.

    Perimeters are recounted from the cell boundaries, every row geodesic
    is held against the certificate's h, and that h against an
    independently computed profile (to the row normal-form depth unless
    one is given).
    """
    inverse = s.generators.inverse_map
    graph = s.graph
    if profile is None:
        profile = compute_h(s, max(cert.geodesic_lengths, default=0), budget=budget)

    product = conjugate_product(((c.conjugator, c.boundary) for c in cert.cells), inverse)
    largest = max((len(c.boundary) for c in cert.cells), default=0)
    in_range = 0 <= cert.h_argument < len(cert.profile_h)
    bound_consistent = (
        in_range
        and cert.profile_h[cert.h_argument] == cert.h_value
        and cert.perimeter_bound == 4 * cert.h_value + int(cert.constants["sigma"])
    )
    geodesic_failure = _geodesic_failure(cert)
    profile_failure = next(
        (
            {"reason": "profile differs", "n": n, "claimed": cert.profile_h[n], "h": profile.h(n)}
            for n in range(min(len(cert.profile_h), profile.n_max + 1))
            if cert.profile_h[n] != profile.h(n)
        ),
        None,
    )
    check = CertificateCheck(
        free_reduction_identity=product == free_reduce(cert.loop, inverse),
        cells_are_loops=True,
        geodesics_within_h=geodesic_failure is None,
        profile_matches=profile_failure is None,
        perimeter_within_bound=bound_consistent
        and largest <= cert.max_cell_perimeter <= cert.perimeter_bound,
        cell_count_within_bound=cell_count_bound_check(cert),
    )
    if not check.free_reduction_identity:
        check.first_failure = {"reason": "product differs", "product": render_word(product)}
    for c in cert.cells:
        if not graph.is_identity(c.boundary):
            check.cells_are_loops = False
            check.first_failure = check.first_failure or {
                "reason": "cell is not a loop",
                "corridor": c.corridor,
                "row": c.row,
                "boundary": render_word(c.boundary),
            }
            break
    check.first_failure = check.first_failure or geodesic_failure or profile_failure
    if not check.perimeter_within_bound and check.first_failure is None:
        check.first_failure = {
            "reason": "perimeter bound",
            "max_cell_perimeter": max(largest, cert.max_cell_perimeter),
            "perimeter_bound": cert.perimeter_bound,
        }
    if not check.cell_count_within_bound and check.first_failure is None:
        check.first_failure = {"reason": "cell count", "cells": len(cert.cells)}
    return check
