"""The Cayley automatic structure record and its derived quantities."""

from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from cadist.automata import (
    Convolution,
    SyncAutomaton,
    enumerate_words,
    state_bound_constants,
)
from cadist.exceptions import EnumerationBudgetError, StructureError
from cadist.groups import CayleyGraph, GeneratorSet, GroupModel, Word
from cadist.structures.codecs import Codec

logger = logging.getLogger(__name__)

DEFAULT_WORD_BUDGET = 500_000


@dataclass(frozen=True)
class FillingConstants:
    """Constants of the corridor filling, all derived from (m, e)."""

    m: int
    e: int

    @property
    def c(self) -> float:
        return self.m / 2

    @property
    def d(self) -> int:
        return self.e + self.m

    @property
    def sigma(self) -> int:
        return 4 * self.m + 4

    @property
    def dehn(self) -> float:
        return self.c + self.e

    def as_dict(self) -> dict[str, float | int]:
        return {
            "m": self.m,
            "e": self.e,
            "c": self.c,
            "d": self.d,
            "sigma": self.sigma,
            "D": self.dehn,
        }


@dataclass(frozen=True)
class CayleyAutomaticStructure:
    """(L, psi) over a symbol alphabet with one multiplier per generator.

    ``symbol_values`` fixes pi on symbols; once every symbol is also a
    generator (after merging) pi(w) is the evaluation of w over
    ``generators``; ``symbol_words`` spells merged symbol tokens over the
    original generators. ``transport`` records (M1, M2) for transported
    structures.
    """

    name: str
    model: GroupModel[Any]
    generators: GeneratorSet
    language: SyncAutomaton
    codec: Codec
    multipliers: Mapping[str, SyncAutomaton]
    symbol_values: Mapping[str, Any] = field(default_factory=dict)
    symbol_words: Mapping[str, Word] = field(default_factory=dict)
    transport: tuple[int, int] | None = None
    description: str = ""

    def __post_init__(self) -> None:
        if self.language.tapes != 1:
            raise StructureError(f"{self.name}: the language must be one-tape")
        for token in self.generators.names:
            if token not in self.multipliers:
                raise StructureError(f"{self.name}: no multiplier for generator {token!r}")
        for token, a in self.multipliers.items():
            if a.tapes != 2 or a.alphabet != self.language.alphabet:
                raise StructureError(
                    f"{self.name}: multiplier {token!r} must be two-tape over the language alphabet"
                )

    @property
    def letters(self) -> tuple[str, ...]:
        return self.language.alphabet.letters

    @cached_property
    def graph(self) -> CayleyGraph:
        return CayleyGraph(self.model, self.generators)

    @property
    def merged(self) -> bool:
        """True iff every symbol is a generator, so pi is defined on L."""
        return all(letter in self.generators for letter in self.letters)

    def psi(self, word: Sequence[str]) -> Any:
        return self.codec.decode(word)

    def psi_inverse(self, g: Any) -> Word:
        return self.codec.encode(g)

    def pi(self, word: Sequence[str]) -> Any:
        """Evaluation of a word over symbols or generators.

        Raises:
            StructureError: If the structure has symbols that are not generators
        """
        if not self.merged:
            raise StructureError(
                f"{self.name}: pi needs symbols inside the generating set; merge first"
            )
        return self.graph.evaluate(word)

    def expand(self, word: Sequence[str]) -> Word:
        """Rewrite merged symbol tokens by their words over the original generators."""
        out: list[str] = []
        for token in word:
            out.extend(self.symbol_words.get(token, (token,)))
        return tuple(out)

    @cached_property
    def identity_word(self) -> Word:
        return self.psi_inverse(self.model.identity())

    @cached_property
    def constants(self) -> tuple[int, int]:
        """(m, e) of the length bound |u| <= m d(1, psi(u)) + e."""
        return state_bound_constants(self.multipliers, self.identity_word)

    @property
    def filling_constants(self) -> FillingConstants:
        m, e = self.constants
        return FillingConstants(m, e)

    def words(self, max_len: int, budget: int = DEFAULT_WORD_BUDGET) -> Iterator[Word]:
        """L^{<=max_len} in length-lex order.

        Raises:
            EnumerationBudgetError: When more than budget words would be produced
        """
        for count, w in enumerate(enumerate_words(self.language, max_len), start=1):
            if count > budget:
                raise EnumerationBudgetError(budget)
            yield w

    def in_language(self, word: Sequence[str]) -> bool:
        if any(s not in self.language.alphabet.letters for s in word):
            return False
        return self.language.accepts(Convolution.of(word))

    def summary(self) -> dict[str, Any]:
        m, e = self.constants
        return {
            "name": self.name,
            "model": self.model.name,
            "generators": list(self.generators.names),
            "letters": list(self.letters),
            "codec": self.codec.name,
            "language_states": self.language.num_states,
            "multiplier_states": {k: a.num_states for k, a in self.multipliers.items()},
            "m": m,
            "e": e,
            "transport": list(self.transport) if self.transport else None,
            "description": self.description,
        }
