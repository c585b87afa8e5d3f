"""Alphabets, padded tuples and convolutions of word tuples."""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from cadist.exceptions import AutomatonError, TapeCountError, UnknownSymbolError

PADDING = "$"

Word = tuple[str, ...]
PaddedTuple = tuple[str, ...]


@dataclass(frozen=True)
class Alphabet:
    """Ordered letters plus one padding symbol.

    The declared letter order fixes every enumeration order in the package;
    padding sorts after all letters.
    """

    letters: tuple[str, ...]
    padding: str = PADDING
    _order: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if len(set(self.letters)) != len(self.letters):
            raise AutomatonError(f"Duplicate letters in alphabet: {list(self.letters)}")
        if self.padding in self.letters:
            raise AutomatonError(f"Padding symbol {self.padding!r} is also a letter")
        if any(not letter for letter in self.letters):
            raise AutomatonError("Letters must be non-empty tokens")
        order = {letter: i for i, letter in enumerate(self.letters)}
        order[self.padding] = len(self.letters)
        object.__setattr__(self, "_order", order)

    @classmethod
    def of(cls, letters: Sequence[str]) -> Alphabet:
        return cls(tuple(letters))

    @property
    def symbols(self) -> tuple[str, ...]:
        """Letters followed by the padding symbol."""
        return (*self.letters, self.padding)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._order

    def rank(self, symbol: str) -> int:
        """Position of a symbol in enumeration order.

        Raises:
            UnknownSymbolError: If the symbol is not a letter or the padding
        """
        try:
            return self._order[symbol]
        except KeyError:
            raise UnknownSymbolError(symbol, list(self.letters)) from None

    def label_key(self, label: PaddedTuple) -> tuple[int, ...]:
        return tuple(self._order[s] for s in label)

    def check_word(self, word: Sequence[str]) -> None:
        """Reject words with padding or unknown letters.

        Raises:
            UnknownSymbolError: On the first offending token
        """
        for symbol in word:
            if symbol == self.padding or symbol not in self._order:
                raise UnknownSymbolError(symbol, list(self.letters))

    def labels(self, tapes: int) -> list[PaddedTuple]:
        """All k-tuples over letters and padding except the all-padding tuple, sorted."""
        if tapes == 1:
            return [(letter,) for letter in self.letters]
        return [
            label
            for label in itertools.product(self.symbols, repeat=tapes)
            if not is_all_padding(label, self.padding)
        ]

    def union(self, other: Alphabet) -> Alphabet:
        """Letters of self followed by new letters of other."""
        extra = tuple(letter for letter in other.letters if letter not in self._order)
        return Alphabet((*self.letters, *extra), self.padding)


def is_all_padding(label: PaddedTuple, padding: str = PADDING) -> bool:
    return all(s == padding for s in label)


@dataclass(frozen=True)
class Convolution:
    """A tuple of words read synchronously, shorter words padded on the right."""

    words: tuple[Word, ...]

    @classmethod
    def of(cls, *words: Sequence[str]) -> Convolution:
        return cls(tuple(tuple(w) for w in words))

    @property
    def tapes(self) -> int:
        return len(self.words)

    def __len__(self) -> int:
        return max((len(w) for w in self.words), default=0)

    def padded(self, padding: str = PADDING) -> list[PaddedTuple]:
        """The padded label sequence of length max |w_i|."""
        length = len(self)
        return [
            tuple(w[j] if j < len(w) else padding for w in self.words) for j in range(length)
        ]

    def iter_padded(self, padding: str = PADDING) -> Iterator[PaddedTuple]:
        yield from self.padded(padding)

    @classmethod
    def from_padded(
        cls, labels: Sequence[PaddedTuple], tapes: int, padding: str = PADDING
    ) -> Convolution:
        """Strip trailing padding per tape.

        Raises:
            TapeCountError: If a label has the wrong arity
        """
        words: list[list[str]] = [[] for _ in range(tapes)]
        for label in labels:
            if len(label) != tapes:
                raise TapeCountError(tapes, len(label))
            for i, symbol in enumerate(label):
                if symbol != padding:
                    words[i].append(symbol)
        return cls(tuple(tuple(w) for w in words))

    def render(self, sep: str = "") -> str:
        return "(" + ", ".join(sep.join(w) or "ε" for w in self.words) + ")"
