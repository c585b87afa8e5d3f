"""Group models, generating sets and free-group word utilities."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Generic, TypeVar

from cadist.exceptions import GroupModelError, UnknownGeneratorError

E = TypeVar("E", bound=Hashable)

Word = tuple[str, ...]


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered generator tokens with a formal inverse and a group value each.

    Identity-valued tokens are allowed and may be their own inverse.
    """

    names: tuple[str, ...]
    inverse: tuple[int, ...]
    values: tuple[Any, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        n = len(self.names)
        if len(set(self.names)) != n:
            raise GroupModelError(f"Duplicate generator names: {list(self.names)}")
        if len(self.inverse) != n or len(self.values) != n:
            raise GroupModelError("names, inverse and values must have equal length")
        for i, j in enumerate(self.inverse):
            if not 0 <= j < n or self.inverse[j] != i:
                raise GroupModelError(
                    f"Inverse map is not an involution at {self.names[i]!r}",
                    {"generator": self.names[i]},
                )
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.names)})

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[str, Any, str]]) -> GeneratorSet:
        """Build from (name, value, inverse name) triples."""
        items = list(triples)
        index = {name: i for i, (name, _, _) in enumerate(items)}
        try:
            inverse = tuple(index[inv] for _, _, inv in items)
        except KeyError as e:
            raise GroupModelError(f"Inverse {e.args[0]!r} is not a generator") from None
        return cls(
            tuple(name for name, _, _ in items),
            inverse,
            tuple(value for _, value, _ in items),
        )

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, token: object) -> bool:
        return token in self._index

    def index(self, token: str) -> int:
        try:
            return self._index[token]
        except KeyError:
            raise UnknownGeneratorError(token, list(self.names)) from None

    def value(self, token: str) -> Any:
        return self.values[self.index(token)]

    def inverse_of(self, token: str) -> str:
        return self.names[self.inverse[self.index(token)]]

    @property
    def inverse_map(self) -> dict[str, str]:
        return {name: self.names[self.inverse[i]] for i, name in enumerate(self.names)}

    def extend(self, triples: Iterable[tuple[str, Any, str]]) -> GeneratorSet:
        """Append new generators; existing names are kept as they are."""
        existing = [
            (name, self.values[i], self.names[self.inverse[i]])
            for i, name in enumerate(self.names)
        ]
        new = [t for t in triples if t[0] not in self._index]
        return GeneratorSet.from_triples([*existing, *new])


class GroupModel(ABC, Generic[E]):
    """An exact computable group with a standard symmetric generating set."""

    name: str

    @abstractmethod
    def identity(self) -> E: ...

    @abstractmethod
    def multiply(self, g: E, h: E) -> E: ...

    @abstractmethod
    def invert(self, g: E) -> E: ...

    @abstractmethod
    def standard_generators(self) -> GeneratorSet: ...

    @abstractmethod
    def element_to_json(self, g: E) -> Any: ...

    @abstractmethod
    def element_from_json(self, data: Any) -> E: ...

    def norm(self, g: E) -> int | None:
        """Word length of g over the standard generators, when a closed form exists."""
        return None

    def normal_geodesic(self, g: E) -> Word | None:
        """A geodesic word over standard generator names, when a closed form exists."""
        return None

    def power(self, g: E, n: int) -> E:
        base = g if n >= 0 else self.invert(g)
        out = self.identity()
        for _ in range(abs(n)):
            out = self.multiply(out, base)
        return out

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


# Free-group words


def free_reduce(word: Sequence[str], inverse: Mapping[str, str]) -> Word:
    """Cancel adjacent inverse pairs; self-inverse tokens cancel with themselves."""
    stack: list[str] = []
    for token in word:
        if stack and inverse[stack[-1]] == token:
            stack.pop()
        else:
            stack.append(token)
    return tuple(stack)


def inverse_word(word: Sequence[str], inverse: Mapping[str, str]) -> Word:
    return tuple(inverse[token] for token in reversed(word))


def cyclic_conjugates(word: Sequence[str]) -> list[Word]:
    """All rotations of a word, starting with the word itself, without repeats."""
    seen: dict[Word, None] = {}
    for i in range(max(len(word), 1)):
        seen.setdefault(tuple(word[i:]) + tuple(word[:i]), None)
    return list(seen)


def cyclically_reduce(word: Sequence[str], inverse: Mapping[str, str]) -> Word:
    w = list(free_reduce(word, inverse))
    while len(w) >= 2 and inverse[w[0]] == w[-1]:
        w = w[1:-1]
    return tuple(w)


def conjugate_product(
    factors: Iterable[tuple[Sequence[str], Sequence[str]]], inverse: Mapping[str, str]
) -> Word:
    """Freely reduced product of rho * w * rho^-1 over (rho, w) pairs."""
    out: list[str] = []
    for rho, w in factors:
        out.extend(rho)
        out.extend(w)
        out.extend(inverse_word(rho, inverse))
    return free_reduce(out, inverse)


def tokenize(text: str, names: Sequence[str]) -> Word:
    """Split text into generator tokens, longest match first.

    Whitespace separates tokens and is otherwise ignored.

    Raises:
        UnknownGeneratorError: On text that matches no generator
    """
    by_length = sorted(names, key=len, reverse=True)
    tokens: list[str] = []
    for chunk in text.split():
        i = 0
        while i < len(chunk):
            for name in by_length:
                if chunk.startswith(name, i):
                    tokens.append(name)
                    i += len(name)
                    break
            else:
                raise UnknownGeneratorError(chunk[i:], list(names))
    return tuple(tokens)


def render_word(word: Sequence[str]) -> str:
    """Concatenate single-character tokens; space-join otherwise."""
    if all(len(token) == 1 for token in word):
        return "".join(word)
    return " ".join(word)
