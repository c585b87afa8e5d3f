"""Concrete group models: Z^k, Heisenberg H3, BS(1,2) and the lamplighter Z2 wr Z."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from cadist.exceptions import GroupModelError, UnknownModelError
from cadist.groups.base import GeneratorSet, GroupModel, Word

ZkElement = tuple[int, ...]


class FreeAbelianModel(GroupModel[ZkElement]):
    """Z^k with generators e_i^{+-1}; word length is the l1 norm."""

    NAMES = (("t", "T"), ("x", "X"), ("y", "Y"), ("z", "Z"))

    def __init__(self, rank: int) -> None:
        if not 1 <= rank <= 3:
            raise GroupModelError(f"Unsupported rank {rank}")
        self.rank = rank
        self.name = "Z" if rank == 1 else f"Z{rank}"
        pairs = self.NAMES[:1] if rank == 1 else self.NAMES[1 : rank + 1]
        self._pairs = pairs

    def identity(self) -> ZkElement:
        return (0,) * self.rank

    def multiply(self, g: ZkElement, h: ZkElement) -> ZkElement:
        return tuple(a + b for a, b in zip(g, h, strict=True))

    def invert(self, g: ZkElement) -> ZkElement:
        return tuple(-a for a in g)

    def unit(self, i: int, sign: int = 1) -> ZkElement:
        return tuple(sign if j == i else 0 for j in range(self.rank))

    def standard_generators(self) -> GeneratorSet:
        triples = []
        for i, (pos, neg) in enumerate(self._pairs):
            triples.append((pos, self.unit(i), neg))
            triples.append((neg, self.unit(i, -1), pos))
        return GeneratorSet.from_triples(triples)

    def norm(self, g: ZkElement) -> int:
        return sum(abs(a) for a in g)

    def normal_geodesic(self, g: ZkElement) -> Word:
        word: list[str] = []
        for (pos, neg), a in zip(self._pairs, g, strict=True):
            word.extend([pos if a > 0 else neg] * abs(a))
        return tuple(word)

    def element_to_json(self, g: ZkElement) -> Any:
        return list(g)

    def element_from_json(self, data: Any) -> ZkElement:
        if not isinstance(data, list) or len(data) != self.rank:
            raise GroupModelError(f"Expected a list of {self.rank} integers, got {data!r}")
        return tuple(int(a) for a in data)


HeisenbergElement = tuple[int, int, int]


class HeisenbergModel(GroupModel[HeisenbergElement]):
    """Integer upper-unitriangular 3x3 matrices [[1,x,z],[0,1,y],[0,0,1]].

    Generated by x and y; the centre is generated by their commutator.
    No closed-form metric, distances come from breadth-first search.
    """

    name = "H3"

    def identity(self) -> HeisenbergElement:
        return (0, 0, 0)

    def multiply(self, g: HeisenbergElement, h: HeisenbergElement) -> HeisenbergElement:
        return (g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1])

    def invert(self, g: HeisenbergElement) -> HeisenbergElement:
        return (-g[0], -g[1], -g[2] + g[0] * g[1])

    def standard_generators(self) -> GeneratorSet:
        return GeneratorSet.from_triples(
            [
                ("x", (1, 0, 0), "X"),
                ("X", (-1, 0, 0), "x"),
                ("y", (0, 1, 0), "Y"),
                ("Y", (0, -1, 0), "y"),
            ]
        )

    def element_to_json(self, g: HeisenbergElement) -> Any:
        return {"x": g[0], "y": g[1], "z": g[2]}

    def element_from_json(self, data: Any) -> HeisenbergElement:
        return (int(data["x"]), int(data["y"]), int(data["z"]))


@dataclass(frozen=True, slots=True)
class AffineElement:
    """The map x -> 2^exponent * x + shift."""

    exponent: int
    shift: Fraction

    def canonical(self) -> tuple[int, int, int]:
        """(p, q, e) with shift = p / 2^q, q >= 0, and q = 0 or p odd."""
        num, den = self.shift.numerator, self.shift.denominator
        q = den.bit_length() - 1
        return num, q, self.exponent


class BaumslagSolitarModel(GroupModel[AffineElement]):
    """BS(1,2) = <a, t | t a t^-1 = a^2> as affine maps of the dyadic rationals.

    a is x -> x + 1 and t is x -> 2x. Fraction keeps the shifts exact and
    already in lowest terms, so equality is structural.
    """

    name = "BS12"

    def identity(self) -> AffineElement:
        return AffineElement(0, Fraction(0))

    def multiply(self, g: AffineElement, h: AffineElement) -> AffineElement:
        return AffineElement(g.exponent + h.exponent, g.shift + Fraction(2) ** g.exponent * h.shift)

    def invert(self, g: AffineElement) -> AffineElement:
        return AffineElement(-g.exponent, -g.shift / Fraction(2) ** g.exponent)

    def standard_generators(self) -> GeneratorSet:
        return GeneratorSet.from_triples(
            [
                ("a", AffineElement(0, Fraction(1)), "A"),
                ("A", AffineElement(0, Fraction(-1)), "a"),
                ("t", AffineElement(1, Fraction(0)), "T"),
                ("T", AffineElement(-1, Fraction(0)), "t"),
            ]
        )

    def element_to_json(self, g: AffineElement) -> Any:
        p, q, e = g.canonical()
        return {"p": p, "q": q, "e": e}

    def element_from_json(self, data: Any) -> AffineElement:
        p, q, e = int(data["p"]), int(data["q"]), int(data["e"])
        if q < 0:
            raise GroupModelError(f"q must be non-negative, got {q}")
        return AffineElement(e, Fraction(p, 2**q))


@dataclass(frozen=True, slots=True)
class LampState:
    """A finite set of lit lamps and the cursor position."""

    lamps: frozenset[int]
    cursor: int


class LamplighterModel(GroupModel[LampState]):
    """Z2 wr Z with generators t^{+-1} (move) and a (toggle, self-inverse)."""

    name = "LL2"

    def identity(self) -> LampState:
        return LampState(frozenset(), 0)

    def multiply(self, g: LampState, h: LampState) -> LampState:
        shifted = frozenset(p + g.cursor for p in h.lamps)
        return LampState(g.lamps ^ shifted, g.cursor + h.cursor)

    def invert(self, g: LampState) -> LampState:
        return LampState(frozenset(p - g.cursor for p in g.lamps), -g.cursor)

    def standard_generators(self) -> GeneratorSet:
        return GeneratorSet.from_triples(
            [
                ("t", LampState(frozenset(), 1), "T"),
                ("T", LampState(frozenset(), -1), "t"),
                ("a", LampState(frozenset({0}), 0), "a"),
            ]
        )

    @staticmethod
    def _sweeps(g: LampState) -> tuple[int, int, int, int]:
        lo = min(g.lamps | {0, g.cursor})
        hi = max(g.lamps | {0, g.cursor})
        right_first = hi + (hi - lo) + (g.cursor - lo)
        left_first = -lo + (hi - lo) + (hi - g.cursor)
        return lo, hi, right_first, left_first

    def norm(self, g: LampState) -> int:
        _, _, right_first, left_first = self._sweeps(g)
        return len(g.lamps) + min(right_first, left_first)

    def normal_geodesic(self, g: LampState) -> Word:
        lo, hi, right_first, left_first = self._sweeps(g)
        stops = [hi, lo, g.cursor] if right_first <= left_first else [lo, hi, g.cursor]
        word: list[str] = []
        pending = set(g.lamps)
        pos = 0
        if pos in pending:
            word.append("a")
            pending.discard(pos)
        for stop in stops:
            while pos != stop:
                step = 1 if stop > pos else -1
                word.append("t" if step == 1 else "T")
                pos += step
                if pos in pending:
                    word.append("a")
                    pending.discard(pos)
        return tuple(word)

    def element_to_json(self, g: LampState) -> Any:
        return {"lamps": sorted(g.lamps), "cursor": g.cursor}

    def element_from_json(self, data: Any) -> LampState:
        return LampState(frozenset(int(p) for p in data["lamps"]), int(data["cursor"]))


def dense_witness_loop(n: int) -> Word:
    """The commutator [a, t^k a t^-k] with k = 2n + 1, a loop of length 8n + 8."""
    if n < 1:
        raise GroupModelError(f"n must be at least 1, got {n}")
    k = 2 * n + 1
    conj = ("t",) * k + ("a",) + ("T",) * k
    return ("a", *conj, "a", *conj)


MODELS: dict[str, Callable[[], GroupModel[Any]]] = {
    "Z": lambda: FreeAbelianModel(1),
    "Z2": lambda: FreeAbelianModel(2),
    "H3": HeisenbergModel,
    "BS12": BaumslagSolitarModel,
    "LL2": LamplighterModel,
}


def get_model(name: str) -> GroupModel[Any]:
    """Instantiate a model by name.

    Raises:
        UnknownModelError: If the name is not registered
    """
    try:
        factory = MODELS[name]
    except KeyError:
        raise UnknownModelError(name, list(MODELS)) from None
    model: GroupModel[Any] = factory()
    return model
