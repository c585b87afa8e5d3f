"""Word metric of a group model over an arbitrary finite symmetric generating set."""

from __future__ import annotations

import logging
from collections.abc import Hashable, Iterable, Sequence
from typing import Any

from cadist.exceptions import (
    BallBoundExceededError,
    DistanceCapExceededError,
    GroupModelError,
)
from cadist.groups.base import GeneratorSet, GroupModel, Word, render_word, tokenize

logger = logging.getLogger(__name__)

DEFAULT_BALL_BOUND = 2_000_000


class CayleyGraph:
    """Cayley graph of a model with respect to a generating set.

    Identity-valued generators are loops and never shorten a path, so the
    metric only moves along the first generator of each distinct non-identity
    value. When those values are exactly the model's standard generators and
    the model has a closed-form norm, distances and geodesics use it;
    otherwise they come from breadth-first search.
    """

    def __init__(
        self,
        model: GroupModel[Any],
        generators: GeneratorSet | None = None,
        ball_bound: int = DEFAULT_BALL_BOUND,
    ) -> None:
        self.model = model
        self.generators = generators or model.standard_generators()
        self.ball_bound = ball_bound

        identity = model.identity()
        for i, name in enumerate(self.generators.names):
            value = self.generators.values[i]
            inv = self.generators.values[self.generators.inverse[i]]
            if model.multiply(value, inv) != identity:
                raise GroupModelError(
                    f"Generator {name!r} and its formal inverse do not multiply to 1",
                    {"generator": name},
                )

        moves: dict[Hashable, str] = {}
        for name, value in zip(self.generators.names, self.generators.values, strict=True):
            if value != identity and value not in moves:
                moves[value] = name
        self._moves: list[tuple[str, Any]] = [(name, value) for value, name in moves.items()]

        standard = model.standard_generators()
        self.closed_form = model.norm(identity) is not None and set(moves) == set(
            standard.values
        )
        self._standard_to_token = {
            standard.names[i]: moves[standard.values[i]]
            for i in range(len(standard))
            if standard.values[i] in moves
        }

    @property
    def moves(self) -> list[tuple[str, Any]]:
        return list(self._moves)

    # Words

    def parse(self, text: str) -> Word:
        return tokenize(text, self.generators.names)

    def render(self, word: Sequence[str]) -> str:
        return render_word(word)

    def evaluate(self, word: Iterable[str], start: Any = None) -> Any:
        """pi(word), optionally right-multiplied onto a start element.

        Raises:
            UnknownGeneratorError: On a token outside the generating set
        """
        g = self.model.identity() if start is None else start
        for token in word:
            g = self.model.multiply(g, self.generators.value(token))
        return g

    def is_identity(self, word: Iterable[str]) -> bool:
        return bool(self.evaluate(word) == self.model.identity())

    # Metric

    def norm(self, g: Any, radius_cap: int) -> int:
        """d(1, g).

        Raises:
            DistanceCapExceededError: If the distance is larger than radius_cap
        """
        if self.closed_form:
            d = self.model.norm(g)
            assert d is not None
            if d > radius_cap:
                raise DistanceCapExceededError(radius_cap)
            return d
        return self._bidirectional(g, radius_cap)

    def distance(self, g: Any, h: Any, radius_cap: int) -> int:
        """d_S(g, h) = |g^-1 h|_S.

        Raises:
            DistanceCapExceededError: If the distance is larger than radius_cap
        """
        if radius_cap < 0:
            raise GroupModelError(f"radius_cap must be non-negative, got {radius_cap}")
        return self.norm(self.model.multiply(self.model.invert(g), h), radius_cap)

    def geodesic(self, g: Any, h: Any, radius_cap: int) -> Word:
        """A shortest word u with g * pi(u) = h.

        Closed-form models build their canonical geodesic; otherwise breadth
        first search with generator-order tie-breaking.

        Raises:
            DistanceCapExceededError: If the distance is larger than radius_cap
        """
        x = self.model.multiply(self.model.invert(g), h)
        if self.closed_form:
            d = self.model.norm(x)
            assert d is not None
            if d > radius_cap:
                raise DistanceCapExceededError(radius_cap)
            word = self.model.normal_geodesic(x)
            assert word is not None
            return tuple(self._standard_to_token[name] for name in word)
        return self._bfs_path(x, radius_cap)

    def ball(self, radius: int) -> set[Any]:
        """All elements within distance radius of the identity.

        Raises:
            BallBoundExceededError: If the ball outgrows the safety bound
        """
        seen = {self.model.identity()}
        frontier = [self.model.identity()]
        for _ in range(radius):
            nxt = []
            for g in frontier:
                for _, value in self._moves:
                    h = self.model.multiply(g, value)
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
                        if len(seen) > self.ball_bound:
                            raise BallBoundExceededError(self.ball_bound, radius)
            frontier = nxt
            if not frontier:
                break
        logger.debug("ball(%d) of %s has %d elements", radius, self.model.name, len(seen))
        return seen

    def sphere_sizes(self, radius: int) -> list[int]:
        """Number of elements at each distance 0..radius."""
        seen = {self.model.identity()}
        frontier = [self.model.identity()]
        sizes = [1]
        for _ in range(radius):
            nxt = []
            for g in frontier:
                for _, value in self._moves:
                    h = self.model.multiply(g, value)
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            if len(seen) > self.ball_bound:
                raise BallBoundExceededError(self.ball_bound, radius)
            sizes.append(len(nxt))
            frontier = nxt
        return sizes

    def _bidirectional(self, target: Any, radius_cap: int) -> int:
        identity = self.model.identity()
        if target == identity:
            return 0
        # forward side multiplies by s, backward by s^-1; the move set is symmetric
        dist_f = {identity: 0}
        dist_b = {target: 0}
        front_f = [identity]
        front_b = [target]
        depth_f = depth_b = 0
        while front_f and front_b and depth_f + depth_b < radius_cap:
            if len(front_f) <= len(front_b):
                front_f, depth_f = self._expand(front_f, dist_f, depth_f)
                hits = [dist_b[g] for g in front_f if g in dist_b]
                if hits:
                    return depth_f + min(hits)
            else:
                front_b, depth_b = self._expand(front_b, dist_b, depth_b)
                hits = [dist_f[g] for g in front_b if g in dist_f]
                if hits:
                    return depth_b + min(hits)
            if len(dist_f) + len(dist_b) > self.ball_bound:
                raise BallBoundExceededError(self.ball_bound, depth_f + depth_b)
        raise DistanceCapExceededError(radius_cap)

    def _expand(
        self, frontier: list[Any], dist: dict[Any, int], depth: int
    ) -> tuple[list[Any], int]:
        nxt = []
        for g in frontier:
            for _, value in self._moves:
                h = self.model.multiply(g, value)
                if h not in dist:
                    dist[h] = depth + 1
                    nxt.append(h)
        return nxt, depth + 1

    def _bfs_path(self, target: Any, radius_cap: int) -> Word:
        identity = self.model.identity()
        parent: dict[Any, tuple[Any, str] | None] = {identity: None}
        frontier = [identity]
        depth = 0
        while target not in parent:
            if depth >= radius_cap or not frontier:
                raise DistanceCapExceededError(radius_cap)
            nxt = []
            for g in frontier:
                for name, value in self._moves:
                    h = self.model.multiply(g, value)
                    if h not in parent:
                        parent[h] = (g, name)
                        nxt.append(h)
            if len(parent) > self.ball_bound:
                raise BallBoundExceededError(self.ball_bound, depth + 1)
            frontier = nxt
            depth += 1
        word: list[str] = []
        node = target
        while (link := parent[node]) is not None:
            node, name = link
            word.append(name)
        word.reverse()
        return tuple(word)
