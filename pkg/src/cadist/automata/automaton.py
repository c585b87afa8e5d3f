"""Synchronous multi-tape finite automata."""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence

from cadist.automata.alphabet import Alphabet, Convolution, PaddedTuple, is_all_padding
from cadist.exceptions import (
    AutomatonError,
    NoCompletionError,
    TapeCountError,
    UnknownSymbolError,
)

logger = logging.getLogger(__name__)

Transitions = dict[int, dict[PaddedTuple, tuple[int, ...]]]


class SyncAutomaton:
    """A possibly nondeterministic automaton over k-tuples of padded letters.

    Instances are immutable. Unless ``trim=False`` the constructor keeps only
    accessible and co-accessible states and renumbers them in breadth-first
    order from the initial state, labels taken in alphabet order. Two
    automata built from the same graph therefore compare equal.
    """

    __slots__ = ("tapes", "alphabet", "num_states", "initial", "accepting", "_delta", "_hash")

    def __init__(
        self,
        tapes: int,
        alphabet: Alphabet,
        num_states: int,
        initial: int,
        accepting: Iterable[int],
        transitions: Mapping[int, Mapping[PaddedTuple, Iterable[int]]],
        *,
        trim: bool = True,
    ) -> None:
        if tapes < 1:
            raise AutomatonError(f"Tape count must be positive, got {tapes}")
        if not 0 <= initial < num_states:
            raise AutomatonError(f"Initial state {initial} not in 0..{num_states - 1}")
        accept = frozenset(accepting)
        for q in accept:
            if not 0 <= q < num_states:
                raise AutomatonError(f"Accepting state {q} not in 0..{num_states - 1}")

        delta: Transitions = {}
        for q, row in transitions.items():
            if not 0 <= q < num_states:
                raise AutomatonError(f"Transition source {q} not in 0..{num_states - 1}")
            for label, targets in row.items():
                _check_label(alphabet, tapes, label)
                ts = tuple(sorted(set(targets)))
                for t in ts:
                    if not 0 <= t < num_states:
                        raise AutomatonError(f"Transition target {t} not in 0..{num_states - 1}")
                if ts:
                    delta.setdefault(q, {})[tuple(label)] = ts

        if trim:
            num_states, initial, accept, delta = _trim(alphabet, num_states, initial, accept, delta)

        self.tapes = tapes
        self.alphabet = alphabet
        self.num_states = num_states
        self.initial = initial
        self.accepting = accept
        self._delta = {
            q: dict(sorted(row.items(), key=lambda kv: alphabet.label_key(kv[0])))
            for q, row in sorted(delta.items())
        }
        self._hash: int | None = None

    def __setattr__(self, name: str, value: object) -> None:
        if hasattr(self, "_hash") and name != "_hash":
            raise AttributeError(f"SyncAutomaton is immutable; cannot set {name}")
        object.__setattr__(self, name, value)

    # Structure

    @property
    def states(self) -> range:
        return range(self.num_states)

    def out(self, state: int) -> dict[PaddedTuple, tuple[int, ...]]:
        """Outgoing transitions of a state, labels in alphabet order."""
        return self._delta.get(state, {})

    def edges(self) -> Iterable[tuple[int, PaddedTuple, int]]:
        for q, row in self._delta.items():
            for label, targets in row.items():
                for t in targets:
                    yield q, label, t

    @property
    def transition_count(self) -> int:
        return sum(1 for _ in self.edges())

    def is_deterministic(self) -> bool:
        return all(len(ts) == 1 for row in self._delta.values() for ts in row.values())

    def is_empty(self) -> bool:
        return not self.accepting

    def step(self, current: Iterable[int], label: PaddedTuple) -> frozenset[int]:
        return frozenset(t for q in current for t in self.out(q).get(label, ()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SyncAutomaton):
            return NotImplemented
        return (
            self.tapes == other.tapes
            and self.alphabet == other.alphabet
            and self.num_states == other.num_states
            and self.initial == other.initial
            and self.accepting == other.accepting
            and self._delta == other._delta
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (
                    self.tapes,
                    self.alphabet,
                    self.num_states,
                    self.initial,
                    self.accepting,
                    tuple(self.edges()),
                )
            )
        return self._hash

    def __repr__(self) -> str:
        return (
            f"SyncAutomaton(tapes={self.tapes}, states={self.num_states}, "
            f"accepting={len(self.accepting)}, transitions={self.transition_count})"
        )

    # Queries

    def accepts(self, conv: Convolution) -> bool:
        """True iff the padded convolution labels an accepting run.

        Raises:
            TapeCountError: If conv has the wrong number of tapes
            UnknownSymbolError: If a word uses a symbol outside the letters
        """
        current = frozenset({self.initial})
        for label in self._padded(conv):
            current = self.step(current, label)
            if not current:
                return False
        return bool(current & self.accepting)

    def accepting_run(self, conv: Convolution) -> list[int] | None:
        """A deterministic accepting run, or None if conv is rejected.

        Forward state sets are computed first; the run is then read backwards,
        always choosing the smallest admissible state.
        """
        labels = self._padded(conv)
        layers = [frozenset({self.initial})]
        for label in labels:
            layers.append(self.step(layers[-1], label))
        final = layers[-1] & self.accepting
        if not final:
            return None
        run = [min(final)]
        for j in range(len(labels) - 1, -1, -1):
            target = run[-1]
            run.append(min(q for q in layers[j] if target in self.out(q).get(labels[j], ())))
        run.reverse()
        return run

    def shortest_completion(self, state: int) -> list[PaddedTuple]:
        """A shortest label word from state to an accepting state.

        Ties are broken by label order, so the result is deterministic.

        Raises:
            NoCompletionError: If no accepting state is reachable
        """
        if not 0 <= state < self.num_states:
            raise AutomatonError(f"State {state} not in 0..{self.num_states - 1}")
        parent: dict[int, tuple[int, PaddedTuple] | None] = {state: None}
        queue = deque([state])
        while queue:
            q = queue.popleft()
            if q in self.accepting:
                path: list[PaddedTuple] = []
                while (link := parent[q]) is not None:
                    q, label = link
                    path.append(label)
                path.reverse()
                return path
            for label, targets in self.out(q).items():
                for t in targets:
                    if t not in parent:
                        parent[t] = (q, label)
                        queue.append(t)
        raise NoCompletionError(state)

    def padding_closed(self) -> bool:
        """True iff no accepted run reads a letter on a tape after padding on it."""
        pad = self.alphabet.padding
        full = (1 << self.tapes) - 1
        start = (self.initial, 0, False)
        seen = {start}
        queue = deque([start])
        while queue:
            q, mask, bad = queue.popleft()
            if bad and q in self.accepting:
                return False
            for label, targets in self.out(q).items():
                step_mask = 0
                violates = bad
                for i, symbol in enumerate(label):
                    if symbol == pad:
                        step_mask |= 1 << i
                    elif mask >> i & 1:
                        violates = True
                new_mask = (mask | step_mask) & full
                for t in targets:
                    node = (t, new_mask, violates)
                    if node not in seen:
                        seen.add(node)
                        queue.append(node)
        return True

    def _padded(self, conv: Convolution) -> list[PaddedTuple]:
        if conv.tapes != self.tapes:
            raise TapeCountError(self.tapes, conv.tapes)
        for word in conv.words:
            self.alphabet.check_word(word)
        return conv.padded(self.alphabet.padding)


def _check_label(alphabet: Alphabet, tapes: int, label: Sequence[str]) -> None:
    if len(label) != tapes:
        raise TapeCountError(tapes, len(label))
    for symbol in label:
        if symbol not in alphabet:
            raise UnknownSymbolError(symbol, list(alphabet.letters))
    if tapes == 1 and label[0] == alphabet.padding:
        raise AutomatonError("One-tape automata read letters only")
    if is_all_padding(tuple(label), alphabet.padding):
        raise AutomatonError("The all-padding tuple is not a transition label")


def _trim(
    alphabet: Alphabet,
    num_states: int,
    initial: int,
    accepting: frozenset[int],
    delta: Transitions,
) -> tuple[int, int, frozenset[int], Transitions]:
    reverse: dict[int, set[int]] = {}
    for q, row in delta.items():
        for targets in row.values():
            for t in targets:
                reverse.setdefault(t, set()).add(q)

    coaccessible = set(accepting)
    queue = deque(accepting)
    while queue:
        q = queue.popleft()
        for p in reverse.get(q, ()):
            if p not in coaccessible:
                coaccessible.add(p)
                queue.append(p)

    if initial not in coaccessible:
        return 1, 0, frozenset(), {}

    order = {initial: 0}
    queue = deque([initial])
    while queue:
        q = queue.popleft()
        row = delta.get(q, {})
        for label in sorted(row, key=alphabet.label_key):
            for t in row[label]:
                if t in coaccessible and t not in order:
                    order[t] = len(order)
                    queue.append(t)

    new_delta: Transitions = {}
    for q, i in order.items():
        for label, targets in delta.get(q, {}).items():
            kept = tuple(sorted(order[t] for t in targets if t in order))
            if kept:
                new_delta.setdefault(i, {})[label] = kept
    new_accepting = frozenset(order[q] for q in accepting if q in order)
    return len(order), 0, new_accepting, new_delta


def explore(
    alphabet: Alphabet,
    tapes: int,
    initial: Hashable,
    follow: Callable[[Hashable, PaddedTuple], Iterable[Hashable]],
    final: Callable[[Hashable], bool],
    labels: Sequence[PaddedTuple] | None = None,
) -> SyncAutomaton:
    """Crawl an automaton from an initial abstract state.

    ``follow(state, label)`` yields successor abstract states (none means no
    transition); ``final(state)`` marks accepting ones. Abstract states are
    numbered in discovery order.
    """
    candidates = list(labels) if labels is not None else alphabet.labels(tapes)
    states: list[Hashable] = [initial]
    index: dict[Hashable, int] = {initial: 0}
    accepting: set[int] = set()
    delta: dict[int, dict[PaddedTuple, set[int]]] = {}

    i = 0
    while i < len(states):
        state = states[i]
        if final(state):
            accepting.add(i)
        for label in candidates:
            for nxt in follow(state, label):
                j = index.get(nxt)
                if j is None:
                    j = len(states)
                    index[nxt] = j
                    states.append(nxt)
                delta.setdefault(i, {}).setdefault(label, set()).add(j)
        i += 1

    logger.debug("Explored %d abstract states over %d tapes", len(states), tapes)
    return SyncAutomaton(tapes, alphabet, len(states), 0, accepting, delta)
