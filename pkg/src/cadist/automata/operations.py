"""Regular-relation operations on synchronous automata.

Product, cylindrification and projection are enough to build the multiplier
for any word from the multipliers of its letters; enumeration realises the
finite samples L^{<=n} that every verification and profile runs on.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Iterator, Mapping, Sequence

from cadist.automata.alphabet import (
    Alphabet,
    Convolution,
    PaddedTuple,
    Word,
    is_all_padding,
)
from cadist.automata.automaton import SyncAutomaton, explore
from cadist.exceptions import (
    AlphabetMismatchError,
    AutomatonError,
    InvalidPositionsError,
    TapeCountError,
)

logger = logging.getLogger(__name__)


def _same_shape(a: SyncAutomaton, b: SyncAutomaton) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(list(a.alphabet.letters), list(b.alphabet.letters))
    if a.tapes != b.tapes:
        raise TapeCountError(a.tapes, b.tapes)


def _check_positions(positions: Sequence[int], total_tapes: int) -> None:
    ok = all(0 <= p < total_tapes for p in positions) and all(
        x < y for x, y in itertools.pairwise(positions)
    )
    if not ok or not positions:
        raise InvalidPositionsError(list(positions), total_tapes)


def empty_automaton(alphabet: Alphabet, tapes: int) -> SyncAutomaton:
    return SyncAutomaton(tapes, alphabet, 1, 0, (), {})


def universal_automaton(alphabet: Alphabet, tapes: int) -> SyncAutomaton:
    """Accepts every convolution of k words over the letters."""
    pad = alphabet.padding

    def follow(mask: object, label: PaddedTuple) -> list[int]:
        assert isinstance(mask, int)
        if any(mask >> i & 1 and s != pad for i, s in enumerate(label)):
            return []
        return [mask | sum(1 << i for i, s in enumerate(label) if s == pad)]

    return explore(alphabet, tapes, 0, follow, lambda _: True)


def product(a: SyncAutomaton, b: SyncAutomaton) -> SyncAutomaton:
    """Intersection of two relations via the product construction.

    Raises:
        AlphabetMismatchError: If alphabets differ
        TapeCountError: If tape counts differ
    """
    _same_shape(a, b)

    def follow(state: object, label: PaddedTuple) -> list[tuple[int, int]]:
        p, q = state  # type: ignore[misc]
        return [
            (x, y) for x in a.out(p).get(label, ()) for y in b.out(q).get(label, ())
        ]

    labels_used = sorted(
        {label for _, label, _ in a.edges()} & {label for _, label, _ in b.edges()},
        key=a.alphabet.label_key,
    )
    result = explore(
        a.alphabet,
        a.tapes,
        (a.initial, b.initial),
        follow,
        lambda s: s[0] in a.accepting and s[1] in b.accepting,  # type: ignore[index]
        labels=labels_used,
    )
    logger.debug("product %d x %d -> %d states", a.num_states, b.num_states, result.num_states)
    return result


_TAIL = -1


def cylindrify(a: SyncAutomaton, total_tapes: int, positions: Sequence[int]) -> SyncAutomaton:
    """Place a on the given tapes of a wider automaton; other tapes are free.

    Free tapes may run past the words on the original tapes, so accepting
    states of ``a`` continue into a tail that reads padding on the original
    positions. A per-tape padded mask on the free tapes keeps padding closed.

    Raises:
        InvalidPositionsError: If positions are not strictly increasing in range
    """
    if len(positions) != a.tapes:
        raise InvalidPositionsError(list(positions), total_tapes)
    _check_positions(positions, total_tapes)
    alphabet = a.alphabet
    pad = alphabet.padding
    free = [i for i in range(total_tapes) if i not in set(positions)]
    if not free:
        return a

    def follow(state: object, label: PaddedTuple) -> list[tuple[int, int]]:
        q, mask = state  # type: ignore[misc]
        new_mask = mask
        for bit, tape in enumerate(free):
            if label[tape] == pad:
                new_mask |= 1 << bit
            elif mask >> bit & 1:
                return []
        inner = tuple(label[p] for p in positions)
        if is_all_padding(inner, pad):
            if q == _TAIL or q in a.accepting:
                return [(_TAIL, new_mask)]
            return []
        if q == _TAIL:
            return []
        return [(t, new_mask) for t in a.out(q).get(inner, ())]

    return explore(
        alphabet,
        total_tapes,
        (a.initial, 0),
        follow,
        lambda s: s[0] == _TAIL or s[0] in a.accepting,  # type: ignore[index]
    )


def project(a: SyncAutomaton, positions: Sequence[int]) -> SyncAutomaton:
    """Existential projection onto the given tapes.

    Steps where every kept tape reads padding can only trail an accepted run;
    states from which such steps reach acceptance become accepting and those
    steps are dropped.

    Raises:
        InvalidPositionsError: If positions are not strictly increasing in range
    """
    _check_positions(positions, a.tapes)
    pad = a.alphabet.padding
    if list(positions) == list(range(a.tapes)):
        return a

    silent: dict[int, set[int]] = {}
    delta: dict[int, dict[PaddedTuple, set[int]]] = {}
    for q, label, t in a.edges():
        kept = tuple(label[p] for p in positions)
        if is_all_padding(kept, pad):
            silent.setdefault(q, set()).add(t)
        else:
            delta.setdefault(q, {}).setdefault(kept, set()).add(t)

    accepting = set(a.accepting)
    changed = True
    while changed:
        changed = False
        for q, targets in silent.items():
            if q not in accepting and targets & accepting:
                accepting.add(q)
                changed = True

    return SyncAutomaton(len(positions), a.alphabet, a.num_states, a.initial, accepting, delta)


def permute_tapes(a: SyncAutomaton, order: Sequence[int]) -> SyncAutomaton:
    """Tape i of the result is tape order[i] of a."""
    if sorted(order) != list(range(a.tapes)):
        raise InvalidPositionsError(list(order), a.tapes)
    delta: dict[int, dict[PaddedTuple, tuple[int, ...]]] = {}
    for q, row in ((q, a.out(q)) for q in a.states):
        for label, targets in row.items():
            delta.setdefault(q, {})[tuple(label[i] for i in order)] = targets
    return SyncAutomaton(a.tapes, a.alphabet, a.num_states, a.initial, a.accepting, delta)


def swap_tapes(a: SyncAutomaton) -> SyncAutomaton:
    """Reverse a two-tape relation."""
    return permute_tapes(a, (1, 0))


def diagonal(language: SyncAutomaton) -> SyncAutomaton:
    """The equality relation {(u, u) : u in L}."""
    if language.tapes != 1:
        raise TapeCountError(1, language.tapes)
    delta = {
        q: {(label[0], label[0]): targets for label, targets in language.out(q).items()}
        for q in language.states
    }
    return SyncAutomaton(
        2, language.alphabet, language.num_states, language.initial, language.accepting, delta
    )


def group_tapes(
    a: SyncAutomaton,
    groups: Sequence[Sequence[int]],
    alphabet: Alphabet,
    encode: Callable[[PaddedTuple], str],
) -> SyncAutomaton:
    """Merge groups of tapes into single tapes over track letters.

    ``encode`` maps a tuple of symbols on one group's tapes to a letter of the
    target alphabet; the all-padding tuple maps to the target padding.
    """
    flat = [t for g in groups for t in g]
    if sorted(flat) != list(range(a.tapes)):
        raise InvalidPositionsError(flat, a.tapes)
    pad = a.alphabet.padding
    delta: dict[int, dict[PaddedTuple, tuple[int, ...]]] = {}
    for q in a.states:
        for label, targets in a.out(q).items():
            new_label = []
            for g in groups:
                part = tuple(label[t] for t in g)
                new_label.append(alphabet.padding if is_all_padding(part, pad) else encode(part))
            delta.setdefault(q, {})[tuple(new_label)] = targets
    return SyncAutomaton(len(groups), alphabet, a.num_states, a.initial, a.accepting, delta)


def block_substitute(
    a: SyncAutomaton, rho: Mapping[str, Word], alphabet: Alphabet
) -> SyncAutomaton:
    """Replace every letter by a block of equal length r over a new alphabet.

    Padding becomes r paddings, so synchronicity and padding closure survive.

    Raises:
        AutomatonError: If the blocks are empty or of different lengths
    """
    lengths = {len(rho[letter]) for letter in a.alphabet.letters if letter in rho}
    if len(lengths) != 1 or 0 in lengths:
        raise AutomatonError(
            f"Block substitution needs equal non-zero block lengths, got {lengths}"
        )
    (r,) = lengths
    pad = a.alphabet.padding

    def block(label: PaddedTuple) -> list[PaddedTuple]:
        return [
            tuple(alphabet.padding if s == pad else rho[s][j] for s in label) for j in range(r)
        ]

    def follow(state: object, label: PaddedTuple) -> list[object]:
        if state[0] == "q":  # type: ignore[index]
            _, q = state  # type: ignore[misc]
            out: list[object] = []
            for old, targets in a.out(q).items():
                chain = block(old)
                if chain[0] != label:
                    continue
                if r == 1:
                    out.extend(("q", t) for t in targets)
                else:
                    out.append(("b", q, old, 1))
            return out
        _, q, old, j = state  # type: ignore[misc]
        chain = block(old)
        if chain[j] != label:
            return []
        if j + 1 == r:
            return [("q", t) for t in a.out(q)[old]]
        return [("b", q, old, j + 1)]

    return explore(
        alphabet,
        a.tapes,
        ("q", a.initial),
        follow,
        lambda s: s[0] == "q" and s[1] in a.accepting,  # type: ignore[index]
    )


def compose_word_multiplier(
    multipliers: Mapping[str, SyncAutomaton],
    w: Sequence[str],
    language: SyncAutomaton | None = None,
) -> SyncAutomaton:
    """Multiplier for a word from the multipliers of its letters.

    Each letter's automaton is cylindrified to |w|+1 tapes on the adjacent
    pair (i-1, i), the results are intersected, and the first and last tapes
    are kept. The empty word yields the diagonal of L, where L is the first
    tape of any multiplier unless ``language`` is given.

    Raises:
        AutomatonError: If a letter has no multiplier or multipliers is empty
    """
    for letter in w:
        if letter not in multipliers:
            raise AutomatonError(
                f"No multiplier for {letter!r}", {"letter": letter}
            )
    if not w:
        if language is None:
            if not multipliers:
                raise AutomatonError("No multipliers to read the language from")
            language = project(next(iter(multipliers.values())), [0])
        return diagonal(language)
    if len(w) == 1:
        return multipliers[w[0]]

    k = len(w) + 1
    acc = cylindrify(multipliers[w[0]], k, [0, 1])
    for i, letter in enumerate(w[1:], start=2):
        acc = product(acc, cylindrify(multipliers[letter], k, [i - 1, i]))
    result = project(acc, [0, k - 1])
    logger.debug("composed multiplier for %s: %d states", "".join(w), result.num_states)
    return result


def enumerate_convolutions(a: SyncAutomaton, max_len: int) -> Iterator[Convolution]:
    """Every accepted convolution of padded length <= max_len, once, length-lex.

    Labels are ordered by the alphabet's declared symbol order. Subset states
    keep each label word unique for nondeterministic automata; exact-distance
    sets prune branches that cannot reach acceptance in the remaining steps.
    """
    if max_len < 0:
        return
    # reach[r]: states with an accepting run of exactly r more steps
    reach: list[frozenset[int]] = [frozenset(a.accepting)]
    for _ in range(max_len):
        prev = reach[-1]
        reach.append(
            frozenset(
                q
                for q in a.states
                if any(t in prev for ts in a.out(q).values() for t in ts)
            )
        )

    label_order = sorted(
        {label for _, label, _ in a.edges()}, key=a.alphabet.label_key
    )
    pad = a.alphabet.padding

    for length in range(max_len + 1):
        start = frozenset({a.initial})
        if not start & reach[length]:
            continue
        stack: list[tuple[frozenset[int], list[PaddedTuple]]] = [(start, [])]
        # depth-first in label order; reversed pushes keep output lexicographic
        while stack:
            current, path = stack.pop()
            remaining = length - len(path)
            if remaining == 0:
                yield Convolution.from_padded(path, a.tapes, pad)
                continue
            children = []
            for label in label_order:
                nxt = a.step(current, label)
                if nxt & reach[remaining - 1]:
                    children.append((nxt, [*path, label]))
            stack.extend(reversed(children))


def enumerate_words(language: SyncAutomaton, max_len: int) -> Iterator[Word]:
    """Words of a one-tape language, length-lex."""
    if language.tapes != 1:
        raise TapeCountError(1, language.tapes)
    for conv in enumerate_convolutions(language, max_len):
        yield conv.words[0]


def state_bound_constants(
    multipliers: Mapping[str, SyncAutomaton], identity_word: Sequence[str]
) -> tuple[int, int]:
    """(m, e): largest multiplier state count rounded up to even, and |u_0|.

    Raises:
        AutomatonError: If multipliers is empty
    """
    if not multipliers:
        raise AutomatonError("state_bound_constants needs at least one multiplier")
    m = max(a.num_states for a in multipliers.values())
    m = max(2, m + (m % 2))
    return m, len(identity_word)
