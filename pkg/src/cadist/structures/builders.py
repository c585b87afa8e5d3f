"""Hand-built languages and multipliers for the shipped structures."""

from __future__ import annotations

import dataclasses
import logging
from collections.abc import Hashable, Iterable, Mapping

from cadist.automata import (
    PADDING,
    Alphabet,
    PaddedTuple,
    SyncAutomaton,
    cylindrify,
    diagonal,
    explore,
    group_tapes,
    product,
    swap_tapes,
)
from cadist.groups import FreeAbelianModel, LamplighterModel
from cadist.structures.codecs import (
    CURSOR_OFF,
    CURSOR_ON,
    LAMP_OFF,
    LAMP_ON,
    TRACK_PAD,
    LamplighterCodec,
    UnaryCodec,
    ZigzagCodec,
    ZigzagPairCodec,
    track_letters,
)
from cadist.structures.structure import CayleyAutomaticStructure
from cadist.structures.transforms import merge_alphabet

logger = logging.getLogger(__name__)

BINARY = Alphabet.of(["0", "1"])

Table = Mapping[tuple[str, PaddedTuple], str]


def table_automaton(
    alphabet: Alphabet,
    tapes: int,
    initial: str,
    table: Table,
    accepting: Iterable[str],
) -> SyncAutomaton:
    """Deterministic automaton from a {(state, label): state} table with named states."""
    final = set(accepting)

    def follow(state: Hashable, label: PaddedTuple) -> list[Hashable]:
        nxt = table.get((str(state), label))
        return [] if nxt is None else [nxt]

    return explore(alphabet, tapes, initial, follow, lambda s: s in final)


# Z, unary


def unary_language() -> SyncAutomaton:
    """t* + T*."""
    table = {
        ("start", ("t",)): "up",
        ("start", ("T",)): "down",
        ("up", ("t",)): "up",
        ("down", ("T",)): "down",
    }
    return table_automaton(Alphabet.of(["t", "T"]), 1, "start", table, {"start", "up", "down"})


def unary_successor() -> SyncAutomaton:
    """u -> u t on t* + T*."""
    p = PADDING
    table = {
        ("start", (p, "t")): "done",
        ("start", ("t", "t")): "up",
        ("start", ("T", "T")): "down",
        ("start", ("T", p)): "done",
        ("up", ("t", "t")): "up",
        ("up", (p, "t")): "done",
        ("down", ("T", "T")): "down",
        ("down", ("T", p)): "done",
    }
    return table_automaton(Alphabet.of(["t", "T"]), 2, "start", table, {"done"})


def z_unary() -> CayleyAutomaticStructure:
    model = FreeAbelianModel(1)
    succ = unary_successor()
    return CayleyAutomaticStructure(
        name="Z-unary",
        model=model,
        generators=model.standard_generators(),
        language=unary_language(),
        codec=UnaryCodec(),
        multipliers={"t": succ, "T": swap_tapes(succ)},
        description="Z with normal forms t^k, T^k; automatic",
    )


# Z, zigzag binary


def zigzag_language() -> SyncAutomaton:
    """Empty word or a binary word ending in 1."""
    table = {
        ("empty", ("0",)): "zero",
        ("empty", ("1",)): "one",
        ("zero", ("0",)): "zero",
        ("zero", ("1",)): "one",
        ("one", ("0",)): "zero",
        ("one", ("1",)): "one",
    }
    return table_automaton(BINARY, 1, "empty", table, {"empty", "one"})


def binary_increment() -> SyncAutomaton:
    """Canonical LSB-first binary words (u, u + 1) for u >= 1."""
    p = PADDING
    table = {
        ("carry", ("1", "0")): "carry",
        ("carry", ("0", "1")): "copy0",
        ("carry", (p, "1")): "done",
        ("copy0", ("0", "0")): "copy0",
        ("copy0", ("1", "1")): "copy1",
        ("copy1", ("0", "0")): "copy0",
        ("copy1", ("1", "1")): "copy1",
    }
    return table_automaton(BINARY, 2, "carry", table, {"copy1", "done"})


def zigzag_successor() -> SyncAutomaton:
    """u -> psi^-1(psi(u) + 1) under the zigzag encoding.

    Even codes move up by two (increment above the low bit), the code 1
    goes to the empty word, odd codes >= 3 move down by two (decrement
    above the low bit).
    """
    p = PADDING
    table = {
        ("start", (p, "0")): "from_zero",
        ("start", ("0", "0")): "carry_first",
        ("start", ("1", "1")): "borrow",
        ("start", ("1", p)): "done",
        ("from_zero", (p, "1")): "done",
        ("carry_first", ("1", "0")): "carry",
        ("carry_first", ("0", "1")): "copy0",
        ("carry", ("1", "0")): "carry",
        ("carry", ("0", "1")): "copy0",
        ("carry", (p, "1")): "done",
        ("borrow", ("0", "1")): "borrow",
        ("borrow", ("1", "0")): "copy0",
        ("borrow", ("1", p)): "done",
        ("copy0", ("0", "0")): "copy0",
        ("copy0", ("1", "1")): "copy1",
        ("copy1", ("0", "0")): "copy0",
        ("copy1", ("1", "1")): "copy1",
    }
    return table_automaton(BINARY, 2, "start", table, {"copy1", "done"})


def z_zigzag_raw() -> CayleyAutomaticStructure:
    """Zigzag structure before merging: symbols 0, 1 are not generators."""
    model = FreeAbelianModel(1)
    succ = zigzag_successor()
    return CayleyAutomaticStructure(
        name="Z-zigzag-binary-raw",
        model=model,
        generators=model.standard_generators(),
        language=zigzag_language(),
        codec=ZigzagCodec(),
        multipliers={"t": succ, "T": swap_tapes(succ)},
        description="Z as zigzag codes in LSB-first binary, symbols unmerged",
    )


def z_zigzag() -> CayleyAutomaticStructure:
    raw = z_zigzag_raw()
    s = merge_alphabet(raw, {"0": (0,), "1": (1,)}, name="Z-zigzag-binary")
    return _described(s, "Z as zigzag codes in LSB-first binary; 0 -> 1, 1 -> t")


# Z^2, componentwise zigzag binary


def _track(part: PaddedTuple) -> str:
    return "".join(TRACK_PAD if s == PADDING else s for s in part)


def z2_zigzag_raw() -> CayleyAutomaticStructure:
    """Two zigzag words in parallel tracks; x acts on the first, y on the second."""
    model = FreeAbelianModel(2)
    tracks = Alphabet.of(track_letters(["0", "1"]))
    lang = zigzag_language()
    succ = zigzag_successor()
    pred = swap_tapes(succ)
    same = diagonal(lang)

    pair_lang = product(cylindrify(lang, 2, [0]), cylindrify(lang, 2, [1]))
    language = group_tapes(pair_lang, [[0, 1]], tracks, _track)

    def on_tracks(first: SyncAutomaton, second: SyncAutomaton) -> SyncAutomaton:
        # tapes (ux, uy, vx, vy)
        four = product(cylindrify(first, 4, [0, 2]), cylindrify(second, 4, [1, 3]))
        return group_tapes(four, [[0, 1], [2, 3]], tracks, _track)

    multipliers = {
        "x": on_tracks(succ, same),
        "X": on_tracks(pred, same),
        "y": on_tracks(same, succ),
        "Y": on_tracks(same, pred),
    }
    logger.debug(
        "Z2 zigzag multipliers: %s",
        {k: a.num_states for k, a in multipliers.items()},
    )
    return CayleyAutomaticStructure(
        name="Z2-zigzag-binary-raw",
        model=model,
        generators=model.standard_generators(),
        language=language,
        codec=ZigzagPairCodec(),
        multipliers=multipliers,
        description="Z^2 as componentwise zigzag binary, symbols unmerged",
    )


def z2_zigzag() -> CayleyAutomaticStructure:
    raw = z2_zigzag_raw()
    identity = raw.model.identity()
    s = merge_alphabet(raw, {a: identity for a in raw.letters}, name="Z2-zigzag-binary")
    return _described(s, "Z^2 as componentwise zigzag binary; track symbols map to 1")


# Lamplighter


LAMP_ALPHABET = Alphabet.of([LAMP_OFF, LAMP_ON, CURSOR_OFF, CURSOR_ON])


def _bit(symbol: str) -> int:
    return 1 if symbol in (LAMP_ON, CURSOR_ON) else 0


def _cursor(symbol: str) -> bool:
    return symbol in (CURSOR_OFF, CURSOR_ON)


def lamplighter_language() -> SyncAutomaton:
    """Exactly one cursor letter and a last letter other than 0."""

    def follow(state: Hashable, label: PaddedTuple) -> list[Hashable]:
        seen, _ = state  # type: ignore[misc]
        (symbol,) = label
        if _cursor(symbol):
            return [] if seen else [(True, True)]
        return [(seen, symbol != LAMP_OFF)]

    return explore(LAMP_ALPHABET, 1, (False, False), follow, lambda s: s == (True, True))


def lamplighter_toggle() -> SyncAutomaton:
    """u -> u a: flip the lamp under the cursor."""
    table: dict[tuple[str, PaddedTuple], str] = {
        ("before", (LAMP_OFF, LAMP_OFF)): "before",
        ("before", (LAMP_ON, LAMP_ON)): "before",
        ("before", (CURSOR_OFF, CURSOR_ON)): "after1",
        ("before", (CURSOR_ON, CURSOR_OFF)): "after1",
    }
    for state in ("after0", "after1"):
        table[(state, (LAMP_OFF, LAMP_OFF))] = "after0"
        table[(state, (LAMP_ON, LAMP_ON))] = "after1"
    return table_automaton(LAMP_ALPHABET, 2, "before", table, {"after1"})


def lamplighter_step() -> SyncAutomaton:
    """u -> u t: move the cursor one position right.

    In folded indices the cursor goes 0 -> 1, odd i -> i + 2 and even
    i >= 2 -> i - 2, so the other tape's cursor letter is due exactly one
    or two letters later. Lamp bits agree letter by letter.
    """

    def follow(state: Hashable, label: PaddedTuple) -> list[Hashable]:
        phase, due, parity, u_pad, v_pad, u_nz, v_nz = state  # type: ignore[misc]
        x, y = label
        if (u_pad and x != PADDING) or (v_pad and y != PADDING):
            return []
        if _bit(x) != _bit(y):
            return []
        cu, cv = _cursor(x), _cursor(y)
        if phase == "pre":
            if cu and cv:
                return []
            if cu:
                if parity == "even":
                    return []
                phase, due = "await_v", 1 if parity == "zero" else 2
            elif cv:
                if parity == "odd":
                    return []
                phase, due = "await_u", 2
            parity = "even" if parity == "odd" else "odd"
        elif phase in ("await_v", "await_u"):
            mine, other = (cv, cu) if phase == "await_v" else (cu, cv)
            if other:
                return []
            if due == 1:
                if not mine:
                    return []
                phase, due = "done", 0
            elif mine:
                return []
            else:
                due -= 1
        elif cu or cv:
            return []
        if phase != "pre":
            parity = ""
        u_nz = u_nz if x == PADDING else x != LAMP_OFF
        v_nz = v_nz if y == PADDING else y != LAMP_OFF
        return [(phase, due, parity, x == PADDING, y == PADDING, u_nz, v_nz)]

    start = ("pre", 0, "zero", False, False, False, False)
    return explore(
        LAMP_ALPHABET,
        2,
        start,
        follow,
        lambda s: s[0] == "done" and s[5] and s[6],  # type: ignore[index]
    )


def lamplighter_raw() -> CayleyAutomaticStructure:
    model = LamplighterModel()
    step = lamplighter_step()
    return CayleyAutomaticStructure(
        name="LL2-raw",
        model=model,
        generators=model.standard_generators(),
        language=lamplighter_language(),
        codec=LamplighterCodec(),
        multipliers={"t": step, "T": swap_tapes(step), "a": lamplighter_toggle()},
        description="Z2 wr Z as folded lamp words, symbols unmerged",
    )


def lamplighter() -> CayleyAutomaticStructure:
    raw = lamplighter_raw()
    identity = raw.model.identity()
    s = merge_alphabet(raw, {a: identity for a in raw.letters}, name="LL2")
    return _described(s, "Z2 wr Z as folded lamp words; lamp symbols map to 1")


def _described(s: CayleyAutomaticStructure, description: str) -> CayleyAutomaticStructure:
    return dataclasses.replace(s, description=description)

