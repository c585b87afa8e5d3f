"""JSON automaton format.

    {"tapes": k, "alphabet": [...], "states": N, "initial": i, "accepting": [...],
     "transitions": [{"from": q, "label": ["a", "$"], "to": [q']}]}

Padding is always "$" in files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from cadist.automata.alphabet import PADDING, Alphabet, PaddedTuple
from cadist.automata.automaton import SyncAutomaton
from cadist.exceptions import AutomatonError, AutomatonFormatError


class TransitionEntry(BaseModel):
    """One transition line."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    source: int = Field(alias="from")
    label: list[str]
    to: list[int]


class AutomatonFile(BaseModel):
    """On-disk automaton."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    tapes: int = Field(ge=1)
    alphabet: list[str]
    states: int = Field(ge=1)
    initial: int
    accepting: list[int]
    transitions: list[TransitionEntry] = Field(default_factory=list)


def _loc(parts: tuple[int | str, ...]) -> str:
    out = ""
    for part in parts:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else part)
    return out or "$root"


def to_file_model(a: SyncAutomaton) -> AutomatonFile:
    return AutomatonFile(
        tapes=a.tapes,
        alphabet=list(a.alphabet.letters),
        states=a.num_states,
        initial=a.initial,
        accepting=sorted(a.accepting),
        transitions=[
            TransitionEntry(source=q, label=list(label), to=list(targets))
            for q in a.states
            for label, targets in a.out(q).items()
        ],
    )


def dump_automaton(a: SyncAutomaton) -> dict[str, Any]:
    return to_file_model(a).model_dump(mode="json", by_alias=True)


def automaton_from_dict(data: Any) -> SyncAutomaton:
    """Validate and build an automaton.

    Every rejection names the JSON location of the offending entry.

    Raises:
        AutomatonFormatError: On any format or invariant violation
    """
    try:
        model = AutomatonFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise AutomatonFormatError(_loc(tuple(first["loc"])), first["msg"]) from e

    if PADDING in model.alphabet:
        raise AutomatonFormatError("alphabet", f"padding {PADDING!r} listed as a letter")
    if len(set(model.alphabet)) != len(model.alphabet):
        raise AutomatonFormatError("alphabet", "letters must be pairwise distinct")
    alphabet = Alphabet(tuple(model.alphabet))
    if not 0 <= model.initial < model.states:
        raise AutomatonFormatError("initial", f"state {model.initial} out of range")
    for i, q in enumerate(model.accepting):
        if not 0 <= q < model.states:
            raise AutomatonFormatError(f"accepting[{i}]", f"state {q} out of range")

    delta: dict[int, dict[PaddedTuple, set[int]]] = {}
    for i, entry in enumerate(model.transitions):
        where = f"transitions[{i}]"
        if not 0 <= entry.source < model.states:
            raise AutomatonFormatError(f"{where}.from", f"state {entry.source} out of range")
        if len(entry.label) != model.tapes:
            raise AutomatonFormatError(
                f"{where}.label", f"expected {model.tapes} symbols, got {len(entry.label)}"
            )
        for j, symbol in enumerate(entry.label):
            if symbol not in alphabet:
                raise AutomatonFormatError(f"{where}.label[{j}]", f"unknown symbol {symbol!r}")
        if all(s == PADDING for s in entry.label):
            raise AutomatonFormatError(f"{where}.label", "all-padding label")
        for j, t in enumerate(entry.to):
            if not 0 <= t < model.states:
                raise AutomatonFormatError(f"{where}.to[{j}]", f"state {t} out of range")
        delta.setdefault(entry.source, {}).setdefault(tuple(entry.label), set()).update(entry.to)

    try:
        automaton = SyncAutomaton(
            model.tapes, alphabet, model.states, model.initial, model.accepting, delta
        )
    except AutomatonError as e:
        raise AutomatonFormatError("transitions", e.message) from e
    if not automaton.padding_closed():
        raise AutomatonFormatError("transitions", "an accepted run reads a letter after padding")
    return automaton


def load_automaton(path: Path) -> SyncAutomaton:
    """Load an automaton file.

    Raises:
        AutomatonFormatError: If the file is not valid JSON or violates the format
    """
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise AutomatonFormatError(f"{path}:{e.lineno}:{e.colno}", e.msg) from e
    return automaton_from_dict(data)


def save_automaton(a: SyncAutomaton, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(dump_automaton(a), f, indent=2)
