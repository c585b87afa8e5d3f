"""Synchronous multi-tape automata and regular relations."""

from cadist.automata.alphabet import PADDING, Alphabet, Convolution, PaddedTuple, Word
from cadist.automata.automaton import SyncAutomaton, explore
from cadist.automata.operations import (
    block_substitute,
    compose_word_multiplier,
    cylindrify,
    diagonal,
    empty_automaton,
    enumerate_convolutions,
    enumerate_words,
    group_tapes,
    permute_tapes,
    product,
    project,
    state_bound_constants,
    swap_tapes,
    universal_automaton,
)
from cadist.automata.serialization import automaton_from_dict, dump_automaton, load_automaton

__all__ = [
    "PADDING",
    "Alphabet",
    "Convolution",
    "PaddedTuple",
    "SyncAutomaton",
    "Word",
    "automaton_from_dict",
    "block_substitute",
    "compose_word_multiplier",
    "cylindrify",
    "diagonal",
    "dump_automaton",
    "empty_automaton",
    "enumerate_convolutions",
    "enumerate_words",
    "explore",
    "group_tapes",
    "load_automaton",
    "permute_tapes",
    "product",
    "project",
    "state_bound_constants",
    "swap_tapes",
    "universal_automaton",
]
