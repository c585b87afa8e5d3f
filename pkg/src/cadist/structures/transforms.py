"""Structure transforms: merging symbols into the generators, and generating-set transport."""

from __future__ import annotations

import dataclasses
import logging
from collections.abc import Mapping, Sequence
from typing import Any

from cadist.automata import (
    Alphabet,
    SyncAutomaton,
    block_substitute,
    compose_word_multiplier,
)
from cadist.exceptions import (
    DistanceCapExceededError,
    MissingWordError,
    StructureError,
    TransportError,
)
from cadist.groups import CayleyGraph, GeneratorSet, Word, inverse_word
from cadist.structures.codecs import BlockCodec
from cadist.structures.structure import CayleyAutomaticStructure

logger = logging.getLogger(__name__)

SYMBOL_WORD_CAP = 64


def merge_alphabet(
    s: CayleyAutomaticStructure,
    choice: Mapping[str, Any],
    words: Mapping[str, Sequence[str]] | None = None,
    *,
    name: str | None = None,
    radius_cap: int = SYMBOL_WORD_CAP,
) -> CayleyAutomaticStructure:
    """Make every symbol a generator with a chosen group value.

    Each symbol a gets value choice[a] and a word u_a over the current
    generators (given, or a geodesic). Its multiplier is the multiplier of
    u_a; its formal inverse is a itself when the value is trivial and a new
    token a' otherwise. Symbols that already are generators must keep
    their value.

    Args:
        s: Structure to extend
        choice: Group value for every symbol
        words: Optional words over the generators realising those values
        name: Name of the result
        radius_cap: Longest geodesic searched for a symbol word

    Returns:
        Structure over S' = S followed by the new symbol tokens

    Raises:
        MissingWordError: If a symbol has no value or no word is found
        StructureError: On a value mismatch or a token collision
    """
    identity = s.model.identity()
    graph = s.graph
    inverse = s.generators.inverse_map
    cache: dict[Word, SyncAutomaton] = {}

    def multiplier_for(word: Word) -> SyncAutomaton:
        if word not in cache:
            cache[word] = compose_word_multiplier(s.multipliers, word, language=s.language)
        return cache[word]

    triples: list[tuple[str, Any, str]] = []
    multipliers = dict(s.multipliers)
    symbol_words = dict(s.symbol_words)
    taken = set(s.generators.names) | set(s.letters)

    for a in s.letters:
        if a not in choice:
            raise MissingWordError(a)
        g = choice[a]
        if a in s.generators:
            if s.generators.value(a) != g:
                raise StructureError(
                    f"Symbol {a!r} is already a generator with a different value", {"symbol": a}
                )
            continue
        if words is not None and a in words:
            u = tuple(words[a])
            if graph.evaluate(u) != g:
                raise StructureError(
                    f"Word {list(u)} does not evaluate to the value chosen for {a!r}",
                    {"symbol": a},
                )
        else:
            try:
                u = graph.geodesic(identity, g, radius_cap)
            except DistanceCapExceededError:
                raise MissingWordError(a) from None

        inv_name = a if g == identity else f"{a}'"
        if inv_name != a and inv_name in taken:
            raise StructureError(f"Inverse token {inv_name!r} collides with an existing name")
        triples.append((a, g, inv_name))
        multipliers[a] = multiplier_for(u)
        symbol_words[a] = u
        if inv_name != a:
            u_inv = inverse_word(u, inverse)
            triples.append((inv_name, s.model.invert(g), a))
            multipliers[inv_name] = multiplier_for(u_inv)
            symbol_words[inv_name] = u_inv
            taken.add(inv_name)

    generators = s.generators.extend(triples)
    logger.info(
        "Merged %d symbols into %s: |S'| = %d",
        len(triples),
        s.name,
        len(generators),
        extra={"structure": s.name},
    )
    return dataclasses.replace(
        s,
        name=name or s.name,
        generators=generators,
        multipliers=multipliers,
        symbol_values={**s.symbol_values, **{a: choice[a] for a in s.letters}},
        symbol_words=symbol_words,
    )


def transport(
    s: CayleyAutomaticStructure,
    generators: GeneratorSet,
    rho: Mapping[str, Sequence[str]],
    kappa: Mapping[str, Sequence[str]],
    *,
    name: str | None = None,
    check_depth: int = 6,
) -> CayleyAutomaticStructure:
    """Move a structure to another generating set Y of the same group.

    rho writes every old generator as a word over Y, kappa every y in Y as
    a word over the old generators. The language is rewritten block by
    block through rho, and the multiplier for y is the multiplier of kappa(y)
    rewritten the same way.

    Only substitutions that send every symbol to a block of the same
    length are supported; that keeps the new multipliers synchronous.

    Returns:
        Structure with transport constants (M1, M2) = (max |kappa(y)|, max |rho(s)|)

    Raises:
        TransportError: If a map is incomplete, changes values, is not
            injective on L or has blocks of different lengths
    """
    if not s.merged:
        raise TransportError(f"{s.name}: merge symbols into the generators before transport")
    target = CayleyGraph(s.model, generators)

    rho_words = {}
    for x in s.generators.names:
        if x not in rho:
            raise TransportError(f"rho has no word for generator {x!r}", {"generator": x})
        word = tuple(rho[x])
        for token in word:
            if token not in generators:
                raise TransportError(f"rho({x}) uses unknown token {token!r}")
        if target.evaluate(word) != s.generators.value(x):
            raise TransportError(f"rho({x}) = {list(word)} has the wrong value", {"generator": x})
        rho_words[x] = word

    kappa_words = {}
    for y in generators.names:
        if y not in kappa:
            raise TransportError(f"kappa has no word for generator {y!r}", {"generator": y})
        word = tuple(kappa[y])
        for token in word:
            if token not in s.generators:
                raise TransportError(f"kappa({y}) uses unknown token {token!r}")
        if s.graph.evaluate(word) != generators.value(y):
            raise TransportError(f"kappa({y}) = {list(word)} has the wrong value", {"generator": y})
        kappa_words[y] = word

    blocks = {a: rho_words[a] for a in s.letters}
    try:
        codec = BlockCodec(s.codec, blocks)
    except StructureError as e:
        raise TransportError(e.message) from e

    used = {token for block in blocks.values() for token in block}
    alphabet = Alphabet.of([y for y in generators.names if y in used])

    seen: set[Word] = set()
    for w in s.words(check_depth):
        image = tuple(t for a in w for t in blocks[a])
        if image in seen:
            raise TransportError(f"rho is not injective on L at {list(w)}")
        seen.add(image)

    language = block_substitute(s.language, blocks, alphabet)
    multipliers = {
        y: block_substitute(
            compose_word_multiplier(s.multipliers, kappa_words[y], language=s.language),
            blocks,
            alphabet,
        )
        for y in generators.names
    }
    m1 = max(len(w) for w in kappa_words.values())
    m2 = max(len(w) for w in rho_words.values())
    logger.info(
        "Transported %s to %d generators (M1=%d, M2=%d)",
        s.name,
        len(generators),
        m1,
        m2,
        extra={"structure": s.name},
    )
    return CayleyAutomaticStructure(
        name=name or f"{s.name}/transported",
        model=s.model,
        generators=generators,
        language=language,
        codec=codec,
        multipliers=multipliers,
        symbol_values={y: generators.value(y) for y in alphabet.letters},
        transport=(m1, m2),
        description=f"{s.name} transported along a block substitution",
    )
