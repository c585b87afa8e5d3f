"""Finite presentations: generators with formal inverses and relator words."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from cadist.exceptions import ConfigurationError, UnknownGeneratorError
from cadist.groups.base import Word, cyclic_conjugates, free_reduce, inverse_word, tokenize
from cadist.groups.metric import CayleyGraph


class Presentation(BaseModel):
    """A presentation <generators | relators>.

    ``inverses`` defaults to swapping case (x <-> X). Relators may be given as
    strings and are tokenized against the generator names.
    """

    model_config = ConfigDict(frozen=True)

    name: str = "custom"
    generators: list[str]
    inverses: dict[str, str] = Field(default_factory=dict)
    relators: list[list[str]] = Field(default_factory=list)

    @model_validator(mode="before")
    @classmethod
    def _expand(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        gens = list(data.get("generators", []))
        inverses = dict(data.get("inverses") or {})
        for g in gens:
            if g not in inverses.values() and g not in inverses:
                inverses[g] = g.swapcase() if g.swapcase() != g else g
        for g, inv in list(inverses.items()):
            inverses.setdefault(inv, g)
        data["inverses"] = inverses
        names = sorted(set(gens) | set(inverses), key=lambda s: (s.lower(), s))
        try:
            data["relators"] = [
                list(tokenize(r, names)) if isinstance(r, str) else list(r)
                for r in data.get("relators", [])
            ]
        except UnknownGeneratorError as e:
            raise ValueError(e.message) from e
        return data

    @model_validator(mode="after")
    def _check(self) -> Presentation:
        alphabet = self.alphabet
        for g, inv in self.inverses.items():
            if self.inverses.get(inv) != g:
                raise ValueError(f"inverse map is not an involution at {g!r}")
        for i, r in enumerate(self.relators):
            for token in r:
                if token not in alphabet:
                    raise ValueError(f"relators[{i}]: unknown generator {token!r}")
        return self

    @property
    def alphabet(self) -> list[str]:
        """Generators followed by their formal inverses, without repeats."""
        out: list[str] = []
        for g in self.generators:
            for token in (g, self.inverses[g]):
                if token not in out:
                    out.append(token)
        return out

    def relator_words(self) -> list[Word]:
        return [tuple(r) for r in self.relators]

    def relator_family(self) -> list[Word]:
        """Cyclically reduced cyclic conjugates of every relator and its inverse."""
        seen: dict[Word, None] = {}
        for r in self.relator_words():
            base = free_reduce(r, self.inverses)
            for w in (base, inverse_word(base, self.inverses)):
                for c in cyclic_conjugates(w):
                    if c:
                        seen.setdefault(c, None)
        return list(seen)

    def holds_in(self, graph: CayleyGraph) -> bool:
        """True iff every relator evaluates to the identity under the graph's generators."""
        return all(graph.is_identity(r) for r in self.relator_words())


def z2_presentation() -> Presentation:
    return Presentation.model_validate(
        {"name": "Z2", "generators": ["x", "y"], "relators": ["xyXY"]}
    )


def z_presentation() -> Presentation:
    return Presentation.model_validate({"name": "Z", "generators": ["t"]})


def bs12_presentation() -> Presentation:
    return Presentation.model_validate(
        {"name": "BS12", "generators": ["a", "t"], "relators": ["taTAA"]}
    )


SHIPPED_PRESENTATIONS = {
    "Z": z_presentation,
    "Z2": z2_presentation,
    "BS12": bs12_presentation,
}


def load_presentation(source: str | Path) -> Presentation:
    """Load a shipped presentation by name or a JSON file.

    Raises:
        ConfigurationError: If the file is missing or invalid
    """
    if str(source) in SHIPPED_PRESENTATIONS:
        return SHIPPED_PRESENTATIONS[str(source)]()
    path = Path(source)
    if not path.exists():
        raise ConfigurationError(
            f"Presentation not found: {source}. Shipped: {', '.join(SHIPPED_PRESENTATIONS)}"
        )
    try:
        with open(path) as f:
            return Presentation.model_validate(json.load(f))
    except (json.JSONDecodeError, ValidationError) as e:
        raise ConfigurationError(f"Invalid presentation file {path}: {e}") from e
