"""Structure bundles: a JSON manifest naming the model, codec, generators and automaton files.

    {"name": "...", "model": "Z", "codec": {"name": "unary", "params": {}},
     "generators": [{"name": "t", "value": [1], "inverse": "T"}, ...],
     "language": "language.json",
     "multipliers": {"t": "multiplier-0.json", ...}}

Automata may be given inline as objects or as paths relative to the manifest.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from cadist.automata import SyncAutomaton, automaton_from_dict, load_automaton
from cadist.automata.serialization import save_automaton
from cadist.exceptions import CadistError, ConfigurationError
from cadist.groups import GeneratorSet, get_model
from cadist.structures.codecs import codec_from_spec
from cadist.structures.structure import CayleyAutomaticStructure

logger = logging.getLogger(__name__)

BUNDLE_FILE = "structure.json"


class GeneratorEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    value: Any
    inverse: str


class CodecSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    params: dict[str, Any] = Field(default_factory=dict)


class StructureBundle(BaseModel):
    """On-disk structure manifest."""

    model_config = ConfigDict(extra="forbid")

    name: str
    model: str
    codec: CodecSpec
    generators: list[GeneratorEntry]
    language: str | dict[str, Any]
    multipliers: dict[str, str | dict[str, Any]]
    symbol_values: dict[str, Any] = Field(default_factory=dict)
    symbol_words: dict[str, list[str]] = Field(default_factory=dict)
    transport: tuple[int, int] | None = None
    description: str = ""


def _automaton(ref: str | dict[str, Any], base: Path) -> SyncAutomaton:
    if isinstance(ref, dict):
        return automaton_from_dict(ref)
    return load_automaton(base / ref)


def load_bundle(path: Path) -> CayleyAutomaticStructure:
    """Load a structure bundle.

    Raises:
        ConfigurationError: If the manifest or any referenced file is invalid
    """
    try:
        with open(path) as f:
            bundle = StructureBundle.model_validate(json.load(f))
    except FileNotFoundError as e:
        raise ConfigurationError(f"Bundle not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Invalid JSON in bundle {path}: {e}") from e
    except ValidationError as e:
        raise ConfigurationError(f"Invalid bundle {path}: {e}") from e

    base = path.parent
    try:
        model = get_model(bundle.model)
        generators = GeneratorSet.from_triples(
            (g.name, model.element_from_json(g.value), g.inverse) for g in bundle.generators
        )
        structure = CayleyAutomaticStructure(
            name=bundle.name,
            model=model,
            generators=generators,
            language=_automaton(bundle.language, base),
            codec=codec_from_spec(bundle.codec.model_dump()),
            multipliers={k: _automaton(v, base) for k, v in bundle.multipliers.items()},
            symbol_values={
                k: model.element_from_json(v) for k, v in bundle.symbol_values.items()
            },
            symbol_words={k: tuple(v) for k, v in bundle.symbol_words.items()},
            transport=bundle.transport,
            description=bundle.description,
        )
    except ConfigurationError:
        raise
    except (CadistError, KeyError, TypeError, ValueError) as e:
        message = e.message if isinstance(e, CadistError) else str(e)
        raise ConfigurationError(f"Invalid bundle {path}: {message}") from e
    logger.info("Loaded structure bundle %s", path, extra={"structure": structure.name})
    return structure


def export_bundle(s: CayleyAutomaticStructure, directory: Path) -> Path:
    """Write a structure as a manifest plus one file per automaton.

    Returns:
        Path to the manifest
    """
    directory.mkdir(parents=True, exist_ok=True)
    save_automaton(s.language, directory / "language.json")
    refs: dict[str, str | dict[str, Any]] = {}
    for i, token in enumerate(s.generators.names):
        filename = f"multiplier-{i}.json"
        save_automaton(s.multipliers[token], directory / filename)
        refs[token] = filename

    bundle = StructureBundle(
        name=s.name,
        model=s.model.name,
        codec=CodecSpec.model_validate(s.codec.spec()),
        generators=[
            GeneratorEntry(
                name=token,
                value=s.model.element_to_json(s.generators.value(token)),
                inverse=s.generators.inverse_of(token),
            )
            for token in s.generators.names
        ],
        language="language.json",
        multipliers=refs,
        symbol_values={k: s.model.element_to_json(v) for k, v in s.symbol_values.items()},
        symbol_words={k: list(v) for k, v in s.symbol_words.items()},
        transport=s.transport,
        description=s.description,
    )
    manifest = directory / BUNDLE_FILE
    with open(manifest, "w") as f:
        json.dump(bundle.model_dump(mode="json"), f, indent=2)
    logger.info("Exported structure %s to %s", s.name, directory, extra={"structure": s.name})
    return manifest
