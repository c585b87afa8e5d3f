"""Named catalog of shipped structures."""

from __future__ import annotations

import logging
from collections.abc import Callable
from functools import cache
from pathlib import Path

from cadist.exceptions import UnknownStructureError
from cadist.structures import builders
from cadist.structures.bundle import load_bundle
from cadist.structures.structure import CayleyAutomaticStructure

logger = logging.getLogger(__name__)

CATALOG: dict[str, Callable[[], CayleyAutomaticStructure]] = {
    "Z-unary": builders.z_unary,
    "Z-zigzag-binary": builders.z_zigzag,
    "Z2-zigzag-binary": builders.z2_zigzag,
    "LL2": builders.lamplighter,
}

RAW: dict[str, Callable[[], CayleyAutomaticStructure]] = {
    "Z-zigzag-binary-raw": builders.z_zigzag_raw,
    "Z2-zigzag-binary-raw": builders.z2_zigzag_raw,
    "LL2-raw": builders.lamplighter_raw,
}


def catalog_names(include_raw: bool = False) -> list[str]:
    return [*CATALOG, *RAW] if include_raw else list(CATALOG)


@cache
def build(name: str) -> CayleyAutomaticStructure:
    """Build a catalog structure once per process.

    Raises:
        UnknownStructureError: If the name is not in the catalog
    """
    factory = CATALOG.get(name) or RAW.get(name)
    if factory is None:
        raise UnknownStructureError(name, catalog_names(include_raw=True))
    logger.info("Building structure %s", name, extra={"structure": name})
    return factory()


def resolve(name_or_path: str | Path) -> CayleyAutomaticStructure:
    """A catalog structure by name, or a structure bundle from a JSON file.

    Raises:
        UnknownStructureError: If it is neither
        ConfigurationError: If the bundle file is malformed
    """
    key = str(name_or_path)
    if key in CATALOG or key in RAW:
        return build(key)
    path = Path(name_or_path)
    if path.suffix == ".json" and path.exists():
        return load_bundle(path)
    raise UnknownStructureError(key, catalog_names(include_raw=True))
