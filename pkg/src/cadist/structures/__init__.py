"""Cayley automatic structures: codecs, shipped builders, transforms and verification."""

from cadist.structures.bundle import export_bundle, load_bundle
from cadist.structures.catalog import CATALOG, build, catalog_names, resolve
from cadist.structures.codecs import Codec, codec_from_spec
from cadist.structures.structure import CayleyAutomaticStructure, FillingConstants
from cadist.structures.transforms import merge_alphabet, transport
from cadist.structures.verification import CheckResult, VerificationReport, verify_structure

__all__ = [
    "CATALOG",
    "CayleyAutomaticStructure",
    "CheckResult",
    "Codec",
    "FillingConstants",
    "VerificationReport",
    "build",
    "catalog_names",
    "codec_from_spec",
    "export_bundle",
    "load_bundle",
    "merge_alphabet",
    "resolve",
    "transport",
    "verify_structure",
]
