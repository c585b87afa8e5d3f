"""Unit tests for Cayley automatic structures, transforms and verification."""

import dataclasses

import pytest

from cadist.automata import PADDING, SyncAutomaton
from cadist.exceptions import StructureError, TransportError, UnknownStructureError
from cadist.groups import GeneratorSet
from cadist.structures import (
    build,
    catalog_names,
    export_bundle,
    load_bundle,
    resolve,
    transport,
    verify_structure,
)
from cadist.structures.builders import table_automaton
from cadist.structures.verification import check_completeness, check_soundness


def z_with_square():
    """Y = {t, T, s, S} with s = t^2."""
    return GeneratorSet.from_triples(
        [("t", (1,), "T"), ("T", (-1,), "t"), ("s", (2,), "S"), ("S", (-2,), "s")]
    )


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_structures_verify(name):
    """Test all four conditions on L<=8 for every catalog structure."""
    report = verify_structure(build(name), 8)
    assert [c.name for c in report.checks] == [
        "regularity",
        "bijectivity",
        "soundness",
        "completeness",
    ]
    assert report.passed, report.first_failure()


def test_fault_injected_multiplier_detected(z_unary):
    """Test that swapped multipliers produce a concrete counterexample pair."""
    broken = dataclasses.replace(
        z_unary, multipliers={"t": z_unary.multipliers["T"], "T": z_unary.multipliers["t"]}
    )
    report = verify_structure(broken, 4)
    failure = report.first_failure()
    assert not report.passed
    assert failure is not None
    assert failure.name == "soundness"
    assert failure.counterexample["reason"] == "wrong product"
    assert {"u", "v", "generator"} <= set(failure.counterexample)


def without_edge(a, source, label):
    """Copy of an automaton with one transition removed."""
    delta = {}
    for q, lab, t in a.edges():
        if (q, lab) != (source, label):
            delta.setdefault(q, {}).setdefault(lab, []).append(t)
    return SyncAutomaton(a.tapes, a.alphabet, a.num_states, a.initial, a.accepting, delta)


def test_missing_transition_breaks_completeness(z_unary):
    """Test that dropping one transition of a multiplier leaves a partner pair unaccepted."""
    succ = z_unary.multipliers["t"]
    (source,) = [
        q for q, label, _ in succ.edges() if label == (PADDING, "t") and q != succ.initial
    ]
    broken = dataclasses.replace(
        z_unary,
        multipliers={**z_unary.multipliers, "t": without_edge(succ, source, (PADDING, "t"))},
    )
    assert check_soundness(broken, 4).passed
    result = check_completeness(broken, list(broken.words(3)))
    assert not result.passed
    assert result.counterexample == {
        "generator": "t",
        "u": "t",
        "v": "tt",
        "reason": "multiplier rejects",
    }
    assert verify_structure(broken, 3).first_failure().name == "completeness"


def test_soundness_follows_partners_past_depth(z_unary):
    """Test that a bad pair (u, v) with |u| <= depth < |v| is found."""
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
        ("start", (p, "T")): "x1",
        ("x1", (p, "T")): "x2",
        ("x2", (p, "T")): "bad",
    }
    succ = table_automaton(z_unary.language.alphabet, 2, "start", table, {"done", "bad"})
    broken = dataclasses.replace(z_unary, multipliers={**z_unary.multipliers, "t": succ})
    result = check_soundness(broken, 2)
    assert not result.passed
    assert result.counterexample["v"] == "TTT"
    assert result.counterexample["reason"] == "wrong product"


def test_unary_constants(z_unary):
    """Test (m, e) and the derived filling constants."""
    assert z_unary.constants == (4, 0)
    assert z_unary.filling_constants.as_dict() == {
        "m": 4,
        "e": 0,
        "c": 2.0,
        "d": 4,
        "sigma": 20,
        "D": 2.0,
    }


def test_zigzag_normal_forms(z_zigzag):
    """Test psi and psi^-1 on the zigzag code."""
    assert z_zigzag.psi_inverse((0,)) == ()
    assert z_zigzag.psi_inverse((1,)) == ("0", "1")
    assert z_zigzag.psi_inverse((-1,)) == ("1",)
    assert z_zigzag.psi(("1", "1")) == (-2,)
    assert list(z_zigzag.words(2)) == [(), ("1",), ("0", "1"), ("1", "1")]


def test_merged_and_raw():
    """Test that pi needs merged symbols."""
    raw = build("LL2-raw")
    assert not raw.merged
    assert build("LL2").merged
    with pytest.raises(StructureError):
        raw.pi(raw.identity_word)


def test_resolve_unknown():
    """Test that unknown names are rejected."""
    with pytest.raises(UnknownStructureError):
        resolve("Q8-binary")


def test_bundle_export_and_load(tmp_path, z_unary):
    """Test that an exported bundle loads as a working structure."""
    manifest = export_bundle(z_unary, tmp_path / "bundle")
    loaded = resolve(manifest)
    assert loaded.name == "Z-unary"
    assert list(loaded.words(5)) == list(z_unary.words(5))
    assert verify_structure(loaded, 5).passed
    assert load_bundle(manifest).constants == z_unary.constants


def test_transport_to_square_generator(z_unary):
    """Test transport to Y = {t, t^2} and its constants."""
    rho = {"t": ["t"], "T": ["T"]}
    kappa = {"t": ["t"], "T": ["T"], "s": ["t", "t"], "S": ["T", "T"]}
    moved = transport(z_unary, z_with_square(), rho, kappa)
    assert moved.transport == (2, 1)
    assert verify_structure(moved, 6).passed
    assert moved.psi(("t", "t", "t")) == (3,)


def test_identity_transport(z_unary):
    """Test that transporting along the identity keeps the language and multipliers."""
    rho = {"t": ["t"], "T": ["T"]}
    moved = transport(z_unary, z_unary.generators, rho, rho)
    assert moved.transport == (1, 1)
    assert list(moved.words(6)) == list(z_unary.words(6))
    assert verify_structure(moved, 6).passed


def test_transport_rejects_wrong_values(z_unary):
    """Test that kappa must preserve values."""
    rho = {"t": ["t"], "T": ["T"]}
    kappa = {"t": ["t"], "T": ["T"], "s": ["t"], "S": ["T", "T"]}
    with pytest.raises(TransportError):
        transport(z_unary, z_with_square(), rho, kappa)
