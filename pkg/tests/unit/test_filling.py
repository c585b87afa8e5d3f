"""Unit tests for corridor fillings, exact areas, the Dehn check and step functions."""

import random

import pytest

from cadist.exceptions import AreaExceedsMaxError, InvalidStepFunctionError, NotALoopError
from cadist.filling import (
    Cell,
    area,
    area_lower_bound,
    cell_count_bound_check,
    check_certificate,
    corridor_fill,
    dehn_case,
    dehn_inequality_check,
    dense_loop_lengths,
    phi_step_function,
    replay,
    sample_loops,
)
from cadist.groups import dense_witness_loop, z2_presentation
from cadist.profile import DistanceProfile, ProfileEntry, compute_h

Z2 = z2_presentation()


def commutator(a, b):
    """x^a y^b X^a Y^b, of area a b in Z^2."""
    return tuple("x" * a + "y" * b + "X" * a + "Y" * b)


def test_area_of_commutator():
    """Test that [x, y] has area 1 with a replayable certificate."""
    result = area(Z2, tuple("xyXY"))
    assert result.area == 1
    assert replay(Z2, result)


def test_area_of_square_commutator():
    """Test that x^2 y X^2 Y has area 2."""
    result = area(Z2, tuple("xxyXXY"))
    assert result.area == 2
    assert len(result.certificate) == 2
    assert replay(Z2, result)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2)])
def test_area_of_rectangles(a, b):
    """Test area(x^a y^b X^a Y^b) = a b."""
    result = area(Z2, commutator(a, b))
    assert result.area == a * b
    assert area_lower_bound(Z2, commutator(a, b)) <= a * b


def test_freely_trivial_word_has_area_zero():
    """Test that free cancellation costs nothing."""
    result = area(Z2, tuple("xyYX"))
    assert result.area == 0
    assert result.certificate == []


def test_tampered_certificate_does_not_replay():
    """Test that replay rejects an edited certificate."""
    result = area(Z2, tuple("xxyXXY"))
    broken = result.model_copy(update={"area": 1, "certificate": result.certificate[:1]})
    assert not replay(Z2, broken)


def bfs_area(word):
    """Breadth-first distance to the empty word in the rewriting graph of <x, y | xyXY>.

    Words stay freely reduced and no longer than |word| + 8.
    """

    def reduce(w):
        out = []
        for a in w:
            if out and out[-1] == a.swapcase():
                out.pop()
            else:
                out.append(a)
        return "".join(out)

    cells = {r[i:] + r[:i] for r in ("xyXY", "yxYX") for i in range(4)}
    start = reduce(word)
    cap = len(word) + 8
    seen, frontier, depth = {start}, [start], 0
    while frontier:
        if "" in frontier:
            return depth
        depth += 1
        nxt = []
        for w in frontier:
            for i in range(len(w) + 1):
                for c in cells:
                    v = reduce(w[:i] + c + w[i:])
                    if len(v) <= cap and v not in seen:
                        seen.add(v)
                        nxt.append(v)
        frontier = nxt
    return None


def null_words(max_len):
    """Freely reduced words of Z^2 with both exponent sums zero."""
    words = [""]
    for w in words:
        if len(w) < max_len:
            words.extend(w + a for a in "xyXY" if not w or w[-1] != a.swapcase())
    return [
        w for w in words if w and w.count("x") == w.count("X") and w.count("y") == w.count("Y")
    ]


def test_area_matches_rewriting_bfs():
    """Test area against breadth-first search over relator insertions."""
    words = [*null_words(6), "xyXYxyXY", "xyXYXYxy", "xyXYyxYX"]
    assert len(words) > 11
    for word in words:
        assert area(Z2, tuple(word)).area == bfs_area(word), word


def test_area_exceeds_max():
    """Test that the search depth is enforced."""
    with pytest.raises(AreaExceedsMaxError):
        area(Z2, commutator(2, 2), max_area=3)


def test_unary_corridor_cells(z_unary):
    """Test the corridor decomposition of tT in Z."""
    cert = corridor_fill(z_unary, ("t", "T"))
    assert len(cert.cells) == 2
    assert [c.corridor for c in cert.cells] == [1, 2]
    assert check_certificate(z_unary, cert).passed
    assert cell_count_bound_check(cert)


def test_not_a_loop(z_unary):
    """Test that a word with non-trivial value is refused."""
    with pytest.raises(NotALoopError):
        corridor_fill(z_unary, ("t",))


def test_z2_random_loops(z2_zigzag):
    """Test 51 seeded random loops in Z^2 of length <= 12."""
    rng = random.Random(7)
    for n in (4, 8, 12):
        for loop in sample_loops(z2_zigzag.graph, n, 17, rng):
            cert = corridor_fill(z2_zigzag, loop)
            check = check_certificate(z2_zigzag, cert)
            assert check.free_reduction_identity
            assert check.cells_are_loops
            assert check.passed, check.first_failure


def test_profile_feeds_perimeter_bound(z2_zigzag):
    """Test that a supplied profile sets h, h_source and the truncation flag."""
    profile = compute_h(z2_zigzag, 4)
    cert = corridor_fill(z2_zigzag, tuple("xyXY"), profile=profile)
    assert cert.h_source == "profile"
    assert cert.truncated == (cert.bound_argument > 4)
    assert cert.h_argument == min(cert.bound_argument, 4)
    assert cert.h_value == profile.h(cert.h_argument)
    assert cert.profile_h == profile.values
    assert cert.perimeter_bound == 4 * cert.h_value + cert.constants["sigma"]
    assert check_certificate(z2_zigzag, cert, profile=profile).passed


def test_default_profile_covers_rows(z2_zigzag):
    """Test that h is computed to the row depth when no profile is given."""
    cert = corridor_fill(z2_zigzag, tuple("xxyyXXYY"))
    assert cert.h_source == "computed"
    assert len(cert.profile_h) == max(cert.geodesic_lengths) + 1
    assert all(g <= cert.profile_h[n] for n, g in cert.geodesic_lengths.items())
    assert check_certificate(z2_zigzag, cert).passed


def test_understated_profile_is_reported(z2_zigzag):
    """Test that an all-zero profile does not pass the perimeter check."""
    zero = DistanceProfile(
        structure=z2_zigzag.name,
        m=z2_zigzag.constants[0],
        e=z2_zigzag.constants[1],
        entries=[ProfileEntry(n=n, h=0) for n in range(9)],
    )
    cert = corridor_fill(z2_zigzag, tuple("xxyyXXYY"), profile=zero)
    assert cert.h_value == 0
    assert cert.perimeter_bound == cert.constants["sigma"]
    assert max(cert.geodesic_lengths.values()) > 0

    check = check_certificate(z2_zigzag, cert)
    assert check.free_reduction_identity
    assert check.cells_are_loops
    assert not check.geodesics_within_h
    assert not check.profile_matches
    assert not check.passed
    assert check.first_failure["reason"] == "geodesic exceeds h"


def test_short_profile_is_reported(z2_zigzag):
    """Test that rows deeper than the supplied profile fail the check."""
    cert = corridor_fill(z2_zigzag, tuple("xxyyXXYY"), profile=compute_h(z2_zigzag, 0))
    assert cert.truncated
    check = check_certificate(z2_zigzag, cert)
    assert not check.geodesics_within_h
    assert check.first_failure["reason"] == "row word beyond profile"


def test_inflated_bound_is_reported(z2_zigzag):
    """Test that a perimeter bound not matching h fails the check."""
    cert = corridor_fill(z2_zigzag, tuple("xyXY"))
    inflated = cert.model_copy(update={"perimeter_bound": cert.perimeter_bound + 40})
    check = check_certificate(z2_zigzag, inflated)
    assert not check.perimeter_within_bound
    assert check.first_failure["reason"] == "perimeter bound"


@pytest.mark.parametrize("n", [1, 2])
def test_lamplighter_dense_loops(ll2, n):
    """Test the corridor filling of the lamplighter witness loops."""
    loop = dense_witness_loop(n)
    cert = corridor_fill(ll2, loop)
    check = check_certificate(ll2, cert)
    assert check.free_reduction_identity
    assert check.cells_are_loops
    assert check.passed, check.first_failure
    assert len(cert.loop) == 8 * n + 8


def test_extra_cell_detected(z2_zigzag):
    """Test that a cell which is not a loop fails the certificate check."""
    cert = corridor_fill(z2_zigzag, tuple("xyXY"))
    bad = Cell(corridor=99, row=0, conjugator=[], boundary=["x"])
    broken = cert.model_copy(update={"cells": [*cert.cells, bad]})
    check = check_certificate(z2_zigzag, broken)
    assert not check.passed
    assert check.first_failure is not None


@pytest.mark.parametrize("n", [4, 6, 8])
def test_dehn_inequality_in_z2(z2_zigzag, n):
    """Test area(w) <= D n^2 max area(w_i) on seeded loops."""
    report = dehn_inequality_check(z2_zigzag, Z2, n, samples=3, seed=0)
    assert len(report.cases) == 3
    assert report.passed
    assert report.min_margin is not None and report.min_margin >= 0


def test_dehn_case_with_broken_certificate(z2_zigzag):
    """Test that a fault-injected certificate is reported, not measured."""
    loop = tuple("xyXY")
    cert = corridor_fill(z2_zigzag, loop)
    bad = Cell(corridor=99, row=0, conjugator=[], boundary=["y"])
    broken = cert.model_copy(update={"cells": [*cert.cells, bad]})
    case = dehn_case(z2_zigzag, Z2, loop, 4, certificate=broken)
    assert not case.passed
    assert case.area is None


def test_phi_on_dense_lengths():
    """Test the step function through the witness loop lengths."""
    lengths = dense_loop_lengths(3)
    assert lengths == [16, 24, 32]
    phi = phi_step_function(lengths)
    assert phi(15) == 0
    assert phi(20) == 16
    assert phi(24) == 24
    assert phi(100) == 32
    assert phi.piece(20) == (16, 24)
    assert phi.piece(40) == (32, None)


@pytest.mark.parametrize("lengths", [[], [16, 16], [24, 16], [-1, 4]])
def test_invalid_step_function(lengths):
    """Test that lengths must be non-negative and strictly increasing."""
    with pytest.raises(InvalidStepFunctionError):
        phi_step_function(lengths)
