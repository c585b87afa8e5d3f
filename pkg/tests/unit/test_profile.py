"""Unit tests for the Cayley distance function and its bounds."""

import pytest

from cadist.exceptions import EnumerationBudgetError, InsufficientRangeError
from cadist.groups import GeneratorSet
from cadist.profile import (
    check_equivalence_constants,
    check_length_bound,
    check_transport_inequalities,
    compute_h,
    fellow_traveler_constant,
    read_profile_csv,
    write_profile_csv,
)
from cadist.structures import build, catalog_names, transport


def zigzag_oracle(n):
    """max |unzigzag(z) - popcount(z)| over codes z written with at most n bits."""
    best = 0
    for z in range(2**n):
        value = z // 2 if z % 2 == 0 else -(z + 1) // 2
        best = max(best, abs(value - bin(z).count("1")))
    return best


def test_unary_profile_is_zero(z_unary):
    """Test that the automatic structure has h = 0."""
    profile = compute_h(z_unary, 12)
    assert profile.values == [0] * 13
    assert profile.n_max == 12


def test_zigzag_profile_matches_oracle(z_zigzag):
    """Test h(n) against integer arithmetic up to n = 14."""
    profile = compute_h(z_zigzag, 14)
    assert profile.h(4) == 12
    assert profile.values == [zigzag_oracle(n) for n in range(15)]
    assert all(a <= b for a, b in zip(profile.values, profile.values[1:]))
    assert profile.h(14) > profile.h(7) > profile.h(3)


def test_profile_witness(z_zigzag):
    """Test that the recorded witness attains h(n)."""
    profile = compute_h(z_zigzag, 4)
    witness = tuple(profile.entries[4].witness)
    assert len(witness) <= 4
    assert z_zigzag.graph.distance(z_zigzag.pi(witness), z_zigzag.psi(witness), 100) == 12


def test_profile_out_of_range(z_unary):
    """Test that asking beyond the computed range raises."""
    with pytest.raises(InsufficientRangeError):
        compute_h(z_unary, 3).h(4)


def test_profile_budget(z_zigzag):
    """Test that the enumeration budget is enforced."""
    with pytest.raises(EnumerationBudgetError):
        compute_h(z_zigzag, 10, budget=100)


def test_profile_csv(tmp_path, z_zigzag):
    """Test the CSV artifact with its header block."""
    profile = compute_h(z_zigzag, 6)
    path = tmp_path / "h.csv"
    write_profile_csv(profile, path, {"tool": "cadist", "seed": 0})
    lines = path.read_text().splitlines()
    assert lines[:3] == ['# tool: "cadist"', "# seed: 0", "n,h,witness"]
    assert read_profile_csv(path).values == profile.values


def test_profiles_identical_across_workers(z_zigzag):
    """Test that thread count does not change the profile."""
    assert compute_h(z_zigzag, 9, workers=1) == compute_h(z_zigzag, 9, workers=4)


@pytest.mark.parametrize("name", catalog_names())
def test_length_bound(name):
    """Test |u| <= m d(1, psi(u)) + e on L<=6 for every catalog structure."""
    report = check_length_bound(build(name), 6)
    assert report.passed, report.violation
    assert report.min_slack is not None and report.min_slack >= 0


def test_equivalence_constants(z_unary, z_zigzag):
    """Test finite-range witness checks between profiles."""
    zero = compute_h(z_unary, 8)
    zigzag = compute_h(z_zigzag, 8)
    assert check_equivalence_constants(zero, zigzag, 1, 1, 0)
    assert not check_equivalence_constants(zigzag, zero, 16, 1, 1)
    with pytest.raises(InsufficientRangeError):
        check_equivalence_constants(zero, zigzag, 1, 4, 5)


def test_fellow_traveler_constant(z_unary):
    """Test that unary normal forms travel at distance 1."""
    assert fellow_traveler_constant(z_unary, 6) == 1


def test_transport_inequalities(z_unary):
    """Test both transport inequalities for Z with the generator t^2 added."""
    generators = GeneratorSet.from_triples(
        [("t", (1,), "T"), ("T", (-1,), "t"), ("s", (2,), "S"), ("S", (-2,), "s")]
    )
    rho = {"t": ["t"], "T": ["T"]}
    kappa = {"t": ["t"], "T": ["T"], "s": ["t", "t"], "S": ["T", "T"]}
    moved = transport(z_unary, generators, rho, kappa)
    report = check_transport_inequalities(z_unary, moved, 8)
    assert (report.m1, report.m2) == (2, 1)
    assert report.passed, report.first_violation


def test_transport_inequalities_need_transport(z_unary):
    """Test that a structure without transport constants is refused."""
    with pytest.raises(InsufficientRangeError):
        check_transport_inequalities(z_unary, z_unary, 4)


@pytest.mark.parametrize(
    "name,n,size",
    [
        ("Z-unary", 10, 21),
        ("Z-zigzag-binary", 10, 2**10),
        ("LL2", 10, None),
        ("Z2-zigzag-binary", 8, None),
    ],
)
def test_length_bound_deep(name, n, size):
    """Test the length bound on L<=10, and on L<=8 for Z^2 whose ball grows fastest."""
    report = check_length_bound(build(name), n)
    assert report.passed, report.violation
    assert report.min_slack is not None and report.min_slack >= 0
    if size is not None:
        assert report.checked == size
    else:
        assert report.checked > 2**n
