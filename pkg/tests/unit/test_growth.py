"""Unit tests for the ordered function space and growth evidence."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cadist.exceptions import DomainShortfallError, InsufficientRangeError, ParameterRangeError
from cadist.growth import (
    CATALOG,
    OrderWitness,
    affine_witnesses,
    check_preceq,
    compare_both,
    compare_with_constant,
    compose_witnesses,
    incomparable_step,
    normalize_affine,
    parse_function,
    refute_preceq_grid,
    strongly_superpoly_check,
    superpoly_samples,
    superquadratic_check,
    verify_preceq,
)
from cadist.profile import compute_h, write_profile_csv

IDENTITY = parse_function("identity")
SQUARE = parse_function("power:2")
EXP2 = parse_function("exp:2")
INCOMPARABLE = parse_function("step:incomparable")


def test_incomparable_values():
    """Test the step function at and between its breakpoints."""
    assert incomparable_step(0) == 2
    assert incomparable_step(2) == 2
    assert incomparable_step(3) == 2
    assert incomparable_step(4) == 16
    assert incomparable_step(15) == 16
    assert incomparable_step(16) == 16
    assert incomparable_step(256) == 65536


@given(st.integers(min_value=0, max_value=2**20))
def test_incomparable_is_non_decreasing(n):
    """Test monotonicity of the step function."""
    assert incomparable_step(n) <= incomparable_step(n + 1)


def test_incomparable_with_identity():
    """Test that a 16x8 grid is refuted in both directions up to 2^32."""
    result = compare_both(INCOMPARABLE, IDENTITY, 16, 8, 2**32)
    assert result.g_below_f.all_refuted
    assert result.f_below_g.all_refuted
    assert not result.comparable
    assert "breakpoints" in result.g_below_f.mode


def test_grid_records_largest_violation():
    """Test that a refuted cell keeps its largest violating n."""
    report = refute_preceq_grid(IDENTITY, parse_function("constant:5"), 2, 1, 100)
    assert [c.violation for c in report.cells] == [100, 100]


def test_constant_against_identity():
    """Test that one direction of constant vs identity survives at (5, 1)."""
    result = compare_with_constant(IDENTITY, parse_function("constant:5"), (16, 8), 500)
    assert result.g_below_f.all_refuted
    assert (5, 1) in result.f_below_g.surviving
    assert (1, 1) not in result.f_below_g.surviving
    assert result.comparable


def test_normalized_function_is_equivalent():
    """Test witnesses in both directions for 5 f(2n + 3) + 4 with f = n^2."""
    h = normalize_affine(SQUARE, 2, 3, 4, 5)
    assert h.spec == "affine:2,3,4,5:power:2"
    assert h.exact(1) == 129
    up, down = affine_witnesses(h, 10**4)
    assert (up.K, up.M) == (6, 4)
    assert verify_preceq(h, SQUARE, up, 10**4)
    assert verify_preceq(SQUARE, h, down, 10**4)


@pytest.mark.parametrize("a,b,c,d", [(0, 0, 0, 1), (1, -1, 0, 1), (1, 0, -1, 1), (1, 0, 0, 0)])
def test_normalize_affine_ranges(a, b, c, d):
    """Test parameter validation."""
    with pytest.raises(ParameterRangeError):
        normalize_affine(SQUARE, a, b, c, d)


def test_normalize_affine_rejects_zero():
    """Test that the zero function has no normalization."""
    with pytest.raises(ParameterRangeError):
        normalize_affine(parse_function("constant:0"), 1, 0, 0, 1)


def test_reflexive_and_transitive():
    """Test f <= f and the composed witness for n <= n^2 <= 2^n."""
    assert verify_preceq(SQUARE, SQUARE, OrderWitness(K=1, M=1), 1000)
    first = OrderWitness(K=1, M=1, N=1)
    second = OrderWitness(K=1, M=1, N=4)
    assert verify_preceq(IDENTITY, SQUARE, first, 1000)
    assert verify_preceq(SQUARE, EXP2, second, 1000)
    composed = compose_witnesses(first, second)
    assert composed == OrderWitness(K=1, M=1, N=4)
    assert verify_preceq(IDENTITY, EXP2, composed, 1000)


def test_check_preceq_reports_violation():
    """Test that a failing witness reports where it fails."""
    report = check_preceq(SQUARE, IDENTITY, OrderWitness(K=3, M=1), 100)
    assert not report.holds
    assert report.violation == 4
    assert report.mode == "exhaustive"


@pytest.mark.parametrize("k", [1, 2, 3])
def test_breakpoints_only_agrees_with_exhaustive(k):
    """Test that forcing breakpoint mode on a short range gives the exhaustive verdict."""
    w = OrderWitness(K=k, M=1)
    full = check_preceq(IDENTITY, INCOMPARABLE, w, 300)
    forced = check_preceq(IDENTITY, INCOMPARABLE, w, 300, breakpoints_only=True)
    assert full.mode == "exhaustive"
    assert forced.mode == "breakpoints"
    assert forced.checked < full.checked
    assert forced.holds == full.holds


def test_breakpoints_only_needs_step_side():
    """Test that breakpoint mode is refused when neither side is a step function."""
    with pytest.raises(ParameterRangeError):
        check_preceq(SQUARE, IDENTITY, OrderWitness(K=1, M=1), 100, breakpoints_only=True)
    with pytest.raises(ParameterRangeError):
        compare_both(SQUARE, IDENTITY, 2, 2, 100, breakpoints_only=True)


def test_check_preceq_range():
    """Test the range and domain errors."""
    with pytest.raises(InsufficientRangeError):
        check_preceq(SQUARE, IDENTITY, OrderWitness(K=1, M=1, N=10), 5)


def test_table_domain(tmp_path, z_zigzag):
    """Test a distance profile read back as a function on a finite domain."""
    path = tmp_path / "h.csv"
    write_profile_csv(compute_h(z_zigzag, 6), path)
    h = parse_function(f"table:{path}")
    assert h.exact(4) == 12
    assert h.domain_end == 6
    assert verify_preceq(h, EXP2, OrderWitness(K=8, M=1), 6)
    with pytest.raises(DomainShortfallError):
        check_preceq(h, EXP2, OrderWitness(K=1, M=1), 7)


@pytest.mark.parametrize("spec", sorted(CATALOG))
def test_superquadratic_evidence_matches(spec):
    """Test that sampled evidence agrees with the known classification."""
    report = superquadratic_check(CATALOG[spec])
    assert report.agrees is True


def test_strong_superpolynomial_search():
    """Test that only the exponential has strong witnesses."""
    assert strongly_superpoly_check(EXP2).found
    assert not strongly_superpoly_check(parse_function("falpha:2")).found
    assert not strongly_superpoly_check(parse_function("power:3")).found


def test_superpoly_samples():
    """Test ln f(n) / ln n on powers and exponentials."""
    cube = superpoly_samples(parse_function("power:3"), [10, 100, 1000])
    assert [round(r, 9) for _, r in cube] == [3.0, 3.0, 3.0]
    exp = [r for _, r in superpoly_samples(EXP2, [10, 100, 1000])]
    assert exp == sorted(exp)


@pytest.mark.parametrize("spec", sorted(CATALOG))
def test_catalog_is_non_decreasing(spec):
    """Test monotonicity of every catalog function on a sample."""
    f = CATALOG[spec]
    values = [f.ln(n) for n in range(1, 300)]
    assert all(a <= b + 1e-9 for a, b in zip(values, values[1:]))


def test_parse_function():
    """Test the function spec grammar."""
    assert parse_function("step:16,24,32").exact(20) == 16
    assert parse_function("constant:5").spec == "constant:5"
    assert parse_function("affine:1,0,0,1:identity") == IDENTITY
    for bad in ("unknown:1", "power:x", "step:3,2", "exp:1", "table:/nonexistent.csv"):
        with pytest.raises(ParameterRangeError):
            parse_function(bad)
