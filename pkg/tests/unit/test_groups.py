"""Unit tests for group models, word utilities and Cayley graph metrics."""

import json
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cadist.exceptions import (
    BallBoundExceededError,
    ConfigurationError,
    DistanceCapExceededError,
    UnknownGeneratorError,
    UnknownModelError,
)
from cadist.groups import (
    BaumslagSolitarModel,
    CayleyGraph,
    FreeAbelianModel,
    HeisenbergModel,
    LamplighterModel,
    conjugate_product,
    cyclic_conjugates,
    cyclically_reduce,
    dense_witness_loop,
    free_reduce,
    get_model,
    load_presentation,
    render_word,
    tokenize,
    z2_presentation,
)

Z2_INVERSE = {"x": "X", "X": "x", "y": "Y", "Y": "y"}
BIG = 10**6
FOUR = ["x", "X", "y", "Y"]

LAMPLIGHTER = CayleyGraph(LamplighterModel())
HEISENBERG = CayleyGraph(HeisenbergModel())


@pytest.fixture
def z2():
    return CayleyGraph(FreeAbelianModel(2))


@pytest.fixture
def heisenberg():
    return HEISENBERG


@pytest.fixture
def lamplighter():
    return LAMPLIGHTER


def words(letters, max_size=6):
    return st.lists(st.sampled_from(letters), max_size=max_size).map(tuple)


def test_free_reduce():
    """Test cancellation of adjacent inverse pairs."""
    assert free_reduce(tuple("xXy"), Z2_INVERSE) == ("y",)
    assert free_reduce(tuple("xyYX"), Z2_INVERSE) == ()


def test_cyclic_words():
    """Test cyclic reduction and rotations."""
    assert cyclically_reduce(tuple("xyX"), Z2_INVERSE) == ("y",)
    assert cyclic_conjugates(tuple("xy")) == [("x", "y"), ("y", "x")]


def test_conjugate_product():
    """Test that conjugating a trivial word cancels freely."""
    assert conjugate_product([(("x",), ("y", "Y"))], Z2_INVERSE) == ()
    assert conjugate_product([(("x",), ("y",))], Z2_INVERSE) == ("x", "y", "X")


def test_tokenize_and_render():
    """Test parsing words written as strings."""
    assert tokenize("t T", ["t", "T"]) == ("t", "T")
    assert tokenize("xyXY", list(Z2_INVERSE)) == tuple("xyXY")
    assert render_word(("x", "Y")) == "xY"
    assert render_word(("t2", "T")) == "t2 T"
    with pytest.raises(UnknownGeneratorError):
        tokenize("ab", ["a"])


def test_get_model():
    """Test model lookup by name."""
    assert get_model("Z2").name == "Z2"
    with pytest.raises(UnknownModelError):
        get_model("Q8")


def test_z2_closed_form(z2):
    """Test the l1 metric on Z^2."""
    assert z2.closed_form
    assert z2.distance((0, 0), (2, -1), BIG) == 3
    assert z2.sphere_sizes(3) == [1, 4, 8, 12]


def test_distance_cap(z2):
    """Test that distances above the cap raise."""
    with pytest.raises(DistanceCapExceededError):
        z2.distance((0, 0), (5, 5), 3)


def test_ball_bound():
    """Test that balls larger than the bound raise."""
    graph = CayleyGraph(FreeAbelianModel(2), ball_bound=10)
    with pytest.raises(BallBoundExceededError):
        graph.ball(5)


def test_heisenberg_commutator(heisenberg):
    """Test that the central generator has length 4."""
    assert not heisenberg.closed_form
    z = heisenberg.evaluate(tuple("xyXY"))
    assert z == (0, 0, 1)
    assert heisenberg.norm(z, 20) == 4
    assert len(heisenberg.geodesic(heisenberg.model.identity(), z, 20)) == 4


def test_lamplighter_norm_matches_balls(lamplighter):
    """Test the closed-form lamplighter norm against breadth-first balls."""
    model = lamplighter.model
    for r in range(5):
        inner = lamplighter.ball(r)
        outer = lamplighter.ball(r + 1)
        assert inner == {g for g in outer if model.norm(g) <= r}


@given(words(["t", "T", "a"], max_size=10))
def test_lamplighter_geodesic(word):
    """Test that closed-form geodesics evaluate correctly with the norm's length."""
    g = LAMPLIGHTER.evaluate(word)
    path = LAMPLIGHTER.geodesic(LAMPLIGHTER.model.identity(), g, BIG)
    assert LAMPLIGHTER.evaluate(path) == g
    assert len(path) == LAMPLIGHTER.model.norm(g) <= len(word)


@settings(max_examples=30, deadline=None)
@given(words(FOUR, 4), words(FOUR, 4), words(FOUR, 4))
def test_metric_axioms(u, v, w):
    """Test symmetry, identity and the triangle inequality for the search-based metric."""
    graph = HEISENBERG
    g, h, k = (graph.evaluate(x) for x in (u, v, w))
    assert graph.distance(g, g, 20) == 0
    assert graph.distance(g, h, 20) == graph.distance(h, g, 20)
    assert graph.distance(g, k, 20) <= graph.distance(g, h, 20) + graph.distance(h, k, 20)


def test_dense_witness_loop(lamplighter):
    """Test that the witness loops are loops of length 8n + 8."""
    for n in (1, 2, 3):
        loop = dense_witness_loop(n)
        assert len(loop) == 8 * n + 8
        assert lamplighter.is_identity(loop)


def test_shipped_presentations():
    """Test that shipped relators hold in their models."""
    z2 = z2_presentation()
    assert z2.holds_in(CayleyGraph(FreeAbelianModel(2)))
    assert len(z2.relator_family()) == 8
    assert load_presentation("BS12").holds_in(CayleyGraph(BaumslagSolitarModel()))
    assert load_presentation("Z").relators == []


def test_presentation_file(tmp_path):
    """Test loading a presentation from JSON."""
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"name": "H3", "generators": ["x", "y"], "relators": ["xyXY"]}))
    p = load_presentation(path)
    assert p.alphabet == ["x", "X", "y", "Y"]
    assert p.inverses["X"] == "x"


def test_presentation_file_errors(tmp_path):
    """Test that missing or malformed presentations raise ConfigurationError."""
    with pytest.raises(ConfigurationError):
        load_presentation(tmp_path / "missing.json")
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"generators": ["x"], "relators": ["xq"]}))
    with pytest.raises(ConfigurationError):
        load_presentation(path)


def test_baumslag_solitar_balls():
    """Test BS(1,2) balls against all evaluated words of bounded length."""
    graph = CayleyGraph(BaumslagSolitarModel())
    names = graph.model.standard_generators().names
    for r in range(4):
        words = (w for k in range(r + 1) for w in product(names, repeat=k))
        assert graph.ball(r) == {graph.evaluate(w) for w in words}
    assert graph.evaluate(tuple("taT")) == graph.evaluate(tuple("aa"))
