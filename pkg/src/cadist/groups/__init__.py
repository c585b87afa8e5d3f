"""Exact group models, word metrics and free-group word utilities."""

from cadist.groups.base import (
    GeneratorSet,
    GroupModel,
    Word,
    conjugate_product,
    cyclic_conjugates,
    cyclically_reduce,
    free_reduce,
    inverse_word,
    render_word,
    tokenize,
)
from cadist.groups.metric import DEFAULT_BALL_BOUND, CayleyGraph
from cadist.groups.models import (
    MODELS,
    AffineElement,
    BaumslagSolitarModel,
    FreeAbelianModel,
    HeisenbergModel,
    LamplighterModel,
    LampState,
    dense_witness_loop,
    get_model,
)
from cadist.groups.presentation import Presentation, load_presentation, z2_presentation
