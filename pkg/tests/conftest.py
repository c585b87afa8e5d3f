"""Shared fixtures."""

import pytest

from cadist.structures import build


@pytest.fixture(scope="session")
def z_unary():
    """Z with unary normal forms."""
    return build("Z-unary")


@pytest.fixture(scope="session")
def z_zigzag():
    """Z with zigzag binary normal forms, symbols merged."""
    return build("Z-zigzag-binary")


@pytest.fixture(scope="session")
def z2_zigzag():
    """Z^2 with componentwise zigzag normal forms, symbols merged."""
    return build("Z2-zigzag-binary")


@pytest.fixture(scope="session")
def ll2():
    """The lamplighter structure, lamp symbols merged."""
    return build("LL2")
