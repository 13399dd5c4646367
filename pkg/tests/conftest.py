import pytest

from gamowkit.acceptance import context
from gamowkit.profile import square_barrier


@pytest.fixture(scope="session")
def ctx():
    """REF1 poles and Gamow states, REF2 bound states (built once)."""
    return context()


@pytest.fixture(scope="session")
def ref1(ctx):
    return ctx.ref1


@pytest.fixture(scope="session")
def ref2(ctx):
    return ctx.ref2


@pytest.fixture(scope="session")
def free():
    return square_barrier(0.0, 1.0)
