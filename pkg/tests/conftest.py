import pytest

from ransomgame.core import GameParams
from ransomgame.util import make_stream


@pytest.fixture
def example1():
    """Reference setting without backup: p2(r) = (1 + r)^-2, standard
    exponential valuations."""
    return GameParams()


@pytest.fixture
def example2():
    """The reference setting with a backup."""
    return GameParams(p3=0.3, c3=0.2)


@pytest.fixture
def counterexample():
    """Backup setting with ``c3 > p3 * c1`` where the backup game pays the
    hacker more."""
    return GameParams(c1=0.3, p1=0.3, p3=0.3, c3=0.6)


@pytest.fixture
def stream():
    return make_stream(42)
