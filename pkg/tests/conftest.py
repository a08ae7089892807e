import pytest

from tamelab.sources import SeqSource, concat_block_bounds, materialize


@pytest.fixture(scope="session")
def fib_100k():
    return materialize(SeqSource.fibonacci(), (0, 100_000))


@pytest.fixture(scope="session")
def de_bruijn_16():
    return materialize(SeqSource.de_bruijn(16), (0, 1 << 17))


@pytest.fixture(scope="session")
def concat_w12():
    end = concat_block_bounds(12)[-1][1]
    return materialize(SeqSource.concat_nonnull(), (0, end + 1))
