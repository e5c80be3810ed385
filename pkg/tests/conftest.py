import random

import pytest
from hypothesis import settings, strategies as st

from gbv.supernum import parse

settings.register_profile("gbv", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("gbv")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def F(text, m, n=None):
    """Shorthand: parse ``text`` in R^{m|n} (n defaults to m)."""
    return parse(text, m, m if n is None else n)


@pytest.fixture
def rng():
    return random.Random(20240611)
