import random

import pytest
from hypothesis import strategies as st

from invmon.words import Word

ACCEPTANCE_LINES: list[str] = []


def words(alphabet_size=2, max_size=12):
    return st.lists(st.integers(0, 2 * alphabet_size - 1), max_size=max_size).map(Word)


def random_word(rng: random.Random, alphabet_size: int, max_len: int, min_len: int = 0) -> Word:
    return Word(rng.randrange(2 * alphabet_size) for _ in range(rng.randint(min_len, max_len)))


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
