import numpy as np
import pytest

from lcskit import Alphabet, StringSet, parse_instance

# verdict lines collected by the acceptance module, echoed after the run
ACCEPTANCE_VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)


DNA_PAIR_TEXT = "2 4\n8 TGACTGCA\n8 GACTTGAG\n"

# the worked six-string correlated set
CORRELATED_SIX = [
    "CCGTGCATTT",
    "CCGTGCGGCA",
    "ACGTGCATT",
    "ACGTGCATT",
    "CCGTGAATTT",
    "CCGTGCATAT",
]


@pytest.fixture
def dna_pair() -> StringSet:
    return parse_instance(DNA_PAIR_TEXT)


@pytest.fixture
def six_set() -> StringSet:
    return StringSet.from_texts(CORRELATED_SIX)


def random_set(rng: np.random.Generator, m: int, n: int, lo: int, hi: int) -> StringSet:
    """Uniform random instance with per-string lengths in [lo, hi]."""
    alphabet = Alphabet.from_pool(m)
    strings = tuple(
        rng.integers(0, m, size=int(rng.integers(lo, hi + 1))).astype(np.int32)
        for _ in range(n)
    )
    return StringSet(alphabet, strings)
