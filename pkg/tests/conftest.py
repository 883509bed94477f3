import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rotagroup.figure import FigureSpec, RectPlacement, build_figure, rectangle  # noqa: E402
from rotagroup.word import Letter, Word  # noqa: E402

FIGURES = Path(__file__).parent.parent / "figures"


def random_word(ngens: int, length: int, rng: random.Random) -> Word:
    return Word(Letter(rng.randrange(ngens), rng.randint(1, 3)) for _ in range(length))


def L_shape(k: int):
    """k×(k+1) on top, (k+1)×k hanging below its left end."""
    return build_figure(FigureSpec(k, (RectPlacement(1, 1, "H"), RectPlacement(k, 1, "V"))))


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def rect():
    cache = {}

    def get(k, orientation="H"):
        if (k, orientation) not in cache:
            cache[k, orientation] = rectangle(k, orientation)
        return cache[k, orientation]

    return get


# acceptance criteria report one line each; shown at the end of the run
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
