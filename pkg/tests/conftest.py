import random

import pytest

from sdim.gt import truncation


@pytest.fixture(scope="session")
def trunc():
    cache = {}

    def get(ell, max_top):
        if (ell, max_top) not in cache:
            cache[ell, max_top] = truncation(ell, max_top)
        return cache[ell, max_top]

    return get


def seeded_sample(population, count, seed=0):
    rng = random.Random(seed)
    return [rng.choice(population) for _ in range(count)]


def random_tableau(rng, ell, max_entry):
    """Uniform top row, then each lower row uniform among interlacing choices."""
    from sdim.gt import GTTableau

    top = sorted((rng.randint(0, max_entry) for _ in range(ell)), reverse=True)
    rows = [tuple(top) + (0,)]
    while len(rows[-1]) > 1:
        up = rows[-1]
        rows.append(tuple(rng.randint(up[b + 1], up[b]) for b in range(len(up) - 1)))
    return GTTableau.from_rows(rows)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
