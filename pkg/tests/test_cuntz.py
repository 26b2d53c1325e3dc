import math

import pytest

from sdim.cuntz import (
    CuntzHypothesisError,
    cuntz_grid_verdicts,
    cuntz_growth_check,
    cuntz_shell_log_traces,
    cuntz_spectrum,
)
from sdim.spectrum import classify, estimate_sdim

SAMPLE_GRIDS = [
    lambda a, b: a + b,
    lambda a, b: 0.5 * a + 0.9 * b + 3,
    lambda a, b: (a + b) + 0.4 * math.sin(a * b),
    lambda a, b: -(0.7 * a + 0.2 * b) - 1,
]


def test_growth_check_examples():
    assert cuntz_growth_check(lambda a, b: a + b, 1.01, 10)
    assert cuntz_growth_check(lambda a, b: 0.0, 1.0, 10)
    with pytest.raises(CuntzHypothesisError) as info:
        cuntz_growth_check(lambda a, b: (a + b) ** 2, 1.0, 10)
    assert info.value.condition == "cuntz1"


def test_second_coordinate_step():
    with pytest.raises(CuntzHypothesisError) as info:
        cuntz_growth_check(lambda a, b: a + 2 * b, 1.5, 6)
    assert info.value.condition == "cuntz2"


def test_multiplicity():
    m = cuntz_spectrum(2)
    assert m.multiplicity(5) == 32
    for n in (2, 3, 5):
        m = cuntz_spectrum(n)
        assert all(m.multiplicity(k + 1) == n * m.multiplicity(k) for k in range(1, 30))
    with pytest.raises(ValueError):
        cuntz_spectrum(1)


@pytest.mark.parametrize("n", [2, 3])
def test_divergent_everywhere(n):
    m = cuntz_spectrum(n)
    for p in (1, 5, 10, 20):
        assert classify(m, p, 400).divergent
    assert estimate_sdim(m).is_infinite


def test_classify_short_cutoff():
    assert classify(cuntz_spectrum(2), 20, 80).divergent


@pytest.mark.parametrize("d", SAMPLE_GRIDS)
def test_admissible_grids_diverge(d):
    M = 2.0
    assert cuntz_growth_check(d, M, 40)
    for p, v in cuntz_grid_verdicts(d, 2, [1, 5, 10, 20], K=120).items():
        assert v.divergent, p


@pytest.mark.parametrize("d", SAMPLE_GRIDS)
def test_shells_dominate_bound(d):
    # each shell is at least n^s |d|_max^{-p} >= n^s (|d(0,0)| + M s)^{-p}
    n, p, M = 2, 4.0, 2.0
    logs = cuntz_shell_log_traces(d, n, p, 30)
    for s in range(1, 31):
        assert logs[s - 1] >= s * math.log(n) - p * math.log(abs(d(0, 0)) + M * s) - 1e-9
