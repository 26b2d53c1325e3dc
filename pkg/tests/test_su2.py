import math

import numpy as np
import pytest

from sdim.spectrum import estimate_sdim, partial_traces
from sdim.su2 import (
    GrowthHypothesisError,
    a_minus,
    a_plus,
    b_plus,
    op_alpha,
    op_lie,
    su2_basis,
    su2_commutator,
    su2_commutator_norm,
    su2_growth_bound,
    su2_spectrum,
    unitarity_residue,
)


def test_basis_sizes():
    assert [len(su2_basis(N)) for N in (0, 0.5, 1)] == [1, 5, 14]
    assert len(su2_basis(3)) == sum((m + 1) ** 2 for m in range(7))
    with pytest.raises(ValueError):
        su2_basis(0.3)


def test_coefficients():
    assert a_plus(0, 0, 0) == pytest.approx(1 / math.sqrt(2))
    assert b_plus(0, 0, 0) == pytest.approx(-1 / math.sqrt(2))
    assert a_minus(1.5, -1.5, 0.5) == 0.0


@pytest.mark.parametrize("N", [1, 2.5, 4])
def test_unitarity_residue(N):
    assert unitarity_residue(N) < 1e-12


def test_lie_action():
    N = 2
    basis = su2_basis(N)
    h, e, f = (op_lie(w, N).toarray() for w in "hef")
    idx = {(b.m, b.a, b.b): p for p, b in enumerate(basis)}
    p = idx[(2, 0, 0)]
    assert h[p, p] == 1.0  # n - 2j at n = 1, j = 0
    # [h, e] = 2e, [h, f] = -2f
    assert np.allclose(h @ e - e @ h, 2 * e)
    assert np.allclose(h @ f - f @ h, -2 * f)
    # f then e on the top vector of a block returns j(n-2j+1) times it
    top = idx[(2, 0, 0)]
    v = np.zeros(len(basis))
    v[top] = 1.0
    n, j = 1.0, 0.0
    w = e @ (f @ v)
    assert w[top] == pytest.approx((j + 1) * (n - 2 * (j + 1) + 1))


@pytest.mark.parametrize("d", [lambda n, i: n, lambda n, i: n * n + i, lambda n, i: math.sin(n) - i])
def test_equivariance(d):
    for which in "hef":
        assert su2_commutator(d, which, 3).nnz == 0


def test_commutator_norms_bounded():
    d = lambda n, i: n  # noqa: E731
    prev = 0.0
    for N in range(1, 13):
        a = su2_commutator_norm(d, "alpha", N)
        b = su2_commutator_norm(d, "beta", N)
        assert a <= 1 and b <= 1
        assert a >= prev - 1e-12
        prev = a


def test_dense_oracle():
    d = lambda n, i: n + 0.3 * i  # noqa: E731
    C = su2_commutator(d, "alpha", 3).toarray()
    assert su2_commutator_norm(d, "alpha", 3) == pytest.approx(np.linalg.norm(C, 2))


def test_constant_dirac():
    assert su2_commutator_norm(lambda n, i: 2.0, "beta", 4) == 0.0


def test_square_dirac_grows():
    d = lambda n, i: n * n  # noqa: E731
    for which in ("alpha", "beta"):
        assert su2_commutator_norm(d, which, 20) >= 2 * su2_commutator_norm(d, which, 10)


def test_alpha_shape():
    A = op_alpha(1)
    assert A.shape == (14, 14)


class TestGrowthBound:
    def test_linear(self):
        assert su2_growth_bound(lambda n, i: n, 10, 1.0)
        assert su2_growth_bound(lambda n, i: n + i / 2, 10, 1.0)

    def test_violation(self):
        with pytest.raises(GrowthHypothesisError) as info:
            su2_growth_bound(lambda n, i: 4 * n, 5, 1.0)
        assert info.value.value == pytest.approx(2.0)

    def test_spine_condition(self):
        # diagonal steps of size 1/2 but the spine jumps by 3 between n = 1 and n = 2
        d = lambda n, i: n if n < 2 else n + 1  # noqa: E731
        with pytest.raises(GrowthHypothesisError):
            su2_growth_bound(d, 3, 1.0)


class TestSpectrum:
    def test_terms(self):
        m = su2_spectrum()
        assert m.eigenvalue(1) == 0.5 and m.multiplicity(1) == 4

    def test_sdim(self):
        assert abs(estimate_sdim(su2_spectrum()).value - 3) <= 0.2

    def test_log_divergence_at_three(self):
        s2, s3, s4 = partial_traces(su2_spectrum(), 3.0, [10**2, 10**3, 10**4])
        assert (s4 - s3) / (s3 - s2) >= 0.5
