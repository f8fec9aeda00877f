import math
from fractions import Fraction
from functools import reduce

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ghzq.errors import InvalidArgumentError, ResourceLimitError
from ghzq.ghz_core import (
    CompositeObservable,
    ConstructionParams,
    MeasurementSetting,
    apply_composite,
    build_concurrent_set,
    check_invariance,
    correlation_function,
    ghz_state,
    joint_distribution,
    outcome_sums,
    perfect_correlation_offset,
    verify_common_eigenstate,
)
from ghzq.observables import x_of_alpha
from ghzq.qudit_algebra import PhaseFunction, StateVector, omega_power

TOL = 1e-10


def valid_params():
    """Every construction with D in {2,3,4,6}, N in {3,4,5} and a nonunit gcd."""
    out = []
    for N in (3, 4, 5):
        for D in (2, 3, 4, 6):
            for N2 in range(1, N):
                if math.gcd(N2, D) >= 2:
                    out.append(ConstructionParams.from_n2(N, D, N2))
    return out


def piecewise_labels(p, k):
    """The observable list written out block by block, independent of the cyclic formula."""
    N, N1, N2 = p.N, p.N1, p.N2
    if k == 1:
        return "X" * N1 + "Y" * N2
    if 2 <= k <= N2 + 1:
        return "Y" * (k - 1) + "X" * N1 + "Y" * (N2 - k + 1)
    return "X" * (k - N2 - 1) + "Y" * N2 + "X" * (N - k + 1)


def dense(v):
    mats = [x_of_alpha(v.dim, a) for a in v.site_alphas]
    return omega_power(v.dim, v.global_phase_exp) * reduce(np.kron, mats)


class TestGhzState:
    def test_three_qubits(self):
        s = ghz_state(3, 2).vector
        expected = np.zeros(8)
        expected[[0, 7]] = 1 / math.sqrt(2)
        assert np.allclose(s.amplitudes, expected)

    def test_four_qutrits(self):
        s = ghz_state(4, 3).vector
        nz = np.flatnonzero(s.amplitudes)
        assert list(nz) == [0, 40, 80]  # 0000, 1111, 2222 in base 3
        assert np.all(np.abs(s.amplitudes[nz] - 1 / math.sqrt(3)) < 1e-15)

    @pytest.mark.parametrize("N,D", [(2, 2), (3, 5), (5, 6), (8, 3)])
    def test_norm(self, N, D):
        assert abs(ghz_state(N, D).vector.norm() - 1) < 1e-15

    def test_resource_bound(self):
        with pytest.raises(ResourceLimitError):
            ghz_state(8, 10)
        with pytest.raises(ResourceLimitError):
            ghz_state(4, 6, amp_bound=1000)

    def test_needs_two_parties(self):
        with pytest.raises(InvalidArgumentError):
            ghz_state(1, 3)


class TestInvariance:
    @pytest.mark.parametrize("D", [3, 6, 9])
    def test_four_party_phases(self, D):
        phases = [PhaseFunction(D - 1)] + [PhaseFunction(Fraction(1, 3))] * 3
        assert check_invariance(phases, D)

    def test_all_zero(self):
        assert check_invariance([PhaseFunction(0)] * 4, 5)

    @pytest.mark.parametrize("D", [2, 3, 7])
    def test_single_linear_phase(self, D):
        assert not check_invariance([PhaseFunction(1), PhaseFunction(0), PhaseFunction(0)], D)

    @given(st.integers(2, 8), st.lists(st.fractions(max_denominator=8), min_size=2, max_size=5))
    def test_invariant_phase_shift_fixes_ghz(self, D, coeffs):
        # exact verdict against the diagonal unitary applied to the state
        N = len(coeffs)
        psi = ghz_state(N, D).vector
        diag = np.ones((D,) * N, dtype=complex)
        for n in range(D):
            diag[(n,) * N] = omega_power(D, sum(c * n for c in coeffs))
        moved = np.linalg.norm(diag.reshape(-1) * psi.amplitudes - psi.amplitudes)
        assert check_invariance([PhaseFunction(c) for c in coeffs], D) == (moved < TOL)


class TestConcurrentSet:
    def test_four_qutrits(self):
        p = ConstructionParams.from_n2(4, 3, 3)
        y = Fraction(1, 3)
        obs = build_concurrent_set(p)
        assert [v.label(y) for v in obs] == [
            "X*X*X*X",
            "w^1 X*Y*Y*Y",
            "w^1 Y*X*Y*Y",
            "w^1 Y*Y*X*Y",
            "w^1 Y*Y*Y*X",
        ]
        assert obs[1].site_alphas == (0, y, y, y)

    def test_three_qubits(self):
        p = ConstructionParams.from_n2(3, 2, 2)
        labels = [v.label(Fraction(1, 2)) for v in build_concurrent_set(p)]
        assert labels == ["X*X*X", "w^1 X*Y*Y", "w^1 Y*X*Y", "w^1 Y*Y*X"]

    @pytest.mark.parametrize("p", valid_params(), ids=str)
    def test_matches_piecewise_form_and_counts(self, p):
        obs = build_concurrent_set(p)
        assert len(obs) == p.N + 1
        for k, v in enumerate(obs[1:], start=1):
            got = "".join("X" if a == 0 else "Y" for a in v.site_alphas)
            assert got == piecewise_labels(p, k)
            assert v.global_phase_exp == 1
        for party in range(p.N):
            column = [v.site_alphas[party] for v in obs[1:]]
            assert column.count(0) == p.N1
            assert column.count(p.y_alpha) == p.N2

    def test_invalid_params(self):
        with pytest.raises(InvalidArgumentError):
            ConstructionParams(N=4, D=3, N1=2, N2=3, g=3, d=1, eta=1)
        with pytest.raises(InvalidArgumentError):
            ConstructionParams.from_n2(4, 5, 2)


class TestApplyComposite:
    @pytest.mark.parametrize("p", valid_params(), ids=str)
    def test_eigenstate_invariance(self, p):
        report = verify_common_eigenstate(build_concurrent_set(p), ghz_state(p.N, p.D))
        assert report.passed, report.residuals

    def test_matches_dense_kron(self):
        rng = np.random.default_rng(7)
        p = ConstructionParams.from_n2(3, 4, 2)
        v = rng.normal(size=64) + 1j * rng.normal(size=64)
        s = StateVector(3, 4, v / np.linalg.norm(v))
        for obs in build_concurrent_set(p):
            assert np.allclose(apply_composite(obs, s).amplitudes, dense(obs) @ s.amplitudes, atol=1e-12)

    @pytest.mark.parametrize("D", [2, 3, 5])
    def test_x_is_a_d_cycle(self, D):
        rng = np.random.default_rng(D)
        v = rng.normal(size=D**3) + 0j
        s = StateVector(3, D, v / np.linalg.norm(v))
        x_all = CompositeObservable(3, D, 0, (0, 0, 0))
        out = s
        for _ in range(D):
            out = apply_composite(x_all, out)
        assert np.linalg.norm(out - s) <= TOL

    def test_perturbed_state_fails(self):
        p = ConstructionParams.from_n2(4, 3, 3)
        psi = ghz_state(4, 3).vector
        bump = StateVector.basis((0, 0, 0, 1), 3)
        s = StateVector(4, 3, psi.amplitudes + 0.01 * bump.amplitudes).normalized()
        assert verify_common_eigenstate(build_concurrent_set(p), s).max_residual > 1e-3

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            apply_composite(CompositeObservable(3, 2, 0, (0, 0, 0)), ghz_state(4, 2))
        with pytest.raises(InvalidArgumentError):
            CompositeObservable(3, 2, 0, (0, 0))


class TestCorrelations:
    def test_all_x_is_one(self):
        psi = ghz_state(4, 3)
        assert abs(correlation_function(MeasurementSetting((0,) * 4), 0, psi) - 1) < TOL

    @pytest.mark.parametrize("p", valid_params(), ids=str)
    def test_each_observable_has_expectation_one(self, p):
        psi = ghz_state(p.N, p.D)
        for v in build_concurrent_set(p):
            assert abs(correlation_function(v.setting, v.global_phase_exp, psi) - 1) < TOL

    def test_without_prefactor(self):
        v1 = build_concurrent_set(ConstructionParams.from_n2(4, 3, 3))[1]
        E = correlation_function(v1.setting, 0, ghz_state(4, 3))
        assert abs(E - np.exp(-2j * np.pi / 3)) < TOL

    @given(st.integers(2, 4), st.integers(2, 4), st.data())
    def test_inner_product_matches_outcome_sum(self, N, D, data):
        alphas = data.draw(st.lists(st.fractions(max_denominator=6), min_size=N, max_size=N))
        c = data.draw(st.fractions(max_denominator=6))
        seed = data.draw(st.integers(0, 2**32 - 1))
        rng = np.random.default_rng(seed)
        v = rng.normal(size=D**N) + 1j * rng.normal(size=D**N)
        s = StateVector(N, D, v / np.linalg.norm(v))
        # raises ConsistencyError on disagreement
        correlation_function(MeasurementSetting(alphas), c, s)


class TestDistribution:
    @pytest.mark.parametrize("N,D", [(3, 2), (3, 3), (4, 3), (4, 4), (5, 2)])
    def test_all_x_geometric_sum(self, N, D):
        P = joint_distribution(MeasurementSetting((0,) * N), ghz_state(N, D))
        expected = np.where(outcome_sums(N, D) == 0, float(D) ** (1 - N), 0.0)
        assert np.max(np.abs(P - expected)) < TOL

    def test_three_qubit_enumeration(self):
        H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
        amps = reduce(np.kron, [H.conj().T] * 3) @ ghz_state(3, 2).vector.amplitudes
        P = joint_distribution(MeasurementSetting((0, 0, 0)), ghz_state(3, 2))
        assert np.allclose(P.reshape(-1), np.abs(amps) ** 2, atol=1e-12)
        support = {tuple(int(i) for i in m) for m in zip(*np.nonzero(P > TOL))}
        assert support == {(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)}
        assert np.allclose(P[P > TOL], 0.25)

    @pytest.mark.parametrize("p", valid_params(), ids=str)
    def test_offsets_and_uniform_support(self, p):
        psi = ghz_state(p.N, p.D)
        for l, v in enumerate(build_concurrent_set(p)):
            P = joint_distribution(v.setting, psi)
            assert abs(P.sum() - 1) < TOL
            assert perfect_correlation_offset(P, p.D) == (0 if l == 0 else (-1) % p.D)
            assert np.max(np.abs(P[P > TOL] - float(p.D) ** (1 - p.N))) < TOL

    def test_eq5_offset(self):
        v1 = build_concurrent_set(ConstructionParams.from_n2(4, 3, 3))[1]
        P = joint_distribution(v1.setting, ghz_state(4, 3))
        assert perfect_correlation_offset(P, 3) == 2

    def test_uniform_has_no_offset(self):
        assert perfect_correlation_offset(np.full((3, 3, 3), 1 / 27), 3) is None

    @given(st.integers(2, 4), st.lists(st.fractions(max_denominator=5), min_size=3, max_size=3))
    def test_normalized(self, D, alphas):
        P = joint_distribution(MeasurementSetting(alphas), ghz_state(3, D))
        assert abs(P.sum() - 1) < TOL
