"""
Test Suite for the Toroidal Phase Space

Tests for bases, evolution kernels, path sums, winding sums and the two
trace computations.
"""

import pytest
from pathlib import Path
import sys

import mpmath

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.gauss.gauss_sums import quad_gauss_sum
from src.phasecalc.precision import ComplexHP, cyclosum_eval, principal_sqrt
from src.torus.kernels import (
    evolve_by_power,
    is_circulant_exact,
    single_step_kernel,
    spectral_kernel_matrix,
)
from src.torus.paths import (
    brute_force_path_sum,
    shifted_gauss_power,
    verify_winding,
    winding_closed_form,
    winding_path_sum,
    winding_sum,
)
from src.torus.states import (
    StateVector,
    change_basis,
    inner_product,
    momentum_basis,
    overlap,
    position_basis,
    position_op_apply,
)
from src.torus.system import TorusSystem, allowed_times
from src.torus.traces import trace_by_matrix_power, trace_method1, trace_method2
from src.utils.errors import DomainError, EnumerationBudgetError, PrecisionExhaustedError


ACCEPT = mpmath.mpf(10) ** -60
LOOSE = mpmath.mpf(10) ** -30


def hp(value, bits=256):
    """Wrap a reference value as an exact ComplexHP."""
    return ComplexHP.from_value(value, bits, exact=True)


class TestTorusSystem:
    """Tests for system parameters and allowed times."""

    def test_allowed_times(self):
        """Test t = pi for (N, I, m) = (4, 1, 2), (2, 1, 1), (6, 3, 1)."""
        with mpmath.workprec(256):
            assert abs(allowed_times(4, 1, 2)[1] - mpmath.pi) < ACCEPT
            assert abs(allowed_times(2, 1, 1)[0] - mpmath.pi) < ACCEPT
            assert abs(allowed_times(6, 3, 1)[0] - mpmath.pi) < ACCEPT

    def test_odd_dimension_rejected(self):
        """Test that odd N is refused with the even-N assumption in the message."""
        with pytest.raises(DomainError) as exc:
            allowed_times(3, 1, 1)
        assert "assuming N is even" in str(exc.value)

    def test_system_parameters(self):
        """Test N = 2q and t = 2 pi p / N."""
        sys_ = TorusSystem(q=2, p=3)
        assert sys_.N == 4
        assert sys_.I == 1 and sys_.hbar == 1
        with mpmath.workprec(256):
            assert abs(sys_.t - 3 * mpmath.pi / 2) < ACCEPT
            assert abs(sys_.dt - mpmath.pi / 2) < ACCEPT

    def test_invalid_system(self):
        """Test rejection of nonpositive q and p."""
        with pytest.raises(DomainError):
            TorusSystem(q=0, p=1)
        with pytest.raises(DomainError):
            TorusSystem(q=1, p=0)


class TestStates:
    """Tests for the momentum and position bases."""

    def test_orthonormal_bases(self):
        """Test <f_j|f_k> = delta and <b_r|b_s> = delta."""
        for N in range(1, 7):
            for basis in (momentum_basis(N, 128), position_basis(N, 128)):
                for j, u in enumerate(basis):
                    for k, v in enumerate(basis):
                        assert inner_product(u, v).distance(int(j == k)) < LOOSE

    def test_position_states_are_indicators(self):
        """Test b_r(j) = delta_rj for N = 2."""
        b = position_basis(2)
        assert b[0][0].distance(1) < ACCEPT and b[0][1].distance(0) < ACCEPT
        assert b[1][0].distance(0) < ACCEPT and b[1][1].distance(1) < ACCEPT

    def test_overlap(self):
        """Test <r|k> = exp(2 pi i k r/N)/sqrt(N) against the sampled f_k."""
        N = 5
        f = momentum_basis(N)
        for k in range(N):
            for r in range(N):
                assert f[k][r].distance(overlap(r, k, N)) < ACCEPT
                assert inner_product(position_basis(N)[r], f[k]).distance(overlap(r, k, N)) < ACCEPT

    def test_change_basis(self):
        """Test that f_k has momentum coefficients delta_jk and converts back."""
        N = 4
        f = momentum_basis(N)
        for k in range(N):
            coeffs = change_basis(f[k], 'momentum')
            assert coeffs.basis == 'momentum'
            for j in range(N):
                assert coeffs[j].distance(int(j == k)) < LOOSE
            assert f[k].distance(change_basis(coeffs, 'position')) < LOOSE

    def test_position_operator(self):
        """Test the eigenvalue relation x b_r = exp(2 pi i r/N) b_r."""
        b4 = position_basis(4)
        assert position_op_apply(b4[1]).distance(b4[1].scale(1j)) < ACCEPT
        b2 = position_basis(2)
        assert position_op_apply(b2[0]).distance(b2[0]) < ACCEPT

    def test_position_operator_linear(self):
        """Test x (b_0 + b_1) = b_0 + exp(2 pi i/3) b_1 for N = 3."""
        b = position_basis(3)
        with mpmath.workprec(288):
            w = mpmath.expjpi(mpmath.mpf(2) / 3)
        expected = b[0] + b[1].scale(hp(w))
        assert position_op_apply(b[0] + b[1]).distance(expected) < ACCEPT

    def test_unknown_basis(self):
        """Test rejection of unknown basis tags."""
        with pytest.raises(DomainError):
            change_basis(position_basis(2)[0], 'spin')
        with pytest.raises(DomainError):
            StateVector.from_values([1, 0], basis='spin')


class TestKernels:
    """Tests for single-step and composed kernels."""

    def test_single_step_entries(self):
        """Test entry(0,0) = (1 - i)/2 for N = 2 and entry(0,2) = -1/sqrt(4i) for N = 4."""
        k2 = single_step_kernel(TorusSystem(1, 1))
        assert k2.entry(0, 0).distance(0.5 - 0.5j) < ACCEPT
        k4 = single_step_kernel(TorusSystem(2, 1))
        expected = -1 / principal_sqrt(hp(4j))
        assert k4.entry(0, 2).distance(expected) < ACCEPT

    def test_single_step_matches_spectral(self):
        """Test closed-form against spectral single-step matrices."""
        for q in range(1, 9):
            sys_ = TorusSystem(q, 1)
            assert single_step_kernel(sys_).max_distance(spectral_kernel_matrix(sys_, 1)) < ACCEPT

    def test_unitarity_and_modulus(self):
        """Test U U^dagger = 1 and |U_ij| = 1/sqrt(N) for all even N <= 64."""
        limit = mpmath.mpf(10) ** -50
        for N in range(2, 65, 2):
            kernel = single_step_kernel(TorusSystem.from_dimension(N, 1, 192))
            assert kernel.unitarity_defect() < limit, N
            assert kernel.max_modulus_deviation() < limit, N

    def test_circulant_keys(self):
        """Test that the exact phase depends on (s - s') mod N only."""
        for N in range(2, 21, 2):
            assert is_circulant_exact(N)
        with pytest.raises(DomainError):
            is_circulant_exact(5)

    def test_three_way_agreement(self):
        """Test enumeration = matrix power = spectral form for N <= 6, p <= 4."""
        for q in (1, 2, 3):
            for p in (1, 2, 3, 4):
                sys_ = TorusSystem(q, p)
                power = evolve_by_power(sys_)
                spectral = spectral_kernel_matrix(sys_)
                for r in range(sys_.N):
                    for s in range(sys_.N):
                        brute = brute_force_path_sum(sys_, r, s)
                        assert brute.distance(power.entry(r, s)) < LOOSE, (q, p, r, s)
                        assert power.entry(r, s).distance(spectral.entry(r, s)) < LOOSE

    def test_power_translation_invariant(self):
        """Test that U^p entries depend on (r - s) mod N only."""
        for q, p in ((1, 3), (2, 2), (3, 4)):
            assert evolve_by_power(TorusSystem(q, p)).is_translation_invariant()

    def test_matrix_power_traces(self):
        """Test traces 1 - i, 0 and the q = 2 cross-check."""
        assert trace_by_matrix_power(TorusSystem(1, 1)).distance(1 - 1j) < ACCEPT
        assert trace_by_matrix_power(TorusSystem(1, 2)).magnitude() < ACCEPT
        sys_ = TorusSystem(2, 1)
        assert trace_by_matrix_power(sys_).distance(cyclosum_eval(trace_method1(sys_))) < ACCEPT

    def test_odd_dimension_kernel(self):
        """Test that from_dimension refuses odd N."""
        with pytest.raises(DomainError):
            TorusSystem.from_dimension(5, 1)

    def test_dimension_mismatch(self):
        """Test that composing kernels of different N raises."""
        with pytest.raises(DomainError):
            single_step_kernel(TorusSystem(1, 1)) @ single_step_kernel(TorusSystem(2, 1))


class TestPathSums:
    """Tests for enumeration and winding sums."""

    def test_brute_force_examples(self):
        """Test the single-step entry and a 16-path entry."""
        assert brute_force_path_sum(TorusSystem(1, 1), 0, 0).distance(0.5 - 0.5j) < ACCEPT
        sys_ = TorusSystem(2, 3)
        assert brute_force_path_sum(sys_, 1, 3).distance(evolve_by_power(sys_).entry(1, 3)) < LOOSE

    def test_budget_refusal(self):
        """Test that enumeration beyond the budget is refused with the count."""
        with pytest.raises(EnumerationBudgetError) as exc:
            brute_force_path_sum(TorusSystem(3, 5), 0, 0, budget=100)
        assert exc.value.required == 6 ** 4
        assert exc.value.budget == 100

    def test_winding_examples(self):
        """Test (N, p) = (2, 1), (2, 3), (2, 2)."""
        assert cyclosum_eval(winding_sum(2, 1)).distance(1 + 1j) < ACCEPT
        assert cyclosum_eval(winding_sum(2, 3)).distance(principal_sqrt(hp(6j))) < ACCEPT
        assert cyclosum_eval(winding_sum(2, 2)).magnitude() < ACCEPT

    def test_winding_even_p_values(self):
        """Test 4 + 4i for (N, p) = (2, 4) and (4, 2)."""
        assert cyclosum_eval(winding_sum(2, 4)).distance(4 + 4j) < ACCEPT
        assert cyclosum_eval(winding_sum(4, 2)).distance(4 + 4j) < ACCEPT
        assert winding_closed_form(2, 4).distance(4 + 4j) < ACCEPT
        assert winding_closed_form(4, 2).distance(4 + 4j) < ACCEPT

    def test_winding_closed_form_odd(self):
        """Test sqrt(iNp) for odd p <= 25 coprime to even N <= 40."""
        for N in range(2, 41, 2):
            for p in range(1, 26, 2):
                report = verify_winding(N, p)
                if report is None:
                    continue
                assert report.passed, (N, p)
                assert report.abs_diff < ACCEPT

    def test_winding_closed_form_even(self):
        """Test the even-p closed form for p = 2r <= 24."""
        checked = 0
        for N in range(2, 41, 2):
            for p in range(2, 25, 2):
                report = verify_winding(N, p)
                if report is None:
                    continue
                checked += 1
                assert report.passed, (N, p)
                assert report.abs_diff < ACCEPT
        assert checked > 50

    def test_winding_closed_form_hypotheses(self):
        """Test that no closed form is claimed outside the hypotheses."""
        assert winding_closed_form(6, 3) is None
        assert winding_closed_form(4, 4) is None

    def test_winding_path_sum_diagonal(self):
        """Test that the winding insertion reproduces the diagonal of U^p."""
        for q, p in ((1, 1), (1, 3), (2, 3), (2, 2), (3, 1)):
            sys_ = TorusSystem(q, p)
            power = evolve_by_power(sys_)
            for r in range(sys_.N):
                assert winding_path_sum(sys_, r).distance(power.entry(r, r)) < LOOSE, (q, p, r)

    def test_winding_path_sum_coprime(self):
        """Test <r|U^p|r> = G(q, p)/sqrt(ipN) for p coprime to N."""
        sys_ = TorusSystem(2, 3)
        gauss = cyclosum_eval(quad_gauss_sum(2, 3))
        expected = gauss / principal_sqrt(hp(12j))
        assert winding_path_sum(sys_, 0).distance(expected) < LOOSE

    def test_winding_path_sum_vanishing_w(self):
        """Test that a vanishing winding sum is reported, not divided by."""
        with pytest.raises(PrecisionExhaustedError):
            winding_path_sum(TorusSystem(1, 2), 0)

    def test_shifted_gauss_power(self):
        """Test (sum_u e(u^2/2N))^p = (iN)^(p/2)."""
        for N in range(2, 11, 2):
            for p in range(1, 6):
                report = shifted_gauss_power(N, p)
                assert report.passed, (N, p)
                assert report.abs_diff < ACCEPT


class TestTraces:
    """Tests for Method 1 and Method 2."""

    def test_method1_examples(self):
        """Test 1 - i, 1 + i and 2 for q = 1."""
        assert cyclosum_eval(trace_method1(TorusSystem(1, 1))).distance(1 - 1j) < ACCEPT
        assert cyclosum_eval(trace_method1(TorusSystem(1, 3))).distance(1 + 1j) < ACCEPT
        assert cyclosum_eval(trace_method1(TorusSystem(1, 4))).distance(2) < ACCEPT

    def test_method2_examples(self):
        """Test 1 + i, 1 - i and 0 for q = 1."""
        assert trace_method2(TorusSystem(1, 3)).distance(1 + 1j) < ACCEPT
        assert trace_method2(TorusSystem(1, 1)).distance(1 - 1j) < ACCEPT
        assert trace_method2(TorusSystem(1, 2)).magnitude() < ACCEPT

    def test_trace_theorem(self):
        """Test Method 1 = Method 2 for all q, p <= 20, composite pairs included."""
        for q in range(1, 21):
            for p in range(1, 21):
                sys_ = TorusSystem(q, p)
                method1 = cyclosum_eval(trace_method1(sys_))
                assert method1.distance(trace_method2(sys_)) < ACCEPT, (q, p)
