"""
Test Suite for Gauss Sums and Reciprocity

Tests for the quadratic and appendix Gauss sums, the Landsberg-Schaar
identity, Legendre symbols and quadratic reciprocity.
"""

import pytest
from pathlib import Path
import sys

import mpmath

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.gauss.gauss_sums import (
    GaussSumSpec,
    appendix_sum_minus,
    appendix_sum_plus,
    coprime_reduction,
    dual_gauss_sum,
    gauss_sum_magnitude,
    quad_gauss_sum,
    verify_appendix,
    verify_landsberg_schaar,
)
from src.gauss.reciprocity import (
    is_prime,
    legendre_symbol,
    odd_primes_below,
    reciprocity_supplements,
    verify_reciprocity,
)
from src.gauss.report import RECORD_FIELDS
from src.phasecalc.precision import cyclosum_eval
from src.utils.errors import DomainError


ACCEPT = mpmath.mpf(10) ** -60


class TestGaussSums:
    """Tests for exact Gauss sum construction."""

    def test_small_quadratic_sums(self):
        """Test G(1,3) = i sqrt(3) and G(1,4) = 2 + 2i."""
        with mpmath.workprec(256):
            i_sqrt3 = mpmath.mpc(0, mpmath.sqrt(3))
        assert cyclosum_eval(quad_gauss_sum(1, 3)).distance(i_sqrt3) < ACCEPT
        assert cyclosum_eval(quad_gauss_sum(1, 4)).distance(2 + 2j) < ACCEPT

    def test_dual_sum(self):
        """Test sum_{n<2} exp(-pi i n^2/2) = 1 - i."""
        assert cyclosum_eval(dual_gauss_sum(1, 1)).distance(1 - 1j) < ACCEPT

    def test_nonpositive_arguments_rejected(self):
        """Test domain errors for p or q below 1."""
        with pytest.raises(DomainError):
            quad_gauss_sum(0, 3)
        with pytest.raises(DomainError):
            dual_gauss_sum(1, -2)

    def test_magnitude_law(self):
        """Test |G(1, m)| against sqrt(m), 0, sqrt(2m) by m mod 4 for m <= 500."""
        for m in range(1, 501):
            value = cyclosum_eval(quad_gauss_sum(1, m))
            assert abs(value.magnitude() - gauss_sum_magnitude(m)) < ACCEPT

    def test_coprime_reduction(self):
        """Test the split p = m p', q = m q'."""
        assert coprime_reduction(12, 8) == (3, 2, 4)
        assert coprime_reduction(7, 5) == (7, 5, 1)

    def test_spec_reduce_exact(self):
        """Test that the gcd is only divided out over whole periods."""
        spec = GaussSumSpec(coeff=2, modulus=6, count=6)
        reduced, multiplicity = spec.reduce()
        assert reduced == GaussSumSpec(coeff=1, modulus=3, count=3)
        assert multiplicity == 2
        assert spec.to_cyclosum() == reduced.to_cyclosum().scale(2)
        assert GaussSumSpec(coeff=2, modulus=6, count=4).reduce() is None
        assert GaussSumSpec(coeff=1, modulus=5, count=5).reduce() is None


class TestLandsbergSchaar:
    """Tests for the Landsberg-Schaar verifier."""

    def test_full_sweep(self):
        """Test all (p, q) in [1, 50]^2 at 256 bits."""
        for p in range(1, 51):
            for q in range(1, 51):
                report = verify_landsberg_schaar(q, p, 256)
                assert report.passed, (p, q)
                assert report.abs_diff < ACCEPT

    def test_smallest_case(self):
        """Test p = q = 1, where both sides equal 1."""
        report = verify_landsberg_schaar(1, 1)
        assert report.lhs.distance(1) < ACCEPT
        assert report.rhs.distance(1) < ACCEPT

    def test_trivial_even_case(self):
        """Test p = 2, q = 1, where both sides vanish."""
        report = verify_landsberg_schaar(1, 2)
        assert report.passed
        assert report.lhs.magnitude() < ACCEPT
        assert report.rhs.magnitude() < ACCEPT

    def test_report_layout(self):
        """Test record column order and the reduction extras."""
        report = verify_landsberg_schaar(6, 4)
        record = report.to_record()
        assert list(record) == ['p', 'q'] + RECORD_FIELDS
        assert record['pass'] is True
        assert report.extra == {'p_reduced': 2, 'q_reduced': 3, 'm': 2}

    def test_tolerance_override(self):
        """Test that a negative tolerance fails every case."""
        report = verify_landsberg_schaar(1, 3, tolerance='-1')
        assert not report.passed


class TestAppendixSums:
    """Tests for the appendix closed forms."""

    def test_closed_forms(self):
        """Test both sums for r <= 200 and seven shifts."""
        for r in range(1, 201):
            for s in (0, 1, -1, 2, -5, r + 3, 4 * r + 7):
                for sign in (1, -1):
                    report = verify_appendix(r, s, sign)
                    assert report.passed, (r, s, sign)
                    assert report.abs_diff < ACCEPT

    def test_shift_invariance(self):
        """Test that shifting by 2r leaves the exact sum unchanged."""
        for r in range(1, 30):
            for s in range(-3, 4):
                assert appendix_sum_plus(r, s) == appendix_sum_plus(r, s + 2 * r)
                assert appendix_sum_minus(r, s) == appendix_sum_minus(r, s - 2 * r)

    def test_shift_sweep(self):
        """Test that every s in [-3r, 3r] gives the s = 0 sum, exactly and evaluated."""
        for r in range(1, 41):
            base_plus, base_minus = appendix_sum_plus(r, 0), appendix_sum_minus(r, 0)
            for s in range(-3 * r, 3 * r + 1):
                assert appendix_sum_plus(r, s) == base_plus, (r, s)
                assert appendix_sum_minus(r, s) == base_minus, (r, s)
        for r in range(41, 201, 13):
            base = cyclosum_eval(appendix_sum_plus(r, 0))
            for s in (-3 * r, -2 * r + 1, -r, r - 1, 2 * r, 3 * r):
                assert cyclosum_eval(appendix_sum_plus(r, s)).distance(base) < ACCEPT, (r, s)

    def test_conjugation(self):
        """Test that the minus sum is the conjugate of the plus sum."""
        for r in range(1, 30):
            for s in range(0, 5):
                assert appendix_sum_minus(r, s) == appendix_sum_plus(r, s).conjugate()

    def test_invalid_sign(self):
        """Test that only +1 and -1 are accepted."""
        with pytest.raises(DomainError):
            verify_appendix(3, 0, sign=2)


class TestReciprocity:
    """Tests for primality, Legendre symbols and reciprocity."""

    def test_is_prime_small(self):
        """Test trial division on small inputs."""
        primes = [n for n in range(50) if is_prime(n)]
        assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        assert not is_prime(561)
        assert not is_prime(1849)

    def test_is_prime_large(self):
        """Test the Miller-Rabin branch."""
        assert is_prime(1_000_003)
        assert not is_prime(1_000_001)
        assert is_prime(2 ** 61 - 1)
        assert not is_prime(2 ** 61 + 1)
        assert not is_prime(3_215_031_751)

    def test_odd_primes_below(self):
        """Test the sieve."""
        assert odd_primes_below(20) == [3, 5, 7, 11, 13, 17, 19]
        assert odd_primes_below(3) == []
        assert len(odd_primes_below(100)) == 24

    def test_legendre_symbol(self):
        """Test Euler's criterion on known residues."""
        assert legendre_symbol(2, 7) == 1
        assert legendre_symbol(3, 7) == -1
        assert legendre_symbol(14, 7) == 0
        assert legendre_symbol(-1, 13) == 1

    def test_legendre_requires_odd_prime(self):
        """Test domain errors for moduli that are not odd primes."""
        with pytest.raises(DomainError):
            legendre_symbol(1, 9)
        with pytest.raises(DomainError):
            legendre_symbol(1, 2)

    def test_reciprocity_all_pairs(self):
        """Test all ordered pairs of distinct odd primes below 100."""
        primes = odd_primes_below(100)
        for p in primes:
            for q in primes:
                if p != q:
                    assert verify_reciprocity(p, q).passed, (p, q)

    def test_reciprocity_errors(self):
        """Test rejection of equal or composite inputs."""
        with pytest.raises(DomainError):
            verify_reciprocity(3, 3)
        with pytest.raises(DomainError):
            verify_reciprocity(3, 9)

    def test_supplements(self):
        """Test the laws for -1 and 2."""
        for p in odd_primes_below(200):
            assert reciprocity_supplements(p) == (True, True)

    def test_report_is_exact(self):
        """Test that the report has zero difference and zero tolerance."""
        report = verify_reciprocity(3, 7)
        assert report.passed
        assert report.abs_diff == 0
        assert report.tolerance == 0
        assert report.extra == {'legendre_p_q': -1, 'legendre_q_p': 1}
