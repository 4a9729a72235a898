"""Tests for graded quotients and the strong Lefschetz search."""

import pytest

from apolar.algebra.linalg import Matrix
from apolar.core.apolarity import NotHomogeneousError, hilbert_function
from apolar.core.lefschetz import (
    CharacteristicRefusedError,
    DegreeOutOfRangeError,
    LefschetzError,
    build_graded_quotient,
    find_slp_witness,
    has_slp_witness,
    mult_matrix,
    rank_symmetry,
)


class TestGradedQuotient:
    """Tests for per-degree bases of R/Ann(F)."""

    def test_linear_binomial(self, dual):
        A = build_graded_quotient(dual("X1 - X2"))
        assert A.h == [1, 1]
        assert A.degree_bases == [[(0, 0)], [(1, 0)]]

    def test_monomial(self, dual):
        A = build_graded_quotient(dual("X1*X2"))
        assert A.h == [1, 2, 1]
        assert A.degree_bases[2] == [(1, 1)]

    def test_quadric(self, dual):
        assert build_graded_quotient(dual("X1*X2 - X3*X4")).h == [1, 4, 1]

    @pytest.mark.parametrize("text", ["X1^2*X2^2", "X1^3*X2 - X2^2*X3^2", "X1^2*X2 + X3^3"])
    def test_matches_hilbert_function(self, dual, text):
        F = dual(text)
        assert build_graded_quotient(F).h == hilbert_function(F)

    def test_reduction_modulo_annihilator(self, dual, ring):
        A = build_graded_quotient(dual("X1 - X2"))
        assert A.pieces[1].coordinates(ring("x2", 2)) == [-1]

    def test_not_homogeneous(self, dual):
        with pytest.raises(NotHomogeneousError):
            build_graded_quotient(dual("X1^2 - X2"))


class TestMultMatrix:
    """Tests for multiplication maps between graded pieces."""

    def test_square_of_sum(self, dual, ring, QQ):
        A = build_graded_quotient(dual("X1*X2"))
        assert mult_matrix(A, ring("x1 + x2", 2), 0, 2) == Matrix.from_rows(QQ, [[2]])

    def test_square_of_sum_in_characteristic_two(self, dual, ring, F2):
        A = build_graded_quotient(dual("X1*X2", field=F2))
        assert mult_matrix(A, ring("x1 + x2", 2, F2), 0, 2) == Matrix.from_rows(F2, [[0]])

    def test_zero_power_is_identity(self, dual, ring, QQ):
        A = build_graded_quotient(dual("X1^2*X2^2"))
        assert mult_matrix(A, ring("x1 + 3*x2", 2), 2, 0) == Matrix.identity(QQ, 3)

    def test_out_of_range(self, dual, ring):
        A = build_graded_quotient(dual("X1^2*X2^2"))
        with pytest.raises(DegreeOutOfRangeError):
            mult_matrix(A, ring("x1", 2), 3, 2)

    @pytest.mark.parametrize("i, d1, d2", [(0, 1, 2), (1, 1, 1), (0, 2, 2), (1, 2, 1)])
    def test_composition(self, dual, ring, i, d1, d2):
        A = build_graded_quotient(dual("X1^2*X2^2 - 2*X1*X2^3"))
        ell = ring("x1 + 2*x2", 2)
        assert mult_matrix(A, ell, i, d1 + d2) == mult_matrix(A, ell, i + d1, d2) @ mult_matrix(A, ell, i, d1)


class TestWitnessCheck:
    """Tests for has_slp_witness."""

    def test_single_variable_form(self, dual, ring):
        assert has_slp_witness(build_graded_quotient(dual("X1 - X2")), ring("x1", 2))

    def test_sum_is_annihilated(self, dual, ring):
        check = has_slp_witness(build_graded_quotient(dual("X1 - X2")), ring("x1 + x2", 2))
        assert not check
        assert check.failed_pairs == [(0, 1, 0, 1)]

    def test_rationals(self, dual, ring):
        assert has_slp_witness(build_graded_quotient(dual("X1*X2")), ring("x1 + x2", 2))

    def test_characteristic_two(self, dual, ring, F2):
        A = build_graded_quotient(dual("X1*X2", field=F2))
        check = has_slp_witness(A, ring("x1 + x2", 2, F2))
        assert not check
        assert (0, 2, 0, 1) in check.failed_pairs

    def test_scaling_preserves_witness(self, dual, ring):
        A = build_graded_quotient(dual("X1^2*X2^2 - X1*X2^3"))
        ell = ring("x1 + 2*x2", 2)
        assert bool(has_slp_witness(A, ell)) == bool(has_slp_witness(A, ell.scale(-3)))

    def test_rank_symmetry(self, dual, ring):
        A = build_graded_quotient(dual("X1^2*X2^2"))
        check = has_slp_witness(A, ring("x1 + x2", 2))
        assert check
        assert rank_symmetry(A, check.ranks)

    def test_rejects_non_linear(self, dual, ring):
        A = build_graded_quotient(dual("X1*X2"))
        with pytest.raises(LefschetzError):
            has_slp_witness(A, ring("x1^2", 2))
        with pytest.raises(LefschetzError):
            has_slp_witness(A, ring("x1", 3))


class TestFindWitness:
    """Tests for the witness search."""

    def test_first_candidate(self, dual, ring):
        report = find_slp_witness(build_graded_quotient(dual("X1^2*X2^2")))
        assert report.found
        assert report.witness == ring("x1 + x2", 2)
        assert report.trials_used == 1
        assert report.symmetric
        assert "proves" in report.message

    def test_random_candidate_needed(self, dual, ring):
        report = find_slp_witness(build_graded_quotient(dual("X1 - X2")))
        assert report.found
        assert report.witness != ring("x1 + x2", 2)
        assert report.trials_used >= 2

    def test_deterministic(self, dual):
        A = build_graded_quotient(dual("X1 - X2"))
        assert find_slp_witness(A, seed=3).witness == find_slp_witness(A, seed=3).witness

    def test_prime_field_refused(self, dual, F2):
        A = build_graded_quotient(dual("X1*X2", field=F2))
        with pytest.raises(CharacteristicRefusedError):
            find_slp_witness(A)

    def test_characteristic_gate(self, dual, F2):
        A = build_graded_quotient(dual("X1*X2", field=F2))
        report = find_slp_witness(A, trials=10, allow_positive_characteristic=True)
        assert not report.found
        assert report.exhaustive
        assert report.trials_used == 3
        assert (0, 2, 0, 1) in report.failed_pairs

    def test_same_form_over_rationals(self, dual, ring):
        report = find_slp_witness(build_graded_quotient(dual("X1*X2")))
        assert report.witness == ring("x1 + x2", 2)

    def test_exhaustive_success_over_prime_field(self, dual, ring, F2):
        A = build_graded_quotient(dual("X1 - X2", field=F2))
        report = find_slp_witness(A, allow_positive_characteristic=True)
        assert report.witness == ring("x2", 2, F2)
        assert report.trials_used == 2

    def test_no_trials(self, dual):
        report = find_slp_witness(build_graded_quotient(dual("X1 - X2")), trials=0)
        assert not report.found
        assert report.trials_used == 1
        assert "NO_WITNESS_FOUND" in report.message
        assert "not a disproof" in report.message
