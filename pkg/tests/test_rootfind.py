import numpy as np
import pytest

from conftest import assert_multisets_close

from eigroots.exceptions import ExtractionError
from eigroots.normalform import FixedBasis, QR_PIVOT, block_basis, compute_quotient_system
from eigroots.parsing import parse_polynomial
from eigroots.polynomials import Polynomial, PolySystem, random_dense_system
from eigroots.rootfind import (
    SolutionSet,
    evaluate_on_variety,
    extract_solutions,
    format_solution_lines,
    solve_system,
    verify_solutions,
)


def toy_system():
    return PolySystem((
        parse_polynomial("x1^2 + x2^2 - 2", 2),
        parse_polynomial("3*x1^2 - x2^2 - 2", 2),
    ))


class TestSolveSystem:
    def test_toy_variety(self):
        sols = solve_system(toy_system(), QR_PIVOT, seed=0)
        assert len(sols) == 4
        assert sols.max_residual <= 1e-12
        expected = np.array([[-1, -1], [-1, 1], [1, -1], [1, 1]], dtype=complex)
        assert_multisets_close(sols.points_array(), expected, 1e-10)

    def test_linear_system(self):
        system = PolySystem((
            parse_polynomial("x1 - 0.75", 2),
            parse_polynomial("x2 + 1.25", 2),
        ))
        sols = solve_system(system, QR_PIVOT, seed=0)
        assert len(sols) == 1
        assert np.allclose(np.array(sols.points[0]), [0.75, -1.25], atol=1e-13)
        assert sols.max_residual <= 1e-14

    def test_direct_substitution_cross_check(self):
        system = random_dense_system(2, (3, 3), seed=5)
        sols = solve_system(system, QR_PIVOT, seed=5)
        assert len(sols) == 9
        assert sols.max_residual <= 1e-10
        for z in sols.points:
            for poly in system.polys:
                scale = poly.abs_coefficients().evaluate(np.abs(np.array(z))).real
                assert abs(poly.evaluate(z)) <= 1e-8 * (scale + 1.0)

    def test_block_strategy_same_points(self):
        a = solve_system(toy_system(), QR_PIVOT, seed=0).points_array()
        b = solve_system(toy_system(), FixedBasis(block_basis((2, 2))), seed=0).points_array()
        assert_multisets_close(a, b, 1e-6)

    def test_seed_independence_of_point_set(self):
        system = random_dense_system(2, (4, 4), seed=2)
        a = solve_system(system, QR_PIVOT, seed=0).points_array()
        b = solve_system(system, QR_PIVOT, seed=99).points_array()
        assert_multisets_close(a, b, 1e-6)

    def test_conjugate_closure(self):
        system = random_dense_system(2, (3, 4), seed=7)
        sols = solve_system(system, QR_PIVOT, seed=0)
        pts = sols.points_array()
        for z in pts:
            dists = np.linalg.norm(pts - np.conj(z), axis=1)
            assert dists.min() <= 1e-6

    def test_coordinates_match_multiplication_spectra(self):
        system = random_dense_system(2, (3, 3), seed=11)
        qs = compute_quotient_system(system, QR_PIVOT)
        sols = extract_solutions(system, qs, seed=0)
        pts = sols.points_array()
        for var in range(2):
            eigs = np.linalg.eigvals(qs.mult_matrices[var]).astype(complex)
            assert_multisets_close(pts[:, var][:, None], eigs[:, None], 1e-6)

    def test_trivariate_degree_four_completeness(self):
        system = random_dense_system(3, (4, 4, 4), seed=0)
        sols = solve_system(system, QR_PIVOT, seed=0)
        assert len(sols) == 64
        assert sols.max_residual <= 1e-8

    def test_extraction_failure_on_multiple_root(self):
        # x1^2 = x2^2 = 0 has one root of multiplicity 4: the multiplication
        # matrices are nilpotent and no random combination diagonalizes
        system = PolySystem((parse_polynomial("x1^2", 2), parse_polynomial("x2^2", 2)))
        with pytest.raises(ExtractionError, match="multiple"):
            solve_system(system, QR_PIVOT, seed=0)

    def test_diagnostics(self):
        sols = solve_system(toy_system(), QR_PIVOT, seed=0)
        assert sols.extraction_condition >= 1.0
        assert sols.retries == 0
        assert sols.max_residual == max(sols.residuals)


class TestEvaluateOnVariety:
    def test_coordinate_function(self):
        qs = compute_quotient_system(toy_system(), QR_PIVOT)
        values = evaluate_on_variety(parse_polynomial("x1", 2), qs)
        assert np.allclose(values, [-1, -1, 1, 1], atol=1e-10)

    def test_constant(self):
        qs = compute_quotient_system(toy_system(), QR_PIVOT)
        values = evaluate_on_variety(Polynomial.constant(2, 7.0), qs)
        assert np.allclose(values, [7, 7, 7, 7], atol=1e-12)

    def test_quadric(self):
        qs = compute_quotient_system(toy_system(), QR_PIVOT)
        values = evaluate_on_variety(parse_polynomial("x1^2 + x2^2", 2), qs)
        assert np.allclose(values, [2, 2, 2, 2], atol=1e-10)

    def test_matches_pointwise_evaluation(self):
        system = random_dense_system(2, (3, 2), seed=3)
        qs = compute_quotient_system(system, QR_PIVOT)
        sols = extract_solutions(system, qs, seed=0)
        f = parse_polynomial("x1^2 - 0.5*x2 + 1", 2)
        via_matrix = evaluate_on_variety(f, qs)
        direct = np.array([f.evaluate(z) for z in sols.points])
        assert_multisets_close(via_matrix[:, None], direct[:, None], 1e-8)

    def test_nvars_mismatch(self):
        qs = compute_quotient_system(toy_system(), QR_PIVOT)
        with pytest.raises(ValueError):
            evaluate_on_variety(parse_polynomial("x1", 1), qs)


class TestVerifySolutions:
    def test_exact_toy_passes(self):
        system = toy_system()
        sols = solve_system(system, QR_PIVOT, seed=0)
        report = verify_solutions(system, sols, tol=1e-8)
        assert report.n_passing == 4
        assert report.complete
        assert "4/4" in report.summary()

    def test_perturbed_point_fails(self):
        system = toy_system()
        sols = solve_system(system, QR_PIVOT, seed=0)
        points = list(sols.points)
        points[0] = (points[0][0] + 1e-2, points[0][1])
        perturbed = SolutionSet(
            points=tuple(points),
            residuals=sols.residuals,
            max_residual=sols.max_residual,
            extraction_condition=sols.extraction_condition,
            retries=sols.retries,
        )
        report = verify_solutions(system, perturbed, tol=1e-8)
        assert report.n_passing == 3
        assert report.worst_index == 0
        assert report.worst_residual > 1e-8

    def test_empty_set_incomplete(self):
        empty = SolutionSet(points=(), residuals=(), max_residual=0.0,
                            extraction_condition=1.0, retries=0)
        report = verify_solutions(toy_system(), empty, tol=1e-8)
        assert not report.complete
        assert report.n_points == 0


class TestOutputFormat:
    def test_lines_shape(self):
        sols = solve_system(toy_system(), QR_PIVOT, seed=0)
        lines = format_solution_lines(sols)
        assert len(lines) == 4
        for line in lines:
            parts = line.split(", ")
            assert len(parts) == 3  # two coordinates plus the residual
            assert "*i" in parts[0] and "*i" in parts[1]
            float(parts[2])  # residual parses as a float

    def test_negative_imaginary_sign(self):
        sols = SolutionSet(points=((1 - 2j,),), residuals=(0.0,), max_residual=0.0,
                           extraction_condition=1.0, retries=0)
        assert format_solution_lines(sols)[0].startswith("1.0-2.0*i")

    def test_to_dict_mirrors_points(self):
        sols = solve_system(toy_system(), QR_PIVOT, seed=0)
        payload = sols.to_dict()
        assert len(payload["points"]) == 4
        assert payload["max_residual"] == sols.max_residual
        first = payload["points"][0]["coordinates"]
        assert first[0] == [sols.points[0][0].real, sols.points[0][0].imag]
