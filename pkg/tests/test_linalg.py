"""Exact kernels via fraction-free elimination, cross-checked against sympy."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from icdof import kernel_basis, primitive_integer_vector


def _check_in_kernel(rows, vec):
    for row in rows:
        assert sum(Fraction(a) * x for a, x in zip(row, vec)) == 0


class TestKernelBasis:
    def test_rank_one_row(self):
        rows = [[Fraction(1), Fraction(1), Fraction(1)]]
        basis = kernel_basis(rows)
        assert len(basis) == 2
        for vec in basis:
            _check_in_kernel(rows, vec)

    def test_full_rank_has_empty_kernel(self):
        rows = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(3)]]
        assert kernel_basis(rows) == []

    def test_proportional_columns(self):
        rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
        basis = kernel_basis(rows)
        assert len(basis) == 1
        _check_in_kernel(rows, basis[0])
        assert primitive_integer_vector(basis[0]) == [2, -1]

    def test_fractional_entries(self):
        rows = [[Fraction(1, 3), Fraction(1, 6), Fraction(-1, 2)]]
        basis = kernel_basis(rows)
        assert len(basis) == 2
        for vec in basis:
            _check_in_kernel(rows, vec)

    def test_zero_matrix(self):
        rows = [[Fraction(0), Fraction(0)]]
        basis = kernel_basis(rows)
        assert len(basis) == 2

    def test_against_sympy_on_random_matrices(self):
        rng = random.Random(99)
        for _ in range(40):
            m = rng.randint(1, 5)
            n = rng.randint(1, 5)
            rows = [
                [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
                for _ in range(m)
            ]
            basis = kernel_basis(rows)
            expected = sympy.Matrix([[sympy.Rational(a) for a in row] for row in rows])
            assert len(basis) == len(expected.nullspace())
            for vec in basis:
                _check_in_kernel(rows, vec)


class TestPrimitiveVector:
    def test_clears_denominators_and_reduces(self):
        assert primitive_integer_vector([Fraction(2, 3), Fraction(-4, 3)]) == [1, -2]
        assert primitive_integer_vector([Fraction(0), Fraction(-5, 2)]) == [0, 1]
        assert primitive_integer_vector([Fraction(6), Fraction(9)]) == [2, 3]

    def test_leading_sign_is_positive(self):
        vec = primitive_integer_vector([Fraction(-1, 2), Fraction(1, 4)])
        assert vec[0] > 0

    def test_zero_vector_rejected(self):
        with pytest.raises(Exception):
            primitive_integer_vector([Fraction(0), Fraction(0)])
