import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperetf.cyclo import CycloMatrix, CycloNum, cyclotomic_poly, euler_phi, hstack, root_of_unity
from hyperetf.errors import ConductorMismatch

z6 = root_of_unity(6)


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert len(cyclotomic_poly(10)) - 1 == euler_phi(10) == 4


def test_reduction_and_inverse():
    assert (z6 * root_of_unity(6, 5) - 1).is_zero()
    assert (z6 ** 2 - (z6 - 1)).is_zero()
    assert (z6.conj() - root_of_unity(6, 5)).is_zero()
    assert (z6.conj() - (1 - z6)).is_zero()
    assert ((1 + z6) * (1 + z6).inverse() - 1).is_zero()


def test_modulus_squared():
    assert (1 + z6).modulus_squared().is_rational() == 3
    assert CycloNum.zero(6).modulus_squared().is_zero()


@given(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 10, 12, 15]), st.integers(-50, 50))
def test_roots_are_unimodular(N, k):
    assert root_of_unity(N, k).modulus_squared().is_rational() == 1


def test_is_rational():
    assert CycloNum.rational(3, 6).is_rational() == 3
    assert z6.is_rational() is None
    assert (z6 + root_of_unity(6, 5)).is_rational() == 1


def test_to_complex():
    assert CycloNum.one(6).to_complex() == 1
    assert abs(root_of_unity(4).to_complex() - 1j) < 1e-15
    assert abs(z6.to_complex() - cmath.exp(1j * cmath.pi / 3)) < 1e-12


def test_conductor_rules():
    # nested conductors lift, others are refused
    assert (root_of_unity(2) - root_of_unity(6, 3)).is_zero()
    with pytest.raises(ConductorMismatch):
        root_of_unity(4) + z6


def test_canonical_equality():
    a = z6 * z6
    b = z6 - 1
    assert a == b
    assert a.coeffs == b.coeffs


@given(st.lists(st.integers(-3, 3), min_size=12, max_size=12),
       st.lists(st.integers(-3, 3), min_size=12, max_size=12))
def test_matmul_agrees_with_float(xs, ys):
    A = CycloMatrix.from_exponents(6, np.array(xs).reshape(3, 4) % 6, np.array(xs).reshape(3, 4) != 0)
    B = CycloMatrix.from_exponents(6, np.array(ys).reshape(4, 3) % 6)
    assert np.allclose((A @ B).to_complex(), A.to_complex() @ B.to_complex())
    assert np.allclose(A.H.to_complex(), A.to_complex().conj().T)


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=6, max_size=6))
def test_rational_matrices(vals):
    M = CycloMatrix.from_rationals(np.array(vals, dtype=object).reshape(2, 3).tolist())
    assert M.rational_values().tolist() == np.array(vals, dtype=object).reshape(2, 3).tolist()
    assert (M - M).is_zero()


def test_stack_and_index():
    I = CycloMatrix.identity(2, 6)
    S = hstack([I, I.scale(Fraction(1, 2))])
    assert S.shape == (2, 4)
    assert S[1, 3].is_rational() == Fraction(1, 2)
    assert S[[0], [0, 2]].shape == (1, 2)
