from fractions import Fraction

import numpy as np
import pytest

from hyperetf import designs, etf, seeds
from hyperetf.cyclo import CycloMatrix
from hyperetf.designs import IncidenceMatrix
from hyperetf.errors import (BadHadamard, ConditionViolated, NonconstantColumnSum, NotAffineForm,
                             NotDecomposedForm, PreconditionViolated, SizeMismatch, UnsupportedOrder)
from hyperetf.frame import FrameMatrix, SpanSpec
from hyperetf.golden import (STEINER_6X16, DESIGN_FLAT_6X10, AFFINE_PLANE_2, FANO_PLANE, SIMPLEX_3X4,
                             HYPEROVAL_6X10, AFFINE_PLANE_BLOCKED, DUAL_PLANE_BLOCKED, FLAT_6X10, EXTENDED_6X16)
from hyperetf.surd import Surd
from hyperetf.verify import certify, welch_bound_sq

from oracles import flat_real_admissible, float_etf_report


def test_embeddings_of_affine_plane():
    embs = etf.embeddings_from(AFFINE_PLANE_2)
    assert [e.support for e in embs] == [(0, 2, 4), (0, 3, 5), (1, 2, 5), (1, 3, 4)]
    assert all(e.matrix().shape == (6, 3) for e in embs)
    for a in range(4):
        for b in range(a + 1, 4):
            P = (embs[a].matrix().H @ embs[b].matrix()).rational_values()
            assert sum(x for row in P for x in row) == 1  # a single 1: rank one


def test_embeddings_of_identity():
    embs = etf.embeddings_from(IncidenceMatrix(np.eye(3, dtype=int)))
    assert [e.support for e in embs] == [(0,), (1,), (2,)]
    with pytest.raises(NonconstantColumnSum):
        etf.embeddings_from(IncidenceMatrix([[1, 1], [1, 0]]))


def test_steiner_reproduces_reference_matrix():
    f = etf.steiner_etf(AFFINE_PLANE_2, SIMPLEX_3X4)
    assert f.data == STEINER_6X16


def test_steiner_degenerate_and_size_checks():
    S = seeds.unimodular_simplex(2)
    X = IncidenceMatrix([[1]] * 3)
    assert etf.steiner_etf(X, S, allow_degenerate=True).data == S
    with pytest.raises(SizeMismatch):
        etf.steiner_etf(AFFINE_PLANE_2, seeds.unimodular_simplex(4))


def test_steiner_fano_with_dft_simplex():
    S = seeds.unimodular_simplex(2, seeds.dft_hadamard(4))
    f = etf.steiner_etf(FANO_PLANE, S)
    c = certify(f)
    assert f.shape == (7, 28) and c.is_etf
    assert c.coherence_sq == welch_bound_sq(28, 7)


def test_hyperoval_q2():
    f = etf.hyperoval_etf(2)
    assert f.data == HYPEROVAL_6X10 and f.span == SpanSpec.zero_sum_tail(6, 3)
    p = etf.hyperoval_etf(2, "projective")
    c = certify(p)
    assert p.shape == (7, 16) and c.is_etf and c.span_dim == 6
    assert p.span == SpanSpec.zero_sum_tail(7, 4)


def test_hyperoval_with_user_plane():
    f = etf.hyperoval_etf(2, plane=FANO_PLANE, hyperoval=[0, 1, 2, 3])
    assert certify(f).is_etf
    with pytest.raises(SizeMismatch):
        etf.hyperoval_etf(4, plane=FANO_PLANE, hyperoval=[0, 1, 2, 3])


def test_unsupported_order():
    with pytest.raises(UnsupportedOrder):
        etf.hyperoval_etf(6)
    assert etf.hyperoval_params(4) == {"q": 4, "m": 20, "d": 19, "n": 76, "welch_sq": Fraction(1, 25)}


def test_flatten_q2():
    flat = etf.flatten(etf.hyperoval_etf(2))
    assert flat.data == FLAT_6X10
    assert certify(flat).is_etf
    with pytest.raises(NotAffineForm):
        etf.flatten(flat, AFFINE_PLANE_BLOCKED)
    with pytest.raises(NotAffineForm):
        etf.flatten(flat)


def test_flatten_rejects_bad_hadamard():
    Phi = etf.hyperoval_etf(2)
    H = CycloMatrix.from_rationals([[1, 1], [-1, 1]])
    with pytest.raises(BadHadamard):
        etf.flatten(Phi, H=H)


def test_extension_scalars():
    sc = etf.extension_scalars(6, 10, 5, "plus")
    assert sc.f == Surd.rational(Fraction(-1, 6)) and sc.g == Surd.rational(4)
    sc = etf.extension_scalars(6, 10, 5, "minus")
    assert sc.f == Surd.rational(Fraction(-1, 2))
    for branch in ("plus", "minus"):
        sc = etf.extension_scalars(10, 15, 8, branch)
        for lhs, rhs in sc.identities().values():
            assert lhs == rhs
    with pytest.raises(ConditionViolated):
        etf.extension_scalars(6, 10, 4)
    assert etf.welch_ratio_sq(6, 10, 5) == (Fraction(1, 900), Fraction(1, 900))


def test_extend_plus_and_minus():
    plus = etf.extend(FrameMatrix(DESIGN_FLAT_6X10, SpanSpec.zero_sum_all(6)), "plus")
    assert plus.data == EXTENDED_6X16
    minus = etf.extend(FrameMatrix(DESIGN_FLAT_6X10), "minus")
    tail = minus.data[:, list(range(10, 16))].rational_values().tolist()
    assert tail == [[-1 if i == j else 1 for j in range(6)] for i in range(6)]
    assert certify(minus).is_etf and certify(plus).is_etf


def test_extend_preconditions():
    with pytest.raises(PreconditionViolated):
        etf.extend(FrameMatrix(HYPEROVAL_6X10))  # zero entries
    with pytest.raises(PreconditionViolated):
        etf.extend(FrameMatrix(seeds.sylvester_hadamard(2)))  # square
    with pytest.raises(PreconditionViolated):
        etf.extend(FrameMatrix(SIMPLEX_3X4))  # rank 3 breaks the (m, n, d) relation


def test_extend_irrational_scalars_give_float_frame():
    flat = etf.flatten(etf.hyperoval_etf(4))
    ext = etf.extend(flat)
    assert not ext.exact and ext.shape == (20, 96)
    assert ext.sidecar.f.is_rational() is None
    c = certify(ext)
    assert c.is_etf and c.span_dim == 20
    assert float_etf_report(ext.to_complex())["is_etf"]


def test_admissible_parameters():
    assert etf.admissible_flat_params(5) == []
    assert etf.admissible_flat_params(6) == [(2, 6, 10)]
    assert etf.admissible_flat_params(20) == [(2, 6, 10), (4, 20, 76)]
    assert etf.admissible_flat_params(42)[-1] == (6, 42, 246)


def test_admissible_matches_brute_force_oracle():
    assert etf.admissible_flat_params(600) == flat_real_admissible(600)


def test_block_tightness():
    a = etf.general_block_tightness(AFFINE_PLANE_BLOCKED)
    p = etf.general_block_tightness(DUAL_PLANE_BLOCKED)
    assert a.tight and p.tight
    e1, e2 = etf.block_tightness_eigenvalues(3, 5)  # r = k + 2
    assert e1 != e2
    with pytest.raises(NotDecomposedForm):
        etf.general_block_tightness(AFFINE_PLANE_2)


def test_block_tightness_q4():
    X, F = designs.singer_projective_plane(2)
    Y, Z, _, _ = designs.dual_decomposition(X, designs.canonical_hyperoval(X, F))
    assert etf.general_block_tightness(Y).tight
    assert etf.general_block_tightness(Z).tight
