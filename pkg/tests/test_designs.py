import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperetf import designs
from hyperetf.designs import IncidenceMatrix, verify_bibd
from hyperetf.errors import BadRowChoice, NotBibd, NotHyperoval, OddOrder
from hyperetf.golden import (AFFINE_PLANE_2, FANO_PLANE, AFFINE_PLANE_BLOCKED, DUAL_PLANE_BLOCKED,
                             AFFINE_PLANE_BY_CLASS)

from oracles import bibd_params, no_three_collinear


@pytest.fixture(scope="module")
def planes():
    return {e: designs.singer_projective_plane(e) for e in (1, 2, 3)}


def test_bibd_parameters_of_small_planes():
    assert tuple(verify_bibd(AFFINE_PLANE_2)) == (4, 2, 1, 3, 6)
    assert tuple(verify_bibd(FANO_PLANE)) == (7, 3, 1, 3, 7)
    assert tuple(verify_bibd(IncidenceMatrix([[1]]))) == (1, 1, 1, 1, 1)


def test_degenerate_single_vertex_design():
    # three blocks on one vertex: v = k = lambda = 1, b = r = 3
    assert tuple(verify_bibd(IncidenceMatrix([[1], [1], [1]]))) == (1, 1, 1, 3, 3)
    assert tuple(verify_bibd(IncidenceMatrix([[1, 1, 1]]))) == (3, 3, 1, 1, 1)


def test_not_bibd_reasons():
    with pytest.raises(NotBibd, match="row"):
        verify_bibd(IncidenceMatrix([[1, 1, 0], [1, 0, 0]]))
    with pytest.raises(NotBibd, match="column"):
        verify_bibd(IncidenceMatrix([[1, 1, 0], [1, 1, 0]]))
    with pytest.raises(NotBibd):
        verify_bibd(designs.dual(AFFINE_PLANE_2))


def test_singer_planes(planes):
    X1, _ = planes[1]
    X2, _ = planes[2]
    X3, _ = planes[3]
    assert np.flatnonzero(X2.bits[0]).tolist() == [3, 6, 7, 12, 14]
    assert np.flatnonzero(X1.bits[0]).tolist() == [1, 2, 4]
    assert tuple(verify_bibd(X1)) == (7, 3, 1, 3, 7)
    assert tuple(verify_bibd(X3)) == (73, 9, 1, 9, 73)
    assert bibd_params(X2.bits) == tuple(verify_bibd(X2))


def test_dual():
    assert designs.dual(designs.dual(AFFINE_PLANE_2)) == AFFINE_PLANE_2
    assert tuple(verify_bibd(designs.dual(FANO_PLANE)))[:3] == (7, 3, 1)


def test_hyperovals(planes):
    for e, size in ((1, 4), (2, 6), (3, 10)):
        X, F = planes[e]
        s = designs.canonical_hyperoval(X, F)
        assert len(s) == size and designs.is_hyperoval(X, s)
        assert no_three_collinear(X.bits, s)
    X2, F2 = planes[2]
    assert designs.canonical_hyperoval(X2, F2) == [0, 1, 2, 3, 5, 14]
    assert designs.is_hyperoval(FANO_PLANE, [0, 1, 2, 3])
    assert not designs.is_hyperoval(FANO_PLANE, [0, 1, 4, 5])  # 0, 1, 4 lie on block 0


def test_hyperoval_decomposition_q2():
    X, dec = designs.hyperoval_decomposition(FANO_PLANE, [0, 1, 2, 3])
    assert X == FANO_PLANE
    X11, X12, X21, X22 = dec.blocks(X)
    assert X22.bits.tolist() == [[1, 1, 1]]
    assert dec.undo(X) == FANO_PLANE


def test_hyperoval_decomposition_q4(planes):
    X, F = planes[2]
    Y, dec = designs.hyperoval_decomposition(X, [0, 1, 2, 3, 5, 14])
    X11, _, X21, X22 = dec.blocks(Y)
    assert X11.bits.shape == (15, 6) and X22.bits.shape == (6, 15)
    assert not X21.bits.any()
    with pytest.raises(NotHyperoval):
        designs.hyperoval_decomposition(X, [0, 1, 2, 3, 4, 5])


def test_odd_order_rejected():
    # projective plane of order 3 from the difference set {0, 1, 3, 9} mod 13
    D = np.zeros(13, dtype=bool)
    D[[0, 1, 3, 9]] = True
    X = IncidenceMatrix(D[(np.arange(13)[None, :] - np.arange(13)[:, None]) % 13])
    with pytest.raises(OddOrder):
        designs.hyperoval_decomposition(X, [0, 1, 2, 3, 4])


def test_dual_decomposition_reproduces_reference_pair(planes):
    Y, Z, _, _ = designs.dual_decomposition(FANO_PLANE, [0, 1, 2, 3])
    assert Y == DUAL_PLANE_BLOCKED and Z == AFFINE_PLANE_BLOCKED
    X1, F1 = planes[1]
    Y1, Z1, _, _ = designs.dual_decomposition(X1, designs.canonical_hyperoval(X1, F1))
    assert Y1 == DUAL_PLANE_BLOCKED and Z1 == AFFINE_PLANE_BLOCKED
    with pytest.raises(BadRowChoice):
        designs.dual_decomposition(FANO_PLANE, [0, 1, 2, 3], removed_row=0)


@pytest.mark.parametrize("row", [3, 4, 5, 6])
def test_every_allowed_removed_row_gives_affine_plane(row):
    _, Z, _, _ = designs.dual_decomposition(FANO_PLANE, [0, 1, 2, 3], removed_row=row)
    assert bibd_params(Z.bits) == (4, 2, 1, 3, 6)


def test_q4_affine_plane(planes):
    X, F = planes[2]
    _, Z, _, _ = designs.dual_decomposition(X, designs.canonical_hyperoval(X, F))
    assert Z.bits.shape == (20, 16)
    assert bibd_params(Z.bits) == (16, 4, 1, 5, 20)
    pc = designs.parallel_classes(Z)
    assert [len(c) for c in pc.classes] == [4] * 5


def test_parallel_classes():
    assert designs.parallel_classes(AFFINE_PLANE_2).classes == ((0, 1), (2, 3), (4, 5))
    pc = designs.parallel_classes(AFFINE_PLANE_BLOCKED, bottom=3)
    assert AFFINE_PLANE_BLOCKED.permuted(pc.row_order(), range(4)) == AFFINE_PLANE_BY_CLASS


def test_extension_and_restriction_are_inverse():
    X = designs.projective_extension(AFFINE_PLANE_2)
    assert tuple(verify_bibd(X)) == (7, 3, 1, 3, 7)
    Z = designs.affine_restriction(X, X.b - 1)
    assert Z == AFFINE_PLANE_2


def test_ascii_and_json_roundtrip(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text(DUAL_PLANE_BLOCKED.to_ascii())
    assert designs.load_incidence(p) == DUAL_PLANE_BLOCKED
    p.write_text(DUAL_PLANE_BLOCKED.to_json())
    assert designs.load_incidence(p) == DUAL_PLANE_BLOCKED


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(7)), st.permutations(range(7)))
def test_bibd_parameters_survive_relabelling(rp, cp):
    X = FANO_PLANE.permuted(rp, cp)
    assert tuple(verify_bibd(X)) == (7, 3, 1, 3, 7)
    assert tuple(verify_bibd(designs.dual(X))) == (7, 3, 1, 3, 7)
