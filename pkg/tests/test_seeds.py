import numpy as np

from hyperetf import seeds
from hyperetf.cyclo import CycloMatrix
from hyperetf.golden import SIMPLEX_3X4, COSIMPLEX_3X2


def signs(M):
    return np.real(M.to_complex()).round().astype(int).tolist()


def test_sylvester():
    assert signs(seeds.sylvester_hadamard(0)) == [[1]]
    assert signs(seeds.sylvester_hadamard(1)) == [[1, 1], [1, -1]]
    assert signs(seeds.sylvester_hadamard(2)) == [[1, 1, 1, 1], [1, -1, 1, -1],
                                                  [1, 1, -1, -1], [1, -1, -1, 1]]
    for e in range(5):
        assert seeds.is_hadamard(seeds.sylvester_hadamard(e))


def test_dft():
    assert signs(seeds.dft_hadamard(2)) == [[1, 1], [1, -1]]
    F4 = seeds.dft_hadamard(4).to_complex()
    assert np.allclose(F4 ** 4, 1)
    assert seeds.is_hadamard(seeds.dft_hadamard(4))
    F6 = seeds.dft_hadamard(6)
    assert F6[[2], :] == seeds.Q4_SIMPLEX[[0], :]
    assert F6[[4], :] == seeds.Q4_SIMPLEX[[1], :]


def test_simplices():
    assert seeds.unimodular_simplex(2) == SIMPLEX_3X4
    assert seeds.verify_simplex(SIMPLEX_3X4)
    assert seeds.verify_simplex(seeds.Q4_SIMPLEX)
    for q in (4, 6, 8):
        S = seeds.unimodular_simplex(q)
        assert S.shape == (q + 1, q + 2) and seeds.verify_simplex(S)
    assert seeds.unimodular_simplex(8).conductor == 10


def test_cosimplices():
    assert seeds.unimodular_cosimplex(2) == COSIMPLEX_3X2
    assert seeds.verify_cosimplex(COSIMPLEX_3X2)
    C4 = seeds.unimodular_cosimplex(4)
    assert signs(C4)[-1] == [-1, 1, 1, -1]
    assert seeds.verify_cosimplex(C4)
    assert seeds.verify_cosimplex(seeds.unimodular_cosimplex(8))


def test_broken_cosimplex():
    vals = signs(COSIMPLEX_3X2)
    vals[2][0] = -vals[2][0]
    C = CycloMatrix.from_rationals(vals)
    assert not seeds.verify_cosimplex(C)


def test_simplex_with_non_unimodular_entry_rejected():
    S = CycloMatrix.from_rationals([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, 2]])
    assert not seeds.verify_simplex(S)
