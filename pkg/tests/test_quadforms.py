import random
from fractions import Fraction

import pytest

from gsp4local.cyclo import v_ell
from gsp4local.quadforms import (JordanBlock, JordanForm, diagonalize_zl,
                                 equivalent_mod, eta_matrix,
                                 jordan_decompose, least_nonresidue,
                                 mat_det, mat_mul, ql_invariants,
                                 squarefree_class)


def _transpose(m):
    return [list(r) for r in zip(*m)]


def _random_symmetric(rng, n, bound=6):
    a = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)]
         for _ in range(n)]
    return [[a[i][j] + a[j][i] for j in range(n)] for i in range(n)]


def test_diagonalize_zl_congruence():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 4)
        ell = rng.choice((3, 5, 7))
        a = _random_symmetric(rng, n)
        d, lam = diagonalize_zl(a, ell)
        lhs = mat_mul(mat_mul(_transpose(d), [[lam[i] if i == j else 0
                                               for j in range(n)]
                                              for i in range(n)]), d)
        assert [list(r) for r in lhs] == [list(r) for r in a]
        assert v_ell(mat_det(d), ell) == 0  # unit determinant


def test_jordan_decompose_reconstruction():
    rng = random.Random(4)
    for _ in range(15):
        n = rng.randint(1, 4)
        ell = rng.choice((3, 5))
        a = _random_symmetric(rng, n)
        if mat_det(a) == 0:
            continue
        prec = 3
        d, j = jordan_decompose(a, ell, prec)
        q = ell ** prec
        recon = mat_mul(mat_mul(_transpose(d), j.as_matrix()), d)
        for i in range(n):
            for k in range(n):
                diff = recon[i][k] - Fraction(a[i][k])
                assert v_ell(diff, ell) >= prec or diff == 0


def test_jordan_block_shapes():
    b = JordanBlock(1, 2, "z")
    jf = JordanForm(3, (JordanBlock(0, 1, "one"), b))
    m = jf.as_matrix()
    assert len(m) == 3
    assert m[0][0] == 1
    assert m[1][1] == 3 and m[2][2] == 3 * least_nonresidue(3)


def test_equivalence_reflexive_and_unit_scaling():
    rng = random.Random(5)
    for _ in range(10):
        ell = rng.choice((3, 5))
        a = _random_symmetric(rng, 2)
        if mat_det(a) == 0:
            continue
        ok, _ = equivalent_mod(a, a, ell, 2)
        assert ok
        # scaling by a unit square preserves the class
        u2 = 4 if ell != 2 else 9
        scaled = [[u2 * x for x in row] for row in a]
        ok, witness = equivalent_mod(scaled, a, ell, 2)
        assert ok and witness is not None


def test_equivalence_detects_nonresidue_scaling():
    for ell in (3, 5, 7):
        z = least_nonresidue(ell)
        ok, _ = equivalent_mod([[1]], [[z]], ell, 1)
        assert not ok


def test_least_nonresidue():
    assert least_nonresidue(3) == 2
    assert least_nonresidue(5) == 2
    assert least_nonresidue(7) == 3
    assert least_nonresidue(11) == 2


def test_squarefree_class():
    assert squarefree_class(Fraction(4)) == 1
    assert squarefree_class(Fraction(18)) == 2
    assert squarefree_class(Fraction(-9, 4)) == -1
    assert squarefree_class(Fraction(12, 5)) == 15
    with pytest.raises(ValueError):
        squarefree_class(0)


def test_eta_matrix_shape_and_det():
    eta = eta_matrix(3, 1)
    assert len(eta) == 6 and all(len(r) == 6 for r in eta)
    # diagonal positive definite
    assert all(eta[i][i] > 0 for i in range(6))
    assert all(eta[i][j] == 0 for i in range(6) for j in range(6) if i != j)


def test_ql_invariants_are_class_functions():
    rng = random.Random(6)
    for _ in range(10):
        a = _random_symmetric(rng, 3)
        if mat_det(a) == 0:
            continue
        g = [[Fraction(rng.randint(-3, 3)) for _ in range(3)]
             for _ in range(3)]
        if mat_det(g) == 0:
            continue
        b = mat_mul(mat_mul(_transpose(g), a), g)
        for v in (3, 5, "inf"):
            ia, ib = ql_invariants(a, v), ql_invariants(b, v)
            assert ia.rank == ib.rank
            assert ia.disc == ib.disc
            assert ia.hasse == ib.hasse
            assert ia.hasse in (1, -1)
