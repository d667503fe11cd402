import itertools
from fractions import Fraction

import pytest

from gsp4local.orth import (class_volume, gl_order, orth_order_block,
                            orth_order_lift, orth_order_mod_ell)
from gsp4local.quadforms import JordanBlock, JordanForm, least_nonresidue


def _brute_orth(diag, q):
    """Count g in GL_n(Z/q) with g^t diag g = diag, by full enumeration."""
    n = len(diag)
    count = 0
    for flat in itertools.product(range(q), repeat=n * n):
        g = [flat[i * n:(i + 1) * n] for i in range(n)]
        ok = True
        for i in range(n):
            for j in range(i, n):
                s = sum(g[k][i] * diag[k] * g[k][j] for k in range(n)) % q
                if s != (diag[i] if i == j else 0) % q:
                    ok = False
                    break
            if not ok:
                break
        if ok and _det_unit(g, q):
            count += 1
    return count


def _det_unit(g, q):
    n = len(g)
    if n == 1:
        d = g[0][0]
    elif n == 2:
        d = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    else:
        raise NotImplementedError
    from math import gcd
    return gcd(d % q, q) == 1


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_orth_order_n1(ell):
    # O_1 = {+-1}: order 2 at every level.
    assert orth_order_mod_ell("one", 1, ell).order == _brute_orth([1], ell)
    assert orth_order_lift(2, 1, 1, ell) == _brute_orth([1], ell ** 2)


@pytest.mark.parametrize("ell,typ", [(3, "one"), (3, "z"), (5, "one"),
                                     (5, "z")])
def test_orth_order_n2_mod_ell(ell, typ):
    z = least_nonresidue(ell) if typ == "z" else 1
    want = _brute_orth([1, z], ell)
    assert orth_order_mod_ell(typ, 2, ell).order == want


@pytest.mark.parametrize("ell,typ", [(3, "one"), (3, "z")])
def test_orth_order_n2_lift(ell, typ):
    z = least_nonresidue(ell) if typ == "z" else 1
    base = orth_order_mod_ell(typ, 2, ell).order
    assert orth_order_lift(base, 2, 1, ell) == _brute_orth([1, z], ell ** 2)


def test_gl_order_small():
    # #GL_2(Z/3) = (9-1)(9-3) = 48; lifting multiplies by 3^4 per level.
    assert gl_order(2, 3, 1) == 48
    assert gl_order(2, 3, 2) == 48 * 3 ** 4
    assert gl_order(1, 5, 3) == 4 * 25
    assert gl_order(4, 3, 1) == ((81 - 1) * (81 - 3) * (81 - 9) * (81 - 27))


def test_orth_order_block_unit_form():
    jf = JordanForm(3, (JordanBlock(0, 4, "one"),))
    assert orth_order_block(jf, 3, 1) == 1152  # #O(1_4, Z/3)


def test_class_volume_unit_form_anchor():
    jf = JordanForm(3, (JordanBlock(0, 4, "one"),))
    cv = class_volume(jf, 3)
    assert cv.volume == Fraction(260, 729)
    # I0 = |det|_ell * I, det is a unit here
    assert cv.I0 == cv.I


def test_class_volumes_sum_to_one_mod_ell():
    # Nonsingular classes mod ell plus the singular remainder: the
    # nonsingular part must total 1 - (singular proportion), and every
    # volume is positive.  Cross-check the mod-3 rank-4 unit/nonunit split.
    total = Fraction(0)
    for typ in ("one", "z"):
        jf = JordanForm(3, (JordanBlock(0, 4, typ),))
        v = class_volume(jf, 3).volume
        assert v > 0
        total += v
    # remaining mass belongs to forms singular mod 3
    assert 0 < total < 1
