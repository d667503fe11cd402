from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gsp4local.cyclo import (CycNum, cyclotomic_poly, epsilon4, euler_phi,
                             hilbert_symbol, jacobi_symbol, mod_prime_power,
                             parse_frac, quad_gauss, unit_part, v_ell)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def test_zeta_roots_of_unity():
    for m in (3, 4, 5, 7, 9, 12):
        z = CycNum.zeta(m, 1)
        assert (z ** m).is_rational() and (z ** m).c == {0: Fraction(1)}
        for k in range(1, m):
            assert (z ** k) != CycNum.one()  # primitive


def test_inverse_and_embed():
    z = CycNum.zeta(7, 3)
    assert (z * z.inv()) == CycNum.one()
    w = CycNum.zeta(3, 1).embed(12)
    assert w.m == 12
    assert w == CycNum.zeta(3, 1).embed(12)


@given(rationals, rationals)
def test_rational_subfield_homomorphism(a, b):
    A, B = CycNum.from_rational(a), CycNum.from_rational(b)
    assert (A + B) == CycNum.from_rational(a + b)
    assert (A * B) == CycNum.from_rational(a * b)


def test_canonical_basis_collapse():
    # z6 = -z3^2, so arithmetic in Q(zeta_6) lands in the zeta_3 lattice.
    z6 = CycNum.zeta(6, 1)
    assert z6 + z6.inv() == CycNum.one()


@given(st.integers(min_value=-200, max_value=200).filter(lambda x: x != 0))
def test_v_ell_unit_part(x):
    for ell in (2, 3, 5):
        v = v_ell(x, ell)
        u = unit_part(x, ell)
        assert Fraction(x) == u * Fraction(ell) ** v
        assert v_ell(u, ell) == 0


def test_jacobi_matches_legendre():
    for p in (3, 5, 7, 11):
        squares = {pow(a, 2, p) for a in range(1, p)}
        for a in range(1, p):
            expected = 1 if a in squares else -1
            assert jacobi_symbol(a, p) == expected


def test_hilbert_product_formula():
    # prod_v (a, b)_v = 1 over all places, for a selection of pairs.
    for a, b in [(2, 3), (-1, -1), (5, -2), (6, 10), (-3, 7)]:
        places = {"inf"}
        for x in (a, b):
            n = abs(x)
            d = 2
            while d * d <= n:
                if n % d == 0:
                    places.add(d)
                    while n % d == 0:
                        n //= d
                d += 1
            if n > 1:
                places.add(n)
        places.add(2)
        prod = 1
        for v in places:
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1


def test_epsilon4_fourth_root():
    for m in (1, 3, 5, 7, 9, 11, 13):
        e = epsilon4(m)
        assert (e ** 4) == CycNum.one()
        # epsilon4(m)^2 = (-1/m)
        sq = e * e
        want = CycNum.from_rational(jacobi_symbol(-1, m))
        assert sq == want


def test_quad_gauss_square():
    # G(1; c)^2 = (-1/c) c for odd c.
    for c in (3, 5, 7, 9, 11):
        g = quad_gauss(c)
        assert g * g == CycNum.from_rational(jacobi_symbol(-1, c) * c)


def test_mod_prime_power_and_parse():
    assert mod_prime_power(Fraction(7, 3), 5, 2) == (7 * pow(3, -1, 25)) % 25
    assert parse_frac("-3/4") == Fraction(-3, 4)
    with pytest.raises(ValueError):
        mod_prime_power(Fraction(1, 5), 5, 2)


def test_cyclotomic_poly_degree():
    for m in (1, 2, 3, 4, 6, 8, 12, 15):
        coeffs = cyclotomic_poly(m)
        assert len(coeffs) - 1 == euler_phi(m)
        assert coeffs[-1] == 1  # monic
