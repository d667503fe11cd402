from fractions import Fraction

import pytest

from gsp4local.cyclo import CycNum
from gsp4local.gauss import e_ell
from gsp4local.localfactors import (DirichletChar, arch_coefficient,
                                    beta_level, char_integral_1d, dk_expand,
                                    fourier_coeff_at_ell, kappa_tilde,
                                    local_density, master_integral,
                                    master_total_symbolic, master_value,
                                    p_zeta_factor, zeta_at_ell_dividing_N)
from gsp4local.symell import SymbolicEll

I4 = [[1 if i == j else 0 for j in range(4)] for i in range(4)]


# ---------------------------------------------------------------------------
# master integral and the ell | N zeta factor
# ---------------------------------------------------------------------------

def test_master_symbolic_totals():
    assert master_total_symbolic(False).pin(1) == SymbolicEll.const(1)
    rep = master_integral(False)
    assert rep.total.eval(3) == master_value(3, False)


def test_master_value_anchor():
    assert master_value(3, False) == Fraction(61, 121)


def test_zeta_at_ell_anchor_and_nonvanishing():
    assert zeta_at_ell_dividing_N(3, 3, 1) == Fraction(61, 1089)
    for ell in (3, 5, 7, 11):
        assert zeta_at_ell_dividing_N(ell, ell, 1) != 0


# ---------------------------------------------------------------------------
# Dirichlet characters: group law, Gauss sums, character integrals
# ---------------------------------------------------------------------------

def _all_chars(p, cprime):
    from gsp4local.cyclo import euler_phi
    out = []
    for k in range(euler_phi(p ** cprime)):
        try:
            out.append(DirichletChar(p, cprime, k))
        except ValueError:  # imprimitive exponent at this conductor
            pass
    return out


def test_char_pointwise_group_law():
    p = 5
    for chi in _all_chars(p, 1):
        psi = chi.inverse()
        for u in range(1, p):
            assert chi(u) * psi(u) == CycNum.one()
        prod = chi * chi
        for u in range(1, p):
            assert prod(u) == chi(u) * chi(u)


def test_char_order_divides_group_order():
    for p, cprime in ((5, 1), (5, 2), (7, 1)):
        from gsp4local.cyclo import euler_phi
        phi = euler_phi(p ** cprime)
        for chi in _all_chars(p, cprime):
            assert phi % chi.order() == 0


def _gauss_brute(chi):
    """Defining sum G(chi) = sum_{u mod p^c'} chi(u) zeta_{p^c'}^u."""
    p, cp = chi.p, chi.cprime
    q = p ** cp
    total = CycNum.zero()
    for u in range(1, q):
        if u % p == 0:
            continue
        total = total + chi(u) * CycNum.zeta(q, u)
    return total


@pytest.mark.parametrize("p,cprime,k", [(5, 1, 1), (5, 1, 2), (5, 1, 3),
                                        (7, 1, 1), (5, 2, 1), (3, 2, 1)])
def test_gauss_sum_against_defining_sum(p, cprime, k):
    chi = DirichletChar(p, cprime, k)
    assert chi.gauss_sum() == _gauss_brute(chi)


def test_gauss_sum_modulus():
    # G(chi) G(chi^{-1}) = chi(-1) p^{c'} for primitive chi.
    for chi in (DirichletChar(5, 1, 1), DirichletChar(5, 2, 3),
                DirichletChar(7, 1, 2)):
        lhs = chi.gauss_sum() * chi.inverse().gauss_sum()
        rhs = chi(-1) * Fraction(chi.p ** chi.cprime)
        assert lhs == rhs


def _char_integral_brute(chi, c, extra_depth=2):
    """Riemann sum over Z_p^x at a level deep enough to be exact."""
    p = chi.p
    m = chi.cprime + max(0, -min(0, _v(c, p))) + extra_depth
    q = p ** m
    total = CycNum.zero()
    for z in range(1, q):
        if z % p == 0:
            continue
        total = total + chi(z) * e_ell(-Fraction(c) * z, p)
    return total * Fraction(1, q)


def _v(x, p):
    x = Fraction(x)
    if x == 0:
        return 10 ** 9
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


@pytest.mark.parametrize("chi", [DirichletChar.trivial(5),
                                 DirichletChar.legendre(5),
                                 DirichletChar(5, 1, 1)])
@pytest.mark.parametrize("c", [0, 1, 3, Fraction(1, 5), Fraction(2, 25),
                               Fraction(3, 5), 5])
def test_char_integral_vs_shell_sum_oracle(chi, c):
    assert char_integral_1d(chi, c) == _char_integral_brute(chi, c)


def test_kappa_tilde_twists_by_conductor_parity():
    p = 5
    leg = DirichletChar.legendre(p)
    for chi in _all_chars(p, 1):
        kt = kappa_tilde(chi)
        want = chi * leg if chi.cprime % 2 == 1 else chi
        for u in range(1, p):
            assert kt(u) == want(u)
    assert kappa_tilde(DirichletChar.trivial(p)).cprime == 0


# ---------------------------------------------------------------------------
# densities and the p-place factor
# ---------------------------------------------------------------------------

def test_density_scaling_matches_fourier_coefficient():
    n = beta_level(I4, 3) + 1
    d = local_density(3, 3, I4, n)
    f = fourier_coeff_at_ell(3, 3, I4)
    assert f == d * Fraction(1, 3 ** (14 * n))


def test_p_zeta_factor_trivial_case_anchor():
    triv = DirichletChar.trivial(5)
    assert p_zeta_factor(5, triv, triv, 2, 3) == \
        CycNum.from_rational(Fraction(16, 2109375))


def test_p_zeta_factor_is_cyclotomic_for_ramified_characters():
    chi = DirichletChar(5, 1, 1)
    v = p_zeta_factor(5, chi, DirichletChar.trivial(5), 2, 3)
    assert not v.is_zero()


# ---------------------------------------------------------------------------
# the monomial expansion and archimedean coefficient
# ---------------------------------------------------------------------------

def test_dk_expand_smallest_weights():
    e = dk_expand(3, 3)
    assert list(e.terms.values()) == [Fraction(1)]
    e2 = dk_expand(4, 3)
    assert len(e2.terms) == 6
    assert all(c == 1 for c in e2.terms.values())


def test_dk_expand_rejects_bad_weights():
    with pytest.raises(ValueError):
        dk_expand(3, 4)
    with pytest.raises(ValueError):
        dk_expand(2, 2)


def test_arch_coefficient_values():
    a = arch_coefficient(I4)
    assert (a.rational, a.pi_power) == (Fraction(64, 3), 8)
    neg = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
    assert arch_coefficient(neg).rational == 0
