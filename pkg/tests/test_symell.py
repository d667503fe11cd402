from fractions import Fraction

from hypothesis import given, strategies as st

from gsp4local.symell import (RatFunc, SymbolicEll, poly_divmod, poly_eval,
                              poly_gcd, poly_mul)

small = st.integers(min_value=-6, max_value=6)
coeff_lists = st.lists(small.map(Fraction), min_size=1, max_size=4)


@given(coeff_lists, coeff_lists, small)
def test_poly_mul_eval(a, b, x):
    assert poly_eval(poly_mul(a, b), Fraction(x)) == \
        poly_eval(a, Fraction(x)) * poly_eval(b, Fraction(x))


def _trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


@given(coeff_lists, coeff_lists)
def test_poly_divmod_identity(a, b):
    b = _trim(b)
    if not b:
        return
    q, r = poly_divmod(a, b)
    lhs = poly_eval(a, Fraction(7))
    rhs = (poly_eval(q, Fraction(7)) * poly_eval(b, Fraction(7))
           + poly_eval(r, Fraction(7)))
    assert lhs == rhs


@given(coeff_lists, coeff_lists)
def test_poly_gcd_divides(a, b):
    a, b = _trim(a), _trim(b)
    g = _trim(list(poly_gcd(a, b)))
    if not g:
        return
    for p in (a, b):
        _, r = poly_divmod(p, g)
        assert all(c == 0 for c in r)


def test_ratfunc_field_axioms():
    x = RatFunc.x()
    f = (x ** 2 - 1) / (x - 1)
    assert f == x + 1  # cancellation is automatic
    assert (f - f).is_zero()
    g = 1 / (x + 2)
    assert (g * (x + 2)) == RatFunc.const(1)


@given(small, small)
def test_ratfunc_eval_matches_fractions(a, b):
    x = RatFunc.x()
    f = (RatFunc.const(a) * x + b) / (x ** 2 + 1)
    for v in (0, 1, 2, -3):
        assert f.eval(v) == Fraction(a * v + b, v * v + 1)


def test_symbolic_eps_branches():
    e = SymbolicEll.eps()
    assert e.pin(1) == SymbolicEll.const(1)
    assert e.pin(-1) == SymbolicEll.const(-1)
    assert (e * e) == SymbolicEll.const(1)
    # eval chooses the branch by the residue of ell mod 4
    assert e.eval(5) == 1 and e.eval(7) == -1


def test_symbolic_arithmetic_and_eval():
    L = SymbolicEll.ell()
    f = (L ** 5 - 1) / (L - 1)
    for ell in (3, 5, 7, 11):
        assert f.eval(ell) == Fraction(ell ** 5 - 1, ell - 1)
    mixed = SymbolicEll.eps() * L + 1
    assert mixed.eval(5) == 6 and mixed.eval(3) == -2


def test_json_roundtrip():
    L = SymbolicEll.ell()
    for expr in (L ** 2 / (L - 1), SymbolicEll.eps() * (L + 1),
                 SymbolicEll.const(Fraction(-3, 7))):
        assert SymbolicEll.from_json(expr.to_json()) == expr
