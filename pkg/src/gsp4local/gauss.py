"""Generalized Gauss sums over Z/c and p-adic oscillatory integrals.

Conventions follow the additive character e_ell(x) = e(-2 i pi {x}_ell), so
G(a,b,c) = sum_j e(-2 i pi (a j^2 + b j)/c) lands in Z[zeta_c].  Every closed
form has a direct-summation oracle next to it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .cyclo import (CycNum, eps_sqrt, jacobi_symbol, mod_prime_power,
                    unit_part, v_ell, cyclotomic_poly)

RatLike = Union[int, Fraction]


# ---------------------------------------------------------------------------
# additive characters
# ---------------------------------------------------------------------------

def e_ell(x: RatLike, ell: int) -> CycNum:
    """e_ell(x) = e(-2 i pi {x}_ell), an ell-power root of unity."""
    x = Fraction(x)
    if x == 0:
        return CycNum.one()
    k = -v_ell(x, ell)
    if k <= 0:
        return CycNum.one()
    q = ell ** k
    t = mod_prime_power(x * q, ell, k)
    return CycNum.zeta(q, (-t) % q)


# ---------------------------------------------------------------------------
# generalized Gauss sums
# ---------------------------------------------------------------------------

def gauss_sum_oracle(a: int, b: int, c: int) -> CycNum:
    """Literal summation G(a,b,c) = sum_{j mod c} zeta_c^{-(a j^2 + b j)}."""
    if c <= 0:
        raise ValueError("modulus c must be positive")
    counts: dict[int, int] = {}
    for j in range(c):
        k = (-(a * j * j + b * j)) % c
        counts[k] = counts.get(k, 0) + 1
    return CycNum(c, {k: Fraction(v) for k, v in counts.items()})


def gauss_sum_closed(a: int, b: int, c: int) -> CycNum:
    """G(a,b,c) by the two reduction properties.

    Property (1): with g = (a,c), the sum is g*G(a/g, b/g, c/g) when g | b and
    0 otherwise.  Property (2) (odd reduced modulus): epsilon(c)*sqrt(c) times a
    Jacobi symbol and a root of unity; the representative of a mod c is shifted
    to an odd one, which leaves the sum unchanged and puts every odd-modulus
    case in the closed-form regime.  Even reduced modulus falls back to the
    oracle.
    """
    if c <= 0:
        raise ValueError("modulus c must be positive")
    g = math.gcd(abs(a), c)
    if g == 0:  # a = 0 and c = 0 cannot happen (c > 0); a = 0 gives g = c
        g = c
    if b % g:
        return CycNum.zero()
    a2, b2, c2 = a // g, b // g, c // g
    if c2 == 1:
        return CycNum.from_rational(g)
    if c2 % 2 == 1:
        a2 %= c2
        if a2 % 2 == 0:
            a2 += c2  # same value of the sum, odd representative
        t = (pow(4 * a2, -1, c2) * b2 * b2) % c2
        s = jacobi_symbol(-a2, c2)
        val = eps_sqrt(c2) * CycNum.zeta(c2, t)
        return val * (g * s)
    return gauss_sum_oracle(a2 % c2, b2 % c2, c2) * g


# ---------------------------------------------------------------------------
# batch verification (the closed-vs-oracle sweep), numpy-accelerated
# ---------------------------------------------------------------------------

def _reduction_matrix(c: int) -> np.ndarray:
    """Integer matrix R (c x deg Phi_c): row j = coefficients of x^j mod Phi_c."""
    phi = cyclotomic_poly(c)
    deg = len(phi) - 1
    rows: List[List[int]] = []
    for j in range(c):
        if j < deg:
            row = [0] * deg
            row[j] = 1
        else:
            # x * (previous row), reduced
            prev = rows[j - 1]
            row = [0] + prev[:-1]
            lead = prev[-1]
            if lead:
                for i in range(deg):
                    row[i] -= lead * phi[i]
        rows.append(row)
    arr = np.array(rows, dtype=np.int64)
    assert np.abs(arr).max() < 2 ** 31, "reduction matrix overflow guard"
    return arr


def verify_gauss_closed_batch(c: int, bound: int = 60) -> int:
    """Count mismatches between closed form and oracle for all |a|,|b| <= bound
    at the given modulus c.  Exact integer arithmetic throughout; returns 0
    when the closed form is correct."""
    R = _reduction_matrix(c)
    avals = np.arange(-bound, bound + 1)
    bvals = np.arange(-bound, bound + 1)
    j = np.arange(c)
    nb = len(bvals)

    # shift tables: canonical vector of zeta_c^{t*step} * (embedded QG_{c2})
    shift_tables: dict[int, np.ndarray] = {}
    fallback_cache: dict[tuple, np.ndarray] = {}

    def table_for(c2: int) -> np.ndarray:
        if c2 not in shift_tables:
            step = c // c2
            base = np.zeros(c, dtype=np.int64)
            for jj in range(c2):
                base[(jj * jj % c2) * step] += 1
            rolled = np.empty((c2, c), dtype=np.int64)
            for t in range(c2):
                rolled[t] = np.roll(base, t * step)
            shift_tables[c2] = rolled @ R
        return shift_tables[c2]

    mismatches = 0
    for a in avals:
        a = int(a)
        expo = (-(a * j * j + bvals[:, None] * j)) % c  # (nb, c)
        counts = np.zeros((nb, c), dtype=np.int64)
        np.add.at(counts, (np.arange(nb)[:, None], expo), 1)
        canon_oracle = counts @ R  # (nb, deg)

        g = math.gcd(abs(a), c)
        a2, c2 = a // g, c // g
        for bi, b in enumerate(bvals):
            b = int(b)
            if b % g:
                closed = np.zeros(R.shape[1], dtype=np.int64)
            elif c2 == 1:
                closed = g * R[0]
            elif c2 % 2 == 1:
                b2 = b // g
                aa = a2 % c2
                if aa % 2 == 0:
                    aa += c2
                t = (pow(4 * aa, -1, c2) * b2 * b2) % c2
                s = jacobi_symbol(-aa, c2)
                closed = (g * s) * table_for(c2)[t]
            else:
                b2 = b // g
                key = (a2 % c2, b2 % c2, c2)
                if key not in fallback_cache:
                    step = c // c2
                    jj = np.arange(c2)
                    ee = (-(key[0] * jj * jj + key[1] * jj)) % c2
                    cnt = np.bincount(ee * step, minlength=c)
                    fallback_cache[key] = cnt.astype(np.int64) @ R
                closed = g * fallback_cache[key]
            if not np.array_equal(closed, canon_oracle[bi]):
                mismatches += 1
    return mismatches


# ---------------------------------------------------------------------------
# p-adic oscillatory integrals
# ---------------------------------------------------------------------------

def _check_odd_prime(ell: int) -> None:
    if ell == 2:
        raise ValueError("ell = 2 is out of scope (level and p are odd)")
    if ell < 2 or any(ell % d == 0 for d in range(2, int(ell ** 0.5) + 1)):
        raise ValueError(f"{ell} is not prime")


def vanishing_1d(ell: int, a: RatLike, b: RatLike, r: RatLike = 0,
                 vS: int = 0) -> bool:
    """The 1-d vanishing criterion min(v(a S^2), 0) > v((2ar+b) S)."""
    a, b, r = Fraction(a), Fraction(b), Fraction(r)
    lin = 2 * a * r + b
    lhs = min(v_ell(a, ell) + 2 * vS, 0)
    rhs = v_ell(lin, ell) + vS
    return lhs > rhs


def stabilization_bound(ell: int, a: RatLike, b: RatLike, r: RatLike = 0,
                        vS: int = 0) -> int:
    """Smallest Riemann-sum precision M beyond which the sum is the integral."""
    a, b, r = Fraction(a), Fraction(b), Fraction(r)
    terms = [1 - vS, vS]
    if a:
        va = v_ell(a, ell)
        terms.append(2 - 2 * vS - va)
        terms.append(-va - vS)  # integrality of the quadratic Gauss parameter
    if b:
        terms.append(1 - vS - v_ell(b, ell))
    lin = 2 * a * r + b
    if lin:
        terms.append(-v_ell(lin, ell))  # integrality of the linear parameter
    return max(terms)


def padic_integral_1d(ell: int, a: RatLike, b: RatLike, r: RatLike = 0,
                      vS: int = 0, M: Optional[int] = None) -> CycNum:
    """The oscillatory integral int_{r+S} e_ell(a x^2 + b x) dx, S = ell^vS Zl.

    Evaluated exactly through the finite Gauss-sum reduction at precision M
    (default: the stabilization bound).  The result is cross-checked against
    the vanishing criterion; a disagreement raises, since the criterion is
    stated as a biconditional and any counterexample must surface loudly.
    """
    _check_odd_prime(ell)
    a, b, r = Fraction(a), Fraction(b), Fraction(r)
    M0 = stabilization_bound(ell, a, b, r, vS)
    if M is None:
        M = M0
    elif M < M0:
        raise ValueError(f"precision M={M} below stabilization bound {M0}")
    C = ell ** (M - vS)
    A = mod_prime_power(a * Fraction(ell) ** (M + vS), ell, M - vS) if a else 0
    lin = 2 * a * r + b
    B = mod_prime_power(lin * Fraction(ell) ** M, ell, M - vS) if lin else 0
    val = gauss_sum_closed(A, B, C) * e_ell(a * r * r + b * r, ell)
    val = val * Fraction(1, ell ** M) if M >= 0 else val * (ell ** (-M))
    vanishes = vanishing_1d(ell, a, b, r, vS)
    if vanishes != val.is_zero():
        raise RuntimeError(
            f"vanishing criterion counterexample at ell={ell}, a={a}, b={b}, "
            f"r={r}, vS={vS}: criterion={vanishes}, value={val}")
    return val


def padic_integral_riemann(ell: int, a: RatLike, b: RatLike, r: RatLike = 0,
                           vS: int = 0, M: Optional[int] = None,
                           term_budget: int = 400_000) -> CycNum:
    """Literal Riemann sum ell^-M sum_{j mod ell^(M-vS)} e_ell(a x_j^2 + b x_j)
    with x_j = r + ell^vS j; the reference oracle."""
    _check_odd_prime(ell)
    a, b, r = Fraction(a), Fraction(b), Fraction(r)
    if M is None:
        M = stabilization_bound(ell, a, b, r, vS)
    count = ell ** (M - vS)
    if count > term_budget:
        raise ValueError(f"Riemann oracle budget exceeded: {count} terms")
    s = Fraction(ell) ** vS
    A2, A1, A0 = a * s * s, 2 * a * r * s + b * s, a * r * r + b * r
    vmin = min(v_ell(x, ell) for x in (A2, A1, A0) if x != 0) if any((A2, A1, A0)) else 0
    e = max(0, -vmin) if vmin != math.inf else 0
    q = ell ** e
    a2 = mod_prime_power(A2 * q, ell, e) if A2 else 0
    a1 = mod_prime_power(A1 * q, ell, e) if A1 else 0
    a0 = mod_prime_power(A0 * q, ell, e) if A0 else 0
    jj = np.arange(count, dtype=object) if q * count > 2 ** 40 else np.arange(count, dtype=np.int64)
    tv = (a2 * jj * jj + a1 * jj + a0) % q
    if tv.dtype == object:
        counts: dict[int, int] = {}
        for t in tv:
            counts[int(t)] = counts.get(int(t), 0) + 1
    else:
        bc = np.bincount(tv.astype(np.int64), minlength=q)
        counts = {int(k): int(v) for k, v in enumerate(bc) if v}
    val = CycNum(q, {(-t) % q: Fraction(n) for t, n in counts.items()})
    return val * Fraction(1, ell ** M) if M >= 0 else val * (ell ** (-M))


# ---------------------------------------------------------------------------
# higher-dimensional integrals
# ---------------------------------------------------------------------------

def padic_integral_nd(ell: int, a: Sequence[Sequence[RatLike]],
                      b: Sequence[RatLike], r: Sequence[RatLike],
                      vS: int = 0) -> CycNum:
    """int_{r+S} e_ell(x^t a x + b^t x) dx over a standard block S = ell^vS Zl^n.

    Diagonalizes a = D^t diag(lam) D with D in GL_n(Zl); in the rotated
    coordinates y = D x the domain is D r + S, the linear form becomes
    D^-t b, and the integral splits into a product of 1-d integrals.
    """
    from .quadforms import diagonalize_zl  # deferred: quadforms imports gauss-free cyclo
    n = len(b)
    A = [[Fraction(x) for x in row] for row in a]
    if any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
        raise ValueError("quadratic coefficient matrix must be symmetric")
    D, lam = diagonalize_zl(A, ell)
    Dinv_t_b = _solve_transpose(D, [Fraction(x) for x in b])
    r2 = [sum(D[i][j] * Fraction(r[j]) for j in range(n)) for i in range(n)]
    out = CycNum.one()
    for k in range(n):
        out = out * padic_integral_1d(ell, lam[k], Dinv_t_b[k], r2[k], vS)
        if out.is_zero():
            return out
    return out


def _solve_transpose(D: List[List[Fraction]], b: List[Fraction]) -> List[Fraction]:
    """Solve D^t x = b exactly (i.e. x = D^-t b)."""
    n = len(b)
    aug = [[D[j][i] for j in range(n)] + [b[i]] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for rr in range(n):
            if rr != col and aug[rr][col]:
                f = aug[rr][col]
                aug[rr] = [v - f * w for v, w in zip(aug[rr], aug[col])]
    return [aug[i][n] for i in range(n)]


def padic_integral_matrix(ell: int, a, b, eta: Sequence[RatLike], r=None,
                          vS: Union[int, Sequence[int]] = 0) -> CycNum:
    """int_{r+S} e_ell(tr(x^t a x eta' + b^t x)) dx for diagonal eta'.

    x runs over n x m matrices; the integral factors over columns j with
    quadratic part eta'_j * a and linear part the j-th column of b.  S is
    columnwise standard: column j is ell^{vS_j} Zl^n.
    """
    m = len(eta)
    n = len(a)
    if any(Fraction(x) == 0 for x in eta):
        raise ValueError("eta' must have nonzero diagonal entries")
    if r is None:
        r = [[0] * m for _ in range(n)]
    vs = [vS] * m if isinstance(vS, int) else list(vS)
    out = CycNum.one()
    for j in range(m):
        aj = [[Fraction(eta[j]) * Fraction(a[i][k]) for k in range(n)] for i in range(n)]
        bj = [Fraction(b[i][j]) for i in range(n)]
        rj = [Fraction(r[i][j]) for i in range(n)]
        out = out * padic_integral_nd(ell, aj, bj, rj, vs[j])
        if out.is_zero():
            return out
    return out
