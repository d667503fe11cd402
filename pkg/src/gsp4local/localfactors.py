"""Closed-form local quantities: the two master integrals over Sym_4(Z_ell)
with their 8-case symbolic decomposition, the zeta factor at ell | N, local
densities / stabilized Fourier coefficients at ell | N, the p-place zeta
factor from Dirichlet-character data, the archimedean scalar coefficient, and
the D^kappa monomial expansion."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .cyclo import (CycNum, epsilon4, jacobi_symbol, mod_prime_power,
                    unit_part, v_ell)
from .gauss import e_ell
from .orth import orth_order_mod_ell
from .symell import EPS, L, SymbolicEll

RatLike = Union[int, Fraction]

SIGNATURES: Tuple[Tuple[int, ...], ...] = (
    (4,), (1, 3), (2, 2), (3, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1),
    (1, 1, 1, 1))


# ---------------------------------------------------------------------------
# master integrals over Sym_4(Z_ell)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MasterIntegralReport:
    case_sums: Dict[Tuple[int, ...], SymbolicEll]
    total: SymbolicEll
    weighted: bool


def _alpha_sym() -> SymbolicEll:
    le = L()
    return (le - 1) * (le ** 2 - 1) * (le ** 3 - 1) * (le ** 4 - 1)


def _type_factor(n: int) -> SymbolicEll:
    """Sum over the one/z block types of 1/#O(Lambda_i, Z/ell), symbolically.

    The two odd-size types share an order (factor 2); the even-size types
    differ in the (ell^m -+ eps^m) factor and are summed separately.
    """
    one = orth_order_mod_ell("one", n, 3).symbolic  # concrete ell unused
    if n % 2 == 1:
        return SymbolicEll.const(2) / one
    return SymbolicEll.const(1) / one \
        + SymbolicEll.const(1) / orth_order_mod_ell("z", n, 3).symbolic


def _case_sum(sig: Tuple[int, ...], weighted: bool) -> SymbolicEll:
    """Symbolic sum of I (or I0) over all exponents 0 <= k_1 < ... < k_r and
    block types with block sizes sig, via geometric series in the gap
    variables alpha_j (k_i = alpha_1 + ... + alpha_i)."""
    r = len(sig)
    # ell-exponent of I as a linear form const + sum_t coef[t] * k_t
    coef = []
    for t in range(r):
        c = -sig[t] * sum(sig[t + 1:]) - sig[t] * (sig[t] + 1) // 2
        if t == r - 1:
            c += 6
            c -= sum(sig[i] * sig[j] for i in range(r) for j in range(i))
            c -= sum(n * (n - 1) // 2 for n in sig)
        if weighted:
            c -= sig[t]
        coef.append(c)
    const = -4 - sum(sig[i] * sig[j] for i in range(r) for j in range(i))
    if weighted:
        # The displayed weighted family carries the weight
        # ell^{-sum (k_i + 1) n_i}; its eight case formulas and its total are
        # mutually consistent under this normalization (and only this one).
        const -= 4
    le = L()
    out = _alpha_sym() / le ** (-const)
    for n in sig:
        out = out * _type_factor(n)
    for j in range(r):
        m_eps = sum(sig[j:])
        m_ell = sum(coef[j:])
        assert m_ell < 0, "geometric ratio must shrink"
        q = (EPS() ** m_eps) / le ** (-m_ell)
        out = out * (q / (1 - q) if j else 1 / (1 - q))
    return out


def _display_targets(weighted: bool) -> Dict[Tuple[int, ...], SymbolicEll]:
    """The eight displayed case formulas (hard targets)."""
    le, ep = L(), EPS()
    a = _alpha_sym()
    if not weighted:
        top, big, mid, sml = le ** 10 - 1, ep * le ** 6 - 1, le ** 3 - 1, ep * le - 1
    else:
        top, big, mid, sml = le ** 14 - 1, ep * le ** 9 - 1, le ** 5 - 1, ep * le ** 2 - 1
    l2 = le ** 2 - 1
    return {
        (4,): le ** 6 * a / (top * l2 * (le ** 4 - 1)),
        (1, 3): le ** 2 * a / (top * big * l2),
        (2, 2): le ** 4 * a / (top * mid * l2 * l2),
        (3, 1): le ** 2 * a / (top * sml * l2),
        (1, 1, 2): le ** 2 * a / (top * big * mid * l2),
        (1, 2, 1): le ** 2 * a / (top * big * sml * l2),
        (2, 1, 1): le ** 2 * a / (top * mid * sml * l2),
        (1, 1, 1, 1): a / (top * big * mid * sml),
    }


def master_total_symbolic(weighted: bool) -> SymbolicEll:
    le, ep = L(), EPS()
    if weighted:
        return ((ep * le ** 6 - 1) * (le ** 3 - 1) * (le - 1)) / \
            ((le ** 7 - 1) * (le ** 5 - 1) * (ep * le ** 2 - 1))
    return ((ep * le ** 5 - 1) * (le - 1)) / ((le ** 5 - 1) * (ep * le - 1))


def master_integral(weighted: bool) -> MasterIntegralReport:
    """int_{Sym_4(Z_ell)} (-1/ell)^{v(det B)} dB (plain) or the same integral
    with an extra |det B|_ell weight, decomposed over the 8 exponent-signature
    cases.  Every case sum is asserted against the displayed closed form, and
    the total against the displayed global formula."""
    targets = _display_targets(weighted)
    case_sums: Dict[Tuple[int, ...], SymbolicEll] = {}
    total = SymbolicEll.const(0)
    for sig in SIGNATURES:
        s = _case_sum(sig, weighted)
        if s != targets[sig]:
            raise AssertionError(f"case {sig} mismatch (weighted={weighted})")
        case_sums[sig] = s
        total = total + s
    if total != master_total_symbolic(weighted):
        raise AssertionError(f"total mismatch (weighted={weighted})")
    return MasterIntegralReport(case_sums, total, weighted)


def master_value(ell: int, weighted: bool) -> Fraction:
    """The master integral at a concrete odd prime ell."""
    return master_total_symbolic(weighted).eval(ell)


# ---------------------------------------------------------------------------
# the zeta factor at ell | N
# ---------------------------------------------------------------------------

def det_eta(N: int, N1: int = 1) -> Fraction:
    """det of the 6x6 form diag(N^2/2 (x4), N/N1, N1) = N^9/16."""
    return Fraction(N * N, 2) ** 4 * Fraction(N, N1) * N1


def zeta_at_ell_dividing_N(ell: int, N: int, N1: int) -> Fraction:
    """ell^{-20} |det eta|_ell^{-2} times the plain master integral at ell."""
    if N % ell:
        raise ValueError("ell must divide N")
    v = v_ell(Fraction(N ** 9, 16), ell)
    return Fraction(1, ell ** 20) * Fraction(ell) ** (2 * v) * master_value(ell, False)


# ---------------------------------------------------------------------------
# local densities at ell | N
# ---------------------------------------------------------------------------

def _sym_digit_coeffs(ell: int):
    """Index pairs for the 10 free entries of a symmetric 4x4 matrix and the
    array of all ell^10 digit vectors."""
    pairs = [(i, j) for i in range(4) for j in range(i, 4)]
    count = ell ** 10
    digits = np.empty((count, 10), dtype=np.int64)
    idx = np.arange(count)
    for t in range(10):
        digits[:, t] = idx % ell
        idx //= ell
    return pairs, digits


def _quad_coeffs(u: Sequence[int], pairs) -> np.ndarray:
    """Coefficient vector c with u^t T u = c . digits(T)."""
    return np.array([u[i] * u[j] * (1 if i == j else 2) for i, j in pairs],
                    dtype=np.int64)


def _trace_coeffs(beta, pairs, ell: int, prec: int) -> np.ndarray:
    """Coefficient vector c with tr(T beta) = c . digits(T) mod ell^prec."""
    return np.array(
        [mod_prime_power(Fraction(beta[i][j]) * (1 if i == j else 2), ell, prec)
         for i, j in pairs], dtype=np.int64)


def _cyclic_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise exact cyclic convolution of integer count arrays (N, m)."""
    m = a.shape[1]
    out = np.zeros_like(a)
    for k in range(m):
        idx = (k - np.arange(m)) % m
        out[:, k] = (a * b[:, idx]).sum(axis=1)
    return out


def _density_level1(ell: int, N: int, N1: int, beta) -> CycNum:
    """D_beta(1) by the dual factorization: ell^{-10} sum over T in
    Sym_4(Z/ell) of e_ell(-tr(T beta)/ell) prod_j C_j(T), the four column
    sums C_j evaluated by vectorized literal summation (their linear
    character has conductor ell^2, so no shift-completion applies)."""
    m = ell ** 3
    pairs, digits = _sym_digit_coeffs(ell)
    s = Fraction(N * N, 4 * ell * ell)  # eta_j/(2 ell^2), an ell-adic unit
    cs = mod_prime_power(s, ell, 1)
    cols = []
    us = list(itertools.product(range(ell), repeat=4))
    for j in range(4):
        counts = np.zeros((ell ** 10, m), dtype=np.int64)
        rows = np.arange(ell ** 10)
        for u in us:
            q = (digits @ _quad_coeffs(u, pairs)) % ell
            expo = (-(ell * ell * ((cs * q) % ell) + ell * u[j])) % m
            np.add.at(counts, (rows, expo), 1)
        cols.append(counts)
    prod = _cyclic_convolve(_cyclic_convolve(cols[0], cols[1]),
                            _cyclic_convolve(cols[2], cols[3]))
    tb = (digits @ _trace_coeffs(beta, pairs, ell, 1)) % ell
    shift = (ell * ell * tb) % m  # exponent of e_ell(-tr(T beta)/ell)
    final = np.zeros(m, dtype=object)
    for c in range(ell):
        sel = prod[shift == (ell * ell * c) % m]
        if len(sel):
            row = sel.sum(axis=0)
            idx = (np.arange(m) - (ell * ell * c)) % m
            final += row[idx].astype(object)
    val = CycNum(m, {k: Fraction(int(v)) for k, v in enumerate(final) if v})
    return val * Fraction(1, ell ** 10)


def _adjugate4(r: List[List[int]]) -> Tuple[List[List[int]], int]:
    """(adj(R), det(R)) for an integer 4x4 matrix, exact."""
    def det3(a):
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    adj = [[0] * 4 for _ in range(4)]
    det = 0
    for i in range(4):
        for j in range(4):
            sub = [[r[x][y] for y in range(4) if y != j]
                   for x in range(4) if x != i]
            c = (-1) ** (i + j) * det3(sub)
            adj[j][i] = c  # transpose of the cofactor matrix
            if j == 0:
                det += r[i][0] * c
    return adj, det


def _density_level2(ell: int, N: int, N1: int, beta) -> CycNum:
    """D_beta(2) via the closed forms of the six column sums.

    Only T invertible mod ell contributes (otherwise some column sum
    vanishes); splitting T = R + ell*S and summing S by orthogonality leaves
    ell^8 sum_{R, u} 1[beta = (4s)^{-1} R^{-2} + (N1/2) u u^t mod ell]
    * (det R / ell) * zeta_{ell^2}^{tr(R^{-1})(4s)^{-1} - (N1/2) u^t R u + tr(R beta)}.
    """
    q2 = ell * ell
    pairs, digits = _sym_digit_coeffs(ell)
    s = Fraction(N * N, 4 * ell * ell)
    inv4s = mod_prime_power(1 / (4 * s), ell, 2)
    c6 = mod_prime_power(Fraction(N1, 2), ell, 2)
    beta_mod1 = [[mod_prime_power(Fraction(beta[i][j]), ell, 1)
                  for j in range(4)] for i in range(4)]
    tb2 = _trace_coeffs(beta, pairs, ell, 2)

    us = [np.array(u, dtype=np.int64)
          for u in itertools.product(range(ell), repeat=4)]
    outer = np.stack([np.outer(u, u) for u in us])  # (ell^4, 4, 4)

    counts: Dict[int, int] = {}
    for row in digits:
        R = [[0] * 4 for _ in range(4)]
        for t, (i, j) in enumerate(pairs):
            R[i][j] = R[j][i] = int(row[t])
        adj, det = _adjugate4(R)
        if det % ell == 0:
            continue
        sign = jacobi_symbol(det % ell, ell)
        dinv = pow(det % q2, -1, q2)
        rinv = [[(adj[i][j] * dinv) % q2 for j in range(4)] for i in range(4)]
        rinv_np = np.array(rinv, dtype=np.int64)
        rinv2 = (rinv_np @ rinv_np) % ell
        target = (np.array(beta_mod1) - inv4s * rinv2) % ell
        ok = np.all((c6 * outer) % ell == target, axis=(1, 2))
        if not ok.any():
            continue
        base = (sum(rinv[i][i] for i in range(4)) * inv4s
                + int(row @ tb2)) % q2
        Rnp = np.array(R, dtype=np.int64)
        for u in np.nonzero(ok)[0]:
            uu = us[u]
            e = (base - c6 * int(uu @ Rnp @ uu)) % q2
            counts[e] = counts.get(e, 0) + sign
    val = CycNum(q2, {k: Fraction(v) for k, v in counts.items() if v})
    return val * (ell ** 8)


def local_density(ell: int, N: int, beta, n: int, N1: int = 1) -> CycNum:
    """The truncated density D_beta(n) for the level data (S = ell^{-1} M_{4x6}
    lattice, b = ell^{-1}(1_4 | 0), eta = diag(N^2/2,...,N/N1,N1)).

    Evaluated through the Fourier-dual factorization over T in Sym_4(Z/ell^n);
    never by raw enumeration of S/ell^n S.  Representatives of S/ell^n S are
    canonical (integer matrix entries in [0, ell^n)); the value genuinely
    depends on this choice because the b-character has conductor ell^2.
    """
    if ell == 2 or any(ell % d == 0 for d in range(2, int(ell ** 0.5) + 1)):
        raise ValueError("ell must be an odd prime")
    if v_ell(N, ell) != 1 or N1 % ell == 0:
        raise ValueError("need ell || N and ell coprime to N1")
    if n < 1:
        raise ValueError("n >= 1 required")
    if n > 2 or ell ** 10 > 10 ** 6:
        raise NotImplementedError(
            f"density scale guard: ell^10 n-level cost ~ {ell ** (10 * n)} "
            "summands; only (ell small, n <= 2) is supported")
    if n == 1:
        return _density_level1(ell, N, N1, beta)
    return _density_level2(ell, N, N1, beta)


def beta_level(beta, ell: int) -> int:
    """Least h >= 0 with ell^h beta^{-1} integral (beta nonsingular)."""
    from .quadforms import mat_det, _as_matrix
    b = _as_matrix(beta)
    d = mat_det(b)
    if d == 0:
        raise ValueError("beta must be nonsingular")
    n = len(b)
    # inverse via adjugate / det
    inv = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[b[r][c] for c in range(n) if c != j]
                   for r in range(n) if r != i]
            inv[j][i] = (-1) ** (i + j) * mat_det(sub) / d
    worst = min(v_ell(x, ell) for row in inv for x in row if x)
    return max(0, -int(worst))


def fourier_coeff_at_ell(ell: int, N: int, beta, N1: int = 1) -> CycNum:
    """Stabilized local Fourier coefficient at ell | N: ell^{-14n} D_beta(n)
    at the first stable level n = h+1; beta = 0 instead routes through the
    weighted master integral."""
    if all(Fraction(x) == 0 for row in beta for x in row):
        v = int(v_ell(Fraction(N ** 9, 16), ell))
        scale = Fraction(1, ell ** (2 * v)) * Fraction(1, ell ** 20)
        return CycNum.from_rational(scale * master_value(ell, True))
    n = beta_level(beta, ell) + 1
    val = local_density(ell, N, beta, n, N1) * Fraction(1, ell ** (14 * n))
    den = val.denominator()
    while den % ell == 0:
        den //= ell
    if den != 1:
        raise AssertionError("value not integral away from ell")
    return val


# ---------------------------------------------------------------------------
# Dirichlet characters at p and the p-place zeta factor
# ---------------------------------------------------------------------------

def _primitive_root(p: int) -> int:
    """Least primitive root mod p^2 (hence mod every p^k, p odd)."""
    phi = p * (p - 1)
    from sympy import factorint as _f
    qs = list(_f(phi))
    for g in range(2, p * p):
        if g % p == 0:
            continue
        if all(pow(g, phi // q, p * p) != 1 for q in qs):
            return g
    raise ArithmeticError("no primitive root found")


@dataclass(frozen=True)
class DirichletChar:
    """Character of (Z/p^cprime)^x, primitive, given by its value exponent on
    the fixed generator g: chi(g) = zeta_phi^k with phi = phi(p^cprime).
    The trivial character (cprime = 0) acts as the unit indicator on Z_p."""
    p: int
    cprime: int
    k: int  # exponent, mod phi(p^cprime)

    def __post_init__(self):
        if self.cprime:
            phi = self._phi()
            d = phi // math.gcd(phi, self.k % phi)
            c_actual = 0 if d == 1 else 1 + max(0, _vp_int(d, self.p))
            if c_actual != self.cprime:
                raise ValueError(
                    f"exponent {self.k} is imprimitive at conductor "
                    f"p^{self.cprime} (actual p^{c_actual})")

    def _phi(self) -> int:
        return self.p ** (self.cprime - 1) * (self.p - 1) if self.cprime else 1

    @staticmethod
    def trivial(p: int) -> "DirichletChar":
        return DirichletChar(p, 0, 0)

    @staticmethod
    def legendre(p: int) -> "DirichletChar":
        return DirichletChar(p, 1, (p - 1) // 2)

    @property
    def circ(self) -> int:
        return 1 if self.cprime == 0 else 0

    def conductor(self) -> int:
        return self.p ** self.cprime

    def C(self) -> int:
        return self.p ** max(1, self.cprime)

    def order(self) -> int:
        phi = self._phi()
        return phi // math.gcd(phi, self.k % phi) if self.cprime else 1

    def __call__(self, x: RatLike) -> CycNum:
        x = Fraction(x)
        if x == 0 or v_ell(x, self.p) != 0:
            return CycNum.zero()
        if self.cprime == 0:
            return CycNum.one()
        q = self.conductor()
        u = mod_prime_power(x, self.p, self.cprime)
        g = _primitive_root(self.p)
        t = _dlog(u, g, q, self._phi())
        phi = self._phi()
        return CycNum.zeta(phi, (self.k * t) % phi)

    def inverse(self) -> "DirichletChar":
        return DirichletChar(self.p, self.cprime,
                             (-self.k) % self._phi() if self.cprime else 0)

    def __mul__(self, other: "DirichletChar") -> "DirichletChar":
        if self.p != other.p:
            raise ValueError("different primes")
        cm = max(self.cprime, other.cprime)
        if cm == 0:
            return DirichletChar.trivial(self.p)
        phim = self.p ** (cm - 1) * (self.p - 1)
        k = (self.k * (phim // self._phi()) if self.cprime else 0) \
            + (other.k * (phim // other._phi()) if other.cprime else 0)
        k %= phim
        # reduce to the true (primitive) conductor
        d = phim // math.gcd(phim, k) if k else 1
        c_new = 0 if d == 1 else 1 + max(0, _vp_int(d, self.p))
        if c_new == 0:
            return DirichletChar.trivial(self.p)
        drop = self.p ** (cm - c_new)
        assert k % drop == 0
        return DirichletChar(self.p, c_new, k // drop)

    def gauss_sum(self) -> CycNum:
        """G(chi) = sum_{x mod p^cprime} chi(x) zeta_{p^cprime}^x; G = 1 for
        the trivial character."""
        if self.cprime == 0:
            return CycNum.one()
        q = self.conductor()
        out = CycNum.zero()
        for x in range(1, q):
            if x % self.p:
                out = out + self(x) * CycNum.zeta(q, x)
        return out


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _dlog(u: int, g: int, q: int, phi: int) -> int:
    x = 1
    for t in range(phi):
        if x == u % q:
            return t
        x = (x * g) % q
    raise ArithmeticError("discrete log failed")


def kappa_tilde(kappa2: DirichletChar) -> DirichletChar:
    """kappa_2 * (Legendre symbol)^{c'(kappa_2)}."""
    if kappa2.cprime % 2 == 0:
        return kappa2
    return kappa2 * DirichletChar.legendre(kappa2.p)


def char_integral_1d(chi: DirichletChar, c: RatLike) -> CycNum:
    """int over Z_p^x of chi(z) e_p(-c z) dz.

    Nontrivial chi: p^{-c'} G(chi) chi^{-1}(p^{c'} c).  Trivial chi:
    1_{Z_p}(c) - p^{-1} 1_{p^{-1}Z_p}(c) (the direct unit-volume computation;
    matches both worked instances of the source display).
    """
    p = chi.p
    c = Fraction(c)
    if chi.cprime == 0:
        v = v_ell(c, p)
        out = Fraction(0)
        if v >= 0:
            out += 1
        if v >= -1:
            out -= Fraction(1, p)
        return CycNum.from_rational(out)
    cp = chi.cprime
    arg = Fraction(p) ** cp * c
    if c == 0 or v_ell(arg, p) != 0:
        return CycNum.zero()
    return chi.inverse()(arg) * chi.gauss_sum() * Fraction(1, p ** cp)


def _coerce_cyc(x) -> CycNum:
    return x if isinstance(x, CycNum) else CycNum.from_rational(Fraction(x))


def p_zeta_factor(p: int, kappa1: DirichletChar, kappa2: DirichletChar,
                  alpha1, alpha2, constant: str = "half") -> CycNum:
    """The p-place zeta value of the summary corollary:

    (1 - eps4(p)/p) p^{-5c} alpha1^{-2c} alpha2^{-2c} kappa1(t)kappa2(t)
      * bracket(kappa1) * bracket(kappa2-tilde),

    with t = 1/2 (flag "half", the corollary's display) or t = -1 (flag
    "minus-one", the variant printed in the summary table); the duplicate
    constant in the source is surfaced through this flag, not resolved.
    """
    if constant not in ("half", "minus-one"):
        raise ValueError("constant flag must be 'half' or 'minus-one'")
    a1, a2 = _coerce_cyc(alpha1), _coerce_cyc(alpha2)
    if a1.is_zero() or a2.is_zero():
        raise ZeroDivisionError("alpha eigenvalues must be nonzero")
    c = max(1, kappa1.cprime, kappa2.cprime)
    t = Fraction(1, 2) if constant == "half" else Fraction(-1)
    pref = CycNum.from_rational(
        (1 - Fraction(jacobi_symbol(-1, p), p)) * Fraction(1, p ** (5 * c)))
    pref = pref * a1.inv() ** (2 * c) * a2.inv() ** (2 * c)
    pref = pref * kappa1(t) * kappa2(t)

    def bracket1() -> CycNum:
        base = CycNum.from_rational(Fraction(p - 1, p))
        if kappa1.circ:
            num = CycNum.one() - a1.inv()
            den = CycNum.one() - a1 * Fraction(1, p)
            if den.is_zero():
                raise ZeroDivisionError("singular factor 1 - alpha1/p")
            base = base * (-1) * num * den.inv()
        return base * kappa1.gauss_sum() * a1.inv() ** kappa1.cprime

    def bracket2() -> CycNum:
        kt = kappa_tilde(kappa2)
        base = CycNum.from_rational(Fraction(p - 1, p))
        if kappa2.circ:
            num = CycNum.from_rational(Fraction(p - 1, p))
            den = CycNum.one() - a2 * Fraction(1, p)
            if den.is_zero():
                raise ZeroDivisionError("singular factor 1 - alpha2/p")
            base = base * (-1) * num * den.inv()
        base = base * kt.gauss_sum() * a2.inv() ** kappa2.cprime
        base = base * epsilon4(p ** kappa2.cprime)
        return base * Fraction(1, p ** kt.cprime)

    return pref * bracket1() * bracket2()


def alpha2_density(p: int, c: int, N: int, N1: int, beta2) -> Fraction:
    """p^{-23c}(1 - eps4(p)/p) when det(beta_2) and det(eta_U) lie in the
    same square class mod p, else 0."""
    from .quadforms import mat_det
    d = mat_det(beta2)
    if d == 0 or v_ell(d, p) != 0:
        raise ValueError("beta_2 must have unit determinant at p")
    if N % p == 0 or p == 2:
        raise ValueError("p must be odd and coprime to N")
    target = jacobi_symbol(mod_prime_power(Fraction(N ** 9, 16), p, 1), p)
    mine = jacobi_symbol(mod_prime_power(d, p, 1), p)
    if mine != target:
        return Fraction(0)
    return Fraction(1, p ** (23 * c)) * (1 - Fraction(jacobi_symbol(-1, p), p))


# ---------------------------------------------------------------------------
# the D^kappa monomial expansion and the archimedean coefficient
# ---------------------------------------------------------------------------

Poly = Dict[Tuple[int, ...], int]
NVARS = 24  # X_{k;i,l}: k in {1,2}, i in {1,2}, l in 1..6


def var_index(k: int, i: int, l: int) -> int:
    """Flat index of X_{k;i,l} (all 1-based except the return value)."""
    return (k - 1) * 12 + (i - 1) * 6 + (l - 1)


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _poly_pow(a: Poly, n: int) -> Poly:
    out: Poly = {(0,) * NVARS: 1}
    for _ in range(n):
        out = _poly_mul(out, a)
    return out


def _y_entry(i: int, j: int) -> Poly:
    out: Poly = {}
    for l in range(1, 7):
        e = [0] * NVARS
        e[var_index(1, i, l)] += 1
        e[var_index(2, j, l)] += 1
        out[tuple(e)] = 1
    return out


@dataclass(frozen=True)
class MonomialExpansion:
    kappa: Tuple[int, int]
    terms: Dict[Tuple[int, ...], int] = field(hash=False)

    @property
    def index_set(self):
        return set(self.terms)


def dk_expand(k1: int, k2: int) -> MonomialExpansion:
    """Expansion of det_1(Y)^{k1-k2} det_2(Y)^{k2-3} after the substitution
    Y_{i,j} = sum_l X_{1;i,l} X_{2;j,l} into monomials in the 24 variables."""
    if not (k1 >= k2 >= 3):
        raise ValueError("weights must satisfy k1 >= k2 >= 3")
    y11, y12, y21, y22 = (_y_entry(1, 1), _y_entry(1, 2),
                          _y_entry(2, 1), _y_entry(2, 2))
    det2 = _poly_mul(y11, y22)
    for e, c in _poly_mul(y12, y21).items():
        det2[e] = det2.get(e, 0) - c
        if det2[e] == 0:
            del det2[e]
    poly = _poly_mul(_poly_pow(y11, k1 - k2), _poly_pow(det2, k2 - 3))
    return MonomialExpansion((k1, k2), poly)


@dataclass(frozen=True)
class ArchCoefficient:
    rational: Fraction
    pi_power: int
    det_beta: Fraction  # carried to the formal power 1/2
    det_y: Fraction     # carried to the formal power 3/2

    def is_zero(self) -> bool:
        return self.rational == 0


def _leading_minors_positive(b) -> bool:
    from .quadforms import mat_det
    n = len(b)
    return all(mat_det([row[:k] for row in b[:k]]) > 0 for k in range(1, n + 1))


def arch_coefficient(beta, kappa: Tuple[int, int] = (3, 3),
                     beta0=None, y=None) -> ArchCoefficient:
    """Scalar archimedean Fourier coefficient (16/Gamma_4(3)) pi^12
    (det beta)^{1/2} det(y)^{3/2} times the raising factor D^kappa(2 beta_0);
    Gamma_4(3) = 3 pi^4 / 4, so the prefactor is (64/3) pi^8.  Vanishes for
    beta not positive definite."""
    from .quadforms import mat_det, _as_matrix
    b = _as_matrix(beta)
    if not _leading_minors_positive(b):
        return ArchCoefficient(Fraction(0), 0, Fraction(0), Fraction(1))
    k1, k2 = kappa
    if not (k1 >= k2 >= 3):
        raise ValueError("weights must satisfy k1 >= k2 >= 3")
    if beta0 is None:
        beta0 = [[b[i][j + 2] for j in range(2)] for i in range(2)]  # upper-right
    two_b0 = [[2 * Fraction(x) for x in row] for row in beta0]
    dfac = two_b0[0][0] ** (k1 - k2) * mat_det(two_b0) ** (k2 - 3)
    dy = mat_det(_as_matrix(y)) if y is not None else Fraction(1)
    return ArchCoefficient(Fraction(64, 3) * dfac, 8, mat_det(b), dy)
