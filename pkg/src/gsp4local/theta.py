"""Lattice-point enumeration under Gram constraints, theta-series Fourier
coefficients as finite sums of local Schwartz weights, and the rank-2
isotropic-plane search mod p^c.

The quadratic form is the fixed rank-6 diagonal form
eta_U = diag(N^2/2, N^2/2, N^2/2, N^2/2, N/N1, N1).  Enumeration is plain
row-by-row box search with the positive-definite bound |w_ij| <= sqrt(
beta_ii / eta_j); eta is diagonal and desk-scale, so no basis reduction is
used.  All arithmetic is exact (Fractions / cyclotomic integers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .cyclo import CycNum, v_ell
from .gauss import e_ell
from .localfactors import DirichletChar, kappa_tilde

Row = Tuple[Fraction, ...]
Solution = Tuple[Row, ...]


@dataclass(frozen=True)
class QuadLattice:
    """The rank-6 diagonal form diag(N^2/2 (x4), N/N1, N1) with its scaling
    data; positive definite for N, N1 > 0."""
    N: int
    N1: int = 1

    def __post_init__(self):
        if self.N <= 0 or self.N1 <= 0:
            raise ValueError("N, N1 must be positive")
        if self.N % self.N1:
            raise ValueError("N1 must divide N")

    @property
    def diag(self) -> Tuple[Fraction, ...]:
        half = Fraction(self.N * self.N, 2)
        return (half, half, half, half,
                Fraction(self.N, self.N1), Fraction(self.N1))


def _form_diag(form) -> Tuple[Fraction, ...]:
    if isinstance(form, QuadLattice):
        return form.diag
    d = tuple(Fraction(x) for x in form)
    if len(d) != 6 or any(x <= 0 for x in d):
        raise ValueError("form must be 6 positive diagonal entries")
    return d


def _as_sym(beta, r: int) -> List[List[Fraction]]:
    if r == 1 and not isinstance(beta, (list, tuple)):
        return [[Fraction(beta)]]
    b = [[Fraction(x) for x in row] for row in beta]
    if len(b) != r or any(len(row) != r for row in b):
        raise ValueError(f"beta must be {r}x{r}")
    for i in range(r):
        for j in range(i):
            if b[i][j] != b[j][i]:
                raise ValueError("beta must be symmetric")
    return b


_ROW_CACHE: dict = {}


def _row_vectors(diag: Sequence[Fraction], target: Fraction,
                 step: Fraction) -> List[Row]:
    """All v in (step Z)^6 with sum eta_j v_j^2 = target, lexicographic.

    Internally everything is scaled to integers (v = step k, and the common
    denominator of eta_j step^2 and the target is cleared)."""
    if target < 0:
        return []
    key = (tuple(diag), target, step)
    hit = _ROW_CACHE.get(key)
    if hit is not None:
        return hit
    s2 = step * step
    scale = math.lcm(target.denominator,
                     *[(d * s2).denominator for d in diag])
    w = [int(d * s2 * scale) for d in diag]   # weight of k_j^2
    tgt = target * scale
    if tgt.denominator != 1:
        _ROW_CACHE[key] = []
        return []
    tgt = int(tgt)
    out: List[Tuple[int, ...]] = []
    k = [0] * 6

    def rec(j: int, remaining: int):
        if j == 6:
            if remaining == 0:
                out.append(tuple(k))
            return
        kmax = math.isqrt(remaining // w[j])
        wj = w[j]
        for t in range(-kmax, kmax + 1):
            k[j] = t
            rec(j + 1, remaining - wj * t * t)
        k[j] = 0

    rec(0, tgt)
    out.sort()
    rows = [tuple(step * t for t in vec) for vec in out]
    _ROW_CACHE[key] = rows
    return rows


def _int_row_vectors(weights: Tuple[int, ...], target: int) -> list:
    """Integer vectors v with sum weights[j] v_j^2 = target (cached)."""
    key = (weights, target)
    hit = _ROW_CACHE.get(key)
    if hit is None:
        if target < 0:
            hit = []
        else:
            out: list = []
            k = [0] * 6

            def rec(j: int, remaining: int):
                if j == 6:
                    if remaining == 0:
                        out.append(tuple(k))
                    return
                wj = weights[j]
                kmax = math.isqrt(remaining // wj)
                for t in range(-kmax, kmax + 1):
                    k[j] = t
                    rec(j + 1, remaining - wj * t * t)
                k[j] = 0

            rec(0, target)
            out.sort()
            hit = out
        _ROW_CACHE[key] = hit
    return hit


def enumeration_cost(form, rows: int, beta, step=1) -> int:
    """Upper bound on the visited box size (product of per-coordinate
    ranges, summed over rows)."""
    diag = _form_diag(form)
    b = _as_sym(beta, rows)
    step = Fraction(step)
    total = 0
    for i in range(rows):
        prod = 1
        for d in diag:
            bound = b[i][i] / (d * step * step)
            if bound < 0:
                return 0
            prod *= 2 * math.isqrt(bound.numerator // bound.denominator) + 1
        total += prod
    return total


def enumerate_gram(form, rows: int, beta, step=1) -> List[Solution]:
    """Complete duplicate-free list of rows x 6 matrices w over the lattice
    (step Z)^6 per row with w eta w^t = beta exactly (eta the diagonal
    form).  Output in lexicographic order; empty list when beta is not
    representable (e.g. not positive semidefinite)."""
    diag = _form_diag(form)
    b = _as_sym(beta, rows)
    step = Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    row_lists = [_row_vectors(diag, b[i][i], step) for i in range(rows)]
    solutions: List[Solution] = []
    chosen: List[Row] = []

    def rec(i: int):
        if i == rows:
            solutions.append(tuple(chosen))
            return
        for v in row_lists[i]:
            if all(sum(diag[j] * chosen[k][j] * v[j] for j in range(6))
                   == b[k][i] for k in range(i)):
                chosen.append(v)
                rec(i + 1)
                chosen.pop()

    rec(0)
    return solutions


# ---------------------------------------------------------------------------
# Isotropic plane w0 at p.

def isotropic_w0(p: int, c: int, eta=None) -> List[List[int]]:
    """A 2x6 integer matrix of full rank mod p with w0 eta w0^t == 0
    mod p^c, entries in [0, p^c).

    Search: smallest isotropic vector mod p supported on the first
    available coordinates for row 1, then on disjoint coordinates for row 2
    (disjoint supports make the cross Gram entry identically zero), each
    lifted to mod p^c by a Newton step on one coordinate with unit
    gradient.
    """
    if p == 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        raise ValueError("p must be an odd prime")
    if c < 1:
        raise ValueError("c >= 1 required")
    diag = _form_diag(eta) if eta is not None else tuple(Fraction(1)
                                                         for _ in range(6))
    dmod = []
    for x in diag:
        if v_ell(x, p) != 0:
            raise ValueError("eta must be a p-unit form (p coprime to 2N)")
        num, den = x.numerator, x.denominator
        dmod.append(num * pow(den, -1, p ** c) % p ** c)
    q = p ** c

    def find_row(support: Sequence[int]) -> Optional[List[int]]:
        # isotropic vector mod p on the given coordinates, then lift
        for combo in _small_vectors(p, len(support)):
            if sum(dmod[s] * t * t for s, t in zip(support, combo)) % p == 0:
                newton = next((idx for idx, t in enumerate(combo) if t % p),
                              None)
                if newton is None:
                    continue
                vec = list(combo)
                # Newton lift on coordinate `newton`
                for k in range(1, c):
                    f = sum(dmod[s] * t * t
                            for s, t in zip(support, vec)) % p ** (k + 1)
                    g = (2 * dmod[support[newton]] * vec[newton]) % p
                    t = (-(f // p ** k) * pow(g, -1, p)) % p
                    vec[newton] = (vec[newton] + t * p ** k) % p ** (k + 1)
                row = [0] * 6
                for s, t in zip(support, vec):
                    row[s] = t % q
                assert sum(dmod[j] * row[j] * row[j] for j in range(6)) \
                    % q == 0
                return row
        return None

    for k in range(2, 4):  # support size 2, then 3 (always solvable mod p)
        for sup1 in _sorted_supports(k):
            r1 = find_row(sup1)
            if r1 is None:
                continue
            rest = [j for j in range(6) if j not in sup1]
            for m in range(2, len(rest) + 1):
                for sup2 in _sorted_supports(m, rest):
                    r2 = find_row(sup2)
                    if r2 is not None:
                        return [r1, r2]
    raise ArithmeticError("no isotropic plane found (unexpected for a "
                          "p-unit form at an odd prime)")


def _sorted_supports(k: int, pool: Sequence[int] = tuple(range(6))):
    import itertools
    return itertools.combinations(pool, k)


def _small_vectors(p: int, k: int):
    """Nonzero vectors in [0,p)^k, first coordinate normalized when
    leading, in lexicographic order."""
    import itertools
    for combo in itertools.product(range(p), repeat=k):
        if any(combo):
            yield combo


# ---------------------------------------------------------------------------
# Theta-series Fourier coefficients.

def _radical(n: int) -> int:
    r, m = 1, n
    for d in range(2, n + 1):
        if m % d == 0:
            r *= d
            while m % d == 0:
                m //= d
    return r


def theta_coefficient(beta, N: int, p: int, N1: int = 1,
                      kappa1: Optional[DirichletChar] = None,
                      kappa2: Optional[DirichletChar] = None,
                      h=None, cost_limit: int = 5 * 10 ** 7,
                      return_terms: bool = False):
    """Fourier coefficient of the theta series at beta (the archimedean
    e(-tr(beta z)) factored out): the finite sum over 4x6 (or 2x6) lattice
    matrices w with w eta_U w^t = beta of the product of local Schwartz
    weights.

    Local weights:
      * ell coprime to Np: indicator of integrality (built into the
        enumeration lattice);
      * ell | N: w lies in the ell^{-1}-scaled matrix lattice, with
        character weight e_ell(tr(b^t w)), b = ell^{-1}(1_r | 0) -- an
        ell^2-power root of unity;
      * at p (p odd, coprime to 2N): the two-block weight with depth
        c = max(1, c'(kappa_1), c'(kappa_2)) and support exponent s = -c:
        the top block y1 is pinned to p^{-c} w0 modulo integral matrices
        (w0 the rank-2 isotropic plane), the bottom block y2 is p^{-c}
        integral, weighted by the character value
        (kappa_1 kappa_2^{-1})(det_1) * ktilde_2(det_2) of the unit 2x2
        Gram block, zero unless that block is unimodular at p.

    The result is a cyclotomic integer in Z[mu_{N^2 C(kappa)}] up to
    prime-to-p roots of unity from the kappa-values (which are p-adic
    units); `theta_integrality_report` checks this structurally.
    """
    lat = QuadLattice(N, N1)
    diag = lat.diag
    r = 4 if not isinstance(beta, (list, tuple)) or len(beta) == 4 else 2
    b = _as_sym(beta, r)
    if p == 2 or N % p == 0 or any(p % d == 0
                                   for d in range(2, math.isqrt(p) + 1)):
        raise ValueError("p must be an odd prime coprime to N")
    kappa1 = kappa1 or DirichletChar.trivial(p)
    kappa2 = kappa2 or DirichletChar.trivial(p)
    if kappa1.p != p or kappa2.p != p:
        raise ValueError("kappa characters must live at p")
    c = max(1, kappa1.cprime, kappa2.cprime)
    q = p ** c
    radn = _radical(N)
    if radn % 2 == 0:
        raise ValueError("only odd N supported")
    denom = radn * q   # w = u / denom, u integral
    scaled = [[x * denom * denom for x in row] for row in b]
    cost = enumeration_cost(diag, r, scaled)
    if cost > cost_limit:
        raise NotImplementedError(
            f"theta scale guard: estimated {cost} enumeration nodes "
            f"exceeds the limit {cost_limit}; raise cost_limit to force")
    w0 = isotropic_w0(p, c, diag)
    if h is not None:
        _check_eta_orthogonal(h, diag)

    chi1 = kappa1 * kappa2.inverse()
    chi2 = kappa_tilde(kappa2)
    ells = [d for d in range(3, N + 1) if N % d == 0 and _radical(d) == d
            and all(d % e or d == e for e in range(2, d))]

    # integer-specialized enumeration: u integral, weights 2*eta (integral),
    # Gram targets 2*scaled; the top-block congruence mod p^c is applied
    # per candidate row (it cuts each top row list by ~p^{6c}).
    weights = tuple(int(2 * x) for x in diag)
    targets = [[2 * x for x in row] for row in scaled]
    if any(targets[i][i].denominator != 1 for i in range(r)):
        return CycNum.zero() if not return_terms else (CycNum.zero(), [])
    hm = None
    if h is not None:
        hm = [[int(h[i][j]) for j in range(6)] for i in range(6)]
    row_lists = []
    for i in range(r):
        cand = _int_row_vectors(weights, int(targets[i][i]))
        if r == 4 and i < 2 and hm is None:
            cand = [v for v in cand
                    if all((v[j] - radn * w0[i][j]) % q == 0
                           for j in range(6))]
        row_lists.append(cand)

    sols: list = []
    chosen: list = []

    def rec(i: int):
        if i == r:
            sols.append(tuple(chosen))
            return
        for v in row_lists[i]:
            ok = True
            for kk in range(i):
                dot = sum(weights[j] * chosen[kk][j] * v[j]
                          for j in range(6))
                if dot != targets[kk][i]:
                    ok = False
                    break
            if ok:
                chosen.append(v)
                rec(i + 1)
                chosen.pop()

    rec(0)

    total = CycNum.zero()
    terms = []
    for u in sols:
        if hm is not None:
            u = tuple(tuple(sum(row[i] * hm[i][j] for i in range(6))
                            for j in range(6)) for row in u)
            # the congruence filter above acted on u h^{-1}; re-check on u
            if r == 4 and any((u[i][j] - radn * w0[i][j]) % q
                              for i in range(2) for j in range(6)):
                continue
        if r == 4:
            top, bot = u[:2], u[2:]
        else:
            top, bot = (), u
        # unit Gram block of the bottom rows: (u2/radn) eta (u2/radn)^t / 4
        g = [[sum(diag[t] * bot[i][t] * bot[j][t] for t in range(6))
              / (4 * radn * radn) for j in range(2)] for i in range(2)]
        det1 = g[0][0]
        det2 = g[0][0] * g[1][1] - g[0][1] * g[1][0]
        if any(v_ell(x, p) < 0 for row in g for x in row if x) \
                or det2 == 0 or v_ell(det2, p) != 0:
            continue
        weight = CycNum.one()
        if chi1.cprime:
            weight = weight * chi1(det1)
        if chi2.cprime:
            weight = weight * chi2(det2)
        if weight.is_zero():
            continue
        for ell in ells:
            tr = Fraction(sum(u[i][i] for i in range(r)), ell * denom)
            weight = weight * e_ell(tr, ell)
        total = total + weight
        if return_terms:
            terms.append((tuple(tuple(Fraction(x, denom) for x in row)
                                for row in u), weight))
    return (total, terms) if return_terms else total


def _check_eta_orthogonal(h, diag) -> None:
    hm = [[Fraction(x) for x in row] for row in h]
    for i in range(6):
        for j in range(6):
            val = sum(hm[i][t] * diag[t] * hm[j][t] for t in range(6))
            want = diag[i] if i == j else 0
            if val != want:
                raise ValueError("h must be an eta-orthogonal matrix")


def eta_signed_permutations(diag) -> List[List[List[int]]]:
    """All signed permutation matrices preserving the diagonal form (they
    permute coordinates with equal eta-entries and flip signs)."""
    import itertools
    diag = _form_diag(diag)
    out = []
    for perm in itertools.permutations(range(6)):
        if any(diag[perm[j]] != diag[j] for j in range(6)):
            continue
        for signs in itertools.product((1, -1), repeat=6):
            m = [[0] * 6 for _ in range(6)]
            for j in range(6):
                m[j][perm[j]] = signs[j]
            out.append(m)
    return out


def theta_integrality_report(value: CycNum, N: int, C_kappa: int,
                             kappa_value_order: int = 1) -> dict:
    """Structural membership check for Z[mu_{N^2 C(kappa)}]: coefficients
    denominator-free, and the root-of-unity level divides
    N^2 C(kappa) * kappa_value_order (nontrivial characters contribute
    values of order dividing phi(C); those prime-to-p roots of unity are
    p-adic units, consistent with the p-integral statement)."""
    denoms = [t.denominator for t in value.c.values()]
    level = value.m
    target = N * N * C_kappa * kappa_value_order
    return {"integral": all(d == 1 for d in denoms),
            "level": level, "target_level": target,
            "level_divides": target % level == 0}


def _prime_set(n: int):
    s = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            s.add(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        s.add(n)
    return s
