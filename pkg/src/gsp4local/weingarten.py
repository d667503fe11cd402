"""Exact Haar moments on the orthogonal group O(d) via pair partitions.

The Weingarten matrix is obtained by exact rational inversion of the Gram
matrix G(m, n) = d^{#loops(m, n)} over pair partitions of {1, ..., 2N}; the
moment of a monomial in matrix entries is the double sum of Weingarten values
against the row/column compatibility indicators.  Everything is computed in
exact rational arithmetic; Monte Carlo sampling lives only in the test suite.

Also provided: the integer constant d(n) = gcd over partitions nu of n of
(2n)! z_nu / h(2 nu), and the moment polynomial vol^I(Z, Z') obtained by
integrating a degree-2N monomial X^I evaluated at Z . upper(w Z') over
w in O(6) (Haar measure normalized to total mass one).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .localfactors import MonomialExpansion

PairPartition = Tuple[Tuple[int, int], ...]


def pair_partitions(two_n: int) -> List[PairPartition]:
    """All perfect matchings of {0, ..., two_n - 1}, canonically sorted."""
    if two_n % 2:
        raise ValueError("need an even ground set")
    if two_n == 0:
        return [()]
    out = []
    rest = list(range(1, two_n))
    for k, b in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        m = two_n - 2
        sub = pair_partitions(m)
        relabel = {i: v for i, v in enumerate(remaining)}
        for tail in sub:
            out.append(((0, b),) + tuple(
                tuple(sorted((relabel[x], relabel[y]))) for x, y in tail))
    return [tuple(sorted(p)) for p in out]


def loop_count(m: PairPartition, n: PairPartition) -> int:
    """Number of cycles of the union multigraph of two perfect matchings."""
    nbr_m = {}
    nbr_n = {}
    for a, b in m:
        nbr_m[a] = b
        nbr_m[b] = a
    for a, b in n:
        nbr_n[a] = b
        nbr_n[b] = a
    seen = set()
    loops = 0
    for start in nbr_m:
        if start in seen:
            continue
        loops += 1
        x, use_m = start, True
        while x not in seen:
            seen.add(x)
            x = nbr_m[x] if use_m else nbr_n[x]
            use_m = not use_m
    return loops


def _invert(mat: List[List[Fraction]]) -> List[List[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = len(mat)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular Gram matrix (d too small for N)")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class WeingartenTable:
    """Gram and Weingarten matrices over pair partitions of {1..2N} on O(d)."""
    N: int
    d: int
    partitions: Tuple[PairPartition, ...]
    gram: Tuple[Tuple[Fraction, ...], ...]
    wg: Tuple[Tuple[Fraction, ...], ...]

    def check(self) -> bool:
        n = len(self.partitions)
        for i in range(n):
            for j in range(n):
                s = sum(self.gram[i][k] * self.wg[k][j] for k in range(n))
                if s != (1 if i == j else 0):
                    return False
        return True


_TABLE_CACHE: Dict[Tuple[int, int], WeingartenTable] = {}


def weingarten_table(N: int, d: int = 6) -> WeingartenTable:
    """Exact Weingarten table for monomials of degree 2N on O(d).

    Valid in the invertibility regime d >= 2N; normalized so that the moment
    of the empty monomial is 1 (Haar mass one).
    """
    if N < 0:
        raise ValueError("N >= 0 required")
    if d < 2 * N:
        raise ArithmeticError(
            f"Gram inversion regime requires d >= 2N (got d={d}, N={N})")
    key = (N, d)
    if key not in _TABLE_CACHE:
        parts = pair_partitions(2 * N)
        gram = [[Fraction(d) ** loop_count(m, n) for n in parts]
                for m in parts]
        wg = _invert(gram) if parts else []
        _TABLE_CACHE[key] = WeingartenTable(
            N, d, tuple(parts),
            tuple(tuple(r) for r in gram), tuple(tuple(r) for r in wg))
    return _TABLE_CACHE[key]


def _delta(partition: PairPartition, labels: Sequence[int]) -> bool:
    return all(labels[a] == labels[b] for a, b in partition)


def _canon(labels: Sequence[int]) -> Tuple[int, ...]:
    seen: Dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


_MOMENT_CACHE: Dict[Tuple[Tuple[int, ...], Tuple[int, ...], int], Fraction] = {}


def moment(monomial: Sequence[Tuple[int, int]], d: int = 6) -> Fraction:
    """Exact Haar moment int_{O(d)} prod_k u_{i_k j_k} du.

    `monomial` lists the (row, column) index of each factor (1-based or
    0-based, only equalities matter).  Odd-degree moments vanish.
    """
    deg = len(monomial)
    if deg % 2:
        return Fraction(0)
    N = deg // 2
    key = (_canon([ij[0] for ij in monomial]),
           _canon([ij[1] for ij in monomial]), d)
    if key in _MOMENT_CACHE:
        return _MOMENT_CACHE[key]
    rows = [ij[0] for ij in monomial]
    cols = [ij[1] for ij in monomial]
    table = weingarten_table(N, d)
    total = Fraction(0)
    row_ok = [_delta(m, rows) for m in table.partitions]
    col_ok = [_delta(n, cols) for n in table.partitions]
    for a, m_ok in enumerate(row_ok):
        if not m_ok:
            continue
        for b, n_ok in enumerate(col_ok):
            if n_ok:
                total += table.wg[a][b]
    _MOMENT_CACHE[key] = total
    return total


def _partitions_of(n: int, largest: int = None) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()]
    if largest is None:
        largest = n
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_of(n - first, first):
            out.append((first,) + rest)
    return out


def _hook_product(shape: Sequence[int]) -> int:
    """Product of hook lengths of a Young diagram."""
    cols = [0] * (shape[0] if shape else 0)
    for row in shape:
        for j in range(row):
            cols[j] += 1
    prod = 1
    for i, row in enumerate(shape):
        for j in range(row):
            prod *= (row - j) + (cols[j] - i) - 1
    return prod


@dataclass(frozen=True)
class PartitionConstants:
    """Per-partition data entering d(n) = gcd_nu((2n)!/h(2 nu)) z_nu."""
    n: int
    partitions: Tuple[Tuple[int, ...], ...]
    z: Tuple[int, ...]
    h: Tuple[int, ...]     # irreducible S_{2n}-dimension of the shape 2*nu
    terms: Tuple[int, ...]
    dn: int

    @property
    def denominator_bound(self) -> int:
        """lcm of the per-partition terms (2n)! z_nu / h(2 nu).

        The Weingarten expansion bounds every normalized degree-2n moment by
        a multiple of 1/term_nu summed over nu, i.e. a multiple of
        1/lcm(terms); the gcd value `dn` is strictly smaller for n >= 2 and
        does NOT clear all moment denominators (e.g. the degree-4 moment
        1/16 on O(6) times d(2) = 72 is not an integer).
        """
        return math.lcm(*self.terms)


def dn_constant(n: int) -> PartitionConstants:
    """The integer d(n), with all per-partition intermediates.

    z_nu = prod_{i=1}^{l} prod_{j=1}^{nu_i} (5 + 2j - i).  The dimension h is
    taken for the S_{2n}-shape 2*nu = (2 nu_1, ..., 2 nu_l) via the hook
    length formula, so each gcd term (2n)! z_nu / h(2 nu) equals
    z_nu * (product of hook lengths of 2 nu), manifestly an integer.  (The
    reading h(nu) with nu itself a partition of n does not index an
    S_{2n}-irreducible and is therefore not meaningful here.)
    """
    if n < 1:
        raise ValueError("n >= 1 required")
    parts = tuple(_partitions_of(n))
    zs, hs, terms = [], [], []
    fact2n = math.factorial(2 * n)
    for nu in parts:
        z = 1
        for i, row in enumerate(nu, start=1):
            for j in range(1, row + 1):
                z *= 5 + 2 * j - i
        shape2 = tuple(2 * x for x in nu)
        hooks = _hook_product(shape2)
        h = fact2n // hooks
        zs.append(z)
        hs.append(h)
        terms.append(z * hooks)
    dn = math.gcd(*terms)
    return PartitionConstants(n, parts, tuple(zs), tuple(hs), tuple(terms), dn)


# ---------------------------------------------------------------------------
# vol^I(Z, Z'): the Haar integral of X^I(Z . upper(w Z')) over w in O(6).
# Monomials are keyed by ((S sparse), (T sparse)) exponent data on the 4x4
# matrix Z and the 6x6 matrix Z'.

PolyZ = Dict[Tuple[Tuple[Tuple[int, int], int], ...,], Fraction]


def _x_position(k: int, i: int) -> int:
    """Row of the stacked 4x6 argument addressed by X_{k;i,l}."""
    return 2 * (k - 1) + (i - 1)


def volI_polynomial(I: Dict[int, int], d: int = 6):
    """The moment polynomial vol^I(Z, Z') in Z (4x4) and Z' (6x6).

    X^I is a monomial in the 24 variables X_{k;i,l} (k in {1,2}, i in {1,2},
    l in {1..6}) read off a 4x6 matrix argument; here the argument is
    Z . upper4(w Z') with w integrated over O(6) with Haar mass one.  Each
    X-factor expands as sum_{a<=4, b<=6} Z_{r,a} w_{a,b} Z'_{b,l}; the
    w-monomials are integrated exactly by the Weingarten moment.

    `I` is a length-24 exponent tuple over the flat X-variable indices (as
    produced by dk_expand), or an equivalent {index: exponent} dict.
    Returns a dict mapping ((Z-entry, exp), ...), ((Z'-entry, exp), ...) keys
    to rational coefficients.
    """
    if not isinstance(I, dict):
        I = {k: e for k, e in enumerate(I) if e}
    factors: List[Tuple[int, int]] = []  # (row in the 4x6 argument, column l)
    for flat, e in I.items():
        k = flat // 12 + 1
        i = (flat % 12) // 6 + 1
        l = flat % 6 + 1
        for _ in range(e):
            factors.append((_x_position(k, i), l - 1))
    deg = len(factors)
    if deg > 6:
        raise ValueError("degree guard: total degree 2N with N <= 3")
    if deg % 2:
        return {}
    # Each X-factor expands as sum_{a,b} Z_{r_t,a} w_{a,b} Z'_{b,l_t}, and the
    # Haar integral of the w-monomial is sum_{m,n} Wg(m,n) d_m(a) d_n(b); the
    # a-choices and b-choices therefore decouple per pair partition.
    table = weingarten_table(deg // 2, d)
    rows = [f[0] for f in factors]
    lcols = [f[1] for f in factors]
    a_counts: List[Dict[tuple, int]] = []
    b_counts: List[Dict[tuple, int]] = []
    for part in table.partitions:
        ac: Dict[tuple, int] = {}
        for avec in itertools.product(range(4), repeat=deg):
            if not _delta(part, avec):
                continue
            zkey: Dict[Tuple[int, int], int] = {}
            for r, a in zip(rows, avec):
                zkey[(r, a)] = zkey.get((r, a), 0) + 1
            k = tuple(sorted(zkey.items()))
            ac[k] = ac.get(k, 0) + 1
        a_counts.append(ac)
        bc: Dict[tuple, int] = {}
        for bvec in itertools.product(range(d), repeat=deg):
            if not _delta(part, bvec):
                continue
            zpkey: Dict[Tuple[int, int], int] = {}
            for b, l in zip(bvec, lcols):
                zpkey[(b, l)] = zpkey.get((b, l), 0) + 1
            k = tuple(sorted(zpkey.items()))
            bc[k] = bc.get(k, 0) + 1
        b_counts.append(bc)
    result: Dict[Tuple[tuple, tuple], Fraction] = {}
    for ia, ac in enumerate(a_counts):
        for ib, bc in enumerate(b_counts):
            wg = table.wg[ia][ib]
            if wg == 0:
                continue
            for ka, ca in ac.items():
                for kb, cb in bc.items():
                    key = (ka, kb)
                    result[key] = result.get(key, Fraction(0)) + wg * ca * cb
    return {k: v for k, v in result.items() if v != 0}


def volI_from_expansion(expansion: MonomialExpansion, I: Tuple[int, ...]):
    """Convenience: vol^I for one exponent index of a dk expansion."""
    if I not in expansion.terms:
        raise KeyError("index not in the expansion's index set")
    return volI_polynomial(I)
