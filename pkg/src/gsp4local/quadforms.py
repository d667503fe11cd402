"""Symmetric matrices over Z_ell: congruence diagonalization, Jordan-type
canonical forms, equivalence mod ell^k, rational invariants, and the rank-6
extension search used by the level-eta setup."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.ntheory import factorint
from sympy.ntheory.residue_ntheory import sqrt_mod

from .cyclo import hilbert_symbol, jacobi_symbol, mod_prime_power, unit_part, v_ell

RatLike = Union[int, Fraction]
Matrix = List[List[Fraction]]


# ---------------------------------------------------------------------------
# small exact-matrix helpers
# ---------------------------------------------------------------------------

def _as_matrix(a) -> Matrix:
    return [[Fraction(x) for x in row] for row in a]


def _is_symmetric(m: Matrix) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(n))


def _identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_det(a) -> Fraction:
    m = _as_matrix(a)
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def mat_inv_mod(d: Sequence[Sequence[int]], q: int) -> List[List[int]]:
    """Inverse of an integer matrix modulo q (q a prime power here)."""
    n = len(d)
    aug = [[x % q for x in row] + [int(i == j) for j in range(n)]
           for i, row in enumerate(d)]
    for col in range(n):
        piv = next((r for r in range(col, n)
                    if math.gcd(aug[r][col], q) == 1), None)
        if piv is None:
            raise ValueError("matrix not invertible mod q")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, q)
        aug[col] = [(x * inv) % q for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % q for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# congruence diagonalization
# ---------------------------------------------------------------------------

def _sym_diagonalize(a, key=None) -> Tuple[Matrix, List[Fraction]]:
    """Symmetric Gaussian elimination: returns (D, lam) with A = D^t diag(lam) D.

    ``key`` ranks candidate pivots (smaller is better); with key = the
    ell-adic valuation every elimination factor lies in Z_ell and D is in
    GL_n(Z_ell); with key = None any nonzero pivot is accepted and D is merely
    in GL_n(Q).  Ties prefer diagonal pivots, which is what makes the
    off-diagonal repair step (row/col addition) valid.
    """
    m = _as_matrix(a)
    n = len(m)
    if not _is_symmetric(m):
        raise ValueError("matrix must be symmetric")
    f = _identity(n)  # accumulates D with A = D^t diag D

    def col_add(i, j, c):  # col_i += c*col_j, row_i += c*row_j; D-row fixup
        for r in range(n):
            m[r][i] += c * m[r][j]
        for r in range(n):
            m[i][r] += c * m[j][r]
        f[j] = [x - c * y for x, y in zip(f[j], f[i])]

    def swap(i, j):
        for r in range(n):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        m[i], m[j] = m[j], m[i]
        f[i], f[j] = f[j], f[i]

    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(i, n):
                if m[i][j]:
                    cand = ((key(m[i][j]) if key else 0, 0 if i == j else 1, i, j))
                    if best is None or cand < best:
                        best = cand
        if best is None:
            break  # remaining block is zero
        _, offdiag, i, j = best
        if offdiag:
            # only off-diagonal entries realize the minimum; for odd ell
            # v(a_ii + 2 a_ij + a_jj) = v(a_ij), so one addition exposes a
            # diagonal pivot of minimal valuation
            col_add(i, j, Fraction(1))
        if i != k:
            swap(i, k)
        piv = m[k][k]
        for r in range(k + 1, n):
            if m[r][k]:
                col_add(r, k, -m[r][k] / piv)
    return f, [m[i][i] for i in range(n)]


def diagonalize_zl(a, ell: int) -> Tuple[Matrix, List[Fraction]]:
    """A = D^t diag(lam) D with D in GL_n(Z_ell) (rational entries, ell-unit
    denominators and determinant)."""
    if ell == 2:
        raise ValueError("ell = 2 Jordan theory is out of scope")
    d, lam = _sym_diagonalize(a, key=lambda x: v_ell(x, ell))
    assert all(v_ell(x, ell) >= 0 for row in d for x in row if x)
    return d, lam


def diagonalize_q(a) -> Tuple[Matrix, List[Fraction]]:
    """Rational congruence diagonalization (no integrality constraint)."""
    return _sym_diagonalize(a, key=None)


# ---------------------------------------------------------------------------
# Jordan-type canonical forms
# ---------------------------------------------------------------------------

def least_nonresidue(ell: int) -> int:
    """The fixed non-square unit z: least positive non-residue mod ell."""
    z = 2
    while jacobi_symbol(z, ell) != -1:
        z += 1
    return z


@dataclass(frozen=True)
class JordanBlock:
    k: int
    n: int
    type: str  # "one" for 1_n, "z" for diag(1_{n-1}, z)

    def __post_init__(self):
        if self.type not in ("one", "z"):
            raise ValueError("block type must be 'one' or 'z'")
        if self.n < 1:
            raise ValueError("block size must be positive")


@dataclass(frozen=True)
class JordanForm:
    ell: int
    blocks: Tuple[JordanBlock, ...]
    zero_block: int = 0

    def __post_init__(self):
        ks = [b.k for b in self.blocks]
        if ks != sorted(set(ks)):
            raise ValueError("block exponents must be strictly increasing")

    @property
    def n(self) -> int:
        return sum(b.n for b in self.blocks) + self.zero_block

    @property
    def nonsingular(self) -> bool:
        return self.zero_block == 0

    def v_det(self) -> int:
        if not self.nonsingular:
            raise ValueError("singular form")
        return sum(b.k * b.n for b in self.blocks)

    def det_unit_jacobi(self) -> int:
        """Jacobi symbol of the unit part of det (z count parity)."""
        return (-1) ** sum(1 for b in self.blocks if b.type == "z")

    def diagonal(self) -> List[Fraction]:
        z = least_nonresidue(self.ell)
        out: List[Fraction] = []
        for b in self.blocks:
            pw = Fraction(self.ell) ** b.k
            out.extend([pw] * (b.n - 1))
            out.append(pw * (z if b.type == "z" else 1))
        out.extend([Fraction(0)] * self.zero_block)
        return out

    def as_matrix(self) -> Matrix:
        d = self.diagonal()
        return [[d[i] if i == j else Fraction(0) for j in range(len(d))]
                for i in range(len(d))]

    def to_json(self) -> dict:
        out = {"ell": self.ell,
               "blocks": [{"k": b.k, "n": b.n, "type": b.type}
                          for b in self.blocks]}
        if self.zero_block:
            out["zero_block"] = self.zero_block
        return out

    @classmethod
    def from_json(cls, data: dict) -> "JordanForm":
        return cls(data["ell"],
                   tuple(JordanBlock(b["k"], b["n"], b["type"])
                         for b in data["blocks"]),
                   data.get("zero_block", 0))


def _sum_of_two_squares_mod(target: int, ell: int, q: int) -> Tuple[int, int]:
    """(x, y) with x^2 + y^2 = target mod q = ell^M, x a unit."""
    for y in range(ell):
        rem = (target - y * y) % ell
        if rem and jacobi_symbol(rem, ell) == 1:
            x = sqrt_mod((target - y * y) % q, q)
            return int(x), y
    raise ArithmeticError("no two-square representation found")  # unreachable


def jordan_decompose(a, ell: int, prec: Optional[int] = None):
    """(D, J): D in GL_n(Z/ell^prec) with D^t J D = A mod ell^prec.

    The input is exact rational data, so the diagonalization itself has no
    precision loss; prec only truncates the returned witness D.
    """
    if ell == 2:
        raise ValueError("ell = 2 is out of scope")
    d0, lam = diagonalize_zl(a, ell)
    n = len(lam)
    z = least_nonresidue(ell)
    vals = [(v_ell(x, ell) if x else math.inf) for x in lam]
    finite = [v for v in vals if v != math.inf]
    if any(v != int(v) or v != math.ceil(v) for v in finite):
        raise AssertionError("non-integer valuation")
    if prec is None:
        prec = (max(int(v) for v in finite) + 2) if finite else 1
    kmin = min((int(v) for v in finite), default=0)
    if kmin < 0 and prec <= -kmin:
        raise ValueError("precision insufficient for negative exponents")
    q = ell ** prec

    # per-entry canonical unit (1 or z) and the scaling witness w
    entries = []  # (k, type, original index, w mod q)
    for i, x in enumerate(lam):
        if x == 0:
            entries.append((math.inf, "zero", i, 1))
            continue
        k = int(vals[i])
        u = unit_part(x, ell)
        if jacobi_symbol(mod_prime_power(u, ell, 1), ell) == 1:
            t, tgt = 1, "one"
        else:
            t, tgt = z, "z"
        w = int(sqrt_mod(mod_prime_power(u / t, ell, prec), q))
        entries.append((k, tgt, i, w))

    order = sorted(range(n), key=lambda i: (entries[i][0],
                                            0 if entries[i][1] == "one" else 1))
    # T = Q * W * d0 with W = diag(w), Q the sorting permutation
    t_mat = [[mod_prime_power(entries[order[r]][3] * d0[order[r]][c], ell, prec)
              for c in range(n)] for r in range(n)]
    diag_units: List[Union[int, str]] = []  # 1, z, or "zero" in sorted order
    diag_ks = []
    for r in range(n):
        k, tp, _, _ = entries[order[r]]
        diag_ks.append(k)
        diag_units.append("zero" if tp == "zero" else (z if tp == "z" else 1))

    # pair up z entries within each exponent group: diag(z,z) ~ diag(1,1)
    r = 0
    while r < n:
        if diag_units[r] == z and r + 1 < n and diag_units[r + 1] == z \
                and diag_ks[r] == diag_ks[r + 1]:
            x, y = _sum_of_two_squares_mod(z, ell, q)
            row_r = t_mat[r]
            row_s = t_mat[r + 1]
            t_mat[r] = [(x * u + y * v) % q for u, v in zip(row_r, row_s)]
            t_mat[r + 1] = [(-y * u + x * v) % q for u, v in zip(row_r, row_s)]
            diag_units[r] = diag_units[r + 1] = 1
            r += 2
        else:
            r += 1

    # assemble blocks (within a group: all 1's, then at most one z)
    blocks: List[JordanBlock] = []
    zero_block = 0
    i = 0
    while i < n:
        if diag_units[i] == "zero":
            zero_block = n - i
            break
        k = diag_ks[i]
        j = i
        has_z = False
        while j < n and diag_ks[j] == k:
            if diag_units[j] == z:
                has_z = True
            j += 1
        blocks.append(JordanBlock(int(k), j - i, "z" if has_z else "one"))
        i = j
    return t_mat, JordanForm(ell, tuple(blocks), zero_block)


# ---------------------------------------------------------------------------
# equivalence mod ell^k
# ---------------------------------------------------------------------------

def _truncated_data(j: JordanForm, k: int):
    low = tuple((b.k, b.n, b.type) for b in j.blocks if b.k < k)
    high = sum(b.n for b in j.blocks if b.k >= k) + j.zero_block
    return low, high


def equivalent_mod(a, b, ell: int, k: int):
    """Decide A ~ B mod ell^k; returns (bool, witness) with A = D B D^t mod
    ell^k when equivalent.

    Small cases (n <= 2, ell^k <= 9) are settled by exhaustive search over
    GL_n(Z/ell^k); otherwise both sides are put in canonical form and the
    exponent/size/determinant-class data truncated at k is compared.
    """
    A, B = _as_matrix(a), _as_matrix(b)
    n = len(A)
    if len(B) != n:
        raise ValueError("size mismatch")
    q = ell ** k
    if n <= 2 and q <= 9:
        Ai = [[mod_prime_power(x, ell, k) for x in row] for row in A]
        Bi = [[mod_prime_power(x, ell, k) for x in row] for row in B]
        if n == 1:
            for x in range(1, q):
                if x % ell and (x * x * Bi[0][0]) % q == Ai[0][0] % q:
                    return True, [[x]]
            return False, None
        for d00 in range(q):
            for d01 in range(q):
                for d10 in range(q):
                    for d11 in range(q):
                        if (d00 * d11 - d01 * d10) % ell == 0:
                            continue
                        D = [[d00, d01], [d10, d11]]
                        P = mat_mul(mat_mul(D, Bi), [[d00, d10], [d01, d11]])
                        if all((P[i][j] - Ai[i][j]) % q == 0
                               for i in range(2) for j in range(2)):
                            return True, D
        return False, None

    da, ja = jordan_decompose(A, ell, prec=max(k, 1) + 1)
    db, jb = jordan_decompose(B, ell, prec=max(k, 1) + 1)
    if _truncated_data(ja, k) != _truncated_data(jb, k):
        return False, None
    # A = Da^t J Da, B = Db^t J Db mod ell^k  =>  A = (Db^-1 Da)^t B (...)
    dbi = mat_inv_mod(db, q)
    m = [[sum(dbi[i][t] * da[t][j] for t in range(n)) % q for j in range(n)]
         for i in range(n)]
    witness = [[m[j][i] for j in range(n)] for i in range(n)]  # transpose
    return True, witness


# ---------------------------------------------------------------------------
# rational invariants and the eta extension search
# ---------------------------------------------------------------------------

def squarefree_class(x: RatLike) -> int:
    """Canonical representative (signed squarefree integer) of x mod squares."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("0 has no square class")
    out = -1 if x < 0 else 1
    for p, e in factorint(abs(x.numerator) * x.denominator).items():
        if e % 2:
            out *= p
    return out


@dataclass(frozen=True)
class QlInvariants:
    rank: int
    disc: int  # signed squarefree representative of the discriminant class
    hasse: int  # in {+1, -1}


def ql_invariants(a, v: Union[int, str]) -> QlInvariants:
    """Rank, discriminant class, and Hasse invariant of a nonsingular
    symmetric rational matrix at the place v (prime or "inf")."""
    _, lam = diagonalize_q(a)
    if any(x == 0 for x in lam):
        raise ValueError("singular matrix")
    hasse = 1
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            hasse *= hilbert_symbol(lam[i], lam[j], v)
    disc = squarefree_class(math.prod(lam, start=Fraction(1)))
    return QlInvariants(len(lam), disc, hasse)


def eta_matrix(N: int, N1: int) -> Matrix:
    """The 6x6 diagonal form diag(N^2/2, N^2/2, N^2/2, N^2/2, N/N1, N1)."""
    d = [Fraction(N * N, 2)] * 4 + [Fraction(N, N1), Fraction(N1)]
    return [[d[i] if i == j else Fraction(0) for j in range(6)]
            for i in range(6)]


def _invariant_places(diag_entries) -> List[Union[int, str]]:
    primes = {2}
    for x in diag_entries:
        x = Fraction(x)
        primes.update(factorint(abs(x.numerator) * x.denominator).keys())
    primes.discard(2)
    return ["inf", 2] + sorted(primes)


def extend_to_eta(beta, N: int, N1: int, bound: int = 200):
    """Find (a, b), nonzero rationals, with diag(2*beta, a, b) rationally
    equivalent to the 6x6 form eta = diag(N^2/2,...,N/N1,N1).

    Existence is certified by matching rank, signature, discriminant class
    and Hasse invariants at every relevant place; the first (a, b) in the
    search order a = 1, -1, 2, -2, ... (with b forced by the determinant
    class) is returned.  No congruence witness is constructed.
    """
    B2 = [[2 * Fraction(x) for x in row] for row in beta]
    if len(B2) != 4 or not _is_symmetric(B2):
        raise ValueError("beta must be symmetric 4x4")
    _, lam = diagonalize_q(B2)
    if any(x == 0 for x in lam):
        raise ValueError("beta must be nonsingular")
    eta = eta_matrix(N, N1)
    eta_diag = [eta[i][i] for i in range(6)]
    if any(x < 0 for x in lam):
        raise ArithmeticError(
            "no extension exists: eta is positive definite but beta is not "
            "(failing place: inf)")
    # ab must equal det(eta) det(2 beta) modulo squares
    c0 = squarefree_class(math.prod(lam, start=Fraction(1))
                          * math.prod(eta_diag, start=Fraction(1)))
    failures = []
    for mag in range(1, bound + 1):
        for a in (mag, -mag):
            b = squarefree_class(Fraction(c0) * a)
            if a < 0 or b < 0:
                continue  # would break positive-definiteness
            cand_diag = lam + [Fraction(a), Fraction(b)]
            places = _invariant_places(cand_diag + eta_diag)
            bad = []
            for v in places:
                h1 = 1
                for i in range(6):
                    for j in range(i + 1, 6):
                        h1 *= hilbert_symbol(cand_diag[i], cand_diag[j], v)
                if h1 != ql_invariants(eta, v).hasse:
                    bad.append(v)
            if not bad:
                return a, b
            failures.append((a, b, tuple(bad)))
    raise ArithmeticError(
        f"extension search exhausted at bound {bound}; "
        f"unsatisfied places per candidate: {failures[:5]} ...")
