"""Exact arithmetic foundation: rationals, cyclotomic numbers, residue symbols.

Everything here is exact.  Rationals are ``fractions.Fraction``; elements of
cyclotomic fields are :class:`CycNum`, stored sparsely in the group ring
Z[Z/m] and canonicalized on a tensor basis of prime-power cyclotomic bases.
No floating point anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

RatLike = Union[int, Fraction]

INF = "inf"  # marker for the archimedean place


# ---------------------------------------------------------------------------
# rationals and valuations
# ---------------------------------------------------------------------------

def parse_frac(s: Union[str, int, Fraction]) -> Fraction:
    """Parse a rational given as ``"p/q"`` (or ``"p"``), int or Fraction."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(s)


def format_frac(x: RatLike) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def v_ell(x: RatLike, ell: int) -> Union[int, float]:
    """The ell-adic valuation of a rational; ``v_ell(0) = +inf``."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    n = x.numerator
    while n % ell == 0:
        n //= ell
        v += 1
    d = x.denominator
    while d % ell == 0:
        d //= ell
        v -= 1
    return v


def abs_ell(x: RatLike, ell: int) -> Fraction:
    """|x|_ell = ell^(-v_ell(x)); satisfies |ell|_ell = 1/ell."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    return Fraction(ell) ** (-v_ell(x, ell))


def unit_part(x: RatLike, ell: int) -> Fraction:
    """x divided by its ell-power: an ell-adic unit for nonzero x."""
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("unit part of 0")
    return x / Fraction(ell) ** v_ell(x, ell)


def mod_prime_power(x: RatLike, ell: int, k: int) -> int:
    """The image in Z/ell^k of a rational x lying in Z_ell (unit denominator)."""
    x = Fraction(x)
    q = ell ** k
    if q == 1:
        return 0
    den = x.denominator
    if den % ell == 0:
        raise ValueError(f"{x} is not an ell-adic integer at ell={ell}")
    return x.numerator * pow(den, -1, q) % q


# ---------------------------------------------------------------------------
# residue and Hilbert symbols
# ---------------------------------------------------------------------------

def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi_symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _square_free_int(x: Fraction) -> int:
    # integer representative of x modulo nonzero rational squares
    return x.numerator * x.denominator


def hilbert_symbol(a: RatLike, b: RatLike, v: Union[int, str]) -> int:
    """Local Hilbert symbol (a,b)_v in {+1,-1}.

    ``v`` is a prime or the string ``"inf"``.  Odd primes use the tame
    formula, v=2 the unit-square-class formula, infinity the sign rule.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert_symbol requires nonzero arguments")
    ai, bi = _square_free_int(a), _square_free_int(b)
    if v == INF:
        return -1 if (ai < 0 and bi < 0) else 1
    p = int(v)
    if p == 2:
        alpha, u = 0, ai
        while u % 2 == 0:
            u //= 2
            alpha += 1
        beta, w = 0, bi
        while w % 2 == 0:
            w //= 2
            beta += 1
        eps_u, eps_w = ((u - 1) // 2) % 2, ((w - 1) // 2) % 2
        om_u, om_w = ((u * u - 1) // 8) % 2, ((w * w - 1) // 8) % 2
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    alpha, u = 0, ai
    while u % p == 0:
        u //= p
        alpha += 1
    beta, w = 0, bi
    while w % p == 0:
        w //= p
        beta += 1
    s = 1
    if (alpha * beta) % 2 and p % 4 == 3:
        s = -s
    if beta % 2:
        s *= jacobi_symbol(u % p, p)
    if alpha % 2:
        s *= jacobi_symbol(w % p, p)
    return s


def xi_character(x: RatLike, n_level: int, v: Union[int, str]) -> int:
    """The quadratic character xi: x -> (x, -N)_v attached to the level N."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("xi_character at 0")
    return hilbert_symbol(x, -n_level, v)


# ---------------------------------------------------------------------------
# cyclotomic polynomials (used by tests and by the dense serialization)
# ---------------------------------------------------------------------------

def _poly_divmod_int(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q[i - dd] = c
            for j, dc in enumerate(den):
                num[i - dd + j] -= c * dc
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Coefficient tuple (low degree first) of the m-th cyclotomic polynomial."""
    if m == 1:
        return (-1, 1)
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod_int(num, list(cyclotomic_poly(d)))
            assert not rem, f"cyclotomic division not exact at m={m}, d={d}"
    return tuple(num)


@lru_cache(maxsize=None)
def factorize(m: int) -> Tuple[Tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def euler_phi(m: int) -> int:
    return math.prod((p - 1) * p ** (e - 1) for p, e in factorize(m))


# ---------------------------------------------------------------------------
# sparse canonical reduction in Z[zeta_m]
# ---------------------------------------------------------------------------
#
# Basis of Z[zeta_m] = tensor over p^e || m of Z[zeta_{p^e}] with per-factor
# basis zeta^{c p^{e-1} + s}, 0 <= c < p-1, 0 <= s < p^{e-1}.  A monomial whose
# p-component has top digit c = p-1 is rewritten with the relation
# zeta^{(p-1)p^{e-1}+s} = -sum_{c'<p-1} zeta^{c' p^{e-1}+s}.

@lru_cache(maxsize=None)
def _reduction_data(m: int):
    data = []
    for p, e in factorize(m):
        q = p ** e
        rest = m // q
        # t = 1 mod q, 0 mod rest: shifts only the p-component
        t = rest * pow(rest, -1, q) if rest > 1 else 1
        data.append((p, q, p ** (e - 1), t))
    return tuple(data)


def _canonicalize(m: int, terms: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    cur: Dict[int, Fraction] = {}
    for j, c in terms.items():
        if c:
            jj = j % m
            cur[jj] = cur.get(jj, Fraction(0)) + c
    for p, q, pe1, t in _reduction_data(m):
        new: Dict[int, Fraction] = {}
        for j, c in cur.items():
            if not c:
                continue
            jp = j % q
            if jp // pe1 == p - 1:
                s = jp % pe1
                for c2 in range(p - 1):
                    j2 = (j + (c2 * pe1 + s - jp) * t) % m
                    new[j2] = new.get(j2, Fraction(0)) - c
            else:
                new[j] = new.get(j, Fraction(0)) + c
        cur = new
    return {j: c for j, c in cur.items() if c}


class CycNum:
    """An exact element of Q(zeta_m), canonical sparse representation.

    Mixed-modulus arithmetic embeds both operands into Q(zeta_lcm); equality
    is decided on the canonical tensor basis, which is equivalent to reduction
    modulo the m-th cyclotomic polynomial.
    """

    __slots__ = ("m", "c")

    def __init__(self, m: int, coeffs):
        if m <= 0:
            raise ValueError("modulus must be positive")
        if isinstance(coeffs, Mapping):
            terms = dict(coeffs)
        else:
            terms = {}
            for j, v in enumerate(coeffs):
                if v:
                    terms[j % m] = terms.get(j % m, Fraction(0)) + Fraction(v)
        self.m = m
        self.c = _canonicalize(m, {j: Fraction(v) for j, v in terms.items()})

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(m: int = 1) -> "CycNum":
        return CycNum(m, {})

    @staticmethod
    def one(m: int = 1) -> "CycNum":
        return CycNum(m, {0: 1})

    @staticmethod
    def from_rational(x: RatLike, m: int = 1) -> "CycNum":
        return CycNum(m, {0: Fraction(x)})

    @staticmethod
    def zeta(m: int, k: int = 1) -> "CycNum":
        return CycNum(m, {k % m: 1})

    # -- structure ----------------------------------------------------
    def embed(self, m2: int) -> "CycNum":
        """Image under Q(zeta_m) -> Q(zeta_m2) for m | m2."""
        if m2 % self.m:
            raise ValueError(f"no embedding Q(zeta_{self.m}) -> Q(zeta_{m2})")
        step = m2 // self.m
        return CycNum(m2, {j * step: v for j, v in self.c.items()})

    def _common(self, other: "CycNum"):
        if self.m == other.m:
            return self, other
        m = math.lcm(self.m, other.m)
        return self.embed(m), other.embed(m)

    def is_zero(self) -> bool:
        return not self.c

    def is_rational(self) -> bool:
        return all(j == 0 for j in self.c)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not a rational number: {self}")
        return self.c.get(0, Fraction(0))

    def support_size(self) -> int:
        return len(self.c)

    # -- ring operations ----------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNum.from_rational(x)
        return NotImplemented

    def __add__(self, other):
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        out = dict(a.c)
        for j, v in b.c.items():
            w = out.get(j, Fraction(0)) + v
            if w:
                out[j] = w
            elif j in out:
                del out[j]
        r = CycNum.__new__(CycNum)
        r.m, r.c = a.m, out  # sum of canonical forms is canonical
        return r

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        r = CycNum.__new__(CycNum)
        r.m, r.c = self.m, {j: -v for j, v in self.c.items()}
        return r

    def __sub__(self, other):
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return CycNum.zero(self.m)
            f = Fraction(other)
            r = CycNum.__new__(CycNum)
            r.m, r.c = self.m, {j: v * f for j, v in self.c.items()}
            return r
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        m = a.m
        conv: Dict[int, Fraction] = {}
        for i, ci in a.c.items():
            for j, cj in b.c.items():
                k = (i + j) % m
                conv[k] = conv.get(k, Fraction(0)) + ci * cj
        return CycNum(m, conv)

    __rmul__ = __mul__

    def inv(self) -> "CycNum":
        """Multiplicative inverse in Q(zeta_m), by exact linear algebra."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        m = self.m
        d = euler_phi(m)
        if d > 300:
            raise ValueError(f"inverse in Q(zeta_{m}) beyond supported degree")
        basis = _canonical_exponents(m)
        index = {e: i for i, e in enumerate(basis)}
        cols = []
        for e in basis:
            prod = self * CycNum.zeta(m, e)
            col = [Fraction(0)] * d
            for j, v in prod.c.items():
                col[index[j]] = v
            cols.append(col)
        n = d
        aug = [[cols[k][i] for k in range(n)] + [Fraction(1 if basis[i] == 0 else 0)]
               for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular multiplication matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv_p = 1 / aug[col][col]
            aug[col] = [v * inv_p for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
        return CycNum(m, {basis[i]: aug[i][n] for i in range(n)})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) * Fraction(other) ** -1
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a * b.inv()

    def __rtruediv__(self, other):
        return CycNum._coerce(other) / self

    def __pow__(self, k: int) -> "CycNum":
        if k < 0:
            return self.inv() ** (-k)
        result = CycNum.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CycNum":
        """The automorphism zeta_m -> zeta_m^{-1} (complex conjugation)."""
        return CycNum(self.m, {(-j) % self.m: v for j, v in self.c.items()})

    def galois(self, k: int) -> "CycNum":
        """The automorphism zeta_m -> zeta_m^k for k coprime to m."""
        if math.gcd(k, self.m) != 1:
            raise ValueError("galois exponent must be coprime to modulus")
        return CycNum(self.m, {(j * k) % self.m: v for j, v in self.c.items()})

    # -- comparison / io ------------------------------------------------
    def __eq__(self, other) -> bool:
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a.c == b.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c.get(0, Fraction(0)))
        return hash((self.m, tuple(sorted(self.c.items()))))

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for j in sorted(self.c):
            v = self.c[j]
            if j == 0:
                terms.append(format_frac(v))
            else:
                base = f"z{self.m}" + (f"^{j}" if j > 1 else "")
                terms.append(base if v == 1 else f"{format_frac(v)}*{base}")
        return " + ".join(terms)

    def to_json(self) -> dict:
        dense = [Fraction(0)] * self.m
        for j, v in self.c.items():
            dense[j] = v
        return {"m": self.m, "coeffs": [format_frac(v) for v in dense]}

    @staticmethod
    def from_json(d: dict) -> "CycNum":
        return CycNum(int(d["m"]), [parse_frac(c) for c in d["coeffs"]])

    def denominator(self) -> int:
        """LCM of coefficient denominators on the canonical basis."""
        return math.lcm(*(v.denominator for v in self.c.values())) if self.c else 1


@lru_cache(maxsize=None)
def _canonical_exponents(m: int) -> tuple:
    """Sorted exponents of the canonical tensor basis of Z[zeta_m]."""
    exps = [0]
    for p, q, pe1, t in _reduction_data(m):
        new = []
        for j in exps:
            for c in range(p - 1):
                for s in range(pe1):
                    new.append((j + (c * pe1 + s) * t) % m)
        exps = new
    return tuple(sorted(set(exps)))


def cyc_reduce(x: CycNum) -> CycNum:
    """Canonical representative modulo Phi_m (CycNum is kept canonical, so
    this is the identity; provided as the explicit canonicalization hook)."""
    return CycNum(x.m, x.c)


def epsilon4(m: int) -> CycNum:
    """epsilon(m) = 1 for m = 1 mod 4, i (in Q(zeta_4)) for m = 3 mod 4."""
    if m % 2 == 0:
        raise ValueError("epsilon4 defined on odd integers only")
    return CycNum.one() if m % 4 == 1 else CycNum.zeta(4, 1)


def quad_gauss(c: int) -> CycNum:
    """Literal quadratic Gauss sum sum_j zeta_c^{j^2} = epsilon(c) sqrt(c), c odd."""
    if c <= 0 or c % 2 == 0:
        raise ValueError("quad_gauss needs odd positive c")
    terms: Dict[int, int] = {}
    for j in range(c):
        k = (j * j) % c
        terms[k] = terms.get(k, 0) + 1
    return CycNum(c, {k: Fraction(v) for k, v in terms.items()})


def eps_sqrt(c: int) -> CycNum:
    """epsilon(c)*sqrt(c) as an exact element of Z[zeta_{4c}], for odd c > 0,
    built from the prime factorization (equals quad_gauss(c), cheaply)."""
    if c <= 0 or c % 2 == 0:
        raise ValueError("eps_sqrt needs odd positive c")
    sq = 1          # the square part of c
    val: CycNum = epsilon4(c)
    for p, e in factorize(c):
        sq *= p ** (e // 2)
        if e % 2:
            # sqrt(p) = quad_gauss(p) / epsilon(p); epsilon(p)^-1 = 1 or -i
            val = val * quad_gauss(p)
            if p % 4 == 3:
                val = val * CycNum.zeta(4, 3)  # -i = zeta_4^3
    return val * sq
