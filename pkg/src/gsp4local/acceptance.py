"""End-to-end acceptance checks shared by the test suite and the CLI.

Thirteen numbered criteria, each packaged as a function returning a report
dict with a boolean verdict, timing, and enough detail to diagnose a
failure.  Every check compares library output against an independent
oracle: symbolic identities, brute-force enumeration, Riemann sums,
Monte Carlo sampling, or direct shell-sum assembly.  Nothing in here is
allowed to reuse the closed form it is checking.
"""
from __future__ import annotations

import math
import random
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cyclo import CycNum, jacobi_symbol, mod_prime_power, v_ell
from .gauss import (gauss_sum_closed, padic_integral_1d,
                    padic_integral_riemann, vanishing_1d,
                    verify_gauss_closed_batch)
from .localfactors import (DirichletChar, beta_level, char_integral_1d,
                           dk_expand, kappa_tilde, local_density,
                           master_integral, master_total_symbolic,
                           master_value, p_zeta_factor,
                           zeta_at_ell_dividing_N)
from .orth import (class_volume, gl_order, orth_order_block, orth_order_lift,
                   orth_order_mod_ell)
from .quadforms import JordanBlock, JordanForm
from .satake import (EPSILON6, J4, SatakeGSp4, W6, adjoint_decompose,
                     lfactor_transfer_check, mat_mul, mat_scal,
                     rho_st_prime, rho_st_restriction, similitude_gsp4)
from .symell import RatFunc, SymbolicEll
from .theta import (QuadLattice, isotropic_w0, theta_coefficient,
                    theta_integrality_report)
from .weingarten import (dn_constant, moment, volI_from_expansion,
                         weingarten_table)


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------

def _report(num: int, name: str, passed: bool, started: float,
            **details) -> dict:
    return {"criterion": num, "name": name, "passed": bool(passed),
            "seconds": round(time.monotonic() - started, 3),
            "details": details}


def format_line(rep: dict) -> str:
    verdict = "PASS" if rep["passed"] else "FAIL"
    return (f"criterion {rep['criterion']:>2} [{verdict}] "
            f"{rep['name']} ({rep['seconds']}s)")


# ---------------------------------------------------------------------------
# criteria 1 and 2: the master integral identities
# ---------------------------------------------------------------------------

def criterion_1(quick: bool = False) -> dict:
    """Plain master integral: eight case identities, displayed total,
    total = 1 at the +1 sign branch, and five numeric spot values."""
    t0 = time.monotonic()
    ok = True
    detail: dict = {}
    try:
        master_integral(False)  # raises on any case/total mismatch
    except AssertionError as exc:  # pragma: no cover - defensive
        ok = False
        detail["identity_error"] = str(exc)
    total = master_total_symbolic(False)
    plus_is_one = total.pin(1) == SymbolicEll.const(1)
    detail["total_at_plus_one"] = plus_is_one
    ok = ok and plus_is_one
    numeric = {}
    for ell in (3, 5, 7, 11, 13):
        lhs = master_value(ell, False)
        rhs = total.eval(ell)
        numeric[ell] = str(lhs)
        ok = ok and lhs == rhs
    detail["values"] = numeric
    return _report(1, "plain master integral identity", ok, t0, **detail)


def criterion_2(quick: bool = False) -> dict:
    """Weighted master integral: the eight weighted case sums and the
    displayed weighted total hold as exact symbolic identities."""
    t0 = time.monotonic()
    ok = True
    detail: dict = {}
    try:
        master_integral(True)
    except AssertionError as exc:  # pragma: no cover - defensive
        ok = False
        detail["identity_error"] = str(exc)
    numeric = {ell: str(master_value(ell, True)) for ell in (3, 5, 7, 11, 13)}
    detail["values"] = numeric
    return _report(2, "weighted master integral identity", ok, t0, **detail)


# ---------------------------------------------------------------------------
# criterion 3: closed-form Gauss sums against the defining sum
# ---------------------------------------------------------------------------

def criterion_3(quick: bool = False) -> dict:
    t0 = time.monotonic()
    cmax, bound = (12, 20) if quick else (60, 60)
    mismatches = 0
    for c in range(1, cmax + 1):
        mismatches += verify_gauss_closed_batch(c, bound)
    cases = cmax * (2 * bound + 1) ** 2
    return _report(3, "Gauss sum closed form vs defining sum",
                   mismatches == 0, t0, cases=cases, mismatches=mismatches)


# ---------------------------------------------------------------------------
# criterion 4: 1-d oscillatory integrals against stabilized Riemann sums
# ---------------------------------------------------------------------------

def _random_rational(rng: random.Random, ell: int, vmin: int = -3,
                     vmax: int = 3) -> Fraction:
    num = rng.randrange(1, 20)
    den = rng.randrange(1, 20)
    while num % ell == 0:
        num = rng.randrange(1, 20)
    while den % ell == 0:
        den = rng.randrange(1, 20)
    sign = rng.choice((1, -1))
    return Fraction(sign * num, den) * Fraction(ell) ** rng.randint(vmin, vmax)


def criterion_4(quick: bool = False) -> dict:
    t0 = time.monotonic()
    per_ell = 30 if quick else 200
    rng = random.Random(0x1D5C04)
    checked = 0
    bad: List[str] = []
    for ell in (3, 5, 7):
        for _ in range(per_ell):
            a = _random_rational(rng, ell) if rng.random() > 0.1 else Fraction(0)
            b = _random_rational(rng, ell) if rng.random() > 0.1 else Fraction(0)
            r = _random_rational(rng, ell) if rng.random() > 0.5 else Fraction(0)
            val = padic_integral_1d(ell, a, b, r)
            ref = padic_integral_riemann(ell, a, b, r)
            if val != ref:
                bad.append(f"value ell={ell} a={a} b={b} r={r}")
            if vanishing_1d(ell, a, b, r) != val.is_zero():
                bad.append(f"vanishing ell={ell} a={a} b={b} r={r}")
            checked += 1
    return _report(4, "p-adic integral vs Riemann oracle", not bad, t0,
                   specs=checked, failures=bad[:5])


# ---------------------------------------------------------------------------
# criterion 5: orthogonal group orders by exhaustive counting
# ---------------------------------------------------------------------------

def _orth_count_exhaustive(diag: Sequence[int], q: int, ell: int) -> int:
    """#{g in GL_n(Z/q) : g^t L g = L mod q} for a diagonal integer form L,
    by complete column-by-column enumeration.

    Column candidates are pre-bucketed by their quadratic value, so the
    search only ever walks actual partial solutions; the final column is
    checked for an invertible determinant mod ell (automatic for unit
    forms, essential for scaled block forms).
    """
    n = len(diag)
    L = np.array([[diag[i] % q if i == j else 0 for j in range(n)]
                  for i in range(n)], dtype=np.int64)
    grids = np.meshgrid(*([np.arange(q, dtype=np.int64)] * n), indexing="ij")
    vs = np.stack(grids, axis=-1).reshape(-1, n)
    qv = np.einsum("vi,i,vi->v", vs, np.array(diag, dtype=np.int64), vs) % q
    pools = [vs[qv == L[j, j]] for j in range(n)]

    def det_unit(cols: List[np.ndarray]) -> bool:
        m = [[int(cols[j][i]) for j in range(n)] for i in range(n)]
        # fraction-free expansion; n <= 4 here
        def det(rows):
            if len(rows) == 1:
                return rows[0][0]
            out, sgn = 0, 1
            for j in range(len(rows)):
                minor = [r[:j] + r[j + 1:] for r in rows[1:]]
                out += sgn * rows[0][j] * det(minor)
                sgn = -sgn
            return out
        return det(m) % ell != 0

    count = 0

    def rec(j: int, chosen: List[np.ndarray], lw: List[np.ndarray]) -> None:
        nonlocal count
        if j == n:
            if det_unit(chosen):
                count += 1
            return
        pool = pools[j]
        mask = np.ones(len(pool), dtype=bool)
        for i, w in enumerate(lw):
            mask &= (pool @ w) % q == L[i, j]
        for v in pool[mask]:
            rec(j + 1, chosen + [v], lw + [(L @ v) % q])

    rec(0, [], [])
    return count


def _hensel_full_rank(diag: Sequence[int], ell: int) -> bool:
    """Check that d(g^t L g) has full rank at every point of O(L, Z/ell).

    The differential sends dg to sym(g^t L dg); full rank n(n+1)/2 at every
    mod-ell solution makes the solution variety smooth, so each lifting step
    Z/ell^k -> Z/ell^{k+1} multiplies the count by exactly
    ell^{n^2 - n(n+1)/2} = ell^{n(n-1)/2}."""
    n = len(diag)
    q = ell
    L = [[diag[i] % q if i == j else 0 for j in range(n)] for i in range(n)]
    grids = np.meshgrid(*([np.arange(q, dtype=np.int64)] * n), indexing="ij")
    vs = np.stack(grids, axis=-1).reshape(-1, n)
    qv = np.einsum("vi,i,vi->v", vs, np.array(diag, dtype=np.int64), vs) % q
    pools = [vs[qv == L[j][j]] for j in range(n)]
    sols: List[List[List[int]]] = []

    def rec(j: int, chosen: List[np.ndarray], lw: List[np.ndarray]) -> None:
        if j == n:
            sols.append([[int(chosen[c][r]) for c in range(n)]
                         for r in range(n)])
            return
        pool = pools[j]
        mask = np.ones(len(pool), dtype=bool)
        for i, w in enumerate(lw):
            mask &= (pool @ w) % q == L[i][j]
        for v in pool[mask]:
            rec(j + 1, chosen + [v], lw + [(np.array(L) @ v) % q])

    rec(0, [], [])
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    target = len(pairs)
    for g in sols:
        # rows: equations indexed by (i,j); columns: the n^2 entries of dg;
        # (g^t L)_{i,k} = g[k][i] * diag[k]
        rows = []
        gtL = [[g[k][i] * diag[k] % ell for k in range(n)] for i in range(n)]
        for (i, j) in pairs:
            row = [0] * (n * n)
            for k in range(n):
                for m in range(n):
                    val = 0
                    if m == j:
                        val += gtL[i][k]
                    if m == i:
                        val += gtL[j][k]
                    row[k * n + m] = (row[k * n + m] + val) % ell
            rows.append(row)
        # Gaussian elimination mod ell
        rank = 0
        cols = n * n
        r = [row[:] for row in rows]
        lead = 0
        for cidx in range(cols):
            piv = None
            for ridx in range(lead, len(r)):
                if r[ridx][cidx] % ell:
                    piv = ridx
                    break
            if piv is None:
                continue
            r[lead], r[piv] = r[piv], r[lead]
            inv = pow(r[lead][cidx], -1, ell)
            r[lead] = [(x * inv) % ell for x in r[lead]]
            for ridx in range(len(r)):
                if ridx != lead and r[ridx][cidx]:
                    f = r[ridx][cidx]
                    r[ridx] = [(x - f * y) % ell
                               for x, y in zip(r[ridx], r[lead])]
            lead += 1
            if lead == len(r):
                break
        rank = lead
        if rank != target:
            return False
    return True


def criterion_5(quick: bool = False) -> dict:
    t0 = time.monotonic()
    bad: List[str] = []
    detail: dict = {}
    smax = 1 if quick else 2
    z = {3: 2, 5: 2}
    for ell in (3, 5):
        for n in (1, 2, 3):
            for btype in ("one", "z"):
                diag = [1] * n
                if btype == "z":
                    diag[-1] = z[ell]
                base = orth_order_mod_ell(btype, n, ell).order
                got = _orth_count_exhaustive(diag, ell, ell)
                if got != base:
                    bad.append(f"mod-{ell} {btype} n={n}: {got} != {base}")
                cert = _hensel_full_rank(diag, ell)
                if not cert:
                    bad.append(f"lift certificate {ell} {btype} n={n}")
                for s in range(1, smax + 1):
                    q = ell ** (s + 1)
                    expected = orth_order_lift(base, n, s, ell)
                    if q ** n <= 20000:
                        got = _orth_count_exhaustive(diag, q, ell)
                        if got != expected:
                            bad.append(
                                f"mod-{q} {btype} n={n}: {got} != {expected}")
                    # else: covered exactly by the smoothness certificate
    # scaled block forms through orth_order_block
    blocks = [
        (3, [1, 1, 3], JordanForm(3, (JordanBlock(0, 2, "one"),
                                      JordanBlock(1, 1, "one")))),
        (3, [2, 3, 3], JordanForm(3, (JordanBlock(0, 1, "z"),
                                      JordanBlock(1, 2, "one")))),
        (5, [1, 2, 5], JordanForm(5, (JordanBlock(0, 2, "z"),
                                      JordanBlock(1, 1, "one")))),
    ]
    if quick:
        blocks = blocks[:1]
    for ell, diag, jf in blocks:
        q = ell ** (jf.blocks[-1].k + 1)
        want = orth_order_block(jf, ell)
        got = _orth_count_exhaustive(diag, q, ell)
        if got != want:
            bad.append(f"block {diag} mod {q}: {got} != {want}")
    # the 4-dimensional anchor value
    o4 = orth_order_mod_ell("one", 4, 3).order
    got4 = _orth_count_exhaustive([1, 1, 1, 1], 3, 3)
    detail["order_1_4_mod_3"] = got4
    if not (o4 == got4 == 1152):
        bad.append(f"#O(1_4, Z/3) = {got4}, formula {o4}, expected 1152")
    return _report(5, "orthogonal orders vs exhaustive counts", not bad, t0,
                   failures=bad, **detail)


# ---------------------------------------------------------------------------
# criterion 6: congruence-class volume by complete orbit classification
# ---------------------------------------------------------------------------

def criterion_6(quick: bool = False) -> dict:
    t0 = time.monotonic()
    n = 4
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    m = 3 ** len(pairs)  # 59049 symmetric matrices over Z/3
    codes = np.arange(m)
    mats = np.zeros((m, n, n), dtype=np.int64)
    rem = codes.copy()
    for (i, j) in pairs:
        d = rem % 3
        rem //= 3
        mats[:, i, j] = d
        mats[:, j, i] = d

    def encode(batch: np.ndarray) -> np.ndarray:
        out = np.zeros(len(batch), dtype=np.int64)
        mult = 1
        for (i, j) in pairs:
            out += batch[:, i, j] % 3 * mult
            mult *= 3
        return out

    perm4 = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        perm4[i][(i + 1) % n] = 1
    trans = np.eye(n, dtype=np.int64)
    trans[0][1] = 1
    scale = np.eye(n, dtype=np.int64)
    scale[0][0] = 2
    gens = [perm4, trans, scale]
    # union-find over the action graph A -> g^t A g
    parent = np.arange(m)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        images = encode(np.einsum("ij,njk,kl->nil", g.T, mats, g) % 3)
        for a in range(m):
            ra, rb = find(a), find(int(images[a]))
            if ra != rb:
                parent[ra] = rb
    roots = np.array([find(a) for a in range(m)])
    sizes: Dict[int, int] = {}
    for r in roots:
        sizes[int(r)] = sizes.get(int(r), 0) + 1
    id_code = int(encode(np.eye(n, dtype=np.int64)[None, :, :])[0])
    orbit_size = sizes[int(roots[id_code])]
    vol = Fraction(orbit_size, m)
    jf = JordanForm(3, (JordanBlock(0, 4, "one"),))
    cv = class_volume(jf, 3)
    coverage = sum(sizes.values()) == m
    ok = (orbit_size == 21060 and vol == Fraction(260, 729)
          and cv.volume == Fraction(260, 729) and coverage)
    return _report(6, "class volume vs exhaustive orbit classification", ok,
                   t0, orbit_size=orbit_size, volume=str(vol),
                   class_volume=str(cv.volume), orbits=len(sizes),
                   coverage=coverage)


# ---------------------------------------------------------------------------
# criterion 7: the zeta factor at ell | N
# ---------------------------------------------------------------------------

def criterion_7(quick: bool = False) -> dict:
    t0 = time.monotonic()
    anchor = zeta_at_ell_dividing_N(3, 3, 1)
    values = {ell: zeta_at_ell_dividing_N(ell, ell, 1)
              for ell in (3, 5, 7, 11)}
    ok = anchor == Fraction(61, 1089) and all(v != 0 for v in values.values())
    return _report(7, "zeta factor at ell | N", ok, t0,
                   anchor=str(anchor),
                   values={k: str(v) for k, v in values.items()})


# ---------------------------------------------------------------------------
# criterion 8: density stabilization at the first feasible level
# ---------------------------------------------------------------------------

# A level-0 representative: unit determinant at 3 and both density levels
# computable at desk scale (found by a systematic scan over digit patterns
# with two symmetric off-diagonal pairs).
STABLE_BETA = [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 2, 0], [1, 1, 0, 0]]


def criterion_8(quick: bool = False) -> dict:
    t0 = time.monotonic()
    ell, N = 3, 3
    h = beta_level(STABLE_BETA, ell)
    d1 = local_density(ell, N, STABLE_BETA, 1)
    lhs = d1 * Fraction(1, ell ** 14)
    detail = {"h": h, "d1": repr(d1)}
    if quick:
        ok = h == 0
        detail["note"] = "level-2 density skipped in quick mode"
        return _report(8, "density stabilization (quick)", ok, t0, **detail)
    d2 = local_density(ell, N, STABLE_BETA, 2)
    rhs = d2 * Fraction(1, ell ** 28)
    detail["d2"] = repr(d2)
    ok = h == 0 and lhs == rhs
    return _report(8, "density stabilization at first feasible level", ok,
                   t0, **detail)


# ---------------------------------------------------------------------------
# criterion 9: the ordinary-prime zeta factor against a shell-sum assembly
# ---------------------------------------------------------------------------

def _y_gauss(p: int, c2: Fraction) -> CycNum:
    """int over Z_p of e_p(-c2 y^2) dy in closed form."""
    m = max(0, -v_ell(c2, p)) if c2 else 0
    if m == 0:
        return CycNum.one()
    q = p ** m
    a0 = mod_prime_power(c2 * q, p, m)
    return gauss_sum_closed((-a0) % q, 0, q) * Fraction(1, q)


def _inner_shell_sum(p: int, theta1: DirichletChar, alpha1: Fraction,
                     chix: DirichletChar, m_parity: int,
                     cmax: int) -> CycNum:
    """int theta_1(c_1) [int chix(x) leg(x)^m e_p(-c_1 x) dx] dc_1, the
    c_1-direction assembled shell by shell from char_integral_1d."""
    leg = DirichletChar.legendre(p)
    chi = chix * leg if m_parity % 2 else chix
    cbar = max(1, theta1.cprime, chi.cprime)
    qb = p ** cbar
    units = [u for u in range(qb) if u % p]
    a1 = CycNum.from_rational(alpha1)
    total = CycNum.zero()
    for k in range(-cmax, 0):
        shell = CycNum.zero()
        for u in units:
            shell = shell + theta1(u) * char_integral_1d(
                chi, Fraction(u, p ** (-k)))
        total = total + a1 ** k * Fraction(p ** (-k), qb) * shell
    if theta1.cprime == 0 and chi.cprime == 0:
        total = total + CycNum.from_rational(
            Fraction(p - 1, p) ** 2) * (CycNum.one()
                                        - a1 * Fraction(1, p)).inv()
    return total


def p_zeta_oracle(p: int, kappa1: DirichletChar, kappa2: DirichletChar,
                  alpha1, alpha2) -> CycNum:
    """Independent assembly of the ordinary-prime zeta factor.

    The double integral over the two diagonal entries of the 2x2 symmetric
    variable is reduced to one-dimensional pieces: the off-diagonal
    direction contributes a closed-form quadratic Gauss factor, each
    diagonal direction a character integral evaluated by char_integral_1d,
    and the unramified tails sum as geometric series.  The assembly uses
    only these primitives plus the overall prefactor; none of the bracket
    constants of the closed-form product are consulted.
    """
    a1, a2 = Fraction(alpha1), Fraction(alpha2)
    c = max(1, kappa1.cprime, kappa2.cprime)
    cmax = c + 2
    kt = kappa_tilde(kappa2)
    chix = kappa1 * kappa2.inverse() * kt
    cbar = max(1, kappa2.cprime, kt.cprime)
    qb = p ** cbar
    units = [u for u in range(qb) if u % p]
    a2c = CycNum.from_rational(a2)
    cache: Dict[int, CycNum] = {}

    def inner(mp: int) -> CycNum:
        if mp not in cache:
            cache[mp] = _inner_shell_sum(p, kappa1, a1, chix, mp, cmax)
        return cache[mp]

    total = CycNum.zero()
    for k in range(-cmax, 0):
        m = -k
        shell = CycNum.zero()
        for u in units:
            c2 = Fraction(u, p ** m)
            zpart = char_integral_1d(kt, c2)
            if zpart.is_zero():
                continue
            shell = shell + kappa2(u) * zpart * _y_gauss(p, c2)
        if not shell.is_zero():
            total = total + a2c ** k * Fraction(p ** m, qb) * shell \
                * inner(m % 2)
    if kappa2.cprime == 0 and kt.cprime == 0:
        total = total + CycNum.from_rational(Fraction(p - 1, p)) \
            * char_integral_1d(kt, Fraction(1)) \
            * (CycNum.one() - a2c * Fraction(1, p)).inv() * inner(0)
    pref = CycNum.from_rational(
        (1 - Fraction(jacobi_symbol(-1, p), p)) * Fraction(1, p ** (5 * c)))
    pref = pref * CycNum.from_rational(a1).inv() ** (2 * c) \
        * CycNum.from_rational(a2).inv() ** (2 * c)
    pref = pref * kappa1(Fraction(1, 2)) * kappa2(Fraction(1, 2))
    return pref * total


def criterion_9(quick: bool = False) -> dict:
    t0 = time.monotonic()
    p = 5
    a1, a2 = Fraction(2), Fraction(3)
    regimes = [
        ("trivial/trivial", DirichletChar.trivial(p), DirichletChar.trivial(p)),
        ("nontrivial/trivial", DirichletChar(p, 1, 1), DirichletChar.trivial(p)),
        ("trivial/nontrivial", DirichletChar.trivial(p), DirichletChar(p, 1, 1)),
        ("nontrivial/nontrivial", DirichletChar(p, 1, 1), DirichletChar(p, 1, 3)),
    ]
    rows = []
    all_equal = True
    for label, k1, k2 in regimes:
        value = p_zeta_factor(p, k1, k2, a1, a2)
        oracle = p_zeta_oracle(p, k1, k2, a1, a2)
        equal = (value - oracle).is_zero()
        ratio = None
        if not equal and not value.is_zero():
            ratio = repr(oracle * value.inv())
        rows.append({"regime": label, "equal": equal, "ratio": ratio})
        all_equal = all_equal and equal
    return _report(9, "ordinary-prime factor vs shell-sum oracle", all_equal,
                   t0, regimes=rows)


# ---------------------------------------------------------------------------
# criterion 10: Weingarten calculus
# ---------------------------------------------------------------------------

_MC_MONOMIALS: List[List[Tuple[int, int]]] = [
    [(1, 1)] * 2,
    [(1, 2)] * 2,
    [(1, 1), (1, 2)],
    [(1, 1), (2, 1)],
    [(1, 1), (2, 2)],
    [(1, 1)] * 4,
    [(1, 2)] * 4,
    [(1, 1), (1, 1), (1, 2), (1, 2)],
    [(1, 1), (1, 1), (2, 1), (2, 1)],
    [(1, 1), (1, 1), (2, 2), (2, 2)],
    [(1, 2), (1, 2), (2, 1), (2, 1)],
    [(1, 1), (1, 1), (1, 1), (1, 2)],
    [(1, 1), (1, 2), (2, 1), (2, 2)],
    [(1, 1), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (1, 1), (2, 3), (2, 3)],
    [(1, 1)] * 6,
    [(1, 1), (1, 1), (1, 1), (1, 1), (1, 2), (1, 2)],
    [(1, 1), (1, 1), (1, 2), (1, 2), (1, 3), (1, 3)],
    [(1, 1), (1, 1), (1, 2), (1, 2), (2, 1), (2, 1)],
    [(1, 1), (2, 2), (3, 3), (4, 4)],
]


def criterion_10(quick: bool = False) -> dict:
    t0 = time.monotonic()
    bad: List[str] = []
    for N in range(4):
        if not weingarten_table(N, 6).check():
            bad.append(f"G.Wg != 1 at N={N}")
    if moment([(1, 1), (1, 1)]) != Fraction(1, 6):
        bad.append("second moment != 1/6")
    if moment([(1, 1)] * 4) != Fraction(1, 16):
        bad.append("fourth moment != 1/16")
    # Monte Carlo over Haar-random O(6) via QR of Gaussian matrices
    samples = 10 ** 5 if quick else 10 ** 6
    rng = np.random.default_rng(0xA11CE)
    sums = np.zeros(len(_MC_MONOMIALS))
    sqs = np.zeros(len(_MC_MONOMIALS))
    chunk = 50000
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        gs = rng.standard_normal((k, 6, 6))
        qmat, rmat = np.linalg.qr(gs)
        signs = np.sign(np.einsum("nii->ni", rmat))
        qmat = qmat * signs[:, None, :]
        for idx, mono in enumerate(_MC_MONOMIALS):
            prod = np.ones(k)
            for (i, j) in mono:
                prod = prod * qmat[:, i - 1, j - 1]
            sums[idx] += prod.sum()
            sqs[idx] += (prod * prod).sum()
        done += k
    mc_rows = []
    for idx, mono in enumerate(_MC_MONOMIALS):
        mean = sums[idx] / samples
        var = max(sqs[idx] / samples - mean * mean, 0.0)
        sigma = math.sqrt(var / samples)
        exact = float(moment(mono))
        dev = abs(mean - exact)
        okm = dev <= 3 * sigma + 1e-12
        if not okm:
            bad.append(f"MC monomial {mono}: |{mean:.6f}-{exact:.6f}|"
                       f" > 3*{sigma:.2e}")
        mc_rows.append({"monomial": str(mono), "exact": exact,
                        "mc": round(mean, 6), "sigma": round(sigma, 7)})
    # d(N) * vol^I integrality over the weight expansions
    kmax = 7 if quick else 8
    nonintegral = 0
    scanned = 0
    lcm_clears = True
    for k1 in range(3, kmax):
        for k2 in range(3, min(k1, kmax - k1) + 1):
            if k1 + k2 > kmax:
                continue
            exp = dk_expand(k1, k2)
            for I in exp.terms:
                nn = sum(I) // 2
                if nn == 0:
                    continue
                consts = dn_constant(nn)
                poly = volI_from_expansion(exp, I)
                for coeff in poly.values():
                    scanned += 1
                    if (coeff * consts.dn).denominator != 1:
                        nonintegral += 1
                    if (coeff * consts.denominator_bound).denominator != 1:
                        lcm_clears = False
    dn_ok = nonintegral == 0
    if not dn_ok:
        bad.append(f"d(N)*vol^I: {nonintegral}/{scanned} coefficients "
                   "non-integral (the gcd constant does not clear the "
                   "denominators; the lcm bound does)")
    ok = not bad
    return _report(10, "Weingarten moments, Monte Carlo, d(N) integrality",
                   ok, t0, failures=bad[:6], dn_nonintegral=nonintegral,
                   dn_scanned=scanned, lcm_bound_clears=lcm_clears,
                   mc=mc_rows[:4])


# ---------------------------------------------------------------------------
# criterion 11: the degree-6/degree-5 transfer identity
# ---------------------------------------------------------------------------

def _random_satake(rng: random.Random) -> SatakeGSp4:
    def nz() -> Fraction:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        return x if x else Fraction(1)
    return SatakeGSp4(nz(), nz(), nz())


def criterion_11(quick: bool = False) -> dict:
    t0 = time.monotonic()
    trials = 20 if quick else 100
    rng = random.Random(0x5A7A4E)
    split_ok = 0
    nonsplit_matches = 0
    for _ in range(trials):
        s = _random_satake(rng)
        if lfactor_transfer_check(s, +1).match:
            split_ok += 1
        if lfactor_transfer_check(s, -1).match:
            nonsplit_matches += 1
    ok = split_ok == trials
    return _report(11, "transfer identity on random Satake tuples", ok, t0,
                   split_pass=f"{split_ok}/{trials}",
                   nonsplit_reported_matches=nonsplit_matches,
                   nonsplit_note="reported only; sign normalization open")


# ---------------------------------------------------------------------------
# criterion 12: the adjoint 10+5 decomposition
# ---------------------------------------------------------------------------

def _random_gsp4(rng: random.Random) -> list:
    def fr() -> Fraction:
        return Fraction(rng.randint(-3, 3), rng.randint(1, 3))

    def nzfr() -> Fraction:
        x = fr()
        return x if x else Fraction(1)

    def block_upper(b11, b12, b22):
        g = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
        g[0][2], g[0][3], g[1][2], g[1][3] = b11, b12, b12, b22
        return g

    def block_lower(c11, c12, c22):
        g = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
        g[2][0], g[2][1], g[3][0], g[3][1] = c11, c12, c12, c22
        return g

    t1, t2, nu = nzfr(), nzfr(), nzfr()
    torus = [[Fraction(0)] * 4 for _ in range(4)]
    torus[0][0], torus[1][1] = t1, t2
    torus[2][2], torus[3][3] = nu / t1, nu / t2
    g = mat_mul(block_upper(fr(), fr(), fr()), torus)
    g = mat_mul(g, block_lower(fr(), fr(), fr()))
    return g


def criterion_12(quick: bool = False) -> dict:
    t0 = time.monotonic()
    trials = 20 if quick else 100
    rng = random.Random(0xAD70147)
    bad: List[str] = []
    for tno in range(trials):
        g = _random_gsp4(rng)
        nu = similitude_gsp4(g)
        act = adjoint_decompose(g)  # raises if the splitting is not preserved
        if act.dimensions != (10, 5):
            bad.append(f"trial {tno}: dimensions {act.dimensions}")
            continue
        rst = rho_st_restriction(g)
        scaled = mat_scal(type(rst[0][0])(Fraction(1) / nu), rst)
        if [list(r) for r in act.v2] != scaled:
            bad.append(f"trial {tno}: V2 action != normalized restriction")
    jval = rho_st_prime(J4)
    target = mat_scal(Fraction(-1), mat_mul(EPSILON6, W6))
    if jval != target:
        bad.append("rho'(J4) != -epsilon w6")
    return _report(12, "adjoint 10+5 decomposition", not bad, t0,
                   trials=trials, failures=bad[:5])


# ---------------------------------------------------------------------------
# criterion 13: integrality of theta coefficients
# ---------------------------------------------------------------------------

def _theta_samples() -> List[dict]:
    """Ten coefficient evaluations at N = 3, p = 5, built from actual
    lattice data so each enumeration is nonempty or verifiably empty."""
    N, p = 3, 5
    lat = QuadLattice(N)
    diag = lat.diag
    samples: List[dict] = []

    def beta_from_rows(rows: List[List[int]], denom: int):
        r = len(rows)
        return [[sum(diag[t] * rows[i][t] * rows[j][t] for t in range(6))
                 / denom ** 2 for j in range(r)] for i in range(r)]

    denom = 3 * 5  # rad(N) * p^c with c = 1
    vs = [
        [0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1, 1], [0, 0, 0, 0, 1, 2],
        [0, 0, 0, 0, 2, 1], [0, 0, 0, 0, 0, 2],
    ]
    two_row_pairs = [(0, 1), (0, 3), (2, 5), (4, 1), (2, 4)]
    for (i, j) in two_row_pairs:
        rows = [[3 * x for x in vs[i]], [3 * x for x in vs[j]]]
        samples.append({"beta": beta_from_rows(rows, denom), "kappa": None})
    # the same Gram shapes under nontrivial nebentype data
    chi4 = DirichletChar(5, 1, 1)
    leg5 = DirichletChar.legendre(5)
    samples.append({"beta": beta_from_rows(
        [[3 * x for x in vs[0]], [3 * x for x in vs[1]]], denom),
        "kappa": (chi4, DirichletChar.trivial(5))})
    samples.append({"beta": beta_from_rows(
        [[3 * x for x in vs[2]], [3 * x for x in vs[3]]], denom),
        "kappa": (leg5, chi4)})
    samples.append({"beta": beta_from_rows(
        [[3 * x for x in vs[0]], [3 * x for x in vs[5]]], denom),
        "kappa": (DirichletChar.trivial(5), leg5)})
    # two rank-4 coefficients: top rows are the smallest representatives of
    # the congruence class 3*w0 mod 5, bottom rows have unit 2x2 Gram
    w0 = isotropic_w0(p, 1, diag)
    tops = [[((3 * x + 2) % 5) - 2 for x in row] for row in w0]
    for bots in ([[0, 0, 0, 0, 0, 3], [0, 0, 0, 0, 3, 0]],
                 [[0, 0, 0, 0, 3, 0], [0, 0, 0, 0, 3, 3]]):
        rows = [list(tops[0]), list(tops[1])] + bots
        samples.append({"beta": beta_from_rows(rows, denom), "kappa": None})
    return samples


def criterion_13(quick: bool = False) -> dict:
    t0 = time.monotonic()
    N, p = 3, 5
    samples = _theta_samples()
    if quick:
        samples = samples[:4] + samples[-1:]
    bad: List[str] = []
    rows = []
    for sno, spec in enumerate(samples):
        kap = spec["kappa"]
        kwargs = {}
        order = 1
        c = 1
        if kap is not None:
            kwargs = {"kappa1": kap[0], "kappa2": kap[1]}
            order = math.lcm(kap[0].order(), kap[1].order())
            c = max(1, kap[0].cprime, kap[1].cprime)
        value = theta_coefficient(spec["beta"], N, p, **kwargs)
        rep = theta_integrality_report(value, N, p ** c,
                                       kappa_value_order=order)
        rows.append({"sample": sno, "zero": value.is_zero(), **rep})
        if not (rep["integral"] and rep["level_divides"]):
            bad.append(f"sample {sno}: {rep}")
    return _report(13, "theta coefficient integrality", not bad, t0,
                   samples=len(samples), failures=bad, rows=rows[:4])


# ---------------------------------------------------------------------------
# the runner
# ---------------------------------------------------------------------------

CRITERIA: List[Callable[[bool], dict]] = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
    criterion_11, criterion_12, criterion_13,
]


def run_criterion(number: int, quick: bool = False) -> dict:
    if not 1 <= number <= 13:
        raise ValueError("criterion number must be 1..13")
    return CRITERIA[number - 1](quick)


def run_all(quick: bool = False,
            echo: Optional[Callable[[str], None]] = None) -> List[dict]:
    out = []
    for fn in CRITERIA:
        rep = fn(quick)
        out.append(rep)
        if echo is not None:
            echo(format_line(rep))
    return out
