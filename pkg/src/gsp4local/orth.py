"""Orders of orthogonal groups of quadratic lattices over Z/ell^s, orders of
GL_n(Z/ell^s), volumes of congruence classes of block-unimodular forms, and
the class summands I, I0 — as exact integers/rationals and as symbolic
expressions in ell."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .quadforms import JordanBlock, JordanForm
from .symell import EPS, L, SymbolicEll


@dataclass(frozen=True)
class OrthOrderResult:
    order: int
    symbolic: SymbolicEll


def _eps4(ell: int) -> int:
    return 1 if ell % 4 == 1 else -1


def orth_order_mod_ell(block_type: str, n: int, ell: int) -> OrthOrderResult:
    """#O(Lambda_1, Z/ell) for a unimodular diagonal block of size n, of type
    "one" (1_n) or "z" (diag(1_{n-1}, z), z a non-residue).

    Odd n = 2m+1 (both types): 2 ell^{m^2} prod_{i<=m}(ell^{2i}-1).
    Even n = 2m: 2 ell^{m(m-1)} prod_{i<m}(ell^{2i}-1) (ell^m - chi), where
    chi = +eps4^m for type "one" and -eps4^m for type "z",
    eps4 = (-1/ell).
    """
    if block_type not in ("one", "z"):
        raise ValueError("block type must be 'one' or 'z'")
    if n == 0:
        return OrthOrderResult(1, SymbolicEll.const(1))
    if n < 0:
        raise ValueError("negative block size")
    le = L()
    if n % 2 == 1:
        m = (n - 1) // 2
        sym = SymbolicEll.const(2) * le ** (m * m)
        for i in range(1, m + 1):
            sym = sym * (le ** (2 * i) - 1)
    else:
        m = n // 2
        chi = EPS() ** m
        if block_type == "z":
            chi = -chi
        sym = SymbolicEll.const(2) * le ** (m * (m - 1)) * (le ** m - chi)
        for i in range(1, m):
            sym = sym * (le ** (2 * i) - 1)
    order = sym.eval(ell)
    assert order.denominator == 1
    return OrthOrderResult(int(order), sym)


def orth_order_lift(base: int, n: int, s: int, ell: int) -> int:
    """#O over Z/ell^{s+1} from the order over Z/ell: factor ell^{s n(n-1)/2}."""
    if s < 0:
        raise ValueError("s must be >= 0")
    return base * ell ** (s * n * (n - 1) // 2)


def orth_order_block(lam: JordanForm, ell: int,
                     modulus_exponent: Union[int, None] = None) -> int:
    """#O(Lambda, Z/ell^{k_r+1}) for a nonsingular block-diagonal form."""
    if not lam.nonsingular:
        raise ValueError("singular form")
    if lam.blocks[0].k < 0:
        raise ValueError("block exponents must be nonnegative")
    kr = lam.blocks[-1].k
    if modulus_exponent is None:
        modulus_exponent = kr + 1
    if modulus_exponent != kr + 1:
        raise ValueError("only the stable modulus k_r + 1 is supported")
    blocks = lam.blocks
    expo = 0
    for i, bi in enumerate(blocks):
        for bj in blocks[:i]:
            expo += (kr + 1 + bj.k) * bj.n * bi.n
        expo += bi.k * bi.n * (bi.n + 1) // 2 + kr * bi.n * (bi.n - 1) // 2
    out = ell ** expo
    for b in blocks:
        out *= orth_order_mod_ell(b.type, b.n, ell).order
    return out


def gl_order(n: int, ell: int, s: int) -> int:
    """#GL_n(Z/ell^s) = ell^{(s-1)n^2} prod_{i<n}(ell^n - ell^i)."""
    if n < 1 or s < 1:
        raise ValueError("need n >= 1 and s >= 1")
    out = ell ** ((s - 1) * n * n)
    for i in range(n):
        out *= ell ** n - ell ** i
    return out


@dataclass(frozen=True)
class ClassVolume:
    lam: JordanForm
    volume: Fraction
    I: Fraction
    I0: Fraction


def _alpha_sym() -> SymbolicEll:
    le = L()
    return (le - 1) * (le ** 2 - 1) * (le ** 3 - 1) * (le ** 4 - 1)


def class_summand_symbolic(lam: JordanForm) -> Tuple[SymbolicEll, SymbolicEll]:
    """(I, I0) for a nonsingular 4x4 form as symbolic expressions: the closed
    form eps^{sum k_i n_i} ell^{6 k_r - 4} alpha / (ell^{E} prod #O(Lambda_i)),
    E the block-interaction exponent, alpha = (ell-1)...(ell^4-1)."""
    if lam.n != 4 or not lam.nonsingular:
        raise ValueError("need a nonsingular 4x4 form")
    if lam.blocks[0].k < 0:
        raise ValueError("block exponents must be nonnegative")
    blocks = lam.blocks
    kr = blocks[-1].k
    vdet = lam.v_det()
    expo = 0
    den = SymbolicEll.const(1)
    for i, bi in enumerate(blocks):
        for bj in blocks[:i]:
            expo += (kr + 1 + bj.k) * bj.n * bi.n
        expo += bi.k * bi.n * (bi.n + 1) // 2 + kr * bi.n * (bi.n - 1) // 2
        den = den * orth_order_mod_ell(bi.type, bi.n, lam.ell).symbolic
    le = L()
    I = (EPS() ** vdet) * le ** (6 * kr - 4) * _alpha_sym() / (le ** expo * den)
    I0 = I / le ** vdet
    return I, I0


def class_volume(lam: JordanForm, ell: Union[int, None] = None) -> ClassVolume:
    """Volume of the congruence class of Lambda in Sym_4(Z_ell) (total mass 1)
    together with the summands I = eps^{v(det)} vol and I0 = |det|_ell I.

    Computed by the definition vol = ell^{-10(k_r+1)} #GL_4 / #O and
    cross-checked against the symbolic closed form.
    """
    if ell is None:
        ell = lam.ell
    if lam.n != 4 or not lam.nonsingular:
        raise ValueError("need a nonsingular 4x4 form")
    kr = lam.blocks[-1].k
    vol = Fraction(gl_order(4, ell, kr + 1),
                   ell ** (10 * (kr + 1)) * orth_order_block(lam, ell))
    vdet = lam.v_det()
    I = Fraction(_eps4(ell)) ** vdet * vol
    I0 = I / Fraction(ell) ** vdet
    I_sym, I0_sym = class_summand_symbolic(lam)
    if I_sym.pin(_eps4(ell)).eval(ell) != I or I0_sym.pin(_eps4(ell)).eval(ell) != I0:
        raise AssertionError(f"closed form disagrees with definition at {lam}")
    return ClassVolume(lam, vol, I, I0)
