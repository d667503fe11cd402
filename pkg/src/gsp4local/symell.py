"""Univariate rational functions in an indeterminate L (standing for ell),
together with a formal sign eps4 = (-1/ell).

A :class:`SymbolicEll` tracks the two specializations eps4 = +1 and eps4 = -1
as separate rational functions, so products like ((-1/l)l^5 - 1) are honest
field elements and identities can be tested exactly without ever expanding
the quadratic symbol into a polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .cyclo import format_frac, parse_frac

RatLike = Union[int, Fraction]

# ------------------------------------------------------------------
# dense polynomials over Q, low degree first
# ------------------------------------------------------------------

def _trim(c: list[Fraction]) -> tuple[Fraction, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                  for i in range(n)])


def poly_neg(a):
    return tuple(-x for x in a)


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def poly_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - 1, len(b) - 2, -1):
        c = a[i] / lead
        if c:
            q[i - len(b) + 1] = c
            for j, bc in enumerate(b):
                a[i - len(b) + 1 + j] -= c * bc
    return _trim(q), _trim(a)


def poly_gcd(a, b):
    a, b = tuple(a), tuple(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = tuple(x / lead for x in a)  # monic
    return a


def poly_eval(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


class RatFunc:
    """A reduced rational function num/den over Q with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence[RatLike], den: Sequence[RatLike] = (1,)):
        num = _trim([Fraction(c) for c in num])
        den = _trim([Fraction(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num:
            g = poly_gcd(num, den)
            if len(g) > 1:
                num = poly_divmod(num, g)[0]
                den = poly_divmod(den, g)[0]
        else:
            den = (Fraction(1),)
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        self.num, self.den = num, den

    @staticmethod
    def const(x: RatLike) -> "RatFunc":
        return RatFunc([Fraction(x)])

    @staticmethod
    def x() -> "RatFunc":
        return RatFunc([0, 1])

    @staticmethod
    def _coerce(v) -> "RatFunc":
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, (int, Fraction)):
            return RatFunc.const(v)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, o):
        o = RatFunc._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(poly_add(poly_mul(self.num, o.den), poly_mul(o.num, self.den)),
                       poly_mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(poly_neg(self.num), self.den)

    def __sub__(self, o):
        o = RatFunc._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return -(self - o)

    def __mul__(self, o):
        o = RatFunc._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(poly_mul(self.num, o.num), poly_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = RatFunc._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(poly_mul(self.num, o.den), poly_mul(self.den, o.num))

    def __rtruediv__(self, o):
        return RatFunc._coerce(o) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc.const(1) / self ** (-k)
        out = RatFunc.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o) -> bool:
        o = RatFunc._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return not self.num

    def eval(self, x: RatLike) -> Fraction:
        d = poly_eval(self.den, Fraction(x))
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return poly_eval(self.num, Fraction(x)) / d

    def __repr__(self):
        def fmt(p):
            if not p:
                return "0"
            terms = []
            for i, c in enumerate(p):
                if c == 0:
                    continue
                if i == 0:
                    terms.append(format_frac(c))
                else:
                    mon = "L" + (f"^{i}" if i > 1 else "")
                    terms.append(mon if c == 1 else f"{format_frac(c)}*{mon}")
            return " + ".join(terms)
        if self.den == (Fraction(1),):
            return fmt(self.num)
        return f"({fmt(self.num)}) / ({fmt(self.den)})"


# ------------------------------------------------------------------
# SymbolicEll
# ------------------------------------------------------------------

class SymbolicEll:
    """A rational function of (L, eps4) that is at most linear in the formal
    sign eps4 = (-1/ell); stored as the pair of branch values at eps4 = +1, -1."""

    __slots__ = ("plus", "minus")

    def __init__(self, plus: RatFunc, minus: RatFunc):
        self.plus, self.minus = plus, minus

    @staticmethod
    def const(x: RatLike) -> "SymbolicEll":
        c = RatFunc.const(x)
        return SymbolicEll(c, c)

    @staticmethod
    def ell() -> "SymbolicEll":
        x = RatFunc.x()
        return SymbolicEll(x, x)

    @staticmethod
    def eps() -> "SymbolicEll":
        return SymbolicEll(RatFunc.const(1), RatFunc.const(-1))

    @staticmethod
    def _coerce(v) -> "SymbolicEll":
        if isinstance(v, SymbolicEll):
            return v
        if isinstance(v, (int, Fraction)):
            return SymbolicEll.const(v)
        if isinstance(v, RatFunc):
            return SymbolicEll(v, v)
        return NotImplemented  # type: ignore[return-value]

    def _binop(self, o, op):
        o = SymbolicEll._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return SymbolicEll(op(self.plus, o.plus), op(self.minus, o.minus))

    def __add__(self, o):
        return self._binop(o, lambda a, b: a + b)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicEll(-self.plus, -self.minus)

    def __sub__(self, o):
        return self._binop(o, lambda a, b: a - b)

    def __rsub__(self, o):
        return -(self - o)

    def __mul__(self, o):
        return self._binop(o, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self._binop(o, lambda a, b: a / b)

    def __rtruediv__(self, o):
        return SymbolicEll._coerce(o) / self

    def __pow__(self, k: int):
        return SymbolicEll(self.plus ** k, self.minus ** k)

    def __eq__(self, o) -> bool:
        o = SymbolicEll._coerce(o)
        if o is NotImplemented:
            return NotImplemented
        return self.plus == o.plus and self.minus == o.minus

    def __hash__(self):
        return hash((self.plus, self.minus))

    def is_eps_free(self) -> bool:
        return self.plus == self.minus

    def pin(self, sign: int) -> "SymbolicEll":
        """Specialize eps4 to +1 or -1 (both branches collapse)."""
        branch = self.plus if sign > 0 else self.minus
        return SymbolicEll(branch, branch)

    def eval(self, ell: int) -> Fraction:
        """Substitute a concrete odd prime, choosing the branch by ell mod 4."""
        branch = self.plus if ell % 4 == 1 else self.minus
        return branch.eval(ell)

    def __repr__(self):
        if self.is_eps_free():
            return repr(self.plus)
        return f"[eps=+1: {self.plus} | eps=-1: {self.minus}]"

    def to_json(self) -> dict:
        if self.is_eps_free():
            return {"num": [format_frac(c) for c in self.plus.num],
                    "den": [format_frac(c) for c in self.plus.den],
                    "eps": "free"}
        return {
            "+1": {"num": [format_frac(c) for c in self.plus.num],
                   "den": [format_frac(c) for c in self.plus.den],
                   "eps": "+1"},
            "-1": {"num": [format_frac(c) for c in self.minus.num],
                   "den": [format_frac(c) for c in self.minus.den],
                   "eps": "-1"},
        }

    @staticmethod
    def from_json(d: dict) -> "SymbolicEll":
        if "eps" in d:
            rf = RatFunc([parse_frac(c) for c in d["num"]],
                         [parse_frac(c) for c in d["den"]])
            return SymbolicEll(rf, rf)
        p = RatFunc([parse_frac(c) for c in d["+1"]["num"]],
                    [parse_frac(c) for c in d["+1"]["den"]])
        m = RatFunc([parse_frac(c) for c in d["-1"]["num"]],
                    [parse_frac(c) for c in d["-1"]["den"]])
        return SymbolicEll(p, m)


L = SymbolicEll.ell
EPS = SymbolicEll.eps
