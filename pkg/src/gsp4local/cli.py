"""Batch command-line front end.

Every computation of the package is exposed as a subcommand producing a
deterministic, machine-parseable CommandResult (JSON by default, ``--tsv``
for tabular commands, ``--out FILE`` to write to a file).  Exit codes:
0 success, 1 domain error or bad usage, 2 scale-guard refusal.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from math import lcm
from typing import Any, Dict, List, Optional, Sequence

from .cyclo import CycNum, format_frac, parse_frac
from .symell import RatFunc, SymbolicEll
from . import acceptance
from .gauss import (gauss_sum_closed, padic_integral_1d, vanishing_1d,
                    stabilization_bound)
from .quadforms import JordanBlock, JordanForm, jordan_decompose, equivalent_mod
from .orth import (orth_order_mod_ell, orth_order_lift, orth_order_block,
                   gl_order, class_volume)
from .localfactors import (DirichletChar, arch_coefficient, dk_expand,
                           fourier_coeff_at_ell, local_density,
                           master_integral, master_value, p_zeta_factor,
                           zeta_at_ell_dividing_N)
from .weingarten import (dn_constant, volI_from_expansion, weingarten_table)
from .satake import (SatakeGSp4, adjoint_decompose, hecke_poly_gl4,
                     hecke_poly_gsp4, lfactor_transfer_check,
                     std_lfactor_gsp4, transfer_iota)
from .theta import (enumerate_gram, isotropic_w0, theta_coefficient,
                    theta_integrality_report)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def serialize(x: Any) -> Any:
    """Map package objects onto JSON-representable structures,
    deterministically (rationals as strings, cyclotomic numbers by their
    canonical term repr, dataclasses by field)."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return format_frac(x)
    if isinstance(x, CycNum):
        return repr(x)
    if isinstance(x, (SymbolicEll, RatFunc)):
        return repr(x)
    if isinstance(x, DirichletChar):
        return {"p": x.p, "cprime": x.cprime, "k": x.k}
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: serialize(getattr(x, f.name))
                for f in dataclasses.fields(x)}
    if isinstance(x, dict):
        return {_key(k): serialize(v) for k, v in sorted(
            x.items(), key=lambda kv: _key(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [serialize(v) for v in x]
    if isinstance(x, float):
        return x
    return repr(x)


def _key(k: Any) -> str:
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return ",".join(str(v) for v in k)
    return str(k)


# ---------------------------------------------------------------------------
# Argument parsing helpers
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # Bad usage is a domain error (exit 1), not a scale-guard refusal.
    def error(self, message: str):
        self.exit(1, f"{self.prog}: error: {message}\n{self.format_usage()}")


def parse_matrix(s: str) -> List[List[Fraction]]:
    """Rows separated by ';', entries by ',': "1,0;0,1" -> 1_2."""
    return [[parse_frac(e) for e in row.split(",")] for row in s.split(";")]


def parse_vector(s: str) -> List[Fraction]:
    return [parse_frac(e) for e in s.split(",")]


def parse_char(p: int, s: str) -> DirichletChar:
    """Character spec: "triv", "leg", or "CPRIME:K" (value exponent K on the
    fixed generator of (Z/p^CPRIME)^x)."""
    if s in ("triv", "0"):
        return DirichletChar.trivial(p)
    if s == "leg":
        return DirichletChar.legendre(p)
    cprime, _, k = s.partition(":")
    return DirichletChar(p, int(cprime), int(k))


def parse_blocks(ell: int, s: str) -> JordanForm:
    """Jordan form spec: comma list of K:N:TYPE blocks, e.g. "0:2:one,1:1:z"."""
    blocks = []
    for item in s.split(","):
        k, n, typ = item.split(":")
        blocks.append(JordanBlock(int(k), int(n), typ))
    return JordanForm(ell, tuple(blocks))


# ---------------------------------------------------------------------------
# Command implementations: each returns (value, provenance)
# ---------------------------------------------------------------------------

def _cmd_gauss(a):
    return gauss_sum_closed(a.a, a.b, a.c), "gauss_sum_closed: quadratic Gauss sum in closed form"


def _cmd_integral(a):
    val = padic_integral_1d(a.ell, parse_frac(a.a), parse_frac(a.b),
                            parse_frac(a.r), a.vs)
    extra = {
        "vanishes": vanishing_1d(a.ell, parse_frac(a.a), parse_frac(a.b),
                                 parse_frac(a.r), a.vs),
        "stabilization_bound": stabilization_bound(
            a.ell, parse_frac(a.a), parse_frac(a.b), parse_frac(a.r), a.vs),
        "value": val,
    }
    return extra, "padic_integral_1d: one-variable oscillatory p-adic integral"


def _cmd_jordan(a):
    d, j = jordan_decompose(parse_matrix(a.matrix), a.ell, a.prec)
    return {"transform": d, "blocks": [dataclasses.asdict(b) for b in j.blocks],
            "zero_block": j.zero_block}, \
        "jordan_decompose: Jordan splitting of a symmetric form over Z_ell"


def _cmd_equiv(a):
    ok, witness = equivalent_mod(parse_matrix(a.a), parse_matrix(a.b),
                                 a.ell, a.k)
    return {"equivalent": ok, "witness": witness}, \
        "equivalent_mod: congruence-class comparison of symmetric forms"


def _cmd_orth_order(a):
    base = orth_order_mod_ell(a.type, a.n, a.ell)
    order = base.order if a.s == 1 else orth_order_lift(base.order, a.n,
                                                        a.s, a.ell)
    return {"order": order, "symbolic": base.symbolic}, \
        "orth_order_mod_ell/orth_order_lift: orthogonal group order mod ell^s"


def _cmd_gl_order(a):
    return gl_order(a.n, a.ell, a.s), "gl_order: #GL_n(Z/ell^s)"


def _cmd_class_volume(a):
    cv = class_volume(parse_blocks(a.ell, a.blocks), a.ell)
    return {"volume": cv.volume, "I": cv.I, "I0": cv.I0}, \
        "class_volume: congruence-class volume in Sym_4(Z_ell)"


def _cmd_master(a):
    rep = master_integral(a.weighted)
    return {"value_at_ell": master_value(a.ell, a.weighted),
            "symbolic_total": rep.total}, \
        "master_integral: eight-case local integral sum"


def _cmd_zeta_l(a):
    return zeta_at_ell_dividing_N(a.ell, a.N, a.N1), \
        "zeta_at_ell_dividing_N: local zeta value at ell | N"


def _cmd_density(a):
    return local_density(a.ell, a.N, parse_matrix(a.beta), a.n, a.N1), \
        "local_density: truncated representation density D_beta(n)"


def _cmd_fourier_l(a):
    return fourier_coeff_at_ell(a.ell, a.N, parse_matrix(a.beta), a.N1), \
        "fourier_coeff_at_ell: stabilized local Fourier coefficient at ell | N"


def _cmd_p_factor(a):
    k1 = parse_char(a.p, a.kappa1)
    k2 = parse_char(a.p, a.kappa2)
    return p_zeta_factor(a.p, k1, k2, parse_frac(a.alpha1),
                         parse_frac(a.alpha2), a.constant), \
        "p_zeta_factor: p-place zeta value of the local factor corollary"


def _cmd_dk_expand(a):
    exp = dk_expand(a.k1, a.k2)
    return {"kappa": list(exp.kappa), "num_terms": len(exp.terms),
            "terms": exp.terms}, \
        "dk_expand: monomial expansion of det_1^{k1-k2} det_2^{k2-3}"


def _cmd_arch(a):
    res = arch_coefficient(parse_matrix(a.beta), (a.k1, a.k2))
    return res, "arch_coefficient: archimedean Fourier coefficient"


def _cmd_weingarten(a):
    t = weingarten_table(a.N, a.d)
    return {"N": t.N, "d": t.d,
            "partitions": [list(p) for p in t.partitions],
            "wg": t.wg}, \
        "weingarten_table: orthogonal Weingarten matrix of order 2N"


def _cmd_dn(a):
    return dn_constant(a.n), \
        "dn_constant: partition-sum constant d(n) and its term table"


def _cmd_vol_i(a):
    exp = dk_expand(a.k1, a.k2)
    idx = tuple(int(v) for v in a.I.split(","))
    return volI_from_expansion(exp, idx), \
        "volI_from_expansion: O(6) moment polynomial for one expansion index"


def _satake_from_args(a) -> SatakeGSp4:
    if a.alpha is not None:
        a0, a1, a2 = parse_vector(a.alpha)
        return SatakeGSp4.from_alpha(a0, a1, a2)
    if None in (a.t, a.t1, a.t2):
        raise ValueError("supply either --alpha a0,a1,a2 or all of --t --t1 --t2")
    return SatakeGSp4(parse_frac(a.t), parse_frac(a.t1), parse_frac(a.t2))


def _cmd_satake(a):
    s = _satake_from_args(a)
    return {"t": s.t, "t1": s.t1, "t2": s.t2,
            "alpha": list(s.alpha), "matrix": s.matrix}, \
        "SatakeGSp4: canonical coordinates of an unramified class"


def _cmd_hecke_poly(a):
    ts = parse_vector(a.T)
    if a.group == "gsp4":
        if len(ts) != 3:
            raise ValueError("gsp4 needs --T T0,T1,T2")
        val = hecke_poly_gsp4(*ts, a.ell)
    else:
        if len(ts) != 4:
            raise ValueError("gl4 needs --T T1,T2,T3,T4")
        val = hecke_poly_gl4(*ts, a.ell)
    return val, "hecke_poly_gsp4/gl4: spherical Hecke polynomial coefficients"


def _cmd_lfactor(a):
    f = std_lfactor_gsp4(_satake_from_args(a), a.xi)
    return f, "std_lfactor_gsp4: twisted degree-5 standard L-factor roots"


def _cmd_transfer(a):
    tp = transfer_iota(_satake_from_args(a), a.xi)
    return tp, "transfer_iota: Satake transfer to the GL4 side"


def _cmd_lfactor_check(a):
    rep = lfactor_transfer_check(_satake_from_args(a), a.xi)
    return rep, "lfactor_transfer_check: degree-6 vs twisted degree-5 factor comparison"


def _cmd_adjoint(a):
    act = adjoint_decompose(parse_matrix(a.g))
    return {"dimensions": list(act.dimensions), "v1": act.v1, "v2": act.v2}, \
        "adjoint_decompose: conjugation action on the 10+5 split of sl4"


def _cmd_theta_coeff(a):
    k1 = parse_char(a.p, a.kappa1) if a.kappa1 else None
    k2 = parse_char(a.p, a.kappa2) if a.kappa2 else None
    val = theta_coefficient(parse_matrix(a.beta), a.N, a.p, a.N1,
                            kappa1=k1, kappa2=k2, cost_limit=a.allow_cost)
    order = lcm(k1.order() if k1 else 1, k2.order() if k2 else 1)
    c = max(k1.cprime if k1 else 0, k2.cprime if k2 else 0, 1)
    rep = theta_integrality_report(val, a.N, a.p ** c,
                                   kappa_value_order=order)
    return {"value": val, "integrality": rep}, \
        "theta_coefficient: theta-series Fourier coefficient with integrality report"


def _cmd_enum_gram(a):
    sols = enumerate_gram(parse_vector(a.form), a.rows,
                          parse_matrix(a.beta), parse_frac(a.step))
    return {"count": len(sols), "solutions": sols}, \
        "enumerate_gram: complete lattice solution list of the Gram constraint"


def _cmd_w0(a):
    return isotropic_w0(a.p, a.c), \
        "isotropic_w0: full-rank isotropic 2x6 matrix mod p^c"


def _cmd_summary(a):
    k1 = parse_char(a.p, a.kappa1)
    k2 = parse_char(a.p, a.kappa2)
    rows = []
    for ell in (int(x) for x in a.ell_list.split(",")):
        rows.append({"place": str(ell),
                     "factor": zeta_at_ell_dividing_N(ell, a.N, a.N1)})
    rows.append({"place": f"p={a.p}",
                 "factor": p_zeta_factor(a.p, k1, k2, parse_frac(a.alpha1),
                                         parse_frac(a.alpha2), a.constant)})
    return rows, "summary: modified local factor table at the places dividing Np"


def _cmd_selftest(a):
    reports = acceptance.run_all(quick=a.quick,
                                 echo=lambda line: print(line, file=sys.stderr))
    bad = [r for r in reports if not r["passed"]]
    value = {"passed": len(reports) - len(bad), "failed": len(bad),
             "criteria": [{k: serialize(v) for k, v in r.items()}
                          for r in reports]}
    return value, "selftest: acceptance criteria suite", (1 if bad else 0)


# ---------------------------------------------------------------------------
# Parser construction & dispatch
# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    p = _Parser(prog="gsp4local",
                description="Local-factor computations, batch interface.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **flags):
        sp = sub.add_parser(name)
        sp.set_defaults(fn=fn)
        for flag, spec in flags.items():
            sp.add_argument("--" + flag.replace("_", "-"), **spec)
        sp.add_argument("--tsv", action="store_true",
                        help="tabular output instead of JSON")
        sp.add_argument("--out", default=None, help="write output to FILE")
        return sp

    intreq = {"type": int, "required": True}
    streq = {"required": True}
    add("gauss", _cmd_gauss, a=intreq, b=intreq, c=intreq)
    add("integral", _cmd_integral, ell=intreq, a=streq, b=streq,
        r={"default": "0"}, vs={"type": int, "default": 0})
    add("jordan", _cmd_jordan, ell=intreq, matrix=streq,
        prec={"type": int, "default": None})
    add("equiv", _cmd_equiv, ell=intreq, k=intreq, a=streq, b=streq)
    add("orth-order", _cmd_orth_order, ell=intreq, n=intreq,
        type={"required": True, "choices": ["one", "z"]},
        s={"type": int, "default": 1})
    add("gl-order", _cmd_gl_order, n=intreq, ell=intreq,
        s={"type": int, "default": 1})
    add("class-volume", _cmd_class_volume, ell=intreq, blocks=streq)
    add("master", _cmd_master, ell=intreq,
        weighted={"action": "store_true"})
    add("zeta-l", _cmd_zeta_l, ell=intreq, N=intreq,
        N1={"type": int, "default": 1})
    add("density", _cmd_density, ell=intreq, N=intreq, beta=streq, n=intreq,
        N1={"type": int, "default": 1})
    add("fourier-l", _cmd_fourier_l, ell=intreq, N=intreq, beta=streq,
        N1={"type": int, "default": 1})
    add("p-factor", _cmd_p_factor, p=intreq, kappa1=streq, kappa2=streq,
        alpha1=streq, alpha2=streq,
        constant={"default": "half", "choices": ["half", "minus-one"]})
    add("dk-expand", _cmd_dk_expand, k1=intreq, k2=intreq)
    add("arch", _cmd_arch, beta=streq, k1={"type": int, "default": 3},
        k2={"type": int, "default": 3})
    add("weingarten", _cmd_weingarten, N=intreq,
        d={"type": int, "default": 6})
    add("dn", _cmd_dn, n=intreq)
    add("vol-I", _cmd_vol_i, k1=intreq, k2=intreq, I=streq)
    satake_flags = dict(t={"default": None}, t1={"default": None},
                        t2={"default": None}, alpha={"default": None})
    add("satake", _cmd_satake, **satake_flags)
    add("hecke-poly", _cmd_hecke_poly,
        group={"required": True, "choices": ["gsp4", "gl4"]},
        T=streq, ell=intreq)
    add("lfactor", _cmd_lfactor, xi={"type": int, "default": 1},
        **satake_flags)
    add("transfer", _cmd_transfer, xi={"type": int, "required": True},
        **satake_flags)
    add("lfactor-check", _cmd_lfactor_check, xi={"type": int, "default": 1},
        **satake_flags)
    add("adjoint", _cmd_adjoint, g=streq)
    add("theta-coeff", _cmd_theta_coeff, beta=streq, N=intreq, p=intreq,
        N1={"type": int, "default": 1}, kappa1={"default": None},
        kappa2={"default": None},
        allow_cost={"type": int, "default": 5 * 10 ** 7})
    add("enum-gram", _cmd_enum_gram, form=streq,
        rows={"type": int, "required": True}, beta=streq,
        step={"default": "1"})
    add("w0", _cmd_w0, p=intreq, c=intreq)
    add("summary", _cmd_summary, ell_list=streq, p=intreq, N=intreq,
        N1={"type": int, "default": 1}, kappa1={"default": "triv"},
        kappa2={"default": "triv"}, alpha1={"default": "1"},
        alpha2={"default": "1"},
        constant={"default": "half", "choices": ["half", "minus-one"]})
    add("selftest", _cmd_selftest, quick={"action": "store_true"})
    return p


def _tsv_lines(value: Any, prefix: str = "") -> List[str]:
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            out.extend(_tsv_lines(v, f"{prefix}{k}\t"))
        return out
    if isinstance(value, list):
        if value and all(not isinstance(v, (dict, list)) for v in value):
            return [prefix + "\t".join(str(v) for v in value)]
        out = []
        for i, v in enumerate(value):
            out.extend(_tsv_lines(v, f"{prefix}{i}\t"))
        return out
    return [prefix + str(value)]


def dispatch(argv: Sequence[str]) -> int:
    args = _build_parser().parse_args(list(argv))
    inputs = {k: v for k, v in sorted(vars(args).items())
              if k not in ("fn", "command", "tsv", "out") and v is not None}
    try:
        res = args.fn(args)
    except NotImplementedError as exc:  # scale-guard refusal
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    value, provenance = res[0], res[1]
    code = res[2] if len(res) > 2 else 0
    result = {"command": args.command, "inputs": serialize(inputs),
              "value": serialize(value), "provenance": provenance}
    if args.tsv:
        text = "\n".join(_tsv_lines(result["value"])) + "\n"
    else:
        text = json.dumps(result, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
