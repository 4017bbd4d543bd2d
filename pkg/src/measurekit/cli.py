"""Command-line frontend.

Exit codes: 0 success, 1 a checked assertion failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import ast
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import randinst
from .checks import SUITES, run_suite
from .conditioning import CondExpTable, cond_exp
from .config import config
from .errors import GroundSizeError, MeasureKitError, ParseError
from .integrate import NumFn, integrate, radon_nikodym
from .measure import MeasureTable, evaluate
from .numerics import INF, XValue, add_flagged
from .product import CoordinateSampler, fubini_check, product_measure, product_space, sample_coordinates
from .sampling import RNGStream, ks_band, ks_distance, sample_quantile
from .setalg import GroundSet, SetFamily, SigmaField, generate_sigma_field
from .stieltjes import cdf as sc
from .stieltjes.functions import ExpPoly, PiecewiseFunction
from .stieltjes.intervals import INF as RINF, Interval, IntervalSet
from .stieltjes.outer import Premeasure, caratheodory_measurable, outer_measure
from .workspace import Workspace

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(MeasureKitError):
    """Bad command-line input that argparse cannot catch."""


class CheckFailed(MeasureKitError):
    """The requested operation ran but a verified property does not hold."""


# -- formatting -------------------------------------------------------------------


def fmt_tol(t: float) -> str:
    mant, exp = f"{t:e}".split("e")
    mant = mant.rstrip("0").rstrip(".")
    return f"{mant}e{int(exp)}"


def fmt_label(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(fmt_label(y) for y in x) + ")"
    return str(x)


def fmt_set(g: GroundSet, s) -> str:
    if g.elements and frozenset(s) == g.full():
        return "Ω"
    try:
        items = g.ordered(s)
    except KeyError:
        items = sorted(s, key=str)
    return "{" + ",".join(fmt_label(x) for x in items) + "}"


def fmt_scalar(v) -> str:
    """Exact values print as ``p/q (exact)``, floats with the active tolerance."""
    if isinstance(v, XValue):
        return f"{v} (exact)"
    if isinstance(v, (int, Fraction)):
        return f"{XValue(v)} (exact)"
    if isinstance(v, float):
        if v != v:
            return "nan (numeric)"
        if v in (float("inf"), float("-inf")):
            return f"{'inf' if v > 0 else '-inf'} (numeric)"
        return f"{v:.9g} ± {fmt_tol(config.tolerance)} (numeric)"
    raise UsageError(f"not a scalar: {v!r}")


def fmt_atom_table(sf: SigmaField, rows) -> list[str]:
    return [f"{fmt_set(sf.ground, a)}: {v}" for a, v in rows]


@dataclass
class Undefined:
    """An integral whose positive and negative parts are both infinite."""

    convention: XValue


@dataclass
class Output:
    lines: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    code: int = EXIT_OK

    def add(self, line: str):
        self.lines.append(line)


# -- text parsers -------------------------------------------------------------------

_NUM = r"[-+]?(?:\d+(?:/\d+)?|inf|∞)"
_IV = re.compile(rf"([(\[])\s*({_NUM})\s*,\s*({_NUM})\s*([)\]])")
_PTS = re.compile(r"\{([^}]*)\}")
_SEP = re.compile(r"\s*(?:∪|U|u|\+)?\s*")


def _endpoint(tok: str):
    tok = tok.strip().replace("∞", "inf")
    if tok in ("inf", "+inf"):
        return RINF
    if tok == "-inf":
        return -RINF
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad endpoint {tok!r}") from exc


def parse_interval_set(text: str) -> IntervalSet:
    """Read ``(0,1] ∪ [2,3) ∪ {5, 7/2}``; ``∅`` is the empty set."""
    s = text.strip()
    if s in ("", "∅", "{}"):
        return IntervalSet.empty()
    if s in ("R", "ℝ"):
        return IntervalSet.real_line()
    ivs, pts = [], []
    pos = 0
    while pos < len(s):
        m = _SEP.match(s, pos)
        pos = m.end()
        if pos >= len(s):
            break
        m = _IV.match(s, pos)
        if m:
            ivs.append(Interval(_endpoint(m[2]), _endpoint(m[3]), m[1] == "[", m[4] == "]"))
            pos = m.end()
            continue
        m = _PTS.match(s, pos)
        if m:
            pts += [_endpoint(t) for t in m[1].split(",") if t.strip()]
            pos = m.end()
            continue
        raise ParseError(f"interval set: cannot read {s[pos:]!r} at column {pos + 1}")
    try:
        return IntervalSet(ivs, pts)
    except MeasureKitError as exc:
        raise ParseError(f"interval set: {exc}") from exc


def fmt_interval_set(S: IntervalSet) -> str:
    d = S.to_data()
    parts = []
    for lo, hi, lc, hc in d.get("intervals", []):
        parts.append(f"{'[' if lc else '('}{lo},{hi}{']' if hc else ')'}")
    if d.get("points"):
        parts.append("{" + ",".join(d["points"]) + "}")
    return " ∪ ".join(parts) if parts else "∅"


# -- expression evaluator -----------------------------------------------------------


class Evaluator:
    """Restricted expression language over workspace names.

    Literals: integers, strings (labels or interval sets), lists of labels.
    Operators: + - * / on scalars. Calls: see ``FUNCS``.
    """

    def __init__(self, ws: Workspace | None, variables: dict | None = None):
        self.ws = ws or Workspace()
        self.vars = dict(variables or {})

    def run(self, text: str):
        try:
            tree = ast.parse(text.strip(), mode="eval")
        except SyntaxError as exc:
            raise ParseError(f"expression: column {exc.offset}: {exc.msg}") from exc
        return self.node(tree.body)

    def node(self, n):
        if isinstance(n, ast.Constant):
            if isinstance(n.value, bool) or isinstance(n.value, float):
                raise ParseError(f"expression: column {n.col_offset + 1}: use exact literals like 1/3, not {n.value!r}")
            if isinstance(n.value, (int, str)):
                return n.value
            raise ParseError(f"expression: column {n.col_offset + 1}: unsupported literal")
        if isinstance(n, (ast.List, ast.Tuple, ast.Set)):
            return [self.node(e) for e in n.elts]
        if isinstance(n, ast.Name):
            return self.name(n.id, n.col_offset)
        if isinstance(n, ast.UnaryOp) and isinstance(n.op, (ast.USub, ast.UAdd)):
            v = self.scalar(self.node(n.operand))
            return -v if isinstance(n.op, ast.USub) else v
        if isinstance(n, ast.BinOp) and isinstance(n.op, (ast.Add, ast.Sub, ast.Mult, ast.Div)):
            a, b = self.scalar(self.node(n.left)), self.scalar(self.node(n.right))
            if isinstance(a, float) or isinstance(b, float):
                a, b = float(a), float(b)
            if isinstance(a, XValue) or isinstance(b, XValue):
                if isinstance(n.op, (ast.Add, ast.Sub)):
                    rhs = XValue(b) if isinstance(n.op, ast.Add) else -XValue(b)
                    v, flagged = add_flagged(XValue(a), rhs)
                    return Undefined(v) if flagged else v
            try:
                if isinstance(n.op, ast.Add):
                    return a + b
                if isinstance(n.op, ast.Sub):
                    return a - b
                if isinstance(n.op, ast.Mult):
                    return a * b
                if isinstance(a, float):
                    return a / b
                return Fraction(a) / b if not isinstance(a, XValue) else a / b
            except ZeroDivisionError as exc:
                raise MeasureKitError(f"division by zero at column {n.col_offset + 1}") from exc
        if isinstance(n, ast.Call) and isinstance(n.func, ast.Name):
            fn = FUNCS.get(n.func.id)
            args = [self.node(a) for a in n.args]
            kwargs = {k.arg: self.node(k.value) for k in n.keywords}
            if fn is None:
                target = self.name(n.func.id, n.col_offset)
                if isinstance(target, (NumFn, MeasureTable, sc.CDFSpec)) and len(args) == 1 and not kwargs:
                    return _apply(target, args[0])
                raise ParseError(f"expression: column {n.col_offset + 1}: unknown function {n.func.id!r}")
            try:
                return fn(self, *args, **kwargs)
            except TypeError as exc:
                raise ParseError(f"expression: column {n.col_offset + 1}: {n.func.id}: {exc}") from exc
        raise ParseError(f"expression: column {getattr(n, 'col_offset', 0) + 1}: unsupported syntax")

    def name(self, ident: str, col: int):
        if ident in self.vars:
            return self.vars[ident]
        if ident == "inf":
            return INF
        for sec in ("spaces", "families", "fields", "measures", "functions", "maps", "cdfs", "samplers"):
            table = getattr(self.ws, sec)
            if ident in table:
                return table[ident]
        raise ParseError(f"expression: column {col + 1}: unresolved name {ident!r}")

    @staticmethod
    def scalar(v):
        if isinstance(v, Undefined):
            raise MeasureKitError("arithmetic on an undefined value")
        if isinstance(v, XValue):
            return v if not v.is_finite else v.fraction
        if isinstance(v, (int, Fraction, float)):
            return v
        raise ParseError(f"expression: expected a number, got {type(v).__name__}")


def _apply(target, arg):
    if isinstance(target, NumFn):
        return target.at(arg)
    if isinstance(target, MeasureTable):
        return evaluate(target, _labels(target.ground, arg))
    return sc.eval_cdf(target, _frac(arg))


def _labels(g: GroundSet, v) -> frozenset:
    items = v if isinstance(v, list) else [v]
    return g.subset(items)


def _frac(v) -> Fraction:
    if isinstance(v, XValue):
        return v.fraction
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        raise ParseError("expected an exact number")
    return Fraction(v)


def _as_xvalue(v):
    if isinstance(v, XValue):
        return v
    if isinstance(v, (int, Fraction)):
        return XValue(v)
    return v


def _need(v, kind, what):
    if not isinstance(v, kind):
        raise ParseError(f"{what}: expected {kind.__name__ if isinstance(kind, type) else 'value'}, got {type(v).__name__}")
    return v


def _set_arg(v) -> IntervalSet:
    if isinstance(v, IntervalSet):
        return v
    if isinstance(v, str):
        return parse_interval_set(v)
    raise ParseError("expected an interval set such as \"(0,1]\"")


def f_integrate(ev, f, mu, over=None):
    _need(f, NumFn, "integrate")
    _need(mu, MeasureTable, "integrate")
    r = integrate(f, mu, None if over is None else _labels(mu.ground, over))
    if not r.well_defined:
        return Undefined(r.value)
    return r.value


def f_measure(ev, mu, s):
    if isinstance(mu, sc.CDFSpec):
        return sc.measure_set(mu, _set_arg(s))
    _need(mu, MeasureTable, "measure")
    return evaluate(mu, _labels(mu.ground, s))


def f_condexp(ev, f, P, B):
    return cond_exp(_need(f, NumFn, "condexp"), _need(P, MeasureTable, "condexp"), _need(B, SigmaField, "condexp"))


def f_rn(ev, mu, nu):
    return radon_nikodym(_need(mu, MeasureTable, "rn"), _need(nu, MeasureTable, "rn"))


def f_cdf(ev, F, x):
    return _as_xvalue(sc.eval_cdf(_need(F, sc.CDFSpec, "cdf"), _frac(x)))


def f_left(ev, F, x):
    return _as_xvalue(sc.eval_left_limit(_need(F, sc.CDFSpec, "left"), _frac(x)))


def f_quantile(ev, F, u):
    return _as_xvalue(sc.quantile(_need(F, sc.CDFSpec, "quantile"), _frac(u)))


def _whole_line(expr: ExpPoly) -> PiecewiseFunction:
    return PiecewiseFunction([(Interval(-RINF, RINF, False, False), expr)])


def f_moment(ev, F, k=1):
    k = int(_frac(k))
    if k < 0:
        raise ParseError("moment order must be nonnegative")
    coeffs = (0,) * k + (1,)
    return sc.integrate_stieltjes(_whole_line(ExpPoly(coeffs)), _need(F, sc.CDFSpec, "moment"))


def f_laplace(ev, F, m):
    """Integral of exp(-m x) dF(x) over the real line (numeric layer)."""
    F = _need(F, sc.CDFSpec, "laplace")
    expr = ExpPoly((Fraction(1),), -_frac(m))
    return sc.integrate_stieltjes(_whole_line(expr), F)


def f_stieltjes(ev, F, coeffs, over=None, rate=0):
    """Integral of a polynomial (times exp(rate x)) against dF, optionally restricted to a set."""
    F = _need(F, sc.CDFSpec, "stieltjes")
    expr = ExpPoly(tuple(_frac(c) for c in (coeffs if isinstance(coeffs, list) else [coeffs])), _frac(rate))
    if over is None:
        g = _whole_line(expr)
    else:
        S = _set_arg(over)
        g = PiecewiseFunction([(iv, expr) for iv in S.pieces()])
    return sc.integrate_stieltjes(g, F)


def f_exponential(ev, rate):
    return sc.exponential(_frac(rate))


def f_uniform(ev, a=0, b=1):
    return sc.uniform(_frac(a), _frac(b))


def f_dirac(ev, c=0):
    return sc.dirac(_frac(c))


def f_lebesgue(ev):
    return sc.lebesgue()


def f_outer(ev, F, s):
    return outer_measure(Premeasure(_need(F, sc.CDFSpec, "outer")), _set_arg(s))


FUNCS = {
    "integrate": f_integrate,
    "measure": f_measure,
    "condexp": f_condexp,
    "rn": f_rn,
    "cdf": f_cdf,
    "left": f_left,
    "quantile": f_quantile,
    "moment": f_moment,
    "mean": lambda ev, F: f_moment(ev, F, 1),
    "laplace": f_laplace,
    "stieltjes": f_stieltjes,
    "outer": f_outer,
    "exponential": f_exponential,
    "uniform": f_uniform,
    "dirac": f_dirac,
    "lebesgue": f_lebesgue,
}


def render_value(v, out: Output):
    if isinstance(v, Undefined):
        out.add(f"undefined (∞−∞); convention value {v.convention}")
        out.data["value"] = None
        out.data["convention"] = str(v.convention)
    elif isinstance(v, CondExpTable):
        out.lines += fmt_atom_table(v.sub_field, v.items())
        out.data["atoms"] = [[fmt_set(v.sub_field.ground, a), str(x)] for a, x in v.items()]
    elif isinstance(v, NumFn):
        out.lines += fmt_atom_table(v.space, v.items())
        out.data["atoms"] = [[fmt_set(v.space.ground, a), str(x)] for a, x in v.items()]
    elif isinstance(v, MeasureTable):
        out.lines += fmt_atom_table(v.space, v.items())
        out.data["atoms"] = [[fmt_set(v.ground, a), str(x)] for a, x in v.items()]
    elif isinstance(v, SigmaField):
        out.add(describe_sigma(v))
    elif isinstance(v, sc.CDFSpec):
        out.add(json.dumps(v.to_data()))
    elif isinstance(v, IntervalSet):
        out.add(fmt_interval_set(v))
    else:
        out.add(fmt_scalar(_as_xvalue(v)))
        out.data["value"] = str(_as_xvalue(v)) if not isinstance(v, float) else v
        out.data["provenance"] = "numeric" if isinstance(v, float) else "exact"


def describe_sigma(sf: SigmaField) -> str:
    atoms = ",".join(fmt_set(sf.ground, a) for a in sf.atoms) if sf.atoms else "∅"
    return f"atoms: {atoms}; members: {sf.n_members()}"


# -- commands -----------------------------------------------------------------------


def _ws(args) -> Workspace:
    return Workspace.load(args.workspace) if args.workspace else Workspace()


def _resolve(ws: Workspace, text: str):
    return Evaluator(ws).run(text)


def cmd_gen_sigma(args, out: Output):
    ws = _ws(args)
    if args.power:
        g = ws.get("spaces", args.name)
        if len(g) > config.max_ground_size:
            raise GroundSizeError(f"ground set has {len(g)} elements; cap is {config.max_ground_size}")
        sf = g.power_set()
    else:
        fam = ws.get("families", args.name)
        if len(fam.ground) > config.max_ground_size:
            raise GroundSizeError(f"ground set has {len(fam.ground)} elements; cap is {config.max_ground_size}")
        sf = generate_sigma_field(fam.ground, fam)
    out.add(describe_sigma(sf))
    out.data.update(atoms=[fmt_set(sf.ground, a) for a in sf.atoms], members=sf.n_members())


def cmd_eval(args, out: Output):
    v = Evaluator(_ws(args)).run(args.expression)
    render_value(v, out)


def cmd_condexp(args, out: Output):
    ws = _ws(args)
    table = cond_exp(ws.get("functions", args.f), ws.get("measures", args.P), ws.get("fields", args.B))
    render_value(table, out)


def cmd_rn(args, out: Output):
    ws = _ws(args)
    render_value(radon_nikodym(ws.get("measures", args.mu), ws.get("measures", args.nu)), out)


def cmd_product(args, out: Output):
    ws = _ws(args)
    mu, nu = ws.get("measures", args.mu), ws.get("measures", args.nu)
    prod = product_measure(mu, nu)
    if args.integrand is None:
        render_value(prod, out)
        return
    ps = product_space(mu.space, nu.space)
    vals = {}
    for pt in ps.ground:
        ev = Evaluator(ws, {"x": pt[0], "y": pt[1]})
        v = ev.run(args.integrand)
        if isinstance(v, float):
            raise ParseError("integrand must be exact")
        vals[pt] = _as_xvalue(v)
    f = NumFn.from_points(ps.space, vals)
    rep = fubini_check(f, mu, nu)
    premise = rep.premise_used or "none"
    out.add(f"joint: {rep.joint}; iterated x-y: {rep.iterated_xy}; iterated y-x: {rep.iterated_yx}; premise: {premise}")
    out.data.update(
        joint=str(rep.joint), iterated_xy=str(rep.iterated_xy), iterated_yx=str(rep.iterated_yx),
        premises=rep.premises, passed=rep.passed,
    )
    if not rep.premise_holds:
        out.add("no Fubini premise holds; equality is not asserted")
    if not rep.passed:
        out.code = EXIT_FAIL


def _cdf(ws: Workspace, text: str) -> sc.CDFSpec:
    F = _resolve(ws, text)
    if not isinstance(F, sc.CDFSpec):
        raise ParseError(f"{text!r} is not a CDF")
    return F


def cmd_stieltjes(args, out: Output):
    ws = _ws(args)
    F = _cdf(ws, args.cdf)
    if args.action == "measure":
        render_value(sc.measure_set(F, parse_interval_set(args.arg)), out)
    elif args.action == "quantile":
        render_value(_as_xvalue(sc.quantile(F, _frac(_resolve(ws, args.arg)))), out)
    else:
        E = parse_interval_set(args.arg)
        nu = Premeasure(F)
        value = outer_measure(nu, E)
        rng = randinst.seeded(config.seed, 0)
        tests = [randinst.interval_set(rng) for _ in range(args.tests)]
        rep = caratheodory_measurable(nu, E, tests)
        good = sum(c.passed for c in rep.checks)
        out.add(f"outer measure: {fmt_scalar(value)}")
        out.add(f"splitting: {good}/{len(rep.checks)} pass ({rep.provenance})")
        out.data.update(outer=str(value), splitting_passed=good, splitting_total=len(rep.checks))
        if not rep.passed:
            out.code = EXIT_FAIL


def cmd_sample(args, out: Output):
    ws = _ws(args)
    target = _resolve(ws, args.name)
    if isinstance(target, CoordinateSampler):
        rows = sample_coordinates(target, args.count, args.coords)
        for i, r in enumerate(rows):
            out.add(f"{i}\t" + "\t".join(fmt_label(x) for x in r))
        out.data["rows"] = [[str(x) for x in r] for r in rows]
        return
    if not isinstance(target, sc.CDFSpec):
        raise ParseError(f"{args.name!r} is neither a CDF nor a sampler")
    emp = sample_quantile(target, args.count, RNGStream(seed=config.seed))
    d = ks_distance(emp, target)
    band = ks_band(args.count)
    out.add(emp.dump())
    out.add(f"ks: {d:.6g} (band {band:.6g}, generator {RNGStream().generator_id}, seed {config.seed})")
    out.data.update(values=list(emp.values), ks=d, band=band)


def cmd_check(args, out: Output):
    rep = run_suite(args.suite, args.cases, config.seed)
    for a in rep.failures:
        out.add(f"FAIL {a.case_id} {a.name} [{a.provenance}] {a.detail}")
    out.add(rep.summary())
    out.data.update(rep.to_data())
    out.code = EXIT_OK if rep.passed else EXIT_FAIL


# -- argument parsing ---------------------------------------------------------------


def _seed_default() -> int:
    env = os.environ.get("MEASUREKIT_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"MEASUREKIT_SEED must be an integer, got {env!r}") from exc


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--seed", type=int, default=d, help="random seed (default: $MEASUREKIT_SEED or 0)")
    p.add_argument("--tolerance", type=float, default=d, help="numeric-layer tolerance (default 1e-8)")
    p.add_argument("--max-ground-size", type=int, default=d, help="cap for member enumeration (default 20)")
    p.add_argument("--report", metavar="PATH", default=d, help="write a JSON report")
    p.add_argument("-w", "--workspace", metavar="PATH", default=d, help="workspace JSON document")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="measurekit", description="Exact measure-theory computations and checks.")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        _global_flags(sp, suppress=True)
        sp.set_defaults(func=fn)
        return sp

    sp = cmd("gen-sigma", cmd_gen_sigma, "generated sigma-field of a family")
    sp.add_argument("name", help="family name (or space name with --power)")
    sp.add_argument("--power", action="store_true", help="power set of the named space")

    sp = cmd("eval", cmd_eval, "evaluate an expression")
    sp.add_argument("expression")

    sp = cmd("condexp", cmd_condexp, "conditional expectation P[f | B]")
    sp.add_argument("f")
    sp.add_argument("P")
    sp.add_argument("B")

    sp = cmd("rn", cmd_rn, "Radon-Nikodym derivative d(mu)/d(nu)")
    sp.add_argument("mu")
    sp.add_argument("nu")

    sp = cmd("product", cmd_product, "product measure, optionally with a Fubini check")
    sp.add_argument("mu")
    sp.add_argument("nu")
    sp.add_argument("--integrand", help="expression in x and y, e.g. \"f(x)*g(y) - 1\"")

    sp = cmd("stieltjes", cmd_stieltjes, "Lebesgue-Stieltjes operations")
    sp.add_argument("action", choices=["measure", "quantile", "extend"])
    sp.add_argument("cdf", help="CDF name or constructor such as \"exponential(2)\"")
    sp.add_argument("arg", help="interval set (measure, extend) or level u (quantile)")
    sp.add_argument("--tests", type=int, default=200, help="test sets for the splitting check")

    sp = cmd("sample", cmd_sample, "sample from a CDF or a coordinate sampler")
    sp.add_argument("name")
    sp.add_argument("-n", "--count", type=int, default=1000)
    sp.add_argument("--coords", type=int, default=4, help="coordinates per row for samplers")

    sp = cmd("check", cmd_check, "run a property suite")
    sp.add_argument("suite", choices=sorted(SUITES))
    sp.add_argument("--cases", type=int, default=None)
    return p


def _configure(args):
    seed = args.seed if args.seed is not None else _seed_default()
    if seed < 0:
        raise UsageError("--seed must be nonnegative")
    config.seed = seed
    if args.tolerance is not None:
        if not args.tolerance > 0:
            raise UsageError("--tolerance must be positive")
        config.tolerance = args.tolerance
    if args.max_ground_size is not None:
        if args.max_ground_size < 0:
            raise UsageError("--max-ground-size must be nonnegative")
        config.max_ground_size = args.max_ground_size


def _write_report(path: str, args, out: Output):
    doc = {"command": args.command, "exit": out.code, "seed": config.seed, "output": out.lines, **out.data}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, ensure_ascii=False, default=str)
        fh.write("\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    saved = (config.seed, config.tolerance, config.max_ground_size)
    out = Output()
    try:
        _configure(args)
        args.func(args, out)
    except (ParseError, UsageError, GroundSizeError) as exc:
        print(f"measurekit: error: {exc}", file=sys.stderr)
        out.code = EXIT_USAGE
    except MeasureKitError as exc:
        witness = getattr(exc, "witness", None)
        msg = str(exc)
        if witness is not None:
            msg += f"; witness {{{','.join(fmt_label(x) for x in sorted(witness, key=str))}}}"
        print(f"measurekit: {msg}", file=sys.stderr)
        out.code = EXIT_FAIL
        out.data["error"] = msg
    else:
        if out.lines:
            print("\n".join(out.lines))
    finally:
        if out.code != EXIT_USAGE and getattr(args, "report", None):
            try:
                _write_report(args.report, args, out)
            except OSError as exc:
                print(f"measurekit: error: cannot write report: {exc}", file=sys.stderr)
        config.seed, config.tolerance, config.max_ground_size = saved
    return out.code


if __name__ == "__main__":
    sys.exit(main())
