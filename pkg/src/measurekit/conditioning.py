"""Conditional expectation and regular conditional probabilities on finite spaces.

Conditional expectations are only defined up to null sets; here the value on
a zero-mass atom of the conditioning sigma-field is 0, and every comparison
quantifies over positive-mass atoms only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import IllDefinedIntegralError, MeasureKitError, NotMeasurableError, SpaceMismatchError
from .integrate import ConvexSpec, NumFn, integrate
from .measure import MeasureTable, evaluate, pushforward_measure
from .numerics import ONE, ZERO, XValue, mul, xsum, xv
from .product import is_independency
from .setalg import MeasurableMap, SigmaField, generate_sigma_field, is_measurable, meet, pullback_sigma, sigma_of_map


@dataclass(frozen=True)
class CondExpTable:
    sub_field: SigmaField
    values: tuple

    def at(self, x) -> XValue:
        return self.values[self.sub_field.atom_index(x)]

    def as_numfn(self) -> NumFn:
        return NumFn(self.sub_field, self.values)

    def lift(self, space: SigmaField) -> NumFn:
        return self.as_numfn().lift(space)

    def items(self):
        return zip(self.sub_field.atoms, self.values)


def _check_sub_field(P: MeasureTable, B: SigmaField):
    if B.ground != P.ground:
        raise SpaceMismatchError("sub-sigma-field lives on a different ground set")
    if not P.space.refines(B):
        raise NotMeasurableError("B is not a sub-sigma-field of P's sigma-field")


def _require_probability(P: MeasureTable):
    if P.mass() != ONE:
        raise MeasureKitError("P must be a probability")


def cond_exp(f: NumFn, P: MeasureTable, B: SigmaField) -> CondExpTable:
    """P[f | B]: P[f; I] / P(I) on positive-mass atoms I of B, 0 on null atoms."""
    _require_probability(P)
    _check_sub_field(P, B)
    whole = integrate(f, P)
    if not whole.well_defined:
        raise IllDefinedIntegralError("P[f+] and P[f-] are both infinite")
    vals = []
    for atom in B.atoms:
        m = evaluate(P, atom)
        if m == ZERO:
            vals.append(ZERO)
        else:
            vals.append(integrate(f, P, over=atom).value / m)
    return CondExpTable(B, tuple(vals))


def positive_atoms(P: MeasureTable, B: SigmaField) -> list[int]:
    return [i for i, a in enumerate(B.atoms) if evaluate(P, a) > 0]


def same_on_positive(P: MeasureTable, B: SigmaField, g: NumFn, h: NumFn):
    """First positive-mass atom of B where the B-measurable g and h differ, else None."""
    for i in positive_atoms(P, B):
        x = next(iter(B.atoms[i]))
        if g.at(x) != h.at(x):
            return B.atoms[i]
    return None


@dataclass
class DefiningReport:
    passed: bool
    members_checked: int
    witness: frozenset | None = None
    mode: str = "full"


def verify_defining(g: CondExpTable, f: NumFn, P: MeasureTable, pi: Iterable | None = None) -> DefiningReport:
    """P[f; B] == P[g; B] for every B in the sub-field, or only for B in pi plus Omega."""
    gl = g.lift(P.space)
    if pi is None:
        tests = g.sub_field.members()
        mode = "full"
    else:
        tests = [P.ground.subset(s) for s in pi] + [P.ground.full()]
        mode = "pi"
    n = 0
    for s in tests:
        n += 1
        if integrate(f, P, over=s).value != integrate(gl, P, over=s).value:
            return DefiningReport(False, n, frozenset(s), mode)
    return DefiningReport(True, n, None, mode)


# -- property suite -----------------------------------------------------------------


@dataclass
class PropertyItem:
    name: str
    status: str  # "pass", "fail" or "premise"
    witness: object = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"


@dataclass
class PropertyReport:
    items: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    def by_name(self) -> dict:
        return {i.name: i for i in self.items}


def _is_measurable_fn(g: NumFn, B: SigmaField) -> bool:
    return all(len({g.at(x) for x in a}) == 1 for a in B.atoms)


def _integrable(f: NumFn, P: MeasureTable) -> bool:
    return integrate(f, P).integrable


def tower_item(f: NumFn, P: MeasureTable, B: SigmaField) -> PropertyItem:
    ce = cond_exp(f, P, B)
    lhs = integrate(ce.lift(P.space), P).value
    rhs = integrate(f, P).value
    return PropertyItem("tower", "pass" if lhs == rhs else "fail", None if lhs == rhs else (lhs, rhs))


def taking_out_item(f: NumFn, g: NumFn, P: MeasureTable, B: SigmaField) -> PropertyItem:
    if not _is_measurable_fn(g, B):
        return PropertyItem("taking-out", "premise", note="g is not B-measurable")
    gf = g * f
    if not (_integrable(f, P) and _integrable(gf, P)):
        return PropertyItem("taking-out", "premise", note="f or g*f is not integrable")
    lhs = cond_exp(gf, P, B).as_numfn()
    rhs = NumFn.from_points(B, g.at) * cond_exp(f, P, B).as_numfn()
    w = same_on_positive(P, B, lhs, rhs)
    return PropertyItem("taking-out", "pass" if w is None else "fail", w)


def repeated_item(f: NumFn, P: MeasureTable, B: SigmaField, C: SigmaField) -> PropertyItem:
    if not (B.refines(C) or C.refines(B)):
        return PropertyItem("repeated", "premise", note="B and C are not nested")
    inner = cond_exp(f, P, C).lift(P.space)
    lhs = cond_exp(inner, P, B).as_numfn()
    M = meet([B, C])
    rhs = cond_exp(f, P, M).as_numfn().lift(B)
    w = same_on_positive(P, B, lhs, rhs)
    return PropertyItem("repeated", "pass" if w is None else "fail", w)


def jensen_item(f: NumFn, P: MeasureTable, B: SigmaField, phi: ConvexSpec) -> PropertyItem:
    if not all(phi.in_domain(v) for v in f.values):
        return PropertyItem("conditional-jensen", "premise", note="f leaves the domain of phi")
    pf = f.map(phi)
    if not (_integrable(f, P) and _integrable(pf, P)):
        return PropertyItem("conditional-jensen", "premise", note="f or phi(f) is not integrable")
    ce_f = cond_exp(f, P, B)
    ce_pf = cond_exp(pf, P, B)
    for i in positive_atoms(P, B):
        if ce_pf.values[i] < phi(ce_f.values[i]):
            return PropertyItem("conditional-jensen", "fail", B.atoms[i])
    return PropertyItem("conditional-jensen", "pass")


def independent_item(f: NumFn, P: MeasureTable, B: SigmaField) -> PropertyItem:
    sf = generate_sigma_field(P.ground, [frozenset(x for x in P.ground if f.at(x) == v) for v in set(f.values)])
    if not is_independency(P, [sf.members(), B.members()]).passed:
        return PropertyItem("independent", "premise", note="sigma(f) is not independent of B")
    ce = cond_exp(f, P, B).as_numfn()
    const = NumFn.constant(B, integrate(f, P).value)
    w = same_on_positive(P, B, ce, const)
    return PropertyItem("independent", "pass" if w is None else "fail", w)


def property_suite(
    f: NumFn, g: NumFn, P: MeasureTable, B: SigmaField, C: SigmaField, phi: ConvexSpec | None = None
) -> PropertyReport:
    rep = PropertyReport()
    rep.items.append(tower_item(f, P, B))
    rep.items.append(taking_out_item(f, g, P, B))
    rep.items.append(repeated_item(f, P, B, C))
    if phi is not None:
        rep.items.append(jensen_item(f, P, B, phi))
    rep.items.append(independent_item(f, P, B))
    return rep


# -- factorization and computation methods ---------------------------------------------


@dataclass(frozen=True)
class Factorization:
    h: dict

    def __call__(self, y) -> XValue:
        return self.h[y]


def doob_dynkin_factor(Y: NumFn, X: MeasurableMap) -> Factorization:
    """h with Y = h(X); h is 0 off the range of X."""
    if Y.space.ground != X.domain:
        raise SpaceMismatchError("Y and X need a common domain")
    seen: dict = {}
    for w in X.domain:
        y = X(w)
        if y in seen:
            w0, v0 = seen[y]
            if Y.at(w) != v0:
                raise NotMeasurableError("Y is not sigma(X)-measurable", witness=(w0, w))
        else:
            seen[y] = (w, Y.at(w))
    return Factorization({y: seen[y][1] if y in seen else ZERO for y in X.codomain})


def density_conditioning(h: Mapping, f12: Mapping, f2: Mapping, ff: Mapping, ee: Mapping) -> dict:
    """c(y) = sum_x h(x, y) f12(x, y) / f2(y) ff(x) on {f2 > 0}, and 0 elsewhere."""
    xs, ys = list(ff), list(ee)
    if any(Fraction(ff[x]) <= 0 for x in xs) or any(Fraction(ee[y]) <= 0 for y in ys):
        raise MeasureKitError("reference grid weights must be positive")
    out = {}
    for y in ys:
        marg = sum((Fraction(f12.get((x, y), 0)) * Fraction(ff[x]) for x in xs), Fraction(0))
        if marg != Fraction(f2.get(y, 0)):
            raise MeasureKitError(f"marginal density disagrees with the joint at y={y!r}")
        if marg == 0:
            out[y] = xv(0)
        else:
            out[y] = xsum(
                mul(xv(h[(x, y)]), xv(Fraction(f12.get((x, y), 0)) * Fraction(ff[x]) / marg)) for x in xs
            )
    return out


def grid_law(f12: Mapping, ff: Mapping, ee: Mapping) -> MeasureTable:
    """Probability on the (x, y) grid with weight f12(x, y) ff(x) ee(y)."""
    from .setalg import GroundSet

    g = GroundSet([(x, y) for x in ff for y in ee])
    return MeasureTable.from_points(g, {(x, y): Fraction(f12.get((x, y), 0)) * Fraction(ff[x]) * Fraction(ee[y]) for (x, y) in g})


@dataclass
class IndependentConditioning:
    d: dict
    ce: CondExpTable
    matches: bool
    witness: frozenset | None = None


def independent_conditioning(
    h: Callable, X: MeasurableMap, Y: MeasurableMap, P: MeasureTable, G: SigmaField | None = None
) -> IndependentConditioning:
    """d(y) = P[h(X, y)]; verifies P[h(X, Y) | G] = d(Y) when X is independent of G."""
    _require_probability(P)
    G = G if G is not None else sigma_of_map(Y)
    _check_sub_field(P, G)
    sx = sigma_of_map(X)
    if not P.space.refines(sx):
        raise NotMeasurableError("X is not measurable for P's sigma-field")
    if not G.refines(sigma_of_map(Y)):
        raise NotMeasurableError("Y is not G-measurable")
    if not is_independency(P, [sx.members(), G.members()]).passed:
        raise MeasureKitError("X is not independent of G")
    law_x = pushforward_measure(X, P, X.codomain.power_set())
    d = {y: xsum(mul(law_x.point_atom_weight(x), xv(h(x, y))) for x in X.codomain) for y in Y.codomain}
    hxy = NumFn.from_points(P.space, lambda w: h(X(w), Y(w)))
    ce = cond_exp(hxy, P, G)
    dY = NumFn.from_points(G, lambda w: d[Y(w)])
    w = same_on_positive(P, G, ce.as_numfn(), dY)
    return IndependentConditioning(d, ce, w is None, w)


# -- regular conditional probabilities -----------------------------------------------


@dataclass(frozen=True)
class Kernel:
    sources: tuple
    targets: tuple
    rows: dict  # source -> {target: Fraction}
    default: object

    def __call__(self, e, x) -> Fraction:
        return self.rows[e].get(x, Fraction(0))

    def to_data(self) -> dict:
        return {
            "sources": [repr(e) for e in self.sources],
            "targets": [repr(x) for x in self.targets],
            "rows": [[str(self(e, x)) for x in self.targets] for e in self.sources],
            "default": repr(self.default),
        }


def regular_cond_prob(X: MeasurableMap, Z: MeasurableMap, P: MeasureTable, default=None) -> Kernel:
    """mu(e, .) = P(X in ., Z = e) / P(Z = e); null rows are point masses at ``default``."""
    _require_probability(P)
    if X.domain != P.ground or Z.domain != P.ground:
        raise SpaceMismatchError("X and Z must be defined on P's ground set")
    for s in (sigma_of_map(X), sigma_of_map(Z)):
        if not P.space.refines(s):
            raise NotMeasurableError("X and Z must be measurable for P's sigma-field")
    targets = X.codomain.elements
    if default is None:
        default = targets[0]
    rows = {}
    for e in Z.codomain:
        ze = Z.preimage([e])
        pe = evaluate(P, ze)
        if pe == ZERO:
            rows[e] = {default: Fraction(1)}
        else:
            rows[e] = {x: (evaluate(P, ze & X.preimage([x])) / pe).fraction for x in targets}
    return Kernel(Z.codomain.elements, targets, rows, default)


@dataclass
class KernelReport:
    rows_are_probabilities: bool
    reconstruction_ok: bool
    disintegration_ok: bool
    witness: object = None

    @property
    def passed(self) -> bool:
        return self.rows_are_probabilities and self.reconstruction_ok and self.disintegration_ok


def verify_kernel(K: Kernel, X: MeasurableMap, Z: MeasurableMap, P: MeasureTable, tests: Sequence[Callable]) -> KernelReport:
    """Rows are probabilities; P[f(X, Z) | Z] = sum_x mu(Z, x) f(x, Z); P[f(X, Z)] = double sum."""
    rows_ok = all(sum(K.rows[e].values()) == 1 and all(v >= 0 for v in K.rows[e].values()) for e in K.sources)
    sz = sigma_of_map(Z)
    recon_ok, dis_ok, witness = True, True, None
    for f in tests:
        fxz = NumFn.from_points(P.space, lambda w: f(X(w), Z(w)))
        ce = cond_exp(fxz, P, sz).as_numfn()
        via = NumFn.from_points(sz, lambda w: xsum(mul(xv(K(Z(w), x)), xv(f(x, Z(w)))) for x in K.targets))
        w = same_on_positive(P, sz, ce, via)
        if w is not None:
            recon_ok, witness = False, (f, w)
        lhs = integrate(fxz, P).value
        rhs = xsum(
            mul(evaluate(P, Z.preimage([e])), xsum(mul(xv(K(e, x)), xv(f(x, e))) for x in K.targets))
            for e in K.sources
        )
        if lhs != rhs:
            dis_ok, witness = False, (f, lhs, rhs)
    return KernelReport(rows_ok, recon_ok, dis_ok, witness)


@dataclass
class ImageMeasureReport:
    passed: bool
    lhs: NumFn
    rhs: NumFn
    witness: frozenset | None = None


def conditional_image_measure_check(X: MeasurableMap, f: NumFn, A: SigmaField, P: MeasureTable) -> ImageMeasureReport:
    """P[f(X) | X^-1(A)] == ((X_* P)[f | A])(X) on positive-mass atoms."""
    _require_probability(P)
    if not is_measurable(X, P.space, f.space):
        raise NotMeasurableError("X is not measurable into f's sigma-field")
    fX = NumFn.from_points(P.space, lambda w: f.at(X(w)))
    if not integrate(fX, P).well_defined:
        raise IllDefinedIntegralError("f(X) has no integral")
    pulled = pullback_sigma(X, A)
    lhs = cond_exp(fX, P, pulled).as_numfn()
    Q = pushforward_measure(X, P, f.space)
    rhs_cod = cond_exp(f, Q, A)
    rhs = NumFn.from_points(pulled, lambda w: rhs_cod.at(X(w)))
    w = same_on_positive(P, pulled, lhs, rhs)
    return ImageMeasureReport(w is None, lhs, rhs, w)
