"""Independent reference implementations used by the tests.

These deliberately avoid the package internals: closures are computed by
naive fixpoint iteration on frozensets, integrals by explicit sums.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def powerset(elements):
    elems = list(elements)
    return [frozenset(c) for r in range(len(elems) + 1) for c in combinations(elems, r)]


def sigma_closure(ground, family) -> frozenset:
    """Close under complement and pairwise union, starting from the family plus the empty set."""
    full = frozenset(ground)
    fam = {frozenset(s) for s in family} | {frozenset(), full}
    while True:
        new = {full - a for a in fam} | {a | b for a in fam for b in fam}
        if new <= fam:
            return frozenset(fam)
        fam |= new


def lambda_fixpoint(ground, family) -> frozenset:
    """Close under Omega, complement and disjoint union."""
    full = frozenset(ground)
    fam = {frozenset(s) for s in family} | {full}
    while True:
        new = {full - a for a in fam} | {a | b for a in fam for b in fam if not a & b}
        if new <= fam:
            return frozenset(fam)
        fam |= new


def atoms_of(ground, members) -> set:
    """Minimal nonempty members of a finite sigma-field."""
    nonempty = [m for m in members if m]
    return {m for m in nonempty if not any(o < m for o in nonempty)}


def point_integral(values: dict, weights: dict) -> Fraction:
    """sum_x f(x) w(x) for finite values."""
    return sum((Fraction(values[x]) * Fraction(weights[x]) for x in weights), Fraction(0))


def poly_integral(coeffs, a, b) -> Fraction:
    """int_a^b sum c_k x^k dx by the power rule."""
    a, b = Fraction(a), Fraction(b)
    return sum((Fraction(c) * (b ** (k + 1) - a ** (k + 1)) / (k + 1) for k, c in enumerate(coeffs)), Fraction(0))
