"""Finite ground sets, set families and sigma-fields stored as atom partitions.

Subsets are ``frozenset`` objects of labels. A ``SigmaField`` never lists its
members; a set belongs to it iff it is a union of atoms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from .config import config
from .errors import GroundSizeError, MeasureKitError, NotMeasurableError, SpaceMismatchError

Label = Hashable


@dataclass(frozen=True)
class GroundSet:
    elements: tuple

    def __init__(self, elements: Iterable[Label] = ()):
        elems = tuple(elements)
        if len(set(elems)) != len(elems):
            raise MeasureKitError(f"duplicate labels in ground set {elems!r}")
        object.__setattr__(self, "elements", elems)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {x: i for i, x in enumerate(self.elements)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def index(self, x) -> int:
        return self._index[x]

    def full(self) -> frozenset:
        return frozenset(self.elements)

    def subset(self, items: Iterable[Label]) -> frozenset:
        s = frozenset(items)
        bad = [x for x in s if x not in self]
        if bad:
            raise MeasureKitError(f"labels {bad!r} are not in the ground set")
        return s

    def to_mask(self, s: Iterable[Label]) -> int:
        idx = self._index
        m = 0
        for x in s:
            m |= 1 << idx[x]
        return m

    def from_mask(self, m: int) -> frozenset:
        return frozenset(x for i, x in enumerate(self.elements) if m >> i & 1)

    def sort_key(self, s: Iterable[Label]):
        idx = self._index
        return sorted(idx[x] for x in s)

    def ordered(self, s: Iterable[Label]) -> list:
        idx = self._index
        return sorted(s, key=idx.__getitem__)

    def power_set(self) -> "SigmaField":
        return SigmaField(self, [[x] for x in self.elements])

    def trivial(self) -> "SigmaField":
        return SigmaField(self, [self.elements] if self.elements else [])


@dataclass(frozen=True)
class SetFamily:
    ground: GroundSet
    members: tuple

    def __init__(self, ground: GroundSet, members: Iterable[Iterable[Label]] = ()):
        seen = []
        got = set()
        for m in members:
            s = ground.subset(m)
            if s not in got:
                got.add(s)
                seen.append(s)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "members", tuple(seen))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s):
        return frozenset(s) in self.as_set()

    def as_set(self) -> frozenset:
        return frozenset(self.members)

    def masks(self) -> list[int]:
        return [self.ground.to_mask(m) for m in self.members]

    def same_members(self, other: "SetFamily") -> bool:
        return self.ground == other.ground and self.as_set() == other.as_set()


def _canonical_atoms(ground: GroundSet, blocks) -> tuple:
    atoms = [frozenset(b) for b in blocks if b]
    atoms.sort(key=lambda a: min(ground.index(x) for x in a))
    return tuple(atoms)


@dataclass(frozen=True)
class SigmaField:
    """Sigma-field on a finite ground set, represented by its atoms."""

    ground: GroundSet
    atoms: tuple

    def __init__(self, ground: GroundSet, atoms: Iterable[Iterable[Label]]):
        blocks = [ground.subset(a) for a in atoms]
        seen: set = set()
        for b in blocks:
            if not b:
                raise MeasureKitError("atoms must be nonempty")
            if seen & b:
                raise MeasureKitError("atoms must be pairwise disjoint")
            seen |= b
        if seen != ground.full():
            raise MeasureKitError("atoms must cover the ground set")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "atoms", _canonical_atoms(ground, blocks))

    @property
    def _atom_of(self) -> dict:
        amap = self.__dict__.get("_amap")
        if amap is None:
            amap = {x: i for i, a in enumerate(self.atoms) for x in a}
            object.__setattr__(self, "_amap", amap)
        return amap

    def atom_index(self, x: Label) -> int:
        return self._atom_of[x]

    def atom_of(self, x: Label) -> frozenset:
        return self.atoms[self._atom_of[x]]

    def contains(self, s: Iterable[Label]) -> bool:
        """True iff ``s`` is a union of atoms."""
        s = self.ground.subset(s)
        return all(a <= s for a in self.atoms if a & s)

    __contains__ = contains

    def atoms_in(self, s: Iterable[Label]) -> list[int]:
        """Indices of the atoms making up the measurable set ``s``."""
        s = self.ground.subset(s)
        out = []
        for i, a in enumerate(self.atoms):
            inter = a & s
            if inter:
                if inter != a:
                    raise NotMeasurableError(
                        f"set {sorted(map(str, s))} splits atom {sorted(map(str, a))}", witness=a
                    )
                out.append(i)
        return out

    def members(self) -> list[frozenset]:
        """Every member, as unions of atoms (2**#atoms sets)."""
        if len(self.ground) > config.max_ground_size:
            raise GroundSizeError(
                f"ground set has {len(self.ground)} elements; cap is {config.max_ground_size}"
            )
        out = []
        k = len(self.atoms)
        for m in range(1 << k):
            s = frozenset().union(*(self.atoms[i] for i in range(k) if m >> i & 1))
            out.append(s)
        return out

    def n_members(self) -> int:
        return 1 << len(self.atoms)

    def family(self) -> SetFamily:
        return SetFamily(self.ground, self.members())

    def refines(self, other: "SigmaField") -> bool:
        """True iff ``other`` is a sub-sigma-field of ``self``."""
        _same_ground(self, other)
        return all(self.contains(a) for a in other.atoms)

    def is_trivial(self) -> bool:
        return len(self.atoms) <= 1

    def is_power_set(self) -> bool:
        return len(self.atoms) == len(self.ground)

    def __eq__(self, other):
        if not isinstance(other, SigmaField):
            return NotImplemented
        return self.ground == other.ground and self.atoms == other.atoms

    def __hash__(self):
        return hash((self.ground, self.atoms))

    def __repr__(self):
        inner = ", ".join("{" + ",".join(map(str, self.ground.ordered(a))) + "}" for a in self.atoms)
        return f"SigmaField[{inner}]"


@dataclass(frozen=True)
class MeasurableMap:
    domain: GroundSet
    codomain: GroundSet
    graph: Mapping = field(hash=False)

    def __post_init__(self):
        g = dict(self.graph)
        missing = [x for x in self.domain if x not in g]
        if missing:
            raise MeasureKitError(f"map is not total; no image for {missing!r}")
        extra = [x for x in g if x not in self.domain]
        if extra:
            raise MeasureKitError(f"map defined outside its domain at {extra!r}")
        bad = [y for y in g.values() if y not in self.codomain]
        if bad:
            raise MeasureKitError(f"values {bad!r} lie outside the codomain")
        object.__setattr__(self, "graph", g)

    def __call__(self, x):
        return self.graph[x]

    def preimage(self, s: Iterable[Label]) -> frozenset:
        s = frozenset(s)
        return frozenset(x for x in self.domain if self.graph[x] in s)

    def image(self, s: Iterable[Label]) -> frozenset:
        return frozenset(self.graph[x] for x in s)

    def compose(self, after: "MeasurableMap") -> "MeasurableMap":
        """``after`` applied after ``self``."""
        if after.domain != self.codomain:
            raise SpaceMismatchError("composition needs matching codomain/domain")
        return MeasurableMap(self.domain, after.codomain, {x: after(self(x)) for x in self.domain})

    @classmethod
    def identity(cls, ground: GroundSet) -> "MeasurableMap":
        return cls(ground, ground, {x: x for x in ground})

    @classmethod
    def constant(cls, domain: GroundSet, codomain: GroundSet, value) -> "MeasurableMap":
        return cls(domain, codomain, {x: value for x in domain})


def _same_ground(*sigmas: SigmaField):
    g = sigmas[0].ground
    for s in sigmas[1:]:
        if s.ground != g:
            raise SpaceMismatchError("sigma-fields live on different ground sets")


# -- generation ------------------------------------------------------------


def generate_sigma_field(ground: GroundSet, family) -> SigmaField:
    """Smallest sigma-field containing every member of ``family``.

    Atoms are the nonempty classes of points sharing the same membership
    pattern across the family.
    """
    members = [ground.subset(m) for m in (family.members if isinstance(family, SetFamily) else family)]
    if isinstance(family, SetFamily) and family.ground != ground:
        raise SpaceMismatchError("family lives on a different ground set")
    classes: dict[tuple, list] = {}
    for x in ground:
        sig = tuple(x in m for m in members)
        classes.setdefault(sig, []).append(x)
    return SigmaField(ground, classes.values())


def is_pi_system(family: SetFamily) -> bool:
    masks = set(family.masks())
    return all((a & b) in masks for a, b in combinations(masks, 2))


def _is_pi_masks(masks: frozenset) -> bool:
    for a in masks:
        for b in masks:
            if (a & b) not in masks:
                return False
    return True


def is_lambda_system(ground: GroundSet, family: SetFamily) -> bool:
    """Omega present, complements present, disjoint pairwise unions present."""
    full = (1 << len(ground)) - 1
    masks = set(ground.to_mask(m) for m in family.members)
    if full not in masks:
        return False
    for a in masks:
        if full ^ a not in masks:
            return False
    for a in masks:
        for b in masks:
            if not a & b and (a | b) not in masks:
                return False
    return True


def _lambda_closure_masks(n: int, masks: Iterable[int]) -> set[int]:
    full = (1 << n) - 1
    fam = set(masks)
    fam.add(full)
    while True:
        new = set()
        for a in fam:
            c = full ^ a
            if c not in fam:
                new.add(c)
        cur = list(fam)
        for i, a in enumerate(cur):
            for b in cur[i + 1 :]:
                if not a & b and (a | b) not in fam:
                    new.add(a | b)
        if not new:
            return fam
        fam |= new


def lambda_closure(ground: GroundSet, family: SetFamily) -> SetFamily:
    """Least lambda-system containing ``family``, by fixpoint iteration."""
    fam = _lambda_closure_masks(len(ground), family.masks())
    return SetFamily(ground, [ground.from_mask(m) for m in sorted(fam)])


# -- structure transport ---------------------------------------------------


def trace(sigma: SigmaField, subset: Iterable[Label]) -> SigmaField:
    """Trace sigma-field on ``subset`` (need not be measurable)."""
    a = sigma.ground.subset(subset)
    sub = GroundSet(sigma.ground.ordered(a))
    return SigmaField(sub, [atom & a for atom in sigma.atoms if atom & a])


def join(sigmas: list[SigmaField]) -> SigmaField:
    """Coarsest common refinement."""
    if not sigmas:
        raise MeasureKitError("join of an empty list is undefined without a ground set")
    _same_ground(*sigmas)
    ground = sigmas[0].ground
    classes: dict[tuple, list] = {}
    for x in ground:
        classes.setdefault(tuple(s.atom_index(x) for s in sigmas), []).append(x)
    return SigmaField(ground, classes.values())


def meet(sigmas: list[SigmaField]) -> SigmaField:
    """Intersection of sigma-fields: finest common coarsening of the partitions."""
    if not sigmas:
        raise MeasureKitError("meet of an empty list is undefined without a ground set")
    _same_ground(*sigmas)
    ground = sigmas[0].ground
    parent = {x: x for x in ground}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in sigmas:
        for atom in s.atoms:
            it = iter(atom)
            first = find(next(it))
            for y in it:
                r = find(y)
                if r != first:
                    parent[r] = first
    blocks: dict = {}
    for x in ground:
        blocks.setdefault(find(x), []).append(x)
    return SigmaField(ground, blocks.values())


def pullback_sigma(f: MeasurableMap, sigma_cod: SigmaField) -> SigmaField:
    """``{f^-1(A') : A' in sigma_cod}``; atoms are nonempty preimages of codomain atoms."""
    if f.codomain != sigma_cod.ground:
        raise SpaceMismatchError("map codomain differs from the sigma-field's ground set")
    return SigmaField(f.domain, [f.preimage(a) for a in sigma_cod.atoms if f.preimage(a)])


def pushforward_sigma(f: MeasurableMap, sigma_dom: SigmaField) -> SigmaField:
    """Largest sigma-field on the codomain making ``f`` measurable.

    Codomain points hit by a common domain atom must stay together; points
    outside the range become singleton atoms.
    """
    if f.domain != sigma_dom.ground:
        raise SpaceMismatchError("map domain differs from the sigma-field's ground set")
    cod = f.codomain
    parent = {y: y for y in cod}

    def find(y):
        while parent[y] != y:
            parent[y] = parent[parent[y]]
            y = parent[y]
        return y

    for atom in sigma_dom.atoms:
        ys = list(f.image(atom))
        r0 = find(ys[0])
        for y in ys[1:]:
            r = find(y)
            if r != r0:
                parent[r] = r0
    blocks: dict = {}
    for y in cod:
        blocks.setdefault(find(y), []).append(y)
    return SigmaField(cod, blocks.values())


def is_measurable(f: MeasurableMap, F_dom: SigmaField, F_cod: SigmaField) -> bool:
    if f.domain != F_dom.ground or f.codomain != F_cod.ground:
        raise SpaceMismatchError("map and sigma-fields disagree on ground sets")
    return all(F_dom.contains(f.preimage(a)) for a in F_cod.atoms)


def sigma_of_map(f: MeasurableMap, F_cod: SigmaField | None = None) -> SigmaField:
    """sigma(f): pull-back of the codomain sigma-field (power set by default)."""
    return pullback_sigma(f, F_cod if F_cod is not None else f.codomain.power_set())


def all_subsets(ground: GroundSet) -> list[frozenset]:
    if len(ground) > config.max_ground_size:
        raise GroundSizeError(f"ground set has {len(ground)} elements; cap is {config.max_ground_size}")
    return [ground.from_mask(m) for m in range(1 << len(ground))]
