"""JSON workspace documents: named spaces, families, sigma-fields, measures,
functions, maps, CDFs and samplers.

Labels are JSON scalars (integers or strings). Values are strings such as
``"1/2"``, ``"-3"``, ``"inf"`` or plain integers; decimal literals are
rejected so that every number stays exact. Errors carry a dotted location.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import MeasureKitError, ParseError
from .integrate import NumFn
from .measure import MeasureTable
from .numerics import XValue
from .product import GENERATOR_ID, CoordinateSampler
from .setalg import GroundSet, MeasurableMap, SetFamily, SigmaField, generate_sigma_field
from .stieltjes.cdf import CDFSpec

SECTIONS = ("spaces", "families", "fields", "measures", "functions", "maps", "cdfs", "samplers")


def _fail(where: str, msg: str):
    raise ParseError(f"{where}: {msg}")


def _rethrow(where: str, exc: MeasureKitError):
    # errors raised by nested parsers already carry their own location
    if isinstance(exc, ParseError) and str(exc).startswith(where):
        raise exc
    _fail(where, str(exc))


def _label(v, where: str):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        _fail(where, f"labels must be integers or strings, got {v!r}")
    return v


def _value(v, where: str) -> XValue:
    if isinstance(v, bool) or isinstance(v, float):
        _fail(where, f"values must be integers or exact strings, got {v!r}")
    try:
        return XValue.parse(str(v))
    except MeasureKitError as exc:
        _rethrow(where, exc)


def _fmt_value(v: XValue):
    return str(v)


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class Workspace:
    spaces: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    fields: dict = field(default_factory=dict)
    measures: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    cdfs: dict = field(default_factory=dict)
    samplers: dict = field(default_factory=dict)
    # how each field was declared, kept for faithful re-serialization
    field_sources: dict = field(default_factory=dict)
    map_spaces: dict = field(default_factory=dict)

    # -- lookup -----------------------------------------------------------------
    def get(self, section: str, name: str):
        table = getattr(self, section)
        if name not in table:
            raise ParseError(f"{section}.{name}: unresolved name")
        return table[name]

    def find(self, name: str):
        hits = [(s, getattr(self, s)[name]) for s in SECTIONS if name in getattr(self, s)]
        if not hits:
            raise ParseError(f"{name}: unresolved name")
        return hits[0]

    # -- parsing ----------------------------------------------------------------
    @classmethod
    def from_text(cls, text: str) -> "Workspace":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        return cls.from_data(data)

    @classmethod
    def load(cls, path: str) -> "Workspace":
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"{path}: {exc.strerror}") from exc
        return cls.from_text(text)

    @classmethod
    def from_data(cls, data: Any) -> "Workspace":
        if not isinstance(data, dict):
            _fail("<root>", "workspace must be a JSON object")
        unknown = set(data) - set(SECTIONS)
        if unknown:
            _fail("<root>", f"unknown sections {sorted(unknown)}")
        names: dict = {}
        for sec in SECTIONS:
            block = data.get(sec, {})
            if not isinstance(block, dict):
                _fail(sec, "section must be an object")
            for name in block:
                if name in names:
                    _fail(f"{sec}.{name}", f"name already used in {names[name]}")
                names[name] = sec
        ws = cls()
        for name, d in data.get("spaces", {}).items():
            ws._parse_space(name, d)
        for name, d in data.get("families", {}).items():
            ws._parse_family(name, d)
        for name, d in data.get("fields", {}).items():
            ws._parse_field(name, d)
        for name, d in data.get("measures", {}).items():
            ws._parse_measure(name, d)
        for name, d in data.get("functions", {}).items():
            ws._parse_function(name, d)
        for name, d in data.get("maps", {}).items():
            ws._parse_map(name, d)
        for name, d in data.get("cdfs", {}).items():
            where = f"cdfs.{name}"
            try:
                ws.cdfs[name] = CDFSpec.from_data(d)
            except MeasureKitError as exc:
                _rethrow(where, exc)
        for name, d in data.get("samplers", {}).items():
            ws._parse_sampler(name, d)
        return ws

    def _space_ref(self, ref, where: str) -> GroundSet:
        if ref not in self.spaces:
            _fail(where, f"unresolved space {ref!r}")
        return self.spaces[ref]

    def _field_ref(self, ref, where: str) -> SigmaField:
        if ref not in self.fields:
            _fail(where, f"unresolved field {ref!r}")
        return self.fields[ref]

    def _subset(self, g: GroundSet, items, where: str) -> frozenset:
        if not isinstance(items, list):
            _fail(where, "subsets are lists of labels")
        try:
            return g.subset(_label(x, f"{where}[{i}]") for i, x in enumerate(items))
        except MeasureKitError as exc:
            _rethrow(where, exc)

    def _parse_space(self, name, d):
        where = f"spaces.{name}"
        if not isinstance(d, dict) or not isinstance(d.get("elements"), list):
            _fail(where, "expected {\"elements\": [...]}")
        try:
            self.spaces[name] = GroundSet(_label(x, f"{where}.elements[{i}]") for i, x in enumerate(d["elements"]))
        except MeasureKitError as exc:
            _rethrow(where, exc)

    def _parse_family(self, name, d):
        where = f"families.{name}"
        if not isinstance(d, dict):
            _fail(where, "expected an object")
        g = self._space_ref(d.get("space"), f"{where}.space")
        members = d.get("members", [])
        if not isinstance(members, list):
            _fail(f"{where}.members", "expected a list of subsets")
        self.families[name] = SetFamily(g, [self._subset(g, m, f"{where}.members[{i}]") for i, m in enumerate(members)])

    def _parse_field(self, name, d):
        where = f"fields.{name}"
        if not isinstance(d, dict):
            _fail(where, "expected an object")
        g = self._space_ref(d.get("space"), f"{where}.space")
        keys = {"generators", "atoms", "power"} & set(d)
        if len(keys) != 1:
            _fail(where, "give exactly one of generators, atoms, power")
        key = keys.pop()
        if key == "power":
            if d["power"] is not True:
                _fail(f"{where}.power", "expected true")
            sf = g.power_set()
            src = ("power", True)
        elif key == "generators":
            gen = d["generators"]
            if isinstance(gen, str):
                if gen not in self.families:
                    _fail(f"{where}.generators", f"unresolved family {gen!r}")
                fam = self.families[gen]
                if fam.ground != g:
                    _fail(f"{where}.generators", "family lives on another space")
            elif isinstance(gen, list):
                fam = SetFamily(g, [self._subset(g, m, f"{where}.generators[{i}]") for i, m in enumerate(gen)])
            else:
                _fail(f"{where}.generators", "expected a family name or a list of subsets")
            sf = generate_sigma_field(g, fam)
            src = ("generators", gen)
        else:
            atoms = d["atoms"]
            if not isinstance(atoms, list):
                _fail(f"{where}.atoms", "expected a list of subsets")
            try:
                sf = SigmaField(g, [self._subset(g, a, f"{where}.atoms[{i}]") for i, a in enumerate(atoms)])
            except MeasureKitError as exc:
                _rethrow(f"{where}.atoms", exc)
            src = ("atoms", None)
        self.fields[name] = sf
        self.field_sources[name] = (d["space"], src)

    def _parse_atom_table(self, sf: SigmaField, d, where: str) -> list:
        """``points``: [[label, value]] (constant on atoms) or ``atoms``: [[[labels], value]]."""
        if "points" in d:
            rows = d["points"]
            if not isinstance(rows, list):
                _fail(f"{where}.points", "expected a list of [label, value] pairs")
            per_point = {}
            for i, row in enumerate(rows):
                if not (isinstance(row, list) and len(row) == 2):
                    _fail(f"{where}.points[{i}]", "expected [label, value]")
                x = _label(row[0], f"{where}.points[{i}]")
                if x not in sf.ground:
                    _fail(f"{where}.points[{i}]", f"label {x!r} is not in the space")
                per_point[x] = _value(row[1], f"{where}.points[{i}]")
            return per_point, "points"
        if "atoms" in d:
            rows = d["atoms"]
            if not isinstance(rows, list):
                _fail(f"{where}.atoms", "expected a list of [[labels], value] pairs")
            table = {}
            for i, row in enumerate(rows):
                if not (isinstance(row, list) and len(row) == 2):
                    _fail(f"{where}.atoms[{i}]", "expected [[labels], value]")
                a = self._subset(sf.ground, row[0], f"{where}.atoms[{i}]")
                if a not in sf.atoms:
                    _fail(f"{where}.atoms[{i}]", "not an atom of the field")
                table[a] = _value(row[1], f"{where}.atoms[{i}]")
            return table, "atoms"
        _fail(where, "give points or atoms")

    def _parse_measure(self, name, d):
        where = f"measures.{name}"
        if not isinstance(d, dict):
            _fail(where, "expected an object")
        sf = self._field_ref(d.get("field"), f"{where}.field")
        table, kind = self._parse_atom_table(sf, d, where)
        try:
            if kind == "points":
                ws = []
                for a in sf.atoms:
                    ws.append(sum((table.get(x, XValue(0)) for x in a), XValue(0)))
                self.measures[name] = MeasureTable(sf, ws)
            else:
                self.measures[name] = MeasureTable(sf, [table.get(a, XValue(0)) for a in sf.atoms])
        except MeasureKitError as exc:
            _rethrow(where, exc)

    def _parse_function(self, name, d):
        where = f"functions.{name}"
        if not isinstance(d, dict):
            _fail(where, "expected an object")
        sf = self._field_ref(d.get("field"), f"{where}.field")
        table, kind = self._parse_atom_table(sf, d, where)
        try:
            if kind == "points":
                missing = [x for x in sf.ground if x not in table]
                if missing:
                    _fail(where, f"no value for {missing!r}")
                self.functions[name] = NumFn.from_points(sf, table)
            else:
                missing = [a for a in sf.atoms if a not in table]
                if missing:
                    _fail(where, "every atom needs a value")
                self.functions[name] = NumFn(sf, [table[a] for a in sf.atoms])
        except MeasureKitError as exc:
            _rethrow(where, exc)

    def _parse_map(self, name, d):
        where = f"maps.{name}"
        if not isinstance(d, dict):
            _fail(where, "expected an object")
        dom = self._space_ref(d.get("domain"), f"{where}.domain")
        cod = self._space_ref(d.get("codomain"), f"{where}.codomain")
        graph = d.get("graph")
        if not isinstance(graph, list):
            _fail(f"{where}.graph", "expected a list of [x, y] pairs")
        g = {}
        for i, row in enumerate(graph):
            if not (isinstance(row, list) and len(row) == 2):
                _fail(f"{where}.graph[{i}]", "expected [x, y]")
            g[_label(row[0], f"{where}.graph[{i}]")] = _label(row[1], f"{where}.graph[{i}]")
        try:
            self.maps[name] = MeasurableMap(dom, cod, g)
        except MeasureKitError as exc:
            _rethrow(where, exc)
        self.map_spaces[name] = (d["domain"], d["codomain"])

    def _parse_sampler(self, name, d):
        where = f"samplers.{name}"
        if not isinstance(d, dict):
            _fail(where, "expected an object")

        def law(x, w):
            if not isinstance(x, list):
                _fail(w, "a factor law is a list of [state, probability] pairs")
            out = {}
            for i, row in enumerate(x):
                if not (isinstance(row, list) and len(row) == 2):
                    _fail(f"{w}[{i}]", "expected [state, probability]")
                v = _value(row[1], f"{w}[{i}]")
                if not v.is_finite:
                    _fail(f"{w}[{i}]", "probabilities must be finite")
                out[_label(row[0], f"{w}[{i}]")] = v.fraction
            return out

        prefix = [law(x, f"{where}.prefix[{i}]") for i, x in enumerate(d.get("prefix", []))]
        cycle = [law(x, f"{where}.cycle[{i}]") for i, x in enumerate(d.get("cycle", []))]
        seed = d.get("seed", 0)
        if isinstance(seed, bool) or not isinstance(seed, int):
            _fail(f"{where}.seed", "seed must be an integer")
        try:
            self.samplers[name] = CoordinateSampler(prefix, cycle, seed, d.get("generator", GENERATOR_ID))
        except MeasureKitError as exc:
            _rethrow(where, exc)

    # -- serialization -----------------------------------------------------------
    def _space_name(self, g: GroundSet) -> str:
        for n, s in self.spaces.items():
            if s == g:
                return n
        raise MeasureKitError("object refers to an unnamed space")

    def _field_name(self, sf: SigmaField) -> str:
        for n, s in self.fields.items():
            if s == sf:
                return n
        raise MeasureKitError("object refers to an unnamed field")

    def to_data(self) -> dict:
        out: dict = {}
        if self.spaces:
            out["spaces"] = {n: {"elements": list(g.elements)} for n, g in self.spaces.items()}
        if self.families:
            out["families"] = {
                n: {"space": self._space_name(f.ground), "members": [f.ground.ordered(m) for m in f.members]}
                for n, f in self.families.items()
            }
        if self.fields:
            out["fields"] = {}
            for n, sf in self.fields.items():
                space, (kind, gen) = self.field_sources.get(n, (self._space_name(sf.ground), ("atoms", None)))
                if kind == "power":
                    out["fields"][n] = {"space": space, "power": True}
                elif kind == "generators" and isinstance(gen, str):
                    out["fields"][n] = {"space": space, "generators": gen}
                else:
                    out["fields"][n] = {"space": space, "atoms": [sf.ground.ordered(a) for a in sf.atoms]}
        if self.measures:
            out["measures"] = {
                n: {
                    "field": self._field_name(m.space),
                    "atoms": [[m.space.ground.ordered(a), _fmt_value(w)] for a, w in m.items()],
                }
                for n, m in self.measures.items()
            }
        if self.functions:
            out["functions"] = {
                n: {
                    "field": self._field_name(f.space),
                    "atoms": [[f.space.ground.ordered(a), _fmt_value(v)] for a, v in f.items()],
                }
                for n, f in self.functions.items()
            }
        if self.maps:
            spaces = self.map_spaces
            out["maps"] = {}
            for n, m in self.maps.items():
                dom, cod = spaces.get(n, (self._space_name(m.domain), self._space_name(m.codomain)))
                out["maps"][n] = {"domain": dom, "codomain": cod, "graph": [[x, m(x)] for x in m.domain]}
        if self.cdfs:
            out["cdfs"] = {n: F.to_data() for n, F in self.cdfs.items()}
        if self.samplers:
            out["samplers"] = {
                n: {
                    "prefix": [[[k, _fmt_frac(Fraction(v))] for k, v in law.items()] for law in s.prefix],
                    "cycle": [[[k, _fmt_frac(Fraction(v))] for k, v in law.items()] for law in s.cycle],
                    "seed": s.seed,
                    "generator": s.generator_id,
                }
                for n, s in self.samplers.items()
            }
        return out

    def to_text(self) -> str:
        return json.dumps(self.to_data(), indent=2, ensure_ascii=False)
