"""Finite local groupoids: tables, axiom validation, restriction and examples.

A finite local groupoid is stored as explicit tables.  Arrows compose right to
left, so ``mult[(g, h)]`` is ``g`` after ``h`` and requires ``src(g) == tgt(h)``.
The domain of ``mult`` is the set U of multipliable pairs and the domain of
``inv`` is the set V of invertible arrows.  Units are ordinary arrows.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping


class MalformedTable(ValueError):
    """The table references ids that do not exist or is otherwise unparsable."""


class RestrictionError(ValueError):
    """A restriction request would not produce a valid local groupoid."""


class UnitPairRemoved(RestrictionError):
    """A restriction dropped a pair needed by the unit axiom."""


class BadParams(ValueError):
    """An example constructor received unusable parameters."""


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    tgt: str


class FiniteLocalGroupoid:
    """Immutable tabled local groupoid.

    Arrow order is the order of the ``arrows`` argument and is used as the
    canonical order for every enumeration in the package.
    """

    def __init__(
        self,
        objects: Iterable[str],
        arrows: Iterable[Arrow],
        units: Mapping[str, str],
        mult: Mapping[tuple[str, str], str],
        inv: Mapping[str, str],
    ):
        objs = tuple(objects)
        if len(set(objs)) != len(objs):
            raise MalformedTable("duplicate object ids")
        arrs: dict[str, Arrow] = {}
        for a in arrows:
            if a.id in arrs:
                raise MalformedTable(f"duplicate arrow id {a.id!r}")
            if a.src not in objs or a.tgt not in objs:
                raise MalformedTable(f"arrow {a.id!r} has a dangling endpoint")
            arrs[a.id] = a
        for x, u in units.items():
            if x not in objs:
                raise MalformedTable(f"unit given for unknown object {x!r}")
            if u not in arrs:
                raise MalformedTable(f"unit of {x!r} is unknown arrow {u!r}")
        missing = [x for x in objs if x not in units]
        if missing:
            raise MalformedTable(f"objects without unit: {missing}")
        for (g, h), gh in mult.items():
            for a in (g, h, gh):
                if a not in arrs:
                    raise MalformedTable(f"product entry mentions unknown arrow {a!r}")
        for g, gi in inv.items():
            if g not in arrs or gi not in arrs:
                raise MalformedTable(f"inverse entry mentions unknown arrow {(g, gi)!r}")

        self._objects = objs
        self._arrows = MappingProxyType(arrs)
        self._units = MappingProxyType({x: units[x] for x in objs})
        index = {a: i for i, a in enumerate(arrs)}
        self._index = MappingProxyType(index)
        # canonical ordering of the product table
        ordered = sorted(mult.items(), key=lambda kv: (index[kv[0][0]], index[kv[0][1]]))
        self._mult = MappingProxyType(dict(ordered))
        self._inv = MappingProxyType(dict(sorted(inv.items(), key=lambda kv: index[kv[0]])))
        self._unit_set = frozenset(self._units.values())

        factor: dict[str, list[tuple[str, str]]] = {a: [] for a in arrs}
        for (g, h), gh in self._mult.items():
            factor[gh].append((g, h))
        self._factorizations = MappingProxyType({a: tuple(v) for a, v in factor.items()})
        by_tgt: dict[str, list[str]] = {x: [] for x in objs}
        by_src: dict[str, list[str]] = {x: [] for x in objs}
        for a in arrs.values():
            by_tgt[a.tgt].append(a.id)
            by_src[a.src].append(a.id)
        self._by_tgt = MappingProxyType({x: tuple(v) for x, v in by_tgt.items()})
        self._by_src = MappingProxyType({x: tuple(v) for x, v in by_src.items()})

    # basic accessors

    @property
    def objects(self) -> tuple[str, ...]:
        return self._objects

    @property
    def arrows(self) -> Mapping[str, Arrow]:
        return self._arrows

    @property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(self._arrows)

    @property
    def units(self) -> Mapping[str, str]:
        return self._units

    @property
    def mult(self) -> Mapping[tuple[str, str], str]:
        return self._mult

    @property
    def inv(self) -> Mapping[str, str]:
        return self._inv

    def src(self, g: str) -> str:
        return self._arrows[g].src

    def tgt(self, g: str) -> str:
        return self._arrows[g].tgt

    def unit(self, x: str) -> str:
        return self._units[x]

    def is_unit(self, g: str) -> bool:
        return g in self._unit_set

    def index(self, g: str) -> int:
        return self._index[g]

    def product(self, g: str, h: str) -> str | None:
        return self._mult.get((g, h))

    def factorizations(self, g: str) -> tuple[tuple[str, str], ...]:
        """All pairs (u, v) in U with u*v == g, in canonical order."""
        return self._factorizations[g]

    def arrows_into(self, x: str) -> tuple[str, ...]:
        return self._by_tgt[x]

    def arrows_from(self, x: str) -> tuple[str, ...]:
        return self._by_src[x]

    def composable(self, g: str, h: str) -> bool:
        return self._arrows[g].src == self._arrows[h].tgt

    def is_unit_adjacent(self, pair: tuple[str, str]) -> bool:
        return pair[0] in self._unit_set or pair[1] in self._unit_set

    def is_total(self) -> bool:
        """True when every composable pair is multipliable and every arrow invertible."""
        n_pairs = sum(len(self._by_src[x]) * len(self._by_tgt[x]) for x in self._objects)
        return len(self._mult) == n_pairs and len(self._inv) == len(self._arrows)

    def isotropy(self, x: str) -> "FiniteLocalGroupoid":
        """The local group of loops at ``x`` with the restricted tables."""
        loops = [a for a in self._arrows.values() if a.src == x and a.tgt == x]
        ids = {a.id for a in loops}
        mult = {p: v for p, v in self._mult.items() if p[0] in ids and p[1] in ids}
        inv = {g: gi for g, gi in self._inv.items() if g in ids}
        return FiniteLocalGroupoid([x], loops, {x: self._units[x]}, mult, inv)

    def components(self) -> list[tuple[str, ...]]:
        """Connected components of the arrow quiver, in canonical order."""
        adj: dict[str, set[str]] = {x: set() for x in self._objects}
        for a in self._arrows.values():
            adj[a.src].add(a.tgt)
            adj[a.tgt].add(a.src)
        seen: set[str] = set()
        out = []
        for x in self._objects:
            if x in seen:
                continue
            comp = []
            queue = deque([x])
            seen.add(x)
            while queue:
                y = queue.popleft()
                comp.append(y)
                for z in sorted(adj[y], key=self._objects.index):
                    if z not in seen:
                        seen.add(z)
                        queue.append(z)
            out.append(tuple(sorted(comp, key=self._objects.index)))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteLocalGroupoid):
            return NotImplemented
        return to_json(self) == to_json(other)

    def __hash__(self) -> int:
        return hash(dumps(self))

    def __repr__(self) -> str:
        return (
            f"FiniteLocalGroupoid({len(self._objects)} objects, {len(self._arrows)} arrows, "
            f"|U|={len(self._mult)}, |V|={len(self._inv)})"
        )


# JSON interchange


def to_json(g: FiniteLocalGroupoid) -> dict:
    return {
        "objects": list(g.objects),
        "arrows": [{"id": a.id, "src": a.src, "tgt": a.tgt} for a in g.arrows.values()],
        "units": dict(g.units),
        "mult": [[a, b, c] for (a, b), c in g.mult.items()],
        "inv": [[a, b] for a, b in g.inv.items()],
    }


def from_json(data: Mapping) -> FiniteLocalGroupoid:
    try:
        objects = [str(x) for x in data["objects"]]
        arrows = [Arrow(str(a["id"]), str(a["src"]), str(a["tgt"])) for a in data["arrows"]]
        units = {str(k): str(v) for k, v in data["units"].items()}
        mult = {}
        for row in data.get("mult", []):
            g, h, gh = (str(v) for v in row)
            if (g, h) in mult:
                raise MalformedTable(f"pair {(g, h)!r} listed twice")
            mult[(g, h)] = gh
        inv = {}
        for row in data.get("inv", []):
            g, gi = (str(v) for v in row)
            inv[g] = gi
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedTable):
            raise
        raise MalformedTable(f"cannot parse table: {exc}") from exc
    return FiniteLocalGroupoid(objects, arrows, units, mult, inv)


def dumps(g: FiniteLocalGroupoid) -> str:
    return json.dumps(to_json(g), sort_keys=True, indent=1)


def loads(text: str) -> FiniteLocalGroupoid:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTable(f"not JSON: {exc}") from exc
    return from_json(data)


def load(path: str | Path) -> FiniteLocalGroupoid:
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(g: FiniteLocalGroupoid, path: str | Path) -> None:
    Path(path).write_text(dumps(g) + "\n", encoding="utf-8")


# validation

AXIOMS = (
    "unit_endpoints",
    "unit_laws",
    "product_composable",
    "product_endpoints",
    "inverse_closed",
    "inverse_involution",
    "inverse_endpoints",
    "inverse_laws",
    "units_invertible",
)


@dataclass
class ValidationReport:
    failures: dict[str, list[tuple]] = field(default_factory=dict)
    three_associative: bool = True
    assoc_witness: tuple | None = None
    # V x V composable pairs outside U; reported but not part of `ok`
    vv_outside_u: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "axioms": {name: ("pass" if not self.failures.get(name) else [list(w) for w in self.failures[name]]) for name in AXIOMS},
            "three_associative": self.three_associative,
            "assoc_witness": list(self.assoc_witness) if self.assoc_witness else None,
            "vv_pairs_outside_u": [list(p) for p in self.vv_outside_u],
        }


def validate(g: FiniteLocalGroupoid) -> ValidationReport:
    fail: dict[str, list[tuple]] = {name: [] for name in AXIOMS}
    for x, u in g.units.items():
        if g.src(u) != x or g.tgt(u) != x:
            fail["unit_endpoints"].append((x, u))
    for a in g.arrows.values():
        us, ut = g.unit(a.src), g.unit(a.tgt)
        if g.product(a.id, us) != a.id:
            fail["unit_laws"].append((a.id, us))
        if g.product(ut, a.id) != a.id:
            fail["unit_laws"].append((ut, a.id))
    for (a, b), ab in g.mult.items():
        if not g.composable(a, b):
            fail["product_composable"].append((a, b))
        elif g.src(ab) != g.src(b) or g.tgt(ab) != g.tgt(a):
            fail["product_endpoints"].append((a, b, ab))
    for a, ai in g.inv.items():
        if ai not in g.inv:
            fail["inverse_closed"].append((a, ai))
        elif g.inv[ai] != a:
            fail["inverse_involution"].append((a, ai))
        if g.src(ai) != g.tgt(a) or g.tgt(ai) != g.src(a):
            fail["inverse_endpoints"].append((a, ai))
        elif g.product(ai, a) != g.unit(g.src(a)) or g.product(a, ai) != g.unit(g.tgt(a)):
            fail["inverse_laws"].append((a, ai))
    for u in g.units.values():
        if g.inv.get(u) != u:
            fail["units_invertible"].append((u,))

    report = ValidationReport(failures={k: v for k, v in fail.items()})
    for a in g.inv:
        for b in g.arrows_into(g.src(a)):
            if b in g.inv and (a, b) not in g.mult:
                report.vv_outside_u.append((a, b))
    witness = first_three_assoc_failure(g)
    report.three_associative = witness is None
    report.assoc_witness = witness
    return report


def first_three_assoc_failure(g: FiniteLocalGroupoid) -> tuple | None:
    """First triple (a, b, c) with (ab)c and a(bc) both defined and different."""
    for (a, b), ab in g.mult.items():
        for c in g.arrows_into(g.src(b)):
            bc = g.product(b, c)
            if bc is None:
                continue
            left = g.product(ab, c)
            right = g.product(a, bc)
            if left is not None and right is not None and left != right:
                return (a, b, c, left, right)
    return None


# restriction


def restrict(
    g: FiniteLocalGroupoid,
    keep_mult: Iterable[tuple[str, str]],
    keep_inv: Iterable[str] | None = None,
) -> FiniteLocalGroupoid:
    keep = set(keep_mult)
    extra = keep - set(g.mult)
    if extra:
        raise RestrictionError(f"pairs not in U: {sorted(extra)[:5]}")
    for a in g.arrows.values():
        for pair in ((a.id, g.unit(a.src)), (g.unit(a.tgt), a.id)):
            if pair not in keep:
                raise UnitPairRemoved(f"unit pair {pair!r} removed")
    vset = set(g.inv) if keep_inv is None else set(keep_inv)
    if vset - set(g.inv):
        raise RestrictionError(f"arrows not in V: {sorted(vset - set(g.inv))[:5]}")
    missing_units = set(g.units.values()) - vset
    if missing_units:
        raise UnitPairRemoved(f"units removed from V: {sorted(missing_units)}")
    for a in sorted(vset, key=g.index):
        ai = g.inv[a]
        if ai not in vset:
            raise RestrictionError(f"inverse of {a!r} removed from V")
        if (ai, a) not in keep or (a, ai) not in keep:
            raise RestrictionError(f"inverse pair of {a!r} removed from U")
    mult = {p: v for p, v in g.mult.items() if p in keep}
    inv = {a: ai for a, ai in g.inv.items() if a in vset}
    out = FiniteLocalGroupoid(g.objects, g.arrows.values(), g.units, mult, inv)
    report = validate(out)
    if not report.ok:
        raise RestrictionError(f"restriction is invalid: {report.as_dict()['axioms']}")
    return out


# closure under products


@dataclass
class InversionalReport:
    ok: bool
    certificates: dict[str, object]
    unreachable: frozenset[str]

    def __bool__(self) -> bool:
        return self.ok


def product_closure(g: FiniteLocalGroupoid, seed: Iterable[str]) -> dict[str, object]:
    """Arrows reachable from ``seed`` by defined products, each with a bracketing.

    A bracketing is an arrow id or a pair ``(left, right)`` of bracketings.
    Rounds are synchronous so every certificate has minimal depth.
    """
    cert: dict[str, object] = {a: a for a in sorted(set(seed), key=g.index)}
    frontier = set(cert)
    while frontier:
        new: dict[str, object] = {}
        for (a, b), ab in g.mult.items():
            if ab in cert or ab in new:
                continue
            if a in cert and b in cert and (a in frontier or b in frontier):
                new[ab] = (cert[a], cert[b])
        cert.update(new)
        frontier = set(new)
    return cert


def is_inversional(g: FiniteLocalGroupoid) -> InversionalReport:
    cert = product_closure(g, g.inv)
    unreachable = frozenset(a for a in g.arrows if a not in cert)
    return InversionalReport(not unreachable, cert, unreachable)


def generates(g: FiniteLocalGroupoid, s: Iterable[str]) -> bool:
    seed = set(s)
    unknown = seed - set(g.arrows)
    if unknown:
        raise ValueError(f"unknown arrows {sorted(unknown)}")
    if not set(g.units.values()) <= seed:
        raise ValueError("generating set must contain all units")
    return len(product_closure(g, seed)) == len(g.arrows)


def evaluate_bracketing(g: FiniteLocalGroupoid, expr: object) -> str | None:
    if isinstance(expr, str):
        return expr
    left = evaluate_bracketing(g, expr[0])
    right = evaluate_bracketing(g, expr[1])
    if left is None or right is None:
        return None
    return g.product(left, right)


# example constructors

STAR = "*"


def cyclic(n: int) -> FiniteLocalGroupoid:
    if n < 1:
        raise BadParams("cyclic(n) needs n >= 1")
    ids = [str(i) for i in range(n)]
    arrows = [Arrow(i, STAR, STAR) for i in ids]
    mult = {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
    inv = {str(a): str((-a) % n) for a in range(n)}
    return FiniteLocalGroupoid([STAR], arrows, {STAR: "0"}, mult, inv)


def interval_group(k: int, modulus: int | None = None) -> FiniteLocalGroupoid:
    """{-k..k} with addition defined iff the integer sum stays in range.

    With a modulus n (n >= 2k+1) arrows are the residues of -k..k in Z/n, so the
    table is the same local group now read inside Z/n.
    """
    if k < 0:
        raise BadParams("interval_group(k) needs k >= 0")
    if modulus is not None and modulus < 2 * k + 1:
        raise BadParams("modulus must be at least 2k+1 so representatives stay distinct")
    values = list(range(-k, k + 1))
    values.sort(key=lambda v: (abs(v), v < 0))
    ids = [str(v) for v in values]
    arrows = [Arrow(i, STAR, STAR) for i in ids]
    mult = {}
    for a in values:
        for b in values:
            if -k <= a + b <= k:
                mult[(str(a), str(b))] = str(a + b)
    inv = {str(a): str(-a) for a in values}
    return FiniteLocalGroupoid([STAR], arrows, {STAR: "0"}, mult, inv)


def interval_residue(g_id: str, modulus: int) -> int:
    """Residue class of an interval-group arrow inside Z/modulus."""
    return int(g_id) % modulus


def pair_arrow(y: str, x: str) -> str:
    return f"1_{x}" if x == y else f"{y}<-{x}"


def pair_restriction(edges: Iterable[tuple[str, str]], vertices: Iterable[str] | None = None) -> FiniteLocalGroupoid:
    """The pair groupoid on the vertices, shrunk to units and edge pairs.

    Arrows are the units and both orientations of each graph edge; a product of
    (z,y) and (y,x) is defined exactly when (z,x) is again an arrow.
    """
    edge_list = [(str(a), str(b)) for a, b in edges]
    if vertices is None:
        verts: list[str] = []
        for a, b in edge_list:
            for v in (a, b):
                if v not in verts:
                    verts.append(v)
    else:
        verts = [str(v) for v in vertices]
    if any(a == b for a, b in edge_list):
        raise BadParams("graph edges must join distinct vertices")
    if any(a not in verts or b not in verts for a, b in edge_list):
        raise BadParams("edge mentions an unknown vertex")
    pairs: list[tuple[str, str]] = [(x, x) for x in verts]
    for a, b in edge_list:
        for p in ((b, a), (a, b)):
            if p not in pairs:
                pairs.append(p)
    present = set(pairs)
    arrows = [Arrow(pair_arrow(y, x), x, y) for y, x in pairs]
    mult = {}
    for z, y in pairs:
        for y2, x in pairs:
            if y == y2 and (z, x) in present:
                mult[(pair_arrow(z, y), pair_arrow(y, x))] = pair_arrow(z, x)
    inv = {pair_arrow(y, x): pair_arrow(x, y) for y, x in pairs}
    units = {x: pair_arrow(x, x) for x in verts}
    return FiniteLocalGroupoid(verts, arrows, units, mult, inv)


def path_graph(n: int) -> list[tuple[str, str]]:
    return [(f"v{i}", f"v{i + 1}") for i in range(n - 1)]


def cycle_graph(n: int) -> list[tuple[str, str]]:
    return [(f"v{i}", f"v{(i + 1) % n}") for i in range(n)]


def complete_graph(n: int) -> list[tuple[str, str]]:
    return [(f"v{i}", f"v{j}") for i in range(n) for j in range(i + 1, n)]


def make_example(kind: str, **params) -> FiniteLocalGroupoid:
    try:
        if kind == "cyclic":
            return cyclic(int(params["n"]))
        if kind == "interval_group":
            modulus = params.get("modulus")
            return interval_group(int(params["k"]), None if modulus is None else int(modulus))
        if kind == "pair_restriction":
            if "graph" in params:
                graph, n = params["graph"], int(params["n"])
                edges = {"path": path_graph, "cycle": cycle_graph, "complete": complete_graph}[graph](n)
                return pair_restriction(edges, [f"v{i}" for i in range(n)])
            return pair_restriction(params["edges"], params.get("vertices"))
    except KeyError as exc:
        raise BadParams(f"missing or unknown parameter {exc}") from exc
    raise BadParams(f"unknown example kind {kind!r}")
