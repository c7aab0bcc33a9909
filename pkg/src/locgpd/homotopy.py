"""Combinatorial homotopy of truncated simplicial sets.

Edges run from ``d0 e`` to ``d1 e``, matching nerve arrows (source, target).
Free words compose right to left like groupoid words: ``(l1, ..., lk)`` means
lk first, and ``s(li) == t(l(i+1))``.  A 2-simplex with vertices v0, v1, v2 has
boundary loop ``d2 . d0 . (d1)^-1`` based at v0; for a nerve pair (g, h) this is
``g . h . (gh)^-1``.

Presentations handed to the group toolkit are spelled in path order (first
traversed letter first), which is the reverse of the free-word order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from . import _groups
from ._groups import AbelianInvariants, GroupPresentation, GroupWord
from .core import Arrow, FiniteLocalGroupoid, pair_arrow
from .nerve import SimplicialTruncation, build_nerve
from .words import presentation as ac_presentation

Edge = Hashable
FLetter = tuple[Edge, int]


class DisconnectedFromBasepoint(ValueError):
    pass


class IllFormedFreeWord(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    edges: dict  # edge -> (source, target)
    degenerate: frozenset = frozenset()

    def __post_init__(self):
        vs = set(self.vertices)
        for e, (s, t) in self.edges.items():
            if s not in vs or t not in vs:
                raise ValueError(f"edge {e!r} has a missing endpoint")

    def s(self, e) -> Hashable:
        return self.edges[e][0]

    def t(self, e) -> Hashable:
        return self.edges[e][1]

    @classmethod
    def of(cls, X: SimplicialTruncation) -> "Quiver":
        edges = {e: (X.faces[1][e][0], X.faces[1][e][1]) for e in X.levels[1]}
        return cls(tuple(X.levels[0]), edges, frozenset(X.degenerate[1]) if len(X.degenerate) > 1 else frozenset())


def letter_s(q: Quiver, l: FLetter):
    e, k = l
    return q.s(e) if k > 0 else q.t(e)


def letter_t(q: Quiver, l: FLetter):
    e, k = l
    return q.t(e) if k > 0 else q.s(e)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[FLetter, ...]
    src: Hashable
    tgt: Hashable

    @classmethod
    def make(cls, q: Quiver, letters: Iterable[FLetter], at=None) -> "FreeWord":
        ls = tuple(letters)
        if not ls:
            if at is None:
                raise IllFormedFreeWord("an empty word needs a vertex")
            return cls((), at, at)
        for i in range(len(ls) - 1):
            if letter_s(q, ls[i]) != letter_t(q, ls[i + 1]):
                raise IllFormedFreeWord(f"letters {ls[i]} and {ls[i + 1]} do not meet")
        return cls(ls, letter_s(q, ls[-1]), letter_t(q, ls[0]))

    @classmethod
    def edge(cls, q: Quiver, e, k: int = 1) -> "FreeWord":
        return cls.make(q, ((e, k),))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        """``self . other``: other first, then self."""
        if self.src != other.tgt:
            raise IllFormedFreeWord("words do not compose")
        return FreeWord(self.letters + other.letters, other.src, self.tgt)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((e, -k) for e, k in reversed(self.letters)), self.tgt, self.src)

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def path_order(self) -> GroupWord:
        return tuple(reversed(self.letters))

    def as_list(self) -> list:
        return [[_name(e), k] for e, k in self.letters]


def reduce(q: Quiver, w: FreeWord) -> FreeWord:
    """Drop degenerate edges and cancel adjacent inverse pairs."""
    out: list[FLetter] = []
    for e, k in w.letters:
        if e in q.degenerate:
            continue
        if out and out[-1][0] == e and out[-1][1] == -k:
            out.pop()
        else:
            out.append((e, k))
    return FreeWord(tuple(out), w.src, w.tgt)


def _name(e) -> str:
    if isinstance(e, tuple) and len(e) == 1:
        return str(e[0])
    return str(e)


# boundaries and the crossed complex maps


def boundary2(X: SimplicialTruncation, sigma, reduced: bool = True) -> FreeWord:
    q = Quiver.of(X)
    d0, d1, d2 = X.faces[2][sigma]
    w = FreeWord.edge(q, d2) * FreeWord.edge(q, d0) * FreeWord.edge(q, d1, -1)
    return reduce(q, w) if reduced else w


def base_vertex(X: SimplicialTruncation, sigma, m: int):
    return X.vertices_of(sigma, m)[0]


@dataclass(frozen=True)
class Gamma2Gen:
    path: FreeWord
    simplex: Hashable


@dataclass(frozen=True)
class Gamma2Elt:
    """Formal product of generators (w, sigma)^(+-1), read left to right."""

    basepoint: Hashable
    factors: tuple[tuple[Gamma2Gen, int], ...] = ()

    def __mul__(self, other: "Gamma2Elt") -> "Gamma2Elt":
        return Gamma2Elt(self.basepoint, self.factors + other.factors)

    def inverse(self) -> "Gamma2Elt":
        return Gamma2Elt(self.basepoint, tuple((g, -k) for g, k in reversed(self.factors)))

    @classmethod
    def gen(cls, X: SimplicialTruncation, w: FreeWord, sigma, k: int = 1) -> "Gamma2Elt":
        if w.src != base_vertex(X, sigma, 2):
            raise IllFormedFreeWord("the path must start at the simplex base vertex")
        return cls(w.tgt, ((Gamma2Gen(w, sigma), k),))


def delta2(X: SimplicialTruncation, elt: Gamma2Elt) -> FreeWord:
    q = Quiver.of(X)
    out = FreeWord((), elt.basepoint, elt.basepoint)
    for gen, k in elt.factors:
        loop = gen.path * boundary2(X, gen.simplex, reduced=False) * gen.path.inverse()
        out = out * (loop if k > 0 else loop.inverse())
    return reduce(q, out)


def delta3(X: SimplicialTruncation, xi: Gamma2Elt, w: FreeWord, tau) -> Gamma2Elt:
    """Image of the generator (xi, (w, tau)).

    The second-vertex face is reached by first crossing ``A = d2 d3 tau`` (the
    edge from v1 to v0), so its path is ``w . A``.
    """
    q = Quiver.of(X)
    f0, f1, f2, f3 = X.faces[3][tau]
    a = X.faces[2][f3][2]
    wa = w * FreeWord.edge(q, a)
    body = (
        Gamma2Elt.gen(X, w, f3)
        * Gamma2Elt.gen(X, w, f1)
        * Gamma2Elt.gen(X, w, f2, -1)
        * Gamma2Elt.gen(X, wa, f0, -1)
    )
    return xi * body * xi.inverse()


# presentations of the fundamental group


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[GroupWord, ...]
    basepoint: Hashable
    tree: dict = field(default_factory=dict)

    @property
    def group(self) -> GroupPresentation:
        return GroupPresentation(self.generators, self.relators)

    def as_dict(self) -> dict:
        return {"basepoint": _name(self.basepoint), **self.group.as_dict()}


def _component(q: Quiver, x) -> list:
    adj: dict = {v: [] for v in q.vertices}
    for e, (s, t) in q.edges.items():
        adj[s].append(t)
        adj[t].append(s)
    seen = {x}
    order = [x]
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                order.append(u)
                queue.append(u)
    return order


def _tree(q: Quiver, x) -> dict:
    """BFS tree: vertex -> (edge, parent) over non-degenerate edges."""
    adj: dict = {v: [] for v in q.vertices}
    for e, (s, t) in q.edges.items():
        if e in q.degenerate or s == t:
            continue
        adj[s].append((e, t))
        adj[t].append((e, s))
    tree = {}
    seen = {x}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for e, u in adj[v]:
            if u not in seen:
                seen.add(u)
                tree[u] = (e, v)
                queue.append(u)
    return tree


def pi1_presentation(X: SimplicialTruncation, x=None) -> Presentation:
    if X.m_max < 2:
        raise ValueError("need the truncation up to dimension 2")
    if x is None:
        x = X.levels[0][0]
    if x not in set(X.levels[0]):
        raise DisconnectedFromBasepoint(f"{x!r} is not a vertex")
    q = Quiver.of(X)
    comp = set(_component(q, x))
    tree = _tree(q, x)
    tree_edges = {e for e, _ in tree.values()}
    gens = [e for e in X.levels[1] if q.s(e) in comp and e not in q.degenerate and e not in tree_edges]
    names = {e: _name(e) for e in gens}
    relators: list[GroupWord] = []
    for sigma in X.levels[2]:
        if base_vertex(X, sigma, 2) not in comp:
            continue
        w = boundary2(X, sigma, reduced=False)
        rel = tuple((names[e], k) for e, k in w.path_order() if e in names)
        rel = _groups.cyclic_reduce(rel)
        if rel and rel not in relators:
            relators.append(rel)
    return Presentation(tuple(names[e] for e in gens), tuple(relators), x, {_name(v): _name(e) for v, (e, _) in tree.items()})


def h1(p: Presentation | GroupPresentation) -> AbelianInvariants:
    return _groups.abelianization(p.group if isinstance(p, Presentation) else p)


def simplicial_set(vertices: Sequence, edges: dict, triangles: dict | None = None) -> SimplicialTruncation:
    """A 2-truncated simplicial set from explicit data without degeneracies.

    ``edges`` maps an edge to (source, target); ``triangles`` maps a 2-simplex
    to its faces (d0, d1, d2).
    """
    triangles = triangles or {}
    faces = [{v: () for v in vertices}, {e: (s, t) for e, (s, t) in edges.items()}, dict(triangles)]
    levels = [list(vertices), list(edges), list(triangles)]
    return SimplicialTruncation(levels, faces, [{}, {}, {}], [set(), set(), set()], None)


# chain-level homology


def _normalized_chains(X: SimplicialTruncation, comp: set):
    edges = [e for e in X.levels[1] if e not in X.degenerate[1] and X.faces[1][e][0] in comp]
    tris = [s for s in X.levels[2] if s not in X.degenerate[2] and base_vertex(X, s, 2) in comp]
    return edges, tris


def _d2_row(X: SimplicialTruncation, sigma, col: dict) -> list[int]:
    row = [0] * len(col)
    for i, f in enumerate(X.faces[2][sigma]):
        if f in col:
            row[col[f]] += (-1) ** i
    return row


def chain_h1(X: SimplicialTruncation, x=None) -> AbelianInvariants:
    """H1 of normalized chains on the basepoint component."""
    if x is None:
        x = X.levels[0][0]
    q = Quiver.of(X)
    comp_list = _component(q, x)
    comp = set(comp_list)
    edges, tris = _normalized_chains(X, comp)
    vcol = {v: i for i, v in enumerate(comp_list)}
    d1 = [[0] * len(edges) for _ in comp_list]
    for j, e in enumerate(edges):
        s, t = X.faces[1][e]
        d1[vcol[s]][j] += 1
        d1[vcol[t]][j] -= 1
    basis, coords = _groups.integer_kernel(d1, len(edges))
    ecol = {e: i for i, e in enumerate(edges)}
    rows = [coords(_d2_row(X, s, ecol)) for s in tris]
    return _groups.cokernel_invariants(rows, len(basis))


# cross-check with the associative completion


@dataclass
class ComponentCheck:
    root: str
    h1_ac: AbelianInvariants
    h1_pi1: AbelianInvariants
    order_ac: int | None
    order_pi1: int | None
    isomorphic: bool | None

    @property
    def ok(self) -> bool:
        return self.h1_ac == self.h1_pi1 and self.order_ac == self.order_pi1 and self.isomorphic is not False

    def as_dict(self) -> dict:
        return {
            "root": self.root,
            "h1_ac": self.h1_ac.as_dict(),
            "h1_pi1": self.h1_pi1.as_dict(),
            "order_ac": self.order_ac,
            "order_pi1": self.order_pi1,
            "isomorphic": self.isomorphic,
            "ok": self.ok,
        }


@dataclass
class CrossCheckReport:
    components: list[ComponentCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.components)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "components": [c.as_dict() for c in self.components]}


def _tree_path(g: FiniteLocalGroupoid, tree: dict[str, str], root: str, y: str) -> GroupWord:
    """Path-order word from the root to y along tree arrows."""
    out: list[tuple[str, int]] = []
    while y != root:
        a = tree[y]
        if g.tgt(a) == y:
            out.append((a, 1))
            y = g.src(a)
        else:
            out.append((a, -1))
            y = g.tgt(a)
    return tuple(reversed(out))


def _loop(g: FiniteLocalGroupoid, tree: dict[str, str], root: str, a: str) -> GroupWord:
    return _tree_path(g, tree, root, g.src(a)) + ((a, 1),) + _groups.invert(_tree_path(g, tree, root, g.tgt(a)))


def ac_vs_pi1(g: FiniteLocalGroupoid, coset_limit: int = 10_000) -> CrossCheckReport:
    X = build_nerve(g, 2)
    out = []
    for comp in g.components():
        root = comp[0]
        pa = ac_presentation(g, root)
        pp = pi1_presentation(X, root)
        fa = _groups.finite_group(pa.group, coset_limit)
        fp = _groups.finite_group(pp.group, coset_limit)
        iso = None
        if fa is not None and fp is not None:
            iso = _isomorphic_via_arrows(g, pa, pp, fa, fp)
        out.append(
            ComponentCheck(
                root,
                _groups.abelianization(pa.group),
                h1(pp),
                None if fa is None else fa.order,
                None if fp is None else fp.order,
                iso,
            )
        )
    return CrossCheckReport(out)


def _isomorphic_via_arrows(g, pa, pp: Presentation, fa, fp) -> bool:
    """Send each completion generator to the nerve loop of the same arrow."""
    if fa.order != fp.order:
        return False
    pgens = set(pp.generators)

    def in_p(word: GroupWord) -> int:
        letters = tuple((a, k) for a, k in word if a in pgens)
        return fp.element(letters)

    # tree arrows and units are trivial on the nerve side, so they drop out
    image = {a: in_p(_loop(g, pa.tree, pa.root, a)) for a in pa.generators}

    def phi(word: GroupWord) -> int:
        cur = 0
        for a, k in word:
            el = image[a] if k > 0 else fp.inverse(image[a])
            cur = fp.multiply(cur, el)
        return cur

    if any(phi(r) != 0 for r in pa.relators):
        return False
    values = {phi(w) for w in fa.words}
    return len(values) == fp.order


# abelianized simplicial monodromy


def image_groupoid(g: FiniteLocalGroupoid) -> FiniteLocalGroupoid:
    """Image of (target, source): pairs of objects with the induced products."""
    phi = {a: pair_arrow(g.tgt(a), g.src(a)) for a in g.arrows}
    arrows = {}
    for a in g.arrows.values():
        arrows[phi[a.id]] = Arrow(phi[a.id], a.src, a.tgt)
    units = {x: phi[g.unit(x)] for x in g.objects}
    mult = {(phi[a], phi[b]): phi[c] for (a, b), c in g.mult.items()}
    inv = {phi[a]: phi[b] for a, b in g.inv.items()}
    return FiniteLocalGroupoid(list(g.objects), list(arrows.values()), units, mult, inv)


@dataclass
class MonodromyReport:
    basepoint: str
    kernel_h1: AbelianInvariants
    kernel_generators: list[dict[str, int]]
    monodromy_image: list[list[int]]
    cokernel_of_image: AbelianInvariants
    ac_isotropy_h1: AbelianInvariants
    label: str = "abelianized"

    @property
    def agrees(self) -> bool:
        return self.kernel_h1 == self.ac_isotropy_h1

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "basepoint": self.basepoint,
            "kernel_h1": self.kernel_h1.as_dict(),
            "kernel_generators": self.kernel_generators,
            "monodromy_image": self.monodromy_image,
            "cokernel_of_image": self.cokernel_of_image.as_dict(),
            "ac_isotropy_h1": self.ac_isotropy_h1.as_dict(),
            "agrees": self.agrees,
            "conjecture_evidence": None if self.agrees else "abelianized mismatch",
        }


def simplicial_monodromy_ab(g: FiniteLocalGroupoid, x: str | None = None) -> MonodromyReport:
    """H1 of the kernel of normalized chains under the map to the image groupoid.

    The kernel complex has no 0-chains (objects map identically), so its H1
    is K1 modulo the boundaries of K2.  The connecting map sends 2-cycles of
    the image to classes of boundaries of their lifts.
    """
    if x is None:
        x = g.objects[0]
    u = image_groupoid(g)
    XG, XU = build_nerve(g, 2), build_nerve(u, 2)
    phi = {(a,): (pair_arrow(g.tgt(a), g.src(a)),) for a in g.arrows}
    comp = next(set(c) for c in g.components() if x in c)
    edges_g, tris_g = _normalized_chains(XG, comp)
    edges_u, tris_u = _normalized_chains(XU, comp)
    ecol_g = {e: i for i, e in enumerate(edges_g)}
    ecol_u = {e: i for i, e in enumerate(edges_u)}
    tcol_u = {t: i for i, t in enumerate(tris_u)}

    # phi on 1-chains and 2-chains, as matrices acting on column vectors
    p1 = [[0] * len(edges_g) for _ in edges_u]
    for j, e in enumerate(edges_g):
        if phi[e] in ecol_u:
            p1[ecol_u[phi[e]]][j] = 1
    p2 = [[0] * len(tris_g) for _ in tris_u]
    lift: dict = {}
    for j, s in enumerate(tris_g):
        img = tuple(phi[(a,)][0] for a in s)
        if img in tcol_u:
            p2[tcol_u[img]][j] = 1
            lift.setdefault(img, s)
    k1, k1_coords = _groups.integer_kernel(p1, len(edges_g)) if edges_u else _identity_kernel(len(edges_g))
    k2, _ = _groups.integer_kernel(p2, len(tris_g)) if tris_u else _identity_kernel(len(tris_g))
    d2_g = [_d2_row(XG, s, ecol_g) for s in tris_g]

    def boundary_of(chain: Sequence[int]) -> list[int]:
        out = [0] * len(edges_g)
        for c, row in zip(chain, d2_g):
            if c:
                for i, v in enumerate(row):
                    out[i] += c * v
        return out

    rel_rows = [k1_coords(boundary_of(v)) for v in k2]
    kernel_h1 = _groups.cokernel_invariants(rel_rows, len(k1))

    # connecting map on 2-cycles of the image
    d2_u = [[0] * len(tris_u) for _ in edges_u]
    for j, s in enumerate(tris_u):
        for i, v in enumerate(_d2_row(XU, s, ecol_u)):
            d2_u[i][j] = v
    z2, _ = _groups.integer_kernel(d2_u, len(tris_u)) if edges_u else _identity_kernel(len(tris_u))
    image = []
    for z in z2:
        chain = [0] * len(tris_g)
        for i, c in enumerate(z):
            if c:
                chain[tris_g.index(lift[tris_u[i]])] += c
        image.append(k1_coords(boundary_of(chain)))
    coker = _groups.cokernel_invariants(rel_rows + image, len(k1))

    gens = [{_name(edges_g[i]): c for i, c in enumerate(v) if c} for v in k1]
    iso = g.isotropy(x)
    ac_h1 = _groups.abelianization(ac_presentation(iso, x).group)
    return MonodromyReport(x, kernel_h1, gens, image, coker, ac_h1)


def _identity_kernel(n: int):
    basis = [[int(i == j) for i in range(n)] for j in range(n)]
    return basis, list
