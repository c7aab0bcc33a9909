"""Good complexes: ordered 2-complexes grown from a line by expansion and contraction.

Vertices are exact rationals, so a new vertex can always be placed strictly
between two neighbours.  An edge ``(u, w)`` with ``u < w`` labelled by arrow
``a`` has ``tgt(a)`` at ``u`` and ``src(a)`` at ``w``; a face ``(u, v, w)``
labelled ``(a, b)`` carries ``a`` on ``(u, v)``, ``b`` on ``(v, w)`` and the
product ``ab`` on ``(u, w)``.  A word certificate is the complex built from a
shortest move trace together with such a labelling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import FiniteLocalGroupoid
from .words import (
    DEFAULT_MAX_LEN,
    DEFAULT_MAX_STEPS,
    Equivalent,
    Move,
    MoveTrace,
    Word,
    check_word,
    equivalent,
)

Vertex = Fraction
Edge = tuple[Fraction, Fraction]
Face = tuple[Fraction, Fraction, Fraction]


class IllegalMove(ValueError):
    pass


class CertificateObstruction(RuntimeError):
    """A contraction in the trace would recreate an existing edge.

    This only happens for tables that are not globally associative, where a
    letter can be rewritten into a different letter with the same endpoints.
    """


@dataclass(frozen=True)
class ComplexMove:
    kind: str  # "expand" or "contract"
    edges: tuple[Edge, ...]
    vertex: Fraction | None = None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "edges": [[str(u), str(w)] for u, w in self.edges],
            "vertex": None if self.vertex is None else str(self.vertex),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ComplexMove":
        edges = tuple((Fraction(u), Fraction(w)) for u, w in d["edges"])
        return cls(d["kind"], edges, None if d["vertex"] is None else Fraction(d["vertex"]))


def _edge(u, w) -> Edge:
    return (u, w) if u < w else (w, u)


@dataclass(frozen=True)
class OrderedComplex2:
    vertices: tuple[Fraction, ...]
    edges: frozenset[Edge]
    faces: frozenset[Face]
    history: tuple[ComplexMove, ...] = ()
    base_length: int | None = None

    @classmethod
    def from_simplices(
        cls, order: Sequence, edges: Iterable[Sequence], faces: Iterable[Sequence] = ()
    ) -> "OrderedComplex2":
        """Build from named vertices listed in increasing order."""
        pos = {name: Fraction(i) for i, name in enumerate(order)}
        es = frozenset(_edge(pos[a], pos[b]) for a, b in edges)
        fs = frozenset(tuple(sorted(pos[v] for v in f)) for f in faces)
        c = cls(tuple(sorted(pos.values())), es, fs)
        c.check()
        return c

    def check(self) -> None:
        vset = set(self.vertices)
        for u, w in self.edges:
            if u not in vset or w not in vset or not u < w:
                raise ValueError(f"bad edge {(u, w)}")
        count: dict[Edge, int] = {}
        for u, v, w in self.faces:
            for e in ((u, v), (v, w), (u, w)):
                if e not in self.edges:
                    raise ValueError(f"face {(u, v, w)} misses edge {e}")
                count[e] = count.get(e, 0) + 1
        if any(c > 2 for c in count.values()):
            raise ValueError("an edge lies on more than two faces")

    def face_count(self, e: Edge) -> int:
        u, w = e
        return sum(1 for f in self.faces if (u in f and w in f))

    def is_boundary(self, e: Edge) -> bool:
        return e in self.edges and self.face_count(e) <= 1

    def boundary_edges(self) -> list[Edge]:
        counts = {e: 0 for e in self.edges}
        for u, v, w in self.faces:
            for e in ((u, v), (v, w), (u, w)):
                counts[e] += 1
        return sorted(e for e, c in counts.items() if c <= 1)

    @property
    def source(self) -> Fraction:
        return min(v for e in self.boundary_edges() for v in e)

    @property
    def target(self) -> Fraction:
        return max(v for e in self.boundary_edges() for v in e)

    @property
    def euler(self) -> tuple[int, int, int]:
        return (len(self.vertices), len(self.edges), len(self.faces))

    def as_dict(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "edges": [[str(u), str(w)] for u, w in sorted(self.edges)],
            "faces": [[str(v) for v in f] for f in sorted(self.faces)],
            "history": [m.as_dict() for m in self.history],
            "base_length": self.base_length,
        }


def from_wk(k: int) -> OrderedComplex2:
    if k < 1:
        raise ValueError("k must be at least 1")
    vs = tuple(Fraction(i) for i in range(k + 1))
    es = frozenset((vs[i], vs[i + 1]) for i in range(k))
    return OrderedComplex2(vs, es, frozenset(), (), k)


def apply_move(s: OrderedComplex2, m: ComplexMove) -> OrderedComplex2:
    before = s.euler
    if m.kind == "expand":
        if len(m.edges) != 1 or m.vertex is None:
            raise IllegalMove("expansion needs one edge and a new vertex")
        (u, w) = m.edges[0]
        v = m.vertex
        if (u, w) not in s.edges:
            raise IllegalMove(f"edge {(u, w)} is not in the complex")
        if not s.is_boundary((u, w)):
            raise IllegalMove(f"edge {(u, w)} is not a boundary edge")
        if not u < v < w:
            raise IllegalMove("new vertex must lie strictly between the edge endpoints")
        if v in s.vertices:
            raise IllegalMove("new vertex already exists")
        out = OrderedComplex2(
            tuple(sorted(s.vertices + (v,))),
            s.edges | {(u, v), (v, w)},
            s.faces | {(u, v, w)},
            s.history + (m,),
            s.base_length,
        )
        expected = (1, 2, 1)
    elif m.kind == "contract":
        if len(m.edges) != 2:
            raise IllegalMove("contraction needs two edges")
        (u, v), (v2, w) = m.edges
        if v != v2 or not u < v < w:
            raise IllegalMove("contraction edges must be (u,v), (v,w) with u < v < w")
        for e in m.edges:
            if not s.is_boundary(e):
                raise IllegalMove(f"edge {e} is not a boundary edge")
        if (u, w) in s.edges:
            raise IllegalMove(f"edge {(u, w)} already exists")
        out = OrderedComplex2(
            s.vertices,
            s.edges | {(u, w)},
            s.faces | {(u, v, w)},
            s.history + (m,),
            s.base_length,
        )
        expected = (0, 1, 1)
    else:
        raise IllegalMove(f"unknown move kind {m.kind!r}")
    after = out.euler
    if tuple(b - a for a, b in zip(before, after)) != expected:
        raise AssertionError(f"Euler bookkeeping broken: {before} -> {after}")
    return out


def boundary_paths(s: OrderedComplex2) -> list[tuple[Fraction, ...]]:
    """All increasing paths from source to target along boundary edges."""
    nbrs: dict[Fraction, list[Fraction]] = {}
    for u, w in s.boundary_edges():
        nbrs.setdefault(u, []).append(w)
    src, tgt = s.source, s.target
    out: list[tuple[Fraction, ...]] = []
    path = [src]

    def rec(v):
        if v == tgt:
            out.append(tuple(path))
            return
        for w in sorted(nbrs.get(v, [])):
            path.append(w)
            rec(w)
            path.pop()

    rec(src)
    return out


@dataclass
class NerveLabeling:
    vertices: dict[Fraction, str] = field(default_factory=dict)
    edges: dict[Edge, str] = field(default_factory=dict)
    faces: dict[Face, tuple[str, str]] = field(default_factory=dict)

    def word_along(self, path: Sequence[Fraction]) -> Word:
        return tuple(self.edges[(path[i], path[i + 1])] for i in range(len(path) - 1))

    def problems(self, s: OrderedComplex2, g: FiniteLocalGroupoid) -> list[str]:
        out = []
        if set(self.edges) != set(s.edges):
            out.append("edge labels do not match the edges")
        if set(self.faces) != set(s.faces):
            out.append("face labels do not match the faces")
        for (u, w), a in self.edges.items():
            if a not in g.arrows:
                out.append(f"unknown arrow {a!r}")
                continue
            if self.vertices.get(u) != g.tgt(a) or self.vertices.get(w) != g.src(a):
                out.append(f"edge {(str(u), str(w))} endpoints disagree with {a!r}")
        for (u, v, w), (a, b) in self.faces.items():
            prod = g.product(a, b)
            if prod is None:
                out.append(f"face {(str(u), str(v), str(w))}: {(a, b)} is not multipliable")
                continue
            if (self.edges.get((u, v)), self.edges.get((v, w)), self.edges.get((u, w))) != (a, b, prod):
                out.append(f"face {(str(u), str(v), str(w))} does not match its edges")
        return out

    def as_dict(self) -> dict:
        return {
            "vertices": {str(v): x for v, x in sorted(self.vertices.items())},
            "edges": [[str(u), str(w), a] for (u, w), a in sorted(self.edges.items())],
            "faces": [[str(u), str(v), str(w), a, b] for (u, v, w), (a, b) in sorted(self.faces.items())],
        }


@dataclass
class Certificate:
    complex: OrderedComplex2
    labeling: NerveLabeling
    word1: Word
    word2: Word
    trace: MoveTrace

    def as_dict(self) -> dict:
        return {
            "word1": list(self.word1),
            "word2": list(self.word2),
            "complex": self.complex.as_dict(),
            "labeling": self.labeling.as_dict(),
            "trace": self.trace.as_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        c = d["complex"]
        cx = OrderedComplex2(
            tuple(Fraction(v) for v in c["vertices"]),
            frozenset((Fraction(u), Fraction(w)) for u, w in c["edges"]),
            frozenset(tuple(Fraction(v) for v in f) for f in c["faces"]),
            tuple(ComplexMove.from_dict(m) for m in c["history"]),
            c["base_length"],
        )
        lab = d["labeling"]
        labeling = NerveLabeling(
            {Fraction(v): x for v, x in lab["vertices"].items()},
            {(Fraction(u), Fraction(w)): a for u, w, a in lab["edges"]},
            {(Fraction(u), Fraction(v), Fraction(w)): (a, b) for u, v, w, a, b in lab["faces"]},
        )
        return cls(cx, labeling, tuple(d["word1"]), tuple(d["word2"]), MoveTrace.from_dict(d["trace"]))


def certificate_from_trace(trace: MoveTrace, g: FiniteLocalGroupoid) -> Certificate:
    """Grow the complex along a move trace, labelling as we go."""
    word = check_word(trace.start, g)
    s = from_wk(len(word))
    path = list(s.vertices)
    lab = NerveLabeling()
    for i, a in enumerate(word):
        lab.edges[(path[i], path[i + 1])] = a
        lab.vertices[path[i]] = g.tgt(a)
        lab.vertices[path[i + 1]] = g.src(a)
    cur = word
    for m in trace.moves:
        i = m.index
        if m.kind == "expand":
            u, w = path[i], path[i + 1]
            v = (u + w) / 2
            # a contracted-away vertex may sit at the midpoint already
            while v in s.vertices:
                v = (u + v) / 2
            s = apply_move(s, ComplexMove("expand", ((u, w),), v))
            lab.edges[(u, v)] = m.left
            lab.edges[(v, w)] = m.right
            lab.faces[(u, v, w)] = (m.left, m.right)
            lab.vertices[v] = g.src(m.left)
            path.insert(i + 1, v)
        else:
            u, v, w = path[i], path[i + 1], path[i + 2]
            if (u, w) in s.edges:
                raise CertificateObstruction(
                    f"contraction {m} would recreate edge {(str(u), str(w))}"
                )
            s = apply_move(s, ComplexMove("contract", ((u, v), (v, w))))
            lab.edges[(u, w)] = m.product
            lab.faces[(u, v, w)] = (m.left, m.right)
            del path[i + 1]
        cur = m.apply(cur)
    return Certificate(s, lab, word, cur, trace)


def certify_equivalence(
    w1: Sequence[str],
    w2: Sequence[str],
    g: FiniteLocalGroupoid,
    max_len: int = DEFAULT_MAX_LEN,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Certificate | None:
    verdict = equivalent(w1, w2, g, max_len, max_steps, upper_bound_first=False)
    if not isinstance(verdict, Equivalent):
        return None
    return certificate_from_trace(verdict.trace, g)


@dataclass
class VerifyReport:
    ok: bool
    reason: str = ""
    moves: tuple[Move, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(cert: Certificate, g: FiniteLocalGroupoid) -> VerifyReport:
    """Replay the complex history as word moves and check every label."""
    try:
        w1 = check_word(cert.word1, g)
        check_word(cert.word2, g)
    except ValueError as exc:
        return VerifyReport(False, f"claimed word is ill formed: {exc}")
    k = len(w1)
    s = from_wk(k)
    path = list(s.vertices)
    lab = cert.labeling
    moves: list[Move] = []
    try:
        for m in cert.complex.history:
            s = apply_move(s, m)
            if m.kind == "expand":
                (u, w), v = m.edges[0], m.vertex
                i = _path_index(path, u, w)
                left, right = lab.edges[(u, v)], lab.edges[(v, w)]
                moves.append(Move("expand", i, left, right, lab.edges[(u, w)]))
                path.insert(i + 1, v)
            else:
                (u, v), (_, w) = m.edges
                i = _path_index(path, u, v)
                if i + 2 >= len(path) or path[i + 2] != w:
                    raise IllegalMove("contraction does not act on the current boundary word")
                moves.append(Move("contract", i, lab.edges[(u, v)], lab.edges[(v, w)], lab.edges[(u, w)]))
                del path[i + 1]
    except (IllegalMove, KeyError) as exc:
        return VerifyReport(False, f"history does not replay: {exc}")
    if (s.vertices, s.edges, s.faces) != (cert.complex.vertices, cert.complex.edges, cert.complex.faces):
        return VerifyReport(False, "replayed complex differs from the certificate")
    bad = lab.problems(s, g)
    if bad:
        return VerifyReport(False, bad[0])
    start = tuple(Fraction(i) for i in range(k + 1))
    if lab.word_along(start) != w1:
        return VerifyReport(False, "first boundary word does not match")
    if lab.word_along(path) != tuple(cert.word2):
        return VerifyReport(False, "second boundary word does not match")
    paths = set(boundary_paths(s))
    if start not in paths or tuple(path) not in paths:
        return VerifyReport(False, "claimed words are not boundary paths")
    trace = MoveTrace(w1, tuple(moves))
    try:
        if trace.replay(g) != tuple(cert.word2):
            return VerifyReport(False, "word moves do not reach the second word")
    except ValueError as exc:
        return VerifyReport(False, f"word moves do not replay: {exc}")
    return VerifyReport(True, "", tuple(moves))


def _path_index(path: list[Fraction], u: Fraction, w: Fraction) -> int:
    for i in range(len(path) - 1):
        if path[i] == u and path[i + 1] == w:
            return i
    raise IllegalMove(f"edge {(str(u), str(w))} is not on the current boundary word")
