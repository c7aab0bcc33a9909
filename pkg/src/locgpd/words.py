"""Word calculus over a finite local groupoid and its associative completion.

A word ``(w1, ..., wk)`` is well formed when ``src(wi) == tgt(w(i+1))``; it
stands for the composite ``w1 w2 ... wk`` read right to left.  Two words are
equivalent when a chain of contractions (replace an adjacent pair of U by its
product) and expansions (the reverse) joins them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import _groups
from ._groups import AbelianInvariants, FiniteGroup, GroupPresentation, GroupWord
from .core import Arrow, FiniteLocalGroupoid, is_inversional

Word = tuple[str, ...]

DEFAULT_MAX_LEN = 12
DEFAULT_MAX_STEPS = 10**6


class IllFormedWord(ValueError):
    pass


class SourceTargetMismatch(ValueError):
    pass


class NotInversional(ValueError):
    pass


class ReplayError(ValueError):
    pass


def check_word(w: Sequence[str], g: FiniteLocalGroupoid) -> Word:
    word = tuple(w)
    if not word:
        raise IllFormedWord("words are nonempty")
    for a in word:
        if a not in g.arrows:
            raise IllFormedWord(f"unknown arrow {a!r}")
    for a, b in zip(word, word[1:]):
        if g.src(a) != g.tgt(b):
            raise IllFormedWord(f"letters {a!r}, {b!r} do not compose")
    return word


def word_src(w: Word, g: FiniteLocalGroupoid) -> str:
    return g.src(w[-1])


def word_tgt(w: Word, g: FiniteLocalGroupoid) -> str:
    return g.tgt(w[0])


@dataclass(frozen=True)
class Move:
    """One contraction or expansion.

    A contraction at ``index`` replaces letters ``index, index+1`` (equal to
    ``left, right``) by ``product``; an expansion does the reverse.
    """

    kind: str
    index: int
    left: str
    right: str
    product: str

    def apply(self, w: Word) -> Word:
        i = self.index
        if self.kind == "contract":
            if w[i : i + 2] != (self.left, self.right):
                raise ReplayError(f"contraction {self} does not match {w}")
            return w[:i] + (self.product,) + w[i + 2 :]
        if self.kind == "expand":
            if i >= len(w) or w[i] != self.product:
                raise ReplayError(f"expansion {self} does not match {w}")
            return w[:i] + (self.left, self.right) + w[i + 1 :]
        raise ReplayError(f"unknown move kind {self.kind!r}")

    def inverse(self) -> "Move":
        return Move("expand" if self.kind == "contract" else "contract", self.index, self.left, self.right, self.product)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "index": self.index, "pair": [self.left, self.right], "product": self.product}

    @classmethod
    def from_dict(cls, d: dict) -> "Move":
        return cls(d["kind"], int(d["index"]), d["pair"][0], d["pair"][1], d["product"])


@dataclass(frozen=True)
class MoveTrace:
    start: Word
    moves: tuple[Move, ...] = ()

    def words(self) -> list[Word]:
        out = [self.start]
        for m in self.moves:
            out.append(m.apply(out[-1]))
        return out

    @property
    def end(self) -> Word:
        return self.words()[-1]

    def replay(self, g: FiniteLocalGroupoid | None = None) -> Word:
        """Apply every move, checking products against ``g`` when given."""
        w = self.start
        for m in self.moves:
            if g is not None and g.product(m.left, m.right) != m.product:
                raise ReplayError(f"{m} is not a product in the table")
            w = m.apply(w)
        return w

    def reversed(self) -> "MoveTrace":
        return MoveTrace(self.end, tuple(m.inverse() for m in reversed(self.moves)))

    def then(self, other: "MoveTrace") -> "MoveTrace":
        if other.start != self.end:
            raise ReplayError("traces do not chain")
        return MoveTrace(self.start, self.moves + other.moves)

    def as_dict(self) -> dict:
        return {"start": list(self.start), "moves": [m.as_dict() for m in self.moves], "end": list(self.end)}

    @classmethod
    def from_dict(cls, d: dict) -> "MoveTrace":
        return cls(tuple(d["start"]), tuple(Move.from_dict(m) for m in d["moves"]))


def moves_from(w: Word, g: FiniteLocalGroupoid, max_len: int | None = None) -> list[tuple[Move, Word]]:
    out: list[tuple[Move, Word]] = []
    for i in range(len(w) - 1):
        p = g.product(w[i], w[i + 1])
        if p is not None:
            m = Move("contract", i, w[i], w[i + 1], p)
            out.append((m, w[:i] + (p,) + w[i + 2 :]))
    if max_len is None or len(w) < max_len:
        for i, a in enumerate(w):
            for u, v in g.factorizations(a):
                m = Move("expand", i, u, v, a)
                out.append((m, w[:i] + (u, v) + w[i + 1 :]))
    return out


@dataclass(frozen=True)
class Equivalent:
    trace: MoveTrace
    explored: int = 0

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NotWithinBounds:
    max_len: int
    max_steps: int
    explored: int = 0

    def __bool__(self) -> bool:
        return False


def _path(parents: dict, w: Word) -> list[Move]:
    moves = []
    while parents[w] is not None:
        prev, m = parents[w]
        moves.append(m)
        w = prev
    moves.reverse()
    return moves


def _bidirectional(w1: Word, w2: Word, g: FiniteLocalGroupoid, max_len: int, max_steps: int, kinds: set[str]):
    """Layered two-sided breadth-first search; returns a shortest trace or None."""
    if w1 == w2:
        return MoveTrace(w1), 1
    par_a: dict[Word, tuple | None] = {w1: None}
    par_b: dict[Word, tuple | None] = {w2: None}
    dist_a, dist_b = {w1: 0}, {w2: 0}
    front_a, front_b = [w1], [w2]
    explored = 2
    while front_a and front_b:
        forward = len(front_a) <= len(front_b)
        front, par, dist, other_dist = (
            (front_a, par_a, dist_a, dist_b) if forward else (front_b, par_b, dist_b, dist_a)
        )
        best = None
        nxt = []
        for w in front:
            for m, w_new in moves_from(w, g, max_len):
                # both sides grow toward a common word; backward moves are inverted later
                if m.kind not in kinds:
                    continue
                if w_new in par:
                    continue
                par[w_new] = (w, m)
                dist[w_new] = dist[w] + 1
                nxt.append(w_new)
                explored += 1
                if w_new in other_dist:
                    total = dist[w_new] + other_dist[w_new]
                    if best is None or total < best[0]:
                        best = (total, w_new)
                if explored >= max_steps and best is None:
                    return None, explored
        if best is not None:
            meet = best[1]
            first = _path(par_a, meet)
            second = [m.inverse() for m in reversed(_path(par_b, meet))]
            return MoveTrace(w1, tuple(first + second)), explored
        if forward:
            front_a = nxt
        else:
            front_b = nxt
    return None, explored


def equivalent(
    w1: Sequence[str],
    w2: Sequence[str],
    g: FiniteLocalGroupoid,
    max_len: int = DEFAULT_MAX_LEN,
    max_steps: int = DEFAULT_MAX_STEPS,
    upper_bound_first: bool = True,
) -> Equivalent | NotWithinBounds:
    """Semi-decide ``w1 ~ w2`` by bounded search.

    When ``upper_bound_first`` is set a cheap search for a common expansion is
    tried before the full search over all moves.  Only the full search returns
    a trace of minimal length.
    """
    a, b = check_word(w1, g), check_word(w2, g)
    if word_src(a, g) != word_src(b, g) or word_tgt(a, g) != word_tgt(b, g):
        raise SourceTargetMismatch(f"{a} and {b} have different endpoints")
    explored_total = 0
    if upper_bound_first:
        budget = min(max_steps, 2000)
        trace, explored = _bidirectional(a, b, g, max_len, budget, {"expand"})
        explored_total += explored
        if trace is not None:
            return Equivalent(trace, explored_total)
    trace, explored = _bidirectional(a, b, g, max_len, max_steps, {"expand", "contract"})
    explored_total += explored
    if trace is None:
        return NotWithinBounds(max_len, max_steps, explored_total)
    return Equivalent(trace, explored_total)


def component(
    w: Sequence[str], g: FiniteLocalGroupoid, max_len: int = DEFAULT_MAX_LEN, max_steps: int = DEFAULT_MAX_STEPS
) -> tuple[dict[Word, tuple | None], bool]:
    """Breadth-first exploration of the bounded class of ``w``.

    Returns parent pointers and a flag telling whether the class was exhausted
    within the bounds.
    """
    start = check_word(w, g)
    parents: dict[Word, tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for m, nxt in moves_from(cur, g, max_len):
            if nxt not in parents:
                if len(parents) >= max_steps:
                    return parents, False
                parents[nxt] = (cur, m)
                queue.append(nxt)
    return parents, True


# associators


@dataclass(frozen=True)
class AssociatorCertificate:
    """``word`` reduces both to the unit and to ``arrow``."""

    arrow: str
    word: Word
    to_unit: MoveTrace
    to_arrow: MoveTrace

    def check(self, g: FiniteLocalGroupoid) -> bool:
        x = g.src(self.arrow)
        try:
            ok_unit = self.to_unit.start == self.word and self.to_unit.replay(g) == (g.unit(x),)
            ok_arrow = self.to_arrow.start == self.word and self.to_arrow.replay(g) == (self.arrow,)
        except ReplayError:
            return False
        return ok_unit and ok_arrow and g.tgt(self.arrow) == x

    def as_dict(self) -> dict:
        return {
            "arrow": self.arrow,
            "word": list(self.word),
            "to_unit": self.to_unit.as_dict(),
            "to_arrow": self.to_arrow.as_dict(),
        }


@dataclass
class AssociatorSet:
    at: str
    certificates: dict[str, AssociatorCertificate]
    complete: bool
    max_len: int
    max_steps: int

    @property
    def arrows(self) -> frozenset[str]:
        return frozenset(self.certificates)

    def as_dict(self) -> dict:
        return {
            "at": self.at,
            "arrows": sorted(self.certificates),
            "exhausted_within_bounds": self.complete,
            "max_len": self.max_len,
            "max_steps": self.max_steps,
            "certificates": {a: c.as_dict() for a, c in sorted(self.certificates.items())},
        }


def associators(
    g: FiniteLocalGroupoid, x: str, max_len: int = 6, max_steps: int = 200_000
) -> AssociatorSet:
    """Loops at ``x`` whose one-letter word is equivalent to the unit word."""
    if x not in g.objects:
        raise ValueError(f"unknown object {x!r}")
    unit_word = (g.unit(x),)
    parents, complete = component(unit_word, g, max_len, max_steps)
    certs = {}
    for w in parents:
        if len(w) == 1:
            trace = MoveTrace(unit_word, tuple(_path(parents, w)))
            certs[w[0]] = AssociatorCertificate(w[0], unit_word, MoveTrace(unit_word), trace)
    ordered = dict(sorted(certs.items(), key=lambda kv: g.index(kv[0])))
    return AssociatorSet(x, ordered, complete, max_len, max_steps)


# presentations and the associative completion


@dataclass(frozen=True)
class GroupoidPresentation:
    """Vertex-group presentation of one component of the completion.

    ``tree`` maps each non-root object to the arrow joining it to its parent.
    ``root_path[x]`` is the group word spelling the tree path from the root to
    x, and ``gen_word[a]`` is the loop at the root that arrow ``a`` stands for.
    """

    root: str
    objects: tuple[str, ...]
    tree: dict[str, str]
    generators: tuple[str, ...]
    relators: tuple[GroupWord, ...]
    gen_word: dict[str, GroupWord]

    @property
    def group(self) -> GroupPresentation:
        return GroupPresentation(self.generators, self.relators)

    def as_dict(self) -> dict:
        return {
            "root": self.root,
            "objects": list(self.objects),
            "tree": dict(self.tree),
            **self.group.as_dict(),
        }


def spanning_tree(
    objects: Sequence[str], root: str, edges: Iterable[tuple[str, str, str]]
) -> dict[str, str]:
    """Breadth-first spanning tree over undirected edges ``(id, src, tgt)``."""
    adj: dict[str, list[tuple[str, str]]] = {x: [] for x in objects}
    for eid, s, t in edges:
        if s == t:
            continue
        adj[s].append((eid, t))
        adj[t].append((eid, s))
    tree: dict[str, str] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        y = queue.popleft()
        for eid, z in adj[y]:
            if z not in seen:
                seen.add(z)
                tree[z] = eid
                queue.append(z)
    return tree


def presentation(g: FiniteLocalGroupoid, root: str) -> GroupoidPresentation:
    comp = next(c for c in g.components() if root in c)
    inside = set(comp)
    arrows = [a for a in g.arrows.values() if a.src in inside and not g.is_unit(a.id)]
    tree = spanning_tree(comp, root, ((a.id, a.src, a.tgt) for a in arrows))
    tree_ids = set(tree.values())
    generators = tuple(a.id for a in arrows if a.id not in tree_ids)
    gen_word: dict[str, GroupWord] = {}
    for a in g.arrows.values():
        if a.src not in inside:
            continue
        gen_word[a.id] = ((a.id, 1),) if a.id in generators else ()
    relators = []
    for (u, v), uv in g.mult.items():
        if g.src(v) not in inside:
            continue
        # u v (uv)^-1 read as a loop: group words multiply in path order, so the
        # right-to-left composite "u after v" is spelled v then u.
        rel = _groups.free_reduce(gen_word[v] + gen_word[u] + _groups.invert(gen_word[uv]))
        rel = _groups.cyclic_reduce(rel)
        if rel and rel not in relators:
            relators.append(rel)
    return GroupoidPresentation(root, comp, tree, generators, tuple(relators), gen_word)


@dataclass
class FiniteCompletion:
    """AC(G) as an explicit finite groupoid with the completion map."""

    table: FiniteLocalGroupoid
    completion_map: dict[str, str]
    vertex_groups: dict[str, FiniteGroup]
    presentations: dict[str, GroupoidPresentation]
    kind: str = "finite"

    @property
    def order(self) -> int:
        return len(self.table.arrows)

    @property
    def is_injective(self) -> bool:
        return len(set(self.completion_map.values())) == len(self.completion_map)

    def kernel(self, g: FiniteLocalGroupoid) -> frozenset[str]:
        units = set(self.table.units.values())
        return frozenset(a for a, c in self.completion_map.items() if c in units)

    def word_class(self, w: Sequence[str]) -> str:
        """Image in AC(G) of a well-formed word."""
        cur = self.completion_map[w[-1]]
        for a in reversed(w[:-1]):
            cur = self.table.product(self.completion_map[a], cur)
        return cur

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "vertex_group_orders": {r: grp.order for r, grp in self.vertex_groups.items()},
            "completion_injective": self.is_injective,
            "completion_map": dict(self.completion_map),
            "presentations": {r: p.as_dict() for r, p in self.presentations.items()},
        }


@dataclass
class InfiniteCertified:
    h1: dict[str, AbelianInvariants]
    presentations: dict[str, GroupoidPresentation]
    kind: str = "infinite"

    @property
    def h1_rank(self) -> int:
        return max(inv.free_rank for inv in self.h1.values())

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "h1": {r: inv.as_dict() for r, inv in self.h1.items()},
            "presentations": {r: p.as_dict() for r, p in self.presentations.items()},
        }


@dataclass
class NotStabilized:
    h1: dict[str, AbelianInvariants]
    presentations: dict[str, GroupoidPresentation]
    coset_limit: int
    kind: str = "not_stabilized"

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "coset_limit": self.coset_limit,
            "h1": {r: inv.as_dict() for r, inv in self.h1.items()},
            "presentations": {r: p.as_dict() for r, p in self.presentations.items()},
        }


def ac_arrow(y: str, x: str, k: int) -> str:
    return f"{y}<-{x}#{k}"


def ac_build(g: FiniteLocalGroupoid, coset_limit: int = 10_000, len_limit: int = 64):
    """Associative completion through vertex-group presentations.

    ``len_limit`` guards relator length after tree collapse (every relator has
    at most three letters, so the guard only trips on corrupt input).
    """
    if not is_inversional(g):
        raise NotInversional("the completion needs every arrow to be a product of invertibles")
    presentations = {}
    groups: dict[str, FiniteGroup] = {}
    h1 = {}
    for comp in g.components():
        root = comp[0]
        p = presentation(g, root)
        if any(len(r) > len_limit for r in p.relators):
            raise ValueError(f"relator longer than len_limit={len_limit}")
        presentations[root] = p
        h1[root] = _groups.abelianization(p.group)
        grp = _groups.finite_group(p.group, coset_limit)
        if grp is not None:
            groups[root] = grp
    if len(groups) == len(presentations):
        return _assemble(g, presentations, groups)
    if any(inv.free_rank > 0 for inv in h1.values()):
        return InfiniteCertified(h1, presentations)
    return NotStabilized(h1, presentations, coset_limit)


def _assemble(g, presentations, groups) -> FiniteCompletion:
    objects, arrows, units, mult, inv = [], [], {}, {}, {}
    cmap = {}
    for root, p in presentations.items():
        grp = groups[root]
        objects.extend(p.objects)
        for y in p.objects:
            for x in p.objects:
                for k in range(grp.order):
                    arrows.append(Arrow(ac_arrow(y, x, k), x, y))
        for x in p.objects:
            units[x] = ac_arrow(x, x, 0)
        for z in p.objects:
            for y in p.objects:
                for x in p.objects:
                    for i in range(grp.order):
                        for j in range(grp.order):
                            # loops multiply in path order: (z<-y, i) after (y<-x, j) is j then i
                            mult[(ac_arrow(z, y, i), ac_arrow(y, x, j))] = ac_arrow(z, x, grp.multiply(j, i))
        for y in p.objects:
            for x in p.objects:
                for k in range(grp.order):
                    inv[ac_arrow(y, x, k)] = ac_arrow(x, y, grp.inverse(k))
        for a in g.arrows.values():
            if a.src in p.objects:
                cmap[a.id] = ac_arrow(a.tgt, a.src, grp.element(p.gen_word[a.id]))
    table = FiniteLocalGroupoid(objects, arrows, units, mult, inv)
    return FiniteCompletion(table, cmap, groups, presentations)


def completion_kernel(
    g: FiniteLocalGroupoid, coset_limit: int = 10_000, max_len: int = 6, max_steps: int = 200_000
) -> dict:
    """Arrows sent to units by the completion map, with the method used.

    When the completion is finite the kernel is read off the table and compared
    with bounded associator search where that search is exhaustive.
    """
    result = ac_build(g, coset_limit=coset_limit)
    bounded: set[str] = set()
    exhausted = True
    for x in g.objects:
        s = associators(g, x, max_len, max_steps)
        bounded |= s.arrows
        exhausted = exhausted and s.complete
    if isinstance(result, FiniteCompletion):
        kernel = set(result.kernel(g))
        agrees = bounded <= kernel and (not exhausted or bounded == kernel)
        return {"method": "completion", "kernel": kernel, "associators": bounded, "agrees": agrees}
    return {"method": "associators", "kernel": bounded, "associators": bounded, "agrees": True, "exhausted": exhausted}
