"""Truncated nerve of a finite local groupoid and horn-filling diagnostics.

Level 0 simplices are object ids; a level m >= 1 simplex is a tuple
``(g1, ..., gm)`` with ``src(gi) == tgt(g(i+1))`` whose m-fold products are all
defined and equal.  Its vertices are ``tgt(g1), src(g1), ..., src(gm)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from .assoc import SearchSpaceTooLarge
from .core import FiniteLocalGroupoid

Simplex = Hashable

MAX_DIM = 6
DEFAULT_LEVEL_LIMIT = 500_000


def _full_value(word: tuple[str, ...], g: FiniteLocalGroupoid) -> str | None:
    """Common value of all bracketings, or None unless all are defined and equal."""
    m = len(word)
    val = [[None] * m for _ in range(m)]
    for i in range(m):
        val[i][i] = word[i]
    for span in range(1, m):
        for i in range(m - span):
            j = i + span
            common = None
            for k in range(i, j):
                left, right = val[i][k], val[k + 1][j]
                if left is None or right is None:
                    return None
                p = g.product(left, right)
                if p is None or (common is not None and p != common):
                    return None
                common = p
            val[i][j] = common
    return val[0][m - 1]


def face(g: FiniteLocalGroupoid, simplex: Simplex, i: int, m: int) -> Simplex:
    """The i-th face of a level m simplex, computed from the table."""
    if m == 1:
        (a,) = simplex
        return g.src(a) if i == 0 else g.tgt(a)
    if i == 0:
        return simplex[1:]
    if i == m:
        return simplex[:-1]
    prod = g.product(simplex[i - 1], simplex[i])
    return simplex[: i - 1] + (prod,) + simplex[i + 1 :]


def degeneracy(g: FiniteLocalGroupoid, simplex: Simplex, j: int, m: int) -> Simplex:
    """Insert the unit at vertex j of a level m simplex."""
    if m == 0:
        return (g.unit(simplex),)
    vertex = g.tgt(simplex[0]) if j == 0 else g.src(simplex[j - 1])
    return simplex[:j] + (g.unit(vertex),) + simplex[j:]


@dataclass
class SimplicialTruncation:
    """Levels 0..m_max with explicit face and degeneracy tables."""

    levels: list[list[Simplex]]
    faces: list[dict[Simplex, tuple]]
    degeneracies: list[dict[Simplex, tuple]]
    degenerate: list[set[Simplex]] = field(default_factory=list)
    source: FiniteLocalGroupoid | None = None

    @property
    def m_max(self) -> int:
        return len(self.levels) - 1

    def d(self, i: int, simplex: Simplex, m: int) -> Simplex:
        return self.faces[m][simplex][i]

    def s(self, j: int, simplex: Simplex, m: int) -> Simplex:
        return self.degeneracies[m][simplex][j]

    def sizes(self) -> list[int]:
        return [len(level) for level in self.levels]

    def vertices_of(self, simplex: Simplex, m: int) -> tuple:
        if m == 0:
            return (simplex,)
        # vertex k is obtained by deleting every other vertex
        out = []
        for k in range(m + 1):
            cur, level = simplex, m
            # drop vertices above k (always the last), then those below (always the first)
            for _ in range(m - k):
                cur = self.d(level, cur, level)
                level -= 1
            for _ in range(k):
                cur = self.d(0, cur, level)
                level -= 1
            out.append(cur)
        return tuple(out)


def build_nerve(g: FiniteLocalGroupoid, m_max: int, level_limit: int = DEFAULT_LEVEL_LIMIT) -> SimplicialTruncation:
    if m_max > MAX_DIM:
        raise SearchSpaceTooLarge(m_max, -1)
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    levels: list[list[Simplex]] = [list(g.objects)]
    if m_max >= 1:
        levels.append([(a,) for a in g.arrows])
    for m in range(2, m_max + 1):
        prev = set(levels[m - 1])
        nxt = []
        for s in levels[m - 1]:
            for a in g.arrows_into(g.src(s[-1])):
                cand = s + (a,)
                # the last face must already be a simplex; the rest is checked directly
                if cand[1:] not in prev:
                    continue
                if _full_value(cand, g) is not None:
                    nxt.append(cand)
                    if len(nxt) > level_limit:
                        raise SearchSpaceTooLarge(m, len(nxt))
        levels.append(nxt)
    faces: list[dict] = []
    degs: list[dict] = []
    degenerate: list[set] = []
    for m, level in enumerate(levels):
        if m == 0:
            faces.append({x: () for x in level})
        else:
            faces.append({s: tuple(face(g, s, i, m) for i in range(m + 1)) for s in level})
        if m < m_max:
            degs.append({s: tuple(degeneracy(g, s, j, m) for j in range(m + 1)) for s in level})
        else:
            degs.append({})
        if m == 0:
            degenerate.append(set())
        else:
            degenerate.append({s for s in level if any(g.is_unit(a) for a in s)})
    return SimplicialTruncation(levels, faces, degs, degenerate, g)


@dataclass
class IdentityReport:
    ok: bool
    witnesses: list[tuple] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_simplicial_identities(n: SimplicialTruncation, max_witnesses: int = 10) -> IdentityReport:
    bad: list[tuple] = []

    def note(*w):
        if len(bad) < max_witnesses:
            bad.append(w)

    for m in range(1, n.m_max + 1):
        members_below = set(n.levels[m - 1])
        for s in n.levels[m]:
            fs = n.faces[m][s]
            if len(fs) != m + 1:
                note("face_count", m, s)
                continue
            for f in fs:
                if f not in members_below:
                    note("face_not_simplex", m, s, f)
            if m >= 2:
                for j in range(m + 1):
                    for i in range(j):
                        try:
                            lhs = n.faces[m - 1][fs[j]][i]
                            rhs = n.faces[m - 1][fs[i]][j - 1]
                        except KeyError:
                            note("dd_missing", m, s, i, j)
                            continue
                        if lhs != rhs:
                            note("d_i d_j", m, s, i, j, lhs, rhs)
    for m in range(0, n.m_max):
        for s in n.levels[m]:
            ss = n.degeneracies[m][s]
            for j in range(m + 1):
                t = ss[j]
                if t not in n.faces[m + 1]:
                    note("degenerate_not_simplex", m, s, j)
                    continue
                ft = n.faces[m + 1][t]
                for i in range(m + 2):
                    if i in (j, j + 1):
                        expect = s
                    elif i < j:
                        expect = n.degeneracies[m - 1][n.faces[m][s][i]][j - 1]
                    else:
                        expect = n.degeneracies[m - 1][n.faces[m][s][i - 1]][j]
                    if ft[i] != expect:
                        note("d_i s_j", m, s, i, j, ft[i], expect)
                if m + 1 < n.m_max:
                    for i in range(j + 1):
                        lhs = n.degeneracies[m + 1][t][i]
                        rhs = n.degeneracies[m + 1][ss[i]][j + 1]
                        if lhs != rhs:
                            note("s_i s_j", m, s, i, j)
    return IdentityReport(not bad, bad)


@dataclass
class HornReport:
    dimension: int
    index: int
    horns: int
    fillable: int
    unfillable_witnesses: list[tuple]

    @property
    def unfillable(self) -> int:
        return self.horns - self.fillable

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "horn_index": self.index,
            "horns": self.horns,
            "fillable": self.fillable,
            "unfillable": self.unfillable,
            "witnesses": [list(map(_jsonable, w)) for w in self.unfillable_witnesses],
        }


def _jsonable(s):
    return list(s) if isinstance(s, tuple) else s


def horns(n: SimplicialTruncation, dim: int, k: int):
    """Enumerate horns: families (y_i) for i != k of (dim-1)-simplices with
    d_i y_j == d_(j-1) y_i for all i < j outside k."""
    lower = n.levels[dim - 1]
    idx = [i for i in range(dim + 1) if i != k]
    by_face: dict[tuple[int, Simplex], list[Simplex]] = {}
    for s in lower:
        for i, f in enumerate(n.faces[dim - 1][s]):
            by_face.setdefault((i, f), []).append(s)
    chosen: dict[int, Simplex] = {}

    def candidates(j):
        options = None
        for i in idx:
            if i >= j:
                break
            need = n.faces[dim - 1][chosen[i]][j - 1]
            pool = by_face.get((i, need), [])
            if options is None:
                options = pool
            else:
                pool_set = set(pool)
                options = [s for s in options if s in pool_set]
        return lower if options is None else options

    def rec(pos):
        if pos == len(idx):
            yield tuple(chosen[i] for i in idx)
            return
        j = idx[pos]
        for s in candidates(j):
            chosen[j] = s
            yield from rec(pos + 1)
        chosen.pop(j, None)

    yield from rec(0)


def horn_check(n: SimplicialTruncation, up_to_dim: int, max_witnesses: int = 5) -> list[HornReport]:
    if up_to_dim > n.m_max:
        raise ValueError("horn dimension exceeds the truncation")
    reports = []
    for dim in range(2, up_to_dim + 1):
        for k in range(dim + 1):
            fillers = {tuple(f for i, f in enumerate(n.faces[dim][s]) if i != k) for s in n.levels[dim]}
            total = filled = 0
            wit = []
            for h in horns(n, dim, k):
                total += 1
                if h in fillers:
                    filled += 1
                elif len(wit) < max_witnesses:
                    wit.append(h)
            reports.append(HornReport(dim, k, total, filled, wit))
    return reports


def unfillable_total(reports: list[HornReport]) -> int:
    return sum(r.unfillable for r in reports)
