"""Finitely presented groups: free reduction, coset enumeration, Smith normal form.

Group words are tuples of letters ``(generator, exponent)`` with exponent +1 or
-1, multiplied left to right as written.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

Letter = tuple[str, int]
GroupWord = tuple[Letter, ...]


def free_reduce(word: Sequence[Letter]) -> GroupWord:
    out: list[Letter] = []
    for gen, e in word:
        if out and out[-1][0] == gen and out[-1][1] == -e:
            out.pop()
        else:
            out.append((gen, e))
    return tuple(out)


def invert(word: Sequence[Letter]) -> GroupWord:
    return tuple((gen, -e) for gen, e in reversed(word))


def cyclic_reduce(word: Sequence[Letter]) -> GroupWord:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def exponent_sums(word: Sequence[Letter], gens: Sequence[str]) -> list[int]:
    col = {g: i for i, g in enumerate(gens)}
    row = [0] * len(gens)
    for gen, e in word:
        row[col[gen]] += e
    return row


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[GroupWord, ...]

    def as_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [[[g, e] for g, e in r] for r in self.relators],
        }


# Smith normal form


def smith_normal_form(matrix: Sequence[Sequence[int]], n_cols: int | None = None):
    """Return (diagonal, U, V, Vinv) with U*A*V diagonal in Smith form.

    ``diagonal`` lists the nonzero invariant factors in divisibility order.
    U, V, Vinv are unimodular integer matrices as lists of rows.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = n_cols if n_cols is not None else (len(a[0]) if a else 0)
    for row in a:
        if len(row) != n:
            raise ValueError("ragged matrix")
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    vinv = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(src, dst, q):  # row dst += q * row src
        if q:
            ra, rs = a[dst], a[src]
            for k in range(n):
                ra[k] += q * rs[k]
            ud, us = u[dst], u[src]
            for k in range(m):
                ud[k] += q * us[k]

    def add_col(src, dst, q):  # col dst += q * col src
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in v:
                row[dst] += q * row[src]
            # inverse update: row src of Vinv -= q * row dst
            vs, vd = vinv[src], vinv[dst]
            for k in range(n):
                vs[k] -= q * vd[k]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        done = False
            if done:
                # divisibility: pivot must divide the remaining block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % a[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
                continue
            # move the smallest entry of row/column t into the pivot
            best = (t, t)
            for i in range(t + 1, m):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t + 1, n):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    diag = [a[i][i] for i in range(t)]
    return diag, u, v, vinv


@dataclass(frozen=True)
class AbelianInvariants:
    torsion: tuple[int, ...]
    free_rank: int

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def as_dict(self) -> dict:
        return {"torsion": list(self.torsion), "free_rank": self.free_rank, "group": str(self)}

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"


def cokernel_invariants(matrix: Sequence[Sequence[int]], n_cols: int) -> AbelianInvariants:
    """Invariants of Z^n_cols modulo the row span of ``matrix``."""
    rows = [list(r) for r in matrix if any(r)]
    if not rows or n_cols == 0:
        return AbelianInvariants((), n_cols)
    diag, *_ = smith_normal_form(rows, n_cols)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianInvariants(torsion, n_cols - len(diag))


def abelianization(p: GroupPresentation) -> AbelianInvariants:
    rows = [exponent_sums(r, p.generators) for r in p.relators]
    return cokernel_invariants(rows, len(p.generators))


# coset enumeration


class CosetLimitExceeded(RuntimeError):
    pass


def enumerate_cosets(p: GroupPresentation, limit: int) -> list[list[int]] | None:
    """Coset table of the trivial subgroup, or None when ``limit`` is exceeded.

    Columns are ordered gen0, gen0^-1, gen1, gen1^-1, ...  Coset 0 is the
    identity.  Implements relator-based enumeration with coincidence handling.
    """
    ncols = 2 * len(p.generators)
    col = {g: 2 * i for i, g in enumerate(p.generators)}
    rels = [[col[g] + (0 if e > 0 else 1) for g, e in free_reduce(r)] for r in p.relators]
    rels = [r for r in rels if r]
    if ncols == 0:
        return [[]]

    def inv(c):
        return c ^ 1

    table: list[list[int | None]] = [[None] * ncols]
    parent = [0]

    def rep(k):
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def define(c, x):
        if len(table) >= limit:
            raise CosetLimitExceeded
        n = len(table)
        table.append([None] * ncols)
        parent.append(n)
        table[c][x] = n
        table[n][inv(x)] = c

    def merge(k, l, queue):
        a, b = rep(k), rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            parent[hi] = lo
            queue.append(hi)

    def coincidence(a, b):
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for x in range(ncols):
                delta = table[gamma][x]
                if delta is None:
                    continue
                table[delta][inv(x)] = None
                mu, nu = rep(gamma), rep(delta)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x], queue)
                elif table[nu][inv(x)] is not None:
                    merge(mu, table[nu][inv(x)], queue)
                else:
                    table[mu][x] = nu
                    table[nu][inv(x)] = mu

    def scan_and_fill(alpha, word):
        f, b = alpha, alpha
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][inv(word[j])] is not None:
                b = table[b][inv(word[j])]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][inv(word[i])] = f
                return
            define(f, word[i])

    try:
        alpha = 0
        while alpha < len(table):
            for r in rels:
                if parent[alpha] != alpha:
                    break
                scan_and_fill(alpha, r)
            if parent[alpha] == alpha:
                for x in range(ncols):
                    if parent[alpha] != alpha:
                        break
                    if table[alpha][x] is None:
                        define(alpha, x)
            alpha += 1
    except CosetLimitExceeded:
        return None

    live = [c for c in range(len(table)) if parent[c] == c]
    # renumber live cosets breadth first from the identity for a canonical table
    order: list[int] = [0]
    seen = {0}
    k = 0
    while k < len(order):
        c = order[k]
        k += 1
        for x in range(ncols):
            d = rep(table[c][x])
            if d not in seen:
                seen.add(d)
                order.append(d)
    if len(order) != len(live):
        raise RuntimeError("coset table is not connected")
    new = {c: i for i, c in enumerate(order)}
    return [[new[rep(table[c][x])] for x in range(ncols)] for c in order]


class FiniteGroup:
    """Group given by a complete coset table of the trivial subgroup."""

    def __init__(self, generators: Sequence[str], table: list[list[int]]):
        self.generators = tuple(generators)
        self.table = table
        self._col = {g: 2 * i for i, g in enumerate(self.generators)}
        # shortest spelling of every element, breadth first
        words: list[GroupWord | None] = [None] * len(table)
        words[0] = ()
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for g in self.generators:
                for e in (1, -1):
                    d = table[c][self._col[g] + (0 if e > 0 else 1)]
                    if words[d] is None:
                        words[d] = words[c] + ((g, e),)
                        queue.append(d)
        self.words: list[GroupWord] = words  # type: ignore[assignment]

    @property
    def order(self) -> int:
        return len(self.table)

    def act(self, c: int, word: Sequence[Letter]) -> int:
        for g, e in word:
            c = self.table[c][self._col[g] + (0 if e > 0 else 1)]
        return c

    def element(self, word: Sequence[Letter]) -> int:
        return self.act(0, word)

    def multiply(self, i: int, j: int) -> int:
        return self.act(i, self.words[j])

    def inverse(self, i: int) -> int:
        return self.element(invert(self.words[i]))

    def is_abelian(self) -> bool:
        return all(
            self.act(0, ((a, 1), (b, 1))) == self.act(0, ((b, 1), (a, 1)))
            for a in self.generators
            for b in self.generators
        )


def finite_group(p: GroupPresentation, limit: int) -> FiniteGroup | None:
    table = enumerate_cosets(p, limit)
    if table is None:
        return None
    return FiniteGroup(p.generators, table)


def integer_kernel(matrix: Sequence[Sequence[int]], n_cols: int):
    """Basis of the integer kernel of ``matrix`` (columns of the returned list).

    Returns (basis, coords) where basis is a list of kernel vectors and coords
    maps a kernel vector to its coordinates in that basis.  The basis spans a
    saturated sublattice, so coordinates of kernel vectors are integral.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        basis = [[int(i == j) for i in range(n_cols)] for j in range(n_cols)]

        def coords_trivial(vec):
            return list(vec)

        return basis, coords_trivial
    diag, _, v, vinv = smith_normal_form(rows, n_cols)
    r = len(diag)
    basis = [[v[i][j] for i in range(n_cols)] for j in range(r, n_cols)]

    def coords(vec):
        full = [sum(vinv[i][k] * vec[k] for k in range(n_cols)) for i in range(n_cols)]
        if any(full[:r]):
            raise ValueError("vector is not in the kernel")
        return full[r:]

    return basis, coords
