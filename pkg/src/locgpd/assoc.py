"""n-associativity: bracketings, order checks, and restriction to n-associative tables."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .core import FiniteLocalGroupoid, restrict
from .words import AssociatorCertificate, Move, MoveTrace, Word

# A bracketing is a full binary tree over leaves 0..m-1: a leaf index or a pair.
Bracketing = object

MAX_LEAVES = 12
DEFAULT_TUPLE_LIMIT = 2_000_000


class TooLarge(ValueError):
    pass


class SearchSpaceTooLarge(ValueError):
    def __init__(self, m: int, count: int):
        super().__init__(f"{count} well-formed {m}-tuples exceed the enumeration guard")
        self.m = m
        self.count = count


class CannotRestrict(ValueError):
    pass


@lru_cache(maxsize=None)
def _trees(lo: int, hi: int) -> tuple:
    if lo == hi:
        return (lo,)
    out = []
    for k in range(lo, hi):
        for left in _trees(lo, k):
            for right in _trees(k + 1, hi):
                out.append((left, right))
    return tuple(out)


def bracketings(m: int) -> list[Bracketing]:
    if m < 1:
        raise ValueError("need at least one leaf")
    if m > MAX_LEAVES:
        raise TooLarge(f"m={m} exceeds {MAX_LEAVES}")
    return list(_trees(0, m - 1))


def leaf_count(b: Bracketing) -> int:
    return 1 if isinstance(b, int) else leaf_count(b[0]) + leaf_count(b[1])


def show(b: Bracketing, letters: Sequence[str] | None = None) -> str:
    if isinstance(b, int):
        return str(b) if letters is None else letters[b]
    return f"({show(b[0], letters)} {show(b[1], letters)})"


def evaluate(w: Sequence[str], b: Bracketing, g: FiniteLocalGroupoid) -> str | None:
    if isinstance(b, int):
        return w[b]
    left = evaluate(w, b[0], g)
    if left is None:
        return None
    right = evaluate(w, b[1], g)
    if right is None:
        return None
    return g.product(left, right)


def pairs_used(w: Sequence[str], b: Bracketing, g: FiniteLocalGroupoid) -> list[tuple[str, str]]:
    """Product pairs met while evaluating, root first."""
    if isinstance(b, int):
        return []
    left, right = evaluate(w, b[0], g), evaluate(w, b[1], g)
    return [(left, right)] + pairs_used(w, b[0], g) + pairs_used(w, b[1], g)


def bracketing_trace(w: Sequence[str], b: Bracketing, g: FiniteLocalGroupoid) -> MoveTrace:
    """Contractions that evaluate ``b`` on ``w``, innermost first."""
    moves: list[Move] = []
    word = list(w)

    # each subtree collapses to a single letter at its starting offset
    def go(node, offset):
        if isinstance(node, int):
            return
        go(node[0], offset)
        go(node[1], offset + 1)
        left, right = word[offset], word[offset + 1]
        prod = g.product(left, right)
        if prod is None:
            raise ValueError("bracketing is undefined on this word")
        moves.append(Move("contract", offset, left, right, prod))
        word[offset : offset + 2] = [prod]

    go(b, 0)
    return MoveTrace(tuple(w), tuple(moves))


@dataclass
class AssocFailure:
    m: int
    word: Word
    bracketing_a: Bracketing
    bracketing_b: Bracketing
    value_a: str
    value_b: str

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "tuple": list(self.word),
            "bracketing_a": show(self.bracketing_a, self.word),
            "bracketing_b": show(self.bracketing_b, self.word),
            "value_a": self.value_a,
            "value_b": self.value_b,
        }


@dataclass
class AssocReport:
    order_checked: int
    failure: AssocFailure | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def as_dict(self) -> dict:
        return {
            "order_checked": self.order_checked,
            "verdict": "pass" if self.ok else "fail",
            "witness": None if self.ok else self.failure.as_dict(),
        }


def count_tuples(g: FiniteLocalGroupoid, m: int, skip_units: bool = True) -> int:
    """Number of well-formed m-tuples (optionally without unit letters)."""
    letters = [a for a in g.arrows if not (skip_units and g.is_unit(a))]
    ways = {x: 1 for x in g.objects}  # paths ending (on the right) at object x
    for _ in range(m):
        nxt = {x: 0 for x in g.objects}
        for a in letters:
            nxt[g.tgt(a)] += ways[g.src(a)]
        ways = nxt
    return sum(ways.values())


def _values(word: Sequence[str], g: FiniteLocalGroupoid) -> set[str]:
    m = len(word)
    table = [[None] * m for _ in range(m)]
    for i in range(m):
        table[i][i] = {word[i]}
    for span in range(1, m):
        for i in range(m - span):
            j = i + span
            vals = set()
            for k in range(i, j):
                for x in table[i][k]:
                    for y in table[k + 1][j]:
                        p = g.product(x, y)
                        if p is not None:
                            vals.add(p)
            table[i][j] = vals
    return table[0][m - 1]


def tuples(g: FiniteLocalGroupoid, m: int, skip_units: bool = True):
    """Well-formed m-tuples in lexicographic arrow order."""
    letters = [a for a in g.arrows if not (skip_units and g.is_unit(a))]
    by_tgt: dict[str, list[str]] = {x: [] for x in g.objects}
    for a in letters:
        by_tgt[g.tgt(a)].append(a)
    word: list[str] = []

    def rec():
        if len(word) == m:
            yield tuple(word)
            return
        options = letters if not word else by_tgt[g.src(word[-1])]
        for a in options:
            word.append(a)
            yield from rec()
            word.pop()

    yield from rec()


def _failure_for(word: Word, g: FiniteLocalGroupoid) -> AssocFailure | None:
    if len(_values(word, g)) < 2:
        return None
    first = None
    for b in bracketings(len(word)):
        v = evaluate(word, b, g)
        if v is None:
            continue
        if first is None:
            first = (b, v)
        elif v != first[1]:
            return AssocFailure(len(word), word, first[0], b, first[1], v)
    return None


def assoc_order(g: FiniteLocalGroupoid, n: int, limit: int = DEFAULT_TUPLE_LIMIT) -> AssocReport:
    """Check every m-fold product for 3 <= m <= n.

    Tuples containing a unit are skipped: dropping the unit leaves the set of
    bracketing values unchanged, so such a tuple fails only if a shorter one
    already does.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    for m in range(3, n + 1):
        count = count_tuples(g, m)
        if count > limit:
            raise SearchSpaceTooLarge(m, count)
        for word in tuples(g, m):
            fail = _failure_for(word, g)
            if fail is not None:
                return AssocReport(n, fail)
    return AssocReport(n)


def failures(g: FiniteLocalGroupoid, m: int, limit: int = DEFAULT_TUPLE_LIMIT):
    count = count_tuples(g, m)
    if count > limit:
        raise SearchSpaceTooLarge(m, count)
    for word in tuples(g, m):
        fail = _failure_for(word, g)
        if fail is not None:
            yield fail


def _drop_pair(g: FiniteLocalGroupoid, pair: tuple[str, str]) -> FiniteLocalGroupoid:
    keep = set(g.mult) - {pair}
    vset = set(g.inv)
    a, b = pair
    prod = g.mult[pair]
    if g.is_unit(prod) and g.inv.get(a) == b:
        # an inverse pair: both arrows leave V together with both inverse pairs
        vset -= {a, b}
        keep -= {(a, b), (b, a)}
    return restrict(g, keep, vset)


def _choose_pair(g: FiniteLocalGroupoid, fail: AssocFailure) -> tuple[str, str]:
    candidates = pairs_used(fail.word, fail.bracketing_b, g) + pairs_used(fail.word, fail.bracketing_a, g)
    candidates = [p for p in candidates if not g.is_unit_adjacent(p)]
    if not candidates:
        raise CannotRestrict(f"failure {fail.as_dict()} uses only unit-adjacent pairs")
    for p in candidates:
        if not g.is_unit(g.mult[p]):
            return p
    return candidates[0]


def restrict_to_n_associative(
    g: FiniteLocalGroupoid, n: int, limit: int = DEFAULT_TUPLE_LIMIT
) -> tuple[FiniteLocalGroupoid, list[tuple[str, str]]]:
    """Greedy deletion of offending pairs; returns the table and the deleted pairs.

    Deleting pairs can only make products undefined, so one pass per order in
    canonical tuple order suffices; the final table is re-checked.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    cur = g
    removed: list[tuple[str, str]] = []
    for m in range(3, n + 1):
        for fail in list(failures(cur, m, limit)):
            again = _failure_for(fail.word, cur)
            while again is not None:
                pair = _choose_pair(cur, again)
                before = set(cur.mult)
                cur = _drop_pair(cur, pair)
                removed.extend(sorted(before - set(cur.mult), key=lambda p: (g.index(p[0]), g.index(p[1]))))
                again = _failure_for(fail.word, cur)
    if not assoc_order(cur, n, limit).ok:
        raise CannotRestrict("greedy restriction did not converge")
    return cur, removed


def failure_associator(g: FiniteLocalGroupoid, fail: AssocFailure) -> AssociatorCertificate | None:
    """Turn two disagreeing bracketings into an associator certificate.

    With values va != vb and vb invertible, the word (va, vb^-1) contracts to
    va*vb^-1 and also expands back through the tuple to (vb, vb^-1) -> unit.
    """
    ta = bracketing_trace(fail.word, fail.bracketing_a, g)
    tb = bracketing_trace(fail.word, fail.bracketing_b, g)
    for (va, vb, tr_a, tr_b) in ((fail.value_a, fail.value_b, ta, tb), (fail.value_b, fail.value_a, tb, ta)):
        vbi = g.inv.get(vb)
        if vbi is None:
            continue
        c = g.product(va, vbi)
        unit = g.product(vb, vbi)
        if c is None or unit is None:
            continue
        word = (va, vbi)
        # appending vb^-1 on the right leaves contraction indices unchanged
        back = MoveTrace(fail.word + (vbi,), tr_a.moves).reversed()
        to_unit = MoveTrace(word, back.moves + tr_b.moves + (Move("contract", 0, vb, vbi, unit),))
        to_arrow = MoveTrace(word, (Move("contract", 0, va, vbi, c),))
        cert = AssociatorCertificate(c, word, to_unit, to_arrow)
        if cert.check(g):
            return cert
    return None
