"""Group utilities checked against sympy as an independent oracle."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group
from sympy.matrices.normalforms import invariant_factors

from locgpd import _groups as grp
from locgpd._groups import GroupPresentation

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def sympy_invariants(rows, n_cols):
    m = Matrix(rows)
    facs = [abs(int(f)) for f in invariant_factors(m, domain=ZZ)]
    nonzero = [f for f in facs if f != 0]
    return tuple(f for f in nonzero if f > 1), n_cols - len(nonzero)


@given(matrices)
def test_cokernel_matches_sympy(rows):
    n = len(rows[0])
    inv = grp.cokernel_invariants(rows, n)
    assert (inv.torsion, inv.free_rank) == sympy_invariants(rows, n)


@given(matrices)
def test_snf_diagonal_divides(rows):
    diag, *_ = grp.smith_normal_form(rows, len(rows[0]))
    assert all(d > 0 for d in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))


@given(matrices)
def test_integer_kernel_is_kernel(rows):
    n = len(rows[0])
    basis, coords = grp.integer_kernel(rows, n)
    rank = Matrix(rows).rank()
    assert len(basis) == n - rank
    for k, v in enumerate(basis):
        assert all(sum(r[i] * v[i] for i in range(n)) == 0 for r in rows)
        assert coords(v) == [int(j == k) for j in range(len(basis))]


letters = st.lists(st.tuples(st.sampled_from("ab"), st.sampled_from((1, -1))), max_size=12)


@given(letters)
def test_free_reduction_is_idempotent_and_inverts(w):
    r = grp.free_reduce(w)
    assert grp.free_reduce(r) == r
    assert grp.free_reduce(tuple(w) + grp.invert(w)) == ()
    assert all(not (x[0] == y[0] and x[1] == -y[1]) for x, y in zip(r, r[1:]))


def _word(spec):
    """'aab' -> letters; capitals are inverses."""
    return tuple((c.lower(), 1 if c.islower() else -1) for c in spec)


PRESENTATIONS = {
    "Z3": ("a", ["aaa"]),
    "S3": ("ab", ["aaa", "bb", "abab"]),
    "Q8": ("ab", ["aaaa", "aaBB", "abaB"]),
    "D5": ("ab", ["aaaaa", "bb", "abab"]),
    "Z2xZ4": ("ab", ["aa", "bbbb", "abAB"]),
    "A4": ("ab", ["aa", "bbb", "ababab"]),
    "trivial": ("ab", ["a", "b"]),
}


@pytest.mark.parametrize("name", sorted(PRESENTATIONS))
def test_coset_enumeration_order_matches_sympy(name):
    gens, rels = PRESENTATIONS[name]
    p = GroupPresentation(tuple(gens), tuple(_word(r) for r in rels))
    fg = grp.finite_group(p, 1000)
    F, *syms = free_group(" ".join(gens))
    table = dict(zip(gens, syms))
    sym_rels = []
    for r in rels:
        e = F.identity
        for c in r:
            e = e * (table[c.lower()] if c.islower() else table[c.lower()] ** -1)
        sym_rels.append(e)
    assert fg is not None and fg.order == FpGroup(F, sym_rels).order()


def test_finite_group_arithmetic_is_a_group():
    p = GroupPresentation(("a", "b"), tuple(_word(r) for r in PRESENTATIONS["S3"][1]))
    g = grp.finite_group(p, 100)
    n = g.order
    for i in range(n):
        assert g.multiply(i, g.inverse(i)) == 0
        for j in range(n):
            for k in range(n):
                assert g.multiply(g.multiply(i, j), k) == g.multiply(i, g.multiply(j, k))
    assert not g.is_abelian()


def test_infinite_presentation_hits_limit():
    p = GroupPresentation(("a", "b"), (_word("abAB"),))
    assert grp.finite_group(p, 200) is None
    assert grp.abelianization(p) == grp.AbelianInvariants((), 2)


@settings(max_examples=25)
@given(st.integers(1, 12), st.integers(1, 12))
def test_abelian_product_invariants(m, n):
    p = GroupPresentation(("a", "b"), (_word("a" * m), _word("b" * n), _word("abAB")))
    inv = grp.abelianization(p)
    assert inv.order == m * n
    assert grp.finite_group(p, 500).order == m * n
