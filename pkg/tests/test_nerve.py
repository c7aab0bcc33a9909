from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CORPUS, TOTAL, load
from locgpd import assoc, core, nerve


def brute_simplices(g, m):
    """m-tuples whose bracketings are all defined and agree, via assoc.evaluate."""
    out = []
    for w in product(g.arrows, repeat=m):
        if any(g.src(w[i]) != g.tgt(w[i + 1]) for i in range(m - 1)):
            continue
        vals = [assoc.evaluate(w, b, g) for b in assoc.bracketings(m)]
        if None not in vals and len(set(vals)) == 1:
            out.append(w)
    return out


@pytest.mark.parametrize("name", ["z3", "interval1", "interval2", "tree4", "cover_grid"])
def test_levels_match_bracketing_oracle(name):
    g = load(name)
    X = nerve.build_nerve(g, 3)
    for m in (1, 2, 3):
        assert set(X.levels[m]) == set(brute_simplices(g, m)), m


@given(st.integers(1, 5), st.integers(0, 3))
def test_group_nerve_sizes(n, m):
    X = nerve.build_nerve(core.cyclic(n), m)
    assert X.sizes() == [1] + [n**j for j in range(1, m + 1)]


def test_pair_groupoid_nerve_sizes():
    g = core.make_example("pair_restriction", graph="complete", n=3)
    assert nerve.build_nerve(g, 3).sizes() == [3, 9, 27, 81]


@pytest.mark.parametrize("name", CORPUS)
def test_simplicial_identities_hold(name):
    X = nerve.build_nerve(load(name), 3)
    rep = nerve.check_simplicial_identities(X)
    assert rep.ok, rep.witnesses


@pytest.mark.parametrize("name", CORPUS)
def test_inner_two_horns_are_missing_products(name):
    g = load(name)
    X = nerve.build_nerve(g, 2)
    inner = next(r for r in nerve.horn_check(X, 2) if r.index == 1)
    composable = sum(1 for a in g.arrows for b in g.arrows_into(g.src(a)))
    assert inner.horns == composable
    assert inner.unfillable == composable - len(g.mult)


@pytest.mark.parametrize("name", CORPUS)
def test_kan_up_to_three_iff_total(name):
    g = load(name)
    reports = nerve.horn_check(nerve.build_nerve(g, 3), 3)
    assert (nerve.unfillable_total(reports) == 0) == (name in TOTAL)


def test_interval_one_horn_counts():
    # hand count: the inner horns (1,1) and (-1,-1) have no filler, and each
    # outer horn at dimension 2 misses exactly two more
    g = load("interval1")
    reports = nerve.horn_check(nerve.build_nerve(g, 3), 3)
    by = {(r.dimension, r.index): r.unfillable for r in reports}
    assert by[(2, 1)] == 2
    assert sum(v for (d, _), v in by.items() if d == 2) == 6
    assert sum(v for (d, _), v in by.items() if d == 3) == 0


def test_horn_report_serializes():
    g = load("interval1")
    rep = nerve.horn_check(nerve.build_nerve(g, 2), 2)[1]
    d = rep.as_dict()
    assert d["unfillable"] == len(d["witnesses"]) == 2


def test_vertices_of_simplex():
    g = load("complete3")
    X = nerve.build_nerve(g, 2)
    s = ("v2<-v1", "v1<-v0")
    assert X.vertices_of(s, 2) == ("v2", "v1", "v0")


def test_dimension_guards():
    with pytest.raises(assoc.SearchSpaceTooLarge):
        nerve.build_nerve(core.cyclic(2), nerve.MAX_DIM + 1)
    with pytest.raises(assoc.SearchSpaceTooLarge):
        nerve.build_nerve(core.cyclic(6), 4, level_limit=100)
    with pytest.raises(ValueError):
        nerve.horn_check(nerve.build_nerve(core.cyclic(2), 2), 3)
