import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from conftest import CORPUS, load
from locgpd import core, homotopy, nerve
from locgpd._groups import AbelianInvariants
from locgpd.homotopy import FreeWord, Gamma2Elt


def oracle_h1(g, root):
    """H1 of the normalized nerve chains, assembled straight from the table."""
    comp = next(c for c in g.components() if root in c)
    objs = list(comp)
    edges = [a for a in g.arrows if g.src(a) in comp and not g.is_unit(a)]
    col = {a: i for i, a in enumerate(edges)}
    if not edges:
        return AbelianInvariants((), 0)
    d1 = Matrix.zeros(len(objs), len(edges))
    for a, j in col.items():
        d1[objs.index(g.tgt(a)), j] += 1
        d1[objs.index(g.src(a)), j] -= 1
    rows = []
    for (a, b), ab in g.mult.items():
        if a in col and b in col:
            row = [0] * len(edges)
            row[col[b]] += 1
            row[col[a]] += 1
            if ab in col:
                row[col[ab]] -= 1
            rows.append(row)
    rank1 = d1.rank()
    if not rows:
        return AbelianInvariants((), len(edges) - rank1)
    d2 = Matrix(rows)
    facs = [abs(int(f)) for f in invariant_factors(d2, domain=ZZ) if f != 0]
    return AbelianInvariants(tuple(f for f in facs if f > 1), len(edges) - rank1 - len(facs))


EXPECTED_H1 = {
    "z3": "Z/3",
    "z4": "Z/4",
    "complete3": "0",
    "tree4": "0",
    "cycle5": "Z",
    "interval1": "Z",
    "interval1_mod5": "Z",
    "interval2": "Z",
    "cover_grid": None,
    "tetrahedron": None,
}


@pytest.mark.parametrize("name", CORPUS)
def test_h1_three_routes(name):
    g = load(name)
    X = nerve.build_nerve(g, 2)
    for comp in g.components():
        x = comp[0]
        a = homotopy.h1(homotopy.pi1_presentation(X, x))
        b = homotopy.chain_h1(X, x)
        c = oracle_h1(g, x)
        assert a == b == c
    if EXPECTED_H1[name] is not None:
        assert str(homotopy.chain_h1(X)) == EXPECTED_H1[name]


def test_free_word_composition_and_reduction():
    X = nerve.build_nerve(core.interval_group(1), 2)
    q = homotopy.Quiver.of(X)
    one = FreeWord.edge(q, ("1",))
    w = one * one.inverse()
    assert len(w) == 2 and homotopy.reduce(q, w).is_identity()
    unit = FreeWord.edge(q, ("0",))
    assert homotopy.reduce(q, unit * one).letters == ((("1",), 1),)
    with pytest.raises(homotopy.IllFormedFreeWord):
        FreeWord.make(q, ())


def test_free_word_needs_matching_ends():
    X = nerve.build_nerve(load("tree4"), 2)
    q = homotopy.Quiver.of(X)
    a = FreeWord.edge(q, ("v1<-v0",))
    with pytest.raises(homotopy.IllFormedFreeWord):
        a * a
    assert (FreeWord.edge(q, ("v2<-v1",)) * a).src == "v0"


def test_boundary_of_pair_simplex():
    g = core.cyclic(3)
    X = nerve.build_nerve(g, 2)
    w = homotopy.boundary2(X, ("1", "2"))
    assert w.letters == ((("1",), 1), (("2",), 1), (("0",), -1)) or w.letters == ((("1",), 1), (("2",), 1))
    raw = homotopy.boundary2(X, ("1", "1"), reduced=False)
    assert raw.letters == ((("1",), 1), (("1",), 1), (("2",), -1))


def test_five_cycle_quiver_has_free_fundamental_group():
    vs = list(range(5))
    edges = {f"e{i}": (i, (i + 1) % 5) for i in range(5)}
    X = homotopy.simplicial_set(vs, edges)
    p = homotopy.pi1_presentation(X, 0)
    assert len(p.generators) == 1 and not p.relators
    assert homotopy.h1(p) == AbelianInvariants((), 1) == homotopy.chain_h1(X, 0)


def test_filled_triangle_kills_the_loop():
    # vertices (v0, v1, v2) = (2, 1, 0); each edge runs from its d0 end to its d1 end
    edges = {"a": (0, 1), "b": (1, 2), "c": (0, 2)}
    X = homotopy.simplicial_set([0, 1, 2], edges, {"t": ("a", "c", "b")})
    assert homotopy.h1(homotopy.pi1_presentation(X, 0)).is_trivial
    assert homotopy.chain_h1(X, 0).is_trivial


def test_missing_basepoint():
    X = nerve.build_nerve(core.cyclic(2), 2)
    with pytest.raises(homotopy.DisconnectedFromBasepoint):
        homotopy.pi1_presentation(X, "nowhere")


def _random_path(q, start, rng, length):
    """A random free word ending at ``start`` (it is read right to left)."""
    letters, at = [], start
    for _ in range(length):
        options = [(e, 1) for e, (s, t) in q.edges.items() if s == at] + [
            (e, -1) for e, (s, t) in q.edges.items() if t == at
        ]
        e, k = rng.choice(options)
        letters.append((e, k))
        at = q.t(e) if k > 0 else q.s(e)
    # letters walk away from start; as a word from the far end back to start
    inv = [(e, -k) for e, k in letters]
    return FreeWord.make(q, inv, at=start) if inv else FreeWord((), start, start)


@pytest.mark.parametrize("name", ["z3", "interval2", "cycle5", "cover_grid"])
@settings(max_examples=10)
@given(seed=st.integers(0, 10_000))
def test_delta_composite_is_trivial_with_conjugation(name, seed):
    g = load(name)
    X = nerve.build_nerve(g, 3)
    q = homotopy.Quiver.of(X)
    rng = random.Random(seed)
    tau = rng.choice(X.levels[3])
    v = homotopy.base_vertex(X, tau, 3)
    w = _random_path(q, v, rng, rng.randint(0, 3)).inverse()
    sigma = rng.choice(X.levels[2])
    path = _random_path(q, homotopy.base_vertex(X, sigma, 2), rng, 2).inverse()
    if path.tgt != w.tgt:
        path = FreeWord((), path.src, path.src)
        xi = Gamma2Elt(w.tgt)
    else:
        xi = Gamma2Elt.gen(X, path, sigma)
    image = homotopy.delta2(X, homotopy.delta3(X, xi, w, tau))
    assert image.is_identity()


def test_gamma_generator_needs_base_vertex():
    X = nerve.build_nerve(load("tree4"), 2)
    q = homotopy.Quiver.of(X)
    sigma = ("v1<-v0", "v0<-v1")
    assert homotopy.base_vertex(X, sigma, 2) == "v1"
    with pytest.raises(homotopy.IllFormedFreeWord):
        Gamma2Elt.gen(X, FreeWord((), "v0", "v0"), sigma)
    back = FreeWord.edge(q, ("v0<-v1",))
    elt = Gamma2Elt.gen(X, back, sigma)
    assert elt.basepoint == "v0"
    assert homotopy.delta2(X, elt * elt.inverse()).is_identity()


@pytest.mark.parametrize("name", [n for n in CORPUS if n != "tetrahedron"])
def test_completion_matches_fundamental_group(name):
    rep = homotopy.ac_vs_pi1(load(name), coset_limit=2000)
    assert rep.ok, rep.as_dict()


@pytest.mark.parametrize("name", ["z3", "z4", "interval1", "interval2", "tree4", "cycle5", "complete3"])
def test_abelianized_monodromy_agrees(name):
    rep = homotopy.simplicial_monodromy_ab(load(name))
    assert rep.label == "abelianized"
    assert rep.agrees, rep.as_dict()
    assert rep.as_dict()["conjecture_evidence"] is None


def test_monodromy_kernel_of_z3():
    rep = homotopy.simplicial_monodromy_ab(core.cyclic(3))
    assert str(rep.kernel_h1) == "Z/3"


def test_image_groupoid_of_group_is_trivial():
    u = homotopy.image_groupoid(core.cyclic(4))
    assert len(u.arrows) == 1 and core.validate(u).ok
    u = homotopy.image_groupoid(load("tree4"))
    assert len(u.arrows) == len(load("tree4").arrows)
