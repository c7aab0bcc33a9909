import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CORPUS, TOTAL, load
from locgpd import core, words
from locgpd.core import Arrow, FiniteLocalGroupoid


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_tables_validate(name):
    g = load(name)
    report = core.validate(g)
    assert report.ok, report.as_dict()
    assert g.is_total() == (name in TOTAL)


@pytest.mark.parametrize("name", CORPUS)
def test_json_round_trip_is_exact(name):
    g = load(name)
    text = core.dumps(g)
    again = core.loads(text)
    assert core.dumps(again) == text
    assert again.mult == g.mult and again.inv == g.inv and again.objects == g.objects


def test_file_round_trip(tmp_path):
    g = core.interval_group(2)
    core.dump(g, tmp_path / "g.json")
    assert core.load(tmp_path / "g.json").mult == g.mult


@given(st.integers(1, 9))
def test_cyclic_tables_are_groups(n):
    g = core.cyclic(n)
    assert g.is_total() and core.validate(g).ok
    assert core.validate(g).three_associative
    assert len(g.mult) == n * n


@given(st.integers(0, 6))
def test_interval_products_stay_in_range(k):
    g = core.interval_group(k)
    assert core.validate(g).ok
    # pairs (a, b) with |a + b| <= k, counted directly
    expected = sum(1 for a in range(-k, k + 1) for b in range(-k, k + 1) if abs(a + b) <= k)
    assert len(g.mult) == expected
    assert g.is_total() == (k == 0)


def test_interval_modulus_needs_room():
    with pytest.raises(core.BadParams):
        core.interval_group(2, modulus=4)
    assert core.interval_residue("-2", 5) == 3


def test_pair_restriction_tree_shape():
    g = core.make_example("pair_restriction", graph="path", n=4)
    assert len(g.objects) == 4
    assert len(g.arrows) == 4 + 2 * 3
    # only unit products and inverse pairs survive on a path
    non_unit = [(a, b) for (a, b) in g.mult if not g.is_unit_adjacent((a, b))]
    assert all(g.is_unit(g.mult[p]) for p in non_unit)


def test_complete_pair_groupoid_is_total():
    g = core.make_example("pair_restriction", graph="complete", n=3)
    assert g.is_total() and len(g.arrows) == 9


@pytest.mark.parametrize(
    "kind,params",
    [("cyclic", {}), ("nope", {"n": 3}), ("pair_restriction", {"graph": "path"})],
)
def test_bad_example_params(kind, params):
    with pytest.raises(core.BadParams):
        core.make_example(kind, **params)


def test_malformed_tables_are_rejected():
    a = [Arrow("e", "x", "x")]
    with pytest.raises(core.MalformedTable):
        FiniteLocalGroupoid(["x", "x"], a, {"x": "e"}, {}, {})
    with pytest.raises(core.MalformedTable):
        FiniteLocalGroupoid(["x"], a + [Arrow("f", "x", "y")], {"x": "e"}, {}, {})
    with pytest.raises(core.MalformedTable):
        FiniteLocalGroupoid(["x"], a, {"x": "e"}, {("e", "q"): "e"}, {})
    with pytest.raises(core.MalformedTable):
        FiniteLocalGroupoid(["x", "y"], a, {"x": "e"}, {}, {})


def test_validate_reports_broken_unit_law():
    g = core.cyclic(3)
    mult = dict(g.mult)
    mult[("1", "0")] = "2"
    bad = FiniteLocalGroupoid(g.objects, g.arrows.values(), g.units, mult, g.inv)
    rep = core.validate(bad)
    assert not rep.ok and rep.failures["unit_laws"]


def test_restrict_keeps_axioms_and_rejects_unit_pairs():
    g = core.cyclic(4)
    keep = [p for p in g.mult if p not in {("1", "3"), ("3", "1")}]
    # dropping an inverse pair needs the arrows gone from V as well
    with pytest.raises(core.RestrictionError):
        core.restrict(g, keep)
    small = core.restrict(g, [p for p in g.mult if p != ("2", "3")])
    assert core.validate(small).ok and ("2", "3") not in small.mult
    with pytest.raises(core.UnitPairRemoved):
        core.restrict(g, [p for p in g.mult if p != ("1", "0")])
    with pytest.raises(core.RestrictionError):
        core.restrict(g, list(g.mult) + [("x", "y")])


def test_three_assoc_witness_on_cover_grid():
    g = load("cover_grid")
    a, b, c, left, right = core.first_three_assoc_failure(g)
    ab, bc = g.product(a, b), g.product(b, c)
    assert g.product(ab, c) == left and g.product(a, bc) == right and left != right


def test_inversional_and_generation():
    g = core.interval_group(2)
    rep = core.is_inversional(g)
    assert rep and not rep.unreachable
    assert core.generates(g, ["0", "1", "-1"])
    with pytest.raises(ValueError):
        core.generates(g, ["1", "-1"])
    assert not core.generates(g, ["0"])
    closure = core.product_closure(g, ["1"])
    assert set(closure) == {"1", "2"}
    assert core.evaluate_bracketing(g, closure["2"]) == "2"


def test_tetrahedron_table_is_not_inversional():
    g = load("tetrahedron")
    assert not core.is_inversional(g)


def test_isotropy_and_components():
    g = load("tree4")
    assert len(g.components()) == 1
    iso = g.isotropy("v0")
    assert iso.objects == ("v0",) and len(iso.arrows) == 1
    two = core.pair_restriction([("a", "b"), ("c", "d")])
    assert sorted(map(sorted, two.components())) == [["a", "b"], ["c", "d"]]


def test_vv_pairs_are_reported_not_failed():
    g = load("interval1")
    rep = core.validate(g)
    assert rep.ok and rep.vv_outside_u
    assert json.loads(json.dumps(rep.as_dict()))["ok"] is True


def test_unit_adjacent_restriction_of_z3_is_not_inversional():
    g = core.cyclic(3)
    keep = [p for p in g.mult if g.is_unit_adjacent(p)]
    # 1 and 2 stay mutually inverse only if 1*2 stays defined
    with pytest.raises(core.RestrictionError):
        core.restrict(g, keep)
    h = core.restrict(g, keep, ["0"])
    assert core.validate(h).ok
    with pytest.raises(words.NotInversional):
        words.ac_build(h)
