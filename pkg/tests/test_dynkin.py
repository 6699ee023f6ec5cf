import pytest
from hypothesis import given
from hypothesis import strategies as st

from adefold.dynkin import (
    DiagramError,
    all_diagrams,
    all_subgroups,
    automorphism_group,
    build_diagram,
    cartan_matrix,
    closure,
    compose,
    identity_perm,
    invert,
    is_automorphism,
    parse_type,
    subgroup_from_generators,
)

# |Aut| for each diagram, from the classification of diagram symmetries
AUT_ORDERS = {"A1": 1, "D4": 6, "E6": 2, "E7": 1, "E8": 1}


@pytest.mark.parametrize("d", all_diagrams(8), ids=lambda d: d.label)
def test_automorphism_group_orders(d):
    expected = AUT_ORDERS.get(d.label, 2)
    assert automorphism_group(d).order == expected


@pytest.mark.parametrize("d", all_diagrams(8), ids=lambda d: d.label)
def test_diagram_shape(d):
    assert len(d.edges) == d.rank - 1
    degrees = [d.degree(i) for i in d.nodes]
    assert max(degrees, default=0) <= 3
    assert degrees.count(3) == (1 if d.kind in "DE" else 0)


def test_bourbaki_numbering():
    d4 = build_diagram("D", 4)
    assert d4.neighbours(2) == [1, 3, 4]
    e6 = build_diagram("E", 6)
    assert e6.neighbours(4) == [2, 3, 5]
    assert e6.neighbours(1) == [3]
    d5 = build_diagram("D", 5)
    assert d5.neighbours(3) == [2, 4, 5]


@pytest.mark.parametrize(
    "kind, rank, fragment",
    [("A", 0, "r >= 1"), ("D", 3, "r >= 4"), ("E", 5, "{6, 7, 8}"), ("E", 9, "{6, 7, 8}"), ("F", 4, "kind")],
)
def test_invalid_diagrams_name_the_constraint(kind, rank, fragment):
    with pytest.raises(DiagramError, match=fragment.replace("{", r"\{").replace("}", r"\}")):
        build_diagram(kind, rank)


def test_d4_subgroups():
    g = automorphism_group(build_diagram("D", 4))
    orders = sorted(s.order for s in all_subgroups(g))
    assert orders == [1, 2, 2, 2, 3, 6]


def test_cyclic_subgroup_of_d4():
    g = automorphism_group(build_diagram("D", 4))
    c3 = subgroup_from_generators(g, [(3, 2, 4, 1)])
    assert c3.order == 3
    assert c3.orbit(1) == {1, 3, 4}
    assert c3.orbit(2) == {2}


def test_non_automorphism_rejected():
    d = build_diagram("D", 4)
    g = automorphism_group(d)
    assert not is_automorphism(d, (2, 1, 3, 4))
    with pytest.raises(DiagramError, match="not an automorphism"):
        subgroup_from_generators(g, [(2, 1, 3, 4)])
    with pytest.raises(DiagramError):
        subgroup_from_generators(automorphism_group(build_diagram("A", 3)), [(1, 2)])


def test_cartan_matrix_of_a3():
    assert cartan_matrix(build_diagram("A", 3)) == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))


def test_parse_and_json_roundtrip():
    assert parse_type("E_7") == ("E", 7)
    assert parse_type(" d4") == ("D", 4)
    with pytest.raises(DiagramError):
        parse_type("X")
    d = build_diagram("D", 6)
    assert type(d).from_json(d.to_json()) == d


perms = st.permutations(list(range(1, 6))).map(tuple)


@given(perms, perms, perms)
def test_composition_is_associative_with_inverses(p, q, r):
    assert compose(p, compose(q, r)) == compose(compose(p, q), r)
    assert compose(p, invert(p)) == identity_perm(5)


@pytest.mark.parametrize("d", all_diagrams(8), ids=lambda d: d.label)
def test_group_closed_and_generated(d):
    g = automorphism_group(d)
    assert closure(g.generators, d.rank) == g.elements
    for a in g.elements:
        assert is_automorphism(d, a)
        for b in g.elements:
            assert compose(a, b) in g.elements
