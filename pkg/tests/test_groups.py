"""Finite abelian groups: subgroup lattices, duals, presentations, Burnside."""

import pytest

from efgc.errors import GroupMismatch, GroupTooLarge, NotASubgroup
from efgc.groups import (
    BurnsideElement,
    FinAbGroup,
    annihilator,
    burnside_mul,
    burnside_unit,
    full_subgroup,
    presentations_enumerate,
    quotient,
    smith_presentation,
    subgroup_generated,
    subgroup_intersection,
    subgroup_sum,
    subgroups_all,
    trivial_subgroup,
)

SMALL_GROUPS = [
    (),
    (2,),
    (3,),
    (4,),
    (2, 2),
    (6,),
    (8,),
    (2, 4),
    (9,),
    (3, 3),
    (2, 2, 2),
    (12,),
    (2, 6),
    (4, 4),
    (2, 2, 4),
    (36,),
    (6, 6),
]


def test_subgroups_all_examples():
    assert len(subgroups_all(FinAbGroup(()))) == 1
    assert len(subgroups_all(FinAbGroup((2, 2)))) == 5
    assert sorted(s.order for s in subgroups_all(FinAbGroup((4,)))) == [1, 2, 4]


def test_subgroups_all_ordering_is_canonical():
    subs = subgroups_all(FinAbGroup((2, 2)))
    keys = [s.sort_key() for s in subs]
    assert keys == sorted(keys)
    assert subs[0].order == 1 and subs[-1].order == 4


def test_subgroups_all_bound():
    with pytest.raises(GroupTooLarge):
        subgroups_all(FinAbGroup((128,)))


def test_annihilator_examples():
    a = FinAbGroup((4,))
    assert annihilator(full_subgroup(a)) == trivial_subgroup(a)
    assert annihilator(trivial_subgroup(a)) == full_subgroup(a)
    b = subgroup_generated(a, [(2,)])
    assert sorted(annihilator(b).elements) == [(0,), (2,)]


@pytest.mark.parametrize("factors", SMALL_GROUPS, ids=str)
def test_annihilator_order_reversing_and_involutive(factors):
    group = FinAbGroup(factors)
    if group.order > 36:
        pytest.skip("spec bounds the property at order 36")
    subs = subgroups_all(group)
    for b in subs:
        ann = annihilator(b)
        assert ann.order * b.order == group.order
        assert annihilator(ann) == b
        for c in subs:
            if b.issubset(c):
                assert annihilator(c).issubset(ann)


def test_quotient_examples():
    a = FinAbGroup((4,))
    u = full_subgroup(a)
    v = subgroup_generated(a, [(2,)])
    assert quotient(u, u).group.factors == ()
    assert quotient(u, trivial_subgroup(a)).group.factors == (4,)
    assert quotient(u, v).group.factors == (2,)
    with pytest.raises(NotASubgroup):
        quotient(v, u)


def test_quotient_projection_section_consistency():
    a = FinAbGroup((4, 2))
    u = full_subgroup(a)
    v = subgroup_generated(a, [(2, 0)])
    q = quotient(u, v)
    assert q.group.order == 4
    for e in a.elements():
        coords = q.project(e)
        rep = q.section(coords)
        # e and its representative lie in the same coset of V
        diff = a.add(e, a.neg(rep))
        assert diff in v.elements


def test_smith_presentation_examples():
    g6 = FinAbGroup((6,))
    p = smith_presentation(full_subgroup(g6))
    assert p.orders() == (6,)

    g22 = FinAbGroup((2, 2))
    p = smith_presentation(full_subgroup(g22))
    assert sorted(p.orders()) == [2, 2]

    g42 = FinAbGroup((4, 2))
    u = subgroup_generated(g42, [(2, 1)])
    p = smith_presentation(u)
    assert p.elements == ((2, 1),) and p.orders() == (2,)


def test_presentations_enumerate_examples():
    g2 = FinAbGroup((2,))
    assert len(presentations_enumerate(full_subgroup(g2))) == 1
    g3 = FinAbGroup((3,))
    ps = presentations_enumerate(full_subgroup(g3))
    assert sorted(p.elements for p in ps) == [((1,),), ((2,),)]
    g22 = FinAbGroup((2, 2))
    # unordered independent pairs from the three involutions
    assert len(presentations_enumerate(full_subgroup(g22))) == 3
    with pytest.raises(GroupTooLarge):
        presentations_enumerate(full_subgroup(FinAbGroup((5, 5))))


@pytest.mark.parametrize("factors", [(2,), (4,), (2, 2), (6,), (8,), (2, 4), (12,), (2, 2, 2)], ids=str)
def test_every_presentation_is_an_isomorphism_witness(factors):
    group = FinAbGroup(factors)
    for u in subgroups_all(group):
        if u.order > 16:
            continue
        found = [smith_presentation(u)] + presentations_enumerate(u, limit=50)
        for p in found:
            prod = 1
            for e in p.elements:
                assert any(e)
                prod *= group.order_of(e)
            assert prod == u.order
            assert subgroup_generated(group, set(p.elements)) == u


def test_burnside_examples():
    a = FinAbGroup((2,))
    one = burnside_unit(a)
    z = BurnsideElement.basis(a, trivial_subgroup(a))
    assert burnside_mul(one, z) == z
    assert burnside_mul(z, z) == z.scale(2)

    a22 = FinAbGroup((2, 2))
    b1 = subgroup_generated(a22, [(1, 0)])
    b2 = subgroup_generated(a22, [(0, 1)])
    prod = burnside_mul(
        BurnsideElement.basis(a22, b1), BurnsideElement.basis(a22, b2)
    )
    assert prod == BurnsideElement.basis(a22, trivial_subgroup(a22))


def test_burnside_mismatch():
    with pytest.raises(GroupMismatch):
        burnside_mul(
            burnside_unit(FinAbGroup((2,))), burnside_unit(FinAbGroup((3,)))
        )


@pytest.mark.parametrize("factors", [(2,), (3,), (4,), (2, 2), (6,), (8,), (2, 4), (2, 2, 2), (16,)], ids=str)
def test_burnside_commutative_associative_unital(factors):
    group = FinAbGroup(factors)
    subs = subgroups_all(group)
    basis = [BurnsideElement.basis(group, s) for s in subs]
    one = burnside_unit(group)
    for z in basis:
        assert burnside_mul(one, z) == z
    for z in basis:
        for w in basis:
            assert burnside_mul(z, w) == burnside_mul(w, z)
    for z in basis:
        for w in basis:
            for y in basis:
                assert burnside_mul(burnside_mul(z, w), y) == burnside_mul(
                    z, burnside_mul(w, y)
                )


def test_subgroup_sum_intersection_lattice():
    group = FinAbGroup((4, 2))
    subs = subgroups_all(group)
    for a in subs:
        for b in subs:
            s = subgroup_sum(a, b)
            i = subgroup_intersection(a, b)
            assert a.issubset(s) and b.issubset(s)
            assert i.issubset(a) and i.issubset(b)
            # |A+B| * |A&B| = |A| * |B| for abelian groups
            assert s.order * i.order == a.order * b.order
