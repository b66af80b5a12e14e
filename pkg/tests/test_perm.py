import math
import random

import pytest

from cvtcensus.perm import (
    PermGroup,
    closure,
    compose,
    cycles,
    format_cycles,
    identity,
    inverse,
    parse_cycles,
    perm_order,
)


def test_compose_is_left_to_right():
    p = parse_cycles("(0 1)", 3)
    q = parse_cycles("(1 2)", 3)
    # apply p then q: 0 -> 1 -> 2
    assert compose(p, q)[0] == 2


def test_inverse_roundtrip():
    rng = random.Random(7)
    for _ in range(50):
        p = list(range(9))
        rng.shuffle(p)
        p = tuple(p)
        assert compose(p, inverse(p)) == identity(9)


def test_parse_and_format():
    p = parse_cycles("(0 1 2)(3 4)")
    assert p == (1, 2, 0, 4, 3)
    assert format_cycles(p) == "(0 1 2)(3 4)"
    assert parse_cycles("()") == (0,)
    assert format_cycles(identity(5)) == "()"
    with pytest.raises(ValueError):
        parse_cycles("(0 1")
    with pytest.raises(ValueError):
        parse_cycles("(0 1)(1 2)")


def test_perm_order():
    assert perm_order(parse_cycles("(0 1 2)(3 4)")) == 6
    assert perm_order(identity(4)) == 1


def test_closure_s3():
    elems = closure([parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)", 3)])
    assert len(elems) == 6


def test_closure_cap():
    with pytest.raises(ValueError, match="group too large"):
        closure([parse_cycles("(0 1)", 6), parse_cycles("(0 1 2 3 4 5)", 6)], cap=100)


@pytest.mark.parametrize(
    "gens,order",
    [
        (["(0 1)", "(0 1 2 3)"], 24),
        (["(0 1 2)", "(0 1 2 3 4)"], 60),
        (["(0 1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"], 14),
        (["(0 1)", "(2 3)"], 4),
        (["(0 1 2 3 4)", "(1 2 4 3)"], 20),
    ],
)
def test_permgroup_order_matches_closure(gens, order):
    degree = max(max(parse_cycles(g)) for g in gens) + 1
    perms = [parse_cycles(g, degree) for g in gens]
    grp = PermGroup(perms)
    assert grp.order() == order
    assert len(closure(perms)) == order
    assert len(grp.elements()) == order
    assert len(set(grp.elements())) == order


def test_membership():
    grp = PermGroup([parse_cycles("(0 1 2 3 4)", 5), parse_cycles("(1 2 4 3)", 5)])
    assert parse_cycles("(0 1)(2 4)", 5) in grp  # an involution of F20
    assert parse_cycles("(0 1)", 5) not in grp


def test_stabilizer_schreier_gens():
    grp = PermGroup([parse_cycles("(0 1)", 4), parse_cycles("(0 1 2 3)", 4)])
    stab = PermGroup(grp.stabilizer_gens(0), degree=4)
    assert stab.order() == 6
    assert all(g[0] == 0 for g in stab.generators)
    assert grp.stabilizer_order(0) == 6


def test_orbits_and_transversal():
    grp = PermGroup([parse_cycles("(0 1 2)", 6), parse_cycles("(3 4)", 6)])
    assert grp.orbits() == [[0, 1, 2], [3, 4], [5]]
    tr = grp.transversal(0)
    assert set(tr) == {0, 1, 2}
    for pt, rep in tr.items():
        assert rep[0] == pt


def test_uniform_sampling_hits_whole_group():
    grp = PermGroup([parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)", 3)])
    rng = random.Random(0)
    seen = {grp.sample(rng) for _ in range(200)}
    assert len(seen) == 6


def test_random_closures_agree_with_chain_order():
    rng = random.Random(3)
    for _ in range(10):
        degree = rng.randrange(4, 8)
        gens = []
        for _ in range(2):
            p = list(range(degree))
            rng.shuffle(p)
            gens.append(tuple(p))
        grp = PermGroup(gens)
        assert grp.order() == len(closure(gens))
        assert math.prod(len(c) for c in cycles(gens[0])) >= 1
