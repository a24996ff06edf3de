import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import FP
from quivertree import (
    RepresentationError,
    ext1_dim,
    hom_dim,
    is_indecomposable,
    is_isomorphic,
    is_radiation,
    preprojective,
    regular_tree_ball,
    simple,
)
from quivertree.basis import is_tree_basis
from quivertree.preprojective import (
    ar_dimension_check,
    default_origin,
    grow_preprojective_tree,
    preprojective_radiation,
    preprojective_via_radiation,
    shells,
    split_at_origin,
)
from quivertree.radiation import isomorphic_trees


def shell_oracle(n, t):
    """Dimensions per distance shell of P(x, t) on the n-regular tree, by reflecting shell counts."""
    if t % 2 == 0:
        f, src = [1], 1
    else:
        f, src = [1, 1], 0
    for _ in range(t - t % 2):
        g = list(f) + [0, 0]
        out = list(g)
        for d in range(len(g)):
            if d % 2 == src:
                down = g[d + 1] if d + 1 < len(g) else 0
                out[d] = (g[d - 1] if d else 0) + (n - 1 if d else n) * down - g[d]
        while out and out[-1] == 0:
            out.pop()
        f, src = out, 1 - src
    return f


def host_for(n, t, extra=0):
    return regular_tree_ball(n, "sink" if t % 2 == 0 else "source", max(t, 1) + extra)


def test_zero_is_simple():
    host = host_for(3, 0, 1)
    assert preprojective(host, "c", 0, FP).equals(simple(host, "c", FP))


def test_displayed_shells():
    host = host_for(3, 3)
    assert shells(host, preprojective(host, "c", 3, FP), "c") == [2, 3, 1, 1]
    host = host_for(3, 4)
    assert shells(host, preprojective(host, "c", 4, FP), "c") == [7, 3, 4, 1, 1]


@pytest.mark.parametrize("n,t", [(n, t) for n in (2, 3, 4) for t in range(6) if n ** t <= 300])
def test_shells_match_oracle(n, t):
    host = host_for(n, t)
    p = preprojective(host, "c", t, FP)
    assert shells(host, p, "c") == shell_oracle(n, t)
    dist = host.distances_from("c")
    assert p.support() == {v for v, d in dist.items() if d <= t}
    assert all(p.dims[v] == 1 for v, d in dist.items() if d in (t - 1, t))


def test_parity_errors():
    host = regular_tree_ball(3, "source", 2)
    with pytest.raises(RepresentationError):
        preprojective(host, "c", 0, FP)
    with pytest.raises(RepresentationError):
        preprojective(host, "c", -1, FP)


@pytest.mark.parametrize("n,t", [(3, 0), (3, 1), (3, 2), (2, 0), (2, 1), (2, 2), (2, 3), (4, 1)])
def test_ar_dimension_additivity(n, t):
    host = regular_tree_ball(n, "sink" if t % 2 == 0 else "source", t + 3)
    lhs, rhs = ar_dimension_check(host, "c", t, FP)
    assert lhs == rhs


@pytest.mark.parametrize("n,t", [(2, 3), (3, 1), (3, 2), (3, 3), (3, 4), (4, 3)])
def test_grown_tree_agrees_with_reflections(n, t):
    host = host_for(n, t)
    m = preprojective(host, "c", t, FP)
    grown, tree = preprojective_via_radiation(host, "c", t, field=FP)
    assert grown.dims == m.dims
    assert is_isomorphic(grown, m)
    assert len(tree.edges) == m.total_dim - 1
    origin = default_origin(host, "c", t)
    _, basis, rtree = preprojective_radiation(host, "c", t, field=FP)
    assert is_tree_basis(m, basis)
    assert rtree.nodes[rtree.root] == origin
    assert isomorphic_trees(rtree, tree.radiation_tree())


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_radiation_at_outer_shells(t):
    host = host_for(3, t)
    p = preprojective(host, "c", t, FP)
    dist = host.distances_from("c")
    for y, d in dist.items():
        if d in (t - 1, t):
            assert is_radiation(p, y)
    assert is_indecomposable(p)


def test_split_base_case():
    host = regular_tree_ball(3, "source", 3)
    rep = split_at_origin(host, "c", "c", FP)
    assert rep.t == 1
    assert sorted(rep.expected) == [(z, 0) for z in sorted(host.neighbors("c"))]
    assert rep.ok


def test_split_at_distance_three():
    host = regular_tree_ball(3, "sink", 4)
    y = "c.1.2.3"
    rep = split_at_origin(host, "c", y, FP)
    assert rep.t == 4
    assert sorted(a for _, a in rep.expected) == [0, 0, 1, 2, 3, 3]
    assert rep.matched and rep.pairwise_orthogonal_bricks
    for z, a in rep.expected:
        assert host.distance(y, z) - 1 == rep.t - host.distance("c", z) == a


def test_ext_from_simples_outside_support():
    t = 3
    host = regular_tree_ball(3, "source", t + 2)
    p = preprojective(host, "c", t, FP)
    dist = host.distances_from("c")
    for z, d in dist.items():
        if p.dims[z]:
            continue
        e = ext1_dim(simple(host, z, FP), p)
        assert e == (1 if d == t + 1 else 0), (z, d, e)


def test_hom_into_preprojective_respects_support():
    host = regular_tree_ball(3, "source", 4)
    target = preprojective(host, "c", 3, FP)
    dist = host.distances_from("c")
    family = []
    for z, d in dist.items():
        for s in range(0, 4):
            try:
                x = preprojective(host, z, s, FP)
            except RepresentationError:
                continue
            if host.distance("c", z) + s <= 4 and all(dist[v] < 4 + 1 for v in x.support()):
                family.append(x)
    assert family
    for x in family:
        if hom_dim(x, target):
            assert x.support() <= target.support()
