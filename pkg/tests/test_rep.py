import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import FP, a2, random_rep
from quivertree import (
    QQ,
    Quiver,
    Representation,
    RepresentationError,
    direct_sum,
    euler_form,
    ext1_dim,
    hom_basis,
    hom_dim,
    is_exceptional,
    is_indecomposable,
    is_isomorphic,
    kronecker_quiver,
    preprojective,
    projective,
    rank_deficient_arrows,
    reflect_sink,
    reflect_source,
    regular_tree_ball,
    rep_from_json,
    rep_to_json,
    restrict,
    rho_minus,
    simple,
    tau_minus,
)
from quivertree.dynkin import all_orientations, dynkin_quiver, enumerate_indecomposables
from quivertree.fixtures import example3_module
from quivertree.preprojective import simple_against_preprojective
from quivertree.rep import change_field, extend_by_zero, ext_cocycle_basis, is_homomorphism


def test_euler_form_values():
    q = a2()
    assert euler_form(q, {"a": 1}, {"a": 1}) == 1
    k2 = kronecker_quiver(2)
    assert euler_form(k2, {"s": 1, "t": 1}, {"s": 1, "t": 1}) == 0
    k3 = kronecker_quiver(3)
    assert euler_form(k3, {"s": 1}, {"t": 1}) == -3


def test_hom_and_ext_basics():
    q = a2()
    sa = simple(q, "a", FP)
    assert hom_dim(sa, sa) == 1
    assert ext1_dim(sa, sa) == 0
    for n in (1, 2, 3, 4):
        k = kronecker_quiver(n)
        assert ext1_dim(simple(k, "s", FP), simple(k, "t", FP)) == n
        assert ext1_dim(simple(k, "t", FP), simple(k, "s", FP)) == 0


def test_hom_between_bundled_summands_nonzero():
    from quivertree.radiation import analyze_thin_vertex

    a = analyze_thin_vertex(example3_module(), "x")
    small, big = sorted((s.rep for s in a.summands), key=lambda r: r.total_dim)
    assert hom_dim(small, big) >= 1


def test_ext_from_simple_source_to_preprojective():
    host = regular_tree_ball(3, "source", 4)
    for z in ("c.1", "c.1.2.3"):
        d = host.distance("c", z)
        r = simple_against_preprojective(host, "c", z, FP)
        assert r["ext_s_p"] == 1, (z, d, r)
        assert r["hom_s_p"] == 0 and r["hom_p_s"] == 0 and r["ext_p_s"] == 0


def test_ext_from_simple_on_a_line():
    host = regular_tree_ball(2, "source", 4)
    assert simple_against_preprojective(host, "c", "c.1.2", FP)["ext_s_p"] == 1


def test_direct_sum_and_restrict():
    q = a2()
    assert direct_sum([], q, FP).is_zero()
    with pytest.raises(RepresentationError):
        direct_sum([])
    s = direct_sum([simple(q, "a", FP), simple(q, "b", FP)])
    assert s.dims == {"a": 1, "b": 1} and not s.mats["ab"].any()
    p = projective(q, "a", FP)
    assert restrict(p, q.vertices).equals(p)
    assert restrict(simple(q, "a", FP), ["b"]).is_zero()


def test_restrict_bundled_module_away_from_thin_vertex():
    m = example3_module()
    r = restrict(m, [v for v in m.quiver.vertices if v != "x"])
    assert {v: k for v, k in r.dims.items() if k} == {"u": 2, "c": 3, "p": 2, "q": 2}


def test_rejects_bad_shapes():
    with pytest.raises(RepresentationError):
        Representation(a2(), FP, {"a": 1, "b": 1}, {"ab": [[1, 0]]})
    with pytest.raises(RepresentationError):
        Representation(a2(), FP, {"z": 1})


def test_json_round_trip():
    m = example3_module()
    back = rep_from_json(rep_to_json(m))
    assert back.equals(m)


SMALL_QUIVERS = [
    a2(),
    Quiver(["a", "b", "c"], [("ab", "a", "b"), ("cb", "c", "b")]),
    Quiver(["a", "b", "c"], [("ab", "a", "b"), ("bc", "b", "c")]),
    kronecker_quiver(2),
    Quiver(["a", "b", "c", "d"], [("ab", "a", "b"), ("cb", "c", "b"), ("bd", "b", "d")]),
]


@settings(max_examples=200)
@given(st.integers(0, len(SMALL_QUIVERS) - 1), st.integers(0, 2**32))
def test_euler_identity(qi, seed):
    rng = random.Random(seed)
    q = SMALL_QUIVERS[qi]
    m, n = random_rep(q, FP, rng), random_rep(q, FP, rng)
    assert hom_dim(m, n) - ext1_dim(m, n) == euler_form(q, m.dims, n.dims)


@given(st.integers(0, len(SMALL_QUIVERS) - 1), st.integers(0, 2**32))
def test_hom_basis_elements_are_module_maps(qi, seed):
    rng = random.Random(seed)
    q = SMALL_QUIVERS[qi]
    m, n = random_rep(q, FP, rng), random_rep(q, FP, rng)
    for phi in hom_basis(m, n):
        assert is_homomorphism(m, n, phi)


@given(st.integers(0, 2**32))
def test_cocycle_classes_count_matches_ext(seed):
    rng = random.Random(seed)
    q = SMALL_QUIVERS[rng.randrange(len(SMALL_QUIVERS))]
    m, n = random_rep(q, FP, rng), random_rep(q, FP, rng)
    assert len(ext_cocycle_basis(m, n)) == ext1_dim(m, n)


def _successor_closed(q, support, rng):
    keep = {v for v in support if rng.random() < 0.5}
    changed = True
    while changed:
        changed = False
        for a in q.arrows:
            if a.src in keep and a.tgt in support and a.tgt not in keep:
                keep.add(a.tgt)
                changed = True
    return keep


@given(st.sampled_from(["A4", "D4", "D5"]), st.integers(0, 2**32))
def test_exceptional_parts_of_orthogonal_splits(name, seed):
    """A submodule X' of a rigid X with Hom(X', X/X') = 0 has rigid X' and X/X'."""
    rng = random.Random(seed)
    q = rng.choice(all_orientations(name))
    mods = enumerate_indecomposables(q, FP)
    x = direct_sum([rng.choice(mods) for _ in range(rng.randint(1, 2))])
    if ext1_dim(x, x):
        return
    keep = _successor_closed(q, x.support(), rng)
    if not keep or keep == set(x.support()):
        return
    sub = extend_by_zero(restrict(x, keep), q)
    quo = extend_by_zero(restrict(x, [v for v in q.vertices if v not in keep]), q)
    if hom_dim(sub, quo) == 0:
        assert ext1_dim(sub, sub) == 0 and ext1_dim(quo, quo) == 0


@pytest.mark.parametrize("name", ["A3", "A4", "D4", "D5", "E6"])
def test_exceptional_arrows_have_full_rank(name):
    for q in all_orientations(name)[:4]:
        for m in enumerate_indecomposables(q, FP):
            assert is_exceptional(m)
            assert rank_deficient_arrows(m) == []


def test_rank_deficient_arrow_detected():
    q = Quiver(["a", "b"], [("ab", "a", "b")])
    m = Representation(q, FP, {"a": 2, "b": 2}, {"ab": [[1, 0], [0, 0]]})
    assert rank_deficient_arrows(m) == ["ab"]


def test_simple_reflections():
    q = a2()
    assert reflect_source(simple(q, "a", FP), "a").is_zero()
    r = reflect_source(projective(q, "a", FP), "a")
    assert {v: k for v, k in r.dims.items() if k} == {"b": 1}
    assert is_isomorphic(r, simple(r.quiver, "b", FP))


@pytest.mark.parametrize("name", ["A3", "D4", "D5"])
def test_reflection_round_trip(name):
    for q in all_orientations(name)[:6]:
        for v in q.vertices:
            if not (q.is_source(v) and q.neighbors(v)):
                continue
            for m in enumerate_indecomposables(q, FP):
                if m.dims == simple(q, v, FP).dims:
                    continue
                back = reflect_sink(reflect_source(m, v), v)
                assert back.quiver == q
                assert is_isomorphic(back, m)


def test_bipartite_reflection_identities():
    host = regular_tree_ball(3, "sink", 4)
    s = simple(host, "c", FP)
    # the thin projective P(c, 1) on the opposite quiver, where c is a source
    r = rho_minus(s)
    assert r.quiver == host.opposite()
    assert is_isomorphic(r, preprojective(host.opposite(), "c", 1, FP))
    assert is_isomorphic(tau_minus(s), preprojective(host, "c", 2, FP))
    opp = host.opposite()
    assert is_isomorphic(rho_minus(preprojective(opp, "c", 3, FP)), preprojective(host, "c", 4, FP))


def test_field_consistency_on_zero_one_modules():
    for q in all_orientations("D4")[:3]:
        mods = enumerate_indecomposables(q, FP)
        for m in mods[:6]:
            if not np.all([np.isin(mat, [0, 1]).all() for mat in m.mats.values()]):
                continue
            mq = change_field(m, QQ)
            for n in mods[:6]:
                nq = change_field(n, QQ)
                assert hom_dim(m, n) == hom_dim(mq, nq)
                assert ext1_dim(m, n) == ext1_dim(mq, nq)
