import numpy as np
import pytest
from scipy.sparse import csr_array

from conftest import FP
from quivertree import (
    KroneckerRep,
    ResourceLimitError,
    dim_recursion_oracle,
    hom_dim,
    is_exceptional,
    is_indecomposable,
    is_isomorphic,
    kron_preinjective,
    kron_preprojective,
    preprojective,
    projective,
    push_down,
    regular_tree_ball,
    simple,
)
from quivertree.kronecker import end_dim, is_exceptional_kron, kron_is_tree_basis, push_down_basis, self_ext_dim, sink_reflection
from quivertree.basis import standard_basis
from quivertree.rep import rank_deficient_arrows


def test_oracle_values():
    assert dim_recursion_oracle(3, 0) == (0, 1)
    assert dim_recursion_oracle(3, 1) == (1, 3)
    assert dim_recursion_oracle(3, 2) == (3, 8)
    assert [dim_recursion_oracle(2, t) for t in range(4)] == [(0, 1), (1, 2), (2, 3), (3, 4)]
    assert [dim_recursion_oracle(3, t)[1] for t in range(5)] == [1, 3, 8, 21, 55]


def test_push_down_simple_and_projective():
    host = regular_tree_ball(3, "sink", 1)
    k = push_down(simple(host, "c", FP), 3)
    assert k.dims == (0, 1) and k.nnz() == 0
    host = regular_tree_ball(3, "source", 1)
    k = push_down(projective(host, "c", FP), 3)
    assert k.dims == (1, 3)
    for i, m in enumerate(k.mats):
        col = m.toarray()[:, 0]
        assert col.tolist() == [int(j == i) for j in range(3)]


@pytest.mark.parametrize("n,t", [(n, t) for n in (2, 3, 4, 5) for t in range(9)])
def test_kron_preprojective_dims_and_tree(n, t):
    k, b = kron_preprojective(n, t, FP)
    assert k.dims == dim_recursion_oracle(n, t)
    assert kron_is_tree_basis(k, b)
    assert k.nnz() == sum(k.dims) - 1


@pytest.mark.parametrize("n,t", [(2, 3), (3, 2), (3, 3), (4, 2)])
def test_push_down_of_reflection_preprojective_is_indecomposable(n, t):
    host = regular_tree_ball(n, "sink" if t % 2 == 0 else "source", t)
    p = preprojective(host, "c", t, FP)
    k = push_down(p, n)
    assert k.dims == dim_recursion_oracle(n, t)
    m = k.to_representation()
    assert is_indecomposable(m)
    kk, _ = kron_preprojective(n, t, FP)
    assert is_isomorphic(m, kk.to_representation())
    b = push_down_basis(p, standard_basis(p))
    assert b.vectors["s"].shape[0] == k.dims[0]


@pytest.mark.parametrize("n,tmax", [(2, 8), (3, 5), (4, 4), (5, 3)])
def test_exceptional_within_budget(n, tmax):
    for t in range(tmax + 1):
        k, _ = kron_preprojective(n, t, FP)
        assert is_exceptional_kron(k)
        assert self_ext_dim(k) == 0


def test_reduced_end_matches_full_hom():
    for n, t in [(2, 4), (3, 3), (4, 2)]:
        k, _ = kron_preprojective(n, t, FP)
        m = k.to_representation()
        assert end_dim(k) == hom_dim(m, m) == 1
        assert is_exceptional(m)
        assert rank_deficient_arrows(m) == []


def test_budget_is_enforced():
    k, _ = kron_preprojective(3, 6, FP)
    with pytest.raises(ResourceLimitError):
        end_dim(k, reflect=False)


def test_budget_without_reflection_escape():
    # the simple at the sink is a summand, so reflecting is not allowed
    mats = [csr_array(np.zeros((3, 2), dtype=np.int64)) for _ in range(2)]
    k = KroneckerRep(2, (2, 3), mats, FP)
    assert sink_reflection(k) is None
    with pytest.raises(ResourceLimitError):
        end_dim(k, max_unknowns=5)
    assert end_dim(k) == 4 + 9


@pytest.mark.parametrize("n,t", [(2, 3), (2, 5), (3, 3), (4, 2)])
def test_sink_reflection_steps_down(n, t):
    k, _ = kron_preprojective(n, t, FP)
    r = sink_reflection(k)
    below, _ = kron_preprojective(n, t - 1, FP)
    assert r.dims == below.dims
    assert r.has_tree_basis()
    assert is_isomorphic(r.to_representation(), below.to_representation())
    assert end_dim(r) == end_dim(k) == 1


def test_reflection_certifies_beyond_budget():
    for n, t in [(3, 6), (3, 8), (4, 6), (5, 5)]:
        k, _ = kron_preprojective(n, t, FP)
        assert end_dim(k) == 1
        assert self_ext_dim(k) == 0


def test_reflection_keeps_decomposable_endomorphisms():
    a, _ = kron_preprojective(2, 3, FP)
    mats = [csr_array(np.kron(np.eye(2, dtype=np.int64), m.toarray())) for m in a.mats]
    k = KroneckerRep(2, (2 * a.dims[0], 2 * a.dims[1]), mats, FP)
    assert end_dim(k, max_unknowns=10) == end_dim(k, reflect=False) == 4


def test_preinjective_is_dual():
    for n, t in [(2, 3), (3, 2), (3, 3)]:
        p, _ = kron_preprojective(n, t, FP)
        i, b = kron_preinjective(n, t, FP)
        assert i.dims == (p.dims[1], p.dims[0])
        assert kron_is_tree_basis(i, b)
        assert is_exceptional_kron(i)
        for a, c in zip(p.mats, i.mats):
            assert (a.toarray().T == c.toarray()).all()


def test_json_round_trip_and_coefficient_quiver():
    k, _ = kron_preprojective(3, 3, FP)
    back = KroneckerRep.from_dict(k.to_dict())
    assert back.dims == k.dims
    assert all((a.toarray() == c.toarray()).all() for a, c in zip(back.mats, k.mats))
    g = k.coefficient_quiver()
    assert len(g.nodes) == sum(k.dims) and len(g.edges) == sum(k.dims) - 1


def test_rejects_small_n():
    with pytest.raises(Exception):
        kron_preprojective(1, 2, FP)
