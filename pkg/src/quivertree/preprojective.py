"""Preprojective modules P(x, t) on bipartite trees.

``P(x, 0)`` is the simple at a sink ``x``, ``P(x, 1)`` the thin projective at
a source ``x``, and ``P(x, t)`` is obtained from ``P(x, t - 2)`` by two rounds
of source reflections.  The support is the ball of radius ``t`` around
``x``, so a finite host ball of radius at least ``t`` computes it exactly.

A second, purely combinatorial construction grows the radiation tree of
``P(x, t)`` at a source ``y`` with ``d(x, y) = t - 1`` from the trees of the
smaller modules ``P(z, t - d(x, z))`` around the path from ``x`` to ``y``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .decompose import decompose, is_isomorphic
from .linalg import DEFAULT_PRIME, Field, PrimeField
from .quiver import Quiver, QuiverError
from .radiation import RadiationTree, radiation_basis
from .reflection import rho_minus
from .rep import Representation, RepresentationError, ext1_dim, hom_dim, projective, simple


def _check_parity(host: Quiver, x: str, t: int) -> None:
    if t < 0:
        raise RepresentationError("t must be nonnegative")
    if not host.is_bipartite():
        raise QuiverError("host quiver is not bipartite")
    want_sink = t % 2 == 0
    if want_sink and not host.is_sink(x):
        raise RepresentationError(f"P({x}, {t}) needs {x} to be a sink")
    if not want_sink and not (host.is_source(x) and not host.is_sink(x)):
        raise RepresentationError(f"P({x}, {t}) needs {x} to be a source")


def preprojective(host: Quiver, x: str, t: int, field: Field | None = None) -> Representation:
    """P(x, t) on ``host`` by repeated source reflections."""
    field = field or PrimeField(DEFAULT_PRIME)
    _check_parity(host, x, t)
    if t % 2 == 0:
        m = simple(host, x, field)
    else:
        m = projective(host, x, field)
    for _ in range(t // 2):
        m = rho_minus(rho_minus(m))
    return m


def shells(host: Quiver, m: Representation, x: str) -> list[int]:
    """Dimensions at the vertices of each distance from ``x`` (all equal per shell on regular trees)."""
    dist = host.distances_from(x)
    out: dict[int, set[int]] = {}
    for v, d in dist.items():
        out.setdefault(d, set()).add(m.dims[v])
    top = max((d for d, ks in out.items() if ks != {0}), default=-1)
    res = []
    for d in range(top + 1):
        ks = out[d]
        res.append(ks.pop() if len(ks) == 1 else sorted(ks))
    return res


# ---------------------------------------------------------------------------
# distances on a tree via a fixed root


class TreeMetric:
    """Parent pointers and depths for O(depth) distance and path queries on a tree."""

    def __init__(self, q: Quiver, root: str | None = None):
        if not q.underlying_is_tree():
            raise QuiverError("a tree is required")
        root = root or q.vertices[0]
        self.q = q
        self.parent: dict[str, str | None] = {root: None}
        self.depth = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in q.adjacency[u]:
                if w not in self.depth:
                    self.parent[w] = u
                    self.depth[w] = self.depth[u] + 1
                    queue.append(w)
        self.arrow_between: dict[frozenset, str] = {frozenset((a.src, a.tgt)): a.id for a in q.arrows}

    def path(self, a: str, b: str) -> list[str]:
        left, right = [a], [b]
        while self.depth[left[-1]] > self.depth[right[-1]]:
            left.append(self.parent[left[-1]])
        while self.depth[right[-1]] > self.depth[left[-1]]:
            right.append(self.parent[right[-1]])
        while left[-1] != right[-1]:
            left.append(self.parent[left[-1]])
            right.append(self.parent[right[-1]])
        return left + right[-2::-1]

    def distance(self, a: str, b: str) -> int:
        return len(self.path(a, b)) - 1


@dataclass
class GrownTree:
    """A tree whose nodes sit over host vertices; edges carry host arrows."""

    vertex: list[str]
    edges: list[tuple[int, int, str]]  # (node over arrow source, node over arrow target, arrow)
    root: int

    def dims(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.vertex:
            out[v] = out.get(v, 0) + 1
        return out

    def local_index(self) -> list[int]:
        """Position of each node among the nodes over the same vertex."""
        seen: dict[str, int] = {}
        out = []
        for v in self.vertex:
            out.append(seen.get(v, 0))
            seen[v] = out[-1] + 1
        return out

    def labels(self) -> list[str]:
        return [f"{v}#{i}" for v, i in zip(self.vertex, self.local_index())]

    def radiation_tree(self) -> RadiationTree:
        lab = self.labels()
        return RadiationTree(lab[self.root], dict(zip(lab, self.vertex)), [(lab[s], lab[t], a) for s, t, a in self.edges])

    def module(self, host: Quiver, field: Field) -> Representation:
        """The representation with these nodes as basis and a unit entry per edge."""
        dims = {v: k for v, k in self.dims().items()}
        idx = self.local_index()
        mats = {a.id: field.zeros(dims.get(a.tgt, 0), dims.get(a.src, 0)) for a in host.arrows}
        for s, t, a in self.edges:
            mats[a][idx[t], idx[s]] = field.scalar(1)
        return Representation(host, field, dims, mats)


def default_origin(host: Quiver, x: str, t: int) -> str:
    """The smallest-id source at distance ``t - 1`` from ``x``."""
    if t == 0:
        return x
    dist = host.distances_from(x)
    cands = sorted(v for v, d in dist.items() if d == t - 1 and host.is_source(v) and not host.is_sink(v))
    if not cands:
        raise RepresentationError(f"no source at distance {t - 1} from {x}")
    return cands[0]


def grow_preprojective_tree(host: Quiver, x: str, t: int, origin: str | None = None, metric: TreeMetric | None = None) -> GrownTree:
    """Radiation tree of P(x, t) at a source ``origin`` with ``d(x, origin) = t - 1``.

    Removing the origin leaves the modules ``P(z, t - d(x, z))`` for the
    vertices ``z`` adjacent to the path from ``x`` to the origin.  Each of
    these is grown the same way, around a source next to the origin's
    neighbor, and attached at that neighbor.
    """
    _check_parity(host, x, t)
    metric = metric or TreeMetric(host, x)
    origin = origin if origin is not None else default_origin(host, x, t)
    if t and (metric.distance(x, origin) != t - 1 or not host.is_source(origin)):
        raise RepresentationError("origin must be a source at distance t - 1")
    vertex: list[str] = []
    edges: list[tuple[int, int, str]] = []
    q = host

    def node(v: str) -> int:
        vertex.append(v)
        return len(vertex) - 1

    def link(a: int, b: int) -> None:
        arr = q.arrow[metric.arrow_between[frozenset((vertex[a], vertex[b]))]]
        edges.append((a, b, arr.id) if arr.src == vertex[a] else (b, a, arr.id))

    def build(z: str, a: int, y: str) -> tuple[int, dict[str, int]]:
        """Grow P(z, a) with origin y; returns the root node and its leaf children by vertex."""
        r = node(y)
        if a == 0:
            return r, {}
        path = metric.path(z, y)
        on = set(path)
        toward_z = path[-2] if len(path) > 1 else None
        leaves: dict[str, int] = {}
        for p in path:
            for leg in q.adjacency[p]:
                if leg in on:
                    continue
                b = a - metric.distance(z, leg)
                w = leg if p == y else toward_z
                if b == 0:
                    attach = node(leg)
                    if p == y:
                        leaves[leg] = attach
                else:
                    # the child is grown around the source next to w on the way to leg
                    sub_path = metric.path(w, leg)
                    child_root, child_leaves = build(leg, b, sub_path[1])
                    attach = child_leaves[w]
                link(r, attach)
        return r, leaves

    if t == 0:
        root = node(x)
    else:
        root, _ = build(x, t, origin)
    return GrownTree(vertex, edges, root)


def preprojective_via_radiation(host: Quiver, x: str, t: int, origin: str | None = None, field: Field | None = None) -> tuple[Representation, GrownTree]:
    field = field or PrimeField(DEFAULT_PRIME)
    tree = grow_preprojective_tree(host, x, t, origin)
    return tree.module(host, field), tree


def preprojective_radiation(host: Quiver, x: str, t: int, origin: str | None = None, field: Field | None = None, seed: int = 0):
    """P(x, t) together with a radiation basis and tree at ``origin`` (default: ``default_origin``)."""
    m = preprojective(host, x, t, field)
    origin = origin if origin is not None else default_origin(host, x, t)
    tree, basis = radiation_basis(m, origin, seed=seed)
    return m, basis, tree


# ---------------------------------------------------------------------------
# checks


def ar_dimension_check(host: Quiver, x: str, t: int, field: Field | None = None) -> tuple[dict, dict]:
    """Both sides of dim P(x, t) + dim P(x, t + 2) = sum over neighbors y of dim P(y, t + 1)."""
    lhs_a = preprojective(host, x, t, field)
    lhs_b = preprojective(host, x, t + 2, field)
    lhs = {v: lhs_a.dims[v] + lhs_b.dims[v] for v in host.vertices}
    rhs = {v: 0 for v in host.vertices}
    for y in host.neighbors(x):
        p = preprojective(host, y, t + 1, field)
        for v in host.vertices:
            rhs[v] += p.dims[v]
    return lhs, rhs


@dataclass
class OriginSplitReport:
    x: str
    y: str
    t: int
    expected: list[tuple[str, int]]  # (z, t - d(x, z)) per summand
    found: list[tuple[dict, int]]  # (dims, multiplicity) of the decomposition
    matched: bool
    pairwise_orthogonal_bricks: bool

    @property
    def ok(self) -> bool:
        return self.matched and self.pairwise_orthogonal_bricks


def split_at_origin(host: Quiver, x: str, y: str, field: Field | None = None, seed: int = 0) -> OriginSplitReport:
    """Split P(x, t) with t = d(x, y) + 1 at the source y and compare with the predicted summands.

    The kernel of the projection onto the simple at ``y`` is the restriction
    away from ``y``; it should be the direct sum of P(z, t - d(x, z)) over the
    vertices z adjacent to the path from x to y, which should be pairwise
    orthogonal bricks.
    """
    field = field or PrimeField(DEFAULT_PRIME)
    if not (host.is_source(y) and not host.is_sink(y)):
        raise RepresentationError(f"{y} is not a source")
    d = host.distance(x, y)
    t = d + 1
    p = preprojective(host, x, t, field)
    if p.dims[y] != 1:
        raise RepresentationError("the origin is not thin")
    u = Representation(host, field, {v: (0 if v == y else k) for v, k in p.dims.items()}, {a: mat for a, mat in p.mats.items() if y not in (host.arrow[a].src, host.arrow[a].tgt)})
    zs = host.centipede(host.path(x, y))
    expected = [(z, t - host.distance(x, z)) for z in zs]
    expected_mods = [preprojective(host, z, a, field) for z, a in expected]
    found = decompose(u, seed)
    pool = list(range(len(expected_mods)))
    matched = sum(s.multiplicity for s in found) == len(expected_mods)
    for s in found:
        for _ in range(s.multiplicity):
            hit = next((i for i in pool if expected_mods[i].dims == s.rep.dims and is_isomorphic(expected_mods[i], s.rep, seed)), None)
            if hit is None:
                matched = False
            else:
                pool.remove(hit)
    bricks = all(hom_dim(m, m) == 1 for m in expected_mods)
    for i, a in enumerate(expected_mods):
        for b in expected_mods[i + 1:]:
            if hom_dim(a, b) or hom_dim(b, a):
                bricks = False
    return OriginSplitReport(x, y, t, expected, [({v: k for v, k in s.rep.dims.items() if k}, s.multiplicity) for s in found], matched and not pool, bricks)


def simple_against_preprojective(host: Quiver, y: str, z: str, field: Field | None = None) -> dict[str, int]:
    """Hom and Ext dimensions between the simple at a source y and P(z, d(y, z) - 1)."""
    field = field or PrimeField(DEFAULT_PRIME)
    s = simple(host, y, field)
    p = preprojective(host, z, host.distance(y, z) - 1, field)
    return {
        "hom_s_p": hom_dim(s, p),
        "hom_p_s": hom_dim(p, s),
        "ext_p_s": ext1_dim(p, s),
        "ext_s_p": ext1_dim(s, p),
    }
