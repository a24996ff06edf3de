"""Dynkin quivers: indecomposables from roots, thin vertices, hammocks.

Vertex names: ``a1, a2, ...`` along the longest chain; ``D_n`` has its two
short legs ``b`` and ``c`` at ``a{n-2}``; ``E_n`` has ``b`` hanging off
``a{n-3}``.  Arrow ids name the edge ``u-v`` with ``u`` before ``v`` in
that order, so reversing an arrow keeps its id.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Mapping

import numpy as np

from .basis import IndexedBasis, coefficient_quiver, is_tree, is_tree_basis
from .decompose import is_indecomposable, is_isomorphic
from .linalg import DEFAULT_PRIME, Field, PrimeField
from .quiver import Arrow, Quiver, QuiverError
from .radiation import (
    RadiationModule,
    _Radiator,
    as_radiation_module,
    is_radiation,
    thin_vertices,
)
from .reflection import reflect_sink, reflect_source
from .rep import Representation, RepresentationError, hom_dim, projective, simple


class NotDynkinError(QuiverError):
    pass


# ---------------------------------------------------------------------------
# diagrams


def dynkin_edges(kind: str, n: int) -> list[tuple[str, str]]:
    kind = kind.upper()
    if kind == "A" and n >= 1:
        return [(f"a{i}", f"a{i + 1}") for i in range(1, n)]
    if kind == "D" and n >= 4:
        chain = [(f"a{i}", f"a{i + 1}") for i in range(1, n - 2)]
        return chain + [(f"a{n - 2}", "b"), (f"a{n - 2}", "c")]
    if kind == "E" and n in (6, 7, 8):
        chain = [(f"a{i}", f"a{i + 1}") for i in range(1, n - 1)]
        return chain + [(f"a{n - 3}", "b")]
    raise NotDynkinError(f"no Dynkin diagram {kind}{n}")


def _parse_type(name: str) -> tuple[str, int]:
    name = name.strip().upper()
    return name[0], int(name[1:])


def _branch(kind: str, n: int) -> str:
    if kind == "A":
        return f"a{n}"
    return f"a{n - 2}" if kind == "D" else f"a{n - 3}"


def dynkin_quiver(name: str, orientation: str | Mapping[str, bool] = "subspace") -> Quiver:
    """A Dynkin quiver such as ``"E8"``.

    ``orientation`` is ``"subspace"`` (every arrow points toward the branch
    vertex, or toward ``a{n}`` for type A), ``"alternating"`` (``a1`` is a
    source and sources and sinks alternate) or a mapping from edge id
    ``"u-v"`` to True for ``u -> v`` and False for ``v -> u``.
    """
    kind, n = _parse_type(name)
    edges = dynkin_edges(kind, n)
    verts = sorted({v for e in edges for v in e} | {"a1"})
    base = Quiver(verts, [Arrow(f"{u}-{v}", u, v) for u, v in edges])
    if orientation == "subspace":
        dist = base.distances_from(_branch(kind, n))
        forward = {f"{u}-{v}": dist[u] > dist[v] for u, v in edges}
    elif orientation == "alternating":
        dist = base.distances_from("a1")
        forward = {f"{u}-{v}": dist[u] % 2 == 0 for u, v in edges}
    else:
        forward = dict(orientation)
        missing = {f"{u}-{v}" for u, v in edges} - set(forward)
        if missing:
            raise QuiverError(f"orientation misses edges {sorted(missing)}")
    return Quiver(verts, [Arrow(f"{u}-{v}", u, v) if forward[f"{u}-{v}"] else Arrow(f"{u}-{v}", v, u) for u, v in edges])


def all_orientations(name: str) -> list[Quiver]:
    kind, n = _parse_type(name)
    edges = [f"{u}-{v}" for u, v in dynkin_edges(kind, n)]
    return [dynkin_quiver(name, dict(zip(edges, bits))) for bits in itertools.product((True, False), repeat=len(edges))]


def dynkin_type(q: Quiver) -> str | None:
    """``"A5"``, ``"D4"``, ``"E8"`` ... for a Dynkin quiver, else None."""
    if not q.underlying_is_tree():
        return None
    n = len(q.vertices)
    deg = {v: len(q.neighbors(v)) for v in q.vertices}
    branches = [v for v in q.vertices if deg[v] >= 3]
    if not branches:
        return f"A{n}"
    if len(branches) > 1 or deg[branches[0]] > 3:
        return None
    c = branches[0]
    arms = sorted(len(comp) for comp in q.delete_vertex(c)[1])
    p, r, s = arms
    if p == 1 and r == 1:
        return f"D{n}"
    if (p, r) == (1, 2) and s in (2, 3, 4):
        return f"E{n}"
    return None


# ---------------------------------------------------------------------------
# roots and modules


def _is_root_vector(d: Mapping[str, int]) -> bool:
    return all(k >= 0 for k in d.values()) and any(d.values())


def _reflect_dims(q: Quiver, d: dict[str, int], v: str) -> dict[str, int]:
    out = dict(d)
    out[v] = sum(d[a.src if a.tgt == v else a.tgt] for a in q.arrows_at(v)) - d[v]
    return out


def admissible_sinks(q: Quiver) -> list[str]:
    """Vertices ordered so each is a sink once the earlier ones are reflected."""
    order = []
    cur = q
    left = set(q.vertices)
    while left:
        v = min(w for w in left if cur.is_sink(w))
        order.append(v)
        left.remove(v)
        cur = cur.reverse_at(v)
    return order


def admissible_sources(q: Quiver) -> list[str]:
    return admissible_sinks(q.opposite())


def positive_roots(q: Quiver) -> list[dict[str, int]]:
    """Dimension vectors of the preprojective components, via Coxeter orbits of projectives.

    For a Dynkin quiver these are all positive roots.
    """
    order = admissible_sources(q)
    limit = 4 * len(q.vertices) ** 2 + 8
    out = []
    for v in q.vertices:
        d = projective(q, v, PrimeField(2)).dims
        for _ in range(limit):
            out.append(dict(d))
            cur = q
            nd = dict(d)
            for w in order:
                nd = _reflect_dims(cur, nd, w)
                cur = cur.reverse_at(w)
            if not all(k >= 0 for k in nd.values()) or not any(nd.values()):
                break
            d = nd
    keyed = {tuple(d[v] for v in q.vertices): d for d in out}
    return [keyed[k] for k in sorted(keyed, key=lambda t: (sum(t), t))]


def _reduction(q: Quiver, d: dict[str, int], sinks: bool, limit: int):
    order = admissible_sinks(q) if sinks else admissible_sources(q)
    cur_q, cur_d = q, dict(d)
    steps = []
    for i in range(limit):
        v = order[i % len(order)]
        support = [w for w, k in cur_d.items() if k]
        if support == [v] and cur_d[v] == 1:
            return steps, cur_q, v
        nd = _reflect_dims(cur_q, cur_d, v)
        if nd[v] < 0:
            return None
        steps.append((v, cur_q))
        cur_q, cur_d = cur_q.reverse_at(v), nd
    return None


def module_for_root(q: Quiver, d: Mapping[str, int], field: Field | None = None) -> Representation:
    """The indecomposable with dimension vector ``d``, built by reflection functors.

    The vector is reduced to a simple root by reflecting at sinks in an
    admissible order (or at sources, for preinjective modules); the simple
    representation is then carried back by the inverse reflections.
    """
    field = field or PrimeField(DEFAULT_PRIME)
    d = {v: int(d.get(v, 0)) for v in q.vertices}
    if not _is_root_vector(d):
        raise RepresentationError("dimension vector must be nonzero and nonnegative")
    limit = 4 * len(q.vertices) * (sum(d.values()) + len(q.vertices)) + 8
    for sinks in (True, False):
        red = _reduction(q, d, sinks, limit)
        if red is None:
            continue
        steps, end_q, v = red
        m = simple(end_q, v, field)
        for w, prev_q in reversed(steps):
            m = reflect_source(m, w) if sinks else reflect_sink(m, w)
            if m.quiver != prev_q:
                raise RepresentationError("reflection sequence lost track of the orientation")
        if m.dims != d:
            raise RepresentationError("reflection sequence produced the wrong dimension vector")
        return m
    raise RepresentationError(f"{d} is not reachable from a simple root by reflections")


def enumerate_indecomposables(q: Quiver, field: Field | None = None) -> list[Representation]:
    """One representative per positive root of a Dynkin quiver."""
    if dynkin_type(q) is None:
        raise NotDynkinError("quiver is not of Dynkin type")
    return [module_for_root(q, d, field) for d in positive_roots(q)]


# ---------------------------------------------------------------------------
# thin vertices of indecomposables


@dataclass
class RadiationSweepReport:
    quiver: Quiver
    modules: int
    pairs_checked: int
    failures: list[tuple[dict, str]] = dc_field(default_factory=list)
    without_thin: list[dict] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def sweep_thin_radiation(q: Quiver, field: Field | None = None, seed: int = 0) -> RadiationSweepReport:
    """Check that every indecomposable is a radiation module at each of its thin vertices."""
    mods = enumerate_indecomposables(q, field)
    rep = RadiationSweepReport(q, len(mods), 0)
    radiator = _Radiator(seed)
    for m in mods:
        thin = thin_vertices(m)
        if not thin:
            rep.without_thin.append({v: k for v, k in m.dims.items() if k})
        for x in thin:
            rep.pairs_checked += 1
            if not is_radiation(m, x, seed, _radiator=radiator):
                rep.failures.append(({v: k for v, k in m.dims.items() if k}, x))
    return rep


# ---------------------------------------------------------------------------
# hammocks


@dataclass
class Hammock:
    vertex: str
    members: list[Representation]
    values: list[int]
    relation: list[set[int]]
    antisymmetric: bool

    def comparable(self, i: int, j: int) -> bool:
        return j in self.relation[i] or i in self.relation[j]

    def antichains(self, size: int) -> list[tuple[int, ...]]:
        out = []
        for combo in itertools.combinations(range(len(self.members)), size):
            if all(not self.comparable(i, j) for i, j in itertools.combinations(combo, 2)):
                out.append(combo)
        return out


def hammock(q: Quiver, y: str, field: Field | None = None) -> Hammock:
    """Indecomposables ``N`` with ``N_y`` nonzero, ordered by nonvanishing Hom.

    ``relation[i]`` is the set of ``j`` reachable from ``i`` through
    nonzero homomorphisms between distinct members (transitive closure).
    """
    mods = [m for m in enumerate_indecomposables(q, field) if m.dims[y]]
    vals = [m.dims[y] for m in mods]
    n = len(mods)
    direct = [{j for j in range(n) if j != i and hom_dim(mods[i], mods[j])} for i in range(n)]
    closure = [set(s) for s in direct]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            extra = set().union(*(closure[j] for j in closure[i])) - closure[i] if closure[i] else set()
            if extra:
                closure[i] |= extra
                changed = True
    anti = all(not (j in closure[i] and i in closure[j]) for i in range(n) for j in range(n) if i != j)
    return Hammock(y, mods, vals, closure, anti)


# ---------------------------------------------------------------------------
# the maximal E8 module


@dataclass
class GluedTreeBasis:
    rep: Representation
    basis: IndexedBasis
    parts: list[RadiationModule]

    def coefficient_quiver(self):
        return coefficient_quiver(self.rep, self.basis)


E8_THIN = {"a1": 1, "a2": 3, "a3": 4, "a4": 5, "a5": 6, "a6": 4, "a7": 2, "b": 3}
E8_MAXIMAL = {"a1": 2, "a2": 3, "a3": 4, "a4": 5, "a5": 6, "a6": 4, "a7": 2, "b": 3}
E8_THIN_PARTS = [
    {"a2": 1, "a3": 1, "a4": 2, "a5": 2, "a6": 1, "a7": 1, "b": 1},
    {"a2": 1, "a3": 2, "a4": 2, "a5": 3, "a6": 2, "a7": 1, "b": 2},
    {"a2": 1, "a3": 1, "a4": 1, "a5": 1, "a6": 1, "a7": 0, "b": 0},
]


def e8_maximal_tree_basis(field: Field | None = None, seed: int = 0) -> GluedTreeBasis:
    """A tree basis of the maximal E8 module, which has no thin vertex.

    The three radiation modules at ``a2`` that make up the thin module at
    ``a1`` are glued through a two-dimensional space at ``a1``: the first
    basis vector there maps to the sum of the origins of parts one and two,
    the second to the sum of the origins of parts two and three.
    """
    field = field or PrimeField(DEFAULT_PRIME)
    q = dynkin_quiver("E8", "subspace")
    parts = [as_radiation_module(module_for_root(q, d, field), "a2", seed) for d in E8_THIN_PARTS]
    dims = {v: sum(p.rep.dims[v] for p in parts) for v in q.vertices}
    dims["a1"] = 2
    offsets = []
    run = {v: 0 for v in q.vertices}
    for p in parts:
        offsets.append(dict(run))
        for v in q.vertices:
            run[v] += p.rep.dims[v]
    mats = {}
    for a in q.arrows:
        m = field.zeros(dims[a.tgt], dims[a.src])
        if a.src == "a1":
            # a1 -> a2: b1 -> o1 + o2, b2 -> o2 + o3
            for col, hits in enumerate(((0, 1), (1, 2))):
                for i in hits:
                    m[offsets[i]["a2"], col] = field.scalar(1)
        else:
            for p, off in zip(parts, offsets):
                blk = p.rep.mats[a.id]
                m[off[a.tgt]:off[a.tgt] + blk.shape[0], off[a.src]:off[a.src] + blk.shape[1]] = blk
        mats[a.id] = m
    rep = Representation(q, field, dims, mats)
    labels = {v: [] for v in q.vertices}
    labels["a1"] = ["b1", "b2"]
    for i, p in enumerate(parts, start=1):
        for v in q.vertices:
            labels[v].extend(f"N{i}:{lab}" for lab in p.labels[v])
    basis = IndexedBasis(labels, {v: field.eye(dims[v]) for v in q.vertices})
    return GluedTreeBasis(rep, basis, parts)
