"""Thin vertices and radiation modules.

A vertex ``x`` with ``dim M_x = 1`` is thin.  Removing it splits the
restriction of ``M`` into summands ``N(i)``, each living in the component of
one neighbor ``y(i)``.  When these summands form an orthogonal family with
one-dimensional connectors and are themselves radiation modules, a tree
basis of ``M`` can be grown outward from ``x``; this module builds that basis
and the matching tree, and glues such modules back together.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg as la
from .basis import CoefficientQuiver, IndexedBasis, coefficient_quiver, is_tree
from .decompose import decompose, decompose_pieces, is_indecomposable, is_isomorphic
from .quiver import Quiver
from .rep import Representation, RepresentationError, ext1_dim, hom_dim, restrict


class NotThinError(RepresentationError):
    """The chosen vertex does not carry a one-dimensional space."""


class NotIndecomposableError(RepresentationError):
    """The representation splits, so thin-vertex analysis does not apply."""


class NotRadiationError(RepresentationError):
    """Raised internally (and by radiation_basis) with the failing condition."""


# ---------------------------------------------------------------------------
# thin-vertex analysis


@dataclass
class ThinSummand:
    rep: Representation
    multiplicity: int
    neighbor: str

    def dims(self) -> dict[str, int]:
        return {v: k for v, k in self.rep.dims.items() if k}


@dataclass
class ThinAnalysis:
    origin: str
    summands: list[ThinSummand]
    orthogonal: bool
    exceptional_family: bool
    thin_connectors: bool

    def to_dict(self) -> dict:
        return {
            "exceptional_family": self.exceptional_family,
            "orthogonal": self.orthogonal,
            "origin": self.origin,
            "summands": [
                {"dims": s.dims(), "multiplicity": s.multiplicity, "neighbor": s.neighbor} for s in self.summands
            ],
            "thin_connectors": self.thin_connectors,
        }


def _neighbor_in(q: Quiver, x: str, support: frozenset[str], comps: list[frozenset[str]]) -> str:
    comp = next(c for c in comps if support & c)
    nbrs = [y for y in q.neighbors(x) if y in comp]
    if len(nbrs) != 1:
        raise RepresentationError(f"component next to {x!r} touches {len(nbrs)} neighbors; a tree is required")
    return nbrs[0]


def _same_component(comps, a: frozenset[str], b: frozenset[str]) -> bool:
    return any(a & c and b & c for c in comps)


def analyze_thin_vertex(m: Representation, x: str, seed: int = 0) -> ThinAnalysis:
    """Decompose the restriction away from a thin vertex and classify the summands."""
    if m.dims.get(x) != 1:
        raise NotThinError(f"dim M_{x} = {m.dims.get(x)}, expected 1")
    if not is_indecomposable(m):
        raise NotIndecomposableError("representation is decomposable")
    q = m.quiver
    rest = [v for v in q.vertices if v != x]
    sub = restrict(m, rest)
    comps = sub.quiver.components()
    summands = []
    for s in decompose(sub, seed):
        y = _neighbor_in(q, x, s.rep.support(), comps)
        summands.append(ThinSummand(s.rep, s.multiplicity, y))
    summands.sort(key=lambda s: (s.rep.dim_tuple(), s.neighbor))
    orthogonal = exceptional = True
    for i, a in enumerate(summands):
        if ext1_dim(a.rep, a.rep):
            exceptional = False
        for b in summands[i + 1:]:
            if not _same_component(comps, a.rep.support(), b.rep.support()):
                continue
            if hom_dim(a.rep, b.rep) or hom_dim(b.rep, a.rep):
                orthogonal = False
            if ext1_dim(a.rep, b.rep) or ext1_dim(b.rep, a.rep):
                exceptional = False
    connectors = all(s.rep.dims[s.neighbor] == 1 for s in summands)
    return ThinAnalysis(x, summands, orthogonal, exceptional, connectors)


def thin_vertices(m: Representation) -> list[str]:
    return [v for v in m.quiver.vertices if m.dims[v] == 1]


# ---------------------------------------------------------------------------
# radiation trees


@dataclass
class RadiationTree:
    """A rooted tree whose nodes are basis labels sitting over quiver vertices.

    Edges are stored in the direction of the quiver arrow they lie over.
    """

    root: str
    nodes: dict[str, str]
    edges: list[tuple[str, str, str]] = dc_field(default_factory=list)

    def to_coefficient_quiver(self) -> CoefficientQuiver:
        return CoefficientQuiver(dict(self.nodes), sorted((s, t, a, 1) for s, t, a in self.edges))

    def to_dict(self) -> dict:
        return {
            "edges": [{"arrow": a, "src": s, "tgt": t} for s, t, a in sorted(self.edges)],
            "nodes": [{"label": n, "vertex": self.nodes[n]} for n in sorted(self.nodes)],
            "root": self.root,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "RadiationTree":
        return cls(d["root"], {n["label"]: n["vertex"] for n in d["nodes"]}, [(e["src"], e["tgt"], e["arrow"]) for e in d["edges"]])

    def shape(self) -> frozenset:
        """Edge multiset keyed by labels, for comparing trees with equal labels."""
        return frozenset((s, t, a) for s, t, a in self.edges)

    def children(self, label: str) -> list[str]:
        out = [t for s, t, _ in self.edges if s == label] + [s for s, t, _ in self.edges if t == label]
        parent = self._parents().get(label)
        return [c for c in out if c != parent]

    def _parents(self) -> dict[str, str]:
        adj: dict[str, list[str]] = {n: [] for n in self.nodes}
        for s, t, _ in self.edges:
            adj[s].append(t)
            adj[t].append(s)
        parent = {self.root: None}
        stack = [self.root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    stack.append(w)
        return parent


def isomorphic_trees(a: RadiationTree, b: RadiationTree) -> bool:
    """Rooted isomorphism of trees, respecting vertex and arrow labels."""
    def canon(t: RadiationTree) -> str:
        adj: dict[str, list[tuple[str, str, bool]]] = {n: [] for n in t.nodes}
        for s, g, arr in t.edges:
            adj[s].append((g, arr, True))
            adj[g].append((s, arr, False))
        order, parent = [t.root], {t.root: None}
        for u in order:
            for w, _, _ in adj[u]:
                if w != parent[u]:
                    parent[w] = u
                    order.append(w)
        code: dict[str, str] = {}
        for u in reversed(order):
            kids = sorted(f"{arr}{'>' if out else '<'}{code[w]}" for w, arr, out in adj[u] if w != parent[u])
            code[u] = f"({t.nodes[u]}:{','.join(kids)})"
        return code[t.root]

    return len(a.nodes) == len(b.nodes) and canon(a) == canon(b)


@dataclass
class _Grown:
    """Relative tree: labels are paths relative to the root (root is '')."""

    nodes: dict[str, str]
    edges: list[tuple[str, str, str]]
    vectors: dict[str, np.ndarray]  # label -> coordinate vector in the module's vertex space


def _child_tag(y: str, k: int, count: int) -> str:
    return f"/{y}" if count == 1 else f"/{y}~{k}"


class _Radiator:
    def __init__(self, seed: int):
        self.seed = seed
        self.memo: dict = {}

    def grow(self, m: Representation, x: str) -> _Grown:
        """Radiation tree of ``m`` at ``x`` for the basis vector ``1`` of ``M_x``."""
        key = (m.key(), x)
        if key in self.memo:
            res = self.memo[key]
            if isinstance(res, NotRadiationError):
                raise res
            return res
        try:
            res = self._grow(m, x)
        except NotRadiationError as e:
            self.memo[key] = e
            raise
        self.memo[key] = res
        return res

    def _grow(self, m: Representation, x: str) -> _Grown:
        f = m.field
        q = m.quiver
        if m.dims[x] != 1:
            raise NotRadiationError(f"dim at {x} is {m.dims[x]}")
        one = f.array([[1]])[:, 0]
        if m.total_dim == 1:
            return _Grown({"": x}, [], {"": one})
        rest = [v for v in q.vertices if v != x]
        sub = restrict(m, rest)
        comps = sub.quiver.components()
        pieces = decompose_pieces(sub, self.seed)
        info = []
        for rep, emb in pieces:
            y = _neighbor_in(q, x, rep.support(), comps)
            if rep.dims[y] != 1:
                raise NotRadiationError(f"summand meets {y} in dimension {rep.dims[y]}")
            info.append((rep, emb, y))
        # orthogonality; summands in different components are automatically orthogonal
        for i in range(len(info)):
            for j in range(i + 1, len(info)):
                a, b = info[i][0], info[j][0]
                if not _same_component(comps, a.support(), b.support()):
                    continue
                if hom_dim(a, b) or hom_dim(b, a):
                    raise NotRadiationError("summands are not orthogonal")
        info.sort(key=lambda t: (t[2], t[0].dim_tuple()))
        # coordinates at each neighbor along the summands
        by_y: dict[str, list[int]] = {}
        for i, (_, _, y) in enumerate(info):
            by_y.setdefault(y, []).append(i)
        nodes = {"": x}
        edges: list[tuple[str, str, str]] = []
        vectors = {"": one}
        for y, idx in sorted(by_y.items()):
            arrows = q.arrows_between(x, y)
            if len(arrows) != 1:
                raise NotRadiationError(f"{len(arrows)} arrows between {x} and {y}")
            arr = arrows[0]
            cols = [info[i][1][y] for i in idx]
            if arr.src == x:
                # split M_arr(1) along the summands meeting y
                img = m.mats[arr.id][:, 0]
                full = np.concatenate([info[i][1][y] for i in range(len(info)) if info[i][0].dims[y]], axis=1)
                coeff = la.solve(f, full, img)
                pos = 0
                seeds = {}
                for i in range(len(info)):
                    if info[i][0].dims[y]:
                        if i in idx:
                            seeds[i] = coeff[pos]
                        pos += 1
            else:
                seeds = {}
                for i, col in zip(idx, cols):
                    s = f.matmul(m.mats[arr.id], col)[0, 0]
                    seeds[i] = f.inv(s) if s else 0
            for k, i in enumerate(idx, start=1):
                c = seeds[i]
                if c == 0:
                    raise NotRadiationError(f"summand at {y} is not attached to {x}")
                rep, emb, _ = info[i]
                child = self.grow(rep, y)
                tag = _child_tag(y, k, len(idx))
                for lab, v in child.nodes.items():
                    nodes[tag + lab] = v
                for s, t, a in child.edges:
                    edges.append((tag + s, tag + t, a))
                for lab, vec in child.vectors.items():
                    w = child.nodes[lab]
                    vectors[tag + lab] = f.reduce(f.matmul(emb[w], vec.reshape(-1, 1))[:, 0] * c)
                edges.append(("", tag, arr.id) if arr.src == x else (tag, "", arr.id))
        return _Grown(nodes, edges, vectors)


def _finish(m: Representation, x: str, grown: _Grown, b) -> tuple[RadiationTree, IndexedBasis]:
    f = m.field
    scale = f.scalar(1) if b is None else f.array(np.array(b, dtype=object).reshape(1, 1))[0, 0]
    if scale == 0:
        raise RepresentationError("origin vector must be nonzero")
    label = {rel: x + rel for rel in grown.nodes}
    tree = RadiationTree(x, {label[r]: v for r, v in grown.nodes.items()}, [(label[s], label[t], a) for s, t, a in grown.edges])
    labels: dict[str, list[str]] = {v: [] for v in m.quiver.vertices}
    cols: dict[str, list[np.ndarray]] = {v: [] for v in m.quiver.vertices}
    for rel in sorted(grown.nodes, key=lambda r: (len(r.split("/")), r)):
        v = grown.nodes[rel]
        labels[v].append(label[rel])
        cols[v].append(f.reduce(grown.vectors[rel] * scale))
    vectors = {v: np.stack(cols[v], axis=1) if cols[v] else f.zeros(m.dims[v], 0) for v in m.quiver.vertices}
    for v in m.quiver.vertices:
        if vectors[v].shape[1] != m.dims[v] or (m.dims[v] and not la.is_invertible(f, vectors[v])):
            raise NotRadiationError(f"grown vectors do not form a basis at {v}")
    return tree, IndexedBasis(labels, vectors)


def radiation_tree(m: Representation, x: str, seed: int = 0) -> RadiationTree | None:
    """The radiation tree at ``x``, or None if ``(M, x)`` is not a radiation module."""
    try:
        return radiation_basis(m, x, seed=seed)[0]
    except NotRadiationError:
        return None


def is_radiation(m: Representation, x: str, seed: int = 0, _radiator: _Radiator | None = None) -> bool:
    """True if ``(M, x)`` is a radiation module; raises for a non-thin ``x``."""
    if m.dims.get(x) != 1:
        raise NotThinError(f"dim M_{x} = {m.dims.get(x)}, expected 1")
    if not is_indecomposable(m):
        return False
    rad = _radiator or _Radiator(seed)
    try:
        rad.grow(m, x)
    except NotRadiationError:
        return False
    return True


def radiation_basis(m: Representation, x: str, b=None, seed: int = 0, _radiator: _Radiator | None = None) -> tuple[RadiationTree, IndexedBasis]:
    """Radiation tree and the matching basis grown from ``b`` (default 1) spanning ``M_x``.

    Raises NotRadiationError when the module is not a radiation module at ``x``.
    """
    if m.dims.get(x) != 1:
        raise NotThinError(f"dim M_{x} = {m.dims.get(x)}, expected 1")
    if not is_indecomposable(m):
        raise NotRadiationError("representation is decomposable")
    rad = _radiator or _Radiator(seed)
    return _finish(m, x, rad.grow(m, x), b)


# ---------------------------------------------------------------------------
# checks along edges pointing away from the origin


def radiation_shape_violations(m: Representation, g: CoefficientQuiver, x: str) -> list[str]:
    """Conditions a radiation quiver of an exceptional module satisfies, checked on ``g``.

    For every edge {y, z} of the quiver with z one step further from ``x``:
    each basis element at z has exactly one neighbor at y; the comparison of
    dim M_y with dim M_z bounds the neighbors of elements at y; the number of
    edges equals dim M_z; equal dimensions force a permutation matrix with
    unit entries.
    """
    q = m.quiver
    dist = q.distances_from(x)
    at: dict[str, list[str]] = {}
    for lab, v in g.nodes.items():
        at.setdefault(v, []).append(lab)
    out = []
    for a in q.arrows:
        if a.src not in dist or a.tgt not in dist:
            continue
        y, z = (a.src, a.tgt) if dist[a.src] < dist[a.tgt] else (a.tgt, a.src)
        if dist[z] != dist[y] + 1:
            continue
        if not (m.dims[y] and m.dims[z]):
            continue
        es = [e for e in g.edges if e[2] == a.id]
        nb_z = {lab: 0 for lab in at.get(z, [])}
        nb_y = {lab: 0 for lab in at.get(y, [])}
        for s, t, _, _ in es:
            zz, yy = (t, s) if g.nodes[t] == z else (s, t)
            nb_z[zz] += 1
            nb_y[yy] += 1
        if any(c != 1 for c in nb_z.values()):
            out.append(f"{a.id}: some element at {z} does not have exactly one neighbor at {y}")
        if m.dims[y] <= m.dims[z] and any(c < 1 for c in nb_y.values()):
            out.append(f"{a.id}: some element at {y} has no neighbor at {z}")
        if m.dims[y] >= m.dims[z] and any(c > 1 for c in nb_y.values()):
            out.append(f"{a.id}: some element at {y} has several neighbors at {z}")
        if len(es) != m.dims[z]:
            out.append(f"{a.id}: {len(es)} edges, expected dim M_{z} = {m.dims[z]}")
        if m.dims[y] == m.dims[z] and not (len(es) == m.dims[z] and all(c == 1 for *_, c in es) and all(c == 1 for c in nb_y.values())):
            out.append(f"{a.id}: equal dimensions but not a unit permutation matrix")
    return out


def root_degree_violation(m: Representation, g: CoefficientQuiver, x: str, seed: int = 0) -> str | None:
    """The node at ``x`` must have one edge per summand of the restriction away from ``x``."""
    labels = [lab for lab, v in g.nodes.items() if v == x]
    if len(labels) != 1:
        return f"{len(labels)} basis elements at {x}"
    deg = g.degree()[labels[0]]
    sub = restrict(m, [v for v in m.quiver.vertices if v != x])
    count = sum(s.multiplicity for s in decompose(sub, seed))
    if deg != count:
        return f"node at {x} has degree {deg} but the restriction has {count} summands"
    return None


def is_radiation_quiver(m: Representation, g: CoefficientQuiver, x: str, seed: int = 0) -> bool:
    """Necessary conditions for ``g`` to be a radiation quiver of ``(M, x)``."""
    if not is_tree(g):
        return False
    if root_degree_violation(m, g, x, seed) is not None:
        return False
    return not radiation_shape_violations(m, g, x)


@dataclass
class RadiationReport:
    origin: str
    tree: RadiationTree
    basis: IndexedBasis
    is_tree_basis: bool
    matches_tree: bool
    violations: list[str]

    @property
    def ok(self) -> bool:
        return self.is_tree_basis and self.matches_tree and not self.violations


def verify_radiation_basis(m: Representation, x: str, seed: int = 0) -> RadiationReport:
    """Build the radiation basis at ``x`` and check its edge-by-edge shape."""
    tree, basis = radiation_basis(m, x, seed=seed)
    g = coefficient_quiver(m, basis)
    shape_g = frozenset((s, t, a) for s, t, a, _ in g.edges)
    return RadiationReport(x, tree, basis, is_tree(g), shape_g == tree.shape(), radiation_shape_violations(m, g, x))


# ---------------------------------------------------------------------------
# building radiation modules from children


@dataclass
class RadiationModule:
    """A representation written in its radiation basis.

    The standard basis of ``rep`` is the radiation basis; ``labels[v]`` names
    its vectors at ``v`` and ``tree`` records the shape.
    """

    rep: Representation
    origin: str
    tree: RadiationTree
    labels: dict[str, list[str]]

    def basis(self) -> IndexedBasis:
        f = self.rep.field
        return IndexedBasis({v: list(self.labels[v]) for v in self.rep.quiver.vertices}, {v: f.eye(self.rep.dims[v]) for v in self.rep.quiver.vertices})


def as_radiation_module(m: Representation, x: str, seed: int = 0) -> RadiationModule:
    """Rewrite ``m`` in its radiation basis at ``x``."""
    from .basis import rep_in_basis

    tree, basis = radiation_basis(m, x, seed=seed)
    return RadiationModule(rep_in_basis(m, basis), x, tree, basis.labels)


def simple_radiation(q: Quiver, v: str, field: la.Field) -> RadiationModule:
    rep = Representation(q, field, {v: 1})
    return RadiationModule(rep, v, RadiationTree(v, {v: v}), {w: ([v] if w == v else []) for w in q.vertices})


def radiation_build(x: str, children: list[RadiationModule], check: bool = True) -> RadiationModule:
    """Glue radiation modules at neighbors of ``x`` into one with origin ``x``.

    Each child must vanish at ``x`` and have its origin at a neighbor of
    ``x``.  The new arrows send the basis vector at ``x`` to the sum of the
    child origins (or the child origins to it).  With ``check`` the children
    are tested for pairwise orthogonality first.
    """
    if not children:
        raise RepresentationError("no children")
    q = children[0].rep.quiver
    f = children[0].rep.field
    for c in children:
        if c.rep.quiver != q or c.rep.field != f:
            raise RepresentationError("children live over different quivers or fields")
        if c.rep.dims[x]:
            raise RepresentationError(f"child with origin {c.origin} does not vanish at {x}")
        if c.origin not in q.neighbors(x):
            raise RepresentationError(f"child origin {c.origin} is not a neighbor of {x}")
        if c.rep.dims[c.origin] != 1:
            raise RepresentationError(f"child is not thin at its origin {c.origin}")
    if check:
        for i, a in enumerate(children):
            for b in children[i + 1:]:
                if hom_dim(a.rep, b.rep) or hom_dim(b.rep, a.rep):
                    raise NotRadiationError("children are not pairwise orthogonal")
    order = sorted(range(len(children)), key=lambda i: (children[i].origin, children[i].rep.dim_tuple()))
    children = [children[i] for i in order]
    dims = {v: sum(c.rep.dims[v] for c in children) for v in q.vertices}
    dims[x] = 1
    offsets = []
    run = {v: 0 for v in q.vertices}
    for c in children:
        offsets.append(dict(run))
        for v in q.vertices:
            run[v] += c.rep.dims[v]
    mats = {}
    for a in q.arrows:
        m = f.zeros(dims[a.tgt], dims[a.src])
        if x not in (a.src, a.tgt):
            for c, off in zip(children, offsets):
                blk = c.rep.mats[a.id]
                m[off[a.tgt]:off[a.tgt] + blk.shape[0], off[a.src]:off[a.src] + blk.shape[1]] = blk
        else:
            y = a.tgt if a.src == x else a.src
            for c, off in zip(children, offsets):
                if c.origin != y:
                    continue
                if a.src == x:
                    m[off[y], 0] = f.scalar(1)
                else:
                    m[0, off[y]] = f.scalar(1)
        mats[a.id] = m
    rep = Representation(q, f, dims, mats)
    # tree and labels
    counts: dict[str, int] = {}
    for c in children:
        counts[c.origin] = counts.get(c.origin, 0) + 1
    seen: dict[str, int] = {}
    nodes = {x: x}
    edges = []
    labels = {v: [] for v in q.vertices}
    labels[x] = [x]
    for c in children:
        y = c.origin
        seen[y] = seen.get(y, 0) + 1
        tag = _child_tag(y, seen[y], counts[y])

        def relabel(lab: str, c=c, tag=tag) -> str:
            return x + tag + lab[len(c.tree.root):]

        for lab, v in c.tree.nodes.items():
            nodes[relabel(lab)] = v
        for s, t, arr in c.tree.edges:
            edges.append((relabel(s), relabel(t), arr))
        arrows = q.arrows_between(x, y)
        if len(arrows) != 1:
            raise RepresentationError(f"{len(arrows)} arrows between {x} and {y}")
        arr = arrows[0]
        root = relabel(c.tree.root)
        edges.append((x, root, arr.id) if arr.src == x else (root, x, arr.id))
        for v in q.vertices:
            labels[v].extend(relabel(lab) for lab in c.labels[v])
    return RadiationModule(rep, x, RadiationTree(x, nodes, edges), labels)
