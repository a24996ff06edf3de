"""Labeled bases, coefficient quivers, tree bases and DOT export."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np
from scipy.sparse import coo_array
from scipy.sparse.csgraph import connected_components

from . import linalg as la
from .rep import Representation, RepresentationError


@dataclass
class IndexedBasis:
    """A basis of each vertex space, with a string label per vector.

    ``vectors[v]`` holds the basis vectors of ``M_v`` as columns, in the
    order of ``labels[v]``.
    """

    labels: dict[str, list[str]]
    vectors: dict[str, np.ndarray]

    def all_labels(self) -> list[str]:
        return [lab for v in sorted(self.labels) for lab in self.labels[v]]

    def vertex_of(self) -> dict[str, str]:
        return {lab: v for v, labs in self.labels.items() for lab in labs}


def standard_basis(m: Representation) -> IndexedBasis:
    """Unit vectors labelled ``v#i``."""
    f = m.field
    return IndexedBasis(
        {v: [f"{v}#{i}" for i in range(m.dims[v])] for v in m.quiver.vertices},
        {v: f.eye(m.dims[v]) for v in m.quiver.vertices},
    )


def check_basis(m: Representation, b: IndexedBasis) -> None:
    f = m.field
    seen = set()
    for v in m.quiver.vertices:
        vec = b.vectors.get(v)
        labs = b.labels.get(v, [])
        if vec is None:
            vec = f.zeros(m.dims[v], 0)
        if vec.shape != (m.dims[v], m.dims[v]) or len(labs) != m.dims[v]:
            raise RepresentationError(f"basis at {v!r} has the wrong size")
        if m.dims[v] and not la.is_invertible(f, vec):
            raise RepresentationError(f"basis at {v!r} is not linearly independent")
        for lab in labs:
            if lab in seen:
                raise RepresentationError(f"duplicate basis label {lab!r}")
            seen.add(lab)


def matrix_in_basis(m: Representation, b: IndexedBasis, arrow: str) -> np.ndarray:
    """The matrix of an arrow with respect to the given bases of source and target."""
    a = m.quiver.arrow[arrow]
    f = m.field
    if not (m.dims[a.src] and m.dims[a.tgt]):
        return f.zeros(m.dims[a.tgt], m.dims[a.src])
    return la.solve(f, b.vectors[a.tgt], f.matmul(m.mats[arrow], b.vectors[a.src]))


def rep_in_basis(m: Representation, b: IndexedBasis) -> Representation:
    return Representation(m.quiver, m.field, m.dims, {a.id: matrix_in_basis(m, b, a.id) for a in m.quiver.arrows})


@dataclass
class CoefficientQuiver:
    """Nodes are basis labels carrying a quiver vertex; edges carry an arrow and a coefficient."""

    nodes: dict[str, str]
    edges: list[tuple[str, str, str, object]]

    def degree(self) -> dict[str, int]:
        deg = {n: 0 for n in self.nodes}
        for s, t, _, _ in self.edges:
            deg[s] += 1
            deg[t] += 1
        return deg

    def to_dict(self, field: la.Field | None = None) -> dict:
        fmt = field.format if field is not None else str
        return {
            "edges": [{"arrow": a, "coeff": fmt(c), "src": s, "tgt": t} for s, t, a, c in self.edges],
            "nodes": [{"label": n, "vertex": self.nodes[n]} for n in sorted(self.nodes)],
        }

    def to_json(self, field: la.Field | None = None) -> str:
        return json.dumps(self.to_dict(field), sort_keys=True)


def coefficient_quiver(m: Representation, b: IndexedBasis) -> CoefficientQuiver:
    """One edge for every nonzero entry of an arrow matrix written in the basis."""
    check_basis(m, b)
    nodes = b.vertex_of()
    edges = []
    for a in m.quiver.arrows:
        mat = matrix_in_basis(m, b, a.id)
        rows, cols = np.nonzero(mat != 0)
        for i, j in zip(rows.tolist(), cols.tolist()):
            edges.append((b.labels[a.src][j], b.labels[a.tgt][i], a.id, mat[i, j]))
    edges.sort(key=lambda e: (e[0], e[1], e[2]))
    return CoefficientQuiver(nodes, edges)


def is_tree_graph(num_nodes: int, src: np.ndarray, tgt: np.ndarray) -> bool:
    """Edge-count plus connectivity test on integer node ids."""
    if num_nodes == 0 or len(src) != num_nodes - 1:
        return False
    g = coo_array((np.ones(len(src), dtype=np.int8), (src, tgt)), shape=(num_nodes, num_nodes))
    ncomp, _ = connected_components(g, directed=False)
    return ncomp == 1


def is_tree(g: CoefficientQuiver) -> bool:
    index = {n: i for i, n in enumerate(sorted(g.nodes))}
    src = np.array([index[e[0]] for e in g.edges], dtype=np.int64)
    tgt = np.array([index[e[1]] for e in g.edges], dtype=np.int64)
    return is_tree_graph(len(index), src, tgt)


def is_tree_basis(m: Representation, b: IndexedBasis) -> bool:
    return is_tree(coefficient_quiver(m, b))


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: CoefficientQuiver, field: la.Field | None = None) -> str:
    """Deterministic DOT text: nodes sorted by label, edges sorted by endpoints and arrow."""
    if not g.nodes:
        return "digraph G { }\n"
    fmt = field.format if field is not None else str
    lines = ["digraph G {"]
    for n in sorted(g.nodes):
        lines.append(f"  {_dot_id(n)} [label={_dot_id(g.nodes[n])}];")
    for s, t, a, c in sorted(g.edges, key=lambda e: (e[0], e[1], e[2])):
        text = a if c == 1 else f"{a} ({fmt(c)})"
        lines.append(f"  {_dot_id(s)} -> {_dot_id(t)} [label={_dot_id(text)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def coefficient_quiver_from_dict(d: Mapping) -> CoefficientQuiver:
    nodes = {n["label"]: n["vertex"] for n in d["nodes"]}
    edges = [(e["src"], e["tgt"], e["arrow"], Fraction(str(e.get("coeff", 1)))) for e in d["edges"]]
    return CoefficientQuiver(nodes, edges)
