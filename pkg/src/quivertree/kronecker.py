"""Representations of the n-Kronecker quiver pushed down from the regular tree.

The n-regular tree with its arrows colored ``1..n`` covers the Kronecker
quiver with ``n`` arrows: sources go to the source, sinks to the sink, and a
cover arrow of color ``i`` goes to the ``i``-th arrow.  Push-down sums the
vertex spaces over each class and assembles each arrow matrix from the
cover arrows of its color.  Matrices are stored sparse, since pushed-down
tree modules are 0/1 with one entry per tree edge.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_array, identity, issparse

from . import linalg as la
from .linalg import DEFAULT_PRIME, Field, PrimeField, field_from_name
from .quiver import Quiver, arrow_color, kronecker_quiver, regular_tree_ball
from .basis import CoefficientQuiver, IndexedBasis, is_tree_basis, is_tree_graph
from .preprojective import TreeMetric, grow_preprojective_tree
from .rep import Representation, RepresentationError, hom_dim


@dataclass
class KroneckerRep:
    """A representation of the n-Kronecker quiver: spaces ``k^ds -> k^dt`` and ``n`` maps."""

    n: int
    dims: tuple[int, int]
    mats: list  # csr_array of shape (dt, ds), integer residues
    field: Field

    def to_representation(self) -> Representation:
        q = kronecker_quiver(self.n)
        ds, dt = self.dims
        return Representation(q, self.field, {"s": ds, "t": dt}, {f"k{i + 1}": self.field.array(m.toarray(), (dt, ds)) for i, m in enumerate(self.mats)})

    @classmethod
    def from_representation(cls, m: Representation) -> "KroneckerRep":
        n = len(m.quiver.arrows)
        if m.quiver != kronecker_quiver(n):
            raise RepresentationError("not a representation of the standard Kronecker quiver")
        ds, dt = m.dims["s"], m.dims["t"]
        mats = [csr_array(np.asarray(m.mats[f"k{i}"], dtype=np.int64).reshape(dt, ds)) for i in range(1, n + 1)]
        return cls(n, (ds, dt), mats, m.field)

    def nnz(self) -> int:
        return sum(int(m.count_nonzero()) for m in self.mats)

    def coefficient_graph(self) -> tuple[int, np.ndarray, np.ndarray]:
        """Nodes ``0..ds-1`` (source) and ``ds..ds+dt-1`` (sink); one edge per nonzero entry."""
        ds, dt = self.dims
        src, tgt = [], []
        for m in self.mats:
            coo = m.tocoo()
            keep = coo.data % self.field.p != 0 if isinstance(self.field, PrimeField) else coo.data != 0
            src.append(coo.col[keep].astype(np.int64))
            tgt.append(coo.row[keep].astype(np.int64) + ds)
        return ds + dt, np.concatenate(src) if src else np.zeros(0, np.int64), np.concatenate(tgt) if tgt else np.zeros(0, np.int64)

    def has_tree_basis(self) -> bool:
        """Whether the standard basis is a tree basis: edge count plus connectivity."""
        n, s, t = self.coefficient_graph()
        return is_tree_graph(n, s, t)

    def coefficient_quiver(self) -> CoefficientQuiver:
        ds, dt = self.dims
        nodes = {f"s#{i}": "s" for i in range(ds)}
        nodes.update({f"t#{j}": "t" for j in range(dt)})
        edges = []
        for k, m in enumerate(self.mats, start=1):
            coo = m.tocoo()
            for i, j, c in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
                if c % self.field.p:
                    edges.append((f"s#{j}", f"t#{i}", f"k{k}", c))
        edges.sort(key=lambda e: (e[0], e[1], e[2]))
        return CoefficientQuiver(nodes, edges)

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "field": self.field.name,
            "mats": [[[self.field.format(x) for x in row] for row in m.toarray().tolist()] for m in self.mats],
            "n": self.n,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "KroneckerRep":
        field = field_from_name(d.get("field", f"fp:{DEFAULT_PRIME}"))
        ds, dt = (int(x) for x in d["dims"])
        mats = []
        for rows in d["mats"]:
            arr = field.array(rows, (dt, ds)) if ds * dt else field.zeros(dt, ds)
            mats.append(csr_array(np.asarray(arr, dtype=np.int64)))
        if len(mats) != int(d["n"]):
            raise RepresentationError("number of matrices differs from n")
        return cls(int(d["n"]), (ds, dt), mats, field)


def _class_offsets(q: Quiver, dims: dict[str, int], center: str, center_is_source: bool) -> tuple[dict[str, int], int, int]:
    """Offsets of each vertex inside its class sum, vertices in BFS order from the center.

    Classes alternate with the distance from the center, so a ball of radius 0
    is classified by ``center_is_source``.
    """
    dist = q.distances_from(center)
    offs = {}
    run = [0, 0]
    for v in q.bfs_order(center):
        k = 0 if (dist[v] % 2 == 0) == center_is_source else 1
        offs[v] = run[k]
        run[k] += dims.get(v, 0)
    return offs, run[0], run[1]


def _sparse(field: Field, shape, rows, cols, vals):
    if not isinstance(field, PrimeField) or field.dtype is object:
        raise RepresentationError("push-down is implemented over prime fields below 2**24")
    return csr_array((np.asarray(vals, dtype=np.int64), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))), shape=shape)


def push_down(m: Representation, n: int, center: str = "c", center_is_source: bool | None = None) -> KroneckerRep:
    """Push a representation of a colored ball (see ``regular_tree_ball``) down to K(n)."""
    q = m.quiver
    if center_is_source is None:
        center_is_source = bool(q.out_arrows[center])
    offs, ds, dt = _class_offsets(q, m.dims, center, center_is_source)
    rows: list[list[int]] = [[] for _ in range(n)]
    cols: list[list[int]] = [[] for _ in range(n)]
    vals: list[list[int]] = [[] for _ in range(n)]
    for a in q.arrows:
        mat = m.mats[a.id]
        if not mat.size:
            continue
        c = arrow_color(a.id) - 1
        r, cc = np.nonzero(mat != 0)
        rows[c].extend((r + offs[a.tgt]).tolist())
        cols[c].extend((cc + offs[a.src]).tolist())
        vals[c].extend(int(x) for x in mat[r, cc])
    mats = [_sparse(m.field, (dt, ds), rows[i], cols[i], vals[i]) for i in range(n)]
    return KroneckerRep(n, (ds, dt), mats, m.field)


def push_down_basis(m: Representation, b: IndexedBasis, center: str = "c", center_is_source: bool | None = None) -> IndexedBasis:
    """Block-diagonal push-down of a basis of a cover representation, labels kept."""
    q = m.quiver
    if center_is_source is None:
        center_is_source = bool(q.out_arrows[center])
    offs, ds, dt = _class_offsets(q, m.dims, center, center_is_source)
    dist = q.distances_from(center)
    f = m.field
    vecs = {"s": f.zeros(ds, ds), "t": f.zeros(dt, dt)}
    labels: dict[str, list[str]] = {"s": [""] * ds, "t": [""] * dt}
    for v in q.vertices:
        k = m.dims[v]
        if not k:
            continue
        side = "s" if (dist[v] % 2 == 0) == center_is_source else "t"
        o = offs[v]
        vecs[side][o:o + k, o:o + k] = b.vectors[v]
        labels[side][o:o + k] = b.labels[v]
    return IndexedBasis(labels, vecs)


def kron_preprojective(n: int, t: int, field: Field | None = None) -> tuple[KroneckerRep, IndexedBasis]:
    """Push-down of P(c, t) on the n-regular tree, written in its radiation basis.

    The tree module is grown combinatorially, so the result is a 0/1
    representation whose standard basis is the pushed-down radiation basis.
    The returned basis is that standard basis (sparse identity columns),
    labelled by the cover nodes it comes from.
    """
    field = field or PrimeField(DEFAULT_PRIME)
    if n < 2 or t < 0:
        raise RepresentationError("need n >= 2 and t >= 0")
    kind = "sink" if t % 2 == 0 else "source"
    host = regular_tree_ball(n, kind, t)
    tree = grow_preprojective_tree(host, "c", t, metric=TreeMetric(host, "c"))
    dims = tree.dims()
    offs, ds, dt = _class_offsets(host, dims, "c", kind == "source")
    dist = host.distances_from("c")
    idx = tree.local_index()
    pos = []
    labels: dict[str, list[str]] = {"s": [""] * ds, "t": [""] * dt}
    for node, (v, i) in enumerate(zip(tree.vertex, idx)):
        side = "s" if (dist[v] % 2 == 0) == (kind == "source") else "t"
        pos.append(offs[v] + i)
        labels[side][pos[-1]] = f"{v}#{i}"
    rows: list[list[int]] = [[] for _ in range(n)]
    cols: list[list[int]] = [[] for _ in range(n)]
    for src, tgt, a in tree.edges:
        c = arrow_color(a) - 1
        rows[c].append(pos[tgt])
        cols[c].append(pos[src])
    mats = [_sparse(field, (dt, ds), rows[i], cols[i], [1] * len(rows[i])) for i in range(n)]
    basis = IndexedBasis(labels, {"s": identity(ds, dtype=np.int64, format="csr"), "t": identity(dt, dtype=np.int64, format="csr")})
    return KroneckerRep(n, (ds, dt), mats, field), basis


def kron_preinjective(n: int, t: int, field: Field | None = None) -> tuple[KroneckerRep, IndexedBasis]:
    """Dual of the preprojective: transpose every map and swap the two spaces."""
    p, b = kron_preprojective(n, t, field)
    dual = KroneckerRep(n, (p.dims[1], p.dims[0]), [csr_array(m.T) for m in p.mats], p.field)
    return dual, IndexedBasis({"s": b.labels["t"], "t": b.labels["s"]}, {"s": b.vectors["t"], "t": b.vectors["s"]})


def kron_is_tree_basis(k: KroneckerRep, b: IndexedBasis) -> bool:
    """Whether the coefficient quiver of ``k`` in the basis ``b`` is a tree.

    A sparse identity basis is checked directly on the stored matrices;
    anything else goes through the dense change of basis.
    """
    if all(issparse(b.vectors[v]) for v in ("s", "t")):
        if any((b.vectors[v] != identity(b.vectors[v].shape[0], dtype=np.int64, format="csr")).nnz for v in ("s", "t")):
            raise RepresentationError("sparse bases other than the standard one are not supported")
        return k.has_tree_basis()
    return is_tree_basis(k.to_representation(), b)


def dim_recursion_oracle(n: int, t: int) -> tuple[int, int]:
    """(source, sink) dimensions of the t-th preprojective of K(n) from the Coxeter recursion.

    Starts at (0, 1) and (1, n); afterwards each new coordinate is n times the
    previous one minus the one before.
    """
    seq = [0, 1, n]
    while len(seq) < t + 2:
        seq.append(n * seq[-1] - seq[-2])
    return seq[t], seq[t + 1]


# ---------------------------------------------------------------------------
# endomorphisms and self-extensions

DEFAULT_MAX_UNKNOWNS = 4000


class ResourceLimitError(RuntimeError):
    """A computation would exceed the configured size budget."""


def _dense(k: KroneckerRep, i: int) -> np.ndarray:
    return k.field.array(k.mats[i].toarray(), (k.dims[1], k.dims[0]))


def _end_dim_direct(k: KroneckerRep, max_unknowns: int) -> int:
    f = k.field
    ds, dt = k.dims
    mats = None
    unknowns = ds * ds + dt * dt
    if ds * ds <= max_unknowns and k.n * ds <= max_unknowns:
        mats = [_dense(k, i) for i in range(k.n)]
        whole = np.concatenate(mats, axis=1)
        if la.rank(f, whole) == dt:
            unknowns = ds * ds
    if unknowns > max_unknowns:
        raise ResourceLimitError(f"End system with {unknowns} unknowns exceeds the budget of {max_unknowns}")
    if unknowns == ds * ds + dt * dt:
        if k.n * ds * dt > max_unknowns * max_unknowns:
            raise ResourceLimitError("End system has too many equations")
        return hom_dim(*(2 * [k.to_representation()]))
    kern = la.kernel_basis(f, whole)
    if dt * kern.shape[1] > 2 * max_unknowns:
        raise ResourceLimitError("End system has too many equations")
    blocks = [kern[i * ds:(i + 1) * ds, :] for i in range(k.n)]
    # vec(A f B) = (A kron B^T) vec(f) with row-major vec
    system = f.zeros(dt * kern.shape[1], ds * ds)
    for a, b in zip(mats, blocks):
        system = f.reduce(system + f.kron(a, b.T))
    return ds * ds - la.rank(f, system)


def end_dim(k: KroneckerRep, max_unknowns: int = DEFAULT_MAX_UNKNOWNS, reflect: bool = True) -> int:
    """dim End(M), computed exactly.

    If the combined map ``[M_1 ... M_n]`` onto the sink space is surjective, an
    endomorphism is fixed by its source part ``f`` and exists exactly when
    ``sum_i M_i f K_i = 0`` for a kernel basis ``K`` of the combined map, split
    into blocks ``K_i``.  That system has ``ds**2`` unknowns; otherwise the
    full system with ``ds**2 + dt**2`` unknowns is used.

    When that is over budget and ``reflect`` is set, the module is first
    replaced by its reflection at the sink (see ``sink_reflection``), which
    has the same endomorphism ring, until the direct system fits.
    """
    ds, dt = k.dims
    if ds == 0 or dt == 0:
        return ds * ds + dt * dt
    while True:
        try:
            return _end_dim_direct(k, max_unknowns)
        except ResourceLimitError:
            if not reflect:
                raise
        r = sink_reflection(k, max_fill=max(64 * max_unknowns, 16 * (k.nnz() + sum(k.dims))))
        if r is None:
            raise ResourceLimitError("over budget and the module has the simple at the sink as a summand")
        if sum(r.dims) >= sum(k.dims):
            raise ResourceLimitError("over budget and reflection does not shrink the module")
        k = r


def _sparse_kernel(p: int, ncols: int, cols: dict[int, dict[int, int]], max_fill: int):
    """Kernel of a sparse matrix over GF(p) given column-wise, by elimination with fewest-entries-first rows.

    Returns ``(rank, forms, free)``: ``free`` lists the free columns and
    ``forms[c]`` writes coordinate ``c`` of a kernel vector as a combination
    of the free coordinates.  Matrices whose nonzero pattern is a forest
    eliminate without fill.
    """
    rows: dict[int, dict[int, int]] = {}
    for c, entries in cols.items():
        for r, v in entries.items():
            rows.setdefault(r, {})[c] = v
    col_rows = {c: set(entries) for c, entries in cols.items()}
    heap = [(len(e), r) for r, e in rows.items()]
    heapq.heapify(heap)
    pivots: dict[int, dict[int, int]] = {}
    fill = sum(len(e) for e in rows.values())
    while heap:
        deg, r = heapq.heappop(heap)
        if r not in rows or deg != len(rows[r]):
            continue
        row = rows.pop(r)
        for c in row:
            col_rows[c].discard(r)
        if not row:
            continue
        c = min(row, key=lambda x: (len(col_rows[x]), x))
        inv = pow(row[c], p - 2, p)
        expr = {x: (-v * inv) % p for x, v in row.items() if x != c}
        pivots[c] = expr
        for r2 in list(col_rows[c]):
            target = rows[r2]
            a = target.pop(c)
            for x, e in expr.items():
                v = (target.get(x, 0) + a * e) % p
                if v:
                    if x not in target:
                        col_rows[x].add(r2)
                        fill += 1
                    target[x] = v
                elif x in target:
                    del target[x]
                    col_rows[x].discard(r2)
            heapq.heappush(heap, (len(target), r2))
        col_rows[c].clear()
        if fill > max_fill:
            raise ResourceLimitError("sparse elimination fills in beyond the budget")
    free = [c for c in range(ncols) if c not in pivots]
    forms: dict[int, dict[int, int]] = {c: {c: 1} for c in free}
    size = 0
    # a pivot's expression only involves columns pivoted later or free ones
    for c in reversed(list(pivots)):
        acc: dict[int, int] = {}
        for x, e in pivots[c].items():
            for fcol, v in forms[x].items():
                acc[fcol] = (acc.get(fcol, 0) + e * v) % p
        forms[c] = {fcol: v for fcol, v in acc.items() if v}
        size += len(forms[c])
        if size > max_fill:
            raise ResourceLimitError("kernel basis is denser than the budget")
    return len(pivots), forms, free


def sink_reflection(k: KroneckerRep, max_fill: int = 10**7) -> KroneckerRep | None:
    """Reflection at the sink, returned as a representation of K(n) again.

    The new source space is the kernel of ``[M_1 ... M_n]`` and the i-th map
    sends a kernel vector to its i-th block; the old source becomes the new
    sink.  Returns None if the combined map is not surjective, that is if the
    simple at the sink is a direct summand.  Otherwise the reflection is an
    equivalence on modules without that summand, so End and Ext^1 carry over.
    The result is checked to compose to zero with the combined map.
    """
    if not isinstance(k.field, PrimeField):
        raise RepresentationError("sink reflection is implemented over prime fields")
    p = k.field.p
    n = k.n
    ds, dt = k.dims
    cols: dict[int, dict[int, int]] = {}
    for i, m in enumerate(k.mats):
        coo = m.tocoo()
        for r, c, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
            if v % p:
                cols.setdefault(i * ds + c, {})[r] = v % p
    rank, forms, free = _sparse_kernel(p, n * ds, cols, max_fill)
    if rank != dt:
        return None
    where = {c: j for j, c in enumerate(free)}
    rows: list[list[int]] = [[] for _ in range(n)]
    cs: list[list[int]] = [[] for _ in range(n)]
    vals: list[list[int]] = [[] for _ in range(n)]
    for c, form in forms.items():
        i, j = divmod(c, ds)
        for fcol, v in form.items():
            rows[i].append(j)
            cs[i].append(where[fcol])
            vals[i].append(v)
    kd = len(free)
    mats = [_sparse(k.field, (ds, kd), rows[i], cs[i], vals[i]) for i in range(n)]
    check = csr_array((dt, kd), dtype=np.int64)
    for a, b in zip(k.mats, mats):
        # entries are below p, so each product stays far inside int64
        check = check + csr_array(a @ b)
        check.data %= p
    if np.any(check.data % p):
        raise RepresentationError("reflected maps do not compose to zero")
    return KroneckerRep(n, (kd, ds), mats, k.field)


def self_ext_dim(k: KroneckerRep, max_unknowns: int = DEFAULT_MAX_UNKNOWNS) -> int:
    """dim Ext^1(M, M) as the cokernel of the defining map, by rank-nullity from dim End."""
    ds, dt = k.dims
    rank = ds * ds + dt * dt - end_dim(k, max_unknowns)
    return k.n * ds * dt - rank


def is_exceptional_kron(k: KroneckerRep, max_unknowns: int = DEFAULT_MAX_UNKNOWNS) -> bool:
    """End(M) = k and Ext^1(M, M) = 0; a one-dimensional End also forces indecomposability."""
    e = end_dim(k, max_unknowns)
    ds, dt = k.dims
    return e == 1 and k.n * ds * dt - (ds * ds + dt * dt - e) == 0
