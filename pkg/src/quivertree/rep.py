"""Finite-dimensional quiver representations and their Hom/Ext spaces."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from . import linalg as la
from .linalg import QQ, Field, PrimeField
from .quiver import Quiver, QuiverError


class RepresentationError(ValueError):
    """Dimension mismatches, unknown vertices or arrows, wrong quiver."""


class Representation:
    """A representation of a quiver over an exact field.

    ``mats[a]`` has shape ``(dims[tgt], dims[src])`` and acts on column
    vectors.  Vertices or arrows left out default to zero.
    """

    def __init__(self, quiver: Quiver, field: Field, dims: Mapping[str, int], mats: Mapping[str, object] | None = None):
        self.quiver = quiver
        self.field = field
        d = {v: 0 for v in quiver.vertices}
        for v, k in dims.items():
            if v not in quiver.vertex_set:
                raise RepresentationError(f"unknown vertex {v!r}")
            if int(k) < 0:
                raise RepresentationError(f"negative dimension at {v!r}")
            d[v] = int(k)
        self.dims: dict[str, int] = d
        mats = dict(mats or {})
        unknown = set(mats) - set(quiver.arrow)
        if unknown:
            raise RepresentationError(f"unknown arrows {sorted(unknown)}")
        self.mats: dict[str, np.ndarray] = {}
        for a in quiver.arrows:
            shape = (d[a.tgt], d[a.src])
            if a.id in mats:
                try:
                    m = field.array(mats[a.id], shape) if np.size(mats[a.id]) else field.zeros(*shape)
                except ValueError as e:
                    raise RepresentationError(f"arrow {a.id}: cannot read a {shape} matrix") from e
                if m.shape != shape:
                    raise RepresentationError(f"arrow {a.id}: matrix {m.shape} but dims give {shape}")
            else:
                m = field.zeros(*shape)
            if m is mats.get(a.id):
                m = m.copy()
            m.setflags(write=False)
            self.mats[a.id] = m

    # basic data -------------------------------------------------------------

    def dim_vector(self) -> dict[str, int]:
        return dict(self.dims)

    def dim_tuple(self) -> tuple[int, ...]:
        """Dimensions in sorted vertex order."""
        return tuple(self.dims[v] for v in self.quiver.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def support(self) -> frozenset[str]:
        return frozenset(v for v, k in self.dims.items() if k)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self):
        nz = {v: k for v, k in self.dims.items() if k}
        return f"Representation({self.field.name}, {nz})"

    def key(self) -> tuple:
        """Hashable exact content, used for memoization within one computation."""
        return (
            self.field.name,
            self.quiver,
            tuple(self.dims[v] for v in self.quiver.vertices),
            tuple(tuple(map(str, self.mats[a.id].ravel())) for a in self.quiver.arrows),
        )

    def equals(self, other: "Representation") -> bool:
        return (
            self.quiver == other.quiver
            and self.field == other.field
            and self.dims == other.dims
            and all(np.array_equal(self.mats[a], other.mats[a]) for a in self.mats)
        )


# ---------------------------------------------------------------------------
# constructors


def zero_rep(q: Quiver, field: Field) -> Representation:
    return Representation(q, field, {})


def simple(q: Quiver, v: str, field: Field) -> Representation:
    if v not in q.vertex_set:
        raise RepresentationError(f"unknown vertex {v!r}")
    return Representation(q, field, {v: 1})


def _paths_from(q: Quiver, v: str) -> list[tuple[str, ...]]:
    """All arrow paths starting at ``v`` (including the trivial one)."""
    out = [()]
    stack = [((), v)]
    while stack:
        path, end = stack.pop()
        for a in q.out_arrows[end]:
            if len(path) > len(q.vertices) * max(1, len(q.arrows)):
                raise QuiverError("quiver has an oriented cycle")
            p = path + (a.id,)
            out.append(p)
            stack.append((p, a.tgt))
    return out


def projective(q: Quiver, v: str, field: Field) -> Representation:
    """The indecomposable projective at ``v``: paths starting at ``v``."""
    paths = _paths_from(q, v)
    ends = {(): v}
    for p in sorted(paths, key=len):
        if p:
            ends[p] = q.arrow[p[-1]].tgt
    at: dict[str, list] = {}
    for p in sorted(paths, key=lambda p: (len(p), p)):
        at.setdefault(ends[p], []).append(p)
    index = {p: i for w, ps in at.items() for i, p in enumerate(ps)}
    dims = {w: len(ps) for w, ps in at.items()}
    mats = {}
    for a in q.arrows:
        m = field.zeros(dims.get(a.tgt, 0), dims.get(a.src, 0))
        for p in at.get(a.src, []):
            m[index[p + (a.id,)], index[p]] = field.scalar(1)
        mats[a.id] = m
    return Representation(q, field, dims, mats)


def injective(q: Quiver, v: str, field: Field) -> Representation:
    """The indecomposable injective at ``v``, as the dual of a projective of the opposite quiver."""
    p = projective(q.opposite(), v, field)
    return Representation(q, field, p.dims, {a: m.T for a, m in p.mats.items()})


def direct_sum(reps: Iterable[Representation], quiver: Quiver | None = None, field: Field | None = None) -> Representation:
    """Block-diagonal sum; an empty sum is the zero representation of ``quiver`` over ``field``."""
    reps = list(reps)
    if not reps:
        if quiver is None or field is None:
            raise RepresentationError("an empty direct sum needs a quiver and a field")
        return zero_rep(quiver, field)
    q, field = reps[0].quiver, reps[0].field
    for r in reps[1:]:
        if r.quiver != q or r.field != field:
            raise RepresentationError("direct sum of representations over different quivers or fields")
    dims = {v: sum(r.dims[v] for r in reps) for v in q.vertices}
    mats = {}
    for a in q.arrows:
        m = field.zeros(dims[a.tgt], dims[a.src])
        i = j = 0
        for r in reps:
            b = r.mats[a.id]
            m[i:i + b.shape[0], j:j + b.shape[1]] = b
            i += b.shape[0]
            j += b.shape[1]
        mats[a.id] = m
    return Representation(q, field, dims, mats)


def restrict(m: Representation, vertices: Iterable[str]) -> Representation:
    """Restriction to the full subquiver on ``vertices``."""
    sub = m.quiver.full_subquiver(vertices)
    return Representation(sub, m.field, {v: m.dims[v] for v in sub.vertices}, {a.id: m.mats[a.id] for a in sub.arrows})


def extend_by_zero(m: Representation, q: Quiver) -> Representation:
    """View a representation of a full subquiver of ``q`` as one of ``q``."""
    for a in m.quiver.arrows:
        if q.arrow.get(a.id) != a:
            raise RepresentationError(f"arrow {a.id} differs in the larger quiver")
    for a in q.arrows:
        if a.src in m.quiver.vertex_set and a.tgt in m.quiver.vertex_set and a.id not in m.quiver.arrow:
            raise RepresentationError("not a full subquiver")
    return Representation(q, m.field, m.dims, m.mats)


def transport(m: Representation, q: Quiver) -> Representation:
    """Same data on another quiver with the same vertex and arrow ids."""
    return Representation(q, m.field, m.dims, m.mats)


def change_field(m: Representation, field: Field) -> Representation:
    """Reinterpret integer-valued matrices over another field.

    Prime-field entries are lifted to the symmetric range first, so 0/1 and
    small signed matrices carry over unchanged.
    """
    def lift(x):
        if isinstance(m.field, PrimeField):
            return m.field.signed(x)
        return Fraction(x)

    mats = {}
    for a, mat in m.mats.items():
        lifted = np.array([lift(x) for x in mat.ravel()], dtype=object).reshape(mat.shape)
        mats[a] = field.array(lifted, mat.shape) if mat.size else field.zeros(*mat.shape)
    return Representation(m.quiver, field, m.dims, mats)


def in_basis(m: Representation, change: Mapping[str, np.ndarray]) -> Representation:
    """The representation written in new bases; ``change[v]`` has the new basis as columns."""
    f = m.field
    inv = {v: la.inverse(f, change[v]) if m.dims[v] else f.zeros(0, 0) for v in m.quiver.vertices}
    mats = {}
    for a in m.quiver.arrows:
        if m.dims[a.src] and m.dims[a.tgt]:
            mats[a.id] = f.matmul(f.matmul(inv[a.tgt], m.mats[a.id]), change[a.src])
    return Representation(m.quiver, f, m.dims, mats)


# ---------------------------------------------------------------------------
# Euler form, Hom and Ext


def euler_form(q: Quiver, d: Mapping[str, int], e: Mapping[str, int]) -> int:
    """sum_v d_v e_v - sum_arrows d_src e_tgt."""
    return sum(d.get(v, 0) * e.get(v, 0) for v in q.vertices) - sum(
        d.get(a.src, 0) * e.get(a.tgt, 0) for a in q.arrows
    )


class HomSystem:
    """The linear map whose kernel is Hom(M, N) and whose cokernel is Ext^1(M, N).

    Columns index the entries of the vertex maps ``phi_v: M_v -> N_v``
    (row-major, vertices in sorted order).  Rows index the entries of the
    arrow targets ``Hom(M_src, N_tgt)``; the map sends ``phi`` to
    ``phi_tgt M_a - N_a phi_src``.
    """

    def __init__(self, m: Representation, n: Representation):
        if m.quiver != n.quiver or m.field != n.field:
            raise RepresentationError("Hom between representations over different quivers or fields")
        self.m, self.n = m, n
        f = m.field
        q = m.quiver
        self.col_offset: dict[str, int] = {}
        c = 0
        for v in q.vertices:
            self.col_offset[v] = c
            c += n.dims[v] * m.dims[v]
        self.cols = c
        self.row_offset: dict[str, int] = {}
        r = 0
        for a in q.arrows:
            self.row_offset[a.id] = r
            r += n.dims[a.tgt] * m.dims[a.src]
        self.rows = r
        mat = f.zeros(r, c)
        for a in q.arrows:
            ms, mt, ns, nt = m.dims[a.src], m.dims[a.tgt], n.dims[a.src], n.dims[a.tgt]
            if nt * ms == 0:
                continue
            r0 = self.row_offset[a.id]
            if mt:
                c0 = self.col_offset[a.tgt]
                mat[r0:r0 + nt * ms, c0:c0 + nt * mt] += f.kron(f.eye(nt), m.mats[a.id].T)
            if ns:
                c0 = self.col_offset[a.src]
                mat[r0:r0 + nt * ms, c0:c0 + ns * ms] -= f.kron(n.mats[a.id], f.eye(ms))
        self.matrix = f.reduce(mat)

    def unpack(self, vec: np.ndarray) -> dict[str, np.ndarray]:
        out = {}
        for v in self.m.quiver.vertices:
            k = self.col_offset[v]
            out[v] = vec[k:k + self.n.dims[v] * self.m.dims[v]].reshape(self.n.dims[v], self.m.dims[v])
        return out

    def unpack_target(self, vec: np.ndarray) -> dict[str, np.ndarray]:
        out = {}
        for a in self.m.quiver.arrows:
            k = self.row_offset[a.id]
            nt, ms = self.n.dims[a.tgt], self.m.dims[a.src]
            out[a.id] = vec[k:k + nt * ms].reshape(nt, ms)
        return out

    def rank(self) -> int:
        if not hasattr(self, "_rank"):
            self._rank = la.rank(self.m.field, self.matrix) if self.rows and self.cols else 0
        return self._rank


def hom_basis(m: Representation, n: Representation) -> list[dict[str, np.ndarray]]:
    """A basis of Hom(M, N); each element maps vertex -> matrix N_v x M_v."""
    sysm = HomSystem(m, n)
    if sysm.cols == 0:
        return []
    ker = la.kernel_basis(m.field, sysm.matrix)
    return [sysm.unpack(ker[:, j]) for j in range(ker.shape[1])]


def hom_dim(m: Representation, n: Representation) -> int:
    sysm = HomSystem(m, n)
    return sysm.cols - sysm.rank()


def ext1_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1(M, N), read off as the cokernel dimension of the Hom system."""
    sysm = HomSystem(m, n)
    return sysm.rows - sysm.rank()


def ext_cocycle_basis(m: Representation, n: Representation) -> list[dict[str, np.ndarray]]:
    """Cocycles spanning a complement of the coboundaries in ``⊕_a Hom(M_src, N_tgt)``.

    Each representative is a single unit entry: the coordinates not hit by a
    pivot of the row-reduced coboundary space, in increasing coordinate order.
    """
    sysm = HomSystem(m, n)
    f = m.field
    free = la.row_space_complement(f, sysm.matrix.T) if sysm.cols else list(range(sysm.rows))
    out = []
    for k in free:
        vec = f.zeros(sysm.rows, 1)[:, 0]
        vec[k] = f.scalar(1)
        out.append(sysm.unpack_target(vec))
    return out


def is_homomorphism(m: Representation, n: Representation, phi: Mapping[str, np.ndarray]) -> bool:
    f = m.field
    for a in m.quiver.arrows:
        lhs = f.matmul(phi[a.tgt], m.mats[a.id]) if m.dims[a.src] else None
        rhs = f.matmul(n.mats[a.id], phi[a.src]) if m.dims[a.src] else None
        if lhs is not None and not np.array_equal(lhs, rhs):
            return False
    return True


def is_exceptional(m: Representation) -> bool:
    """Indecomposable with no self-extensions."""
    from .decompose import is_indecomposable

    return ext1_dim(m, m) == 0 and is_indecomposable(m)


def is_brick(m: Representation) -> bool:
    return hom_dim(m, m) == 1


def rank_deficient_arrows(m: Representation) -> list[str]:
    """Arrows whose map is neither injective nor surjective.

    Exceptional modules over trees always give an empty list.
    """
    bad = []
    for a in m.quiver.arrows:
        mat = m.mats[a.id]
        if la.rank(m.field, mat) != min(mat.shape):
            bad.append(a.id)
    return bad


# ---------------------------------------------------------------------------
# JSON


def rep_to_dict(m: Representation) -> dict:
    f = m.field
    return {
        "dims": {v: m.dims[v] for v in m.quiver.vertices},
        "field": f.name,
        "mats": {a: [[f.format(x) for x in row] for row in mat.tolist()] for a, mat in sorted(m.mats.items())},
        "quiver": m.quiver.to_dict(),
    }


def rep_to_json(m: Representation) -> str:
    return json.dumps(rep_to_dict(m), sort_keys=True)


def rep_from_dict(d: dict, field: Field | None = None) -> Representation:
    q = Quiver.from_dict(d["quiver"])
    f = field or la.field_from_name(d.get("field", "q"))
    dims = {str(v): int(k) for v, k in d["dims"].items()}
    mats = {}
    for aid, rows in d.get("mats", {}).items():
        a = q.arrow.get(aid)
        if a is None:
            raise RepresentationError(f"unknown arrow {aid!r}")
        shape = (dims.get(a.tgt, 0), dims.get(a.src, 0))
        if shape[0] * shape[1] == 0:
            continue
        mats[aid] = f.array([[Fraction(str(x)) for x in row] for row in rows], shape)
    return Representation(q, f, dims, mats)


def rep_from_json(s: str, field: Field | None = None) -> Representation:
    return rep_from_dict(json.loads(s), field)


__all__ = [
    "Representation",
    "RepresentationError",
    "HomSystem",
    "QQ",
    "change_field",
    "direct_sum",
    "euler_form",
    "ext1_dim",
    "ext_cocycle_basis",
    "extend_by_zero",
    "hom_basis",
    "hom_dim",
    "in_basis",
    "injective",
    "is_brick",
    "is_exceptional",
    "is_homomorphism",
    "projective",
    "rep_from_dict",
    "rep_from_json",
    "rep_to_dict",
    "rep_to_json",
    "restrict",
    "simple",
    "transport",
    "zero_rep",
]
