"""Building exceptional modules as extensions of copies of an orthogonal exceptional pair.

Given exceptional X, Y with no maps between them, ``Ext^1(Y, X) = 0`` and
``e = dim Ext^1(X, Y) > 0``, a representation E of the e-Kronecker quiver with
dims ``(x, y)`` glues ``x`` copies of X on top of ``y`` copies of Y: the i-th
Kronecker matrix says how much of the i-th extension class joins the copies.
An exceptional E yields an exceptional middle term.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import issparse

from . import linalg as la
from .basis import IndexedBasis, coefficient_quiver, is_tree, rep_in_basis, standard_basis
from .decompose import is_indecomposable
from .kronecker import KroneckerRep, is_exceptional_kron
from .rep import Representation, RepresentationError, ext1_dim, ext_cocycle_basis, hom_dim, is_exceptional

__all__ = [
    "ExceptionalTriple",
    "GluingError",
    "SynthesisError",
    "ext_cocycle_basis",
    "glue_tree_basis",
    "synthesize",
    "tree_cocycles",
]


class SynthesisError(RepresentationError):
    pass


class GluingError(RepresentationError):
    pass


@dataclass
class ExceptionalTriple:
    X: Representation
    Y: Representation
    E: KroneckerRep

    def violations(self) -> list[str]:
        """Reasons the triple is unusable; empty when it is valid."""
        X, Y, E = self.X, self.Y, self.E
        out = []
        if X.quiver != Y.quiver or X.field != Y.field:
            return ["X and Y live on different quivers or fields"]
        if E.field != X.field:
            out.append("E is over a different field")
        for name, m in (("X", X), ("Y", Y)):
            if not is_exceptional(m):
                out.append(f"{name} is not exceptional")
        if hom_dim(X, Y) or hom_dim(Y, X):
            out.append("X and Y are not orthogonal")
        if ext1_dim(Y, X):
            out.append("Ext^1(Y, X) is nonzero")
        e = ext1_dim(X, Y)
        if e != E.n:
            out.append(f"E has {E.n} arrows but dim Ext^1(X, Y) = {e}")
        if min(E.dims) <= 0:
            out.append("E is not sincere")
        elif not out and not is_exceptional_kron(E):
            out.append("E is not exceptional")
        return out

    def check(self) -> None:
        bad = self.violations()
        if bad:
            raise SynthesisError("; ".join(bad))


def _dense(a):
    return a.toarray() if issparse(a) else a


def tree_cocycles(X: Representation, Y: Representation, bx: IndexedBasis | None = None, by: IndexedBasis | None = None) -> list[dict[str, np.ndarray]]:
    """Cocycles that are single unit entries in the coordinates of the bases ``bx`` and ``by``.

    Returned in the standard coordinates of X and Y.
    """
    f = X.field
    bx = bx or standard_basis(X)
    by = by or standard_basis(Y)
    xs, ys = rep_in_basis(X, bx), rep_in_basis(Y, by)
    out = []
    for z in ext_cocycle_basis(xs, ys):
        back = {}
        for a in X.quiver.arrows:
            mat = z[a.id]
            if mat.size:
                mat = f.matmul(f.matmul(by.vectors[a.tgt], mat), la.inverse(f, bx.vectors[a.src]))
            back[a.id] = mat
        out.append(back)
    return out


def synthesize(triple: ExceptionalTriple, bx: IndexedBasis | None = None, by: IndexedBasis | None = None, check: bool = True) -> Representation:
    """The middle term M of ``0 -> Y^y -> M -> X^x -> 0`` determined by E.

    ``M_v = k^x (x) X_v  +  k^y (x) Y_v`` (copy-major), each arrow acts by
    ``[[1 (x) X_a, 0], [sum_i E_i (x) z_i(a), 1 (x) Y_a]]``, with ``z_i`` the
    cocycles from ``tree_cocycles``.
    """
    if check:
        triple.check()
    X, Y, E = triple.X, triple.Y, triple.E
    f = X.field
    x, y = E.dims
    cocycles = tree_cocycles(X, Y, bx, by)
    if len(cocycles) != E.n:
        raise SynthesisError("number of cocycles differs from the number of Kronecker arrows")
    emats = [f.array(_dense(m), (y, x)) for m in E.mats]
    q = X.quiver
    dims = {v: x * X.dims[v] + y * Y.dims[v] for v in q.vertices}
    mats = {}
    for a in q.arrows:
        xs, xt, ys, yt = X.dims[a.src], X.dims[a.tgt], Y.dims[a.src], Y.dims[a.tgt]
        mat = f.zeros(dims[a.tgt], dims[a.src])
        if x * xs * xt:
            mat[: x * xt, : x * xs] = f.kron(f.eye(x), X.mats[a.id])
        if y * ys * yt:
            mat[x * xt:, x * xs:] = f.kron(f.eye(y), Y.mats[a.id])
        if x * y * xs * yt:
            block = f.zeros(y * yt, x * xs)
            for ei, z in zip(emats, cocycles):
                block = block + f.kron(ei, z[a.id])
            mat[x * xt:, : x * xs] = f.reduce(block)
        mats[a.id] = mat
    m = Representation(q, f, dims, mats)
    if check and not (ext1_dim(m, m) == 0 and is_indecomposable(m)):
        raise SynthesisError("synthesized module is not exceptional; choose other cocycle representatives")
    return m


def glue_tree_basis(triple: ExceptionalTriple, bx: IndexedBasis | None = None, by: IndexedBasis | None = None, be: IndexedBasis | None = None) -> tuple[Representation, IndexedBasis]:
    """The module ``synthesize(triple, bx, by)`` together with its glued basis.

    The basis is ``x`` copies of ``bx`` and ``y`` copies of ``by``, mixed by
    ``be``; labels read ``"<E label>|<X or Y label>"``.  In it every arrow has
    the copies of the coefficient quivers of X and Y as diagonal edges plus
    one cross edge per nonzero entry of the Kronecker matrices in ``be``.
    Raises ``GluingError`` if the result is not a tree.
    """
    X, Y, E = triple.X, triple.Y, triple.E
    f = X.field
    bx = bx or standard_basis(X)
    by = by or standard_basis(Y)
    x, y = E.dims
    if be is None:
        be = IndexedBasis({"s": [f"s#{i}" for i in range(x)], "t": [f"t#{j}" for j in range(y)]}, {"s": f.eye(x), "t": f.eye(y)})
    es, et = f.array(_dense(be.vectors["s"]), (x, x)), f.array(_dense(be.vectors["t"]), (y, y))
    m = synthesize(triple, bx, by)
    labels, vectors = {}, {}
    for v in X.quiver.vertices:
        top = f.kron(es, bx.vectors[v]) if x * X.dims[v] else f.zeros(0, 0)
        bottom = f.kron(et, by.vectors[v]) if y * Y.dims[v] else f.zeros(0, 0)
        n = m.dims[v]
        vec = f.zeros(n, n)
        vec[: top.shape[0], : top.shape[1]] = top
        vec[top.shape[0]:, top.shape[1]:] = bottom
        vectors[v] = vec
        labels[v] = [f"{e}|{b}" for e in be.labels["s"] for b in bx.labels[v]] + [f"{e}|{b}" for e in be.labels["t"] for b in by.labels[v]]
    basis = IndexedBasis(labels, vectors)
    g = coefficient_quiver(m, basis)
    if not is_tree(g):
        raise GluingError(f"glued coefficient quiver has {len(g.edges)} edges on {len(g.nodes)} nodes and is not a tree")
    return m, basis
