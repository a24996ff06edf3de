"""Reflection functors at sinks and sources, and the bipartite source reflection."""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .quiver import Arrow, Quiver
from .rep import Representation, RepresentationError


def reflect_sink(m: Representation, v: str) -> Representation:
    """Reflection at a sink: the new space is the kernel of the sum of incoming maps.

    Incoming arrows keep their ids and are reversed.  The new matrix of an
    arrow is the block of the kernel basis belonging to its source.
    """
    q, f = m.quiver, m.field
    if not q.is_sink(v):
        raise RepresentationError(f"{v!r} is not a sink")
    arrows = sorted(q.in_arrows[v], key=lambda a: a.id)
    blocks = [m.dims[a.src] for a in arrows]
    total = sum(blocks)
    if total:
        h = np.concatenate([m.mats[a.id] for a in arrows], axis=1) if m.dims[v] else f.zeros(0, total)
        ker = la.kernel_basis(f, h)
    else:
        ker = f.zeros(0, 0)
    new_dim = ker.shape[1]
    dims = dict(m.dims)
    dims[v] = new_dim
    mats = {a: mat for a, mat in m.mats.items()}
    off = 0
    for a, b in zip(arrows, blocks):
        mats[a.id] = ker[off:off + b, :]
        off += b
    return Representation(q.reverse_at(v), f, dims, mats)


def reflect_source(m: Representation, v: str) -> Representation:
    """Reflection at a source: the new space is the cokernel of the stacked outgoing maps."""
    q, f = m.quiver, m.field
    if not q.is_source(v):
        raise RepresentationError(f"{v!r} is not a source")
    arrows = sorted(q.out_arrows[v], key=lambda a: a.id)
    new_dim, pieces = _cokernel_blocks(m, v, arrows)
    dims = dict(m.dims)
    dims[v] = new_dim
    mats = dict(m.mats)
    mats.update(pieces)
    return Representation(q.reverse_at(v), f, dims, mats)


def _cokernel_blocks(m: Representation, v: str, arrows: list[Arrow]) -> tuple[int, dict[str, np.ndarray]]:
    f = m.field
    blocks = [m.dims[a.tgt] for a in arrows]
    total = sum(blocks)
    if total == 0:
        return 0, {a.id: f.zeros(0, 0) for a in arrows}
    if m.dims[v]:
        h = np.concatenate([m.mats[a.id] for a in arrows], axis=0)
        coker = la.left_kernel_basis(f, h)
    else:
        coker = f.eye(total)
    out = {}
    off = 0
    for a, b in zip(arrows, blocks):
        out[a.id] = coker[:, off:off + b]
        off += b
    return coker.shape[0], out


def rho_minus(m: Representation) -> Representation:
    """Reflect at every source of a bipartite quiver at once.

    The result lives on the opposite quiver.  Sources are pairwise
    non-adjacent, so the order of the individual reflections is irrelevant.
    """
    q, f = m.quiver, m.field
    sources, _ = q.bipartite_classes()
    dims = dict(m.dims)
    mats = dict(m.mats)
    for v in sorted(sources):
        arrows = sorted(q.out_arrows[v], key=lambda a: a.id)
        if not arrows:
            continue
        new_dim, pieces = _cokernel_blocks(m, v, arrows)
        dims[v] = new_dim
        mats.update(pieces)
    return Representation(q.opposite(), f, dims, mats)


def rho_plus(m: Representation) -> Representation:
    """Reflect at every sink of a bipartite quiver at once."""
    q = m.quiver
    _, sinks = q.bipartite_classes()
    out = m
    for v in sorted(sinks):
        if q.in_arrows[v]:
            out = reflect_sink(out, v)
    return out


def tau_minus(m: Representation) -> Representation:
    """Inverse Auslander-Reiten translate on a bipartite quiver: two source reflections."""
    return rho_minus(rho_minus(m))
