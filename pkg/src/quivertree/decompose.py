"""Endomorphism algebras, indecomposability and Krull-Schmidt decomposition.

All randomized routines take an explicit seed.  Decomposition needs a prime
field so that random endomorphisms can be split by their eigenvalues.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg as la
from .linalg import PrimeField
from .rep import Representation, RepresentationError, hom_basis

RETRIES = 8


class DecompositionError(RuntimeError):
    """No splitting endomorphism found within the retry budget."""


class EndAlgebra:
    """The endomorphism algebra of a representation with a fixed basis."""

    def __init__(self, m: Representation):
        self.m = m
        self.field = m.field
        self.basis = hom_basis(m, m)
        self.dim = len(self.basis)
        vs = [v for v in m.quiver.vertices if m.dims[v]]
        self._vertices = vs
        f = self.field
        if self.dim:
            flat = np.stack([self._flatten(e) for e in self.basis])
            self._piv = la.column_basis(f, flat)
            self._coord_inv = la.inverse(f, flat[:, self._piv])
        self._struct = None

    def _flatten(self, phi) -> np.ndarray:
        parts = [phi[v].ravel() for v in self._vertices]
        return np.concatenate(parts) if parts else self.field.zeros(0, 0).ravel()

    def coords(self, phi) -> np.ndarray:
        """Coordinates of an endomorphism in the basis."""
        w = self._flatten(phi)[self._piv]
        return self.field.matmul(w.reshape(1, -1), self._coord_inv)[0]

    def compose(self, a, b) -> dict:
        """a after b."""
        f = self.field
        return {v: f.matmul(a[v], b[v]) if self.m.dims[v] else a[v] for v in self.m.quiver.vertices}

    def combine(self, coeffs) -> dict:
        f = self.field
        out = {}
        for v in self.m.quiver.vertices:
            acc = f.zeros(self.m.dims[v], self.m.dims[v])
            for c, e in zip(coeffs, self.basis):
                if c:
                    acc = acc + f.scalar(c) * e[v]
            out[v] = f.reduce(acc)
        return out

    def structure_constants(self) -> np.ndarray:
        """``c[i, j, l]`` with ``e_i e_j = sum_l c[i, j, l] e_l``."""
        if self._struct is None:
            k = self.dim
            c = np.empty((k, k, k), dtype=self.field.dtype)
            for i in range(k):
                for j in range(k):
                    c[i, j] = self.coords(self.compose(self.basis[i], self.basis[j]))
            self._struct = c
        return self._struct

    def radical_dim(self) -> int:
        """Dimension of the radical of the trace form ``(a, b) -> tr(L_ab)``.

        In characteristic zero or larger than the algebra dimension this is
        the Jacobson radical.
        """
        k = self.dim
        if k <= 1:
            return 0
        f = self.field
        if isinstance(f, PrimeField) and f.p <= k:
            raise DecompositionError("characteristic too small for the trace-form radical")
        c = self.structure_constants()
        # left multiplication by e_i has matrix L_i[l, j] = c[i, j, l]
        left = [c[i].T for i in range(k)]
        gram = f.zeros(k, k)
        for i in range(k):
            for j in range(i, k):
                gram[i, j] = gram[j, i] = np.sum(left[i] * left[j].T)
        return k - la.rank(f, f.reduce(gram))

    def radical_basis(self) -> np.ndarray:
        """Coordinate vectors (columns) spanning the trace-form radical."""
        k = self.dim
        f = self.field
        c = self.structure_constants()
        left = [c[i].T for i in range(k)]
        gram = f.zeros(k, k)
        for i in range(k):
            for j in range(k):
                gram[i, j] = np.sum(left[i] * left[j].T)
        return la.kernel_basis(f, f.reduce(gram))


def end_radical_dims(m: Representation) -> tuple[int, int]:
    """(dim End, dim rad End)."""
    e = EndAlgebra(m)
    return e.dim, e.radical_dim()


def is_indecomposable(m: Representation) -> bool:
    if m.total_dim == 0:
        return False
    e = EndAlgebra(m)
    if e.dim == 1:
        return True
    return e.dim - e.radical_dim() == 1


@dataclass
class Summand:
    """An indecomposable summand up to isomorphism, with one embedding per copy.

    ``embeddings[i][v]`` is a ``dims_M[v] x dims_N[v]`` matrix whose columns
    span the i-th copy inside the decomposed representation.
    """

    rep: Representation
    multiplicity: int
    embeddings: list = dc_field(default_factory=list)


def _basis_change(m: Representation, parts: list[dict[str, np.ndarray]]):
    """Split ``m`` along a direct sum of submodules given by column bases."""
    f = m.field
    q = m.quiver
    full = {}
    for v in q.vertices:
        cols = [p[v] for p in parts if p[v].shape[1]]
        full[v] = np.concatenate(cols, axis=1) if cols else f.zeros(m.dims[v], 0)
        if full[v].shape[1] != m.dims[v]:
            raise DecompositionError("parts do not add up to the whole space")
    inv = {v: la.inverse(f, full[v]) if m.dims[v] else f.zeros(0, 0) for v in q.vertices}
    out = []
    offs = {v: 0 for v in q.vertices}
    for p in parts:
        dims = {v: p[v].shape[1] for v in q.vertices}
        mats = {}
        for a in q.arrows:
            if not (dims[a.src] and dims[a.tgt]):
                continue
            img = f.matmul(inv[a.tgt], f.matmul(m.mats[a.id], p[a.src]))
            o = offs[a.tgt]
            block = img[o:o + dims[a.tgt]]
            rest = np.delete(img, np.s_[o:o + dims[a.tgt]], axis=0)
            if np.any(rest != 0):
                raise DecompositionError("part is not a submodule")
            mats[a.id] = block
        for v in q.vertices:
            offs[v] += dims[v]
        out.append(Representation(q, f, dims, mats))
    return out


def _component_parts(m: Representation) -> list[dict[str, np.ndarray]]:
    """Coordinate splitting along connected components of the support."""
    f = m.field
    comps = m.quiver.components(m.support())
    parts = []
    for comp in comps:
        parts.append({v: f.eye(m.dims[v]) if v in comp else f.zeros(m.dims[v], 0) for v in m.quiver.vertices})
    return parts


def _fitting_parts(m: Representation, end: EndAlgebra, rng: random.Random):
    f = m.field
    coeffs = [f.random_scalar(rng) for _ in range(end.dim)]
    phi = end.combine(coeffs)
    poly = [1]
    for v in m.quiver.vertices:
        if m.dims[v]:
            poly = la.poly_mul(poly, [int(c) for c in la.charpoly(f, phi[v])], f.p)
    roots, rest = la.factor_squarefree_roots(poly, f.p, seed=rng.randrange(2**31))
    factors = [la.poly_pow([(-r) % f.p, 1], mult, f.p) for r, mult in roots]
    if len(rest) > 1:
        factors.append(rest)
    if len(factors) < 2:
        return None
    parts = []
    for g in factors:
        part = {}
        for v in m.quiver.vertices:
            if m.dims[v]:
                part[v] = la.kernel_basis(f, la.poly_eval_matrix(f, g, phi[v]))
            else:
                part[v] = f.zeros(0, 0)
        parts.append(part)
    return parts


def _idempotent_parts(m: Representation, end: EndAlgebra, rng: random.Random):
    """Split with an idempotent lifted from a semisimple quotient element."""
    f = m.field
    rad = end.radical_basis()
    k = end.dim
    coeffs = [f.random_scalar(rng) for _ in range(k)]
    a = end.combine(coeffs)
    # minimal polynomial of a modulo the radical
    powers = [end.coords({v: f.eye(m.dims[v]) for v in m.quiver.vertices})]
    cur = a
    while True:
        powers.append(end.coords(cur))
        stack = np.stack(powers + [rad[:, j] for j in range(rad.shape[1])], axis=1)
        ker = la.kernel_basis(f, stack)
        if ker.shape[1]:
            mu = [int(x) for x in ker[:len(powers), 0]]
            break
        cur = end.compose(a, cur)
    roots, rest = la.factor_squarefree_roots(mu, f.p, seed=rng.randrange(2**31))
    if not roots or (len(roots) == 1 and len(rest) == 1):
        return None
    lam = roots[0][0]
    h, _ = la.poly_divmod(mu, la.poly_pow([(-lam) % f.p, 1], roots[0][1], f.p), f.p)
    # e(t) = h(t) u(t) with u h = 1 modulo (t - lam)^mult; take u = h(lam)^-1 and lift
    hl = sum(c * pow(lam, i, f.p) for i, c in enumerate(h)) % f.p
    if hl == 0:
        return None
    e = {v: f.reduce(la.poly_eval_matrix(f, h, a[v]) * f.inv(hl)) for v in m.quiver.vertices}
    for _ in range(64):
        e2 = end.compose(e, e)
        if all(np.array_equal(e2[v], e[v]) for v in e):
            break
        e3 = end.compose(e2, e)
        e = {v: f.reduce(3 * e2[v] - 2 * e3[v]) for v in e}
    else:
        return None
    parts = []
    for idem in (e, {v: f.reduce(f.eye(m.dims[v]) - e[v]) for v in e}):
        part = {}
        for v in m.quiver.vertices:
            if m.dims[v]:
                cols = la.column_basis(f, idem[v])
                part[v] = idem[v][:, cols]
            else:
                part[v] = f.zeros(0, 0)
        parts.append(part)
    if any(sum(p[v].shape[1] for v in p) == 0 for p in parts):
        return None
    return parts


def _split(m: Representation, rng: random.Random):
    """None if ``m`` is indecomposable, else a list of proper summand bases."""
    end = EndAlgebra(m)
    if end.dim == 1:
        return None
    if end.dim - end.radical_dim() == 1:
        return None
    for _ in range(RETRIES):
        parts = _fitting_parts(m, end, rng)
        if parts is not None:
            return parts
    for _ in range(RETRIES):
        parts = _idempotent_parts(m, end, rng)
        if parts is not None:
            return parts
    raise DecompositionError("no splitting endomorphism found")


def decompose_pieces(m: Representation, seed: int = 0) -> list[tuple[Representation, dict[str, np.ndarray]]]:
    """Indecomposable direct summands with their embeddings, one entry per copy."""
    f = m.field
    if not isinstance(f, PrimeField):
        raise RepresentationError("decomposition needs a prime field")
    rng = random.Random(seed)
    q = m.quiver
    stack = []
    comp_parts = _component_parts(m)
    for rep, part in zip(_basis_change(m, comp_parts), comp_parts):
        stack.append((rep, part))
    done = []
    while stack:
        rep, emb = stack.pop()
        parts = _split(rep, rng)
        if parts is None:
            done.append((rep, emb))
            continue
        for sub, part in zip(_basis_change(rep, parts), parts):
            new_emb = {v: f.matmul(emb[v], part[v]) if part[v].shape[1] and emb[v].shape[0] else f.zeros(m.dims[v], part[v].shape[1]) for v in q.vertices}
            stack.append((sub, new_emb))
    done.sort(key=lambda t: t[0].dim_tuple())
    return done


def decompose(m: Representation, seed: int = 0) -> list[Summand]:
    """Krull-Schmidt decomposition with multiplicities, grouped by isomorphism."""
    groups: list[Summand] = []
    for rep, emb in decompose_pieces(m, seed):
        for g in groups:
            if g.rep.dims == rep.dims and is_isomorphic(g.rep, rep, seed):
                g.multiplicity += 1
                g.embeddings.append(emb)
                break
        else:
            groups.append(Summand(rep, 1, [emb]))
    return groups


def is_isomorphic(a: Representation, b: Representation, seed: int = 0) -> bool:
    """Randomized test: some random homomorphism is invertible at every vertex.

    A false negative has probability at most dim/p per attempt.
    """
    if a.quiver != b.quiver or a.field != b.field:
        raise RepresentationError("isomorphism test across quivers or fields")
    if a.dims != b.dims:
        return False
    if a.total_dim == 0:
        return True
    basis = hom_basis(a, b)
    if not basis:
        return False
    f = a.field
    rng = random.Random(seed)
    for _ in range(RETRIES):
        coeffs = [f.random_scalar(rng) for _ in basis]
        ok = True
        for v in a.quiver.vertices:
            if not a.dims[v]:
                continue
            mat = f.zeros(b.dims[v], a.dims[v])
            for c, h in zip(coeffs, basis):
                mat = mat + f.scalar(c) * h[v]
            if not la.is_invertible(f, f.reduce(mat)):
                ok = False
                break
        if ok:
            return True
    return False
