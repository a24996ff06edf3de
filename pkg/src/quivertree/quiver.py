"""Finite quivers with string vertex and arrow ids, plus tree utilities."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


class QuiverError(ValueError):
    """Unknown vertices, duplicate ids and graph-shape violations."""


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    tgt: str


class Quiver:
    """An immutable quiver.

    Vertices and arrows are stored sorted by id so that equal quivers compare
    and serialize identically regardless of construction order.
    """

    def __init__(self, vertices: Iterable[str], arrows: Iterable[Arrow | tuple[str, str, str]]):
        vs = tuple(sorted(str(v) for v in vertices))
        if len(set(vs)) != len(vs):
            raise QuiverError("duplicate vertex id")
        arr = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*map(str, a))
            arr.append(a)
        arr.sort(key=lambda a: a.id)
        if len({a.id for a in arr}) != len(arr):
            raise QuiverError("duplicate arrow id")
        vset = set(vs)
        for a in arr:
            if a.src not in vset or a.tgt not in vset:
                raise QuiverError(f"arrow {a.id} uses an unknown vertex")
        self._vertices = vs
        self._arrows = tuple(arr)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self._arrows

    @cached_property
    def arrow(self) -> dict[str, Arrow]:
        return {a.id: a for a in self._arrows}

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self._vertices)

    @cached_property
    def out_arrows(self) -> dict[str, tuple[Arrow, ...]]:
        out: dict[str, list[Arrow]] = {v: [] for v in self._vertices}
        for a in self._arrows:
            out[a.src].append(a)
        return {v: tuple(x) for v, x in out.items()}

    @cached_property
    def in_arrows(self) -> dict[str, tuple[Arrow, ...]]:
        inc: dict[str, list[Arrow]] = {v: [] for v in self._vertices}
        for a in self._arrows:
            inc[a.tgt].append(a)
        return {v: tuple(x) for v, x in inc.items()}

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        """Neighbors in the underlying graph, sorted, without repetition."""
        adj: dict[str, set[str]] = {v: set() for v in self._vertices}
        for a in self._arrows:
            adj[a.src].add(a.tgt)
            adj[a.tgt].add(a.src)
        return {v: tuple(sorted(n)) for v, n in adj.items()}

    def neighbors(self, v: str) -> tuple[str, ...]:
        self._check(v)
        return self.adjacency[v]

    def arrows_at(self, v: str) -> tuple[Arrow, ...]:
        self._check(v)
        return tuple(sorted(self.in_arrows[v] + self.out_arrows[v], key=lambda a: a.id))

    def arrows_between(self, u: str, v: str) -> tuple[Arrow, ...]:
        return tuple(a for a in self.out_arrows[u] + self.in_arrows[u] if {a.src, a.tgt} == {u, v} and a.src != a.tgt)

    def is_sink(self, v: str) -> bool:
        return not self.out_arrows[v]

    def is_source(self, v: str) -> bool:
        return not self.in_arrows[v]

    def _check(self, v: str) -> None:
        if v not in self.vertex_set:
            raise QuiverError(f"unknown vertex {v!r}")

    # structure ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Quiver) and self._vertices == other._vertices and self._arrows == other._arrows

    def __hash__(self):
        return hash((self._vertices, self._arrows))

    def __repr__(self):
        return f"Quiver({len(self._vertices)} vertices, {len(self._arrows)} arrows)"

    def full_subquiver(self, keep: Iterable[str]) -> "Quiver":
        keep = set(keep)
        for v in keep:
            self._check(v)
        return Quiver(keep, [a for a in self._arrows if a.src in keep and a.tgt in keep])

    def opposite(self) -> "Quiver":
        return Quiver(self._vertices, [Arrow(a.id, a.tgt, a.src) for a in self._arrows])

    def reverse_at(self, v: str) -> "Quiver":
        """Reverse every arrow incident to ``v``, keeping arrow ids."""
        self._check(v)
        return Quiver(self._vertices, [Arrow(a.id, a.tgt, a.src) if v in (a.src, a.tgt) else a for a in self._arrows])

    def underlying_is_tree(self) -> bool:
        if not self._vertices:
            return False
        if len(self._arrows) != len(self._vertices) - 1:
            return False
        if any(a.src == a.tgt for a in self._arrows):
            return False
        return len(self.bfs_order(self._vertices[0])) == len(self._vertices)

    def is_connected(self) -> bool:
        return bool(self._vertices) and len(self.bfs_order(self._vertices[0])) == len(self._vertices)

    def bfs_order(self, start: str) -> list[str]:
        """Vertices reachable from ``start`` in BFS order, ties broken by id."""
        self._check(start)
        seen = {start}
        order = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
        return order

    def components(self, vertices: Iterable[str] | None = None) -> list[frozenset[str]]:
        """Connected components of the full subquiver on ``vertices``."""
        pool = set(self._vertices if vertices is None else vertices)
        comps = []
        for v in sorted(pool):
            if any(v in c for c in comps):
                continue
            seen = {v}
            queue = deque([v])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if w in pool and w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(frozenset(seen))
        return comps

    def distances_from(self, x: str) -> dict[str, int]:
        self._check(x)
        dist = {x: 0}
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def distance(self, x: str, y: str) -> int:
        self._check(y)
        d = self.distances_from(x)
        if y not in d:
            raise QuiverError(f"{x!r} and {y!r} are not connected")
        return d[y]

    def path(self, x: str, y: str) -> list[str]:
        """The vertex path from ``x`` to ``y`` in a tree."""
        self._check(x)
        self._check(y)
        parent = {x: None}
        queue = deque([x])
        while queue:
            u = queue.popleft()
            if u == y:
                break
            for w in self.adjacency[u]:
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
        if y not in parent:
            raise QuiverError(f"{x!r} and {y!r} are not connected")
        out = [y]
        while out[-1] != x:
            out.append(parent[out[-1]])
        return out[::-1]

    def ball(self, x: str, r: int) -> "Quiver":
        d = self.distances_from(x)
        return self.full_subquiver(v for v, k in d.items() if k <= r)

    def delete_vertex(self, x: str) -> tuple["Quiver", list[frozenset[str]]]:
        """The full subquiver without ``x`` and its connected components."""
        self._check(x)
        rest = [v for v in self._vertices if v != x]
        sub = self.full_subquiver(rest)
        return sub, sub.components()

    def centipede(self, path: list[str]) -> list[str]:
        """Vertices adjacent to a path but not on it, sorted by id."""
        on = set(path)
        legs = set()
        for v in path:
            legs.update(w for w in self.neighbors(v) if w not in on)
        return sorted(legs)

    def bipartite_classes(self) -> tuple[frozenset[str], frozenset[str]]:
        """(sources, sinks) of a bipartite quiver; raises if some vertex is neither."""
        sources, sinks = set(), set()
        for v in self._vertices:
            s, t = self.is_source(v), self.is_sink(v)
            if s and not t:
                sources.add(v)
            elif t and not s:
                sinks.add(v)
            elif s and t:
                # isolated vertex; count it as a source
                sources.add(v)
            else:
                raise QuiverError(f"vertex {v!r} is neither a sink nor a source")
        return frozenset(sources), frozenset(sinks)

    def is_bipartite(self) -> bool:
        try:
            self.bipartite_classes()
        except QuiverError:
            return False
        return True

    # serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "arrows": [{"id": a.id, "src": a.src, "tgt": a.tgt} for a in self._arrows],
            "vertices": list(self._vertices),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Quiver":
        return cls(d["vertices"], [Arrow(str(a["id"]), str(a["src"]), str(a["tgt"])) for a in d["arrows"]])

    @classmethod
    def from_json(cls, s: str) -> "Quiver":
        return cls.from_dict(json.loads(s))


def kronecker_quiver(n: int, source: str = "s", sink: str = "t") -> Quiver:
    """Two vertices and ``n`` parallel arrows ``k1..kn`` from source to sink."""
    return Quiver([source, sink], [Arrow(f"k{i}", source, sink) for i in range(1, n + 1)])


def regular_tree_ball(n: int, center_kind: str, radius: int) -> Quiver:
    """The ball around the center of the n-regular tree, bipartitely oriented.

    Vertex ids spell the color path from the center ``c``: ``c``, ``c.2``,
    ``c.2.1`` and so on.  The arrow joining a vertex to its parent carries the
    child's id, so the color of an arrow is the last component of its id.
    ``center_kind`` says whether the center is a ``"source"`` or a ``"sink"``.
    """
    if n < 1:
        raise QuiverError("n must be positive")
    if center_kind not in ("source", "sink"):
        raise QuiverError("center_kind must be 'source' or 'sink'")
    vertices = ["c"]
    arrows = []
    frontier = [("c", 0, 0)]
    for depth in range(1, radius + 1):
        nxt = []
        for vid, color, _ in frontier:
            for c in range(1, n + 1):
                if c == color:
                    continue
                child = f"{vid}.{c}"
                vertices.append(child)
                # even depth vertices share the center's kind
                parent_is_source = (depth - 1) % 2 == 0
                if center_kind == "sink":
                    parent_is_source = not parent_is_source
                arrows.append(Arrow(child, vid, child) if parent_is_source else Arrow(child, child, vid))
                nxt.append((child, c, depth))
        frontier = nxt
    return Quiver(vertices, arrows)


def arrow_color(arrow_id: str) -> int:
    """Color of an arrow in a ball built by :func:`regular_tree_ball`."""
    return int(arrow_id.rsplit(".", 1)[1])


def orientation_of(q: Quiver, v: str) -> str:
    if q.is_sink(v) and not q.is_source(v):
        return "sink"
    if q.is_source(v) and not q.is_sink(v):
        return "source"
    return "isolated" if q.is_sink(v) else "mixed"
