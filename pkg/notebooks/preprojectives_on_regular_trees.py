"""
Preprojective modules on a regular tree
=======================================

On the 3-regular tree with a source at the centre, the preprojective P(x, t)
is built twice: by iterated reflection and by growing it shell by shell.  The
two agree, and the dimensions per distance shell can be read off directly.
"""

from quivertree import (
    PrimeField,
    grow_preprojective_tree,
    is_isomorphic,
    preprojective,
    preprojective_via_radiation,
    regular_tree_ball,
    split_at_origin,
)
from quivertree.preprojective import shells

F = PrimeField(1000003)
host = regular_tree_ball(3, "source", 5)
sink_host = regular_tree_ball(3, "sink", 5)

# odd t wants the centre to be a source, even t a sink
for t in (1, 2, 3, 4):
    h = host if t % 2 else sink_host
    m = preprojective(h, "c", t, F)
    print(f"P(c, {t}): total {m.total_dim}, shells {shells(h, m, 'c')}")

# the combinatorial construction needs no linear algebra at all
grown = grow_preprojective_tree(host, "c", 3)
print("grown tree for P(c, 3):", len(grown.vertex), "basis vectors over", len(set(grown.vertex)), "vertices")

# ... and its representation matches the reflection construction
m_grown, _ = preprojective_via_radiation(host, "c", 3, field=F)
print("same module:", is_isomorphic(m_grown, preprojective(host, "c", 3, F)))

# splitting at a vertex three steps away
r = split_at_origin(regular_tree_ball(3, "sink", 4), "c", "c.1.2.3", F)
print("split matches prediction:", r.matched, "pairwise orthogonal bricks:", r.pairwise_orthogonal_bricks)
