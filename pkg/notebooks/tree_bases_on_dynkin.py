"""
Tree bases for Dynkin representations
=====================================

Every indecomposable representation of a Dynkin quiver can be written with
0/1 matrices whose coefficient quiver is a tree.  This script walks through
D5 and E8, counts indecomposables and checks the radiation property at thin
vertices.
"""

from quivertree import (
    PrimeField,
    coefficient_quiver,
    dynkin_quiver,
    e8_maximal_tree_basis,
    enumerate_indecomposables,
    is_tree_basis,
    radiation_basis,
    sweep_thin_radiation,
    thin_vertices,
)

F = PrimeField(1000003)

# D5 in subspace orientation: one indecomposable per positive root
q = dynkin_quiver("D5", "subspace")
mods = enumerate_indecomposables(q, F)
print("D5 indecomposables:", len(mods))

# the largest one, and a radiation basis grown from one of its thin vertices
big = max(mods, key=lambda m: m.total_dim)
print("largest dims:", big.dims)
x = thin_vertices(big)[0]
tree, basis = radiation_basis(big, x)
g = coefficient_quiver(big, basis)
print(f"radiation basis at {x}: {len(g.nodes)} nodes, {len(g.edges)} edges, tree basis {is_tree_basis(big, basis)}")

# every indecomposable with a thin vertex is a radiation module there
report = sweep_thin_radiation(q, F)
print("D5 sweep ok:", report.ok, "pairs checked:", report.pairs_checked)

# E8: the one module without a thin vertex still has a tree basis, glued by hand
glued = e8_maximal_tree_basis(F)
g = glued.coefficient_quiver()
print("E8 maximal module:", glued.rep.dims)
print("tree basis:", is_tree_basis(glued.rep, glued.basis), "on", len(g.nodes), "nodes")
