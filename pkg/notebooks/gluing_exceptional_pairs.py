"""
Gluing copies of an orthogonal exceptional pair
===============================================

Given exceptional X, Y with no maps between them and e independent
extensions of X by Y, an exceptional representation of the e-Kronecker quiver
says how to glue copies of X on top of copies of Y.  Tree bases of the
pieces glue to a tree basis of the result.
"""

from quivertree import (
    ExceptionalTriple,
    PrimeField,
    coefficient_quiver,
    ext1_dim,
    glue_tree_basis,
    is_exceptional,
    kron_preprojective,
    kronecker_quiver,
    simple,
)

F = PrimeField(1000003)
q = kronecker_quiver(3)
X, Y = simple(q, "s", F), simple(q, "t", F)
print("dim Ext^1(X, Y) =", ext1_dim(X, Y))

for t in (1, 2, 3):
    E, _ = kron_preprojective(3, t, F)
    m, basis = glue_tree_basis(ExceptionalTriple(X, Y, E))
    g = coefficient_quiver(m, basis)
    print(f"E dims {E.dims} -> module dims {m.dims}, exceptional {is_exceptional(m)}, tree on {len(g.nodes)} nodes")
