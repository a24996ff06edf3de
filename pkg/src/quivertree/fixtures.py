"""Worked examples: builders for the modules and reports of what the toolkit finds.

Every ``exampleK`` returns a JSON-friendly report.  ``check_example`` compares
it with the frozen copy bundled in ``quivertree/data``.
"""

from __future__ import annotations

import json
from importlib import resources

from .basis import coefficient_quiver, is_tree, is_tree_basis, standard_basis
from .decompose import is_isomorphic
from .dynkin import E8_MAXIMAL, E8_THIN, dynkin_quiver, e8_maximal_tree_basis, hammock, module_for_root
from .linalg import DEFAULT_PRIME, Field, PrimeField
from .preprojective import preprojective
from .quiver import Quiver, regular_tree_ball
from .radiation import (
    analyze_thin_vertex,
    as_radiation_module,
    is_radiation,
    is_radiation_quiver,
    radiation_build,
    root_degree_violation,
    thin_vertices,
    verify_radiation_basis,
)
from .rep import Representation, ext1_dim, hom_dim, is_exceptional, restrict

EXAMPLE_IDS = (1, 3, 4, 5, 6, 7)


def _support(m: Representation) -> dict[str, int]:
    return {v: k for v, k in m.dims.items() if k}


def _field(field: Field | None) -> Field:
    return field or PrimeField(DEFAULT_PRIME)


def _analysis(m: Representation, x: str, seed: int) -> dict:
    a = analyze_thin_vertex(m, x, seed)
    return {
        "exceptional_family": a.exceptional_family,
        "neighbors": sorted({s.neighbor for s in a.summands}),
        "orthogonal": a.orthogonal,
        "summands": sorted(({"dims": s.dims(), "multiplicity": s.multiplicity} for s in a.summands), key=lambda s: json.dumps(s, sort_keys=True)),
    }


# ---------------------------------------------------------------------------
# builders


def example1_module(field: Field | None = None) -> Representation:
    """P(c, 3) on the 3-regular tree (c a source) restricted to the ball of radius 2."""
    host = regular_tree_ball(3, "source", 3)
    p = preprojective(host, "c", 3, _field(field))
    return restrict(p, [v for v, d in host.distances_from("c").items() if d <= 2])


def star_quiver(arms: dict[str, bool], center: str = "c") -> Quiver:
    """A star around ``center``; ``arms[v]`` is True for ``v -> center``."""
    return Quiver([center, *arms], [(f"{v}-{center}", v, center) if inward else (f"{center}-{v}", center, v) for v, inward in arms.items()])


def example3_module(field: Field | None = None) -> Representation:
    q = star_quiver({"x": True, "u": True, "p": False, "q": False})
    return module_for_root(q, {"x": 1, "u": 2, "c": 3, "p": 2, "q": 2}, _field(field))


def example4_quiver() -> Quiver:
    return star_quiver({"v": True, "x": False, "p": False, "q": False})


def example4_module(field: Field | None = None) -> Representation:
    return module_for_root(example4_quiver(), {"v": 1, "c": 3, "x": 1, "p": 2, "q": 2}, _field(field))


def thin_module(q: Quiver, support: list[str], field: Field) -> Representation:
    """One-dimensional spaces on ``support`` with identity maps along its arrows."""
    keep = set(support)
    mats = {a.id: field.array([[1]]) for a in q.arrows if a.src in keep and a.tgt in keep}
    return Representation(q, field, {v: 1 for v in keep}, mats)


def example5_module(field: Field | None = None, seed: int = 0) -> Representation:
    """Radiation module at v glued from the arms {c, x} and {c, p, q}."""
    q = example4_quiver()
    f = _field(field)
    kids = [as_radiation_module(thin_module(q, s, f), "c", seed) for s in (["c", "x"], ["c", "p", "q"])]
    return radiation_build("v", kids).rep


def example6_gamma(field: Field | None = None) -> Representation:
    """The maximal D5 module written in a tree basis whose quiver is not a radiation quiver."""
    q = dynkin_quiver("D5", "subspace")
    f = _field(field)
    mats = {
        "a1-a2": f.array([[1], [0]]),
        "a2-a3": f.array([[1, 0], [1, 1]]),
        "a3-b": f.array([[1], [0]]),
        "a3-c": f.array([[0], [1]]),
    }
    return Representation(q, f, {"a1": 1, "a2": 2, "a3": 2, "b": 1, "c": 1}, mats)


# ---------------------------------------------------------------------------
# reports


def example1(field: Field | None = None, seed: int = 0) -> dict:
    m = example1_module(field)
    x = "c.1.2"
    return {
        "dims": _support(m),
        "exceptional": is_exceptional(m),
        "is_radiation": is_radiation(m, x, seed),
        "origin": x,
        "thin_analysis": _analysis(m, x, seed),
        "total_dim": m.total_dim,
    }


def example3(field: Field | None = None, seed: int = 0) -> dict:
    m = example3_module(field)
    thin = thin_vertices(m)
    return {
        "dims": _support(m),
        "exceptional": is_exceptional(m),
        "is_radiation": {x: is_radiation(m, x, seed) for x in thin},
        "thin_analysis": _analysis(m, "x", seed),
        "thin_vertices": thin,
    }


def example4(field: Field | None = None, seed: int = 0) -> dict:
    m = example4_module(field)
    out = {"dims": _support(m), "exceptional": is_exceptional(m), "is_radiation": {}, "thin_analysis": {}}
    for x in ("x", "v"):
        out["is_radiation"][x] = is_radiation(m, x, seed)
        out["thin_analysis"][x] = _analysis(m, x, seed)
    a = analyze_thin_vertex(m, "v", seed)
    small, big = sorted(a.summands, key=lambda s: s.rep.total_dim)
    out["hom_dims_at_v"] = {"small_to_big": hom_dim(small.rep, big.rep), "big_to_small": hom_dim(big.rep, small.rep)}
    return out


def example5(field: Field | None = None, seed: int = 0) -> dict:
    m = example5_module(field, seed)
    return {
        "dims": _support(m),
        "end_dim": hom_dim(m, m),
        "exceptional": is_exceptional(m),
        "ext1_dim": ext1_dim(m, m),
        "is_radiation": is_radiation(m, "v", seed),
        "thin_analysis": _analysis(m, "v", seed),
    }


def example6(field: Field | None = None, seed: int = 0) -> dict:
    g_rep = example6_gamma(field)
    q = g_rep.quiver
    m = module_for_root(q, g_rep.dims, g_rep.field)
    gamma = coefficient_quiver(g_rep, standard_basis(g_rep))
    leaves = [v for v in q.vertices if len(q.neighbors(v)) == 1]
    out = {
        "dims": _support(m),
        "gamma_edges": len(gamma.edges),
        "gamma_is_tree_basis": is_tree(gamma),
        "gamma_isomorphic_to_maximal": is_isomorphic(g_rep, m, seed),
        "gamma_nonzero_on_a2_a3": sum(1 for e in gamma.edges if e[2] == "a2-a3"),
        "leaves": {},
    }
    for x in leaves:
        rep = verify_radiation_basis(m, x, seed)
        g = coefficient_quiver(m, rep.basis)
        out["leaves"][x] = {
            "gamma_degree_violation": root_degree_violation(g_rep, gamma, x, seed),
            "gamma_is_radiation_quiver": is_radiation_quiver(g_rep, gamma, x, seed),
            "radiation_basis_nonzero_on_a2_a3": sum(1 for e in g.edges if e[2] == "a2-a3"),
            "radiation_basis_ok": rep.ok,
            "radiation_basis_is_radiation_quiver": is_radiation_quiver(m, g, x, seed),
        }
    return out


def example7(field: Field | None = None, seed: int = 0) -> dict:
    f = _field(field)
    q = dynkin_quiver("E8", "subspace")
    thin = module_for_root(q, E8_THIN, f)
    e7 = q.full_subquiver([v for v in q.vertices if v != "a1"])
    h = hammock(e7, "a2", f)
    triples = h.antichains(3)
    glued = e8_maximal_tree_basis(f, seed)
    g = glued.coefficient_quiver()
    maximal = module_for_root(q, E8_MAXIMAL, f)
    return {
        "hammock": {
            "antisymmetric": h.antisymmetric,
            "members": len(h.members),
            "three_antichains": [sorted((_support(h.members[i]) for i in t), key=lambda d: json.dumps(d, sort_keys=True)) for t in triples],
            "four_antichains": len(h.antichains(4)),
        },
        "maximal": {
            "dims": _support(maximal),
            "thin_vertices": thin_vertices(maximal),
            "tree_basis": is_tree_basis(glued.rep, glued.basis),
            "tree_basis_edges": len(g.edges),
            "tree_basis_isomorphic": is_isomorphic(glued.rep, maximal, seed),
            "tree_basis_nodes": len(g.nodes),
        },
        "thin_module": {
            "dims": _support(thin),
            "is_radiation": is_radiation(thin, "a1", seed),
            "thin_analysis": _analysis(thin, "a1", seed),
        },
    }


EXAMPLES = {1: example1, 3: example3, 4: example4, 5: example5, 6: example6, 7: example7}


def run_example(k: int, field: Field | None = None, seed: int = 0) -> dict:
    if k not in EXAMPLES:
        raise KeyError(f"no example {k}; choose from {list(EXAMPLE_IDS)}")
    return EXAMPLES[k](field, seed)


def expected_example(k: int) -> dict:
    text = resources.files("quivertree").joinpath("data").joinpath(f"example{k}.json").read_text()
    return json.loads(text)


def _diff(a, b, path: str, out: list[str]) -> None:
    if isinstance(a, dict) and isinstance(b, dict):
        for key in sorted(set(a) | set(b)):
            if key not in a:
                out.append(f"{path}/{key}: missing in result")
            elif key not in b:
                out.append(f"{path}/{key}: unexpected in result")
            else:
                _diff(a[key], b[key], f"{path}/{key}", out)
    elif isinstance(a, list) and isinstance(b, list) and len(a) == len(b):
        for i, (x, y) in enumerate(zip(a, b)):
            _diff(x, y, f"{path}/{i}", out)
    elif a != b:
        out.append(f"{path}: got {json.dumps(a)}, expected {json.dumps(b)}")


def check_example(k: int, field: Field | None = None, seed: int = 0) -> tuple[dict, list[str]]:
    """Run an example and list the differences from the bundled expectation."""
    got = json.loads(json.dumps(run_example(k, field, seed)))
    diffs: list[str] = []
    _diff(got, expected_example(k), "", diffs)
    return got, diffs
