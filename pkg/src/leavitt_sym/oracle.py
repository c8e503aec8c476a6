from typing import Dict, Tuple

import sympy
from pydantic import BaseModel, ConfigDict

from .algebra import AlgebraElement
from .errors import CyclicGraphError, GraphMismatchError, RelationCheckError
from .graph import DirectedMultigraph, Path, enumerate_paths, is_acyclic


class FiniteDimRep(BaseModel):
    """Path-space representation of C*(G) for a finite acyclic graph.

    The basis is every path ending at a sink; S_e prepends e, p_v keeps the paths starting at v.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    graph: DirectedMultigraph
    basis: Tuple[Path, ...]
    edge_matrices: Dict[str, sympy.Matrix]
    vertex_matrices: Dict[str, sympy.Matrix]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def represent(g: DirectedMultigraph) -> FiniteDimRep:
    if not is_acyclic(g):
        raise CyclicGraphError("graph has a directed cycle; no faithful finite-dimensional representation")
    basis = [p for p in enumerate_paths(g, len(g.vertices)) if g.is_sink(g.path_range(p))]
    index = {p: i for i, p in enumerate(basis)}
    size = len(basis)
    edge_matrices: Dict[str, sympy.Matrix] = {}
    for e in g.edge_ids:
        m = sympy.zeros(size, size)
        for p, j in index.items():
            if p.anchor == g.range(e):
                m[index[Path(g.source(e), (e,) + p.edges)], j] = 1
        edge_matrices[e] = m
    vertex_matrices: Dict[str, sympy.Matrix] = {}
    for v in g.vertices:
        m = sympy.zeros(size, size)
        for p, j in index.items():
            if p.anchor == v:
                m[j, j] = 1
        vertex_matrices[v] = m
    rep = FiniteDimRep(graph=g, basis=tuple(basis), edge_matrices=edge_matrices, vertex_matrices=vertex_matrices)
    verify_relations(rep)
    return rep


def verify_relations(rep: FiniteDimRep) -> None:
    g = rep.graph
    size = rep.dimension
    identity = sympy.eye(size)
    total = sympy.zeros(size, size)
    for v in g.vertices:
        p = rep.vertex_matrices[v]
        if p * p != p or p.T != p:
            raise RelationCheckError(f"p_{v} is not a projection")
        for w in g.vertices:
            if w != v and p * rep.vertex_matrices[w] != sympy.zeros(size, size):
                raise RelationCheckError(f"p_{v} and p_{w} are not orthogonal")
        total += p
        if not g.is_sink(v):
            ck2 = sympy.zeros(size, size)
            for f in g.out_edges(v):
                ck2 += rep.edge_matrices[f] * rep.edge_matrices[f].T
            if ck2 != p:
                raise RelationCheckError(f"p_{v} differs from the sum of S_f S_f* over its outgoing edges")
    if total != identity:
        raise RelationCheckError("vertex projections do not sum to the identity")
    for e in g.edge_ids:
        s = rep.edge_matrices[e]
        if s.T * s != rep.vertex_matrices[g.range(e)]:
            raise RelationCheckError(f"S_{e}* S_{e} differs from p_{g.range(e)}")


def _path_matrix(rep: FiniteDimRep, p: Path) -> sympy.Matrix:
    if not p.edges:
        return rep.vertex_matrices[p.anchor]
    result = rep.edge_matrices[p.edges[0]]
    for e in p.edges[1:]:
        result = result * rep.edge_matrices[e]
    return result


def matrix_of(rep: FiniteDimRep, a: AlgebraElement) -> sympy.Matrix:
    if a.graph is not rep.graph and a.graph != rep.graph:
        raise GraphMismatchError("element and representation live over different graphs")
    result = sympy.zeros(rep.dimension, rep.dimension)
    cache: Dict[Path, sympy.Matrix] = {}
    for m, c in a.terms.items():
        for p in (m.alpha, m.beta):
            if p not in cache:
                cache[p] = _path_matrix(rep, p)
        result += c * cache[m.alpha] * cache[m.beta].T
    return result


def oracle_equals(rep: FiniteDimRep, a: AlgebraElement, b: AlgebraElement) -> bool:
    return bool(matrix_of(rep, a) == matrix_of(rep, b))
