from typing import List, Optional, Tuple

from .algebra import equals, f_matrix, gen_s, mul, zero
from .errors import IsolatedVerticesError
from .graph import DirectedMultigraph, is_connected
from .models import AutFReport, AutFWitness, ClassificationVerdict, Family, GroupKind, Obstruction

FAMILY_GROUP = {
    Family.LN: GroupKind.UN_PLUS,
    Family.CLASS_S: GroupKind.UN_PLUS,
    Family.DISJOINT_LOOPS: GroupKind.HN_INF_PLUS,
    Family.C2: GroupKind.H2_INF_PLUS,
    Family.CLASS_I1_SON: GroupKind.SHN_INF_PLUS,
    Family.CLASS_I1_OTHER: GroupKind.SHN_INF_PLUS,
    Family.NONE: GroupKind.NOT_MAXIMAL,
}

ONE_EDGE_COINCIDENCE = "U+(1) = Hinf+(1) = SHinf+(1)"


def require_no_isolated(g: DirectedMultigraph) -> None:
    isolated = g.isolated_vertices()
    if isolated:
        raise IsolatedVerticesError(isolated)


def _loops(g: DirectedMultigraph) -> List[str]:
    return [e for e in g.edge_ids if g.is_loop(e)]


def _intermediate_vertices(g: DirectedMultigraph) -> List[str]:
    return [v for v in g.vertices if g.out_edges(v) and g.in_edges(v)]


def in_class_S(g: DirectedMultigraph) -> bool:
    """Loop-free with every edge ending at one common vertex."""
    require_no_isolated(g)
    if _loops(g):
        return False
    return len({g.range(e) for e in g.edge_ids}) == 1


def in_class_I1(g: DirectedMultigraph) -> bool:
    """Loop-free with every edge ending at its own sink of indegree one."""
    require_no_isolated(g)
    if _loops(g):
        return False
    for e in g.edge_ids:
        w = g.range(e)
        if not g.is_sink(w) or len(g.in_edges(w)) != 1:
            return False
    return True


def is_son_shape(g: DirectedMultigraph) -> bool:
    """One source emitting every edge, each into a distinct sink."""
    return in_class_I1(g) and len({g.source(e) for e in g.edge_ids}) == 1


def is_two_cycle(g: DirectedMultigraph) -> bool:
    if len(g.vertices) != 2 or len(g.edges) != 2:
        return False
    first, second = g.edges
    return first.src != first.dst and first.src == second.dst and first.dst == second.src


def obstructions(g: DirectedMultigraph) -> Optional[Obstruction]:
    """The first obstruction to maximal permutational symmetry, or None when none applies."""
    require_no_isolated(g)
    edges = g.edge_ids
    n = len(edges)
    loops = _loops(g)
    if loops:
        # loops next to any non-loop edge
        non_loops = [e for e in edges if e not in loops]
        if non_loops:
            return Obstruction(
                kind="loop-with-nonloop",
                lemma="EL1",
                vertices=[g.source(loops[0]), g.source(non_loops[0]), g.range(non_loops[0])],
                edges=[loops[0], non_loops[0]],
                detail=f"loop {loops[0]} sits next to the non-loop edge {non_loops[0]}",
            )
        # loops only, spread over several vertices
        if len(g.vertices) > 1:
            for v in g.vertices:
                here = g.out_edges(v)
                if len(here) >= 2:
                    other = next(e for e in edges if g.source(e) != v)
                    return Obstruction(
                        kind="uneven-loops",
                        lemma="EP1",
                        vertices=[v, g.source(other)],
                        edges=[here[1], other],
                        detail=f"{v} carries {len(here)} loops while {g.source(other)} carries its own",
                    )
        return None
    intermediate = _intermediate_vertices(g)
    # loop-free from here on
    if n >= 3 and intermediate:
        v = intermediate[0]
        return Obstruction(
            kind="intermediate-vertex",
            lemma="EL2",
            vertices=[v],
            edges=[g.in_edges(v)[0], g.out_edges(v)[0]],
            detail=f"{v} is neither a sink nor a rigid source",
        )
    for v in g.vertices:
        m = len(g.in_edges(v))
        if g.is_sink(v) and m >= 2 and n > m:
            other = next(e for e in edges if g.range(e) != v)
            return Obstruction(
                kind="crowded-sink",
                lemma="EL3",
                vertices=[v],
                edges=list(g.in_edges(v)[:2]) + [other],
                detail=f"sink {v} has indegree {m} with {n} edges in total",
            )
    # |E| = 2 with an intermediate vertex: P2 up to isomorphism
    if n == 2 and intermediate and not is_two_cycle(g):
        v = intermediate[0]
        return Obstruction(
            kind="P2-shaped",
            lemma="EP2",
            vertices=[v],
            edges=[g.in_edges(v)[0], g.out_edges(v)[0]],
            detail="two edges forming a path of length two",
        )
    return None


def _family(g: DirectedMultigraph) -> Family:
    # priority Ln > ClassS > ClassI1 settles the one-edge coincidences
    if _loops(g):
        if len(g.vertices) == 1:
            return Family.LN
        if all(len(g.out_edges(v)) == 1 and g.is_loop(g.out_edges(v)[0]) for v in g.vertices) and all(
            g.is_loop(e) for e in g.edge_ids
        ):
            return Family.DISJOINT_LOOPS
        return Family.NONE
    if is_two_cycle(g):
        return Family.C2
    if in_class_S(g):
        return Family.CLASS_S
    if in_class_I1(g):
        return Family.CLASS_I1_SON if is_son_shape(g) else Family.CLASS_I1_OTHER
    return Family.NONE


def classify(g: DirectedMultigraph) -> ClassificationVerdict:
    require_no_isolated(g)
    n = len(g.edges)
    family = _family(g)
    kind = FAMILY_GROUP[family]
    obstruction = obstructions(g) if family is Family.NONE else None
    fm = f_matrix(g)
    return ClassificationVerdict(
        n=n,
        family=family,
        group_kind=kind,
        group=kind.label(n),
        connected=is_connected(g),
        f_matrix=fm,
        obstruction=obstruction,
        aut_f_feasible=fm.scalar and family in (Family.LN, Family.CLASS_S),
        coincidence=ONE_EDGE_COINCIDENCE if n == 1 else None,
    )


def _is_zero_product(g: DirectedMultigraph, pair: Tuple[str, str]) -> bool:
    return equals(mul(gen_s(g, pair[0]), gen_s(g, pair[1])), zero(g))


def _witness(g: DirectedMultigraph, case: str, e: str, other: str,
             vanishing: Tuple[str, str], nonvanishing: Tuple[str, str]) -> AutFWitness:
    return AutFWitness(
        case=case,
        e=e,
        g=other,
        vanishing=f"S({vanishing[0]})S({vanishing[1]})",
        vanishing_confirmed=_is_zero_product(g, vanishing),
        nonvanishing=f"S({nonvanishing[0]})S({nonvanishing[1]})",
        nonvanishing_confirmed=not _is_zero_product(g, nonvanishing),
    )


def find_aut_f_witness(g: DirectedMultigraph) -> Optional[AutFWitness]:
    """Edge pair (e, g) with S_x S_y = 0 for one product and S_e S_y' != 0 for another, when F is not scalar."""
    fm = f_matrix(g)
    weight = dict(zip(fm.edges, fm.diagonal))
    crowded = [e for e in g.edge_ids if weight[e] >= 2]
    # cases tried in order
    for e in crowded:
        if not g.is_loop(e):
            nxt = g.out_edges(g.range(e))[0]
            return _witness(g, "non-loop-into-crowded-vertex", e, nxt, (e, e), (e, nxt))
    for e in crowded:
        exits = [f for f in g.out_edges(g.range(e)) if not g.is_loop(f)]
        if exits:
            return _witness(g, "loop-with-non-loop-exit", e, exits[0], (exits[0], exits[0]), (e, exits[0]))
    for e in crowded:
        w = g.range(e)
        sibling = next(f for f in g.out_edges(w) if f != e)
        elsewhere = [h for h in g.edge_ids if g.source(h) != w]
        if elsewhere:
            return _witness(g, "loop-and-elsewhere", e, elsewhere[0], (e, elsewhere[0]), (e, sibling))
    return None


def aut_f_report(g: DirectedMultigraph) -> AutFReport:
    require_no_isolated(g)
    fm = f_matrix(g)
    if fm.scalar:
        family = _family(g)
        return AutFReport(f=fm, scalar=True, possible=family in (Family.LN, Family.CLASS_S))
    return AutFReport(f=fm, scalar=False, possible=False, witness=find_aut_f_witness(g))
