import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from . import console
from .algebra import AlgebraElement, adjoint, equals, gen_p, gen_s, mul, tau, unit, zero
from .budget import BudgetGuard
from .classifier import aut_f_report, classify, require_no_isolated
from .errors import NotInV2PlusError, PermutationError
from .graph import DirectedMultigraph, canonical_form, enumerate_graphs, serialize_graph
from .models import (
    BruteForceResult,
    ClassificationVerdict,
    Discrepancy,
    Family,
    GroupKind,
    PermutationCertificate,
    PermutationFailure,
    TheoremReport,
)

EdgeMap = Dict[str, str]

CHECKS = (
    "range-consistency",
    "rigid-source",
    "ck2-image",
    "projection-system",
    "ck1-image",
    "tau-preservation",
)

CONNECTED_KINDS = (GroupKind.UN_PLUS, GroupKind.SHN_INF_PLUS, GroupKind.H2_INF_PLUS)

CYCLES = re.compile(r"^(\s*\([^()]*\)\s*)+$")
CYCLE = re.compile(r"\(([^()]*)\)")
SEPARATOR = re.compile(r"[\s,]+")


def _split(body: str) -> List[str]:
    return [item for item in SEPARATOR.split(body.strip()) if item]


def _edge_position(g: DirectedMultigraph, e: str) -> int:
    if not g.has_edge(e):
        raise PermutationError(f"unknown edge '{e}' in permutation")
    return g.edge_index(e)


def to_sympy(g: DirectedMultigraph, sigma: EdgeMap) -> Permutation:
    _require_bijection(g, sigma)
    return Permutation([g.edge_index(sigma[e]) for e in g.edge_ids])


def from_sympy(g: DirectedMultigraph, perm: Permutation) -> EdgeMap:
    edges = g.edge_ids
    images = perm.array_form + list(range(perm.size, len(edges)))
    return {e: edges[images[i]] for i, e in enumerate(edges)}


def parse_permutation(g: DirectedMultigraph, text: str) -> EdgeMap:
    """Edge bijection from cycle notation "(e1 e2)(e3 e4)" or a one-line image list "[e2, e1, e3]".

    The one-line form lists sigma(e) for the edges in the graph's order.
    """
    n = len(g.edges)
    stripped = text.strip()
    if not stripped:
        raise PermutationError("empty permutation")
    if stripped.startswith("("):
        if not CYCLES.match(stripped):
            raise PermutationError(f"malformed cycle notation '{stripped}'")
        cycles: List[List[int]] = []
        seen: set = set()
        for body in CYCLE.findall(stripped):
            cycle = [_edge_position(g, e) for e in _split(body)]
            if seen.intersection(cycle) or len(set(cycle)) != len(cycle):
                raise PermutationError(f"cycles in '{stripped}' are not disjoint")
            seen.update(cycle)
            if len(cycle) > 1:
                cycles.append(cycle)
        perm = Permutation(cycles, size=n) if cycles else Permutation(list(range(n)))
        return from_sympy(g, perm)
    if stripped.startswith("["):
        if not stripped.endswith("]"):
            raise PermutationError(f"unterminated image list '{stripped}'")
        stripped = stripped[1:-1]
    images = [_edge_position(g, e) for e in _split(stripped)]
    if len(images) != n or len(set(images)) != n:
        raise PermutationError(f"image list must name each of the {n} edges exactly once")
    return from_sympy(g, Permutation(images))


def render_cycles(g: DirectedMultigraph, sigma: EdgeMap) -> str:
    edges = g.edge_ids
    cycles = to_sympy(g, sigma).cyclic_form
    if not cycles:
        return "()"
    return "".join("(" + " ".join(edges[i] for i in cycle) + ")" for cycle in cycles)


def compose(g: DirectedMultigraph, sigma: EdgeMap, other: EdgeMap) -> EdgeMap:
    """sigma after other."""
    return from_sympy(g, to_sympy(g, other) * to_sympy(g, sigma))


def inverse(g: DirectedMultigraph, sigma: EdgeMap) -> EdgeMap:
    return from_sympy(g, ~to_sympy(g, sigma))


def _require_bijection(g: DirectedMultigraph, sigma: EdgeMap) -> None:
    edges = set(g.edge_ids)
    if set(sigma) != edges or set(sigma.values()) != edges or len(sigma) != len(edges):
        raise PermutationError("permutation is not a bijection on the edge set")


def _failure(index: int, **fields: Any) -> PermutationFailure:
    return PermutationFailure(check=CHECKS[index - 1], check_index=index, **fields)


def _tau_failure(x: AlgebraElement, expected: int, vertices: List[str], edges: List[str]) -> Optional[PermutationFailure]:
    try:
        actual = tau(x)
    except NotInV2PlusError as e:
        return _failure(6, vertices=vertices, edges=edges, left=x.render(), tau_expected=str(expected), detail=str(e))
    if actual != expected:
        return _failure(
            6,
            vertices=vertices,
            edges=edges,
            left=x.render(),
            tau_expected=str(expected),
            tau_actual=str(actual),
            detail="image changes the value of tau",
        )
    return None


def _find_failure(g: DirectedMultigraph, sigma: EdgeMap) -> Optional[PermutationFailure]:
    s = {e: gen_s(g, sigma[e]) for e in g.edge_ids}
    s_star = {e: adjoint(s[e]) for e in g.edge_ids}
    ck2: Dict[str, AlgebraElement] = {}
    for v in g.vertices:
        total = zero(g)
        for f in g.out_edges(v):
            total = total + mul(s[f], s_star[f])
        ck2[v] = total

    # check 1: phi(p_v) is read off the image of any edge into v, and all of them must agree
    phi: Dict[str, AlgebraElement] = {}
    for v in g.vertices:
        incoming = g.in_edges(v)
        if not incoming:
            continue
        target = g.range(sigma[incoming[0]])
        for e in incoming[1:]:
            other = g.range(sigma[e])
            if other != target:
                return _failure(
                    1,
                    vertices=[v],
                    edges=[incoming[0], e],
                    left=f"P({target})",
                    right=f"P({other})",
                    detail=f"edges into {v} are sent to edges ending at {target} and {other}",
                )
        phi[v] = gen_p(g, target)

    # check 2: rigid sources have no incoming edge, so CK2 defines their image
    for v in g.vertices:
        if g.is_rigid_source(v):
            phi[v] = ck2[v]

    # check 3
    for v in g.vertices:
        if g.is_sink(v) or g.is_rigid_source(v):
            continue
        if not equals(phi[v], ck2[v]):
            return _failure(
                3,
                vertices=[v],
                edges=list(g.out_edges(v)),
                left=phi[v].render(),
                right=ck2[v].render(),
                detail=f"image of P({v}) differs from the sum over the images of the edges leaving {v}",
            )

    # check 4: mutually orthogonal projections summing to 1
    total = zero(g)
    for u in g.vertices:
        if not equals(adjoint(phi[u]), phi[u]):
            return _failure(4, vertices=[u], left=phi[u].render(), detail=f"image of P({u}) is not self-adjoint")
        for v in g.vertices:
            product = mul(phi[u], phi[v])
            expected = phi[v] if u == v else zero(g)
            if not equals(product, expected):
                return _failure(
                    4,
                    vertices=[u, v],
                    left=product.render(),
                    right=expected.render(),
                    detail=f"images of P({u}) and P({v}) do not multiply like vertex projections",
                )
        total = total + phi[u]
    if not equals(total, unit(g)):
        return _failure(4, vertices=list(g.vertices), left=total.render(), right=unit(g).render(),
                        detail="images of the vertex projections do not sum to the unit")

    # check 5
    for e in g.edge_ids:
        lhs = mul(s_star[e], s[e])
        rhs = phi[g.range(e)]
        if not equals(lhs, rhs):
            return _failure(
                5,
                vertices=[g.range(e)],
                edges=[e],
                left=lhs.render(),
                right=rhs.render(),
                detail=f"S*({sigma[e]})S({sigma[e]}) differs from the image of P({g.range(e)})",
            )

    # check 6: tau on sink projections and on every S_e S_f*
    for u in g.vertices:
        if g.is_sink(u):
            found = _tau_failure(phi[u], 1, [u], [])
            if found:
                return found
    for e in g.edge_ids:
        for f in g.edge_ids:
            if g.range(e) != g.range(f):
                continue
            found = _tau_failure(mul(s[e], s_star[f]), 1 if e == f else 0, [g.range(e)], [e, f])
            if found:
                return found
    return None


def admissible_permutation(g: DirectedMultigraph, sigma: EdgeMap) -> PermutationCertificate:
    """Decide whether S_e -> S_sigma(e) extends to a unital tau-preserving *-endomorphism."""
    require_no_isolated(g)
    _require_bijection(g, sigma)
    failure = _find_failure(g, sigma)
    return PermutationCertificate(
        permutation={e: sigma[e] for e in g.edge_ids},
        cycles=render_cycles(g, sigma),
        admissible=failure is None,
        failure=failure,
    )


def maximal_perm_sym_bruteforce(
    g: DirectedMultigraph, guard: Optional[BudgetGuard] = None, collect_all: bool = True
) -> BruteForceResult:
    require_no_isolated(g)
    guard = guard or BudgetGuard()
    guard.check_factorial(len(g.edges))
    edges = g.edge_ids
    checked = 0
    failures: List[PermutationCertificate] = []
    for images in itertools.permutations(edges):
        certificate = admissible_permutation(g, dict(zip(edges, images)))
        checked += 1
        if not certificate.admissible:
            failures.append(certificate)
            if not collect_all:
                break
    guard.permutations_checked += checked
    return BruteForceResult(maximal=not failures, checked=checked, failures=failures)


def transposition_witness(g: DirectedMultigraph) -> Optional[PermutationCertificate]:
    """First inadmissible transposition of two edges, in edge order."""
    require_no_isolated(g)
    edges = g.edge_ids
    for e, f in itertools.combinations(edges, 2):
        sigma = {x: x for x in edges}
        sigma[e], sigma[f] = f, e
        certificate = admissible_permutation(g, sigma)
        if not certificate.admissible:
            return certificate
    return None


def _aut_f_discrepancies(g: DirectedMultigraph, verdict: ClassificationVerdict, name: str) -> List[Discrepancy]:
    report = aut_f_report(g)
    if not report.scalar:
        w = report.witness
        if report.possible or w is None or not (w.vanishing_confirmed and w.nonvanishing_confirmed):
            return [Discrepancy(graph=name, kind="aut-f-witness", detail="non-scalar F without a confirmed witness")]
        return []
    if report.possible != (verdict.family in (Family.LN, Family.CLASS_S)):
        return [Discrepancy(graph=name, kind="aut-f-scalar", detail=f"possible={report.possible} for {verdict.family.value}")]
    return []


def check_representative(g: DirectedMultigraph, factorial_budget: int) -> Tuple[int, List[Discrepancy]]:
    """Brute-force one graph against its verdict. Returns permutations checked and any discrepancies."""
    name = serialize_graph(g)
    verdict = classify(g)
    result = maximal_perm_sym_bruteforce(g, BudgetGuard(factorial_budget=factorial_budget), collect_all=False)
    found: List[Discrepancy] = []
    positive = verdict.group_kind is not GroupKind.NOT_MAXIMAL
    if result.maximal != positive:
        found.append(Discrepancy(
            graph=name,
            kind="soundness",
            detail=f"brute force maximal={result.maximal} but classify says {verdict.group}",
        ))
    if verdict.connected and positive:
        if verdict.group_kind not in CONNECTED_KINDS or (
            verdict.group_kind is GroupKind.H2_INF_PLUS and verdict.n != 2
        ):
            found.append(Discrepancy(graph=name, kind="connected-verdict", detail=f"connected graph labeled {verdict.group}"))
    found.extend(_aut_f_discrepancies(g, verdict, name))
    return result.checked, found


def _check_all(graphs: Sequence[DirectedMultigraph], factorial_budget: int, workers: int) -> List[Tuple[int, List[Discrepancy]]]:
    if workers <= 1:
        return [check_representative(g, factorial_budget) for g in graphs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(check_representative, graphs, itertools.repeat(factorial_budget), chunksize=16))


def verify_theorem(
    v_max: int,
    e_max: int,
    guard: Optional[BudgetGuard] = None,
    dedup: bool = True,
    workers: int = 1,
) -> TheoremReport:
    """Exhaustively compare classify against brute-force permutation checks.

    With dedup on, only one graph per isomorphism class is brute-forced; every other member is
    checked to receive the same verdict as its representative.
    """
    guard = guard or BudgetGuard()
    guard.check_enumeration(v_max, e_max)
    guard.check_factorial(e_max)
    report = TheoremReport(v_max=v_max, e_max=e_max)
    representatives: Dict[object, Tuple[DirectedMultigraph, ClassificationVerdict]] = {}

    console.info(f"Enumerating graphs with up to {v_max} vertices and {e_max} edges...")
    for index, g in enumerate(enumerate_graphs(v_max, e_max, no_isolated=True, guard=guard)):
        verdict = classify(g)
        report.graphs += 1
        family = verdict.family.value
        report.family_counts[family] = report.family_counts.get(family, 0) + 1
        key: object = canonical_form(g) if dedup else index
        known = representatives.get(key)
        if known is None:
            representatives[key] = (g, verdict)
        elif (known[1].family, known[1].group) != (verdict.family, verdict.group):
            report.discrepancies.append(Discrepancy(
                graph=serialize_graph(g),
                kind="isomorphism-invariance",
                detail=f"classified {verdict.family.value} but an isomorphic copy is {known[1].family.value}",
            ))

    report.classes = len(representatives)
    guard.isomorphism_classes = report.classes
    for _, verdict in representatives.values():
        family = verdict.family.value
        report.class_family_counts[family] = report.class_family_counts.get(family, 0) + 1

    console.info(f"Brute-forcing {report.classes} graphs ({report.graphs} labeled)...")
    graphs = [g for g, _ in representatives.values()]
    for checked, found in _check_all(graphs, guard.factorial_budget, workers):
        guard.permutations_checked += checked
        report.discrepancies.extend(found)

    report.budget = guard.get_usage_report()
    if report.passed:
        console.success(f"No discrepancies across {report.graphs} graphs")
    else:
        console.failure(f"{len(report.discrepancies)} discrepancies found")
    return report
