import itertools
from functools import reduce
from typing import Any, Dict, List, Tuple

from .algebra import (
    AlgebraElement,
    check_monomial,
    equals,
    gen_p,
    gen_s,
    gen_s_star,
    independence_check,
    mul,
    path_element,
    unit,
    zero,
)
from .errors import RangeMismatchError
from .graph import DirectedMultigraph, Path, enumerate_paths


def _record(criterion: str, failures: List[str], checked: int) -> Dict[str, Any]:
    return {
        "criterion": criterion,
        "passed": not failures,
        "message": f"{checked} cases hold" if not failures else "; ".join(failures[:3]),
        "details": {"checked": checked, "failures": failures},
    }


def _path_product(g: DirectedMultigraph, edges: Tuple[str, ...]) -> AlgebraElement:
    return reduce(mul, (gen_s(g, e) for e in edges))


def _is_path(g: DirectedMultigraph, edges: Tuple[str, ...]) -> bool:
    return all(g.range(a) == g.source(b) for a, b in zip(edges, edges[1:]))


def check_identities(g: DirectedMultigraph, max_len: int = 2) -> Tuple[bool, List[Dict[str, Any]]]:
    """Evaluate the Cuntz-Krieger relations and the identities derived from them on g.

    Returns (all_passed, results), one result per identity family.
    """
    edges = g.edge_ids
    s = {e: gen_s(g, e) for e in edges}
    s_star = {e: gen_s_star(g, e) for e in edges}
    results: List[Dict[str, Any]] = []

    failures = [f"S*({e})S({e})" for e in edges if not equals(mul(s_star[e], s[e]), gen_p(g, g.range(e)))]
    results.append(_record("ck1", failures, len(edges)))

    failures = []
    non_sinks = [v for v in g.vertices if not g.is_sink(v)]
    for v in non_sinks:
        total = reduce(lambda acc, f: acc + mul(s[f], s_star[f]), g.out_edges(v), zero(g))
        if not equals(total, gen_p(g, v)):
            failures.append(f"P({v})")
    results.append(_record("ck2", failures, len(non_sinks)))

    pairs = [(e, f) for e in edges for f in edges if e != f]
    failures = [f"S*({e})S({f})" for e, f in pairs if not mul(s_star[e], s[f]).is_zero()]
    results.append(_record("orthogonal ranges", failures, len(pairs)))

    total = reduce(lambda acc, v: acc + gen_p(g, v), g.vertices, zero(g))
    results.append(_record("projections sum to unit", [] if equals(total, unit(g)) else ["sum of P(v)"], 1))

    failures = []
    checked = 0
    for k in range(2, max_len + 1):
        for word in itertools.product(edges, repeat=k):
            checked += 1
            if _path_product(g, word).is_zero() == _is_path(g, word):
                failures.append("S(" + ")S(".join(word) + ")")
    results.append(_record("products vanish off paths", failures, checked))

    failures = []
    for e, f in itertools.product(edges, repeat=2):
        if mul(s[e], s_star[f]).is_zero() == (g.range(e) == g.range(f)):
            failures.append(f"S({e})S*({f})")
    results.append(_record("S_e S_f* vanishes off common ranges", failures, len(edges) ** 2))

    paths = [p for p in enumerate_paths(g, max_len) if p.edges]
    failures = []
    for p in paths:
        sp = path_element(g, p, Path(g.path_range(p), ()))
        adjoint_sp = path_element(g, Path(g.path_range(p), ()), p)
        if not equals(mul(adjoint_sp, sp), gen_p(g, g.path_range(p))):
            failures.append(f"S*({p.dotted()})S({p.dotted()})")
    results.append(_record("paths are partial isometries", failures, len(paths)))

    short = enumerate_paths(g, 1)
    monomials = [(a, b) for a in short for b in short if g.path_range(a) == g.path_range(b)]
    failures = []
    for (a, b), (c, d) in itertools.product(monomials, repeat=2):
        product = mul(path_element(g, a, b), path_element(g, c, d))
        try:
            for m in product.terms:
                check_monomial(g, m)
        except RangeMismatchError as err:
            failures.append(str(err))
    results.append(_record("monomials span a closed subalgebra", failures, len(monomials) ** 2))

    length_two = [mul(s[e], s[f]) for e in edges for f in edges if g.range(e) == g.source(f)]
    independent = not length_two or independence_check(length_two)
    results.append(_record("length-two paths independent", [] if independent else ["S_e S_f"], len(length_two)))

    v2_plus = [gen_p(g, u) for u in g.vertices if g.is_sink(u)]
    v2_plus += [mul(s[e], s_star[f]) for e in edges for f in edges if g.range(e) == g.range(f)]
    independent = not v2_plus or independence_check(v2_plus)
    results.append(_record("tau domain independent", [] if independent else ["p_u, S_e S_f*"], len(v2_plus)))

    return all(r["passed"] for r in results), results
