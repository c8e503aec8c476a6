import random
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import sympy

from .errors import GraphMismatchError, IsolatedVerticesError, NotInV2PlusError, RangeMismatchError
from .graph import DirectedMultigraph, Path, enumerate_paths
from .models import FMatrixReport

Scalar = Union[int, sympy.Rational]


class PathMonomial(NamedTuple):
    """S_alpha S_beta*; vertex projections are the (empty, empty) case."""

    alpha: Path
    beta: Path


Terms = Dict[PathMonomial, sympy.Rational]


def _accumulate(terms: Terms, m: PathMonomial, c: sympy.Rational) -> None:
    value = terms.get(m, sympy.Integer(0)) + c
    if value == 0:
        terms.pop(m, None)
    else:
        terms[m] = value


def _concat(p: Path, q: Path) -> Path:
    if not q.edges:
        return p
    if not p.edges:
        return q
    return Path(p.anchor, p.edges + q.edges)


def _strip_prefix(g: DirectedMultigraph, prefix: Path, path: Path) -> Optional[Path]:
    k = len(prefix.edges)
    # a vertex projection only absorbs paths that start at it
    if k == 0:
        return path if path.anchor == prefix.anchor else None
    if path.edges[:k] != prefix.edges:
        return None
    return Path(g.path_range(prefix), path.edges[k:])


def check_monomial(g: DirectedMultigraph, m: PathMonomial) -> None:
    left, right = g.path_range(m.alpha), g.path_range(m.beta)
    if left != right:
        raise RangeMismatchError(f"monomial {render_monomial(m)} mixes ranges '{left}' and '{right}'")


def monomial_product(g: DirectedMultigraph, x: PathMonomial, y: PathMonomial) -> Optional[PathMonomial]:
    """(a b*)(c d*): a(c')d* when c = b c', a(d b')* when b = c b', otherwise zero (None)."""
    rest = _strip_prefix(g, x.beta, y.alpha)
    if rest is not None:
        return PathMonomial(_concat(x.alpha, rest), y.beta)
    rest = _strip_prefix(g, y.alpha, x.beta)
    if rest is not None:
        return PathMonomial(x.alpha, _concat(y.beta, rest))
    return None


def product_terms(g: DirectedMultigraph, x: Mapping[PathMonomial, sympy.Rational],
                  y: Mapping[PathMonomial, sympy.Rational]) -> Terms:
    """Bilinear product without normalization."""
    out: Terms = {}
    for mx, cx in x.items():
        for my, cy in y.items():
            m = monomial_product(g, mx, my)
            if m is not None:
                _accumulate(out, m, cx * cy)
    return out


def _redex(g: DirectedMultigraph, m: PathMonomial) -> Optional[str]:
    if not m.alpha.edges or not m.beta.edges:
        return None
    # both paths must close with the same edge, and it must be special at its source
    d = m.alpha.edges[-1]
    if d != m.beta.edges[-1]:
        return None
    return d if g.special_edge(g.source(d)) == d else None


def normal_form(g: DirectedMultigraph, terms: Mapping[PathMonomial, Scalar],
                rng: Optional[random.Random] = None) -> "AlgebraElement":
    """Rewrite (a'd)(b'd)* -> a'b'* - sum over f != d of (a'f)(b'f)* until no special edge closes both paths.

    `rng` picks the next redex at random; the result does not depend on it.
    """
    pending: Terms = {}
    for m, c in terms.items():
        check_monomial(g, m)
        _accumulate(pending, m, sympy.Rational(c))
    result: Terms = {}
    while pending:
        m = rng.choice(list(pending)) if rng is not None else next(iter(pending))
        c = pending.pop(m)
        d = _redex(g, m)
        if d is None:
            _accumulate(result, m, c)
            continue
        # CK2 at s(d), solved for S_d S_d*
        alpha = Path(m.alpha.anchor, m.alpha.edges[:-1])
        beta = Path(m.beta.anchor, m.beta.edges[:-1])
        _accumulate(pending, PathMonomial(alpha, beta), c)
        for f in g.out_edges(g.source(d)):
            if f != d:
                extended = PathMonomial(Path(alpha.anchor, alpha.edges + (f,)), Path(beta.anchor, beta.edges + (f,)))
                _accumulate(pending, extended, -c)
    return AlgebraElement(g, result)


def render_monomial(m: PathMonomial) -> str:
    if not m.alpha.edges and not m.beta.edges:
        return f"P({m.alpha.anchor})"
    text = ""
    if m.alpha.edges:
        text += f"S({m.alpha.dotted()})"
    if m.beta.edges:
        text += f"S*({m.beta.dotted()})"
    return text


def monomial_key(g: DirectedMultigraph, m: PathMonomial) -> Tuple[object, ...]:
    return (
        len(m.alpha.edges) + len(m.beta.edges),
        len(m.alpha.edges),
        tuple(g.edge_index(e) for e in m.alpha.edges),
        tuple(g.edge_index(e) for e in m.beta.edges),
        g.vertex_index(g.path_range(m.alpha)),
    )


class AlgebraElement:
    """Exact rational combination of path monomials over one graph, held in normal form.

    Build instances through the generator functions or `normal_form`; the constructor trusts its input.
    """

    __slots__ = ("graph", "terms")

    def __init__(self, graph: DirectedMultigraph, terms: Terms) -> None:
        self.graph = graph
        self.terms: Terms = dict(terms)

    def _check_graph(self, other: "AlgebraElement") -> None:
        if self.graph is not other.graph and self.graph != other.graph:
            raise GraphMismatchError("operands live over different graphs")

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> List[Tuple[PathMonomial, sympy.Rational]]:
        return sorted(self.terms.items(), key=lambda item: monomial_key(self.graph, item[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        text = ""
        for i, (m, c) in enumerate(self.sorted_terms()):
            body = render_monomial(m)
            magnitude = abs(c)
            if magnitude != 1:
                body = f"{magnitude} · {body}"
            if i == 0:
                text = f"-{body}" if c < 0 else body
            else:
                text += f" - {body}" if c < 0 else f" + {body}"
        return text

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"AlgebraElement({self.render()!r})"

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_graph(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(terms, m, c)
        return AlgebraElement(self.graph, terms)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.graph, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar) -> "AlgebraElement":
        factor = sympy.Rational(c)
        if factor == 0:
            return AlgebraElement(self.graph, {})
        return AlgebraElement(self.graph, {m: factor * v for m, v in self.terms.items()})

    def __mul__(self, other: object) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        if isinstance(other, (int, sympy.Rational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> "AlgebraElement":
        if isinstance(other, (int, sympy.Rational)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return equals(self, other)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))


def gen_s(g: DirectedMultigraph, e: str) -> AlgebraElement:
    src, dst = g.source(e), g.range(e)
    return AlgebraElement(g, {PathMonomial(Path(src, (e,)), Path(dst, ())): sympy.Integer(1)})


def gen_s_star(g: DirectedMultigraph, e: str) -> AlgebraElement:
    src, dst = g.source(e), g.range(e)
    return AlgebraElement(g, {PathMonomial(Path(dst, ()), Path(src, (e,))): sympy.Integer(1)})


def gen_p(g: DirectedMultigraph, v: str) -> AlgebraElement:
    g.vertex_index(v)
    return AlgebraElement(g, {PathMonomial(Path(v, ()), Path(v, ())): sympy.Integer(1)})


def unit(g: DirectedMultigraph) -> AlgebraElement:
    return AlgebraElement(g, {PathMonomial(Path(v, ()), Path(v, ())): sympy.Integer(1) for v in g.vertices})


def zero(g: DirectedMultigraph) -> AlgebraElement:
    return AlgebraElement(g, {})


def scalar(g: DirectedMultigraph, c: Scalar) -> AlgebraElement:
    return unit(g).scale(c)


def path_element(g: DirectedMultigraph, alpha: Path, beta: Path) -> AlgebraElement:
    return normal_form(g, {PathMonomial(alpha, beta): 1})


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._check_graph(b)
    return normal_form(a.graph, product_terms(a.graph, a.terms, b.terms))


def adjoint(a: AlgebraElement) -> AlgebraElement:
    # the redex condition is symmetric in alpha and beta, so swapping keeps normal form
    return AlgebraElement(a.graph, {PathMonomial(m.beta, m.alpha): c for m, c in a.terms.items()})


def equals(a: AlgebraElement, b: AlgebraElement) -> bool:
    a._check_graph(b)
    # normal forms are unique
    return a.terms == b.terms


def max_path_length(terms: Iterable[PathMonomial]) -> int:
    return max((max(len(m.alpha.edges), len(m.beta.edges)) for m in terms), default=0)


def expand_terms(g: DirectedMultigraph, terms: Mapping[PathMonomial, Scalar], level: int) -> Terms:
    """Push every monomial through p_v = sum S_f S_f* until it ends at a sink or reaches `level`."""
    result: Terms = {}
    stack = [(m, sympy.Rational(c)) for m, c in terms.items()]
    while stack:
        m, c = stack.pop()
        v = g.path_range(m.alpha)
        if g.is_sink(v) or max(len(m.alpha.edges), len(m.beta.edges)) >= level:
            _accumulate(result, m, c)
            continue
        for f in g.out_edges(v):
            stack.append((PathMonomial(Path(m.alpha.anchor, m.alpha.edges + (f,)),
                                       Path(m.beta.anchor, m.beta.edges + (f,))), c))
    return result


def expand_to_level(a: AlgebraElement, level: int) -> Terms:
    return expand_terms(a.graph, a.terms, level)


def expansion_equals(g: DirectedMultigraph, left: Mapping[PathMonomial, Scalar],
                     right: Mapping[PathMonomial, Scalar]) -> bool:
    """Equality test independent of the rewrite: expand the raw difference to the longest path present."""
    diff: Terms = {}
    for m, c in left.items():
        _accumulate(diff, m, sympy.Rational(c))
    for m, c in right.items():
        _accumulate(diff, m, -sympy.Rational(c))
    level = max(max_path_length(left), max_path_length(right))
    return not expand_terms(g, diff, level)


def equals_by_expansion(a: AlgebraElement, b: AlgebraElement) -> bool:
    a._check_graph(b)
    return expansion_equals(a.graph, a.terms, b.terms)


def tau(a: AlgebraElement) -> sympy.Rational:
    g = a.graph
    total = sympy.Integer(0)
    for m, c in a.terms.items():
        if not m.alpha.edges and not m.beta.edges:
            v = m.alpha.anchor
            # sinks weigh 1
            total += c * (len(g.out_edges(v)) or 1)
        elif len(m.alpha.edges) == 1 and len(m.beta.edges) == 1:
            if m.alpha.edges[0] == m.beta.edges[0]:
                total += c
        else:
            raise NotInV2PlusError(f"tau is undefined on {render_monomial(m)}")
    return sympy.Rational(total)


def f_matrix(g: DirectedMultigraph) -> FMatrixReport:
    isolated = g.isolated_vertices()
    if isolated:
        raise IsolatedVerticesError(isolated)
    diagonal = [len(g.out_edges(g.range(e))) or 1 for e in g.edge_ids]
    return FMatrixReport(edges=list(g.edge_ids), diagonal=diagonal, scalar=len(set(diagonal)) <= 1)


def coordinate_matrix(elems: Sequence[AlgebraElement]) -> Tuple[List[PathMonomial], sympy.Matrix]:
    """Rows are the normal-form coordinates of `elems` over the union of their monomials."""
    g = elems[0].graph
    basis = sorted({m for a in elems for m in a.terms}, key=lambda m: monomial_key(g, m))
    column = {m: j for j, m in enumerate(basis)}
    matrix = sympy.zeros(len(elems), len(basis))
    for i, a in enumerate(elems):
        for m, c in a.terms.items():
            matrix[i, column[m]] = c
    return basis, matrix


def independence_check(elems: Sequence[AlgebraElement]) -> bool:
    if not elems:
        raise ValueError("independence_check needs at least one element")
    for a in elems[1:]:
        elems[0]._check_graph(a)
    _, matrix = coordinate_matrix(elems)
    # every element is zero
    if matrix.cols == 0:
        return False
    return bool(matrix.rank() == len(elems))


def random_element(g: DirectedMultigraph, rng: random.Random, n_terms: int = 3, max_len: int = 2) -> AlgebraElement:
    """Small random element with integer coefficients in [-2, 2], for property checks."""
    paths = enumerate_paths(g, max_len)
    by_range: Dict[str, List[Path]] = {}
    for p in paths:
        by_range.setdefault(g.path_range(p), []).append(p)
    terms: Dict[PathMonomial, Scalar] = {}
    for _ in range(n_terms):
        v = rng.choice(g.vertices)
        candidates = by_range[v]
        m = PathMonomial(rng.choice(candidates), rng.choice(candidates))
        terms[m] = terms.get(m, 0) + rng.choice([-2, -1, 1, 2])
    return normal_form(g, terms)
