import itertools
import json
import re
from typing import Any, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
import sympy
from pydantic import BaseModel, ConfigDict, PrivateAttr, ValidationError, model_validator

from .budget import BudgetGuard
from .errors import (
    DanglingEndpointError,
    DuplicateIdentifierError,
    FamilySizeError,
    GraphSyntaxError,
    UnknownFamilyError,
    UnknownGeneratorError,
)
from .models import StructuralPredicates

IDENTIFIER = re.compile(r"^[A-Za-z0-9_']+$")
EDGE_DECL = re.compile(r"^(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")

FAMILIES = ("Ln", "DisjointLoops", "C2", "P2", "Son", "IntoStar", "Kn", "KnComplement", "T", "TPrime")


class Edge(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    src: str
    dst: str


class Path(NamedTuple):
    """A finite path. `anchor` is the source vertex; it is the whole path when `edges` is empty."""

    anchor: str
    edges: Tuple[str, ...] = ()

    @property
    def source(self) -> str:
        return self.anchor

    @property
    def length(self) -> int:
        return len(self.edges)

    def is_empty(self) -> bool:
        return not self.edges

    def dotted(self) -> str:
        return ".".join(self.edges)


def _check_structure(vertices: Sequence[str], edges: Sequence[Edge]) -> None:
    seen = set()
    for v in vertices:
        if not IDENTIFIER.match(v):
            raise GraphSyntaxError(f"invalid vertex identifier '{v}'")
        if v in seen:
            raise DuplicateIdentifierError(v, "vertex")
        seen.add(v)
    edge_ids = set()
    for e in edges:
        if not IDENTIFIER.match(e.id):
            raise GraphSyntaxError(f"invalid edge identifier '{e.id}'")
        if e.id in edge_ids:
            raise DuplicateIdentifierError(e.id, "edge")
        edge_ids.add(e.id)
        for endpoint in (e.src, e.dst):
            if endpoint not in seen:
                raise DanglingEndpointError(e.id, endpoint)


class DirectedMultigraph(BaseModel):
    """Finite directed multigraph with fixed vertex and edge orderings."""

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...] = ()

    _vertex_index: Dict[str, int] = PrivateAttr(default_factory=dict)
    _edge_index: Dict[str, int] = PrivateAttr(default_factory=dict)
    _source: Dict[str, str] = PrivateAttr(default_factory=dict)
    _range: Dict[str, str] = PrivateAttr(default_factory=dict)
    _out: Dict[str, Tuple[str, ...]] = PrivateAttr(default_factory=dict)
    _in: Dict[str, Tuple[str, ...]] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _validate(self) -> "DirectedMultigraph":
        _check_structure(self.vertices, self.edges)
        return self

    def model_post_init(self, __context: Any) -> None:
        self._vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self._edge_index = {e.id: i for i, e in enumerate(self.edges)}
        self._source = {e.id: e.src for e in self.edges}
        self._range = {e.id: e.dst for e in self.edges}
        out: Dict[str, List[str]] = {v: [] for v in self.vertices}
        inc: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out.setdefault(e.src, []).append(e.id)
            inc.setdefault(e.dst, []).append(e.id)
        self._out = {v: tuple(es) for v, es in out.items()}
        self._in = {v: tuple(es) for v, es in inc.items()}

    @classmethod
    def build(cls, vertices: Sequence[str], edges: Iterable[Tuple[str, str, str]]) -> "DirectedMultigraph":
        """Construct from (id, src, dst) triples, raising domain errors instead of ValidationError."""
        edge_models = [Edge(id=i, src=s, dst=d) for i, s, d in edges]
        _check_structure(vertices, edge_models)
        return cls(vertices=tuple(vertices), edges=tuple(edge_models))

    @property
    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_index

    def has_edge(self, e: str) -> bool:
        return e in self._edge_index

    def vertex_index(self, v: str) -> int:
        try:
            return self._vertex_index[v]
        except KeyError:
            raise UnknownGeneratorError(f"unknown vertex '{v}'") from None

    def edge_index(self, e: str) -> int:
        try:
            return self._edge_index[e]
        except KeyError:
            raise UnknownGeneratorError(f"unknown edge '{e}'") from None

    def source(self, e: str) -> str:
        try:
            return self._source[e]
        except KeyError:
            raise UnknownGeneratorError(f"unknown edge '{e}'") from None

    def range(self, e: str) -> str:
        try:
            return self._range[e]
        except KeyError:
            raise UnknownGeneratorError(f"unknown edge '{e}'") from None

    def out_edges(self, v: str) -> Tuple[str, ...]:
        return self._out[v]

    def in_edges(self, v: str) -> Tuple[str, ...]:
        return self._in[v]

    def is_sink(self, v: str) -> bool:
        return not self._out[v]

    def is_rigid_source(self, v: str) -> bool:
        return not self._in[v]

    def is_loop(self, e: str) -> bool:
        return self._source[e] == self._range[e]

    def special_edge(self, v: str) -> Optional[str]:
        """The least outgoing edge of v, or None at a sink."""
        out = self._out[v]
        return out[0] if out else None

    def isolated_vertices(self) -> List[str]:
        return [v for v in self.vertices if not self._out[v] and not self._in[v]]

    def path_range(self, p: Path) -> str:
        return self._range[p.edges[-1]] if p.edges else p.anchor

    def make_path(self, edges: Sequence[str], anchor: Optional[str] = None) -> Path:
        """Validated constructor; `anchor` is required for the empty path."""
        edges = tuple(edges)
        if not edges:
            if anchor is None:
                raise GraphSyntaxError("empty path needs an anchor vertex")
            self.vertex_index(anchor)
            return Path(anchor, ())
        for e in edges:
            self.edge_index(e)
        for first, second in zip(edges, edges[1:]):
            if self._range[first] != self._source[second]:
                raise GraphSyntaxError(f"'{first}' does not end where '{second}' starts")
        start = self._source[edges[0]]
        if anchor is not None and anchor != start:
            raise GraphSyntaxError(f"path {'.'.join(edges)} does not start at '{anchor}'")
        return Path(start, edges)

    def to_networkx(self) -> "nx.MultiDiGraph":
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for e in self.edges:
            graph.add_edge(e.src, e.dst, key=e.id)
        return graph


class GraphDocument(BaseModel):
    vertices: List[str]
    edges: List[Edge] = []


def parse_graph(text: str) -> DirectedMultigraph:
    """Parse the text format or, when the first non-blank character is '{', the JSON format."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return _parse_json(stripped)
    return _parse_text(stripped)


def _parse_json(text: str) -> DirectedMultigraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphSyntaxError(f"Invalid graph JSON: {e}") from None
    try:
        doc = GraphDocument.model_validate(data)
    except ValidationError as e:
        raise GraphSyntaxError(f"Invalid graph JSON: {e.errors()[0]['msg']}") from None
    return DirectedMultigraph.build(doc.vertices, [(e.id, e.src, e.dst) for e in doc.edges])


def _parse_text(text: str) -> DirectedMultigraph:
    lines = [line.split("#", 1)[0] for line in text.splitlines()]
    chunks = " ".join(lines).split(";")
    vertices = chunks[0].split()
    if not vertices:
        raise GraphSyntaxError("graph must declare at least one vertex")
    edges: List[Tuple[str, str, str]] = []
    for chunk in chunks[1:]:
        chunk = chunk.strip()
        if not chunk:
            continue
        match = EDGE_DECL.match(chunk)
        if not match:
            raise GraphSyntaxError(f"malformed edge declaration '{chunk}' (expected 'id: src -> dst')")
        edges.append((match.group(1), match.group(2), match.group(3)))
    return DirectedMultigraph.build(vertices, edges)


def serialize_graph(g: DirectedMultigraph, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(g.model_dump(mode="json"))
    head = " ".join(g.vertices)
    if not g.edges:
        return f"{head} ;"
    return f"{head} ; " + " ; ".join(f"{e.id}: {e.src} -> {e.dst}" for e in g.edges)


def adjacency_matrix(g: DirectedMultigraph) -> sympy.Matrix:
    n = len(g.vertices)
    m = sympy.zeros(n, n)
    for e in g.edges:
        m[g.vertex_index(e.src), g.vertex_index(e.dst)] += 1
    return m


def is_connected(g: DirectedMultigraph) -> bool:
    return bool(nx.is_weakly_connected(g.to_networkx()))


def is_acyclic(g: DirectedMultigraph) -> bool:
    return bool(nx.is_directed_acyclic_graph(g.to_networkx()))


def structural_predicates(g: DirectedMultigraph) -> StructuralPredicates:
    indegree = {v: len(g.in_edges(v)) for v in g.vertices}
    outdegree = {v: len(g.out_edges(v)) for v in g.vertices}
    return StructuralPredicates(
        indegree=indegree,
        outdegree=outdegree,
        sinks=[v for v in g.vertices if outdegree[v] == 0],
        rigid_sources=[v for v in g.vertices if indegree[v] == 0],
        loops=[e.id for e in g.edges if e.src == e.dst],
        isolated=g.isolated_vertices(),
        connected=is_connected(g),
        has_path_of_length_two=any(g.out_edges(e.dst) for e in g.edges),
    )


def enumerate_paths(g: DirectedMultigraph, max_len: int) -> List[Path]:
    level = [Path(v, ()) for v in g.vertices]
    paths = list(level)
    for _ in range(max_len):
        level = [Path(p.anchor, p.edges + (f,)) for p in level for f in g.out_edges(g.path_range(p))]
        if not level:
            break
        paths.extend(level)
    return paths


def make_family(name: str, n: int = 1) -> DirectedMultigraph:
    if name not in FAMILIES:
        raise UnknownFamilyError(f"unknown family '{name}'. Available: {', '.join(FAMILIES)}")
    if n < 1:
        raise FamilySizeError(f"family size must be at least 1, got {n}")
    idx = range(1, n + 1)
    if name == "Ln":
        return DirectedMultigraph.build(["v"], [(f"l{i}", "v", "v") for i in idx])
    if name == "DisjointLoops":
        return DirectedMultigraph.build([f"v{i}" for i in idx], [(f"l{i}", f"v{i}", f"v{i}") for i in idx])
    if name == "C2":
        return DirectedMultigraph.build(["v1", "v2"], [("e12", "v1", "v2"), ("e21", "v2", "v1")])
    if name == "P2":
        return DirectedMultigraph.build(["v1", "v2", "v3"], [("e12", "v1", "v2"), ("e23", "v2", "v3")])
    if name == "Son":
        return DirectedMultigraph.build(["v"] + [f"v{i}" for i in idx], [(f"e{i}", "v", f"v{i}") for i in idx])
    if name == "IntoStar":
        return DirectedMultigraph.build([f"u{i}" for i in idx] + ["v"], [(f"e{i}", f"u{i}", "v") for i in idx])
    if name == "Kn":
        pairs = [(i, j) for i in idx for j in idx if i != j]
        return DirectedMultigraph.build([f"v{i}" for i in idx], [(f"e{i}{j}", f"v{i}", f"v{j}") for i, j in pairs])
    if name == "KnComplement":
        return DirectedMultigraph.build([f"v{i}" for i in idx], [])
    if name == "T":
        return DirectedMultigraph.build(["v", "w"], [("e", "v", "v"), ("g", "v", "w")])
    # TPrime
    return DirectedMultigraph.build(["v", "w"], [("e", "w", "v"), ("g", "v", "v")])


def relabel(
    g: DirectedMultigraph,
    vertex_map: Dict[str, str],
    edge_map: Dict[str, str],
    vertex_order: Optional[Sequence[str]] = None,
    edge_order: Optional[Sequence[str]] = None,
) -> DirectedMultigraph:
    """Isomorphic copy under the given renamings; orders default to the images of the old ones."""
    edges = {edge_map[e.id]: (edge_map[e.id], vertex_map[e.src], vertex_map[e.dst]) for e in g.edges}
    vertices = list(vertex_order) if vertex_order is not None else [vertex_map[v] for v in g.vertices]
    order = list(edge_order) if edge_order is not None else [edge_map[e.id] for e in g.edges]
    return DirectedMultigraph.build(vertices, [edges[e] for e in order])


def _graph_from_pairs(n_vertices: int, pairs: Sequence[Tuple[int, int]]) -> DirectedMultigraph:
    vertices = tuple(f"v{i}" for i in range(1, n_vertices + 1))
    edges = tuple(
        Edge(id=f"e{k}", src=vertices[s], dst=vertices[d]) for k, (s, d) in enumerate(pairs, start=1)
    )
    return DirectedMultigraph(vertices=vertices, edges=edges)


def enumerate_graphs_exact(n_vertices: int, n_edges: int, no_isolated: bool) -> Iterator[DirectedMultigraph]:
    """Every labeled multigraph with exactly `n_vertices` vertices and `n_edges` edges."""
    endpoint_pairs = [(s, d) for s in range(n_vertices) for d in range(n_vertices)]
    for pairs in itertools.product(endpoint_pairs, repeat=n_edges):
        if no_isolated:
            touched = {i for pair in pairs for i in pair}
            if len(touched) != n_vertices:
                continue
        yield _graph_from_pairs(n_vertices, pairs)


def enumerate_graphs(
    v_max: int, e_max: int, no_isolated: bool, guard: Optional[BudgetGuard] = None
) -> Iterator[DirectedMultigraph]:
    """Labeled multigraphs with |V| in [1, v_max] and |E| in [1, e_max], in a fixed order."""
    (guard or BudgetGuard()).check_enumeration(v_max, e_max)

    def stream() -> Iterator[DirectedMultigraph]:
        for n_vertices in range(1, v_max + 1):
            for n_edges in range(1, e_max + 1):
                for g in enumerate_graphs_exact(n_vertices, n_edges, no_isolated):
                    if guard is not None:
                        guard.graphs_enumerated += 1
                    yield g

    return stream()


def canonical_form(g: DirectedMultigraph) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """Isomorphism-class key: the least sorted endpoint multiset over all vertex relabelings."""
    n = len(g.vertices)
    pairs = [(g.vertex_index(e.src), g.vertex_index(e.dst)) for e in g.edges]
    best: Optional[Tuple[Tuple[int, int], ...]] = None
    for perm in itertools.permutations(range(n)):
        candidate = tuple(sorted((perm[s], perm[d]) for s, d in pairs))
        if best is None or candidate < best:
            best = candidate
    return n, best or ()


def dedup_graphs(graphs: Iterable[DirectedMultigraph]) -> Iterator[DirectedMultigraph]:
    seen = set()
    for g in graphs:
        key = canonical_form(g)
        if key not in seen:
            seen.add(key)
            yield g
