import itertools
import math
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, model_validator

from . import console
from .budget import BudgetGuard
from .errors import NotSimpleDigraphError
from .graph import DirectedMultigraph
from .models import Prop31Report

Adjacency = Tuple[Tuple[int, ...], ...]


class SimpleDigraph(BaseModel):
    """Digraph on vertices 0..n-1 without loops or repeated edges, as a 0/1 adjacency matrix."""

    model_config = ConfigDict(frozen=True)

    n: int
    adjacency: Adjacency

    @model_validator(mode="after")
    def _validate(self) -> "SimpleDigraph":
        if len(self.adjacency) != self.n or any(len(row) != self.n for row in self.adjacency):
            raise NotSimpleDigraphError(f"adjacency must be {self.n}x{self.n}")
        for i, row in enumerate(self.adjacency):
            if row[i]:
                raise NotSimpleDigraphError(f"loop at vertex {i}")
            if any(x not in (0, 1) for x in row):
                raise NotSimpleDigraphError("adjacency entries must be 0 or 1")
        return self

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "SimpleDigraph":
        rows = [[0] * n for _ in range(n)]
        for i, j in pairs:
            if i == j:
                raise NotSimpleDigraphError(f"loop at vertex {i}")
            if rows[i][j]:
                raise NotSimpleDigraphError(f"repeated edge {i} -> {j}")
            rows[i][j] = 1
        return cls(n=n, adjacency=tuple(tuple(r) for r in rows))

    @classmethod
    def from_multigraph(cls, g: DirectedMultigraph) -> "SimpleDigraph":
        return cls.from_edges(len(g.vertices), [(g.vertex_index(e.src), g.vertex_index(e.dst)) for e in g.edges])

    @classmethod
    def complete(cls, n: int) -> "SimpleDigraph":
        return cls.from_edges(n, [(i, j) for i in range(n) for j in range(n) if i != j])

    @classmethod
    def empty(cls, n: int) -> "SimpleDigraph":
        return cls.from_edges(n, [])

    @classmethod
    def cycle(cls, n: int) -> "SimpleDigraph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)] if n > 1 else [])

    def permuted(self, perm: Sequence[int]) -> "SimpleDigraph":
        """Relabel vertex i as perm[i]."""
        return SimpleDigraph.from_edges(
            self.n, [(perm[i], perm[j]) for i in range(self.n) for j in range(self.n) if self.adjacency[i][j]]
        )

    def to_networkx(self) -> "nx.DiGraph":
        out = nx.DiGraph()
        out.add_nodes_from(range(self.n))
        out.add_edges_from((i, j) for i in range(self.n) for j in range(self.n) if self.adjacency[i][j])
        return out


def is_complete(g: SimpleDigraph) -> bool:
    return all(g.adjacency[i][j] for i in range(g.n) for j in range(g.n) if i != j)


def is_empty(g: SimpleDigraph) -> bool:
    return not any(any(row) for row in g.adjacency)


def _preserves(g: SimpleDigraph, perm: Sequence[int]) -> bool:
    a = g.adjacency
    return all(a[perm[i]][perm[j]] == a[i][j] for i in range(g.n) for j in range(g.n))


def automorphism_count(g: SimpleDigraph, guard: Optional[BudgetGuard] = None) -> int:
    (guard or BudgetGuard()).check_automorphism(g.n)
    return sum(1 for perm in itertools.permutations(range(g.n)) if _preserves(g, perm))


def _adjacent_transpositions(n: int) -> Iterator[List[int]]:
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = i + 1, i
        yield perm


def is_fully_symmetric(g: SimpleDigraph) -> bool:
    """Aut(g) is all of S_n. The adjacent transpositions generate S_n, so only those are tried."""
    return all(_preserves(g, perm) for perm in _adjacent_transpositions(g.n))


def _off_diagonal(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def enumerate_simple_digraphs(n: int) -> Iterator[SimpleDigraph]:
    """All 2^(n(n-1)) simple digraphs on n labeled vertices, ordered by edge bitmask."""
    positions = _off_diagonal(n)
    for mask in range(1 << len(positions)):
        yield SimpleDigraph.from_edges(n, [p for k, p in enumerate(positions) if mask >> k & 1])


def _shape(complete: bool, empty: bool) -> str:
    if complete and empty:
        return "complete and empty"
    return "complete" if complete else "empty" if empty else "other"


def _scan_exact(n: int, guard: BudgetGuard, report: Prop31Report) -> None:
    order = math.factorial(n)
    for g in enumerate_simple_digraphs(n):
        report.digraphs += 1
        count = automorphism_count(g, guard)
        full = count == order
        complete, empty = is_complete(g), is_empty(g)
        if full:
            report.full_symmetry += 1
            report.full_symmetry_shapes.append(_shape(complete, empty))
        if full != (complete or empty):
            report.discrepancies.append(f"{g.adjacency}: {count} automorphisms")
        if full != is_fully_symmetric(g):
            report.discrepancies.append(f"{g.adjacency}: transposition test disagrees with the full count")


def _scan_bitmask(n: int, report: Prop31Report) -> None:
    positions = _off_diagonal(n)
    index = {p: k for k, p in enumerate(positions)}
    swaps: List[List[Tuple[int, int]]] = []
    for perm in _adjacent_transpositions(n):
        moved = [(k, index[(perm[i], perm[j])]) for k, (i, j) in enumerate(positions)]
        swaps.append([(k, m) for k, m in moved if k < m])
    full_mask = (1 << len(positions)) - 1
    # bit k of a mask is the k-th off-diagonal position
    for mask in range(full_mask + 1):
        report.digraphs += 1
        full = all(((mask >> k) ^ (mask >> m)) & 1 == 0 for pairs in swaps for k, m in pairs)
        extremal = mask in (0, full_mask)
        if full:
            report.full_symmetry += 1
            report.full_symmetry_shapes.append(_shape(mask == full_mask, mask == 0))
        if full != extremal:
            report.discrepancies.append(f"edge mask {mask:#x}: full symmetry without being complete or empty")


def verify_prop31(n: int, guard: Optional[BudgetGuard] = None, fast: Optional[bool] = None) -> Prop31Report:
    """Among simple digraphs on n vertices, only the complete and the empty one have Aut = S_n.

    `fast` scans raw edge bitmasks with the adjacent-transposition test; it defaults to on for n >= 5.
    """
    guard = guard or BudgetGuard()
    guard.check_prop31(n)
    report = Prop31Report(n=n, digraphs=0, full_symmetry=0)
    console.info(f"Scanning the {1 << (n * (n - 1))} simple digraphs on {n} vertices...")
    if fast if fast is not None else n >= 5:
        _scan_bitmask(n, report)
    else:
        _scan_exact(n, guard, report)
    guard.digraphs_scanned += report.digraphs
    if report.passed:
        console.success(f"{report.full_symmetry} graphs with full symmetry")
    else:
        console.failure(f"{len(report.discrepancies)} discrepancies found")
    return report
