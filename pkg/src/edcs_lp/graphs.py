"""Bipartite graph toolkit: matchings, Hall witnesses and EDCS construction.

Vertices are integers on each side: left ``0 .. n_left - 1`` and right
``0 .. n_right - 1``.  An edge is a ``(left, right)`` pair, and edge sets
(``H``, matchings) are frozensets of such pairs.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import ContractViolation, EdcsError, ParameterError
from .profiles import Params

Edge = tuple[int, int]
EdgeSet = frozenset[Edge]

BRUTE_FORCE_MAX_EDGES = 12
BRUTE_FORCE_MAX_SIDE = 8


@dataclass(frozen=True)
class BipartiteGraph:
    """A bipartite graph given by vertex counts and an edge list.

    Duplicate pairs are kept as given so that :func:`verify_instance` can
    report them; every algorithm below works on the underlying edge set.
    """

    n_left: int
    n_right: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n_left < 0 or self.n_right < 0:
            raise ParameterError("vertex counts must be nonnegative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n_left and 0 <= v < self.n_right):
                raise ParameterError(f"edge ({u}, {v}) out of range "
                                     f"for a {self.n_left}x{self.n_right} graph")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n_left: int, n_right: int, edges: Iterable[Edge]) -> BipartiteGraph:
        return cls(n_left, n_right, tuple(sorted(set(edges))))

    @property
    def edge_set(self) -> EdgeSet:
        return frozenset(self.edges)

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def duplicates(self) -> list[Edge]:
        return sorted(e for e, c in Counter(self.edges).items() if c > 1)

    def subgraph(self, edges: Iterable[Edge]) -> BipartiteGraph:
        return BipartiteGraph.from_edges(self.n_left, self.n_right, edges)

    def left_adjacency(self) -> list[list[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n_left)]
        for u, v in self.edges:
            adj[u].add(v)
        return [sorted(s) for s in adj]


def degrees(n_left: int, n_right: int, edges: Iterable[Edge]) -> tuple[list[int], list[int]]:
    dl, dr = [0] * n_left, [0] * n_right
    for u, v in set(edges):
        dl[u] += 1
        dr[v] += 1
    return dl, dr


def is_matching(edges: Iterable[Edge]) -> bool:
    edges = list(edges)
    lefts = [u for u, _ in edges]
    rights = [v for _, v in edges]
    return len(set(lefts)) == len(lefts) and len(set(rights)) == len(rights)


# ---------------------------------------------------------------------------
# maximum matching

def max_matching(g: BipartiteGraph) -> EdgeSet:
    """Maximum matching by Hopcroft-Karp (BFS layering, then disjoint
    shortest augmenting paths found by an iterative DFS)."""
    adj = g.left_adjacency()
    inf = float("inf")
    mate_l: list[Optional[int]] = [None] * g.n_left
    mate_r: list[Optional[int]] = [None] * g.n_right

    while True:
        dist = [inf] * g.n_left
        queue = deque()
        for u in range(g.n_left):
            if mate_l[u] is None:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = mate_r[v]
                if w is None:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            break

        it = [0] * g.n_left
        for root in range(g.n_left):
            if mate_l[root] is not None:
                continue
            # iterative DFS along the layered graph
            path = [root]
            while path:
                u = path[-1]
                advanced = False
                while it[u] < len(adj[u]):
                    v = adj[u][it[u]]
                    it[u] += 1
                    w = mate_r[v]
                    if w is None:
                        # augment along path, ending at free right vertex v
                        for x in reversed(path):
                            nxt = mate_l[x]
                            mate_l[x], mate_r[v] = v, x
                            v = nxt
                        path = []
                        advanced = True
                        break
                    if dist[w] == dist[u] + 1:
                        path.append(w)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = inf
                    path.pop()
    return frozenset((u, v) for u, v in enumerate(mate_l) if v is not None)


def brute_force_mu(g: BipartiteGraph) -> int:
    """Maximum matching size by exhaustion, for tiny graphs only.

    Up to 12 edges every edge subset is tried; otherwise, with at most 8
    vertices per side, every assignment of distinct right vertices to left
    vertices is enumerated as a bitmask table.
    """
    edges = sorted(g.edge_set)
    if len(edges) <= BRUTE_FORCE_MAX_EDGES:
        for size in range(min(g.n_left, g.n_right, len(edges)), 0, -1):
            for subset in itertools.combinations(edges, size):
                if is_matching(subset):
                    return size
        return 0
    if g.n_left <= BRUTE_FORCE_MAX_SIDE and g.n_right <= BRUTE_FORCE_MAX_SIDE:
        adj = g.left_adjacency()
        reachable = {0}
        for u in range(g.n_left):
            nxt = set(reachable)
            for used in reachable:
                for v in adj[u]:
                    if not used >> v & 1:
                        nxt.add(used | 1 << v)
            reachable = nxt
        return max(bin(s).count("1") for s in reachable)
    raise ParameterError(
        f"graph too large for exhaustive matching ({len(edges)} edges, "
        f"{g.n_left}+{g.n_right} vertices)")


def neighborhood(edges: Iterable[Edge], left_set: Iterable[int]) -> set[int]:
    left_set = set(left_set)
    return {v for u, v in edges if u in left_set}


def hall_witness(g: BipartiteGraph, m: Iterable[Edge]) -> frozenset[int]:
    """Hall witness ``A`` for a maximum matching *m* of *g*.

    ``A`` is the set of left vertices reachable from unmatched left vertices
    by alternating paths (non-matching edges left to right, matching edges
    right to left).  Raises :class:`ContractViolation` when *m* is not a
    maximum matching of *g*.
    """
    m = frozenset(m)
    if not m <= g.edge_set:
        raise ContractViolation("matching uses edges outside the graph")
    if not is_matching(m):
        raise ContractViolation("edge set is not a matching")
    mate_l = {u: v for u, v in m}
    mate_r = {v: u for u, v in m}
    adj = g.left_adjacency()
    seen = {u for u in range(g.n_left) if u not in mate_l}
    queue = deque(sorted(seen))
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if mate_l.get(u) == v:
                continue
            w = mate_r.get(v)
            if w is None:
                raise ContractViolation(f"matching is not maximum: augmenting path ends at r{v}")
            if w not in seen:
                seen.add(w)
                queue.append(w)
    a = frozenset(seen)
    n_a = neighborhood(g.edge_set, a)
    if len(n_a) + g.n_left - len(a) != len(m):
        raise ContractViolation("Hall identity fails: matching is not maximum")
    return a


def hall_value(g: BipartiteGraph, a: Iterable[int]) -> int:
    a = set(a)
    return len(neighborhood(g.edge_set, a)) + g.n_left - len(a)


def covers_exactly_one(m: Iterable[Edge], a: Iterable[int], n_a: Iterable[int]) -> list[Edge]:
    """Edges of *m* that do not cover exactly one vertex of ``N(A) + (L \\ A)``."""
    a, n_a = set(a), set(n_a)
    return sorted(e for e in m if (e[0] not in a) + (e[1] in n_a) != 1)


# ---------------------------------------------------------------------------
# EDCS

@dataclass(frozen=True)
class EdcsViolation:
    edge: Edge
    in_h: bool
    degree_sum: int
    bound: int

    def __str__(self) -> str:
        u, v = self.edge
        if self.in_h:
            return f"H edge (l{u}, r{v}) has degree sum {self.degree_sum} > {self.bound}"
        return f"missing edge (l{u}, r{v}) has degree sum {self.degree_sum} < {self.bound}"


@dataclass
class EdcsReport:
    violations: list[EdcsViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def is_edcs(g: BipartiteGraph, h: Iterable[Edge], params: Params) -> EdcsReport:
    """Report every edge breaking the (beta, beta_minus) degree constraints."""
    h = frozenset(h)
    extra = h - g.edge_set
    if extra:
        raise ParameterError(f"H has {len(extra)} edges outside G, e.g. {min(extra)}")
    dl, dr = degrees(g.n_left, g.n_right, h)
    report = EdcsReport()
    for u, v in sorted(g.edge_set):
        s = dl[u] + dr[v]
        if (u, v) in h:
            if s > params.beta:
                report.violations.append(EdcsViolation((u, v), True, s, params.beta))
        elif s < params.beta_minus:
            report.violations.append(EdcsViolation((u, v), False, s, params.beta_minus))
    return report


def greedy_edcs(g: BipartiteGraph, params: Params, *, return_fixes: bool = False):
    """Build a (beta, beta_minus)-EDCS of *g* by local fixes.

    Each pass scans the edges in sorted order, first dropping ``H`` edges
    whose degree sum exceeds beta, then adding missing edges whose degree sum
    is below beta_minus; passes repeat until nothing changes.  Every fix
    raises ``(2 beta - 1)|H| - sum(deg^2)`` by at least one, which bounds the
    number of fixes by ``(2 beta - 1)^2 n / 16`` for ``n`` vertices.
    """
    edges = sorted(g.edge_set)
    dl, dr = [0] * g.n_left, [0] * g.n_right
    h: set[Edge] = set()
    fixes = 0
    changed = True
    while changed:
        changed = False
        for e in edges:
            u, v = e
            if e in h and dl[u] + dr[v] > params.beta:
                h.remove(e)
                dl[u] -= 1
                dr[v] -= 1
                fixes += 1
                changed = True
        for e in edges:
            u, v = e
            if e not in h and dl[u] + dr[v] < params.beta_minus:
                h.add(e)
                dl[u] += 1
                dr[v] += 1
                fixes += 1
                changed = True
    result = frozenset(h)
    return (result, fixes) if return_fixes else result


# ---------------------------------------------------------------------------
# instances

@dataclass(frozen=True)
class EdcsInstance:
    """A graph ``G`` with an EDCS ``H``, maximum matchings ``M`` of ``H`` and
    ``M*`` of ``G``, and a Hall witness ``A`` for ``H``."""

    g: BipartiteGraph
    h: EdgeSet
    m: EdgeSet
    mstar: EdgeSet
    witness_a: frozenset[int]
    params: Params

    @property
    def ratio(self):
        from fractions import Fraction
        return Fraction(len(self.mstar), len(self.m))


def complete_instance(g: BipartiteGraph, h: Iterable[Edge], params: Params) -> EdcsInstance:
    """Attach maximum matchings and a Hall witness to a (G, H) pair."""
    h = frozenset(h)
    hg = g.subgraph(h)
    m = max_matching(hg)
    return EdcsInstance(g, h, m, max_matching(g), hall_witness(hg, m), params)


def tight_example(k: int, n: int) -> EdcsInstance:
    """The classic odd-beta family: a (2k+1, 2k)-EDCS matching only 2/3 of a
    perfect matching.

    Each side is split into groups A, B, C of size *n* (left ids ``0..3n-1``
    in that order, same on the right).  ``H`` joins A_L to C_R and C_L to A_R
    by perfect matchings and B_L to C_R, B_R to C_L by k-regular circulants;
    the only edges outside ``H`` are the B_L-B_R perfect matching.
    """
    if k < 1 or n < k:
        raise ParameterError(f"need n >= k >= 1, got k={k}, n={n}")
    a, b, c = 0, n, 2 * n
    h = set()
    for i in range(n):
        h.add((a + i, c + i))
        h.add((c + i, a + i))
        for j in range(k):
            h.add((b + i, c + (i + j) % n))
            h.add((c + (i + j) % n, b + i))
    mstar = {(a + i, c + i) for i in range(n)} | {(b + i, b + i) for i in range(n)} \
        | {(c + i, a + i) for i in range(n)}
    g = BipartiteGraph.from_edges(3 * n, 3 * n, h | mstar)
    m = frozenset({(a + i, c + i) for i in range(n)} | {(c + i, a + i) for i in range(n)})
    witness = hall_witness(g.subgraph(h), m)
    return EdcsInstance(g, frozenset(h), m, frozenset(mstar), witness, Params(2 * k + 1, 2 * k))


# ---------------------------------------------------------------------------
# graph JSON

class GraphFormatError(EdcsError, ValueError):
    """Malformed graph JSON."""


def instance_to_json(inst: EdcsInstance) -> dict:
    return {
        "n_left": inst.g.n_left,
        "n_right": inst.g.n_right,
        "edges": [list(e) for e in inst.g.edges],
        "h": [list(e) for e in sorted(inst.h)],
        "m": [list(e) for e in sorted(inst.m)],
        "mstar": [list(e) for e in sorted(inst.mstar)],
        "witness_a": sorted(inst.witness_a),
        "beta": inst.params.beta,
        "beta_minus": inst.params.beta_minus,
    }


def dump_instance(inst: EdcsInstance) -> str:
    return json.dumps(instance_to_json(inst), separators=(",", ":")) + "\n"


@dataclass
class GraphDocument:
    """Parsed graph JSON; fields after ``edges`` may be absent."""

    g: BipartiteGraph
    h: Optional[EdgeSet] = None
    m: Optional[EdgeSet] = None
    mstar: Optional[EdgeSet] = None
    witness_a: Optional[frozenset[int]] = None
    params: Optional[Params] = None


def _pairs(data: dict, key: str) -> Optional[list[Edge]]:
    if key not in data:
        return None
    raw = data[key]
    if not isinstance(raw, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) for x in p)
            for p in raw):
        raise GraphFormatError(f"field {key!r} must be a list of [left, right] integer pairs")
    return [(p[0], p[1]) for p in raw]


def parse_graph_json(text: str) -> GraphDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise GraphFormatError("top level must be a JSON object")
    for key in ("n_left", "n_right", "edges"):
        if key not in data:
            raise GraphFormatError(f"missing required field {key!r}")
    if not all(isinstance(data[k], int) for k in ("n_left", "n_right")):
        raise GraphFormatError("n_left and n_right must be integers")
    try:
        g = BipartiteGraph(data["n_left"], data["n_right"], tuple(_pairs(data, "edges")))
    except ParameterError as exc:
        raise GraphFormatError(str(exc)) from exc
    doc = GraphDocument(g)
    for key in ("h", "m", "mstar"):
        pairs = _pairs(data, key)
        if pairs is not None:
            setattr(doc, key, frozenset(pairs))
    if "witness_a" in data:
        wa = data["witness_a"]
        if not isinstance(wa, list) or not all(isinstance(x, int) for x in wa):
            raise GraphFormatError("witness_a must be a list of integers")
        doc.witness_a = frozenset(wa)
    if "beta" in data or "beta_minus" in data:
        if not isinstance(data.get("beta"), int) or not isinstance(data.get("beta_minus"), int):
            raise GraphFormatError("beta and beta_minus must both be integers")
        try:
            doc.params = Params(data["beta"], data["beta_minus"])
        except ParameterError as exc:
            raise GraphFormatError(str(exc)) from exc
    return doc
