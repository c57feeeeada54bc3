"""Undirected graphs, bounded-arboricity generators, orientations and forest decompositions.

Everything here is immutable after construction, so instances can be shared
freely between threads and worker processes.
"""

from __future__ import annotations

import heapq
import random
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass


class GraphError(ValueError):
    pass


class EdgeListParseError(GraphError):
    """Raised for malformed edge-list text; the message names the offending line."""

    def __init__(self, message: str, line_no: int):
        self.line_no = line_no
        super().__init__(f"{message} at line {line_no}")


class OrientationError(GraphError):
    pass


class Graph:
    """Simple undirected graph over nodes 0..node_count-1 with sorted adjacency lists."""

    __slots__ = ("node_count", "adjacency", "_delivery")

    def __init__(self, node_count: int, adjacency: tuple[tuple[int, ...], ...]):
        # Trusted constructor; use from_edges() for validated construction.
        self.node_count = node_count
        self.adjacency = adjacency
        self._delivery = None

    @classmethod
    def from_edges(cls, node_count: int, edges) -> "Graph":
        if node_count < 1:
            raise GraphError("graph needs at least one node")
        buckets: list[list[int]] = [[] for _ in range(node_count)]
        seen = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphError(f"node id out of range in edge ({u}, {v})")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            buckets[u].append(v)
            buckets[v].append(u)
        return cls(node_count, tuple(tuple(sorted(b)) for b in buckets))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self):
        """Yield every edge once as (u, v) with u < v, in sorted order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if v > u:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adjacency[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def delivery_lists(self):
        """Per-node tuples of (neighbor, back_port) where back_port is this node's
        port index inside the neighbor's adjacency list.  Cached; used by the
        round engine to address replies.
        """
        if self._delivery is None:
            adj = self.adjacency
            out = []
            for v, nbrs in enumerate(adj):
                row = []
                for u in nbrs:
                    row.append((u, bisect_left(adj[u], v)))
                out.append(tuple(row))
            self._delivery = tuple(out)
        return self._delivery

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.node_count == other.node_count
            and self.adjacency == other.adjacency
        )

    def __hash__(self):
        return hash((self.node_count, self.adjacency))

    def __repr__(self):
        return f"Graph(n={self.node_count}, m={self.edge_count()})"


@dataclass(frozen=True)
class Orientation:
    """Per-node out-neighbor ('parent') lists with a claimed out-degree bound."""

    parents: tuple[tuple[int, ...], ...]
    out_bound: int

    def children_lists(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(len(self.parents))]
        for v, ps in enumerate(self.parents):
            for u in ps:
                out[u].append(v)
        return out


@dataclass(frozen=True)
class ForestDecomposition:
    """Partition of a graph's edges into forests.

    forest_of_edge maps (u, v) with u < v to a forest index, and
    forest_parent[i] maps a node to its unique parent within forest i.
    """

    forest_count: int
    forest_of_edge: dict
    forest_parent: tuple


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent
        root = x
        while p.get(root, root) != root:
            root = p[root]
        while p.get(x, x) != x:
            p[x], x = root, p[x]
        return root

    def union(self, a, b) -> bool:
        """Merge the sets of a and b; returns False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def validate_orientation(g: Graph, orientation: Orientation) -> None:
    """Raise OrientationError unless every edge of g is oriented exactly once
    and no node exceeds the claimed out-degree bound."""
    if len(orientation.parents) != g.node_count:
        raise OrientationError("orientation covers a different node count")
    seen = set()
    for v, ps in enumerate(orientation.parents):
        if len(ps) > orientation.out_bound:
            raise OrientationError(f"node {v} has {len(ps)} parents > bound {orientation.out_bound}")
        for u in ps:
            if not g.has_edge(v, u):
                raise OrientationError(f"oriented edge ({v}, {u}) is not a graph edge")
            key = (v, u) if v < u else (u, v)
            if key in seen:
                raise OrientationError(f"edge {key} oriented twice")
            seen.add(key)
    if len(seen) != g.edge_count():
        raise OrientationError("orientation does not cover every edge")


def degeneracy_orientation(g: Graph) -> Orientation:
    """Orient each edge from the earlier-peeled endpoint to the later-peeled one.

    Peeling repeatedly removes a minimum-degree node (ties broken by smallest
    id), so the achieved out-degree bound equals the graph's degeneracy: at
    most 2*alpha - 1 for a graph of arboricity alpha.
    """
    n = g.node_count
    adj = g.adjacency
    deg = [len(a) for a in adj]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = bytearray(n)
    parents: list[tuple[int, ...]] = [()] * n
    out_bound = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = 1
        out = tuple(u for u in adj[v] if not removed[u])
        parents[v] = out
        if len(out) > out_bound:
            out_bound = len(out)
        for u in out:
            deg[u] -= 1
            heapq.heappush(heap, (deg[u], u))
    return Orientation(tuple(parents), out_bound)


def forest_decomposition(g: Graph, orientation: Orientation) -> ForestDecomposition:
    """Assign each node's i-th outgoing edge to forest i.

    Requires an orientation whose rank classes are acyclic (true for any
    acyclic orientation such as degeneracy_orientation's); otherwise the
    orientation is rejected as inconsistent.
    """
    validate_orientation(g, orientation)
    count = orientation.out_bound
    forest_of_edge: dict = {}
    forest_parent: list[dict] = [dict() for _ in range(count)]
    for v, ps in enumerate(orientation.parents):
        for i, u in enumerate(ps):
            key = (v, u) if v < u else (u, v)
            forest_of_edge[key] = i
            forest_parent[i][v] = u
    for i, fp in enumerate(forest_parent):
        uf = _UnionFind()
        for v, u in fp.items():
            if not uf.union(v, u):
                raise OrientationError(f"inconsistent orientation: forest {i} contains a cycle")
    return ForestDecomposition(count, forest_of_edge, tuple(forest_parent))


# ---------------------------------------------------------------------------
# generators

def _prufer_tree_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform random labeled tree on n nodes via a Prufer sequence."""
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x) if leaf < x else (x, leaf))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v) if u < v else (v, u))
    return edges


def generate_forest_union_parts(n: int, alpha: int, seed: int):
    """Sample alpha independent uniform spanning trees on n nodes.

    Returns (graph, parts) where graph merges parallel edges and parts holds
    each generating tree's edge list (useful for seeding a decomposition or
    checking per-tree acyclicity).
    """
    if n < 1:
        raise GraphError("n must be at least 1")
    if alpha < 1:
        raise GraphError("alpha must be at least 1")
    rng = random.Random(seed)
    parts = [_prufer_tree_edges(n, rng) for _ in range(alpha)]
    merged = sorted({e for part in parts for e in part})
    return Graph.from_edges(n, merged), parts


def generate_forest_union(n: int, alpha: int, seed: int) -> Graph:
    """Union of alpha uniform random spanning trees; arboricity <= alpha by construction."""
    g, _ = generate_forest_union_parts(n, alpha, seed)
    return g


def random_tree(n: int, seed: int) -> Graph:
    return generate_forest_union(n, 1, seed)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    """Star with node 0 as center and n-1 leaves."""
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


# ---------------------------------------------------------------------------
# subgraphs and components

def induced_subgraph(g: Graph, nodes) -> tuple[Graph, list[int]]:
    """Induced subgraph with nodes relabeled 0..s-1 in increasing global order.

    Returns (subgraph, global_ids) where global_ids[i] is the original id of
    subgraph node i.
    """
    global_ids = sorted(nodes)
    local = {u: i for i, u in enumerate(global_ids)}
    adjacency = []
    for u in global_ids:
        adjacency.append(tuple(local[w] for w in g.adjacency[u] if w in local))
    return Graph(max(1, len(global_ids)), tuple(adjacency)), global_ids


def connected_components(g: Graph, nodes=None) -> list[list[int]]:
    """Connected components (sorted node lists) of g, or of the subgraph induced
    by `nodes` when given."""
    if nodes is None:
        member = None
        pool = range(g.node_count)
    else:
        member = set(nodes)
        pool = sorted(member)
    seen = set()
    comps = []
    for root in pool:
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if u in seen or (member is not None and u not in member):
                    continue
                seen.add(u)
                comp.append(u)
                queue.append(u)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# edge-list text format

def read_edge_list(text: str) -> Graph:
    """Parse the edge-list format: header "n m", then m lines "u v" with
    0 <= u < v < n.  Lines starting with '#' are ignored."""
    header = None
    n = m = 0
    edges = []
    seen = set()
    count = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2:
                raise EdgeListParseError("malformed header (expected 'n m')", line_no)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListParseError("malformed header (expected 'n m')", line_no) from None
            if n < 1 or m < 0:
                raise EdgeListParseError("invalid header values", line_no)
            header = line_no
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError("malformed edge line (expected 'u v')", line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError("malformed edge line (expected 'u v')", line_no) from None
        if u == v:
            raise EdgeListParseError("self-loop", line_no)
        if u > v:
            raise EdgeListParseError("edge endpoints not in increasing order", line_no)
        if not (0 <= u and v < n):
            raise EdgeListParseError("node id out of range", line_no)
        if (u, v) in seen:
            raise EdgeListParseError("duplicate edge", line_no)
        seen.add((u, v))
        edges.append((u, v))
        count += 1
        if count > m:
            raise EdgeListParseError(f"more than the declared {m} edges", line_no)
    if header is None:
        raise EdgeListParseError("missing header", 1)
    if count != m:
        raise EdgeListParseError(f"expected {m} edges, found {count}", len(text.splitlines()) or 1)
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.node_count} {g.edge_count()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
