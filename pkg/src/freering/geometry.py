"""Word metric, Stallings folding and bounded geometric probes in free groups."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import RankMismatch
from .words import Word, ball, inv_letters, letters_of_rank, mul_letters, shortlex_key

Letters = tuple[int, ...]


def word_metric(g: Word, h: Word) -> int:
    return len(geodesic(g, h))


def geodesic(g: Word, h: Word) -> Letters:
    """The unique geodesic from g to h, as the reduced word g^-1 h."""
    if g.rank != h.rank:
        raise RankMismatch(f"rank {g.rank} vs {h.rank}")
    return mul_letters(inv_letters(g.letters), h.letters)


@dataclass(frozen=True)
class CoreGraph:
    """Folded core graph of a subgroup; vertex 0 is the base.

    ``edges`` holds ``(src, dst, label)`` with positive labels; the reverse
    traversal reads the inverse letter.
    """

    rank: int
    vertices: int
    edges: tuple[tuple[int, int, int], ...]

    @property
    def base(self) -> int:
        return 0

    def adjacency(self) -> list[dict[int, int]]:
        adj: list[dict[int, int]] = [{} for _ in range(self.vertices)]
        for u, v, a in self.edges:
            adj[u][a] = v
            adj[v][-a] = u
        return adj

    def to_json(self) -> dict:
        return {"vertices": self.vertices, "base": 0, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict, rank: int) -> CoreGraph:
        return cls(rank, int(obj["vertices"]), tuple(tuple(e) for e in obj["edges"]))


class _Folder:
    def __init__(self) -> None:
        self.parent: list[int] = [0]

    def new(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            # keep the base as the representative of its class
            if b == 0:
                a, b = b, a
            self.parent[b] = a


def fold(Y: Sequence[Word], rank: Optional[int] = None) -> CoreGraph:
    """Stallings folding of the wedge of loops labeled by ``Y``."""
    rank = _rank_of(Y, rank)
    uf = _Folder()
    edges: list[tuple[int, int, int]] = []
    for y in Y:
        if y.rank != rank:
            raise RankMismatch(f"rank {y.rank} vs {rank}")
        if y.is_identity():
            continue
        prev = 0
        for i, a in enumerate(y.letters):
            nxt = 0 if i == len(y) - 1 else uf.new()
            edges.append((prev, nxt, a) if a > 0 else (nxt, prev, -a))
            prev = nxt
    # identify edges with equal label leaving (or entering) the same vertex
    changed = True
    while changed:
        changed = False
        seen: dict[tuple[int, int], int] = {}
        for u, v, a in edges:
            u, v = uf.find(u), uf.find(v)
            for key, target in (((u, a), v), ((v, -a), u)):
                t = seen.get(key)
                if t is None:
                    seen[key] = target
                elif uf.find(t) != uf.find(target):
                    uf.union(t, target)
                    changed = True
        edges = list({(uf.find(u), uf.find(v), a) for u, v, a in edges})
    edges = _prune(edges)
    return _canonical(rank, edges)


def _prune(edges: list[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    # repeatedly drop hanging edges at vertices other than the base
    edges = list(edges)
    while True:
        degree: dict[int, int] = {}
        for u, v, _ in edges:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        leaves = {x for x, d in degree.items() if d == 1 and x != 0}
        if not leaves:
            return edges
        edges = [e for e in edges if e[0] not in leaves and e[1] not in leaves]


def _canonical(rank: int, edges: list[tuple[int, int, int]]) -> CoreGraph:
    adj: dict[int, dict[int, int]] = {}
    for u, v, a in edges:
        adj.setdefault(u, {})[a] = v
        adj.setdefault(v, {})[-a] = u
    order = {0: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for a in letters_of_rank(rank):
            y = adj.get(x, {}).get(a)
            if y is not None and y not in order:
                order[y] = len(order)
                queue.append(y)
    renamed = sorted((order[u], order[v], a) for u, v, a in edges)
    return CoreGraph(rank, len(order), tuple(renamed))


def _rank_of(Y: Sequence[Word], rank: Optional[int]) -> int:
    if rank is not None:
        return rank
    if not Y:
        raise ValueError("rank is required for an empty generating set")
    return Y[0].rank


def read(graph: CoreGraph, letters: Sequence[int], adj: Optional[list[dict[int, int]]] = None) -> tuple[int, int]:
    """Follow ``letters`` from the base: returns (vertex reached, letters consumed)."""
    adj = adj or graph.adjacency()
    v = 0
    for i, a in enumerate(letters):
        nxt = adj[v].get(a)
        if nxt is None:
            return v, i
        v = nxt
    return v, len(letters)


def member(h: Word, Y: Sequence[Word]) -> bool:
    return member_in(fold(Y, h.rank), h)


def member_in(graph: CoreGraph, h: Word, adj: Optional[list[dict[int, int]]] = None) -> bool:
    v, used = read(graph, h.letters, adj)
    return used == len(h) and v == 0


def is_free_basis(Y: Sequence[Word], rank: Optional[int] = None) -> bool:
    rank = _rank_of(Y, rank)
    if len(Y) != rank:
        return False
    g = fold(Y, rank)
    return g.vertices == 1 and sorted(a for _, _, a in g.edges) == list(range(1, rank + 1))


def base_distances(graph: CoreGraph, adj: Optional[list[dict[int, int]]] = None) -> list[int]:
    adj = adj or graph.adjacency()
    dist = [-1] * graph.vertices
    dist[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x].values():
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def coset_distance(graph: CoreGraph, g: Word, adj=None, dist=None) -> int:
    """Word distance from g to the subgroup, i.e. the shortest element of the coset Hg."""
    adj = adj or graph.adjacency()
    dist = dist or base_distances(graph, adj)
    v, used = read(graph, g.letters, adj)
    # what is left of g walks straight out into a tree hanging off v
    return dist[v] + len(g) - used


def closed_paths(graph: CoreGraph, R: int, cap: int, adj=None) -> Optional[list[Letters]]:
    """Nontrivial reduced closed paths at the base of length at most R, or None past ``cap``."""
    adj = adj or graph.adjacency()
    out: list[Letters] = []
    stack: list[tuple[int, Letters]] = [(0, ())]
    visited = 0
    while stack:
        v, path = stack.pop()
        visited += 1
        if visited > cap:
            return None
        if path and v == 0:
            out.append(path)
        if len(path) == R:
            continue
        for a, y in adj[v].items():
            if path and path[-1] == -a:
                continue
            stack.append((y, path + (a,)))
    out.sort(key=shortlex_key)
    return out


@dataclass(frozen=True)
class ProbeResult:
    verdict: str  # "Satisfied" | "ViolatedAt" | "Inconclusive"
    witness: Optional[Word] = None

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = list(self.witness.letters)
        return out


DEFAULT_CAP = 200_000


def quasiconvexity_probe(Y: Sequence[Word], k: int, R: int, rank: Optional[int] = None, cap: int = DEFAULT_CAP) -> ProbeResult:
    """Check geodesics to subgroup elements of length <= R stay within k of the subgroup."""
    rank = _rank_of(Y, rank)
    graph = fold(Y, rank)
    adj = graph.adjacency()
    dist = base_distances(graph, adj)
    paths = closed_paths(graph, R, cap, adj)
    if paths is None:
        return ProbeResult("Inconclusive")
    for h in paths:
        v = 0
        for a in h:
            v = adj[v][a]
            if dist[v] > k:
                return ProbeResult("ViolatedAt", Word(rank, h))
    return ProbeResult("Satisfied")


def malnormality_probe(Y: Sequence[Word], R: int, rank: Optional[int] = None, cap: int = DEFAULT_CAP) -> ProbeResult:
    """Look for g outside the subgroup and h != 1 inside with g h g^-1 inside, all within R."""
    rank = _rank_of(Y, rank)
    graph = fold(Y, rank)
    adj = graph.adjacency()
    paths = closed_paths(graph, R, cap, adj)
    if paths is None:
        return ProbeResult("Inconclusive")
    for g in ball(rank, R):
        if member_in(graph, g, adj):
            continue
        gi = inv_letters(g.letters)
        for h in paths:
            conj = Word(rank, mul_letters(mul_letters(g.letters, h), gi))
            if member_in(graph, conj, adj):
                return ProbeResult("ViolatedAt", g)
    return ProbeResult("Satisfied")

