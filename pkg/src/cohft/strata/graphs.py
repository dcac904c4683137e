"""Stable graphs of small genus and number of markings.

A graph is stored with vertices 0..V-1, ``legs[i]`` the vertex carrying
marking i+1, and ``edges`` a sorted tuple of vertex pairs (u <= v; u == v
is a self-loop). Each edge has two half-edges, (e, 0) at u and (e, 1) at v.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement, permutations, product
from math import factorial


@dataclass(frozen=True)
class StableGraph:
    genera: tuple
    legs: tuple
    edges: tuple

    def __post_init__(self):
        nv = len(self.genera)
        for v in self.legs:
            if not 0 <= v < nv:
                raise ValueError("leg on a missing vertex")
        for u, v in self.edges:
            if not (0 <= u <= v < nv):
                raise ValueError("edges must be sorted vertex pairs")

    @property
    def n(self) -> int:
        return len(self.legs)

    @property
    def num_vertices(self) -> int:
        return len(self.genera)

    @cached_property
    def genus(self) -> int:
        return len(self.edges) - self.num_vertices + 1 + sum(self.genera)

    def valence(self, v) -> int:
        val = sum(1 for w in self.legs if w == v)
        for a, b in self.edges:
            val += (a == v) + (b == v)
        return val

    def is_stable(self) -> bool:
        return all(2 * g - 2 + self.valence(v) > 0 for v, g in enumerate(self.genera))

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for a, b in self.edges:
                for x, y in ((a, b), (b, a)):
                    if x == v and y not in seen:
                        seen.add(y)
                        stack.append(y)
        return len(seen) == self.num_vertices

    def relabel(self, perm) -> "StableGraph":
        """Move vertex v to perm[v]."""
        genera = [0] * self.num_vertices
        for v, g in enumerate(self.genera):
            genera[perm[v]] = g
        edges = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in self.edges))
        return StableGraph(tuple(genera), tuple(perm[v] for v in self.legs), edges)

    def _key(self):
        return (self.genera, self.legs, self.edges)

    @cached_property
    def canonical(self) -> "StableGraph":
        best = None
        for perm in permutations(range(self.num_vertices)):
            cand = self.relabel(perm)
            if best is None or cand._key() < best._key():
                best = cand
        return best

    @cached_property
    def automorphism_count(self) -> int:
        """Vertex symmetries times permutations of parallel edges times loop flips."""
        target = self.relabel(list(range(self.num_vertices)))._key()
        vertex_syms = sum(
            1 for perm in permutations(range(self.num_vertices)) if self.relabel(perm)._key() == target
        )
        mult = {}
        for e in self.edges:
            mult[e] = mult.get(e, 0) + 1
        count = vertex_syms
        for (a, b), k in mult.items():
            count *= factorial(k)
            if a == b:
                count *= 2**k
        return count

    def half_edges_at(self, v):
        """Half-edges (e, side) attached to v, in edge order."""
        out = []
        for e, (a, b) in enumerate(self.edges):
            if a == v:
                out.append((e, 0))
            if b == v:
                out.append((e, 1))
        return out

    def to_json(self):
        return {"genera": list(self.genera), "legs": list(self.legs), "edges": [list(e) for e in self.edges]}

    def __repr__(self):
        return f"StableGraph(g={list(self.genera)}, legs={list(self.legs)}, edges={list(self.edges)})"


def smooth_graph(g: int, n: int) -> StableGraph:
    return StableGraph((g,), (0,) * n, ())


def _degenerations(graph: StableGraph):
    """All graphs obtained by adding one edge: a self-loop or a vertex split."""
    nv = graph.num_vertices
    for v, g in enumerate(graph.genera):
        if g >= 1:
            genera = list(graph.genera)
            genera[v] = g - 1
            edges = tuple(sorted(graph.edges + ((v, v),)))
            yield StableGraph(tuple(genera), graph.legs, edges)
        # split v into v and a new vertex w = nv; every half-edge at v picks a side
        slots = [("leg", i) for i, x in enumerate(graph.legs) if x == v] + [("half", h) for h in graph.half_edges_at(v)]
        for mask in range(2 ** len(slots)):
            moved = {slots[s] for s in range(len(slots)) if mask >> s & 1}
            for g1 in range(g + 1):
                genera = list(graph.genera) + [g - g1]
                genera[v] = g1
                legs = tuple(nv if ("leg", i) in moved else x for i, x in enumerate(graph.legs))
                edges = []
                for e, (a, b) in enumerate(graph.edges):
                    a2 = nv if ("half", (e, 0)) in moved else a
                    b2 = nv if ("half", (e, 1)) in moved else b
                    edges.append(tuple(sorted((a2, b2))))
                edges.append((v, nv))
                new = StableGraph(tuple(genera), legs, tuple(sorted(edges)))
                if new.is_stable():
                    yield new


def enumerate_stable_graphs(g: int, n: int) -> list:
    """One canonical representative per isomorphism class, sorted by edge count."""
    return list(_enumerate(g, n))


@lru_cache(maxsize=None)
def _enumerate(g, n):
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"(g, n) = ({g}, {n}) is unstable")
    start = smooth_graph(g, n).canonical
    found = {start}
    layer = [start]
    while layer:
        nxt = []
        for graph in layer:
            for new in _degenerations(graph):
                c = new.canonical
                if c not in found:
                    found.add(c)
                    nxt.append(c)
        layer = nxt
    return tuple(sorted(found, key=lambda x: (len(x.edges), x.num_vertices, x._key())))


# brute-force oracle ---------------------------------------------------------------


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _isomorphic(a: StableGraph, b: StableGraph) -> bool:
    if a.num_vertices != b.num_vertices or len(a.edges) != len(b.edges):
        return False
    target = sorted(b.edges)
    for perm in permutations(range(a.num_vertices)):
        if any(a.genera[v] != b.genera[perm[v]] for v in range(a.num_vertices)):
            continue
        if any(perm[x] != y for x, y in zip(a.legs, b.legs)):
            continue
        if sorted(tuple(sorted((perm[u], perm[v]))) for u, v in a.edges) == target:
            return True
    return False


def _brute_automorphisms(graph: StableGraph) -> int:
    """Count (vertex map, half-edge map) pairs by running over all edge permutations."""
    edges = list(graph.edges)
    count = 0
    for perm in permutations(range(graph.num_vertices)):
        if any(graph.genera[v] != graph.genera[perm[v]] for v in range(graph.num_vertices)):
            continue
        if any(perm[v] != v for v in graph.legs):
            continue
        for image in permutations(range(len(edges))):
            ok = True
            flips = 1
            for e, f in enumerate(image):
                u, v = edges[e]
                if sorted((perm[u], perm[v])) != sorted(edges[f]):
                    ok = False
                    break
                if u == v:
                    flips *= 2
            if ok:
                count += flips
    return count


def brute_force_graphs(g: int, n: int) -> list:
    """(graph, automorphism count) per isomorphism class, from raw multigraph enumeration."""
    found = []
    for nv in range(1, max(1, 2 * g - 2 + n) + 1):
        pairs = [(u, v) for u in range(nv) for v in range(u, nv)]
        for total_vertex_genus in range(g + 1):
            h1 = g - total_vertex_genus
            ne = nv - 1 + h1
            for genera in _compositions(total_vertex_genus, nv):
                for edges in combinations_with_replacement(pairs, ne):
                    for legs in product(range(nv), repeat=n):
                        cand = StableGraph(genera, legs, tuple(sorted(edges)))
                        if not (cand.is_connected() and cand.is_stable()):
                            continue
                        if not any(_isomorphic(cand, old) for old in found):
                            found.append(cand)
    return [(x, _brute_automorphisms(x)) for x in found]
