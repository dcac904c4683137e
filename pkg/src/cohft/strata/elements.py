"""Decorated strata and formal linear combinations of them.

A decorated stratum [Gamma, alpha] stands for the pushforward
xi_Gamma*(alpha) of a monomial alpha in psi classes of half-edges and kappa
classes of vertices; no 1/|Aut| is folded in. Monomials whose degree at a
vertex exceeds the vertex dimension are dropped, since the class is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations

from .graphs import StableGraph


@dataclass(frozen=True)
class DecoratedStratum:
    genera: tuple
    legs: tuple
    leg_psi: tuple
    edges: tuple  # (u, a, v, b): half-edge at u with psi^a joined to one at v with psi^b
    kappa: tuple  # per vertex, a sorted tuple of kappa indices

    @classmethod
    def smooth(cls, g, n, leg_psi=None, kappa=()):
        return cls((g,), (0,) * n, tuple(leg_psi or (0,) * n), (), (tuple(sorted(kappa)),))

    @classmethod
    def from_graph(cls, graph: StableGraph):
        return cls(
            graph.genera,
            graph.legs,
            (0,) * graph.n,
            tuple((u, 0, v, 0) for u, v in graph.edges),
            ((),) * graph.num_vertices,
        )

    @property
    def n(self):
        return len(self.legs)

    @property
    def num_vertices(self):
        return len(self.genera)

    @cached_property
    def graph(self) -> StableGraph:
        return StableGraph(self.genera, self.legs, tuple(sorted((u, v) for u, _, v, _ in self.edges)))

    @property
    def genus(self):
        return self.graph.genus

    def vertex_degree(self, v):
        d = sum(self.kappa[v])
        d += sum(a for w, a in zip(self.legs, self.leg_psi) if w == v)
        for u, a, w, b in self.edges:
            d += (a if u == v else 0) + (b if w == v else 0)
        return d

    def vertex_dimension(self, v):
        return 3 * self.genera[v] - 3 + self.graph.valence(v)

    def vanishes(self):
        return any(self.vertex_degree(v) > self.vertex_dimension(v) for v in range(self.num_vertices))

    @property
    def codim(self):
        return len(self.edges) + sum(self.vertex_degree(v) for v in range(self.num_vertices))

    def relabel(self, perm):
        nv = self.num_vertices
        genera = [0] * nv
        kappa = [()] * nv
        for v in range(nv):
            genera[perm[v]] = self.genera[v]
            kappa[perm[v]] = self.kappa[v]
        edges = []
        for u, a, v, b in self.edges:
            x, y = sorted(((perm[u], a), (perm[v], b)))
            edges.append(x + y)
        return DecoratedStratum(tuple(genera), tuple(perm[v] for v in self.legs), self.leg_psi, tuple(sorted(edges)), tuple(kappa))

    def _key(self):
        return (self.genera, self.kappa, self.legs, self.leg_psi, self.edges)

    @cached_property
    def canonical(self) -> "DecoratedStratum":
        best = None
        for perm in permutations(range(self.num_vertices)):
            cand = self.relabel(perm)
            if best is None or cand._key() < best._key():
                best = cand
        return best

    def stratum_id(self) -> str:
        """Deterministic text id of the canonical form."""
        c = self.canonical
        parts = [
            "g" + ",".join(map(str, c.genera)),
            "L" + ",".join(f"{v}^{a}" for v, a in zip(c.legs, c.leg_psi)),
            "E" + ",".join(f"{u}^{a}-{v}^{b}" for u, a, v, b in c.edges),
            "K" + ";".join(",".join(map(str, k)) for k in c.kappa),
        ]
        return "|".join(parts)

    def to_json(self):
        c = self.canonical
        return {
            "id": c.stratum_id(),
            "genera": list(c.genera),
            "legs": [[v, a] for v, a in zip(c.legs, c.leg_psi)],
            "edges": [list(e) for e in c.edges],
            "kappa": [list(k) for k in c.kappa],
        }

    def with_leg_psi(self, extra):
        """Multiply by prod psi_i^extra[i]."""
        return DecoratedStratum(self.genera, self.legs, tuple(a + b for a, b in zip(self.leg_psi, extra)), self.edges, self.kappa)

    def permute_markings(self, sigma):
        """Marking i becomes marking sigma[i] (0-based)."""
        legs = [0] * self.n
        psi = [0] * self.n
        for i, s in enumerate(sigma):
            legs[s] = self.legs[i]
            psi[s] = self.leg_psi[i]
        return DecoratedStratum(self.genera, tuple(legs), tuple(psi), self.edges, self.kappa)


class StrataElement:
    """Finite sum of decorated strata of M_{g,n}-bar with coefficients in any ring."""

    def __init__(self, g, n, terms=None):
        self.g, self.n = g, n
        self.terms = {}
        for s, c in (terms or {}).items():
            self.add_term(s, c)

    def add_term(self, stratum: DecoratedStratum, coeff):
        if coeff == 0 or stratum.vanishes():
            return
        key = stratum.canonical
        new = self.terms[key] + coeff if key in self.terms else coeff
        if new == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def __add__(self, other):
        out = StrataElement(self.g, self.n, self.terms)
        for s, c in other.terms.items():
            out.add_term(s, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return StrataElement(self.g, self.n, {s: c * x for s, x in self.terms.items()})

    def map_coefficients(self, f):
        return StrataElement(self.g, self.n, {s: f(x) for s, x in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def codim_part(self, d):
        return StrataElement(self.g, self.n, {s: c for s, c in self.terms.items() if s.codim == d})

    def truncate(self, codim_max):
        return StrataElement(self.g, self.n, {s: c for s, c in self.terms.items() if s.codim <= codim_max})

    def permute_markings(self, sigma):
        return StrataElement(self.g, self.n, {s.permute_markings(sigma): c for s, c in self.terms.items()})

    def by_id(self):
        return {s.stratum_id(): c for s, c in self.terms.items()}

    def __eq__(self, other):
        if not isinstance(other, StrataElement):
            return NotImplemented
        return (self - other).is_zero()

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].codim, kv[0].stratum_id()))

    def to_json(self):
        return {
            "g": self.g,
            "n": self.n,
            "terms": [{"stratum": s.to_json(), "codim": s.codim, "coefficient": str(c)} for s, c in self.sorted_terms()],
        }

    def __repr__(self):
        body = " + ".join(f"({c})*[{s.stratum_id()}]" for s, c in self.sorted_terms())
        return f"StrataElement(g={self.g}, n={self.n}: {body or '0'})"


# forgetting psi-weighted points ---------------------------------------------------


def forget_last_leg(stratum: DecoratedStratum):
    """Pushforward forgetting the last marking, which must carry psi^a with a >= 1.

    At the carrying vertex kappa_b = pi^* kappa_b + psi^b and psi_h = pi^* psi_h
    off a divisor killed by psi of the forgotten point, so
    pi_*(psi^a prod kappa_b) = sum over subsets S of kappa_{a-1+|S|} prod_{b not in S} kappa_b,
    with kappa_0 = 2g - 2 + (valence after forgetting).
    Returns a list of (coefficient, stratum).
    """
    p = stratum.n - 1
    a = stratum.leg_psi[p]
    if a < 1:
        raise ValueError("only legs with a positive psi power are forgotten")
    w = stratum.legs[p]
    if stratum.genera[w] == 0 and stratum.graph.valence(w) == 3:
        return []
    ks = stratum.kappa[w]
    valence_after = stratum.graph.valence(w) - 1
    out = []
    for size in range(len(ks) + 1):
        for chosen in combinations(range(len(ks)), size):
            idx = a - 1 + sum(ks[i] for i in chosen)
            rest = [ks[i] for i in range(len(ks)) if i not in chosen]
            coeff = 1
            if idx == 0:
                coeff = 2 * stratum.genera[w] - 2 + valence_after
            else:
                rest.append(idx)
            if coeff == 0:
                continue
            kappa = list(stratum.kappa)
            kappa[w] = tuple(sorted(rest))
            out.append((coeff, DecoratedStratum(stratum.genera, stratum.legs[:p], stratum.leg_psi[:p], stratum.edges, tuple(kappa))))
    return out


def pushforward_forgotten(element: StrataElement, k: int) -> StrataElement:
    """Forget the last k markings one at a time; each must carry psi^a with a >= 2."""
    for s in element.terms:
        if any(a < 2 for a in s.leg_psi[s.n - k :]):
            raise ValueError("forgotten legs need a psi exponent of at least 2")
    cur = element
    for _ in range(k):
        nxt = StrataElement(cur.g, cur.n - 1)
        for s, c in cur.terms.items():
            for coeff, new in forget_last_leg(s):
                nxt.add_term(new, c * coeff)
        cur = nxt
    return cur


# gluing ---------------------------------------------------------------------------


def vertex_slots(graph: StableGraph, v):
    """Slots at v in the order used for vertex classes: legs by marking, then half-edges."""
    return [("leg", i) for i, w in enumerate(graph.legs) if w == v] + [("half", h) for h in graph.half_edges_at(v)]


def glue(graph: StableGraph, pieces) -> DecoratedStratum:
    """Substitute pieces[v] (a decorated stratum whose legs are the slots of v) into graph."""
    genera, kappa, edges = [], [], []
    offset = []
    where = {}
    for v, piece in enumerate(pieces):
        off = len(genera)
        offset.append(off)
        genera.extend(piece.genera)
        kappa.extend(piece.kappa)
        for u, a, w, b in piece.edges:
            edges.append((u + off, a, w + off, b))
        for slot, vert, psi in zip(vertex_slots(graph, v), piece.legs, piece.leg_psi):
            where[slot] = (vert + off, psi)
    legs = tuple(where[("leg", i)][0] for i in range(graph.n))
    leg_psi = tuple(where[("leg", i)][1] for i in range(graph.n))
    for e in range(len(graph.edges)):
        x, y = sorted((where[("half", (e, 0))], where[("half", (e, 1))]))
        edges.append(x + y)
    return DecoratedStratum(tuple(genera), legs, leg_psi, tuple(sorted(edges)), tuple(kappa))
