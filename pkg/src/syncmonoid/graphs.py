"""Exact computations on small undirected graphs.

Vertices are 0..n-1; adjacency is one bitmask per vertex.  Everything here
is exact and deterministic: branch-and-bound cliques, DSATUR backtracking
coloring, a CSP for graph endomorphisms, hulls, derived graphs, and a
brute-force maximality test for the endomorphism monoid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapExceeded
from .transform import Endofunction


class SimpleGraph:
    """Loopless undirected graph on {0, ..., n-1} with bitmask rows."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        rows = tuple(rows)
        if len(rows) != n:
            raise ValueError("need one adjacency row per vertex")
        for v, row in enumerate(rows):
            if row >> n:
                raise ValueError(f"row {v} has bits outside 0..{n - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
        for v in range(n):
            for w in range(v + 1, n):
                if (rows[v] >> w & 1) != (rows[w] >> v & 1):
                    raise ValueError(f"adjacency not symmetric at {{{v},{w}}}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("SimpleGraph is immutable")

    @classmethod
    def from_edges(cls, n: int, edges) -> "SimpleGraph":
        rows = [0] * n
        for v, w in edges:
            if v == w:
                raise ValueError(f"loop at vertex {v}")
            if not (0 <= v < n and 0 <= w < n):
                raise ValueError(f"edge {{{v},{w}}} out of range")
            rows[v] |= 1 << w
            rows[w] |= 1 << v
        return cls(n, rows)

    @classmethod
    def null(cls, n: int) -> "SimpleGraph":
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << v) for v in range(n)])

    @classmethod
    def single_edge(cls, n: int, v: int, w: int) -> "SimpleGraph":
        return cls.from_edges(n, [(v, w)])

    def has_edge(self, v: int, w: int) -> bool:
        return bool(self.rows[v] >> w & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            row = self.rows[v] >> (v + 1) << (v + 1)
            while row:
                w = (row & -row).bit_length() - 1
                out.append((v, w))
                row &= row - 1
        return out

    def num_edges(self) -> int:
        return sum(bin(row).count("1") for row in self.rows) // 2

    def is_null(self) -> bool:
        return not any(self.rows)

    def degree(self, v: int) -> int:
        return bin(self.rows[v]).count("1")

    def __eq__(self, other):
        return (
            isinstance(other, SimpleGraph)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"SimpleGraph({self.n}, edges={self.edges()})"


def _bits(mask: int):
    while mask:
        v = (mask & -mask).bit_length() - 1
        yield v
        mask &= mask - 1


# ---------------------------------------------------------------------------
# cliques


def _greedy_color_order(rows, candidates: int):
    """Greedy coloring of the candidate set; returns vertices with their
    color numbers (1-based), colors nondecreasing.  Used as a clique bound."""
    order = []
    bounds = []
    color = 0
    rest = candidates
    while rest:
        color += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~rows[v] & ~(1 << v)
            rest &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def clique_number(x: SimpleGraph) -> int:
    """Exact maximum-clique size (a lone vertex counts as a clique of 1)."""
    rows = x.rows
    best = 1

    def expand(size: int, candidates: int):
        nonlocal best
        order, bounds = _greedy_color_order(rows, candidates)
        cand = candidates
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            if size + 1 > best:
                best = size + 1
            nxt = cand & rows[v]
            if nxt:
                expand(size + 1, nxt)
            cand &= ~(1 << v)

    expand(0, (1 << x.n) - 1)
    return best


def max_cliques(x: SimpleGraph) -> list[frozenset[int]]:
    """All cliques of size exactly clique_number(x), sorted."""
    omega = clique_number(x)
    rows = x.rows
    found = []

    def grow(members: list[int], candidates: int):
        if len(members) == omega:
            found.append(frozenset(members))
            return
        need = omega - len(members)
        cand = candidates
        while cand:
            if bin(cand).count("1") < need:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            grow(members + [v], cand & rows[v])

    grow([], (1 << x.n) - 1)
    return sorted(found, key=sorted)


# ---------------------------------------------------------------------------
# coloring


def color_graph(x: SimpleGraph) -> tuple[int, list[int]]:
    """Chromatic number with a witness coloring (colors 0..k-1).

    Iterative deepening on k; within each k a DSATUR-ordered backtracking
    search with first-fresh-color symmetry breaking.
    """
    n = x.n
    rows = x.rows
    for k in range(1, n + 1):
        colors = [-1] * n
        forbidden = [0] * n  # bitmask of colors used by assigned neighbors

        def pick() -> int:
            best_v = -1
            best_key = (-1, -1)
            for v in range(n):
                if colors[v] < 0:
                    key = (bin(forbidden[v]).count("1"), bin(rows[v]).count("1"))
                    if key > best_key:
                        best_key = key
                        best_v = v
            return best_v

        def backtrack(assigned: int, used: int) -> bool:
            if assigned == n:
                return True
            v = pick()
            limit = min(used + 1, k)
            for c in range(limit):
                if forbidden[v] >> c & 1:
                    continue
                colors[v] = c
                touched = []
                for u in _bits(rows[v]):
                    if colors[u] < 0 and not forbidden[u] >> c & 1:
                        forbidden[u] |= 1 << c
                        touched.append(u)
                if backtrack(assigned + 1, max(used, c + 1)):
                    return True
                colors[v] = -1
                for u in touched:
                    forbidden[u] &= ~(1 << c)
            return False

        if backtrack(0, 0):
            return k, colors
    raise AssertionError("unreachable: n colors always suffice")


def chromatic_number(x: SimpleGraph) -> int:
    return color_graph(x)[0]


# ---------------------------------------------------------------------------
# endomorphisms


def is_endomorphism(x: SimpleGraph, f: Endofunction) -> bool:
    """True iff f maps every edge of x to an edge (non-edges unconstrained)."""
    if f.n != x.n:
        return False
    rows = x.rows
    imgs = f.images
    for v, w in x.edges():
        if not rows[imgs[v]] >> imgs[w] & 1:
            return False
    return True


def _merge_classes(n: int, require_merge):
    """Vertex classes after identifying a required-merge pair."""
    rep = list(range(n))
    if require_merge is not None:
        v, w = require_merge
        if v == w:
            raise ValueError("require_merge needs two distinct vertices")
        a, b = min(v, w), max(v, w)
        rep[b] = a
    return rep


def _endomorphism_csp(x: SimpleGraph, pins=None, require_merge=None):
    """Backtracking search for edge-preserving maps; yields image tuples.

    Variables are vertex classes (a merged pair is one class), ordered by
    decreasing degree; domains are bitmasks with forward checking.
    """
    n = x.n
    rows = x.rows
    rep = _merge_classes(n, require_merge)
    classes = sorted({r for r in rep})
    members = {r: [v for v in range(n) if rep[v] == r] for r in classes}

    # class-level adjacency; a class with an internal edge cannot map anywhere
    class_adj = {}
    for r in classes:
        mask = 0
        for v in members[r]:
            mask |= rows[v]
        if any(mask >> v & 1 for v in members[r]):
            return  # merging an edge would create a loop
        class_adj[r] = mask

    full = (1 << n) - 1
    domain = {r: full for r in classes}
    if pins:
        for v, target in pins.items():
            if not (0 <= v < n and 0 <= target < n):
                raise ValueError(f"pin {v}->{target} out of range")
            r = rep[v]
            domain[r] &= 1 << target
            if domain[r] == 0:
                return  # conflicting pins on a merged pair

    order = sorted(classes, key=lambda r: (-bin(class_adj[r]).count("1"), r))
    class_pos = {r: i for i, r in enumerate(order)}
    assignment = {}

    def extend(i: int, domains: dict):
        if i == len(order):
            imgs = [0] * n
            for v in range(n):
                imgs[v] = assignment[rep[v]]
            yield tuple(imgs)
            return
        r = order[i]
        for y in _bits(domains[r]):
            new_domains = domains
            ok = True
            changed = None
            for s in _bits(class_adj[r]):
                sr = rep[s]
                if class_pos[sr] > i:
                    narrowed = new_domains[sr] & rows[y]
                    if narrowed == 0:
                        ok = False
                        break
                    if narrowed != new_domains[sr]:
                        if changed is None:
                            new_domains = dict(new_domains)
                            changed = True
                        new_domains[sr] = narrowed
            if not ok:
                continue
            assignment[r] = y
            yield from extend(i + 1, new_domains)
            del assignment[r]

    yield from extend(0, domain)


def endomorphism_search(x: SimpleGraph, pins=None, require_merge=None):
    """First endomorphism compatible with the constraints, or None.

    ``pins`` maps vertices to forced images; ``require_merge=(v, w)`` demands
    the images of v and w coincide.  Deterministic: the search order is fixed,
    so "any endomorphism" is reproducible.
    """
    for imgs in _endomorphism_csp(x, pins, require_merge):
        return Endofunction(imgs)
    return None


def enumerate_endomorphisms(x: SimpleGraph, cap: int = 10**6) -> list[Endofunction]:
    """All endomorphisms of x, sorted by image table."""
    out = []
    for imgs in _endomorphism_csp(x):
        out.append(imgs)
        if len(out) > cap:
            raise CapExceeded("endomorphism enumeration exceeded cap", len(out))
    return [Endofunction(t) for t in sorted(out)]


def endomorphism_count(x: SimpleGraph, cap: int = 10**6) -> int:
    count = 0
    for _ in _endomorphism_csp(x):
        count += 1
        if count > cap:
            raise CapExceeded("endomorphism count exceeded cap", count)
    return count


# ---------------------------------------------------------------------------
# hull and derived graph


def hull(x: SimpleGraph) -> SimpleGraph:
    """Graph whose edges are the pairs no endomorphism of x can merge.

    One merge-CSP per vertex pair; End(x) itself is never enumerated.
    """
    n = x.n
    edges = []
    for v in range(n):
        for w in range(v + 1, n):
            if endomorphism_search(x, require_merge=(v, w)) is None:
                edges.append((v, w))
    return SimpleGraph.from_edges(n, edges)


def is_hull(x: SimpleGraph) -> bool:
    return hull(x) == x


def derived_graph(x: SimpleGraph) -> SimpleGraph:
    """Spanning subgraph keeping only edges inside some maximum clique."""
    keep = []
    for clique in max_cliques(x):
        verts = sorted(clique)
        for i, v in enumerate(verts):
            for w in verts[i + 1 :]:
                keep.append((v, w))
    return SimpleGraph.from_edges(x.n, keep)


# ---------------------------------------------------------------------------
# maximality of End(x) as a non-synchronizing monoid


@dataclass(frozen=True)
class MaximalityConditions:
    """The checkable sufficient conditions for End(x) to be a maximal
    non-synchronizing monoid: x is its own hull, clique and chromatic
    numbers agree, and every edge lies in a maximum clique."""

    is_hull: bool
    omega: int
    chi: int
    every_edge_in_max_clique: bool
    passes: bool


def check_maximality_conditions(x: SimpleGraph) -> MaximalityConditions:
    own_hull = is_hull(x)
    omega = clique_number(x)
    chi = chromatic_number(x)
    every_edge = derived_graph(x) == x
    passes = own_hull and omega == chi and every_edge and not x.is_null()
    return MaximalityConditions(own_hull, omega, chi, every_edge, passes)


def is_maximal_nonsynchronizing(x: SimpleGraph, cap: int = 10**6) -> bool:
    """Literal test: End(x) is non-synchronizing, and adjoining any outside
    endofunction yields a synchronizing monoid.

    Feasible for small n only (all n**n candidate maps are tried).  The pair
    reachability of End(x) is precomputed once, so each candidate costs only
    a small graph search.
    """
    n = x.n
    if x.is_null():
        return False  # End(x) is everything, and contains the constants
    endos = set()
    for imgs in _endomorphism_csp(x):
        endos.add(imgs)
        if len(endos) > cap:
            raise CapExceeded("endomorphism enumeration exceeded cap", len(endos))

    pair_index = {}
    pairs = []
    for v in range(n):
        for w in range(v + 1, n):
            pair_index[(v, w)] = len(pairs)
            pairs.append((v, w))
    merged = len(pairs)  # virtual absorbing node

    def step(imgs, p):
        a, b = imgs[pairs[p][0]], imgs[pairs[p][1]]
        if a == b:
            return merged
        return pair_index[(a, b) if a < b else (b, a)]

    # reverse one-step reachability under any element of End(x)
    rev_m = [set() for _ in range(merged + 1)]
    for imgs in endos:
        for p in range(merged):
            rev_m[step(imgs, p)].add(p)

    def collapses_all(extra_imgs) -> bool:
        rev_f = [[] for _ in range(merged + 1)]
        for p in range(merged):
            rev_f[step(extra_imgs, p)].append(p)
        reached = [False] * (merged + 1)
        reached[merged] = True
        stack = [merged]
        count = 0
        while stack:
            q = stack.pop()
            for p in itertools.chain(rev_m[q], rev_f[q]):
                if not reached[p]:
                    reached[p] = True
                    count += 1
                    stack.append(p)
        return count == merged

    for candidate in itertools.product(range(n), repeat=n):
        if candidate in endos:
            continue
        if not collapses_all(candidate):
            return False
    return True


# ---------------------------------------------------------------------------
# enumeration of small graphs


def _pair_order(n: int) -> list[tuple[int, int]]:
    return [(v, w) for v in range(n) for w in range(v + 1, n)]


def adjacency_bits(x: SimpleGraph) -> int:
    """Adjacency as an integer, pair (0,1) in the most significant bit."""
    pairs = _pair_order(x.n)
    total = len(pairs)
    value = 0
    for p, (v, w) in enumerate(pairs):
        if x.has_edge(v, w):
            value |= 1 << (total - 1 - p)
    return value


def canonical_form(x: SimpleGraph) -> int:
    """Lexicographically least adjacency bitstring over all vertex
    relabelings.  Brute force over n! permutations; meant for n <= 8."""
    n = x.n
    pairs = _pair_order(n)
    total = len(pairs)
    best = None
    for perm in itertools.permutations(range(n)):
        value = 0
        for p, (v, w) in enumerate(pairs):
            pv, pw = perm[v], perm[w]
            if x.has_edge(pv, pw):
                value |= 1 << (total - 1 - p)
        if best is None or value < best:
            best = value
    return best


def _graph_from_bits(n: int, value: int, pairs, total: int) -> SimpleGraph:
    rows = [0] * n
    for p, (v, w) in enumerate(pairs):
        if value >> (total - 1 - p) & 1:
            rows[v] |= 1 << w
            rows[w] |= 1 << v
    return SimpleGraph(n, rows)


def enumerate_graphs(n: int, canonical: bool = False):
    """All labeled graphs on n vertices in bitstring order, or one
    representative (the lex-least labeling) per isomorphism class."""
    pairs = _pair_order(n)
    total = len(pairs)
    perm_maps = None
    if canonical:
        # position of each pair slot under every nonidentity relabeling
        slot = {pair: p for p, pair in enumerate(pairs)}
        perm_maps = []
        for perm in itertools.permutations(range(n)):
            if perm == tuple(range(n)):
                continue
            mapping = []
            for v, w in pairs:
                pv, pw = perm[v], perm[w]
                mapping.append(slot[(pv, pw) if pv < pw else (pw, pv)])
            perm_maps.append(mapping)
    for value in range(1 << total):
        if canonical:
            minimal = True
            for mapping in perm_maps:
                permuted = 0
                for p in range(total):
                    if value >> (total - 1 - mapping[p]) & 1:
                        permuted |= 1 << (total - 1 - p)
                if permuted < value:
                    minimal = False
                    break
            if not minimal:
                continue
        yield _graph_from_bits(n, value, pairs, total)
