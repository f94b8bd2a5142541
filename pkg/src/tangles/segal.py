"""Set-valued simplicial data, the Segal condition, completion into a
category presentation, and a truncated colimit computing the same thing.

A ``SimplicialData`` stores finite levels X_0 ... X_K together with all
face and degeneracy maps in that range; the simplicial identities are
checked at construction.  ``act`` evaluates the contravariant action of an
arbitrary monotone map by factoring it into faces and degeneracies.

``is_segal`` tests whether level p is exactly the set of p-chains of
composable edges.  ``complete`` builds the category presented by the
nondegenerate edges modulo the triangle relations read off level 2 (with
degenerate edges as identities), and enumerates hom-sets by congruence
closure on bounded generator words; whether the enumeration stopped
growing strictly below the budget is reported, never assumed.

``cut_fiber_product`` evaluates, for a monotone map f into [a], the
iterated fiber product of the levels over the convex pieces into which
the values of f cut [a]; the pieces agree with the outer hulls (from
:mod:`tangles.simplex`) of the one-point and unit-interval subsets of [a].
``colimit_truncated`` glues these sets over all pairs (f, anchor) with
bounded simplex sizes into zigzag classes via union-find; on inputs
satisfying the Segal condition it reproduces level p on the nose, and in
general it grows towards the completion's hom-sets as the bound rises.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .simplex import (
    ConvexSubset,
    MonotoneMap,
    SimplexObject,
    all_monotone_maps,
    compose_monotone,
)
from .words import PointedMonoid


class SimplicialError(ValueError):
    """Raised on malformed simplicial data."""


@dataclass
class SimplicialData:
    """Finite sets X_0..X_K with face and degeneracy maps."""

    levels: tuple[tuple[Hashable, ...], ...]
    faces: dict[tuple[int, int], dict]
    degeneracies: dict[tuple[int, int], dict]

    def __post_init__(self) -> None:
        if len(self.levels) < 3:
            raise SimplicialError("simplicial data must be stored at least to level 2")
        self.levels = tuple(tuple(level) for level in self.levels)
        for p in range(1, self.K + 1):
            for i in range(p + 1):
                if (p, i) not in self.faces:
                    raise SimplicialError(f"missing face map d_{i} at level {p}")
        for p in range(self.K):
            for i in range(p + 1):
                if (p, i) not in self.degeneracies:
                    raise SimplicialError(f"missing degeneracy s_{i} at level {p}")
        self._check_identities()

    @property
    def K(self) -> int:
        return len(self.levels) - 1

    def face(self, p: int, i: int, x):
        return self.faces[(p, i)][x]

    def degeneracy(self, p: int, i: int, x):
        return self.degeneracies[(p, i)][x]

    def _check_identities(self) -> None:
        for p in range(2, self.K + 1):
            for x in self.levels[p]:
                for j in range(p + 1):
                    for i in range(j):
                        a = self.face(p - 1, i, self.face(p, j, x))
                        b = self.face(p - 1, j - 1, self.face(p, i, x))
                        if a != b:
                            raise SimplicialError(
                                f"d_{i} d_{j} != d_{j-1} d_{i} at level {p} on {x!r}"
                            )
        for p in range(self.K):
            for x in self.levels[p]:
                for j in range(p + 1):
                    sx = self.degeneracy(p, j, x)
                    if sx not in self.levels[p + 1]:
                        raise SimplicialError(f"s_{j}({x!r}) missing from level {p+1}")
                    for i in range(p + 2):
                        fx = self.face(p + 1, i, sx)
                        if i == j or i == j + 1:
                            expected = x
                        elif i < j:
                            expected = self.degeneracy(p - 1, j - 1, self.face(p, i, x))
                        else:
                            expected = self.degeneracy(p - 1, j, self.face(p, i - 1, x))
                        if fx != expected:
                            raise SimplicialError(
                                f"d_{i} s_{j} identity fails at level {p} on {x!r}"
                            )

    # -- contravariant action ------------------------------------------------

    def act(self, u: MonotoneMap, x):
        """Apply the simplicial operator of u: [k] -> [m] to x in X_m,
        producing an element of X_k."""
        cache = self.__dict__.setdefault("_act_cache", {})
        key = (u.source.p, u.target.p, u.values, x)
        if key in cache:
            return cache[key]
        m = u.target.p
        image = sorted(set(u.values))
        y = x
        level = m
        for i in sorted((i for i in range(m + 1) if i not in image), reverse=True):
            y = self.face(level, i, y)
            level -= 1
        rank = {v: r for r, v in enumerate(image)}
        sigma = [rank[v] for v in u.values]
        result = self._apply_surjection(sigma, y)
        cache[key] = result
        return result

    def _apply_surjection(self, sigma: Sequence[int], y):
        k = len(sigma) - 1
        for t in range(k):
            if sigma[t] == sigma[t + 1]:
                inner = list(sigma[:t]) + list(sigma[t + 1 :])
                y = self._apply_surjection(inner, y)
                return self.degeneracy(len(inner) - 1, t, y)
        return y

    def vertex(self, p: int, x, v: int):
        """The v-th vertex of a p-simplex."""
        return self.act(MonotoneMap(SimplexObject(0), SimplexObject(p), (v,)), x)

    def edge(self, p: int, x, i: int):
        """The restriction of a p-simplex to the edge {i-1 < i}."""
        return self.act(MonotoneMap(SimplexObject(1), SimplexObject(p), (i - 1, i)), x)

    def is_degenerate_edge(self, e) -> bool:
        return e in {self.degeneracy(0, 0, v) for v in self.levels[0]}


def is_segal(X: SimplicialData, p: int) -> bool:
    """True iff the spine map X_p -> X_1 x_{X_0} ... x_{X_0} X_1 is a
    bijection."""
    if p > X.K:
        raise SimplicialError(f"level {p} not stored (K = {X.K})")
    if p <= 1:
        return True
    spines = {}
    for x in X.levels[p]:
        spine = tuple(X.edge(p, x, i) for i in range(1, p + 1))
        if spine in spines and spines[spine] != x:
            return False
        spines[spine] = x
    count = 0
    for chain in _composable_chains(X, p):
        count += 1
        if chain not in spines:
            return False
    return count == len(X.levels[p])


def _composable_chains(X: SimplicialData, p: int) -> Iterable[tuple]:
    edges_by_source: dict[Hashable, list] = {}
    for e in X.levels[1]:
        edges_by_source.setdefault(X.vertex(1, e, 0), []).append(e)

    def extend(chain: tuple, cursor) -> Iterable[tuple]:
        if len(chain) == p:
            yield chain
            return
        for e in edges_by_source.get(cursor, ()):  # matching endpoints only
            yield from extend(chain + (e,), X.vertex(1, e, 1))

    for v in X.levels[0]:
        yield from extend((), v)


# ---------------------------------------------------------------------------
# completion by generators and relations


@dataclass(frozen=True)
class CategoryPresentation:
    """Objects, generating arrows with endpoints, and relations between
    parallel composable generator words."""

    objects: tuple
    generators: tuple[tuple[Hashable, Hashable, Hashable], ...]  # (arrow, src, tgt)
    relations: tuple[tuple[tuple, tuple], ...]  # pairs of parallel words

    def endpoints(self) -> dict:
        return {g: (s, t) for g, s, t in self.generators}


@dataclass
class Completion:
    """Hom-sets of the presented category, enumerated up to a word-length
    budget by congruence closure."""

    presentation: CategoryPresentation
    budget: int
    hom_classes: dict[tuple[Hashable, Hashable], list[list[tuple]]]
    stabilized: bool

    def hom(self, x, y) -> list[list[tuple]]:
        return self.hom_classes.get((x, y), [])

    def class_count(self, x, y) -> int:
        return len(self.hom(x, y))


def presentation_of(X: SimplicialData) -> CategoryPresentation:
    """Objects X_0, arrows the nondegenerate edges, one relation per
    2-simplex (spine composite = long edge), identities from s_0."""
    objects = tuple(X.levels[0])
    identities = {X.degeneracy(0, 0, v) for v in objects}
    generators = tuple(
        (e, X.vertex(1, e, 0), X.vertex(1, e, 1))
        for e in X.levels[1]
        if e not in identities
    )
    relations = []
    seen = set()
    for sigma in X.levels[2]:
        first = X.face(2, 2, sigma)
        second = X.face(2, 0, sigma)
        long = X.face(2, 1, sigma)
        lhs = tuple(e for e in (first, second) if e not in identities)
        rhs = tuple(e for e in (long,) if e not in identities)
        if lhs == rhs:
            continue
        key = (lhs, rhs)
        if key not in seen:
            seen.add(key)
            relations.append(key)
    return CategoryPresentation(objects, generators, tuple(relations))


class _WordFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def add(self, w) -> None:
        self.parent.setdefault(w, w)

    def find(self, w):
        root = w
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[w] != root:
            self.parent[w], w = root, self.parent[w]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _enumerate_words(pres: CategoryPresentation, budget: int):
    """All composable generator words of length <= budget, keyed by
    (source, word); the empty word at x is the identity of x."""
    ends = pres.endpoints()
    by_source: dict[Hashable, list] = {}
    for g, s, _ in pres.generators:
        by_source.setdefault(s, []).append(g)
    words: dict[tuple, tuple[Hashable, Hashable]] = {}
    for x in pres.objects:
        words[(x, ())] = (x, x)
        frontier = [((), x)]
        for _ in range(budget):
            nxt = []
            for w, cursor in frontier:
                for g in by_source.get(cursor, ()):  # extend on the right
                    nw = w + (g,)
                    words[(x, nw)] = (x, ends[g][1])
                    nxt.append((nw, ends[g][1]))
            frontier = nxt
            if not frontier:
                break
    return words


def _close_words(pres: CategoryPresentation, budget: int):
    words = _enumerate_words(pres, budget)
    uf = _WordFind()
    for key in words:
        uf.add(key)
    for (x, w), _ in list(words.items()):
        for lhs, rhs in pres.relations:
            for swap in ((lhs, rhs), (rhs, lhs)):
                a, b = swap
                for pos in range(len(w) - len(a) + 1):
                    if tuple(w[pos : pos + len(a)]) == a:
                        nw = w[:pos] + b + w[pos + len(a) :]
                        if len(nw) <= budget and (x, nw) in words:
                            uf.union((x, w), (x, nw))
    groups: dict = {}
    for key, (x, t) in words.items():
        root = uf.find(key)
        groups.setdefault((x, t, root), []).append(key[1])
    hom: dict[tuple, list[list[tuple]]] = {}
    for (x, t, _), members in groups.items():
        hom.setdefault((x, t), []).append(sorted(members, key=lambda w: (len(w), repr(w))))
    for classes in hom.values():
        classes.sort(key=lambda ws: (len(ws[0]), repr(ws[0])))
    return hom


def complete(X: SimplicialData, budget: int) -> Completion:
    """Segal completion at set level: presented category with hom-sets
    enumerated by congruence closure up to the word-length budget."""
    pres = presentation_of(X)
    hom = _close_words(pres, budget)
    smaller = _close_words(pres, budget - 1) if budget > 1 else {}
    stabilized = budget > 1 and _same_class_counts(hom, smaller)
    return Completion(pres, budget, hom, stabilized)


def _same_class_counts(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    return all(len(a.get(k, [])) == len(b.get(k, [])) for k in keys)


# ---------------------------------------------------------------------------
# the cut fiber product and the truncated colimit


def pieces_of(f: MonotoneMap) -> list[ConvexSubset]:
    """The b + 2 convex pieces into which the values of f: [b] -> [a] cut
    [a]: [0, f(0)], [f(0), f(1)], ..., [f(b), a].

    Each piece equals the outer hull (along f) of any one-point subset
    strictly inside it, and of the unit intervals it contains.
    """
    a = f.target
    cuts = [0] + list(f.values) + [a.p]
    return [
        ConvexSubset(cuts[i], cuts[i + 1], a) for i in range(len(cuts) - 1)
    ]


def cut_fiber_product(C: SimplicialData, f: MonotoneMap) -> list[tuple]:
    """The iterated fiber product of C over the pieces cut by f.

    An element is a tuple of simplices, one per piece (of dimension the
    piece length), consecutive entries sharing the boundary vertex at the
    cut point.  For f the identity this recovers C at level a whenever C
    satisfies the Segal condition there.
    """
    a = f.target.p
    if a > C.K:
        raise SimplicialError(f"level {a} not stored (K = {C.K})")
    pieces = pieces_of(f)
    chains: list[tuple[tuple, Hashable]] = [((), None)]
    for piece in pieces:
        dim = piece.hi - piece.lo
        nxt = []
        for prefix, cursor in chains:
            for x in C.levels[dim]:
                if cursor is not None and C.vertex(dim, x, 0) != cursor:
                    continue
                nxt.append((prefix + (x,), C.vertex(dim, x, dim)))
        chains = nxt
    return [prefix for prefix, _ in chains]


def restrict_chain(
    C: SimplicialData,
    f: MonotoneMap,
    outer_f: MonotoneMap,
    inner_f: MonotoneMap,
    chain: tuple,
) -> tuple:
    """Push a chain for ``outer_f`` (over f's target) to a chain for
    ``inner_f`` (over f's source), restricting along f piece by piece.

    Requires that f carries each piece of ``inner_f`` into a single piece
    of ``outer_f``, which holds whenever outer_f = f o inner_f o g for
    some g (the twisted-square shape of the colimit's index category).
    """
    outer_pieces = pieces_of(outer_f)
    result = []
    for piece in pieces_of(inner_f):
        lo, hi = f(piece.lo), f(piece.hi)
        hits = [
            (idx, q)
            for idx, q in enumerate(outer_pieces)
            if q.lo <= lo and hi <= q.hi
        ]
        if not hits:
            raise SimplicialError("piece image not contained in a single piece")
        idx, q = hits[0]
        u = MonotoneMap(
            SimplexObject(piece.hi - piece.lo),
            SimplexObject(q.hi - q.lo),
            tuple(f(piece.lo + t) - q.lo for t in range(piece.hi - piece.lo + 1)),
        )
        result.append(C.act(u, chain[idx]))
    return tuple(result)


@dataclass
class TruncatedColimit:
    """Zigzag classes of the disjoint union of cut fiber products over all
    index objects with both simplex sizes bounded by N."""

    p: int
    bound: int
    classes: list[list[tuple]]  # members are (object key, chain) tags
    stabilized: bool

    def class_count(self) -> int:
        return len(self.classes)


def _colimit_tags_and_classes(C: SimplicialData, p: int, N: int):
    """Union-find pass for the truncated colimit at bound N.

    An index object is (a, phi: [b] -> [a], s: [p] -> [a]); its value is
    the cut fiber product of phi, which does not depend on the anchor s.
    Every index morphism factors as one changing only phi's source (g)
    followed by one changing the ambient simplex (f), so those two
    families generate the zigzag relation.
    """
    uf = _WordFind()
    simplex = [SimplexObject(a) for a in range(N + 1)]
    anchor_obj = SimplexObject(p)
    anchors = {a: all_monotone_maps(anchor_obj, simplex[a]) for a in range(N + 1)}
    maps_into = {
        a: [
            phi
            for b in range(N + 1)
            for phi in all_monotone_maps(simplex[b], simplex[a])
        ]
        for a in range(N + 1)
    }

    values: dict[tuple[int, tuple], list[tuple]] = {}
    for a in range(N + 1):
        for phi in maps_into[a]:
            values[(a, phi.values)] = cut_fiber_product(C, phi)
    for a in range(N + 1):
        for phi in maps_into[a]:
            for s in anchors[a]:
                key = (a, phi.values, s.values)
                for chain in values[(a, phi.values)]:
                    uf.add((key, chain))

    def union_moves(a0, phi0, a1, phi1, moved_pairs, anchor_pairs):
        for chain, moved in moved_pairs:
            for s0, s1 in anchor_pairs:
                uf.union(
                    ((a0, phi0.values, s0.values), chain),
                    ((a1, phi1.values, s1.values), moved),
                )

    # Family 1: reparametrize the source of phi (g only; ambient fixed).
    for a in range(N + 1):
        ident = MonotoneMap.identity(simplex[a])
        for phi1 in maps_into[a]:
            b1 = phi1.source.p
            for b0 in range(N + 1):
                for g in all_monotone_maps(simplex[b0], simplex[b1]):
                    phi0 = compose_monotone(g, phi1)
                    moved = [
                        (chain, restrict_chain(C, ident, phi0, phi1, chain))
                        for chain in values[(a, phi0.values)]
                    ]
                    union_moves(a, phi0, a, phi1, moved, [(s, s) for s in anchors[a]])

    # Family 2: change the ambient simplex along f (phi's source fixed).
    for a1 in range(N + 1):
        for a0 in range(N + 1):
            for f in all_monotone_maps(simplex[a1], simplex[a0]):
                anchor_pairs = [
                    (compose_monotone(s1, f), s1) for s1 in anchors[a1]
                ]
                for phi1 in maps_into[a1]:
                    phi0 = compose_monotone(phi1, f)
                    moved = [
                        (chain, restrict_chain(C, f, phi0, phi1, chain))
                        for chain in values[(a0, phi0.values)]
                    ]
                    union_moves(a0, phi0, a1, phi1, moved, anchor_pairs)

    groups: dict = {}
    for tag in list(uf.parent):
        groups.setdefault(uf.find(tag), []).append(tag)
    return list(groups.values())


def colimit_truncated(C: SimplicialData, p: int, N: int) -> TruncatedColimit:
    """Truncated colimit of the cut fiber products over the index category
    of pairs (map into [a], anchor [p] -> [a]) with a, b <= N.

    ``stabilized`` reports whether the canonical map from the bound-(N-1)
    classes to the bound-N classes is a bijection; for inputs whose true
    colimit is infinite it stays False, and that is reported honestly.
    """
    if max(p, N) > C.K:
        raise SimplicialError(f"levels up to {max(p, N)} needed, stored {C.K}")
    classes = _colimit_tags_and_classes(C, p, N)
    stabilized = False
    if N >= 1:
        smaller = _colimit_tags_and_classes(C, p, N - 1)
        small_tags = {tag for group in smaller for tag in group}
        roots = {}
        for idx, group in enumerate(classes):
            for tag in group:
                roots[tag] = idx
        images = []
        for group in smaller:
            image = {roots[tag] for tag in group if tag in roots}
            images.append(image)
        hit = set()
        injective = True
        for image in images:
            if len(image) != 1:
                injective = False
                break
            hit.update(image)
        stabilized = injective and hit == set(range(len(classes)))
    return TruncatedColimit(p, N, classes, stabilized)


# ---------------------------------------------------------------------------
# constructors for the standard inputs


def nerve_of_monoid(M: PointedMonoid, K: int = 3) -> SimplicialData:
    """The nerve of a finite monoid: level p is the set of p-tuples."""
    elements = M.elements(1)
    levels = [tuple(itertools.product(elements, repeat=p)) for p in range(K + 1)]
    faces = {}
    degeneracies = {}
    for p in range(1, K + 1):
        for i in range(p + 1):
            m = {}
            for x in levels[p]:
                if i == 0:
                    m[x] = x[1:]
                elif i == p:
                    m[x] = x[:-1]
                else:
                    m[x] = x[: i - 1] + (M.multiply(x[i - 1], x[i]),) + x[i + 1 :]
            faces[(p, i)] = m
    for p in range(K):
        for i in range(p + 1):
            degeneracies[(p, i)] = {
                x: x[:i] + (M.unit,) + x[i:] for x in levels[p]
            }
    return SimplicialData(tuple(levels), faces, degeneracies)


_POINT = ("pt",)


def pushout_of_nerves(A: PointedMonoid, B: PointedMonoid, K: int = 3) -> SimplicialData:
    """Levelwise pushout of the nerves of A and B over the point: tuples
    from one factor at each level, with the all-units tuples identified."""

    def canon(side: str, tup: tuple, monoid: PointedMonoid):
        if all(monoid.is_unit(x) for x in tup):
            return ("U", len(tup))
        return (side, tup)

    def level(p: int):
        out = [("U", p)]
        for side, monoid in (("L", A), ("R", B)):
            for tup in itertools.product(monoid.elements(1), repeat=p):
                tagged = canon(side, tup, monoid)
                if tagged[0] != "U":
                    out.append(tagged)
        return tuple(out)

    def untag(x, p: int):
        if x[0] == "U":
            return [("L", (A.unit,) * p), ("R", (B.unit,) * p)]
        return [x]

    levels = [level(p) for p in range(K + 1)]
    faces = {}
    degeneracies = {}
    nerves = {"L": A, "R": B}
    for p in range(1, K + 1):
        for i in range(p + 1):
            m = {}
            for x in levels[p]:
                side, tup = untag(x, p)[0]
                monoid = nerves[side]
                if i == 0:
                    res = tup[1:]
                elif i == p:
                    res = tup[:-1]
                else:
                    res = tup[: i - 1] + (monoid.multiply(tup[i - 1], tup[i]),) + tup[i + 1 :]
                m[x] = canon(side, res, monoid)
            faces[(p, i)] = m
    for p in range(K):
        for i in range(p + 1):
            m = {}
            for x in levels[p]:
                side, tup = untag(x, p)[0]
                monoid = nerves[side]
                m[x] = canon(side, tup[:i] + (monoid.unit,) + tup[i:], monoid)
            degeneracies[(p, i)] = m
    return SimplicialData(tuple(levels), faces, degeneracies)


def nerve_of_interval_poset(n: int, K: int = 3) -> SimplicialData:
    """The nerve of the linear poset 0 < 1 < ... < n: level p is the set
    of monotone (p+1)-tuples."""
    levels = [
        tuple(
            t
            for t in itertools.product(range(n + 1), repeat=p + 1)
            if all(a <= b for a, b in zip(t, t[1:]))
        )
        for p in range(K + 1)
    ]
    faces = {}
    degeneracies = {}
    for p in range(1, K + 1):
        for i in range(p + 1):
            faces[(p, i)] = {x: x[:i] + x[i + 1 :] for x in levels[p]}
    for p in range(K):
        for i in range(p + 1):
            degeneracies[(p, i)] = {x: x[: i + 1] + x[i:] for x in levels[p]}
    return SimplicialData(tuple(levels), faces, degeneracies)


def one_truncated(
    vertices: Sequence[Hashable],
    edges: Sequence[tuple[Hashable, Hashable, Hashable]],
    K: int = 2,
) -> SimplicialData:
    """The simplicial data of a graph (no nondegenerate simplices above
    dimension 1): edges are (name, source, target) triples, and all higher
    levels consist of degeneracies only."""
    verts = tuple(vertices)
    edge_list = [("id", v, v) for v in verts] + [tuple(e) for e in edges]

    def src(e):
        return e[1]

    def tgt(e):
        return e[2]

    # A degenerate word of an edge path: level p elements are p-tuples of
    # edges, composable, with at most one nondegenerate entry (so every
    # simplex above level 1 is a degeneracy).
    def is_identity(e):
        return e[0] == "id"

    def level(p: int):
        if p == 0:
            return verts
        out = []
        for tup in itertools.product(edge_list, repeat=p):
            if any(tgt(a) != src(b) for a, b in zip(tup, tup[1:])):
                continue
            if sum(0 if is_identity(e) else 1 for e in tup) <= (1 if p > 1 else p):
                out.append(tup)
        return tuple(out)

    levels = [level(p) for p in range(K + 1)]
    faces = {}
    degeneracies = {}
    for p in range(1, K + 1):
        for i in range(p + 1):
            m = {}
            for x in levels[p]:
                if p == 1:
                    m[x] = tgt(x[0]) if i == 0 else src(x[0])
                    continue
                if i == 0:
                    m[x] = x[1:]
                elif i == p:
                    m[x] = x[:-1]
                else:
                    a, b = x[i - 1], x[i]
                    if is_identity(a):
                        merged = b
                    elif is_identity(b):
                        merged = a
                    else:
                        raise SimplicialError("graph data cannot compose two edges")
                    m[x] = x[: i - 1] + (merged,) + x[i + 1 :]
            faces[(p, i)] = m
    for p in range(K):
        for i in range(p + 1):
            m = {}
            for x in levels[p]:
                if p == 0:
                    m[x] = (("id", x, x),)
                else:
                    v = src(x[i]) if i < p else tgt(x[-1])
                    m[x] = x[:i] + (("id", v, v),) + x[i:]
            degeneracies[(p, i)] = m
    return SimplicialData(tuple(levels), faces, degeneracies)
