"""Canonical forms, isomorphism testing and automorphism groups.

Designs are handled through their colored bipartite incidence graph: one
vertex per point, one per (distinct) block, an edge for incidence.  Points
and blocks live in separate color classes, and block classes are split by
(size, multiplicity), so repeated-block structures are covered by coloring.

Labeling uses individualization-refinement: refine to an equitable ordered
partition, branch on the smallest non-singleton cell (lowest vertex first),
and keep the leaf whose (invariant sequence, labeled adjacency) is maximal.
Automorphisms fall out whenever two explored leaves carry the same labeled
graph; they are verified by application before use and drive orbit pruning.
The canonical certificate is the canonical relabeling serialized as text;
two structures are isomorphic iff their certificates match byte for byte.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .designs import IncidenceStructure, Resolution
from .errors import WrongParameters


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _refine(adj: list[int], cells: list[list[int]], work: deque) -> list[list[int]]:
    """Equitable refinement of an ordered partition (1-dimensional WL)."""
    while work:
        smask = work.popleft()
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            buckets: dict[int, list[int]] = {}
            for v in cell:
                buckets.setdefault((adj[v] & smask).bit_count(), []).append(v)
            if len(buckets) == 1:
                out.append(cell)
            else:
                for key in sorted(buckets):
                    sub = buckets[key]
                    out.append(sub)
                    work.append(_mask(sub))
        cells = out
    return cells


class _Backjump(Exception):
    """Abandon the subtree up to the first-path node at `level`.

    Raised when a leaf turns out to be automorphism-equivalent to the first
    leaf: the whole sibling subtree then maps onto the already-explored
    first-path subtree, so nothing new (keys or generators) remains below.
    """

    def __init__(self, level: int):
        self.level = level


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class _Search:
    """One individualization-refinement run over a colored graph."""

    def __init__(self, adj: list[int], cells: list[list[int]]):
        self.adj = adj
        self.n = len(adj)
        self.first_path: list[tuple[int, ...]] = []
        self.first_key = None
        self.first_order = None
        self.first_prefix: tuple[int, ...] = ()
        self.best_path: list[tuple[int, ...]] = []
        self.best_key = None
        self.best_order = None
        self.gens: list[tuple[int, ...]] = []
        self._gen_set: set[tuple[int, ...]] = set()
        self.epoch = 0
        root = _refine(adj, cells, deque(_mask(c) for c in cells))
        try:
            self._node(root, 0, eq_first=True, improving=True, dominated=False, prefix=[])
        except _Backjump:  # pragma: no cover - a jump level is never below the root
            pass

    # -- leaf helpers ------------------------------------------------------

    def _leaf_key(self, order: list[int]) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        rows = []
        for v in order:
            m = self.adj[v]
            r = 0
            while m:
                low = m & -m
                r |= 1 << pos[low.bit_length() - 1]
                m ^= low
            rows.append(r)
        return tuple(rows)

    def _record_automorphism(self, ref_order, order) -> None:
        gamma = [0] * self.n
        for a, b in zip(order, ref_order):
            gamma[a] = b
        g = tuple(gamma)
        if g in self._gen_set or all(g[i] == i for i in range(self.n)):
            return
        adj = self.adj
        for v in range(self.n):
            m = adj[v]
            img = 0
            while m:
                low = m & -m
                img |= 1 << g[low.bit_length() - 1]
                m ^= low
            if img != adj[g[v]]:
                return
        self._gen_set.add(g)
        self.gens.append(g)
        self.epoch += 1

    # -- search ------------------------------------------------------------

    def _node(self, cells, depth, eq_first, improving, dominated, prefix) -> None:
        inv = tuple(len(c) for c in cells)
        if self.first_key is None:
            self.first_path.append(inv)
            eq_first = True
        elif eq_first:
            eq_first = depth < len(self.first_path) and self.first_path[depth] == inv
        if dominated and not eq_first:
            return

        if not dominated:
            if improving:
                del self.best_path[depth:]
                self.best_path.append(inv)
            else:
                ref = self.best_path[depth]
                if inv > ref:
                    improving = True
                    del self.best_path[depth:]
                    self.best_path.append(inv)
                    self.best_key = None
                elif inv < ref:
                    if not eq_first:
                        return
                    dominated = True

        target = -1
        size = self.n + 1
        for i, cell in enumerate(cells):
            if 1 < len(cell) < size:
                target = i
                size = len(cell)
        if target < 0:
            order = [c[0] for c in cells]
            key = self._leaf_key(order)
            if self.first_key is None:
                self.first_key = key
                self.first_order = order
                self.first_prefix = tuple(prefix)
                self.best_key = key
                self.best_order = order
                return
            collide = eq_first and key == self.first_key
            if collide:
                self._record_automorphism(self.first_order, order)
            if not dominated:
                if improving or self.best_key is None or key > self.best_key:
                    if self.best_key is not None and key == self.best_key:
                        self._record_automorphism(self.best_order, order)
                    else:
                        self.best_key = key
                        self.best_order = order
                elif key == self.best_key:
                    self._record_automorphism(self.best_order, order)
            if collide:
                level = 0
                for a, b in zip(prefix, self.first_prefix):
                    if a != b:
                        break
                    level += 1
                raise _Backjump(level)
            return

        cand = sorted(cells[target])
        processed: list[int] = []
        uf = None
        built_epoch = -1
        first_child = True
        for v in cand:
            if processed:
                if built_epoch != self.epoch:
                    uf = _UnionFind(self.n)
                    for g in self.gens:
                        if all(g[x] == x for x in prefix):
                            for a in range(self.n):
                                uf.union(a, g[a])
                    built_epoch = self.epoch
                rv = uf.find(v)
                if any(uf.find(u) == rv for u in processed):
                    continue
            child = (
                cells[:target]
                + [[v], [u for u in cells[target] if u != v]]
                + cells[target + 1 :]
            )
            child = _refine(self.adj, child, deque([1 << v]))
            prefix.append(v)
            try:
                self._node(child, depth + 1, eq_first, improving and first_child, dominated, prefix)
            except _Backjump as bj:
                if bj.level < depth:
                    raise
            finally:
                prefix.pop()
            first_child = False
            processed.append(v)


# ---------------------------------------------------------------------------
# public objects


@dataclass(frozen=True)
class CanonicalCert:
    """Canonical serialization of a structure plus the relabeling behind it."""

    digest: str
    payload: bytes
    point_order: tuple[int, ...]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CanonicalCert):
            return NotImplemented
        return self.payload == other.payload

    def __hash__(self) -> int:
        return hash(self.payload)


@dataclass
class PermGroup:
    """A permutation group on points+blocks given by verified generators."""

    degree: int
    generators: tuple[tuple[int, ...], ...]
    n_points: int
    deduplicated: bool = False
    _order: int | None = field(default=None, repr=False)

    def order(self) -> int:
        if self._order is None:
            if not self.generators:
                self._order = 1
            else:
                from sympy.combinatorics import Permutation, PermutationGroup

                perms = [Permutation(list(g), size=self.degree) for g in self.generators]
                self._order = int(PermutationGroup(perms).order())
        return self._order

    def _orbit_partition(self, lo: int, hi: int) -> list[list[int]]:
        uf = _UnionFind(self.degree)
        for g in self.generators:
            for a in range(lo, hi):
                uf.union(a, g[a])
        groups: dict[int, list[int]] = {}
        for a in range(lo, hi):
            groups.setdefault(uf.find(a), []).append(a)
        return sorted((sorted(v) for v in groups.values()), key=lambda orb: orb[0])

    def point_orbits(self) -> list[list[int]]:
        return self._orbit_partition(0, self.n_points)

    def block_orbits(self) -> list[list[int]]:
        return [
            [x - self.n_points for x in orb]
            for orb in self._orbit_partition(self.n_points, self.degree)
        ]


def orbits(group: PermGroup, domain: str) -> list[list[int]]:
    """Orbit partition on "points" or "blocks" (block vertex ids shifted back)."""
    if domain == "points":
        return group.point_orbits()
    if domain == "blocks":
        return group.block_orbits()
    raise WrongParameters(f"unknown domain {domain!r}")


def _dedupe(design: IncidenceStructure):
    counts: dict[tuple[int, ...], int] = {}
    order: list[tuple[int, ...]] = []
    for blk in design.blocks:
        if blk not in counts:
            counts[blk] = 0
            order.append(blk)
        counts[blk] += 1
    return order, [counts[blk] for blk in order]


def _graph(design: IncidenceStructure):
    """Adjacency masks + initial cells for the colored incidence graph."""
    distinct, mult = _dedupe(design)
    v = design.v
    n = v + len(distinct)
    adj = [0] * n
    for j, blk in enumerate(distinct):
        bv = v + j
        for x in blk:
            adj[x] |= 1 << bv
            adj[bv] |= 1 << x
    cells: list[list[int]] = [list(range(v))]
    by_color: dict[tuple[int, int], list[int]] = {}
    for j, blk in enumerate(distinct):
        by_color.setdefault((len(blk), mult[j]), []).append(v + j)
    for key in sorted(by_color):
        cells.append(by_color[key])
    return adj, cells, distinct, mult


@lru_cache(maxsize=128)
def _analyze(design: IncidenceStructure) -> tuple[CanonicalCert, PermGroup]:
    adj, cells, distinct, mult = _graph(design)
    search = _Search(adj, cells)
    order = search.best_order
    point_order = tuple(x for x in order if x < design.v)
    relabel = {x: i for i, x in enumerate(point_order)}
    canon = sorted(
        (tuple(sorted(relabel[x] for x in blk)), mult[j])
        for j, blk in enumerate(distinct)
    )
    lines = [f"{design.v} {len(canon)}"]
    simple_multiset = all(m == 1 for m in mult)
    for blk, m in canon:
        body = " ".join(str(x) for x in blk)
        lines.append(body if simple_multiset else f"{m}x {body}")
    payload = ("\n".join(lines) + "\n").encode()
    cert = CanonicalCert(
        digest=hashlib.sha256(payload).hexdigest(),
        payload=payload,
        point_order=point_order,
    )
    group = PermGroup(
        degree=len(adj),
        generators=tuple(search.gens),
        n_points=design.v,
        deduplicated=not simple_multiset,
    )
    return cert, group


def canonical_cert(design: IncidenceStructure) -> CanonicalCert:
    """Certificate with byte-equality exactly on isomorphic structures."""
    return _analyze(design)[0]


def are_isomorphic(d1: IncidenceStructure, d2: IncidenceStructure) -> bool:
    if d1.v != d2.v or d1.b != d2.b:
        return False
    if sorted(d1.block_sizes()) != sorted(d2.block_sizes()):
        return False
    return canonical_cert(d1) == canonical_cert(d2)


def automorphism_group(design: IncidenceStructure) -> PermGroup:
    """Aut as permutations of points and (distinct) blocks.

    For multiset inputs the block part acts on the deduplicated block list
    (the group is flagged `deduplicated`); point indices are unaffected.
    """
    return _analyze(design)[1]


def resolution_orbits(group: PermGroup, resolution_list: list[Resolution]) -> list[list[int]]:
    """Orbits of the group on a list of resolutions (by block-part action)."""
    if group.deduplicated:
        raise WrongParameters("resolution orbits need the undeduplicated block action")
    v = group.n_points
    index = {res.as_sets(): i for i, res in enumerate(resolution_list)}
    if len(index) != len(resolution_list):
        raise WrongParameters("duplicate resolutions in the list")
    uf = _UnionFind(len(resolution_list))
    for g in group.generators:
        for i, res in enumerate(resolution_list):
            image = frozenset(
                frozenset(g[v + j] - v for j in cls) for cls in res.classes
            )
            target = index.get(image)
            if target is None:
                raise WrongParameters("generator does not permute the resolution list")
            uf.union(i, target)
    groups: dict[int, list[int]] = {}
    for i in range(len(resolution_list)):
        groups.setdefault(uf.find(i), []).append(i)
    return [sorted(v) for _, v in sorted(groups.items())]
