"""Exact path and cycle searches.

Everything here is deterministic depth-first backtracking over adjacency
bitmasks: roots and neighbors are explored in ascending label order, so
every returned witness is a pure function of the input digraph.  Searches
prune on reachability inside the unvisited vertex set, which keeps them
comfortable up to p ~ 12 for full cycle spectra and p ~ 16 for single
Hamiltonicity queries.  No search ever reports a false negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .digraph import Digraph, bits

CycleSpectrum = frozenset[int]


@dataclass(frozen=True)
class PathWitness:
    """A directed path given as its vertex sequence (length = arcs = len-1)."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if not self.vertices:
            raise ValueError("a path has at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("path vertices must be distinct")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def is_valid_in(self, d: Digraph) -> bool:
        vs = self.vertices
        if any(not 0 <= v < d.p for v in vs):
            return False
        return all(d.out_masks[u] >> v & 1 for u, v in zip(vs, vs[1:]))


@dataclass(frozen=True)
class CycleWitness:
    """A directed cycle given as its vertex sequence (length = len >= 2)."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 2:
            raise ValueError("a cycle has at least two vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("cycle vertices must be distinct")

    @property
    def length(self) -> int:
        return len(self.vertices)

    def is_valid_in(self, d: Digraph) -> bool:
        vs = self.vertices
        if any(not 0 <= v < d.p for v in vs):
            return False
        arcs = list(zip(vs, vs[1:])) + [(vs[-1], vs[0])]
        return all(d.out_masks[u] >> v & 1 for u, v in arcs)


def _reach_from(out: Sequence[int], v: int, within: int) -> int:
    """Vertices of ``within`` reachable from v by arcs staying in ``within``."""
    frontier = out[v] & within
    reached = frontier
    while frontier:
        nxt = 0
        for w in bits(frontier):
            nxt |= out[w]
        frontier = nxt & within & ~reached
        reached |= frontier
    return reached


def hamiltonian_cycle(d: Digraph) -> CycleWitness | None:
    """A cycle through all p vertices, or None.  Exact backtracking search."""
    p = d.p
    if p < 2:
        return None
    out, inc = d.out_masks, d.in_masks
    full = (1 << p) - 1
    path = [0]

    def extend(v: int, visited: int) -> bool:
        if visited == full:
            return bool(out[v] & 1)
        rem = full & ~visited
        # every unvisited vertex still needs an entry (from rem or v) and
        # an exit (into rem or back to the root 0)
        r = rem
        while r:
            low = r & -r
            r ^= low
            w = low.bit_length() - 1
            others = rem ^ low
            if not inc[w] & (others | 1 << v):
                return False
            if not out[w] & (others | 1):
                return False
        cand = out[v] & rem
        while cand:
            low = cand & -cand
            cand ^= low
            u = low.bit_length() - 1
            path.append(u)
            if extend(u, visited | low):
                return True
            path.pop()
        return False

    return CycleWitness(tuple(path)) if extend(0, 1) else None


def hamiltonian_path(d: Digraph) -> PathWitness | None:
    """A path through all p vertices, or None.  Exact backtracking search."""
    p = d.p
    if p == 1:
        return PathWitness((0,))
    out, inc = d.out_masks, d.in_masks
    full = (1 << p) - 1
    path: list[int] = []

    def extend(v: int, visited: int) -> bool:
        if visited == full:
            return True
        rem = full & ~visited
        dead_exits = 0
        r = rem
        while r:
            low = r & -r
            r ^= low
            w = low.bit_length() - 1
            others = rem ^ low
            if not inc[w] & (others | 1 << v):
                return False
            if not out[w] & others:
                dead_exits += 1
                if dead_exits > 1:  # at most the final endpoint may be exitless
                    return False
        cand = out[v] & rem
        while cand:
            low = cand & -cand
            cand ^= low
            u = low.bit_length() - 1
            path.append(u)
            if extend(u, visited | low):
                return True
            path.pop()
        return False

    for start in range(p):
        path = [start]
        if extend(start, 1 << start):
            return PathWitness(tuple(path))
    return None


def longest_cycle(d: Digraph) -> tuple[int, CycleWitness] | None:
    """Maximum cycle length with one witness; None iff the digraph is acyclic.

    Deterministic: cycles are rooted at their minimum vertex, roots and
    neighbors are explored in ascending order, and the first cycle of
    record length is kept.
    """
    p = d.p
    out = d.out_masks
    full = (1 << p) - 1
    best_len = 1
    best: tuple[int, ...] | None = None
    path: list[int] = []

    for root in range(p):
        if p - root <= best_len:
            break
        root_bit = 1 << root
        allowed = full & ~(root_bit - 1)  # cycles are rooted at their minimum
        path = [root]

        def extend(v: int, visited: int) -> None:
            nonlocal best_len, best
            if out[v] & root_bit and len(path) > best_len:
                best_len = len(path)
                best = tuple(path)
            avail = allowed & ~visited
            if not avail:
                return
            reach = _reach_from(out, v, avail | root_bit)
            if not reach & root_bit:
                return
            if len(path) + (reach & avail).bit_count() <= best_len:
                return
            cand = out[v] & avail
            while cand:
                low = cand & -cand
                cand ^= low
                path.append(low.bit_length() - 1)
                extend(low.bit_length() - 1, visited | low)
                path.pop()

        extend(root, root_bit)

    if best is None:
        return None
    return best_len, CycleWitness(best)


def cycle_of_length(d: Digraph, r: int) -> CycleWitness | None:
    """A cycle of length exactly r, or None.  Certifies spectrum membership."""
    if r < 2:
        raise ValueError(f"cycle length must be >= 2, got {r}")
    p = d.p
    if r > p:
        return None
    out = d.out_masks
    full = (1 << p) - 1

    for root in range(p - r + 1):
        root_bit = 1 << root
        allowed = full & ~(root_bit - 1)
        path = [root]

        def extend(v: int, visited: int) -> bool:
            if len(path) == r:
                return bool(out[v] & root_bit)
            avail = allowed & ~visited
            reach = _reach_from(out, v, avail | root_bit)
            if not reach & root_bit:
                return False
            if (reach & avail).bit_count() < r - len(path):
                return False
            cand = out[v] & avail
            while cand:
                low = cand & -cand
                cand ^= low
                path.append(low.bit_length() - 1)
                if extend(low.bit_length() - 1, visited | low):
                    return True
                path.pop()
            return False

        if extend(root, root_bit):
            return CycleWitness(tuple(path))
    return None


def all_cycles_of_length(d: Digraph, r: int) -> list[CycleWitness]:
    """Every cycle of length exactly r, one canonical rotation each.

    Witnesses start at their minimum vertex; the list is in deterministic
    search order.  Intended for desk-scale digraphs.
    """
    if r < 2:
        raise ValueError(f"cycle length must be >= 2, got {r}")
    p = d.p
    out = d.out_masks
    full = (1 << p) - 1
    found: list[CycleWitness] = []

    for root in range(max(0, p - r + 1)):
        root_bit = 1 << root
        allowed = full & ~(root_bit - 1)
        path = [root]

        def extend(v: int, visited: int) -> None:
            if len(path) == r:
                if out[v] & root_bit:
                    found.append(CycleWitness(tuple(path)))
                return
            avail = allowed & ~visited
            reach = _reach_from(out, v, avail | root_bit)
            if not reach & root_bit:
                return
            if (reach & avail).bit_count() < r - len(path):
                return
            cand = out[v] & avail
            while cand:
                low = cand & -cand
                cand ^= low
                path.append(low.bit_length() - 1)
                extend(low.bit_length() - 1, visited | low)
                path.pop()

        extend(root, root_bit)
    return found


def cycle_spectrum(d: Digraph) -> CycleSpectrum:
    """The exact set of cycle lengths {r in [2, p] : some C_r exists}."""
    return frozenset(r for r in range(2, d.p + 1) if cycle_of_length(d, r) is not None)


def longest_path_between(d: Digraph, s: int, t: int) -> PathWitness | None:
    """A maximum-vertex path from s to t, or None if t is unreachable."""
    d.degree(s)  # validates both labels
    d.degree(t)
    if s == t:
        raise ValueError("endpoints of a path must be distinct")
    p = d.p
    out = d.out_masks
    full = (1 << p) - 1
    t_bit = 1 << t
    best: tuple[int, ...] | None = None
    best_size = 0
    path = [s]

    def extend(v: int, visited: int) -> None:
        nonlocal best, best_size
        if v == t:
            if len(path) > best_size:
                best_size = len(path)
                best = tuple(path)
            return
        avail = full & ~visited
        reach = _reach_from(out, v, avail)
        if not reach & t_bit:
            return
        if len(path) + (reach & avail).bit_count() <= best_size:
            return
        cand = out[v] & avail
        while cand:
            low = cand & -cand
            cand ^= low
            path.append(low.bit_length() - 1)
            extend(low.bit_length() - 1, visited | low)
            path.pop()

    extend(s, 1 << s)
    return PathWitness(best) if best is not None else None
