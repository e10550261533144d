"""Loop-free simple digraphs on dense integer labels.

Vertices are always 0..p-1.  Adjacency lives in per-vertex bitmasks, so at
the scales this library targets (p <= ~16) degree and neighborhood queries
are single-word operations.  Every type here is immutable after
construction and every operation is a pure function of its inputs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import ParseError

Arc = tuple[int, int]
VertexSet = frozenset[int]


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    """Immutable digraph without loops or multiple arcs.

    ``arcs`` is a set of ordered pairs (u, v); a bidirectional connection
    between two vertices is simply both arcs.  ``out_masks[u]`` has bit v
    set iff u->v is an arc, and symmetrically for ``in_masks``.
    """

    p: int
    arcs: frozenset[Arc]
    out_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError(f"vertex count must be positive, got {self.p}")
        if not isinstance(self.arcs, frozenset):
            object.__setattr__(self, "arcs", frozenset(self.arcs))
        out = [0] * self.p
        inc = [0] * self.p
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"loop ({u}, {u}) is not allowed")
            if not (0 <= u < self.p and 0 <= v < self.p):
                raise ValueError(f"arc ({u}, {v}) out of range for p={self.p}")
            out[u] |= 1 << v
            inc[v] |= 1 << u
        object.__setattr__(self, "out_masks", tuple(out))
        object.__setattr__(self, "in_masks", tuple(inc))

    # -- basic queries ----------------------------------------------------

    def _check_vertex(self, x: int) -> None:
        if not (0 <= x < self.p):
            raise ValueError(f"vertex {x} out of range for p={self.p}")

    def vertex_mask(self, members: Iterable[int]) -> int:
        """Bitmask of a vertex subset; rejects out-of-range members."""
        mask = 0
        for v in members:
            self._check_vertex(v)
            mask |= 1 << v
        return mask

    @property
    def vertices(self) -> range:
        return range(self.p)

    def degree(self, x: int) -> int:
        """|O(x)| + |I(x)|; a bidirectional pair contributes 2."""
        self._check_vertex(x)
        return self.out_masks[x].bit_count() + self.in_masks[x].bit_count()

    def degree_toward(self, x: int, members: Iterable[int]) -> int:
        """Arcs between x and the given vertex set, counted in both directions."""
        self._check_vertex(x)
        mask = self.vertex_mask(members)
        return (self.out_masks[x] & mask).bit_count() + (self.in_masks[x] & mask).bit_count()

    def out_neighbors(self, x: int) -> VertexSet:
        self._check_vertex(x)
        return frozenset(bits(self.out_masks[x]))

    def in_neighbors(self, x: int) -> VertexSet:
        self._check_vertex(x)
        return frozenset(bits(self.in_masks[x]))

    def has_arc(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.out_masks[u] >> v & 1)

    def adjacent(self, x: int, y: int) -> bool:
        """True iff at least one of the arcs x->y, y->x exists.

        Adjacency is a relation between distinct vertices; x == y is a
        domain error, not False.
        """
        self._check_vertex(x)
        self._check_vertex(y)
        if x == y:
            raise ValueError("adjacency is only defined for distinct vertices")
        return bool((self.out_masks[x] | self.in_masks[x]) >> y & 1)

    # -- derived digraphs ---------------------------------------------------

    def induced(self, members: Iterable[int]) -> tuple["Digraph", tuple[int, ...]]:
        """Subdigraph induced by a vertex set, relabeled to 0..|A|-1.

        Returns (subdigraph, labels) where labels[new] is the original
        label; members are assigned new labels in ascending original order.
        """
        labels = tuple(sorted(set(members)))
        self.vertex_mask(labels)
        if not labels:
            raise ValueError("induced subdigraph needs at least one vertex")
        back = {old: new for new, old in enumerate(labels)}
        arcs = frozenset(
            (back[u], back[v]) for u, v in self.arcs if u in back and v in back
        )
        return Digraph(len(labels), arcs), labels

    def converse(self) -> "Digraph":
        """The digraph with every arc reversed; an involution."""
        return Digraph(self.p, frozenset((v, u) for u, v in self.arcs))

    # -- connectivity -------------------------------------------------------

    def _reaches_all(self, masks: Sequence[int], start: int, within: int) -> bool:
        reached = 1 << start
        frontier = reached
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= masks[v]
            frontier = nxt & within & ~reached
            reached |= frontier
        return reached == within

    def is_strong(self) -> bool:
        """True iff the digraph has exactly one strong component."""
        if self.p == 1:
            return True
        full = (1 << self.p) - 1
        return self._reaches_all(self.out_masks, 0, full) and self._reaches_all(
            self.in_masks, 0, full
        )

    def is_strong_within(self, within: int) -> bool:
        """Strong connectivity of the subdigraph induced by a vertex bitmask."""
        if within == 0:
            raise ValueError("empty vertex set has no connectivity")
        start = (within & -within).bit_length() - 1
        out = [self.out_masks[v] & within for v in range(self.p)]
        inc = [self.in_masks[v] & within for v in range(self.p)]
        return self._reaches_all(out, start, within) and self._reaches_all(
            inc, start, within
        )

    def is_k_strong(self, k: int) -> bool:
        """True iff removing any k-1 or fewer vertices leaves a strong digraph.

        Checked by brute-force deletion subsets; also requires p >= k+1.
        """
        if k < 1:
            raise ValueError(f"connectivity parameter must be >= 1, got {k}")
        if self.p < k + 1:
            return False
        full = (1 << self.p) - 1
        for size in range(k):
            for removed in combinations(range(self.p), size):
                within = full
                for v in removed:
                    within &= ~(1 << v)
                if not self.is_strong_within(within):
                    return False
        return True


@dataclass(frozen=True)
class ComponentOrder:
    """Strong components listed so no arc runs from a later to an earlier one.

    components[i] -> components[j] arcs may only exist for i < j.  Ties in
    the condensation's topological order are broken by smallest minimum
    vertex label, so the order is a pure function of the digraph.
    """

    components: tuple[VertexSet, ...]

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self.components)

    def __getitem__(self, i: int) -> VertexSet:
        return self.components[i]

    def component_of(self, v: int) -> int:
        for i, comp in enumerate(self.components):
            if v in comp:
                return i
        raise ValueError(f"vertex {v} is in no component")


def strong_components_ordered(d: Digraph, members: Iterable[int]) -> ComponentOrder:
    """Strong components of the subdigraph induced by ``members``.

    Components keep original vertex labels and are ordered so that arcs
    between components only run from earlier to later entries.
    """
    within = d.vertex_mask(members)
    comps: list[int] = []  # component bitmasks in Tarjan emission order
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack = 0
    stack: list[int] = []
    counter = 0

    def connect(v: int) -> None:
        nonlocal counter, on_stack
        index[v] = low[v] = counter
        counter += 1
        stack.append(v)
        on_stack |= 1 << v
        for w in bits(d.out_masks[v] & within):
            if w not in index:
                connect(w)
                low[v] = min(low[v], low[w])
            elif on_stack >> w & 1:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = 0
            while True:
                w = stack.pop()
                on_stack &= ~(1 << w)
                comp |= 1 << w
                if w == v:
                    break
            comps.append(comp)

    for v in bits(within):
        if v not in index:
            connect(v)

    # Condensation + Kahn's algorithm; the ready set is kept sorted by
    # minimum vertex label for a deterministic order.
    n = len(comps)
    comp_of = {}
    for i, comp in enumerate(comps):
        for v in bits(comp):
            comp_of[v] = i
    succs: list[set[int]] = [set() for _ in range(n)]
    indeg = [0] * n
    for u, v in d.arcs:
        if within >> u & 1 and within >> v & 1:
            cu, cv = comp_of[u], comp_of[v]
            if cu != cv and cv not in succs[cu]:
                succs[cu].add(cv)
                indeg[cv] += 1
    def min_label_key(c: int) -> int:
        return comps[c] & -comps[c]

    ready = sorted((i for i in range(n) if indeg[i] == 0), key=min_label_key)
    order: list[VertexSet] = []
    while ready:
        i = ready.pop(0)
        order.append(frozenset(bits(comps[i])))
        changed = False
        for j in succs[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
                changed = True
        if changed:
            ready.sort(key=min_label_key)
    return ComponentOrder(tuple(order))


def relabel(d: Digraph, perm: Sequence[int]) -> Digraph:
    """Apply a vertex permutation: vertex v becomes perm[v]."""
    if sorted(perm) != list(range(d.p)):
        raise ValueError("relabeling must be a permutation of 0..p-1")
    return Digraph(d.p, frozenset((perm[u], perm[v]) for u, v in d.arcs))


# -- arc-slot encoding (used by enumeration and random generation) ---------


@lru_cache(maxsize=None)
def arc_slots(n: int) -> tuple[Arc, ...]:
    """All ordered pairs (u, v), u != v, in lexicographic order."""
    return tuple((u, v) for u in range(n) for v in range(n) if u != v)


def from_arc_mask(n: int, mask: int) -> Digraph:
    """Digraph from a bitmask over the lexicographic arc slots of order n."""
    slots = arc_slots(n)
    if not 0 <= mask < 1 << len(slots):
        raise ValueError(f"arc mask {mask} out of range for n={n}")
    return Digraph(n, frozenset(slots[i] for i in bits(mask)))


def arc_mask(d: Digraph) -> int:
    """Inverse of from_arc_mask."""
    slot_index = {arc: i for i, arc in enumerate(arc_slots(d.p))}
    mask = 0
    for arc in d.arcs:
        mask |= 1 << slot_index[arc]
    return mask


# -- text format ------------------------------------------------------------


def format_digraph(d: Digraph) -> str:
    """Canonical text form: 'p <count>' then one 'u v' line per arc, sorted."""
    lines = [f"p {d.p}"]
    lines.extend(f"{u} {v}" for u, v in sorted(d.arcs))
    return "\n".join(lines) + "\n"


def _int_token(line_no: int, line: str, token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        column = line.index(token) + 1
        raise ParseError(line_no, column, f"expected an integer {what}, got {token!r}") from None


def parse_digraph(text: str) -> Digraph:
    """Parse the text format produced by format_digraph.

    Blank lines and lines starting with '#' are ignored.  Errors carry the
    offending line and column.
    """
    header: tuple[int, int] | None = None  # (line_no, p)
    arcs: set[Arc] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if parts[0] != "p" or len(parts) != 2:
                raise ParseError(line_no, 1, "expected header 'p <count>'")
            p = _int_token(line_no, raw, parts[1], "vertex count")
            if p < 1:
                raise ParseError(line_no, raw.index(parts[1]) + 1, "vertex count must be positive")
            header = (line_no, p)
            continue
        if len(parts) != 2:
            raise ParseError(line_no, 1, "expected an arc line 'u v'")
        u = _int_token(line_no, raw, parts[0], "vertex label")
        v = _int_token(line_no, raw, parts[1], "vertex label")
        p = header[1]
        if not (0 <= u < p):
            raise ParseError(line_no, raw.index(parts[0]) + 1, f"vertex {u} out of range for p={p}")
        if not (0 <= v < p):
            raise ParseError(line_no, raw.rindex(parts[1]) + 1, f"vertex {v} out of range for p={p}")
        if u == v:
            raise ParseError(line_no, 1, f"loop ({u}, {u}) is not allowed")
        arcs.add((u, v))
    if header is None:
        raise ParseError(1, 1, "expected header 'p <count>'")
    return Digraph(header[1], frozenset(arcs))


def digraph_hash(d: Digraph) -> str:
    """Short stable identifier of a labeled digraph (canonical-text SHA-256)."""
    return hashlib.sha256(format_digraph(d).encode()).hexdigest()[:16]
