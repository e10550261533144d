"""Named digraph families, recognizers, and digraph sources.

The two recognizers identify the extremal families that appear as the
only exceptions in the structure statements this library verifies:

* the cut-vertex family — two symmetric cliques of orders m-1 and p-m
  sharing a single hub vertex joined bidirectionally to everything; its
  longest cycle has length exactly m;
* the odd-order balanced complete bipartite digraph K*_{q,q+1}, whose
  cycle spectrum is exactly the even numbers up to 2q.

Recognition works by structural fingerprint, not general isomorphism:
both families force enough local structure to be pinned down directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from random import Random
from typing import Iterator, Union

from .digraph import Arc, Digraph, arc_slots, bits, from_arc_mask

ENUMERATION_CAP = 5


@dataclass(frozen=True)
class CompleteSymmetric:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"order must be positive, got {self.n}")


@dataclass(frozen=True)
class CompleteBipartiteSymmetric:
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise ValueError(f"part sizes must be positive, got ({self.p}, {self.q})")


@dataclass(frozen=True)
class TransitiveTournament:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"order must be positive, got {self.n}")


@dataclass(frozen=True)
class CutVertexFamily:
    """Symmetric cliques of orders m-1 and p-m plus a hub joined to all.

    Requires 2 <= m <= p-1 and m >= p-m+1, so that m is the length of a
    longest cycle of the generated digraph.
    """

    p: int
    m: int

    def __post_init__(self) -> None:
        if not 2 <= self.m <= self.p - 1:
            raise ValueError(f"need 2 <= m <= p-1, got (p, m) = ({self.p}, {self.m})")
        if self.m < self.p - self.m + 1:
            raise ValueError(
                f"need m >= p-m+1 so m is the longest cycle length, got ({self.p}, {self.m})"
            )


@dataclass(frozen=True)
class DirectedCycle:
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"a directed cycle needs order >= 2, got {self.n}")


FamilyTag = Union[
    CompleteSymmetric,
    CompleteBipartiteSymmetric,
    TransitiveTournament,
    CutVertexFamily,
    DirectedCycle,
]


def _symmetric_clique_arcs(members: list[int]) -> set[Arc]:
    return {(u, v) for u in members for v in members if u != v}


def generate(tag: FamilyTag) -> Digraph:
    """Build the digraph a family tag names.  Tags validate their parameters."""
    if isinstance(tag, CompleteSymmetric):
        return Digraph(tag.n, frozenset(_symmetric_clique_arcs(list(range(tag.n)))))
    if isinstance(tag, CompleteBipartiteSymmetric):
        left = range(tag.p)
        right = range(tag.p, tag.p + tag.q)
        arcs = {(u, v) for u in left for v in right}
        arcs |= {(v, u) for u in left for v in right}
        return Digraph(tag.p + tag.q, frozenset(arcs))
    if isinstance(tag, TransitiveTournament):
        return Digraph(
            tag.n, frozenset((i, j) for i in range(tag.n) for j in range(i + 1, tag.n))
        )
    if isinstance(tag, CutVertexFamily):
        big = list(range(tag.m - 1))
        small = list(range(tag.m - 1, tag.p - 1))
        hub = tag.p - 1
        arcs = _symmetric_clique_arcs(big) | _symmetric_clique_arcs(small)
        for v in big + small:
            arcs.add((hub, v))
            arcs.add((v, hub))
        return Digraph(tag.p, frozenset(arcs))
    if isinstance(tag, DirectedCycle):
        return Digraph(tag.n, frozenset((i, (i + 1) % tag.n) for i in range(tag.n)))
    raise TypeError(f"unknown family tag {tag!r}")


_TAG_GRAMMAR = (
    ("k*<n>", re.compile(r"k\*(\d+)$"), lambda g: CompleteSymmetric(int(g[0]))),
    (
        "kbip*<p>,<q>",
        re.compile(r"kbip\*(\d+),(\d+)$"),
        lambda g: CompleteBipartiteSymmetric(int(g[0]), int(g[1])),
    ),
    ("tt<n>", re.compile(r"tt(\d+)$"), lambda g: TransitiveTournament(int(g[0]))),
    (
        "cutfam<p>,<m>",
        re.compile(r"cutfam(\d+),(\d+)$"),
        lambda g: CutVertexFamily(int(g[0]), int(g[1])),
    ),
    ("cyc<n>", re.compile(r"cyc(\d+)$"), lambda g: DirectedCycle(int(g[0]))),
)


def parse_family_tag(text: str) -> FamilyTag:
    """Parse a CLI family string such as 'kbip*2,3' or 'cutfam5,3'."""
    text = text.strip()
    for _, pattern, build in _TAG_GRAMMAR:
        match = pattern.fullmatch(text)
        if match:
            return build(match.groups())
    forms = ", ".join(form for form, _, _ in _TAG_GRAMMAR)
    raise ValueError(f"unrecognized family {text!r}; expected one of: {forms}")


def format_family_tag(tag: FamilyTag) -> str:
    if isinstance(tag, CompleteSymmetric):
        return f"k*{tag.n}"
    if isinstance(tag, CompleteBipartiteSymmetric):
        return f"kbip*{tag.p},{tag.q}"
    if isinstance(tag, TransitiveTournament):
        return f"tt{tag.n}"
    if isinstance(tag, CutVertexFamily):
        return f"cutfam{tag.p},{tag.m}"
    if isinstance(tag, DirectedCycle):
        return f"cyc{tag.n}"
    raise TypeError(f"unknown family tag {tag!r}")


# -- recognizers -------------------------------------------------------------


def _is_symmetric(d: Digraph) -> bool:
    return all(d.out_masks[v] == d.in_masks[v] for v in range(d.p))


def is_cut_vertex_family(d: Digraph) -> tuple[int, int] | None:
    """Parameters (p, m) if d is isomorphic to a generated CutVertexFamily.

    Fingerprint: the digraph is symmetric, some hub vertex is joined to
    every other vertex, and deleting the hub leaves exactly two complete
    symmetric components.  m is recovered from the larger component.
    """
    p = d.p
    if p < 3 or not _is_symmetric(d):
        return None
    full = (1 << p) - 1
    for hub in range(p):
        hub_bit = 1 << hub
        if d.out_masks[hub] != full ^ hub_bit:
            continue
        rest = full ^ hub_bit
        # connected components of the symmetric remainder
        comps: list[int] = []
        todo = rest
        while todo:
            seed = todo & -todo
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= d.out_masks[v]
                frontier = nxt & rest & ~comp
                comp |= frontier
            comps.append(comp)
            todo &= ~comp
        if len(comps) != 2:
            continue
        if not all(
            d.out_masks[v] & rest == comp ^ (1 << v) for comp in comps for v in bits(comp)
        ):
            continue
        sizes = sorted(comp.bit_count() for comp in comps)
        return p, sizes[1] + 1
    return None


def is_balanced_bipartite_exception(d: Digraph) -> bool:
    """True iff d is isomorphic to K*_{q,q+1} (odd order 2q+1)."""
    p = d.p
    if p < 3 or p % 2 == 0:
        return False
    full = (1 << p) - 1
    # candidate part containing vertex 0: its non-neighbors plus itself
    part = (full ^ (d.out_masks[0] | d.in_masks[0])) | 1
    other = full ^ part
    if abs(part.bit_count() - other.bit_count()) != 1 or not other:
        return False
    for v in bits(part):
        if d.out_masks[v] != other or d.in_masks[v] != other:
            return False
    for v in bits(other):
        if d.out_masks[v] != part or d.in_masks[v] != part:
            return False
    return True


# -- digraph sources ---------------------------------------------------------


def enumerate_all(n: int) -> Iterator[Digraph]:
    """Every labeled digraph on n vertices, in ascending arc-mask order.

    Hard-capped at n <= 5: the space has 2^(n(n-1)) members and grows too
    fast to sweep beyond that.
    """
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    if n > ENUMERATION_CAP:
        raise ValueError(
            f"exhaustive enumeration is capped at n <= {ENUMERATION_CAP}: "
            f"n = {n} would mean 2^{n * (n - 1)} labeled digraphs"
        )
    for mask in range(1 << (n * (n - 1))):
        yield from_arc_mask(n, mask)


def random_digraph(n: int, arc_probability: float, seed: int) -> Digraph:
    """Seeded Erdos-Renyi-style digraph: each ordered pair appears
    independently with the given probability.

    Identical (n, arc_probability, seed) always produce the identical arc
    set: arc slots are visited in lexicographic order and the generator is
    the stdlib Mersenne Twister seeded with ``seed``.
    """
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    if not 0 <= arc_probability <= 1:
        raise ValueError(f"arc probability must lie in [0, 1], got {arc_probability}")
    rng = Random(seed)
    arcs = frozenset(
        slot for slot in arc_slots(n) if rng.random() < arc_probability
    )
    return Digraph(n, arcs)


_MASK64 = (1 << 64) - 1


def substream_seed(seed: int, index: int) -> int:
    """Derive the seed of the index-th substream (splitmix64 mixing).

    Campaigns give every sampled digraph its own substream so results do
    not depend on how the sample range is partitioned across workers.
    """
    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)
