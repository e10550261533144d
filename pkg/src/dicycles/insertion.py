"""Path-insertion procedures and their structural consequences.

The basic move: a vertex x off a path P = x_1..x_m can be *inserted* when
some consecutive pair x_i, x_(i+1) satisfies x_i -> x -> x_(i+1), giving a
longer path with the same endpoints.  Three classical degree hypotheses
each guarantee such a pair exists:

  (1) d(x, V(P)) >= m + 2;
  (2) d(x, V(P)) >= m + 1 and (x x_1 or x_m x is missing);
  (3) d(x, V(P)) >= m and both x x_1 and x_m x are missing.

Built on the same move are: the construction of cycles of every length
2..m+1 through a vertex with d(x, cycle) >= m + 1, and the neighborhood
split of an uninsertable vertex along a longest fixed-endpoint path (its
out-neighbors on P form a prefix and its in-neighbors the complementary
suffix, overlapping in one vertex).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import CycleWitness, PathWitness, _reach_from, longest_path_between
from .digraph import Digraph, bits
from .errors import CounterexampleError, PreconditionError


@dataclass(frozen=True)
class InsertionResult:
    """Certificate that x fits between path positions index and index+1.

    index is 0-based: the arcs path.vertices[index] -> x and
    x -> path.vertices[index+1] both exist.
    """

    index: int


def _check_off_path(d: Digraph, path: PathWitness, x: int) -> None:
    if not path.is_valid_in(d):
        raise PreconditionError(f"{path.vertices} is not a path of the digraph")
    d.degree(x)
    if x in path.vertices:
        raise PreconditionError(f"vertex {x} already lies on the path")


def find_insertion(d: Digraph, path: PathWitness, x: int) -> InsertionResult | None:
    """Smallest insertion point of x into the path, or None.

    Scans every consecutive pair, so it is its own existence oracle: a
    None return means no insertion point exists at all.
    """
    _check_off_path(d, path, x)
    vs = path.vertices
    out_x = d.out_masks[x]
    for i in range(len(vs) - 1):
        if d.out_masks[vs[i]] >> x & 1 and out_x >> vs[i + 1] & 1:
            return InsertionResult(i)
    return None


def insert_vertex(path: PathWitness, x: int, result: InsertionResult) -> PathWitness:
    vs = path.vertices
    return PathWitness(vs[: result.index + 1] + (x,) + vs[result.index + 1 :])


def insertion_hypotheses(d: Digraph, path: PathWitness, x: int) -> tuple[bool, bool, bool]:
    """Which of the three insertion hypotheses hold for (path, x).

    Returns (h1, h2, h3) as documented in the module docstring.  Any True
    entry guarantees find_insertion succeeds; the hypotheses overlap and
    all satisfied ones are reported.
    """
    _check_off_path(d, path, x)
    vs = path.vertices
    m = len(vs)
    dtw = d.degree_toward(x, vs)
    to_first = d.out_masks[x] >> vs[0] & 1
    from_last = d.out_masks[vs[-1]] >> x & 1
    h1 = dtw >= m + 2
    h2 = dtw >= m + 1 and (not to_first or not from_last)
    h3 = dtw >= m and not to_first and not from_last
    return h1, h2, h3


def cycles_through_vertex(d: Digraph, cycle: CycleWitness, x: int) -> dict[int, CycleWitness]:
    """Cycles of every length k in [2, m+1] through x, for an off-cycle
    vertex with d(x, V(C_m)) >= m + 1.

    The search is confined to V(C_m) and x, which is where the guaranteed
    cycles live.  A missing length would contradict the guarantee and
    raises CounterexampleError.
    """
    if not cycle.is_valid_in(d):
        raise PreconditionError(f"{cycle.vertices} is not a cycle of the digraph")
    d.degree(x)
    if x in cycle.vertices:
        raise PreconditionError(f"vertex {x} lies on the cycle")
    m = cycle.length
    dtw = d.degree_toward(x, cycle.vertices)
    if dtw < m + 1:
        raise PreconditionError(
            f"d(x, cycle) = {dtw} < {m + 1}; the all-lengths guarantee needs m+1"
        )

    out = d.out_masks
    allowed = d.vertex_mask(cycle.vertices)
    x_bit = 1 << x
    found: dict[int, CycleWitness] = {}
    path = [x]

    def extend(v: int, visited: int, k: int) -> bool:
        if len(path) == k:
            return bool(out[v] & x_bit)
        avail = allowed & ~visited
        reach = _reach_from(out, v, avail | x_bit)
        if not reach & x_bit:
            return False
        if (reach & avail).bit_count() < k - len(path):
            return False
        cand = out[v] & avail
        while cand:
            low = cand & -cand
            cand ^= low
            path.append(low.bit_length() - 1)
            if extend(low.bit_length() - 1, visited | low, k):
                return True
            path.pop()
        return False

    for k in range(2, m + 2):
        path = [x]
        if not extend(x, x_bit, k):
            raise CounterexampleError(
                f"no cycle of length {k} through vertex {x} despite "
                f"d(x, cycle) = {dtw} >= {m + 1}"
            )
        found[k] = CycleWitness(tuple(path))
    return found


def split_index(d: Digraph, path: PathWitness, x: int) -> int:
    """The split point l of an off-path vertex along a longest (s, t)-path.

    Hypotheses (re-checked here): path is a longest path between its own
    endpoints, the off-path induced subdigraph is strong, and every
    off-path vertex z has d(z, V(P)) = m + 1.  Then there is an l in
    [1, m] with out-neighbors of x on P exactly path[:l] and in-neighbors
    exactly path[l-1:]; that l is returned.

    A hypothesis failure raises PreconditionError (caller error); absence
    of a valid l raises CounterexampleError (would-be counterexample,
    never silently ignored).
    """
    _check_off_path(d, path, x)
    vs = path.vertices
    m = len(vs)
    off = [z for z in range(d.p) if z not in vs]
    off_mask = d.vertex_mask(off)
    if not d.is_strong_within(off_mask):
        raise PreconditionError("off-path induced subdigraph is not strong")
    for z in off:
        dtw = d.degree_toward(z, vs)
        if dtw != m + 1:
            raise PreconditionError(
                f"off-path vertex {z} has d(z, path) = {dtw}, need exactly {m + 1}"
            )
    longest = longest_path_between(d, vs[0], vs[-1])
    assert longest is not None  # path itself is one
    if len(longest.vertices) > m:
        raise PreconditionError(
            f"path is not a longest ({vs[0]}, {vs[-1]})-path: "
            f"found one on {len(longest.vertices)} vertices"
        )
    return _split_scan(d, vs, x)


def _split_scan(d: Digraph, vs: tuple[int, ...], x: int) -> int:
    path_mask = d.vertex_mask(vs)
    outs = d.out_masks[x] & path_mask
    ins = d.in_masks[x] & path_mask
    for l in range(1, len(vs) + 1):
        prefix = d.vertex_mask(vs[:l])
        suffix = d.vertex_mask(vs[l - 1 :])
        if outs == prefix and ins == suffix:
            return l
    raise CounterexampleError(
        f"neighborhood of {x} on path {vs} admits no prefix/suffix split: "
        f"out={sorted(bits(outs))}, in={sorted(bits(ins))}"
    )


def extend_path_maximally(
    d: Digraph, path: PathWitness, pool: frozenset[int] | set[int]
) -> tuple[PathWitness, frozenset[int]]:
    """Insert pool vertices into the path until none fits.

    Deterministic: each round inserts the smallest-labeled insertable pool
    vertex at its smallest insertion point.  Endpoints never change.
    Returns the extended path and the uninsertable leftover; every
    leftover vertex provably fails find_insertion against the final path.
    """
    pool = frozenset(pool)
    overlap = pool & set(path.vertices)
    if overlap:
        raise PreconditionError(f"pool overlaps the path: {sorted(overlap)}")
    remaining = set(pool)
    current = path
    while True:
        for v in sorted(remaining):
            result = find_insertion(d, current, v)
            if result is not None:
                current = insert_vertex(current, v, result)
                remaining.discard(v)
                break
        else:
            return current, frozenset(remaining)
