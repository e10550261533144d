"""Degree-sum conditions tied to Hamiltonicity of strong digraphs.

The Meyniel-style condition with slack k requires d(x) + d(y) >= 2p - 2 + k
for every pair of non-adjacent vertices.  k = 1 is the hypothesis of
Meyniel's theorem (which forces a Hamiltonian cycle in a strong digraph);
k = 0 is the borderline case whose non-Hamiltonian instances this library
decomposes; k = -1 forces a Hamiltonian path.
"""

from __future__ import annotations

from .digraph import Digraph


def degrees(d: Digraph) -> tuple[int, ...]:
    return tuple(
        d.out_masks[v].bit_count() + d.in_masks[v].bit_count() for v in range(d.p)
    )


def meyniel_violation(d: Digraph, k: int) -> tuple[int, int] | None:
    """Worst offending pair for the slack-k degree-sum condition.

    Returns the non-adjacent pair {x, y} minimizing d(x) + d(y) if that
    minimum is below 2p - 2 + k, else None.  Ties go to the
    lexicographically first pair.
    """
    p = d.p
    need = 2 * p - 2 + k
    deg = degrees(d)
    worst: tuple[int, int] | None = None
    worst_sum = need
    for x in range(p):
        adj = d.out_masks[x] | d.in_masks[x]
        for y in range(x + 1, p):
            if adj >> y & 1:
                continue
            s = deg[x] + deg[y]
            if s < worst_sum:
                worst_sum = s
                worst = (x, y)
    return worst


def satisfies_meyniel(d: Digraph, k: int) -> bool:
    """True iff every non-adjacent pair has degree sum >= 2p - 2 + k."""
    return meyniel_violation(d, k) is None


def satisfies_ghouila_houri(d: Digraph) -> bool:
    """True iff every vertex has degree >= p (Ghouila-Houri's condition)."""
    return all(deg >= d.p for deg in degrees(d))
