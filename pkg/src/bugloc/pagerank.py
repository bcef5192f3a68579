"""Term weighting over a TermGraph.

Synchronous iteration of

    TW(v) = (1 - phi) + phi * sum(TW(u) / outdeg(u) for u linking to v)

from a flat initial value. Nodes without outgoing links contribute nothing;
nodes without incoming links settle at ``1 - phi``. Iteration stops when the
largest per-node change drops below ``epsilon`` or after ``max_iter`` rounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphError, ParameterError
from .graphs import TermGraph


@dataclass(frozen=True)
class RankedTerms:
    entries: tuple[tuple[str, float], ...]  # (term, weight), weight descending
    iterations_used: int
    converged: bool

    def terms(self) -> list[str]:
        return [term for term, _ in self.entries]

    def weight(self, term: str) -> float:
        for t, w in self.entries:
            if t == term:
                return w
        raise KeyError(term)


def pagerank(
    graph: TermGraph,
    phi: float = 0.85,
    init: float = 0.25,
    epsilon: float = 0.0001,
    max_iter: int = 100,
) -> RankedTerms:
    """Rank the graph's terms by converged weight.

    Updates are synchronous (all nodes advance together per round), in-link
    contributions are summed in sorted node order, and final ties break
    lexicographically, so the result is independent of node insertion order.
    """
    if not graph.nodes:
        raise GraphError("pagerank requires a non-empty graph")
    if not 0.0 <= phi <= 1.0:
        raise ParameterError(f"damping factor must be within [0, 1], got {phi}")
    if epsilon <= 0.0:
        raise ParameterError(f"epsilon must be positive, got {epsilon}")
    if max_iter < 1:
        raise ParameterError(f"max_iter must be >= 1, got {max_iter}")

    nodes = sorted(graph.nodes)
    out_degree = {n: 0 for n in nodes}
    incoming: dict[str, list[str]] = {n: [] for n in nodes}
    for a, b in sorted(graph.edges):
        out_degree[a] += 1
        incoming[b].append(a)

    weights = {n: float(init) for n in nodes}
    iterations = 0
    converged = False
    while iterations < max_iter:
        iterations += 1
        updated = {
            n: (1.0 - phi)
            + phi * sum(weights[u] / out_degree[u] for u in incoming[n])
            for n in nodes
        }
        delta = max(abs(updated[n] - weights[n]) for n in nodes)
        weights = updated
        if delta < epsilon:
            converged = True
            break

    entries = tuple(
        (term, weights[term])
        for term in sorted(nodes, key=lambda n: (-weights[n], n))
    )
    return RankedTerms(entries=entries, iterations_used=iterations, converged=converged)


def top_k(ranked: RankedTerms, k: int) -> list[str]:
    """First ``min(k, len(entries))`` terms in rank order."""
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    return [term for term, _ in ranked.entries[:k]]
