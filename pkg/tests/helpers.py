"""Independent oracles shared by the unit and acceptance tests.

These deliberately recompute results through a different route than the
package (dense numpy matrices, from-scratch position counting) so agreement
is meaningful.
"""

import random

import numpy as np

from bugloc.graphs import TermGraph


def dense_pagerank(graph, phi=0.85, init=0.25, epsilon=0.0001, max_iter=100):
    """Dense matrix power iteration of the same recurrence."""
    nodes = sorted(graph.nodes)
    pos = {n: i for i, n in enumerate(nodes)}
    n = len(nodes)
    out_degree = np.zeros(n)
    m = np.zeros((n, n))
    for a, b in graph.edges:
        out_degree[pos[a]] += 1
    for a, b in graph.edges:
        m[pos[b], pos[a]] = 1.0 / out_degree[pos[a]]
    w = np.full(n, float(init))
    for iteration in range(1, max_iter + 1):
        updated = (1.0 - phi) + phi * (m @ w)
        delta = np.max(np.abs(updated - w))
        w = updated
        if delta < epsilon:
            return dict(zip(nodes, w)), iteration, True
    return dict(zip(nodes, w)), max_iter, False


def random_digraph(rng: random.Random, max_nodes=20, density=(0.1, 0.5)) -> TermGraph:
    n = rng.randint(2, max_nodes)
    p = rng.uniform(*density)
    names = [f"n{i:02d}" for i in range(n)]
    edges = {
        (a, b)
        for a in names
        for b in names
        if a != b and rng.random() < p
    }
    return TermGraph(frozenset(names), frozenset(edges))


# --- brute-force metric recomputation --------------------------------------

def brute_precision_at(paths, gold, position):
    return sum(1 for p in paths[:position] if p in gold) / position


def brute_average_precision_at_k(paths, gold, k):
    total = 0.0
    for position in range(1, min(k, len(paths)) + 1):
        if paths[position - 1] in gold:
            total += brute_precision_at(paths, gold, position)
    return total / min(len(gold), k)


def brute_hit_at_k(paths, gold, k):
    for p in paths[:k]:
        if p in gold:
            return True
    return False


def brute_reciprocal_rank_at_k(paths, gold, k):
    for i in range(min(k, len(paths))):
        if paths[i] in gold:
            return 1.0 / (i + 1)
    return 0.0


def brute_effectiveness(paths, gold):
    for i, p in enumerate(paths):
        if p in gold:
            return float(i + 1)
    return float("inf")


def random_ranking_instance(rng: random.Random, max_docs=10, max_gold=5):
    doc_count = rng.randint(1, max_docs)
    docs = [f"d{i}.java" for i in range(doc_count)]
    ranking = rng.sample(docs, rng.randint(0, doc_count))
    gold_size = rng.randint(1, min(max_gold, doc_count))
    gold = frozenset(rng.sample(docs, gold_size))
    return ranking, gold
