"""Shared fixtures and independent oracles for the test suite.

The oracles recompute expected values from first principles (pairwise loops,
exhaustive subset search) and never touch the library's own partition or
distance machinery, so agreement is meaningful.
"""

from fractions import Fraction

import numpy as np

from genecluster import ExpressionMatrix


def bump_matrix(genes=300, conditions=17):
    """Flat unit profiles, each raised by 2 at a single condition.

    Discretized, every gene isolates at most two conditions, so reproducing
    the full-table partition takes at least (conditions - 1) / 2 genes: with
    17 conditions the selected gene count is always >= 8, which keeps the
    default k of 7 feasible after selection.
    """
    values = np.ones((genes, conditions))
    for i in range(genes):
        values[i, 1 + i % (conditions - 1)] += 2.0
    return ExpressionMatrix(
        tuple(f"g{i + 1:04d}" for i in range(genes)),
        tuple(f"t{j + 1:02d}" for j in range(conditions)),
        values,
    )


def random_table_values(rng, max_objects=8, max_attributes=6, categories=3):
    n_obj = int(rng.integers(2, max_objects + 1))
    n_attr = int(rng.integers(1, max_attributes + 1))
    return rng.integers(0, categories, size=(n_obj, n_attr))


def oracle_blocks(values, attrs):
    """Indiscernibility blocks by direct pairwise comparison."""
    n = len(values)
    blocks = []
    assigned = [False] * n
    for i in range(n):
        if assigned[i]:
            continue
        block = [i]
        assigned[i] = True
        for j in range(i + 1, n):
            if not assigned[j] and all(values[j][a] == values[i][a] for a in attrs):
                block.append(j)
                assigned[j] = True
        blocks.append(frozenset(block))
    return blocks


def oracle_positive_region(values, attrs, y):
    region = set()
    for block in oracle_blocks(values, attrs):
        if len({values[i][y] for i in block}) == 1:
            region |= block
    return frozenset(region)


def oracle_dependency(values, attrs, y):
    return Fraction(len(oracle_positive_region(values, attrs, y)), len(values))


def oracle_mean_dependency(values, attrs):
    n_attr = len(values[0])
    total = sum(oracle_dependency(values, attrs, y) for y in range(n_attr))
    return total / n_attr


def oracle_silhouette(points, labels):
    """Naive double-loop silhouette scores."""
    points = np.asarray(points, dtype=float)
    labels = list(labels)
    n = len(points)

    def dist(i, j):
        return float(np.sqrt(((points[i] - points[j]) ** 2).sum()))

    scores = []
    for i in range(n):
        own = [j for j in range(n) if labels[j] == labels[i] and j != i]
        if not own:
            scores.append(0.0)
            continue
        a = sum(dist(i, j) for j in own) / len(own)
        b = None
        for c in sorted(set(labels)):
            if c == labels[i]:
                continue
            members = [j for j in range(n) if labels[j] == c]
            if members:
                mean = sum(dist(i, j) for j in members) / len(members)
                if b is None or mean < b:
                    b = mean
        denom = max(a, b)
        scores.append(0.0 if denom == 0 else (b - a) / denom)
    return scores


def table_ids(values):
    n_obj, n_attr = np.asarray(values).shape
    return (
        tuple(f"o{i + 1}" for i in range(n_obj)),
        tuple(f"a{j + 1}" for j in range(n_attr)),
    )
