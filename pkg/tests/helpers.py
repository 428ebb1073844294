"""Deterministic generators shared by the test modules."""

from __future__ import annotations

import random
from itertools import product as iproduct

from treeorbits import FlagProduct, LabeledTree


def random_tree(
    rng: random.Random,
    max_vertices: int = 12,
    max_label: int = 30,
) -> LabeledTree:
    """Build a random valid labeled tree.

    Labels are valid by construction: every child label is drawn from
    1..label(parent)-1, so monotonicity never needs a retry.
    """
    root_label = rng.randint(2, max_label)
    labels = {"v0": root_label}
    edges = []
    extra = rng.randint(0, max_vertices - 1)
    for i in range(1, extra + 1):
        candidates = sorted(v for v in labels if labels[v] >= 2)
        if not candidates:
            break
        parent = rng.choice(candidates)
        name = f"v{i}"
        labels[name] = rng.randint(1, labels[parent] - 1)
        edges.append((name, parent))
    return LabeledTree(labels, edges)


def random_product(
    rng: random.Random,
    max_ambient: int = 12,
    max_factors: int = 4,
    max_steps: int = 3,
) -> FlagProduct:
    """Build a random valid product of partial flag varieties."""
    n = rng.randint(2, max_ambient)
    count = rng.randint(1, max_factors)
    factors = []
    for _ in range(count):
        size = rng.randint(1, min(max_steps, n - 1))
        factors.append(tuple(sorted(rng.sample(range(1, n), size))))
    return FlagProduct(tuple(factors), n)


def burnside_four_point_orbits(q: int) -> int:
    """Count GL(2,q)-orbits on (P^1)^4 by averaging fixed points.

    Independent of the package's orbit machinery: enumerates the full
    group and applies Burnside's lemma directly.  q must be prime.
    """

    def norm(v: tuple[int, int]) -> tuple[int, int]:
        a, b = v
        if b % q != 0:
            inv = pow(b, q - 2, q)
            return ((a * inv) % q, 1)
        inv = pow(a, q - 2, q)
        return (1, 0)

    points = sorted(
        {norm((a, b)) for a in range(q) for b in range(q) if (a, b) != (0, 0)}
    )
    total = 0
    order = 0
    for a, b, c, d in iproduct(range(q), repeat=4):
        if (a * d - b * c) % q == 0:
            continue
        order += 1
        fixed = sum(
            1
            for z in points
            if norm(((a * z[0] + b * z[1]) % q, (c * z[0] + d * z[1]) % q)) == z
        )
        total += fixed**4
    assert total % order == 0
    return total // order
