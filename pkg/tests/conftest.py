"""Shared fixtures and generators.

Random objects are built from seeded random.Random instances so every
test run sees identical inputs; hypothesis supplies the shrinking layer
on top for the property tests.
"""

from __future__ import annotations

import random

import numpy as np
from hypothesis import HealthCheck, settings

from orderdim.poset import (
    FinitePoset,
    LinearOrder,
    OrderedStructure,
    RealizerTuple,
    validate_poset,
)

settings.register_profile(
    "fast",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fast")


def transitive_close(mat: np.ndarray) -> np.ndarray:
    out = mat.copy()
    for k in range(out.shape[0]):
        out |= np.outer(out[:, k], out[k, :])
    return out


def random_poset(rng: random.Random, m: int) -> FinitePoset:
    """Random m-element poset: random edges along a random permutation, closed."""
    labels = [f"x{i}" for i in range(m)]
    perm = list(range(m))
    rng.shuffle(perm)
    density = rng.uniform(0.1, 0.6)
    mat = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(i + 1, m):
            if rng.random() < density:
                mat[perm[i], perm[j]] = True
    return validate_poset(labels, transitive_close(mat))


def random_structure(rng: random.Random, m: int, n: int) -> OrderedStructure:
    """Random ordered structure: n random orders, poset = their intersection."""
    labels = [f"s{i}" for i in range(m)]
    orders = []
    for _ in range(n):
        seq = labels[:]
        rng.shuffle(seq)
        orders.append(LinearOrder(seq))
    return OrderedStructure.from_orders(orders)


def all_posets_on(labels: tuple[str, ...]) -> list[FinitePoset]:
    """Every strict partial order on the given labels (labeled, exhaustive)."""
    m = len(labels)
    cells = [(i, j) for i in range(m) for j in range(m) if i != j]
    out = []
    for bits in range(1 << len(cells)):
        mat = np.zeros((m, m), dtype=bool)
        for c, (i, j) in enumerate(cells):
            if (bits >> c) & 1:
                mat[i, j] = True
        if (mat & mat.T).any():
            continue
        closed = transitive_close(mat)
        if not np.array_equal(closed, mat):
            continue
        out.append(FinitePoset(labels, mat))
    return out


def naive_is_realizer(p: FinitePoset, t: RealizerTuple) -> bool:
    """Pairwise biconditional check, plain loops, no matrix shortcuts."""
    for a in p.elements:
        for b in p.elements:
            if a == b:
                continue
            in_all = all(o.rank[a] < o.rank[b] for o in t.orders)
            if in_all != p.less(a, b):
                return False
    return True
