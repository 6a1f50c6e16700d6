"""Seeded random pictures for oracle tests and benchmarks."""

from __future__ import annotations

import random

from .system import System, build_system


def random_system(nodes, density, seed=0, cyclic=True, connected=True):
    """A random pointed graph on `nodes` nodes with about `density * nodes` edges.

    With `connected`, a random spanning tree from node 0 is laid down first so
    nothing is discarded as unreachable.  With `cyclic=False` every edge goes
    from a lower to a higher node number, so the result is acyclic.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = max(1, nodes)
    target = max(0, round(density * n))
    if not cyclic:
        target = min(target, n * (n - 1) // 2)
    elif target > n * n:
        target = n * n
    kids = [set() for _ in range(n)]
    m = 0
    if connected:
        for i in range(1, n):
            kids[rng.randrange(i)].add(i)
        m = n - 1
    attempts = 0
    while m < target and attempts < 20 * target + 100:
        attempts += 1
        x, y = rng.randrange(n), rng.randrange(n)
        if not cyclic:
            if x == y:
                continue
            x, y = min(x, y), max(x, y)
        if y not in kids[x]:
            kids[x].add(y)
            m += 1
    if connected:
        return System(range(n), [tuple(sorted(k)) for k in kids], 0)
    edges = [(x, y) for x in range(n) for y in kids[x]]
    return build_system(range(n), edges, 0)


def random_pool(count, max_nodes, seed=0, cyclic=None):
    """`count` random systems with 1..max_nodes nodes and mixed densities."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_nodes)
        cyc = rng.random() < 0.5 if cyclic is None else cyclic
        out.append(random_system(n, rng.uniform(0.0, 2.5), rng, cyclic=cyc, connected=rng.random() < 0.5))
    return out


def all_small_systems(n):
    """Every pointed graph on nodes 0..n-1 rooted at 0 (unreachable nodes dropped)."""
    pairs = [(x, y) for x in range(n) for y in range(n)]
    for mask in range(1 << len(pairs)):
        edges = [p for b, p in enumerate(pairs) if mask >> b & 1]
        yield build_system(range(n), edges, 0)
