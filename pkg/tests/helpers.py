"""Independent oracles shared by the test modules.

Nothing here goes through the partition-refinement or bitmask code paths.
"""

import random

from afaset import modal
from afaset.hyperset import members
from afaset.system import build_system


def sat_by_members(a, f, memo=None):
    """Satisfaction straight from the three clauses, recursing into members."""
    memo = {} if memo is None else memo
    key = (id(a), id(f))
    if key in memo:
        return memo[key][1]
    if isinstance(f, modal.Neg):
        val = not sat_by_members(a, f.body, memo)
    elif isinstance(f, modal.And):
        val = all(sat_by_members(a, p, memo) for p in f.parts)
    elif isinstance(f, modal.Dia):
        val = any(sat_by_members(b, f.body, memo) for b in members(a))
    elif isinstance(f, modal.Top):
        val = True
    elif isinstance(f, modal.Bot):
        val = False
    elif isinstance(f, modal.Or):
        val = any(sat_by_members(a, p, memo) for p in f.parts)
    elif isinstance(f, modal.Box):
        val = all(sat_by_members(b, f.body, memo) for b in members(a))
    elif isinstance(f, modal.Delta):
        ms = members(a)
        val = all(any(sat_by_members(b, p, memo) for b in ms) for p in f.parts) and all(
            any(sat_by_members(b, p, memo) for p in f.parts) for b in ms
        )
    else:
        raise TypeError(f)
    memo[key] = (a, val)  # keep `a` alive so its id stays unique
    return val


def unfold_frozen(a, k):
    """a^0 = {}, a^(k+1) = {b^k : b in a}, as nested frozensets."""
    if k == 0:
        return frozenset()
    return frozenset(unfold_frozen(b, k - 1) for b in members(a))


def random_formula(rng, depth):
    if depth == 0 or rng.random() < 0.2:
        return rng.choice([modal.Top(), modal.Bot()])
    kind = rng.choice(["neg", "and", "dia", "or", "box", "delta", "dia"])
    if kind == "neg":
        return modal.Neg(random_formula(rng, depth - 1))
    if kind == "dia":
        return modal.Dia(random_formula(rng, depth - 1))
    if kind == "box":
        return modal.Box(random_formula(rng, depth - 1))
    parts = tuple(random_formula(rng, depth - 1) for _ in range(rng.randint(0, 3)))
    return {"and": modal.And, "or": modal.Or, "delta": modal.Delta}[kind](parts)


def isomorphic_under(s, t, rename):
    """Is `rename` (node of s -> node of t) an isomorphism of pointed systems?"""
    if len(s) != len(t) or rename(s.root) != t.root:
        return False
    return {(rename(x), rename(y)) for x, y in s.edges} == set(t.edges)


def relabel(s, rng):
    """The same system with shuffled, string node ids."""
    ids = [f"v{i}" for i in range(len(s))]
    rng.shuffle(ids)
    name = dict(zip(s.nodes, ids))
    nodes = list(s.nodes)
    rng.shuffle(nodes)
    edges = [(name[x], name[y]) for x, y in s.edges]
    rng.shuffle(edges)
    return build_system([name[x] for x in nodes], edges, name[s.root])


def seeded(seed):
    return random.Random(seed)
