"""Bisimulation on pointed systems.

Two pictures depict the same set exactly when their roots are bisimilar.
`refine_partition` is a Paige-Tarjan relational coarsest partition
(three-way splitting, smaller-half selection, shared edge counters) and runs
in O(|E| log |N|).  `naive_bisim` is the textbook fixpoint iteration and is
kept deliberately simple: it is the oracle the fast path is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotASystemMap
from .system import System


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering a node set, in a deterministic order."""

    blocks: tuple

    def block_of(self, node):
        for i, b in enumerate(self.blocks):
            if node in b:
                return i
        raise KeyError(node)

    def same_block(self, x, y):
        return self.block_of(x) == self.block_of(y)

    def as_sets(self):
        return {frozenset(b) for b in self.blocks}

    def __len__(self):
        return len(self.blocks)


def coarsest_stable(n, succ):
    """Paige-Tarjan on an index graph.  Returns a block number for every node.

    Block numbers come out in order of first appearance over 0..n-1.
    """
    if n == 0:
        return []
    src = []
    in_edges = [[] for _ in range(n)]
    for x in range(n):
        for y in succ[x]:
            in_edges[y].append(len(src))
            src.append(x)

    # Initial partition: nodes with children vs childless; stable w.r.t. the
    # single compound block holding all nodes.
    block_of = [0 if succ[x] else 1 for x in range(n)]
    members = [set(), set()]
    for x in range(n):
        members[block_of[x]].add(x)
    if not members[1]:
        members.pop()
    elif not members[0]:
        members[0] = members.pop()
        block_of = [0] * n

    # Compound blocks are lists of partition-block ids (lists, because
    # repeatedly iterating a set that had many deletions is slow).
    xmembers = [list(range(len(members)))]
    cap = [len(m) for m in members]
    x_of = [0] * len(members)
    compound = [0] if len(members) > 1 else []

    # count(x, S) records, shared by every edge from x into compound block S.
    out_rec = [[len(succ[x])] for x in range(n)]
    edge_rec = [out_rec[x] for x in src]

    while compound:
        s = compound.pop()
        if len(xmembers[s]) < 2:
            continue
        lst = xmembers[s]
        d1, d2 = lst[-1], lst[-2]
        if len(members[d1]) <= len(members[d2]):
            b = d1
        else:
            b = d2
            lst[-2] = d1
        lst.pop()
        x_of[b] = len(xmembers)
        xmembers.append([b])
        if len(xmembers[s]) >= 2:
            compound.append(s)

        b_edges = [e for y in members[b] for e in in_edges[y]]
        count_b = {}
        for e in b_edges:
            x = src[e]
            count_b[x] = count_b.get(x, 0) + 1

        # Three-way split of every touched block: parents reaching only B,
        # parents reaching both B and S-B, and the untouched rest.
        split = {}
        for e in b_edges:
            x = src[e]
            c = count_b.pop(x, None)
            if c is None:
                continue
            groups = split.setdefault(block_of[x], ([], []))
            groups[0 if c == edge_rec[e][0] else 1].append(x)
        for d, groups in split.items():
            parts = [g for g in groups if g]
            if sum(map(len, parts)) == len(members[d]):
                if len(parts) == 1:
                    continue
                parts = parts[1:]
            xs = x_of[d]
            for part in parts:
                nd = len(members)
                members.append(set(part))
                cap.append(len(part))
                members[d].difference_update(part)
                for x in part:
                    block_of[x] = nd
                x_of.append(xs)
                xmembers[xs].append(nd)
                if len(xmembers[xs]) == 2:
                    compound.append(xs)
            if 8 * len(members[d]) < cap[d]:
                members[d] = set(members[d])
                cap[d] = len(members[d])

        # Move the counters of edges into B from count(x, S) to count(x, B).
        new_rec = {}
        for e in b_edges:
            x = src[e]
            edge_rec[e][0] -= 1
            r = new_rec.get(x)
            if r is None:
                r = new_rec[x] = [0]
            r[0] += 1
            edge_rec[e] = r

    renumber = {}
    return [renumber.setdefault(block_of[x], len(renumber)) for x in range(n)]


def naive_classes(n, succ):
    """Greatest bisimulation by iterated splitting from the one-block partition."""
    cls = [0] * n
    count = 1 if n else 0
    while True:
        sigs = {}
        new = []
        for x in range(n):
            sig = (cls[x], frozenset(cls[y] for y in succ[x]))
            new.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == count:
            return new
        cls, count = new, len(sigs)


def _disjoint_union(s, t):
    off = len(s)
    succ = list(s.succ) + [tuple(j + off for j in kids) for kids in t.succ]
    return off, succ


def _blocks(labels, classes):
    grouped = {}
    for lab, c in zip(labels, classes):
        grouped.setdefault(c, []).append(lab)
    return Partition(tuple(frozenset(v) for v in grouped.values()))


def naive_bisim(s, t):
    """Oracle partition of the disjoint union of s and t.

    Nodes of the union are tagged (0, x) for x in s and (1, y) for y in t.
    """
    off, succ = _disjoint_union(s, t)
    labels = [(0, x) for x in s.nodes] + [(1, y) for y in t.nodes]
    return _blocks(labels, naive_classes(len(succ), succ))


def refine_partition(s):
    """Coarsest stable partition of s.nodes (blocks = bisimilarity classes)."""
    return _blocks(s.nodes, coarsest_stable(len(s), s.succ))


def bisimilar(s, t):
    off, succ = _disjoint_union(s, t)
    cls = coarsest_stable(len(succ), succ)
    return cls[s.root_index] == cls[off + t.root_index]


def _quotient_indexed(s, cls):
    k = max(cls) + 1
    kids = [set() for _ in range(k)]
    for x, c in enumerate(cls):
        kids[c].update(cls[y] for y in s.succ[x])
    return System(range(k), [tuple(sorted(ks)) for ks in kids], cls[s.root_index])


def quotient(s):
    """Collapse each bisimilarity class to one node.

    Node i of the result is the i-th block in order of first appearance in
    s.nodes.  The result is bisimulation-minimal.
    """
    return _quotient_indexed(s, coarsest_stable(len(s), s.succ))


def canonical_numbering(n, succ):
    """Isomorphism-invariant ranks for the nodes of a minimal graph.

    Iterated colour refinement where each round's colour is the rank of the
    sorted signature (old colour, sorted child colours).  Everything is
    computed from sorted tuples, so node labels cannot leak into the result.
    On a bisimulation-minimal graph the fixpoint separates every node.
    """
    col = [0] * n
    count = 1 if n else 0
    while True:
        sigs = [(col[x], tuple(sorted({col[y] for y in succ[x]}))) for x in range(n)]
        ranks = {sig: r for r, sig in enumerate(sorted(set(sigs)))}
        new = [ranks[sig] for sig in sigs]
        if len(ranks) == count:
            break
        col, count = new, len(ranks)
    if count != n:
        # Cannot happen on a minimal graph: equal colours would be bisimilar.
        raise AssertionError("canonical numbering requires a bisimulation-minimal graph")
    return new


def canonical_from_minimal(s):
    num = canonical_numbering(len(s), s.succ)
    succ = [None] * len(s)
    for x, kids in enumerate(s.succ):
        succ[num[x]] = tuple(sorted(num[y] for y in kids))
    return System(range(len(s)), succ, num[s.root_index])


def canonicalize(s):
    """Deterministic representative: two systems give equal output iff bisimilar."""
    return canonical_from_minimal(quotient(s))


def canonical_key(s):
    """Hashable byte-for-byte identity of a canonical system."""
    return (s.root_index, s.succ)


class SystemMap:
    """A map sending the children of x onto the children of its image, for every x."""

    def __init__(self, source, target, assignment):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        missing = [x for x in source.nodes if x not in self.assignment]
        if missing:
            raise NotASystemMap(f"node {missing[0]!r} has no image")
        known = set(target.nodes)
        stray = [x for x in source.nodes if self.assignment[x] not in known]
        if stray:
            raise NotASystemMap(f"image of {stray[0]!r} is not a node of the target")
        for x in source.nodes:
            fx = self.assignment[x]
            image = {self.assignment[y] for y in source.children(x)}
            if image != set(target.children(fx)):
                raise NotASystemMap(f"children of {x!r} do not map onto children of {fx!r}")

    def __call__(self, x):
        return self.assignment[x]


def collapse_map(s):
    """The canonical surjective map from s onto quotient(s)."""
    cls = coarsest_stable(len(s), s.succ)
    return SystemMap(s, _quotient_indexed(s, cls), dict(zip(s.nodes, cls)))
