"""Sets under the Anti-Foundation Axiom.

Every pointed graph depicts exactly one set; a HyperSet stores the canonical
picture of that set (bisimulation-minimal, deterministically numbered).
Instances are interned on that picture, so two HyperSets are equal exactly
when they are the same object.
"""

from __future__ import annotations

import threading
import weakref

from .bisim import canonical_from_minimal, canonical_key, canonicalize, coarsest_stable
from .equations import parse_equations
from .errors import CyclicInput
from .system import System, build_system, restrict

_interned = weakref.WeakValueDictionary()
_intern_lock = threading.Lock()


class HyperSet:
    __slots__ = ("picture", "_members", "_wellfounded", "__weakref__")

    def __new__(cls, picture):
        """Wrap an already-canonical picture; use decorate() for arbitrary ones."""
        key = canonical_key(picture)
        with _intern_lock:
            obj = _interned.get(key)
            if obj is None:
                obj = super().__new__(cls)
                obj.picture = picture
                obj._members = None
                obj._wellfounded = None
                _interned[key] = obj
        return obj

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)

    def __iter__(self):
        return iter(members(self))

    def __len__(self):
        return len(self.picture.succ[self.picture.root_index])

    def __contains__(self, item):
        return is_member(item, self)

    def __repr__(self):
        return f"HyperSet({format_set(self)})"

    def __str__(self):
        return format_set(self)

    def __reduce__(self):
        return (_from_canonical_data, (tuple(self.picture.succ), self.picture.root_index))


def _from_canonical_data(succ, root):
    return HyperSet(System(range(len(succ)), succ, root))


def decorate(s):
    """The unique set that `s` depicts."""
    return HyperSet(canonicalize(s))


def decoration(s):
    """Node -> HyperSet for every node of `s`: the one decoration AFA allows."""
    cls = coarsest_stable(len(s), s.succ)
    k = max(cls) + 1
    kids = [set() for _ in range(k)]
    for x, c in enumerate(cls):
        kids[c].update(cls[y] for y in s.succ[x])
    qsucc = [tuple(sorted(ks)) for ks in kids]
    by_block = {}
    for c in range(k):
        sub = restrict(range(k), qsucc, c)
        by_block[c] = HyperSet(canonical_from_minimal(sub))
    return {x: by_block[cls[i]] for i, x in enumerate(s.nodes)}


def collapse_values(s):
    """Bottom-up Mostowski collapse into nested frozensets (node -> frozenset).

    Independent of the bisimulation code: identification of equal values is
    done by Python's own frozenset equality.
    """
    n = len(s)
    value = [None] * n
    state = [0] * n  # 0 new, 1 on stack, 2 done
    for start in range(n):
        if state[start]:
            continue
        stack = [(start, iter(s.succ[start]))]
        state[start] = 1
        while stack:
            x, it = stack[-1]
            for y in it:
                if state[y] == 1:
                    raise CyclicInput()
                if state[y] == 0:
                    state[y] = 1
                    stack.append((y, iter(s.succ[y])))
                    break
            else:
                stack.pop()
                value[x] = frozenset(value[y] for y in s.succ[x])
                state[x] = 2
    return {s.nodes[i]: value[i] for i in range(n)}


def from_frozenset(fs):
    """HyperSet for a hereditarily finite set given as nested frozensets."""
    index = {}
    order = [fs]
    index[fs] = 0
    i = 0
    while i < len(order):
        for m in order[i]:
            if m not in index:
                index[m] = len(order)
                order.append(m)
        i += 1
    edges = [(index[a], index[m]) for a in order for m in a]
    return decorate(build_system(range(len(order)), edges, 0))


def to_frozenset(a):
    """Nested-frozenset form of a wellfounded set; CyclicInput otherwise."""
    return collapse_values(a.picture)[a.picture.root]


def mostowski_collapse(s):
    """Decorate an acyclic picture the classical way (raises CyclicInput on a cycle)."""
    return from_frozenset(collapse_values(s)[s.root])


def equals(a, b):
    return a is b


def members(a):
    """Elements of `a` in canonical order, each a HyperSet."""
    if a._members is None:
        pic = a.picture
        a._members = tuple(
            HyperSet(canonical_from_minimal(pic.rerooted(c))) for c in pic.succ[pic.root_index]
        )
    return list(a._members)


def is_member(a, b):
    return any(m is a for m in members(b))


def is_wellfounded(a):
    """True iff the canonical picture has no cycle (no infinite descending chain)."""
    if a._wellfounded is None:
        a._wellfounded = _acyclic(a.picture)
    return a._wellfounded


def _acyclic(s):
    indeg = [0] * len(s)
    for kids in s.succ:
        for y in kids:
            indeg[y] += 1
    ready = [x for x in range(len(s)) if indeg[x] == 0]
    seen = 0
    while ready:
        x = ready.pop()
        seen += 1
        for y in s.succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    return seen == len(s)


def solve_equations(text):
    """Solve `x = {...}` equations: name -> the unique solution under AFA.

    A `root` directive, if present, is ignored.
    """
    eqs = parse_equations(text)
    eqs.check_declared()
    return solve_parsed(eqs)


def solve_parsed(eqs, env=None):
    """Solve parsed equations; names not declared there are looked up in `env`."""
    env = env or {}
    eqs.check_declared(env)
    names = list(eqs.members)
    where = {v: i for i, v in enumerate(names)}
    succ = [() for _ in names]
    # Graft the canonical picture of every environment set referenced by name.
    for v in names:
        for m in eqs.members[v]:
            if m not in where:
                pic = env[m].picture
                off = len(succ)
                succ.extend(tuple(off + j for j in kids) for kids in pic.succ)
                where[m] = off + pic.root_index
    for i, v in enumerate(names):
        succ[i] = tuple(sorted({where[m] for m in eqs.members[v]}))
    # A synthetic root reaching every variable keeps them all in one system.
    top = len(succ)
    succ.append(tuple(range(len(names))))
    deco = decoration(System(range(top + 1), succ, top))
    return {v: deco[i] for i, v in enumerate(names)}


def unfold(a, rank):
    """Rank-`rank` unfolding: a^0 = {} and a^(k+1) = {b^k : b in a}.

    Built as one layered acyclic picture (node (x, j) stands for x^j) and
    decorated, so the result is always wellfounded.
    """
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    pic = a.picture
    n = len(pic)
    # layer j holds nodes j*n .. j*n+n-1
    succ = []
    for j in range(rank + 1):
        for x in range(n):
            succ.append(() if j == 0 else tuple((j - 1) * n + y for y in pic.succ[x]))
    return decorate(restrict(range(len(succ)), succ, rank * n + pic.root_index))


def _from_members(items):
    nodes = ["top"]
    edges = []
    for k, m in enumerate(items):
        pic = m.picture
        nodes.extend((k, i) for i in range(len(pic)))
        edges.extend(((k, i), (k, j)) for i, kids in enumerate(pic.succ) for j in kids)
        edges.append(("top", (k, pic.root_index)))
    return decorate(build_system(nodes, edges, "top"))


def empty():
    return HyperSet(System([0], [()], 0))


def omega():
    """The set with Omega = {Omega}."""
    return HyperSet(System([0], [(0,)], 0))


def singleton(a):
    return _from_members([a])


def pair(a, b):
    return _from_members([a, b])


def insert(a, b):
    """b with a added."""
    return _from_members(members(b) + [a])


def union(a, b):
    return _from_members(members(a) + members(b))


def from_members(items):
    return _from_members(list(items))


def von_neumann(n):
    """The von Neumann natural n = {0, ..., n-1}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    nodes = list(range(n + 1))
    edges = [(i, j) for i in nodes for j in range(i)]
    return decorate(build_system(nodes, edges, n))


def is_omega(a):
    return a is omega()


def format_set(a, limit=200):
    """Human-readable text.

    Wellfounded sets print in brace notation with the empty set as "∅";
    Omega prints as "Ω".  Anything else, or anything too long, prints as its
    canonical equations, root first: "[n0 = {n0, n1}; n1 = {}]".
    """
    if is_omega(a):
        return "Ω"
    if is_wellfounded(a):
        text = _braces(a.picture, a.picture.root_index, {}, limit)
        if text is not None:
            return text
    return picture_text(a.picture)


def _braces(pic, x, memo, limit):
    if x in memo:
        return memo[x]
    if not pic.succ[x]:
        text = "∅"
    else:
        parts = []
        for y in pic.succ[x]:
            t = _braces(pic, y, memo, limit)
            if t is None:
                return None
            parts.append(t)
        text = "{" + ", ".join(parts) + "}"
    memo[x] = text if len(text) <= limit else None
    return memo[x]


def picture_text(pic):
    order = [pic.root_index] + [i for i in range(len(pic)) if i != pic.root_index]
    eqs = [
        f"n{i} = {{{', '.join(f'n{j}' for j in pic.succ[i])}}}" for i in order
    ]
    return "[" + "; ".join(eqs) + "]"
