"""Pointed directed graphs ("systems") that picture sets.

A System is immutable.  Nodes are arbitrary hashable ids; internally each
node gets a dense index and the edge relation is kept as a tuple of sorted
child-index tuples, which is what the refinement code works on.
"""

from __future__ import annotations

import keyword
import re

from .errors import UnknownNode

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def id_sort_key(node):
    """Total order over mixed node ids: ints numerically, then everything else by str."""
    if isinstance(node, bool) or not isinstance(node, int):
        return (1, str(node))
    return (0, node)


class System:
    __slots__ = ("_nodes", "_index", "_succ", "_root", "_hash")

    def __init__(self, nodes, succ, root_index):
        # Trusted constructor: callers guarantee dedup'd, sorted, root-reachable data.
        self._nodes = tuple(nodes)
        self._index = {n: i for i, n in enumerate(self._nodes)}
        self._succ = tuple(succ)
        self._root = root_index
        self._hash = None

    @property
    def nodes(self):
        return self._nodes

    @property
    def root(self):
        return self._nodes[self._root]

    @property
    def root_index(self):
        return self._root

    @property
    def succ(self):
        """Child indices per node index."""
        return self._succ

    @property
    def edges(self):
        nodes = self._nodes
        return tuple((nodes[i], nodes[j]) for i, kids in enumerate(self._succ) for j in kids)

    def __len__(self):
        return len(self._nodes)

    @property
    def num_edges(self):
        return sum(len(k) for k in self._succ)

    def index(self, node):
        try:
            return self._index[node]
        except (KeyError, TypeError):
            raise UnknownNode(node) from None

    def children(self, node):
        nodes = self._nodes
        return frozenset(nodes[j] for j in self._succ[self.index(node)])

    def _edge_set(self):
        return frozenset(self.edges)

    def __eq__(self, other):
        if not isinstance(other, System):
            return NotImplemented
        return (
            self.root == other.root
            and set(self._nodes) == set(other._nodes)
            and self._edge_set() == other._edge_set()
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.root, frozenset(self._nodes), self._edge_set()))
        return self._hash

    def __repr__(self):
        return f"System(nodes={len(self._nodes)}, edges={self.num_edges}, root={self.root!r})"

    def rerooted(self, node):
        """The subsystem of descendants of `node`, pointed at `node`."""
        return restrict(self._nodes, self._succ, self.index(node))

    def to_dict(self):
        """JSON interchange form; node ids become strings."""
        order = sorted(range(len(self._nodes)), key=lambda i: id_sort_key(self._nodes[i]))
        rank = {i: r for r, i in enumerate(order)}
        names = [str(n) for n in self._nodes]
        return {
            "nodes": [names[i] for i in order],
            "edges": [
                [names[i], names[j]] for i in order for j in sorted(self._succ[i], key=rank.__getitem__)
            ],
            "root": names[self._root],
        }


def restrict(nodes, succ, root_index):
    """Keep only the nodes reachable from `root_index`, renumbering densely."""
    seen = {root_index: 0}
    order = [root_index]
    stack = [root_index]
    while stack:
        i = stack.pop()
        for j in succ[i]:
            if j not in seen:
                seen[j] = len(order)
                order.append(j)
                stack.append(j)
    if len(order) == len(nodes):
        # Everything reachable: keep the caller's node order.
        return System(nodes, succ, root_index)
    order.sort()
    remap = {old: new for new, old in enumerate(order)}
    new_succ = [tuple(sorted(remap[j] for j in succ[i])) for i in order]
    return System([nodes[i] for i in order], new_succ, remap[root_index])


def build_system(nodes, edges, root):
    """Build a System, dropping nodes the root cannot reach.

    Raises UnknownNode when the root or an edge endpoint is not in `nodes`.
    Duplicate nodes and duplicate edges are collapsed.
    """
    index = {}
    ordered = []
    for n in nodes:
        if n not in index:
            index[n] = len(ordered)
            ordered.append(n)
    if root not in index:
        raise UnknownNode(root)
    kids = [set() for _ in ordered]
    for edge in edges:
        x, y = edge
        if x not in index:
            raise UnknownNode(x)
        if y not in index:
            raise UnknownNode(y)
        kids[index[x]].add(index[y])
    succ = [tuple(sorted(k)) for k in kids]
    return restrict(ordered, succ, index[root])


def children(s, x):
    return s.children(x)


def from_dict(data):
    """Inverse of System.to_dict."""
    try:
        nodes = data["nodes"]
        edges = data["edges"]
        root = data["root"]
    except (KeyError, TypeError):
        raise ValueError("system object needs 'nodes', 'edges' and 'root'") from None
    return build_system([str(n) for n in nodes], [(str(a), str(b)) for a, b in edges], str(root))


def variable_names(s):
    """One identifier per node, usable in the equation grammar."""
    raw = [str(n) for n in s.nodes]
    usable = all(
        isinstance(n, str) and _IDENT.match(n) and not keyword.iskeyword(n) for n in s.nodes
    )
    if usable and len(set(raw)) == len(raw):
        return raw
    return [f"n{i}" for i in range(len(raw))]


def render_equations(s, with_root=True):
    """Text in the equation grammar; parse_system() reads it back."""
    names = variable_names(s)
    order = sorted(range(len(names)), key=lambda i: id_sort_key(s.nodes[i]))
    lines = []
    for i in order:
        members = sorted((names[j] for j in s.succ[i]), key=_natural_key)
        lines.append(f"{names[i]} = {{{', '.join(members)}}}")
    if with_root:
        lines.append(f"root {names[s.root_index]}")
    return "\n".join(lines) + "\n"


def _natural_key(name):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name)]


def export_dot(s, name="G"):
    """Deterministic Graphviz text: node lines in id order, root drawn double."""
    order = sorted(range(len(s.nodes)), key=lambda i: id_sort_key(s.nodes[i]))
    rank = {i: r for r, i in enumerate(order)}
    label = [_dot_quote(str(n)) for n in s.nodes]
    out = [f"digraph {name} {{"]
    for i in order:
        attrs = " [shape=doublecircle]" if i == s.root_index else ""
        out.append(f"  {label[i]}{attrs};")
    for i in order:
        for j in sorted(s.succ[i], key=rank.__getitem__):
            out.append(f"  {label[i]} -> {label[j]};")
    out.append("}")
    return "\n".join(out) + "\n"


def _dot_quote(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'
