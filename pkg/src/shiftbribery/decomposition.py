"""Tree decompositions: construction, validation and conversion to nice form."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
JOIN = "join"


class DecompositionError(ValueError):
    pass


@dataclass
class TreeDecomposition:
    """Bags indexed by node id plus the undirected tree edges between them."""

    bags: list[frozenset]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def tree(self) -> nx.Graph:
        t = nx.Graph()
        t.add_nodes_from(range(len(self.bags)))
        t.add_edges_from(self.edges)
        return t

    def validate(self, graph: nx.Graph) -> None:
        """Raise ``DecompositionError`` naming the first violated property."""
        if not self.bags:
            if graph.number_of_nodes():
                raise DecompositionError("decomposition has no bags")
            return
        t = self.tree()
        if not nx.is_tree(t):
            raise DecompositionError("bag graph is not a tree")
        holders = defaultdict(set)
        for idx, bag in enumerate(self.bags):
            for v in bag:
                if v not in graph:
                    raise DecompositionError(f"bag {idx} contains unknown vertex {v!r}")
                holders[v].add(idx)
        for v in sorted(graph.nodes):
            if not holders[v]:
                raise DecompositionError(f"vertex {v!r} appears in no bag")
        for u, v in graph.edges:
            if not holders[u] & holders[v]:
                a, b = sorted((u, v))
                raise DecompositionError(f"edge {{{a!r}, {b!r}}} is not covered by any bag")
        for v, nodes in holders.items():
            if not nx.is_connected(t.subgraph(nodes)):
                raise DecompositionError(f"bags containing vertex {v!r} are not connected")

    @classmethod
    def from_records(cls, records: list[dict]) -> TreeDecomposition:
        """Build from ``[{"bag": [...], "children": [ids]}, ...]``."""
        bags = [frozenset(r["bag"]) for r in records]
        edges = [(i, int(ch)) for i, r in enumerate(records) for ch in r.get("children", [])]
        return cls(bags, edges)

    def to_records(self) -> list[dict]:
        if not self.bags:
            return []
        t = self.tree()
        children = defaultdict(list)
        for parent, child in nx.bfs_edges(t, 0):
            children[parent].append(child)
        return [{"bag": sorted(b), "children": sorted(children[i])} for i, b in enumerate(self.bags)]


def _forest_decomposition(graph: nx.Graph) -> TreeDecomposition:
    bags: list[frozenset] = []
    edges: list[tuple[int, int]] = []
    anchors = []
    for comp in sorted(nx.connected_components(graph), key=min):
        root = min(comp)
        if len(comp) == 1:
            bags.append(frozenset([root]))
            anchors.append(len(bags) - 1)
            continue
        # one bag per tree edge, attached to the bag of the parent's edge
        edge_bag: dict[int, int] = {}
        first = None
        for parent, child in nx.bfs_edges(graph, root):
            bags.append(frozenset((parent, child)))
            idx = len(bags) - 1
            if parent in edge_bag:
                edges.append((edge_bag[parent], idx))
            elif first is not None:
                edges.append((first, idx))
            else:
                first = idx
            edge_bag[child] = idx
        anchors.append(first)
    edges.extend((anchors[0], a) for a in anchors[1:])
    return TreeDecomposition(bags, edges)


def build_tree_decomposition(graph: nx.Graph) -> TreeDecomposition:
    """Width-1 decomposition for forests, min-fill-in heuristic otherwise."""
    if graph.number_of_nodes() == 0:
        return TreeDecomposition([])
    if nx.is_forest(graph):
        return _forest_decomposition(graph)
    _, decomp = treewidth_min_fill_in(graph)
    nodes = list(decomp.nodes)
    index = {b: i for i, b in enumerate(nodes)}
    bags = [frozenset(b) for b in nodes]
    edges = [(index[a], index[b]) for a, b in decomp.edges]
    # the heuristic may return a forest of bags for disconnected inputs
    t = nx.Graph()
    t.add_nodes_from(range(len(bags)))
    t.add_edges_from(edges)
    comps = [min(c) for c in nx.connected_components(t)]
    edges.extend((comps[0], c) for c in comps[1:])
    dec = TreeDecomposition(bags, edges)
    covered = set().union(*bags)
    missing = [v for v in graph.nodes if v not in covered]
    for v in missing:
        dec.bags.append(frozenset([v]))
        dec.edges.append((0, len(dec.bags) - 1))
    return dec


@dataclass
class NiceNode:
    kind: str
    bag: frozenset
    vertex: object = None
    children: tuple[int, ...] = ()


@dataclass
class NiceTreeDecomposition:
    """Nodes are stored children-first, so list order is a valid post-order."""

    nodes: list[NiceNode]
    root: int

    @property
    def width(self) -> int:
        return max(len(n.bag) for n in self.nodes) - 1

    def __len__(self) -> int:
        return len(self.nodes)

    def check(self) -> None:
        for idx, node in enumerate(self.nodes):
            kids = [self.nodes[c] for c in node.children]
            if any(c >= idx for c in node.children):
                raise DecompositionError(f"node {idx} is stored before a child")
            if node.kind == LEAF:
                ok = not kids and not node.bag
            elif node.kind == INTRODUCE:
                ok = len(kids) == 1 and node.vertex in node.bag and kids[0].bag == node.bag - {node.vertex}
            elif node.kind == FORGET:
                ok = len(kids) == 1 and node.vertex not in node.bag and kids[0].bag == node.bag | {node.vertex}
            elif node.kind == JOIN:
                ok = len(kids) == 2 and all(k.bag == node.bag for k in kids)
            else:
                ok = False
            if not ok:
                raise DecompositionError(f"node {idx} violates the {node.kind} node shape")
        if self.nodes[self.root].bag:
            raise DecompositionError("root bag must be empty")

    def vertices(self) -> set:
        return {n.vertex for n in self.nodes if n.kind == INTRODUCE}


def make_nice(dec: TreeDecomposition, graph: nx.Graph | None = None) -> NiceTreeDecomposition:
    """Standard nicification rooted at an empty bag.

    ``graph``, if given, is used to validate the input first.
    """
    if graph is not None:
        dec.validate(graph)
    nodes: list[NiceNode] = []

    def add(kind, bag, vertex=None, children=()) -> int:
        nodes.append(NiceNode(kind, frozenset(bag), vertex, tuple(children)))
        return len(nodes) - 1

    if not dec.bags:
        root = add(LEAF, ())
        return NiceTreeDecomposition(nodes, root)

    t = dec.tree()
    if not nx.is_tree(t):
        raise DecompositionError("bag graph is not a tree")

    def morph(top: int, frm: frozenset, to: frozenset) -> int:
        for v in sorted(frm - to, key=repr):
            frm = frm - {v}
            top = add(FORGET, frm, v, (top,))
        for v in sorted(to - frm, key=repr):
            frm = frm | {v}
            top = add(INTRODUCE, frm, v, (top,))
        return top

    children = defaultdict(list)
    for parent, child in nx.bfs_edges(t, 0):
        children[parent].append(child)
    built: dict[int, int] = {}
    for b in nx.dfs_postorder_nodes(t, 0):
        bag = dec.bags[b]
        if not children[b]:
            built[b] = morph(add(LEAF, ()), frozenset(), bag)
            continue
        tops = [morph(built[c], dec.bags[c], bag) for c in children[b]]
        while len(tops) > 1:
            merged = add(JOIN, bag, None, (tops[0], tops[1]))
            tops = tops[2:] + [merged]
        built[b] = tops[0]
    root = morph(built[0], dec.bags[0], frozenset())
    nice = NiceTreeDecomposition(nodes, root)
    nice.check()
    return nice
