"""Labeled DAGs and labeled posets: closure, reduction, path covers, isomorphism.

Vertices are arbitrary hashable ids; edges form a multiset (parallel edges are
representable but rejected by the Hasse-diagram pipeline, which requires simple
DAGs). All values are immutable after construction.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict, deque
from typing import Hashable, Iterable, Iterator, Sequence

from .config import InputError

Vertex = Hashable


class LabeledDag:
    """A finite DAG with vertex labels and a multiset of directed edges."""

    def __init__(self, labels: dict, edges: Iterable[tuple]):
        self.labels = dict(labels)
        self.edges = tuple(sorted(edges, key=_edge_key))
        for u, v in self.edges:
            if u not in self.labels or v not in self.labels:
                raise InputError(f"edge ({u},{v}) mentions an undeclared vertex")
        self.vertices = tuple(sorted(self.labels, key=repr))
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._succ_masks = self._build_succ_masks()
        self._order = self._toposort()
        if self._order is None:
            raise InputError("edge set has a directed cycle")

    def _build_succ_masks(self) -> list[int]:
        masks = [0] * len(self.vertices)
        for u, v in self.edges:
            masks[self._index[u]] |= 1 << self._index[v]
        return masks

    def _toposort(self):
        n = len(self.vertices)
        indeg = [0] * n
        succ = [set() for _ in range(n)]
        for u, v in set(self.edges):
            if self._index[v] not in succ[self._index[u]]:
                succ[self._index[u]].add(self._index[v])
                indeg[self._index[v]] += 1
        queue = deque(i for i in range(n) if indeg[i] == 0)
        order = []
        while queue:
            i = queue.popleft()
            order.append(self.vertices[i])
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
        return tuple(order) if len(order) == n else None

    # -- basic views ---------------------------------------------------------

    def n_vertices(self) -> int:
        return len(self.vertices)

    def simple_edges(self) -> tuple:
        return tuple(sorted(set(self.edges), key=_edge_key))

    def is_simple(self) -> bool:
        return len(self.edges) == len(set(self.edges))

    def successors(self, v) -> list:
        return [w for u, w in self.edges if u == v]

    def predecessors(self, v) -> list:
        return [u for u, w in self.edges if w == v]

    def out_degree(self, v) -> int:
        return sum(1 for u, _ in self.edges if u == v)

    def in_degree(self, v) -> int:
        return sum(1 for _, w in self.edges if w == v)

    def __eq__(self, other):
        return (isinstance(other, LabeledDag)
                and self.labels == other.labels and self.edges == other.edges)

    def __hash__(self):
        return hash((tuple(sorted(self.labels.items(), key=repr)), self.edges))

    def __repr__(self):
        return f"LabeledDag({self.labels!r}, {list(self.edges)!r})"

    # -- orderings -----------------------------------------------------------

    def topological_orderings(self) -> Iterator[tuple]:
        """All topological orderings, lazily."""
        preds = {v: set() for v in self.vertices}
        for u, v in set(self.edges):
            preds[v].add(u)

        def rec(placed: tuple, remaining: set):
            if not remaining:
                yield placed
                return
            for v in sorted(remaining, key=repr):
                if preds[v] <= set(placed):
                    yield from rec(placed + (v,), remaining - {v})

        yield from rec((), set(self.vertices))

    def one_topological_ordering(self) -> tuple:
        return self._order

    # -- closure and reduction -------------------------------------------------

    def reach_masks(self) -> list[int]:
        """reach_masks()[i] has bit j set iff vertex i reaches vertex j by >=1 edge."""
        n = len(self.vertices)
        reach = [0] * n
        for v in reversed(self._order):
            i = self._index[v]
            acc = self._succ_masks[i]
            m = self._succ_masks[i]
            while m:
                j = (m & -m).bit_length() - 1
                acc |= reach[j]
                m &= m - 1
            reach[i] = acc
        return reach

    def transitive_closure(self) -> "LabeledPoset":
        reach = self.reach_masks()
        order_pairs = []
        for i, v in enumerate(self.vertices):
            m = reach[i]
            while m:
                j = (m & -m).bit_length() - 1
                order_pairs.append((v, self.vertices[j]))
                m &= m - 1
        return LabeledPoset(self.labels, order_pairs, _checked=True)

    def transitive_reduction(self) -> "LabeledDag":
        """The unique minimal sub-DAG with the same transitive closure.

        Defined for simple DAGs only; parallel edges make minimality ambiguous.
        """
        if not self.is_simple():
            raise InputError("transitive reduction requires a simple DAG (no parallel edges)")
        reach = self.reach_masks()
        kept = []
        for u, v in self.edges:
            i, j = self._index[u], self._index[v]
            # (u,v) is redundant iff some other direct successor of u reaches v
            m = self._succ_masks[i] & ~(1 << j)
            redundant = False
            while m:
                k = (m & -m).bit_length() - 1
                if (reach[k] >> j) & 1:
                    redundant = True
                    break
                m &= m - 1
            if not redundant:
                kept.append((u, v))
        return LabeledDag(self.labels, kept)

    def is_transitively_reduced(self) -> bool:
        return self.is_simple() and self.transitive_reduction() == self

    # -- path cover ------------------------------------------------------------

    def min_path_cover(self) -> tuple[int, list[list]]:
        """Minimum number of simple paths covering every vertex and every edge.

        Paths may share vertices and edges. Computed as a minimum integral flow
        with lower bound 1 on every DAG edge between a super-source attached to
        all sources and a super-sink attached to all sinks, decomposed into
        source-to-sink paths; isolated vertices each contribute one trivial path.
        """
        isolated = [v for v in self.vertices
                    if self.in_degree(v) == 0 and self.out_degree(v) == 0]
        paths = [[v] for v in isolated]
        if not self.edges:
            return len(paths), paths
        flows = _min_flow_cover(self)
        paths.extend(_decompose_flow(self, flows))
        return len(paths), paths

    # -- serialization -----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"vertex {v} {self.labels[v]}" for v in self.vertices]
        lines += [f"edge {u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "LabeledDag":
        labels, edges = {}, []
        for ln, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "vertex" and len(parts) == 3:
                labels[parts[1]] = parts[2]
            elif parts[0] == "edge" and len(parts) == 3:
                edges.append((parts[1], parts[2]))
            else:
                raise InputError(f"line {ln}: expected 'vertex ID LABEL' or 'edge SRC DST'")
        return LabeledDag(labels, edges)

    def to_dot(self, name: str = "dag") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}" [label="{v}:{self.labels[v]}"];')
        for u, v in self.edges:
            lines.append(f'  "{u}" -> "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def canonical_key(self):
        return canonical_digraph_key(self.labels, self.edges)


class LabeledPoset:
    """A finite strict partial order with vertex labels."""

    def __init__(self, labels: dict, order: Iterable[tuple], _checked: bool = False):
        self.labels = dict(labels)
        self.order = frozenset(order)
        self.vertices = tuple(sorted(self.labels, key=repr))
        if not _checked:
            self._validate()

    def _validate(self):
        succ = {}
        for u, v in self.order:
            if u not in self.labels or v not in self.labels:
                raise InputError(f"order pair ({u},{v}) mentions an undeclared vertex")
            if u == v:
                raise InputError(f"order is not irreflexive at {u}")
            succ.setdefault(u, set()).add(v)
        empty = frozenset()
        for u, targets in succ.items():
            for v in targets:
                if not succ.get(v, empty) <= targets:
                    raise InputError(f"order is not transitive below ({u},{v})")

    def less(self, u, v) -> bool:
        return (u, v) in self.order

    def n_vertices(self) -> int:
        return len(self.vertices)

    def as_dag(self) -> LabeledDag:
        return LabeledDag(self.labels, self.order)

    def hasse_diagram(self) -> LabeledDag:
        return self.as_dag().transitive_reduction()

    def is_c_partial_order(self, c: int) -> bool:
        count, _ = self.hasse_diagram().min_path_cover()
        return count <= c

    def __eq__(self, other):
        return (isinstance(other, LabeledPoset)
                and self.labels == other.labels and self.order == other.order)

    def __hash__(self):
        return hash((tuple(sorted(self.labels.items(), key=repr)), self.order))

    def __repr__(self):
        return f"LabeledPoset({self.labels!r}, {sorted(self.order, key=_edge_key)!r})"

    def canonical_key(self):
        return canonical_digraph_key(self.labels, self.order)


# -- flow machinery for the path cover ------------------------------------------


def _min_flow_cover(dag: LabeledDag) -> Counter:
    """Integral min flow meeting lower bound 1 on every DAG edge.

    Returns a Counter over arcs (u, v), including arcs from 'SRC' and to 'SNK'.
    Standard lower-bound feasibility transform followed by flow reduction
    against the return arc.
    """
    net = _FlowNet()
    src, snk = ("SRC",), ("SNK",)
    big = len(dag.edges) + dag.n_vertices() + 2
    for v in dag.vertices:
        if dag.in_degree(v) == 0 and dag.out_degree(v) > 0:
            net.add(src, ("v", v), big)
        if dag.out_degree(v) == 0 and dag.in_degree(v) > 0:
            net.add(("v", v), snk, big)
    edge_arcs = [net.add(("v", u), ("v", v), big - 1) for u, v in dag.edges]

    ssrc, ssnk = ("SSRC",), ("SSNK",)
    for u, v in dag.edges:
        net.add(ssrc, ("v", v), 1)
        net.add(("v", u), ssnk, 1)
    ret = net.add(snk, src, big * big)
    sat = net.max_flow(ssrc, ssnk)
    assert sat == len(dag.edges), "lower-bound feasibility must hold on a DAG"
    net.disable(ret)
    net.max_flow(snk, src)  # reduce the s-t flow to its minimum

    flows = Counter()
    for (u, v) in dag.edges:
        flows[(u, v)] += 1  # the lower bound itself
    for (a, b), f in net.arc_flows():
        if a[0] == "v" and b[0] == "v":
            flows[(a[1], b[1])] += f
        elif a == src:
            flows[("SRC", b[1])] += f
        elif b == snk:
            flows[(a[1], "SNK")] += f
    return Counter({k: f for k, f in flows.items() if f > 0})


def _decompose_flow(dag: LabeledDag, flows: Counter) -> list[list]:
    remaining = Counter(flows)
    paths = []
    while True:
        start = next((v for v in dag.vertices if remaining[("SRC", v)] > 0), None)
        if start is None:
            break
        remaining[("SRC", start)] -= 1
        v, path = start, [start]
        while True:
            nxt = next((w for w in sorted(set(dag.successors(v)), key=repr)
                        if remaining[(v, w)] > 0), None)
            if nxt is None:
                assert remaining[(v, "SNK")] > 0, "flow conservation violated"
                remaining[(v, "SNK")] -= 1
                break
            remaining[(v, nxt)] -= 1
            path.append(nxt)
            v = nxt
        paths.append(path)
    return paths


class _FlowNet:
    """Tiny arc-list max-flow network (Edmonds-Karp); supports parallel arcs."""

    def __init__(self):
        self.head = []
        self.tail = []
        self.cap = []
        self.adj = {}

    def add(self, u, v, capacity: int) -> int:
        idx = len(self.head)
        self.adj.setdefault(u, []).append(idx)
        self.adj.setdefault(v, []).append(idx + 1)
        self.head += [v, u]
        self.tail += [u, v]
        self.cap += [capacity, 0]
        return idx

    def disable(self, arc: int):
        self.cap[arc] = 0
        self.cap[arc ^ 1] = 0

    def arc_flows(self):
        """Flow on every forward arc (reverse residual), if positive."""
        for idx in range(0, len(self.head), 2):
            if self.cap[idx ^ 1] > 0:
                yield (self.tail[idx], self.head[idx]), self.cap[idx ^ 1]

    def max_flow(self, s, t) -> int:
        total = 0
        while True:
            parent_arc = {s: None}
            queue = deque([s])
            while queue and t not in parent_arc:
                u = queue.popleft()
                for idx in self.adj.get(u, ()):
                    v = self.head[idx]
                    if self.cap[idx] > 0 and v not in parent_arc:
                        parent_arc[v] = idx
                        queue.append(v)
            if t not in parent_arc:
                return total
            bottleneck, v = None, t
            while v != s:
                idx = parent_arc[v]
                bottleneck = self.cap[idx] if bottleneck is None else min(bottleneck, self.cap[idx])
                v = self.tail[idx]
            v = t
            while v != s:
                idx = parent_arc[v]
                self.cap[idx] -= bottleneck
                self.cap[idx ^ 1] += bottleneck
                v = self.tail[idx]
            total += bottleneck


# -- canonical forms / isomorphism ------------------------------------------------


def canonical_digraph_key(labels: dict, edges: Iterable[tuple]):
    """Canonical key of a vertex-labeled digraph with edge multiset.

    Label- and multiplicity-aware iterative refinement, completed by brute
    force over the surviving color classes (graphs here are desk-scale).
    Two structures have equal keys iff they are isomorphic.
    """
    verts = sorted(labels, key=repr)
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    emult = Counter((idx[u], idx[v]) for u, v in edges)
    colors = [repr(labels[v]) for v in verts]
    for _ in range(n):
        sig = []
        for i in range(n):
            outs = sorted((colors[j], m) for (a, j), m in emult.items() if a == i)
            ins = sorted((colors[j], m) for (j, a), m in emult.items() if a == i)
            sig.append((colors[i], tuple(outs), tuple(ins)))
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new_colors = [ranks[s] for s in sig]
        if new_colors == colors:
            break
        colors = new_colors

    classes = defaultdict(list)
    for i in range(n):
        classes[colors[i]].append(i)
    groups = [classes[c] for c in sorted(classes, key=repr)]

    best = None
    for combo in itertools.product(*[itertools.permutations(g) for g in groups]):
        perm = [i for g in combo for i in g]
        pos = [0] * n
        for p, i in enumerate(perm):
            pos[i] = p
        key = (
            tuple(repr(labels[verts[i]]) for i in perm),
            tuple(sorted(((pos[a], pos[b]), m) for (a, b), m in emult.items())),
        )
        if best is None or key < best:
            best = key
    return best


def dedup_posets(posets: Iterable[LabeledPoset]) -> list[LabeledPoset]:
    """Deduplicate posets up to label-preserving isomorphism (deterministic order)."""
    by_key = {}
    for p in posets:
        by_key.setdefault(p.canonical_key(), p)
    return [by_key[k] for k in sorted(by_key)]


def dags_isomorphic(a: LabeledDag, b: LabeledDag) -> bool:
    return a.canonical_key() == b.canonical_key()


def all_dags(n: int, labels: Sequence, max_edges: int | None = None) -> Iterator[LabeledDag]:
    """All labeled simple DAGs on vertices 0..n-1 with edges respecting 0<1<...<n-1.

    Every isomorphism class of simple DAGs appears (possibly repeatedly, under
    different labelings of the fixed topological order); intended for
    exhaustive desk-scale sweeps.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for edge_bits in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if (edge_bits >> k) & 1]
        if max_edges is not None and len(edges) > max_edges:
            continue
        for labeling in itertools.product(labels, repeat=n):
            yield LabeledDag({i: labeling[i] for i in range(n)}, edges)


def _edge_key(e):
    return (repr(e[0]), repr(e[1]))
