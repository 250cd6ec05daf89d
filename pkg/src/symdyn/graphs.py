"""Finite labeled graphs and the automaton algorithms run on them.

Vertex sets are handled as integer bitmasks throughout: bit ``v`` set means
vertex ``v`` belongs to the set.  Graphs in this package are small (tens of
vertices at most), so masks stay cheap and hashable.
"""

from collections import deque

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InputError


def bits(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


class LabeledGraph:
    """A finite directed graph whose edges carry labels ``0..n_labels-1``.

    Edges are stored as a sorted tuple of ``(source, label, target)`` index
    triples; parallel edges with the same triple are collapsed.  Use
    :meth:`build` to construct from vertex names, which also trims the graph
    to its essential part.
    """

    def __init__(self, vertices, edges, n_labels):
        self.vertices = tuple(vertices)
        self.n_labels = int(n_labels)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names")
        m = len(self.vertices)
        clean = set()
        for s, a, t in edges:
            if not (0 <= s < m and 0 <= t < m):
                raise InputError(f"edge endpoint out of range: {(s, a, t)}")
            if not 0 <= a < self.n_labels:
                raise InputError(f"edge label out of range: {a}")
            clean.add((int(s), int(a), int(t)))
        self.edges = tuple(sorted(clean))
        fwd = [[0] * m for _ in range(self.n_labels)]
        bwd = [[0] * m for _ in range(self.n_labels)]
        for s, a, t in self.edges:
            fwd[a][s] |= 1 << t
            bwd[a][t] |= 1 << s
        self._fwd = fwd
        self._bwd = bwd
        self._cache = {}

    # -- construction -----------------------------------------------------

    @classmethod
    def build(cls, vertices, edges, n_labels, trim=True):
        """Build from vertex names and ``(src_name, label, dst_name)`` edges."""
        vertices = list(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        try:
            triples = [(index[s], a, index[t]) for s, a, t in edges]
        except KeyError as exc:
            raise InputError(f"edge references undeclared vertex {exc.args[0]!r}") from None
        g = cls(vertices, triples, n_labels)
        return g.essential() if trim else g

    def subgraph(self, keep):
        """Induced subgraph on the vertex indices in ``keep`` (order preserved)."""
        keep = sorted(set(keep))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[s], a, pos[t]) for s, a, t in self.edges if s in pos and t in pos]
        return LabeledGraph([self.vertices[v] for v in keep], edges, self.n_labels)

    def essential(self):
        """Iteratively delete vertices with no incoming or no outgoing edge."""
        alive = set(range(len(self.vertices)))
        while True:
            has_in, has_out = set(), set()
            for s, _, t in self.edges:
                if s in alive and t in alive:
                    has_out.add(s)
                    has_in.add(t)
            nxt = alive & has_in & has_out
            if nxt == alive:
                break
            alive = nxt
        if len(alive) == len(self.vertices):
            return self
        return self.subgraph(alive)

    # -- basic queries ----------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return (isinstance(other, LabeledGraph) and self.vertices == other.vertices
                and self.edges == other.edges and self.n_labels == other.n_labels)

    def __hash__(self):
        return hash((self.vertices, self.edges, self.n_labels))

    def __repr__(self):
        return f"LabeledGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    @property
    def all_mask(self):
        return (1 << len(self.vertices)) - 1

    def forward(self, mask, a):
        row = self._fwd[a]
        out = 0
        for v in bits(mask):
            out |= row[v]
        return out

    def backward(self, mask, a):
        row = self._bwd[a]
        out = 0
        for v in bits(mask):
            out |= row[v]
        return out

    def start_set(self, word, end_mask=None):
        """Mask of vertices where a path labeled ``word`` ending in ``end_mask`` starts."""
        mask = self.all_mask if end_mask is None else end_mask
        for a in reversed(word):
            mask = self.backward(mask, a)
            if not mask:
                return 0
        return mask

    def end_set(self, word, start_mask=None):
        mask = self.all_mask if start_mask is None else start_mask
        for a in word:
            mask = self.forward(mask, a)
            if not mask:
                return 0
        return mask

    def in_labels(self, v):
        return [a for a in range(self.n_labels) if self._bwd[a][v]]

    def out_labels(self, v):
        return [a for a in range(self.n_labels) if self._fwd[a][v]]

    def is_left_resolving(self):
        return all(self._bwd[a][v] & (self._bwd[a][v] - 1) == 0
                   for a in range(self.n_labels) for v in range(len(self.vertices)))

    def is_essential(self):
        return self.essential() is self

    def adjacency(self):
        m = len(self.vertices)
        adj = np.zeros((m, m), dtype=np.int64)
        for s, _, t in self.edges:
            adj[s, t] += 1
        return adj

    # -- word enumeration -------------------------------------------------

    def predecessor_words(self, mask, length):
        """Sorted words of ``length`` labeling a path that ends in ``mask``."""
        key = ("pred", mask, length)
        if key not in self._cache:
            out = []

            def walk(cur, suffix, remaining):
                if remaining == 0:
                    out.append(tuple(reversed(suffix)))
                    return
                for a in range(self.n_labels):
                    nxt = self.backward(cur, a)
                    if nxt:
                        suffix.append(a)
                        walk(nxt, suffix, remaining - 1)
                        suffix.pop()

            if mask:
                walk(mask, [], length)
            self._cache[key] = tuple(sorted(out))
        return self._cache[key]

    def follower_words(self, mask, length):
        """Sorted words of ``length`` labeling a path that starts in ``mask``."""
        key = ("foll", mask, length)
        if key not in self._cache:
            out = []

            def walk(cur, prefix, remaining):
                if remaining == 0:
                    out.append(tuple(prefix))
                    return
                for a in range(self.n_labels):
                    nxt = self.forward(cur, a)
                    if nxt:
                        prefix.append(a)
                        walk(nxt, prefix, remaining - 1)
                        prefix.pop()

            if mask:
                walk(mask, [], length)
            self._cache[key] = tuple(out)
        return self._cache[key]

    # -- structure --------------------------------------------------------

    def components(self):
        """Strongly connected components as a list of sorted vertex lists."""
        m = len(self.vertices)
        if m == 0:
            return []
        adj = self.adjacency()
        _, labels = connected_components(csr_matrix(adj), directed=True, connection="strong")
        comps = {}
        for v, c in enumerate(labels):
            comps.setdefault(c, []).append(v)
        return sorted(comps.values())

    def is_strongly_connected(self):
        return len(self.components()) == 1

    def source_components(self):
        """Components that receive no edge from another component."""
        comps = self.components()
        where = {v: i for i, c in enumerate(comps) for v in c}
        entered = {where[t] for s, _, t in self.edges if where[s] != where[t]}
        return [c for i, c in enumerate(comps) if i not in entered]


def language_counterexample(g1, g2):
    """Shortest word presented by ``g1`` but not by ``g2``, or ``None``.

    Both graphs must be essential, so their languages are the labels of
    finite paths.  The search runs over pairs of forward vertex subsets and
    is exact.
    """
    start = (g1.all_mask, g2.all_mask)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (p1, p2), word = queue.popleft()
        for a in range(g1.n_labels):
            q1 = g1.forward(p1, a)
            if not q1:
                continue
            q2 = g2.forward(p2, a) if a < g2.n_labels else 0
            if not q2:
                return word + (a,)
            if (q1, q2) not in seen:
                seen.add((q1, q2))
                queue.append(((q1, q2), word + (a,)))
    return None


def same_language(g1, g2):
    return language_counterexample(g1, g2) is None and language_counterexample(g2, g1) is None


def subset_family(g):
    """Every start set ``I(xi)`` over words ``xi``, with a shortlex-minimal witness.

    Returns a dict ``mask -> word``.  The empty word realizes the full
    vertex set.  Layers of exact word length are advanced until the family
    of sets in a layer repeats, so every reachable set is found with its
    shortest, then lexicographically least, witness.
    """
    key = ("subset_family",)
    if key in g._cache:
        return g._cache[key]
    found = {g.all_mask: ()}
    layer = {g.all_mask: ()}
    seen_layers = {frozenset(layer)}
    while True:
        nxt = {}
        for mask, word in layer.items():
            for a in range(g.n_labels):
                p = g.backward(mask, a)
                if not p:
                    continue
                cand = (a,) + word
                if p not in nxt or cand < nxt[p]:
                    nxt[p] = cand
        for mask, word in nxt.items():
            if mask not in found:
                found[mask] = word
        sig = frozenset(nxt)
        if not nxt or sig in seen_layers:
            break
        seen_layers.add(sig)
        layer = nxt
    g._cache[key] = found
    return found


def word_types(g):
    """Enumerate the transition relations of all nonempty admissible words.

    A word's relation is a tuple ``r`` with ``r[s]`` the mask of vertices
    reachable from ``s`` along the word.  Returns a dict ``relation ->
    word`` where each word is the shortlex-least word with that relation.
    """
    key = ("word_types",)
    if key in g._cache:
        return g._cache[key]
    m = len(g.vertices)
    layer = {}
    for a in range(g.n_labels):
        rel = tuple(g._fwd[a][s] for s in range(m))
        if any(rel):
            layer.setdefault(rel, (a,))
    found = dict(layer)
    seen_layers = {frozenset(layer)}
    while layer:
        nxt = {}
        for rel, word in sorted(layer.items(), key=lambda kv: kv[1]):
            for a in range(g.n_labels):
                new = tuple(g.forward(r, a) if r else 0 for r in rel)
                if not any(new):
                    continue
                if new not in nxt:
                    nxt[new] = word + (a,)
        for rel, word in nxt.items():
            found.setdefault(rel, word)
        sig = frozenset(nxt)
        if sig in seen_layers:
            break
        seen_layers.add(sig)
        layer = nxt
    g._cache[key] = found
    return found


def relation_of(g, word):
    m = len(g.vertices)
    rel = tuple(1 << s for s in range(m))
    for a in word:
        rel = tuple(g.forward(r, a) if r else 0 for r in rel)
    return rel


def relation_start(rel):
    mask = 0
    for s, r in enumerate(rel):
        if r:
            mask |= 1 << s
    return mask


def compose(rel1, rel2):
    """Relation of ``uv`` given the relations of ``u`` and ``v``."""
    out = []
    for r in rel1:
        acc = 0
        for t in bits(r):
            acc |= rel2[t]
        out.append(acc)
    return tuple(out)


def _mask_name(g, mask):
    return "{" + ",".join(str(g.vertices[v]) for v in bits(mask)) + "}"


def left_subset_graph(g):
    """Left subset construction: vertices are the start sets of words.

    An edge ``P -a-> Q`` exists when ``P`` is the set of ``a``-predecessors
    of ``Q``.  Every vertex then has at most one incoming edge per label.
    """
    family = subset_family(g)
    masks = sorted(family, key=lambda m: (family[m], m))
    index = {m: i for i, m in enumerate(masks)}
    edges = []
    for q in masks:
        for a in range(g.n_labels):
            p = g.backward(q, a)
            if p:
                edges.append((index[p], a, index[q]))
    names = [_mask_name(g, m) for m in masks]
    return LabeledGraph(names, edges, g.n_labels).essential()


def merge_predecessor_equivalent(g):
    """Quotient of a left-resolving graph by equality of predecessor sets.

    Moore-style refinement on the reversed graph: two vertices stay together
    while, for each label, both lack an incoming edge or both have one from
    the same block.
    """
    m = len(g.vertices)
    src = [[-1] * g.n_labels for _ in range(m)]
    for s, a, t in g.edges:
        if src[t][a] != -1 and src[t][a] != s:
            raise InputError("graph is not left-resolving")
        src[t][a] = s
    block = [0] * m
    count = 1 if m else 0
    while True:
        keys = {}
        new = []
        for v in range(m):
            k = (block[v],) + tuple(block[x] if x >= 0 else -1 for x in src[v])
            new.append(keys.setdefault(k, len(keys)))
        if len(keys) == count:
            break
        block, count = new, len(keys)
    block = new
    first = {}
    for v in range(m):
        first.setdefault(block[v], v)
    order = sorted(first, key=first.get)
    renum = {b: i for i, b in enumerate(order)}
    names = [g.vertices[first[b]] for b in order]
    edges = [(renum[block[s]], a, renum[block[t]]) for s, a, t in g.edges]
    return LabeledGraph(names, edges, g.n_labels)
