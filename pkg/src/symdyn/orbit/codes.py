"""Sliding block codes between one-sided shift spaces."""

from dataclasses import dataclass, field

from ..errors import InputError, UnsupportedPresentation
from ..graphs import LabeledGraph, bits
from ..language import admissible_words, is_admissible
from .points import EventuallyPeriodicPoint


@dataclass(frozen=True)
class SlidingBlockCode:
    """``(h x)_k = block_map[x_k ... x_{k+n}]`` with ``n = anticipation``.

    ``head`` optionally overrides the rule at the first ``len(head)``
    coordinates: ``head[k]`` is a block map used at position ``k`` only.
    Such codes no longer commute with the shift and model the
    position-dependent homeomorphisms used in eventual conjugacies.
    """
    anticipation: int
    block_map: dict = field(hash=False)
    head: tuple = field(default=(), hash=False)

    def __post_init__(self):
        if self.anticipation < 0:
            raise InputError("anticipation must be nonnegative")
        width = self.anticipation + 1
        for table in (self.block_map, *self.head):
            for w in table:
                if len(w) != width:
                    raise InputError(f"block {w} has length {len(w)}, expected {width}")

    @property
    def width(self):
        return self.anticipation + 1

    @property
    def shift_commuting(self):
        return not self.head

    def rule(self, position, block):
        table = self.head[position] if position < len(self.head) else self.block_map
        try:
            return table[block]
        except KeyError:
            raise InputError(f"block map undefined on {block}") from None

    def apply_word(self, w, start=0):
        """Image of a finite word read from coordinate ``start``; length ``|w| - n``."""
        n = self.anticipation
        return tuple(self.rule(start + k, tuple(w[k:k + n + 1])) for k in range(len(w) - n))

    def check_total(self, S):
        missing = [w for w in admissible_words(S, self.width) if w not in self.block_map]
        if missing:
            raise InputError(f"block map undefined on {missing[0]}")

    @classmethod
    def identity(cls, S):
        return cls(0, {(a,): a for a in range(len(S.alphabet))})

    @classmethod
    def higher_block_code(cls, S, n):
        """The canonical code onto ``higher_block(S, n)``: window of length ``n`` to its index."""
        blocks = admissible_words(S, n)
        return cls(n - 1, {w: i for i, w in enumerate(blocks)})

    def to_json(self, src, dst):
        def table(t):
            return {src.format(w): dst.symbols[a] for w, a in sorted(t.items())}
        out = {"anticipation": self.anticipation, "map": table(self.block_map)}
        if self.head:
            out["head"] = [table(t) for t in self.head]
        return out

    @classmethod
    def from_json(cls, doc, src, dst):
        try:
            n = int(doc["anticipation"])

            def table(t):
                return {src.parse(w): dst.index(a) for w, a in t.items()}
            return cls(n, table(doc["map"]), tuple(table(t) for t in doc.get("head", [])))
        except (KeyError, AttributeError, TypeError, ValueError) as exc:
            raise InputError(f"bad block code document: {exc}") from None


def apply_code(h, x):
    """Image of an eventually periodic point, again eventually periodic."""
    start = max(len(x.prefix), len(h.head))
    p = len(x.cycle)
    letters = h.apply_word(x.window(0, start + p + h.anticipation))
    return EventuallyPeriodicPoint(letters[:start], letters[start:])


def check_code_image(h, S1, S2, horizon=2):
    """First window of ``B_{n+1+horizon}(S1)`` whose image is inadmissible in ``S2``, or ``None``."""
    for w in admissible_words(S1, h.width + horizon):
        img = h.apply_word(w)
        if not is_admissible(S2, img):
            return w
    return None


def _window_states(h, S):
    """States ``(vertex, block)``: ``block`` labels a path leaving ``vertex``."""
    if S.kind == "oracle":
        raise UnsupportedPresentation("block code automata need a graph presentation")
    g = S.presentation
    width = h.width
    states = []
    for v in range(len(g)):
        for b in g.follower_words(1 << v, width):
            states.append((v, b))
    index = {s: i for i, s in enumerate(states)}
    succ = [[] for _ in states]
    for i, (v, b) in enumerate(states):
        for w in bits(g.forward(1 << v, b[0])):
            for c in range(g.n_labels):
                nb = b[1:] + (c,)
                j = index.get((w, nb))
                if j is not None:
                    succ[i].append(j)
    return states, succ


def image_graph(h, S1, n_labels):
    """Labeled graph presenting ``h(X_1)`` (shift-commuting codes only)."""
    if not h.shift_commuting:
        raise InputError("image graph needs a shift-commuting code")
    states, succ = _window_states(h, S1)
    edges = [(i, h.rule(len(h.head), b), j) for i, (_, b) in enumerate(states) for j in succ[i]]
    return LabeledGraph(range(len(states)), edges, n_labels).essential(), states, succ


def preimage(h, S1, y):
    """An eventually periodic ``x`` in ``X_1`` with ``h(x) = y``, or ``None``.

    Searches the finite automaton of states ``(window state, position in y)``
    where positions past the prefix of ``y`` (and past the head of ``h``)
    wrap around the cycle.
    """
    states, succ = _window_states(h, S1)
    base = max(len(y.prefix), len(h.head))
    per = len(y.cycle)

    def nxt_pos(p):
        p += 1
        return base + (p - base) % per if p >= base + per else p

    start = [(i, 0) for i, (_, b) in enumerate(states) if h.rule(0, b) == y[0]]
    parent = {s: None for s in start}
    order = list(start)
    k = 0
    while k < len(order):
        i, p = order[k]
        k += 1
        q = nxt_pos(p)
        for j in succ[i]:
            node = (j, q)
            if node not in parent and h.rule(q, states[j][1]) == y[q]:
                parent[node] = (i, p)
                order.append(node)
    # a reachable node on a cycle of the reachable subgraph gives an infinite path
    adj = {}
    for i, p in order:
        q = nxt_pos(p)
        adj[(i, p)] = [(j, q) for j in succ[i] if (j, q) in parent]
    for node in order:
        loop = _cycle_through(adj, node)
        if loop is None:
            continue
        stem = []
        cur = parent[node]
        while cur is not None:
            stem.append(cur)
            cur = parent[cur]
        stem.reverse()
        first = lambda s: states[s[0]][1][0]  # noqa: E731
        return EventuallyPeriodicPoint(tuple(first(s) for s in stem),
                                       tuple(first(s) for s in loop))
    return None


def _cycle_through(adj, node):
    """Nodes of a cycle ``node -> ... -> node`` (starting at ``node``), or ``None``."""
    parent = {node: None}
    stack = [node]
    while stack:
        cur = stack.pop()
        for nb in adj[cur]:
            if nb == node:
                path = [cur]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return list(reversed(path))
            if nb not in parent:
                parent[nb] = cur
                stack.append(nb)
    return None
