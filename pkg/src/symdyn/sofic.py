"""Left Fischer covers and the Cuntz-Krieger data they carry."""

from dataclasses import dataclass

import numpy as np

from .errors import EntryOverflow, InputError, NotIrreducible, TrivialShift, UnsupportedPresentation
from .graphs import LabeledGraph, language_counterexample, left_subset_graph, merge_predecessor_equivalent
from .language import Verdict, is_irreducible, is_nontrivial
from .orbit.points import EventuallyPeriodicPoint


def determinize_left(g):
    """Left-resolving presentation of the same shift by the left subset construction."""
    if g.is_left_resolving():
        return g
    return left_subset_graph(g)


def minimize(g):
    """Merge vertices with equal predecessor sets (``g`` must be left-resolving)."""
    if not g.is_left_resolving():
        raise InputError("minimize needs a left-resolving graph")
    return merge_predecessor_equivalent(g).essential()


def canonical_form(g):
    """Relabel vertices ``v1..vN`` ordered by their predecessor words of length ``N``.

    Predecessor-separated graphs have pairwise distinct signatures at
    length ``N``, so the result is a canonical form for isomorphism.
    Returns the relabeled graph and the signature list.
    """
    n = len(g)
    sigs = [g.predecessor_words(1 << v, n) for v in range(n)]
    order = sorted(range(n), key=lambda v: sigs[v])
    pos = {v: i for i, v in enumerate(order)}
    edges = [(pos[s], a, pos[t]) for s, a, t in g.edges]
    names = [f"v{i + 1}" for i in range(n)]
    return LabeledGraph(names, edges, g.n_labels), [sigs[v] for v in order]


@dataclass(frozen=True)
class FischerCover:
    alphabet: object
    graph: LabeledGraph
    signatures: tuple  # predecessor words of length |V| per vertex, in vertex order

    @property
    def vertices(self):
        return self.graph.vertices

    def to_json(self):
        fmt = self.alphabet.format
        g = self.graph
        return {
            "vertices": [{"id": v, "signature": [fmt(w) for w in sig]}
                         for v, sig in zip(g.vertices, self.signatures)],
            "edges": [[g.vertices[s], self.alphabet.symbols[a], g.vertices[t]]
                      for s, a, t in g.edges],
        }


def fischer_cover(S):
    """Left Fischer cover of an irreducible nontrivial sofic shift.

    The minimized left-resolving presentation may carry transient parts;
    the cover is its source component, i.e. the strongly connected
    component that no other component feeds into and that presents the
    whole language.
    """
    if S.kind == "oracle":
        raise UnsupportedPresentation("Fischer covers need a graph presentation")
    if is_irreducible(S) is not Verdict.PROVEN:
        raise NotIrreducible("shift is not irreducible")
    if not is_nontrivial(S):
        raise TrivialShift("shift space is finite")
    g = minimize(determinize_left(S.presentation))
    cover = None
    for comp in g.source_components():
        sub = g.subgraph(comp).essential()
        if len(sub) and language_counterexample(S.presentation, sub) is None:
            cover = sub
            break
    if cover is None:  # pragma: no cover - irreducibility guarantees a component
        raise NotIrreducible("no strongly connected component carries the language")
    cover = minimize(cover)
    graph, sigs = canonical_form(cover)
    return FischerCover(S.alphabet, graph, tuple(sigs))


def cover_is_valid(F):
    """Structural predicates of a Fischer cover: left-resolving, separated, irreducible."""
    g = F.graph
    n = len(g)
    sigs = [g.predecessor_words(1 << v, n) for v in range(n)]
    return g.is_left_resolving() and len(set(sigs)) == n and g.is_strongly_connected()


@dataclass(frozen=True)
class HatMatrix:
    alphabet_hat: tuple  # ((symbol index, vertex index), ...)
    matrix: np.ndarray

    def to_json(self, F):
        return {"alphabet_hat": [[F.alphabet.symbols[a], F.vertices[i]] for a, i in self.alphabet_hat],
                "matrix": self.matrix.tolist()}


def hat_alphabet(F):
    """Pairs ``(alpha, i)`` with an ``alpha``-labeled edge into vertex ``i``, sorted."""
    return tuple(sorted({(a, t) for _, a, t in F.graph.edges}))


def _edge_tensor(F):
    n, m = len(F.graph), len(F.alphabet)
    A = np.zeros((n, m, n), dtype=np.int64)
    for s, a, t in F.graph.edges:
        A[s, a, t] += 1
    return A


def _irreducible(mat):
    n = mat.shape[0]
    reach = (mat > 0).astype(np.int64) + np.eye(n, dtype=np.int64)
    power = np.linalg.matrix_power(reach, max(n - 1, 1))
    return bool((power > 0).all())


def hat_matrix(F):
    """``A_hat((a,i),(b,j)) = sum_k A(k,a,i) A(i,b,j)``."""
    A = _edge_tensor(F)
    hat = hat_alphabet(F)
    into = A.sum(axis=0)  # into[a, i] = sum_k A(k, a, i)
    mat = np.zeros((len(hat), len(hat)), dtype=np.int64)
    for r, (a, i) in enumerate(hat):
        for c, (b, j) in enumerate(hat):
            mat[r, c] = into[a, i] * A[i, b, j]
    if (mat > 1).any():
        raise EntryOverflow("A_hat has entries above 1; the cover is not left-resolving")
    if not _irreducible(mat):
        raise NotIrreducible("A_hat is not irreducible")
    return HatMatrix(hat, mat.astype(np.uint8))


def factor_map_apply(F, xhat):
    """Drop the vertex coordinate of a point of ``X_{A_hat}``.

    ``xhat`` uses indices into :func:`hat_alphabet`.  Raises
    :class:`InputError` if the point is not admissible for ``A_hat``.
    """
    H = hat_matrix(F)
    size = len(H.alphabet_hat)
    seq = xhat.prefix + xhat.cycle + xhat.cycle[:1]
    if any(not 0 <= s < size for s in seq):
        raise InputError("hat symbol out of range")
    for s, t in zip(seq, seq[1:]):
        if not H.matrix[s, t]:
            raise InputError(f"transition {H.alphabet_hat[s]} -> {H.alphabet_hat[t]} not allowed")

    def pi(p):
        return EventuallyPeriodicPoint(tuple(H.alphabet_hat[s][0] for s in p.prefix),
                                       tuple(H.alphabet_hat[s][0] for s in p.cycle))

    x = pi(xhat)
    if pi(xhat.shift(1)) != x.shift(1):  # pragma: no cover - structural
        raise AssertionError("factor map failed to intertwine the shifts")
    return x


def export_ck_relations(F):
    """Generators and relations of the Cuntz-Krieger presentation as plain data."""
    A = _edge_tensor(F)
    sym = F.alphabet.symbols
    verts = F.vertices
    n = len(verts)
    hat = hat_alphabet(F)

    def S(a):
        return f"S_{sym[a]}"

    def E(i):
        return f"E_{verts[i]}"

    def Shat(a, i):
        return f"S_({sym[a]},{verts[i]})"

    relations = [
        {"kind": "sum_to_one", "data": {"terms": [E(i) for i in range(n)]}},
        {"kind": "sum_to_one", "data": {"terms": [f"{S(a)} {S(a)}^*" for a in range(len(sym))]}},
    ]
    for a in range(len(sym)):
        for i in range(n):
            relations.append({"kind": "commute", "data": {"left": f"{S(a)} {S(a)}^*",
                                                          "right": E(i)}})
    for a in range(len(sym)):
        for i in range(n):
            relations.append({"kind": "transition", "data": {
                "lhs": f"{S(a)}^* {E(i)} {S(a)}",
                "rhs": [E(j) for j in range(n) if A[i, a, j]],
            }})
    dictionary = [{"generator": Shat(a, i), "equals": f"{S(a)} {E(i)}"} for a, i in hat]
    symbol_sums = [{"generator": S(a), "equals": [Shat(b, i) for b, i in hat if b == a]}
                   for a in range(len(sym))]
    expansion = [{"projection": E(i),
                  "equals": [f"{Shat(b, j)} {Shat(b, j)}^*" for b, j in hat if A[i, b, j]]}
                 for i in range(n)]
    return {
        "generators": {"S": [S(a) for a in range(len(sym))], "E": [E(i) for i in range(n)],
                       "S_hat": [Shat(a, i) for a, i in hat]},
        "relations": relations,
        "hat_dictionary": dictionary,
        "symbol_sums": symbol_sums,
        "projection_expansion": expansion,
    }
