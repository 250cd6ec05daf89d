"""The minimal lambda-graph system of a finitely presented subshift.

Level ``l`` vertices are the ``l``-past equivalence classes, identified by
their predecessor signatures.  Everything needed to wire the levels follows
from signatures alone: if ``nu`` has level-``(l+1)`` signature ``P`` then
``alpha nu`` has level-``l`` signature ``{eta : eta alpha in P}`` and ``nu``
itself has level-``l`` signature ``{suffixes of P of length l}``.  So the
system is assembled class by class without enumerating member words.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NotIrreducible, TruncationTooShallow, UnsupportedPresentation
from .language import Verdict, is_irreducible
from .sync import class_signatures, is_lambda_synchronizing

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Vertex:
    id: str
    level: int
    representative: tuple
    signature: tuple


@dataclass(frozen=True)
class LambdaGraphSystem:
    """Levels ``0..truncation`` of a labeled Bratteli diagram with ``iota`` maps.

    ``edges`` holds ``(l, src, label, dst)`` with ``src`` an index into
    ``levels[l]`` and ``dst`` an index into ``levels[l + 1]``.
    ``iota[l][j]`` is the index in ``levels[l]`` of the image of vertex
    ``j`` of ``levels[l + 1]``.
    """
    alphabet: object
    levels: tuple
    edges: tuple
    iota: tuple
    truncation: int
    normality: Verdict = Verdict.UNKNOWN

    def out_edges(self, l, i):
        return [(a, j) for (m, s, a, j) in self.edges if m == l and s == i]

    def to_json(self):
        fmt = self.alphabet.format
        return {
            "levels": [{"l": l, "vertices": [
                {"id": v.id, "representative": fmt(v.representative),
                 "signature": [fmt(w) for w in v.signature]} for v in verts]}
                for l, verts in enumerate(self.levels)],
            "edges": [{"l": l, "src": self.levels[l][s].id, "label": self.alphabet.symbols[a],
                       "dst": self.levels[l + 1][t].id} for l, s, a, t in self.edges],
            "iota": [{"l": l, "child": self.levels[l + 1][j].id, "parent": self.levels[l][i].id}
                     for l, row in enumerate(self.iota) for j, i in enumerate(row)],
            "truncation": self.truncation,
        }


@dataclass(frozen=True)
class TransitionMatrixSystem:
    """``A[l]`` has shape ``(|V_l|, N, |V_{l+1}|)``; ``I[l]`` has shape ``(|V_l|, |V_{l+1}|)``."""
    A: tuple
    I: tuple

    def to_json(self):
        return {
            "A": [{"shape": list(a.shape), "data": a.tolist()} for a in self.A],
            "I": [{"shape": list(m.shape), "data": m.tolist()} for m in self.I],
        }


@dataclass(frozen=True)
class ConditionIResult:
    verdict: Verdict
    certified_levels: tuple
    witness: str = None


@dataclass(frozen=True)
class ProjectionExpansion:
    level: int
    vertex: int
    factors: tuple  # ((word, "positive" | "complement"), ...)


def build_minimal_lgs(S, L=8, depth=4):
    """Build the minimal lambda-graph system of ``S`` up to level ``L``."""
    if S.kind == "oracle":
        raise UnsupportedPresentation("the minimal lambda-graph system needs a graph presentation")
    if L < 0:
        raise InputError("L must be nonnegative")
    if is_irreducible(S) is Verdict.REFUTED:
        raise NotIrreducible("shift is not irreducible")
    normality = is_lambda_synchronizing(S, min(depth, L)).status
    if normality is not Verdict.PROVEN:
        log.warning("lambda-synchronization is %s; building anyway", normality)

    levels = []
    index = []
    for l in range(L + 1):
        classes = class_signatures(S, l)
        verts = tuple(Vertex(f"L{l}V{i}", l, rep, sig) for i, (rep, sig) in enumerate(classes))
        levels.append(verts)
        index.append({v.signature: i for i, v in enumerate(verts)})

    edges, iota = [], []
    for l in range(L):
        row = []
        for j, v in enumerate(levels[l + 1]):
            parent = tuple(sorted({w[1:] for w in v.signature}))
            row.append(index[l][parent])
            for a in range(len(S.alphabet)):
                src = tuple(sorted({w[:-1] for w in v.signature if w[-1] == a}))
                if src:
                    edges.append((l, index[l][src], a, j))
        iota.append(tuple(row))
    return LambdaGraphSystem(S.alphabet, tuple(levels), tuple(sorted(edges)), tuple(iota),
                             L, normality)


def transition_matrices(G):
    n = len(G.alphabet)
    A, I = [], []
    for l in range(G.truncation):
        a = np.zeros((len(G.levels[l]), n, len(G.levels[l + 1])), dtype=np.uint8)
        for m, s, lab, t in G.edges:
            if m == l:
                a[s, lab, t] = 1
        i_mat = np.zeros((len(G.levels[l]), len(G.levels[l + 1])), dtype=np.uint8)
        for j, i in enumerate(G.iota[l]):
            i_mat[i, j] = 1
        A.append(a)
        I.append(i_mat)
    return TransitionMatrixSystem(tuple(A), tuple(I))


def check_left_resolving(G):
    seen = set()
    for l, _, a, t in G.edges:
        if (l, a, t) in seen:
            return False
        seen.add((l, a, t))
    return True


def path_predecessors(G):
    """Per level, the sorted label words of paths from level 0 into each vertex."""
    top = len(G.levels[0])
    sets = [[{()} for _ in range(top)]]
    for l in range(G.truncation):
        nxt = [set() for _ in G.levels[l + 1]]
        for m, s, a, t in G.edges:
            if m == l:
                nxt[t].update(w + (a,) for w in sets[l][s])
        sets.append(nxt)
    return [[tuple(sorted(s)) for s in level] for level in sets]


def check_predecessor_separated(G):
    for level in path_predecessors(G):
        if len(set(level)) != len(level):
            return False
    return True


def check_compatibility(T):
    """``I_{l,l+1} A_{l+1,l+2}(alpha) = A_{l,l+1}(alpha) I_{l+1,l+2}`` for all ``l`` and ``alpha``."""
    for l in range(len(T.A) - 1):
        for a in range(T.A[l].shape[1]):
            lhs = T.I[l].astype(np.int64) @ T.A[l + 1][:, a, :].astype(np.int64)
            rhs = T.A[l][:, a, :].astype(np.int64) @ T.I[l + 1].astype(np.int64)
            if not np.array_equal(lhs, rhs):
                return False
    return True


def check_condition_I(G, horizon=3):
    """Search for two label-distinct forward paths of equal length ``<= horizon``.

    Vertices at levels ``0..truncation-horizon`` are examined, and that
    range is reported as certified.  A vertex whose forward paths all the
    way to the truncation form a single chain refutes the condition.
    """
    if horizon < 1:
        raise InputError("horizon must be >= 1")
    last = G.truncation - horizon
    if last < 0:
        raise TruncationTooShallow(f"horizon {horizon} exceeds truncation {G.truncation}")
    out = {}
    for l, s, a, t in G.edges:
        out.setdefault((l, s), []).append((a, t))

    def labels_from(l, i, steps):
        words = {((), i)}
        for k in range(steps):
            words = {(w + (a,), t) for w, j in words for a, t in out.get((l + k, j), [])}
        return {w for w, _ in words}

    def single_chain(l, i):
        for k in range(l, G.truncation):
            nxt = out.get((k, i), [])
            if len(nxt) != 1:
                return False
            i = nxt[0][1]
        return True

    pending = None
    for l in range(last + 1):
        for i, v in enumerate(G.levels[l]):
            if any(len(labels_from(l, i, h)) >= 2 for h in range(1, horizon + 1)):
                continue
            if single_chain(l, i):
                return ConditionIResult(Verdict.REFUTED, (0, last), v.id)
            pending = pending or v.id
    if pending:
        return ConditionIResult(Verdict.UNKNOWN, (0, last), pending)
    return ConditionIResult(Verdict.PROVEN, (0, last))


def presented_words(G, k):
    """Label sequences of ``k``-step paths descending from level 0."""
    if k > G.truncation:
        raise TruncationTooShallow(f"k={k} exceeds truncation {G.truncation}")
    if k < 0:
        raise InputError("k must be nonnegative")
    ends = {((), i) for i in range(len(G.levels[0]))}
    for l in range(k):
        ends = {(w + (a,), t) for w, s in ends for a, t in G.out_edges(l, s)}
    return tuple(sorted({w for w, _ in ends}))


def projection_expansion(G, l, i):
    """Sign pattern writing the projection of vertex ``i`` at level ``l`` in word generators."""
    if not 0 <= l <= G.truncation:
        raise TruncationTooShallow(f"level {l} outside 0..{G.truncation}")
    if not 0 <= i < len(G.levels[l]):
        raise InputError(f"vertex index {i} out of range at level {l}")
    signature = set(path_predecessors(G)[l][i])
    factors = tuple((mu, "positive" if mu in signature else "complement")
                    for mu in presented_words(G, l))
    return ProjectionExpansion(l, i, factors)
