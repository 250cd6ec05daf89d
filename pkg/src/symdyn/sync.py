"""Synchronizing words, normality and past equivalence.

For finitely presented shifts every question here reduces to finite data.
A word's predecessor set ``Gamma_l^-`` only depends on its start set in
the presentation, and the start set of ``mu xi`` only depends on the
transition relation of ``mu`` and the start set of ``xi``.  Both ranges
are finite (see :func:`symdyn.graphs.word_types` and
:func:`symdyn.graphs.subset_family`), so the quantifier over all followers
``xi`` collapses to a loop over finitely many start sets.
"""

from dataclasses import dataclass, field

from .errors import (HorizonTooSmall, InputError, NotIrreducible,
                     OracleDepthExceeded, UnsupportedPresentation)
from .graphs import compose, relation_of, relation_start, subset_family, word_types
from .language import (Verdict, _require_admissible, admissible_words, is_admissible,
                       is_irreducible, predecessor_set)


def shortlex(word):
    return (len(word), word)


@dataclass(frozen=True)
class SyncVerdict:
    status: Verdict
    witness: tuple = None
    depth_used: int = 0
    level: int = None

    @property
    def proven(self):
        return self.status is Verdict.PROVEN

    def to_json(self, alphabet):
        wit = self.witness
        if wit is not None:
            wit = alphabet.format(wit)
        out = {"status": str(self.status), "witness": wit, "depth_used": self.depth_used}
        if self.level is not None:
            out["level"] = self.level
        return out


@dataclass(frozen=True)
class SyncWords:
    """``proven`` words, plus words whose status an oracle left open."""
    proven: tuple
    unknown: tuple = ()


@dataclass(frozen=True)
class PastClass:
    level: int
    representative: tuple
    members: tuple
    signature: tuple = field(repr=False)


# --------------------------------------------------------------------------
# relation-level machinery for graph presentations
# --------------------------------------------------------------------------

def _start_through(rel, target):
    """Start set of ``mu xi`` from the relation of ``mu`` and ``I(xi)``."""
    mask = 0
    for s, r in enumerate(rel):
        if r & target:
            mask |= 1 << s
    return mask


def _relation_sync(g, rel, l):
    """``(ok, witness)`` for the word type ``rel`` at level ``l``.

    The witness is the shortlex-least follower ``xi`` breaking the
    predecessor set, or ``None``.
    """
    key = ("sync", rel, l)
    if key in g._cache:
        return g._cache[key]
    base = g.predecessor_words(relation_start(rel), l)
    bad = []
    for target, xi in subset_family(g).items():
        start = _start_through(rel, target)
        if start and g.predecessor_words(start, l) != base:
            bad.append(xi)
    result = (not bad, min(bad, key=shortlex) if bad else None)
    g._cache[key] = result
    return result


def _sync_types(g, l):
    """Map signature -> shortlex-least word, over all ``l``-synchronizing word types."""
    key = ("sync_types", l)
    if key in g._cache:
        return g._cache[key]
    out = {}
    for rel, word in word_types(g).items():
        if l > 0 and not _relation_sync(g, rel, l)[0]:
            continue
        sig = g.predecessor_words(relation_start(rel), l)
        if sig not in out or shortlex(word) < shortlex(out[sig]):
            out[sig] = word
    g._cache[key] = out
    return out


def class_signatures(S, l):
    """Signatures of all ``l``-past equivalence classes with their representatives.

    Exact for finitely presented shifts.  Returned as a list of
    ``(representative, signature)`` sorted by representative.
    """
    if S.kind == "oracle":
        raise UnsupportedPresentation("past equivalence classes need a graph presentation")
    if l < 0:
        raise InputError("l must be nonnegative")
    found = _sync_types(S.presentation, l)
    return sorted(((w, sig) for sig, w in found.items()), key=lambda p: shortlex(p[0]))


def required_horizon(S, l):
    """Least ``max_len`` at which every ``l``-past class has a member."""
    return max(len(w) for w, _ in class_signatures(S, l))


# --------------------------------------------------------------------------
# public operations
# --------------------------------------------------------------------------

def is_l_synchronizing(S, mu, l, depth=8):
    """Decide whether ``Gamma_l^-(mu xi) = Gamma_l^-(mu)`` for every follower ``xi``.

    Exact for SFT and sofic presentations; ``depth_used`` then reports the
    number of start sets checked.  Oracle checks run over followers of
    length ``<= depth`` and can only refute, so passing gives ``unknown``.
    """
    mu = _require_admissible(S, mu)
    if l < 0:
        raise InputError("l must be nonnegative")
    if l == 0:
        return SyncVerdict(Verdict.PROVEN, None, 0, 0)
    if S.kind != "oracle":
        g = S.presentation
        ok, witness = _relation_sync(g, relation_of(g, mu), l)
        used = len(subset_family(g))
        return SyncVerdict(Verdict.PROVEN if ok else Verdict.REFUTED, witness, used, l)
    limit = S.oracle.max_reliable_length - l - len(mu)
    depth = min(depth, limit)
    if depth < 0:
        raise OracleDepthExceeded("oracle depth too small to read Gamma_l^-(mu)")
    base = predecessor_set(S, mu, l)
    for k in range(1, depth + 1):
        for xi in admissible_words(S, k):
            if is_admissible(S, mu + xi) and predecessor_set(S, mu + xi, l) != base:
                return SyncVerdict(Verdict.REFUTED, xi, k, l)
    return SyncVerdict(Verdict.UNKNOWN, None, depth, l)


def synchronizing_words(S, l, max_len, depth=8):
    """Nonempty ``l``-synchronizing words of length ``<= max_len`` in shortlex order."""
    if max_len < 1:
        raise InputError("max_len must be >= 1")
    proven, unknown = [], []
    for k in range(1, max_len + 1):
        for w in admissible_words(S, k):
            v = is_l_synchronizing(S, w, l, depth)
            if v.status is Verdict.PROVEN:
                proven.append(w)
            elif v.status is Verdict.UNKNOWN:
                unknown.append(w)
    return SyncWords(tuple(proven), tuple(unknown))


def is_lambda_synchronizing(S, depth=4):
    """Normality check: for ``nu`` in ``B_l`` and ``l <= k <= depth`` find ``mu in S_k``
    with ``nu mu in S_{k-l}``.

    For graph presentations ``mu`` ranges over all word types, so a failure
    is a genuine refutation with witness ``nu`` and ``level = k``.  Oracle
    searches are bounded and report ``unknown`` either way; a failing pair
    is still surfaced as the witness.
    """
    if depth < 0:
        raise InputError("depth must be nonnegative")
    if is_irreducible(S, max(depth, 1)) is Verdict.REFUTED:
        raise NotIrreducible("shift is not irreducible")
    if S.kind != "oracle":
        g = S.presentation
        types = sorted(word_types(g).items(), key=lambda kv: shortlex(kv[1]))
        for k in range(depth + 1):
            sync_k = [rel for rel, _ in types if k == 0 or _relation_sync(g, rel, k)[0]]
            for l in range(k + 1):
                for nu in admissible_words(S, l):
                    rel_nu = relation_of(g, nu)
                    if not any(_extends_sync(g, rel_nu, rel, k - l) for rel in sync_k):
                        return SyncVerdict(Verdict.REFUTED, nu, depth, k)
        return SyncVerdict(Verdict.PROVEN, None, depth, depth)
    limit = S.oracle.max_reliable_length
    for k in range(depth + 1):
        for l in range(k + 1):
            for nu in admissible_words(S, l):
                found = False
                for m in range(1, depth + 1):
                    if l + m + k > limit:
                        break
                    for mu in admissible_words(S, m):
                        if (is_admissible(S, nu + mu)
                                and is_l_synchronizing(S, mu, k, depth).status is not Verdict.REFUTED
                                and is_l_synchronizing(S, nu + mu, k - l, depth).status
                                is not Verdict.REFUTED):
                            found = True
                            break
                    if found:
                        break
                if not found:
                    return SyncVerdict(Verdict.UNKNOWN, nu, depth, k)
    return SyncVerdict(Verdict.UNKNOWN, None, depth, depth)


def _extends_sync(g, rel_nu, rel_mu, level):
    joined = compose(rel_nu, rel_mu)
    if not any(joined):
        return False
    return level == 0 or _relation_sync(g, joined, level)[0]


def past_equivalence_classes(S, l, max_len=None):
    """Partition ``S_l`` (words up to ``max_len``) by ``Gamma_l^-``.

    ``max_len`` defaults to the least horizon realizing every class;
    a smaller value raises :class:`HorizonTooSmall`.
    """
    reps = class_signatures(S, l)
    need = max(len(w) for w, _ in reps)
    if max_len is None:
        max_len = need
    if max_len < need:
        raise HorizonTooSmall(need, max_len)
    g = S.presentation
    groups = {sig: [] for _, sig in reps}
    for k in range(1, max_len + 1):
        for w in admissible_words(S, k):
            rel = relation_of(g, w)
            if l == 0 or _relation_sync(g, rel, l)[0]:
                groups[g.predecessor_words(relation_start(rel), l)].append(w)
    return [PastClass(l, rep, tuple(groups[sig]), sig) for rep, sig in reps]
