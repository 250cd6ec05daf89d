"""Exact conjugacy checks for block codes and a bounded conjugacy search."""

import itertools
import logging
from dataclasses import dataclass

from ..errors import InputError, SearchSpaceTooLarge, UnsupportedPresentation
from ..graphs import language_counterexample
from ..language import admissible_words
from .codes import SlidingBlockCode, _window_states, image_graph
from .points import EventuallyPeriodicPoint, point_admissible

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConjugacyCheck:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _injective(h, S1):
    states, succ = _window_states(h, S1)
    label = [h.rule(len(h.head), b) for _, b in states]
    pairs = {(i, j) for i in range(len(states)) for j in range(len(states)) if label[i] == label[j]}
    nxt = {(i, j): [(u, v) for u in succ[i] for v in succ[j] if (u, v) in pairs] for i, j in pairs}
    alive = set(pairs)
    changed = True
    while changed:
        changed = False
        for s in list(alive):
            if not any(t in alive for t in nxt[s]):
                alive.discard(s)
                changed = True
    for i, j in sorted(alive):
        if states[i][1][0] != states[j][1][0]:
            return False
    return True


def verify_conjugacy(h, S1, S2):
    """Exact test that the block code ``h`` is a conjugacy ``X_1 -> X_2``.

    Checks image admissibility and surjectivity by comparing the language
    of the image presentation with ``S2``, and injectivity on one-sided
    points through the pair automaton of the code.
    """
    if S1.kind == "oracle" or S2.kind == "oracle":
        raise UnsupportedPresentation("conjugacy checks need graph presentations")
    if not h.shift_commuting:
        return ConjugacyCheck(False, "code has position-dependent head rules")
    missing = [w for w in admissible_words(S1, h.width) if w not in h.block_map]
    if missing:
        return ConjugacyCheck(False, f"block map undefined on {S1.alphabet.format(missing[0])}")
    if any(not 0 <= v < len(S2.alphabet) for v in h.block_map.values()):
        raise InputError("block map produces symbols outside the target alphabet")
    H, _, _ = image_graph(h, S1, len(S2.alphabet))
    bad = language_counterexample(H, S2.presentation)
    if bad is not None:
        return ConjugacyCheck(False, f"image word {S2.alphabet.format(bad)} is inadmissible")
    missed = language_counterexample(S2.presentation, H)
    if missed is not None:
        return ConjugacyCheck(False, f"not surjective: {S2.alphabet.format(missed)} has no preimage")
    if not _injective(h, S1):
        return ConjugacyCheck(False, "not injective")
    return ConjugacyCheck(True, "conjugacy")


def periodic_point_count(S, p):
    """Number of points with ``sigma^p x = x``."""
    return sum(1 for w in admissible_words(S, p)
               if point_admissible(S, EventuallyPeriodicPoint((), w)))


def obstructions(S1, S2, anticipation, max_k=12, max_period=6):
    """Invariants ruling out a conjugacy with the given anticipation."""
    found = []
    for k in range(1, max_k + 1):
        n2, n1 = len(admissible_words(S2, k)), len(admissible_words(S1, k + anticipation))
        if n2 > n1:
            found.append(f"|B_{k}(target)| = {n2} > |B_{k + anticipation}(source)| = {n1}")
            break
    for p in range(1, max_period + 1):
        c1, c2 = periodic_point_count(S1, p), periodic_point_count(S2, p)
        if c1 != c2:
            found.append(f"points of period dividing {p}: {c1} vs {c2}")
            break
    return found


@dataclass(frozen=True)
class SearchResult:
    code: SlidingBlockCode = None
    anticipation: int = None
    tried: int = 0
    obstructions: tuple = ()


def find_conjugacy(S1, S2, max_anticipation=2, cap=1 << 20):
    """Exhaustive search over block codes of anticipation ``<= max_anticipation``.

    Returns the first code (in enumeration order) passing
    :func:`verify_conjugacy`.  An empty result only excludes conjugacies
    within the bound.
    """
    if max_anticipation < 0:
        raise InputError("max_anticipation must be nonnegative")
    n2 = len(S2.alphabet)
    needed = {w[0] for w in admissible_words(S2, 1)}
    tried = 0
    notes = []
    for n in range(max_anticipation + 1):
        blocks = admissible_words(S1, n + 1)
        space = n2 ** len(blocks)
        if space > cap:
            raise SearchSpaceTooLarge(f"{space} block maps at anticipation {n} exceed cap {cap}")
        obs = obstructions(S1, S2, n)
        for o in obs:
            log.info("anticipation %d obstruction: %s", n, o)
            notes.append(f"anticipation {n}: {o}")
        for images in itertools.product(range(n2), repeat=len(blocks)):
            if not needed <= set(images):
                continue  # cannot be onto
            tried += 1
            h = SlidingBlockCode(n, dict(zip(blocks, images)))
            if verify_conjugacy(h, S1, S2):
                return SearchResult(h, n, tried, tuple(notes))
    return SearchResult(None, None, tried, tuple(notes))
