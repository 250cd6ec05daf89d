"""Independent brute-force references used as test oracles.

Nothing here touches the graph machinery of the package: languages are
given by explicit membership predicates and everything else is filtered
enumeration over all words.
"""

import functools
import itertools


def sft_member(matrix):
    def member(w):
        return all(matrix[a][b] for a, b in zip(w, w[1:]))
    return member


def even_member(w):
    """Every run of 1s with a 0 on both sides has even length."""
    s = "".join(map(str, w))
    inner = s.strip("1").split("0")
    return all(len(run) % 2 == 0 for run in inner[1:-1]) if "0" in s else True


@functools.lru_cache(maxsize=None)
def words(member, n_symbols, k):
    return tuple(w for w in itertools.product(range(n_symbols), repeat=k) if member(w))


@functools.lru_cache(maxsize=None)
def extendable(member, n_symbols, w, reach=8):
    """Whether ``w`` extends ``reach`` letters to the left and right inside the language."""
    left = [w]
    for _ in range(reach):
        left = [(a,) + u for u in left for a in range(n_symbols) if member((a,) + u)]
        if not left:
            return False
    right = [w]
    for _ in range(reach):
        right = [u + (a,) for u in right for a in range(n_symbols) if member(u + (a,))]
        if not right:
            return False
    return True


@functools.lru_cache(maxsize=None)
def language(member, n_symbols, k, reach=8):
    """Words of length k in the language of the two-sided shift (bi-extendable words)."""
    return tuple(w for w in words(member, n_symbols, k) if extendable(member, n_symbols, w, reach))


def predecessors(member, n_symbols, mu, l, reach=8):
    return tuple(nu for nu in language(member, n_symbols, l, reach)
                 if extendable(member, n_symbols, nu + tuple(mu), reach))


def is_sync(member, n_symbols, mu, l, max_xi=6, reach=8):
    base = predecessors(member, n_symbols, mu, l, reach)
    for k in range(1, max_xi + 1):
        for xi in words(member, n_symbols, k):
            w = tuple(mu) + xi
            if extendable(member, n_symbols, w, reach) and predecessors(member, n_symbols, w, l, reach) != base:
                return False
    return True


def graph_member(vertices, edges):
    """Membership predicate for words labeling a path in an explicit edge list."""
    @functools.lru_cache(maxsize=None)
    def member(w):
        current = set(vertices)
        for a in w:
            current = {t for s, b, t in edges if s in current and b == a}
            if not current:
                return False
        return True
    return member
