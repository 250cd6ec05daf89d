"""Locally constant potentials, ergodic sums, groupoid cocycles and the Psi transform."""

from dataclasses import dataclass, field

import numpy as np

from .. import _kernels
from ..errors import DepthOverflow, InputError
from ..language import admissible_words
from .codes import apply_code

DENSE_LIMIT = 1 << 20
DEPTH_CAP = 16


@dataclass(frozen=True)
class CylinderPotential:
    """Integer function ``f(x) = table[x_0 ... x_{d-1}]`` on a one-sided shift.

    ``table`` maps every admissible word of length ``depth`` to an integer;
    ``n_symbols`` is the alphabet size of the shift it lives on.
    """
    depth: int
    table: dict = field(hash=False)
    n_symbols: int = 2

    def __post_init__(self):
        if self.depth < 1:
            raise InputError("potential depth must be >= 1")
        for w, v in self.table.items():
            if len(w) != self.depth:
                raise InputError(f"cylinder {w} does not have length {self.depth}")
            if int(v) != v:
                raise InputError("potential values must be integers")

    def __call__(self, window):
        w = tuple(window[:self.depth])
        try:
            return self.table[w]
        except KeyError:
            raise InputError(f"potential undefined on cylinder {w}") from None

    @property
    def max_value(self):
        return max(self.table.values(), default=0)

    @property
    def min_value(self):
        return min(self.table.values(), default=0)

    def dense(self):
        """Lookup array indexed by base-``n_symbols`` window codes, or ``None`` if too large."""
        size = self.n_symbols ** self.depth
        if size > DENSE_LIMIT:
            return None
        arr = np.zeros(size, dtype=np.int64)
        for w, v in self.table.items():
            code = 0
            for a in w:
                code = code * self.n_symbols + a
            arr[code] = v
        return arr

    def lift(self, S, depth):
        """The same function tabulated on ``B_depth(S)``."""
        if depth < self.depth:
            raise InputError("cannot lift to a smaller depth")
        return CylinderPotential(depth, {w: self(w) for w in admissible_words(S, depth)},
                                 self.n_symbols)

    def agrees_with(self, other, S):
        depth = max(self.depth, other.depth)
        return all(self(w) == other(w) for w in admissible_words(S, depth))

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, S, c):
        return cls(1, {w: int(c) for w in admissible_words(S, 1)}, len(S.alphabet))

    @classmethod
    def indicator(cls, S, word):
        word = tuple(word)
        return cls(len(word), {w: int(w == word) for w in admissible_words(S, len(word))},
                   len(S.alphabet))

    @classmethod
    def from_function(cls, S, depth, fn):
        return cls(depth, {w: int(fn(w)) for w in admissible_words(S, depth)}, len(S.alphabet))

    @classmethod
    def random(cls, S, depth, rng, low=-3, high=3):
        words = admissible_words(S, depth)
        vals = rng.integers(low, high + 1, size=len(words))
        return cls(depth, {w: int(v) for w, v in zip(words, vals)}, len(S.alphabet))

    def to_json(self, alphabet):
        return {"depth": self.depth,
                "table": {alphabet.format(w): int(v) for w, v in sorted(self.table.items())}}

    @classmethod
    def from_json(cls, doc, alphabet):
        try:
            depth = int(doc["depth"])
            table = {alphabet.parse(w): int(v) for w, v in doc["table"].items()}
        except (KeyError, AttributeError, TypeError, ValueError) as exc:
            raise InputError(f"bad potential document: {exc}") from None
        return cls(depth, table, len(alphabet))


def ergodic_sums(f, x, n):
    """Array ``P`` of length ``n + 1`` with ``P[m] = f^m(x)``."""
    if n < 0:
        raise InputError("n must be nonnegative")
    seq = np.asarray(x.window(0, n + f.depth - 1), dtype=np.int64)
    table = f.dense()
    if table is not None:
        return _kernels.potential_prefix(seq, f.depth, f.n_symbols, table)
    out = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        out[i + 1] = out[i] + f(tuple(seq[i:i + f.depth]))
    return out


def ergodic_sum(f, x, n):
    """``f^n(x) = sum_{i<n} f(sigma^i x)``; zero for ``n = 0``."""
    return int(ergodic_sums(f, x, n)[n])


@dataclass(frozen=True)
class GroupoidElement:
    """``(x, p - q, z)`` with the witnessing exponents, requires ``sigma^p x = sigma^q z``."""
    x: object
    z: object
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise InputError("groupoid exponents must be nonnegative")
        if self.x.shift(self.p) != self.z.shift(self.q):
            raise InputError("sigma^p(x) != sigma^q(z); not a groupoid element")

    @property
    def lag(self):
        return self.p - self.q

    def reindex(self, r):
        """Same element written with exponents ``(p + r, q + r)``."""
        return GroupoidElement(self.x, self.z, self.p + r, self.q + r)

    def inverse(self):
        return GroupoidElement(self.z, self.x, self.q, self.p)


def compose(g1, g2):
    """Product ``(x, n, y)(y, m, z) = (x, n + m, z)``."""
    if g1.z != g2.x:
        raise InputError("groupoid elements are not composable")
    return GroupoidElement(g1.x, g2.z, g1.p + g2.p, g1.q + g2.q)


def groupoid_cocycle(f, g):
    """``f^p(x) - f^q(z)``; independent of the chosen exponents."""
    return ergodic_sum(f, g.x, g.p) - ergodic_sum(f, g.z, g.q)


def groupoid_map(D, g):
    """Image of ``g`` under the groupoid isomorphism induced by the cocycle data.

    Exponents ``(l1^p(x) + k1^q(z), l1^q(z) + k1^p(x))`` realize the lag
    ``c1^p(x) - c1^q(z)`` with ``c1 = l1 - k1``.
    """
    hx, hz = apply_code(D.h, g.x), apply_code(D.h, g.z)
    p = ergodic_sum(D.l1, g.x, g.p) + ergodic_sum(D.k1, g.z, g.q)
    q = ergodic_sum(D.l1, g.z, g.q) + ergodic_sum(D.k1, g.x, g.p)
    return GroupoidElement(hx, hz, p, q)


def psi_value(D, f, a):
    """``Psi(f)(a)`` evaluated on a point with inclusive upper indices."""
    l, k = D.l1(a.window(0, D.l1.depth)), D.k1(a.window(0, D.k1.depth))
    return (ergodic_sum(f, apply_code(D.h, a), l + 1)
            - ergodic_sum(f, apply_code(D.h, a.shift(1)), k + 1))


def psi_depth(D, f):
    n = D.h.anticipation
    return max(f.depth + n + D.l1.max_value + D.k1.max_value + 1, D.l1.depth, D.k1.depth)


def psi_transform(D, f, S1, cap=DEPTH_CAP):
    """Tabulate ``Psi(f)`` exactly on cylinders of the conservative depth ``d'``."""
    depth = psi_depth(D, f)
    if depth > cap:
        raise DepthOverflow(f"Psi(f) needs depth {depth} > cap {cap}")
    h, df = D.h, f.depth
    table = {}
    for w in admissible_words(S1, depth):
        l, k = D.l1(w), D.k1(w)
        hw = h.apply_word(w)
        hsw = h.apply_word(w[1:])
        s1 = sum(f(hw[i:i + df]) for i in range(l + 1))
        s2 = sum(f(hsw[j:j + df]) for j in range(k + 1))
        table[w] = s1 - s2
    return CylinderPotential(depth, table, len(S1.alphabet))


def compose_potential(f, h, S1):
    """``f o h`` as a cylinder potential on ``S1``."""
    depth = f.depth + h.anticipation
    return CylinderPotential(depth, {w: f(h.apply_word(w)) for w in admissible_words(S1, depth)},
                             len(S1.alphabet))
