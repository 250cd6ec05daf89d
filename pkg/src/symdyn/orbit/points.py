"""Eventually periodic one-sided points ``u v v v ...``."""

from dataclasses import dataclass

from ..errors import InputError, OracleDepthExceeded


def _primitive_root(cycle):
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            return cycle[:d]
    return cycle


@dataclass(frozen=True)
class EventuallyPeriodicPoint:
    """The point ``prefix . cycle^infinity``, stored in normal form.

    The cycle is primitive and the prefix as short as possible, so two
    points are equal exactly when their fields are.
    """
    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        prefix = tuple(int(a) for a in self.prefix)
        cycle = tuple(int(a) for a in self.cycle)
        if not cycle:
            raise InputError("cycle must be nonempty")
        cycle = _primitive_root(cycle)
        while prefix and prefix[-1] == cycle[-1]:
            prefix = prefix[:-1]
            cycle = cycle[-1:] + cycle[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    @classmethod
    def periodic(cls, cycle):
        return cls((), tuple(cycle))

    def __getitem__(self, i):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def window(self, start, length):
        return tuple(self[i] for i in range(start, start + length))

    def shift(self, k=1):
        """``sigma^k`` of the point."""
        if k < 0:
            raise InputError("shift exponent must be nonnegative")
        if k <= len(self.prefix):
            return EventuallyPeriodicPoint(self.prefix[k:], self.cycle)
        r = (k - len(self.prefix)) % len(self.cycle)
        return EventuallyPeriodicPoint((), self.cycle[r:] + self.cycle[:r])

    @property
    def preperiod(self):
        return len(self.prefix)

    @property
    def period(self):
        return len(self.cycle)

    def orbit_size(self):
        """Number of distinct points ``sigma^i(x)``, ``i >= 0``."""
        return len(self.prefix) + len(self.cycle)

    def format(self, alphabet):
        u = alphabet.format(self.prefix)
        v = alphabet.format(self.cycle)
        if u and not alphabet.compact:
            u += "."  # keeps the prefix/cycle boundary readable for multi-letter symbols
        return f"{u}({v})^inf"

    def to_json(self, alphabet):
        return {"prefix": alphabet.format(self.prefix), "cycle": alphabet.format(self.cycle)}

    @classmethod
    def from_json(cls, doc, alphabet):
        try:
            return cls(alphabet.parse(doc.get("prefix", "")), alphabet.parse(doc["cycle"]))
        except (KeyError, AttributeError, TypeError):
            raise InputError(f"bad point document {doc!r}") from None


def shift_point(x):
    return x.shift(1)


def point_admissible(S, x):
    """Whether ``x`` lies in the one-sided shift space of ``S``.

    Exact for graph presentations: the set of vertices reachable after
    each full cycle is iterated until it repeats.  Oracle shifts are
    checked on the longest reliable prefix.
    """
    x = EventuallyPeriodicPoint(S.check_word(x.prefix), S.check_word(x.cycle))
    if S.kind == "oracle":
        depth = S.oracle.max_reliable_length
        if depth < len(x.prefix) + 2 * len(x.cycle):
            raise OracleDepthExceeded("oracle depth too small to check this point")
        return S.oracle(x.window(0, depth))
    g = S.presentation
    mask = g.end_set(x.prefix)
    seen = set()
    while mask and mask not in seen:
        seen.add(mask)
        mask = g.end_set(x.cycle, mask)
    return bool(mask)


def random_point(S, rng, max_prefix=4, max_cycle=6, tries=200):
    """A random admissible eventually periodic point of a graph-presented shift.

    A random walk of random length gives the prefix; the cycle is drawn by
    rejection sampling closed walks of a random length from the endpoint.
    """
    g = S.presentation
    out = {}
    for s, a, t in g.edges:
        out.setdefault(s, []).append((a, t))
    v = int(rng.integers(len(g)))
    prefix = []
    for _ in range(int(rng.integers(0, max_prefix + 1))):
        a, v = out[v][int(rng.integers(len(out[v])))]
        prefix.append(a)
    for _ in range(tries):
        c = int(rng.integers(1, max_cycle + 1))
        w, cycle = v, []
        for _ in range(c):
            a, w = out[w][int(rng.integers(len(out[w])))]
            cycle.append(a)
        if w == v:
            return EventuallyPeriodicPoint(tuple(prefix), tuple(cycle))
    # fall back to the first vertex repetition of a walk
    visited, labels = {v: 0}, []
    while True:
        a, v = out[v][int(rng.integers(len(out[v])))]
        labels.append(a)
        if v in visited:
            k = visited[v]
            return EventuallyPeriodicPoint(tuple(prefix) + tuple(labels[:k]), tuple(labels[k:]))
        visited[v] = len(labels)
