"""Orbit-equivalence cocycle data: verification and the forcing argument.

Every check runs on eventually periodic sample points, where equality of
points is decidable.  Reports therefore speak about the given samples only.
"""

from dataclasses import dataclass, field

from ..errors import InputError
from ..language import admissible_words
from .cocycles import CylinderPotential, psi_value
from .codes import apply_code, preimage
from .points import point_admissible


@dataclass(frozen=True)
class CoeData:
    """Homeomorphism ``h`` with cocycles ``k1, l1`` (on the source) and ``k2, l2`` (on the target).

    ``h_inv`` is optional; without it inverse images are found by
    searching the preimage automaton of ``h``.
    """
    h: object
    k1: CylinderPotential
    l1: CylinderPotential
    k2: CylinderPotential = None
    l2: CylinderPotential = None
    h_inv: object = None

    def __post_init__(self):
        for name in ("k1", "l1", "k2", "l2"):
            pot = getattr(self, name)
            if pot is not None and pot.min_value < 0:
                raise InputError(f"cocycle {name} takes negative values")
        if (self.k2 is None) != (self.l2 is None):
            raise InputError("k2 and l2 must be given together")

    @classmethod
    def constant(cls, h, S1, S2, k, l, h_inv=None):
        """Data with constant cocycles ``k`` and ``l`` on both sides."""
        return cls(h, CylinderPotential.constant(S1, k), CylinderPotential.constant(S1, l),
                   CylinderPotential.constant(S2, k), CylinderPotential.constant(S2, l), h_inv)


@dataclass(frozen=True)
class CheckEntry:
    sample: object
    check: str
    passed: bool
    witness: dict = None


@dataclass(frozen=True)
class Report:
    entries: tuple

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    @property
    def failures(self):
        return [e for e in self.entries if not e.passed]

    def to_json(self, alphabet):
        return [{"sample": e.sample.format(alphabet), "check": e.check, "pass": e.passed,
                 "witness": e.witness} for e in self.entries]


def _inverse(D, S1, y):
    if D.h_inv is not None:
        return apply_code(D.h_inv, y)
    return preimage(D.h, S1, y)


def _fmt(x, alphabet):
    return None if x is None else x.format(alphabet)


def verify_coe_data(D, S1, S2, samples, names=("cocycle-1", "cocycle-2")):
    """Check ``sigma^{k1(a)} h(sigma a) = sigma^{l1(a)} h(a)`` and its mirror on every sample.

    The mirror equation is checked at ``b = h(a)``.
    """
    entries = []
    for a in samples:
        if not point_admissible(S1, a):
            raise InputError(f"sample {a.format(S1.alphabet)} is not admissible")
        ha = apply_code(D.h, a)
        k, l = D.k1(a.window(0, D.k1.depth)), D.l1(a.window(0, D.l1.depth))
        lhs = apply_code(D.h, a.shift(1)).shift(k)
        rhs = ha.shift(l)
        wit = None if lhs == rhs else {"lhs": lhs.format(S2.alphabet), "rhs": rhs.format(S2.alphabet),
                                       "k": k, "l": l}
        entries.append(CheckEntry(a, names[0], lhs == rhs, wit))
        if D.k2 is None:
            continue
        b = ha
        k, l = D.k2(b.window(0, D.k2.depth)), D.l2(b.window(0, D.l2.depth))
        inv_b = _inverse(D, S1, b)
        inv_sb = _inverse(D, S1, b.shift(1))
        if inv_b is None or inv_sb is None:
            entries.append(CheckEntry(a, names[1], False, {"error": "no preimage found"}))
            continue
        lhs, rhs = inv_sb.shift(k), inv_b.shift(l)
        wit = None if lhs == rhs else {"lhs": lhs.format(S1.alphabet), "rhs": rhs.format(S1.alphabet),
                                       "k": k, "l": l}
        entries.append(CheckEntry(a, names[1], lhs == rhs, wit))
    return Report(tuple(entries))


def verify_eventual_conjugacy(h, K, S1, S2, samples, h_inv=None):
    """Check ``sigma^K h(sigma a) = sigma^{K+1} h(a)`` and the inverse identity on samples."""
    if K < 0:
        raise InputError("K must be nonnegative")
    D = CoeData.constant(h, S1, S2, K, K + 1, h_inv)
    return verify_coe_data(D, S1, S2, samples, names=("eventual-1", "eventual-2"))


@dataclass(frozen=True)
class SampleForcing:
    sample: object
    outcome: str  # "forced" | "not-forced" | "inconclusive-at-sample"
    proxy: bool
    violating: tuple = None
    B: tuple = ()
    D: tuple = ()
    p: int = None
    q: int = None
    l_equals_k_plus_1: bool = None
    note: str = ""


@dataclass(frozen=True)
class ForcingReport:
    verdict: str  # "conjugacy-forced" | "not-forced" | "inconclusive"
    samples: tuple = field(default=())

    def to_json(self, a1, a2):
        return {"verdict": self.verdict, "samples": [{
            "sample": s.sample.format(a1), "outcome": s.outcome, "proxy": s.proxy,
            "violating_cylinder": None if s.violating is None else a2.format(s.violating),
            "B": [b.format(a2) for b in s.B], "D": [d.format(a2) for d in s.D],
            "p": s.p, "q": s.q, "l_equals_k_plus_1": s.l_equals_k_plus_1, "note": s.note,
        } for s in self.samples]}


def indicator_family(S2, depth):
    """Indicators of every cylinder of length ``1..depth``."""
    return [(w, CylinderPotential.indicator(S2, w))
            for k in range(1, depth + 1) for w in admissible_words(S2, k)]


def _force_sample(D, family, a):
    ha = apply_code(D.h, a)
    hsa = apply_code(D.h, a.shift(1))
    k, l = D.k1(a.window(0, D.k1.depth)), D.l1(a.window(0, D.l1.depth))
    if hsa.shift(k) != ha.shift(l):
        raise InputError("cocycle equation fails at a sample; run verify_coe_data first")
    for w, f in family:
        if psi_value(D, f, a) != f(ha.window(0, f.depth)):
            return SampleForcing(a, "not-forced", True, violating=w,
                                 note="Psi(f)(a) != f(h(a))")
    B = tuple(ha.shift(i) for i in range(1, l))
    Dset = tuple(hsa.shift(j) for j in range(k))
    proxy = k == 0 or ha.orbit_size() > l + 1
    if set(B) != set(Dset):
        return SampleForcing(a, "inconclusive-at-sample", proxy, B=B, D=Dset,
                             note="indicator family does not separate B and D")
    balanced = l == k + 1
    if k == 0:
        # sigma h(a) = h(sigma a) is the cocycle equation itself
        return SampleForcing(a, "forced", True, B=B, D=Dset, p=0,
                             l_equals_k_plus_1=balanced)
    target = ha.shift(1)
    p = next((j for j in range(k) if hsa.shift(j) == target), None)
    q = next((i for i in range(1, l) if ha.shift(i) == hsa), None)
    if not proxy:
        return SampleForcing(a, "inconclusive-at-sample", False, B=B, D=Dset, p=p, q=q,
                             l_equals_k_plus_1=balanced,
                             note="h(a) repeats within the window; eventually periodic escape")
    outcome = "forced" if p == 0 else "inconclusive-at-sample"
    return SampleForcing(a, outcome, True, B=B, D=Dset, p=p, q=q, l_equals_k_plus_1=balanced)


def forcing_check(D, S1, S2, samples, depth=2):
    """Run the forcing argument on samples for all cylinder indicators of length ``<= depth``.

    A sample counts as a stand-in for a non-eventually-periodic point when
    ``k1(a) = 0`` or the points ``sigma^i h(a)``, ``i <= l1(a) + 1``, are
    pairwise distinct.  The verdict is ``conjugacy-forced`` when every such
    sample is forced, ``not-forced`` when some indicator separates
    ``Psi(f)`` from ``f o h``, and ``inconclusive`` otherwise.
    """
    family = indicator_family(S2, depth)
    results = []
    for a in samples:
        if not point_admissible(S1, a):
            raise InputError(f"sample {a.format(S1.alphabet)} is not admissible")
        results.append(_force_sample(D, family, a))
    if any(r.outcome == "not-forced" for r in results):
        verdict = "not-forced"
    else:
        proxies = [r for r in results if r.proxy]
        if proxies and all(r.outcome == "forced" for r in proxies):
            verdict = "conjugacy-forced"
        else:
            verdict = "inconclusive"
    return ForcingReport(verdict, tuple(results))
