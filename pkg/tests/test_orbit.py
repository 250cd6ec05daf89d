import numpy as np
import pytest

from conftest import sft
from symdyn.errors import DepthOverflow, InputError, SearchSpaceTooLarge
from symdyn.language import admissible_words, higher_block
from symdyn.orbit import (CoeData, CylinderPotential, EventuallyPeriodicPoint, GroupoidElement,
                          SlidingBlockCode, apply_code, check_code_image, compose,
                          compose_potential, ergodic_sum, ergodic_sums, find_conjugacy,
                          forcing_check, groupoid_cocycle, groupoid_map, periodic_point_count,
                          point_admissible, preimage, psi_transform, psi_value, random_point,
                          verify_coe_data, verify_conjugacy, verify_eventual_conjugacy)

P = EventuallyPeriodicPoint


# -- points ---------------------------------------------------------------

def test_point_normalization():
    assert P((0, 1), (0, 1)) == P((), (0, 1))
    assert P((), (1, 1, 1)).cycle == (1,)
    assert P((1,), (0, 1)) == P((), (1, 0))
    x = P((1, 1), (0,))
    assert x.preperiod == 2 and x.period == 1 and x.orbit_size() == 3


def test_point_shift_and_index():
    x = P((2,), (0, 1))
    assert x.shift(1) == P((), (0, 1))
    assert x.shift(4) == P((), (1, 0))
    assert [x[i] for i in range(5)] == [2, 0, 1, 0, 1]
    assert x.window(1, 3) == (0, 1, 0)


def test_point_rejects_empty_cycle():
    with pytest.raises(InputError):
        P((0,), ())


def test_point_admissible(golden):
    assert point_admissible(golden, P((), (0, 1)))
    assert not point_admissible(golden, P((), (1,)))
    assert not point_admissible(golden, P((1, 1), (0,)))


def test_random_points_are_admissible(golden, even, rng):
    for S in (golden, even):
        for _ in range(50):
            assert point_admissible(S, random_point(S, rng))


# -- block codes ------------------------------------------------------------

def test_apply_code_commutes_with_shift(golden, rng):
    h = SlidingBlockCode.higher_block_code(golden, 3)
    for _ in range(30):
        x = random_point(golden, rng)
        assert apply_code(h, x.shift(1)) == apply_code(h, x).shift(1)


def test_code_validation():
    with pytest.raises(InputError):
        SlidingBlockCode(1, {(0,): 0})
    with pytest.raises(InputError):
        SlidingBlockCode(-1, {})
    h = SlidingBlockCode(0, {(0,): 0})
    with pytest.raises(InputError):
        h.apply_word((1,))


def test_check_code_image(golden, full2):
    h2 = higher_block(golden, 2)
    assert check_code_image(SlidingBlockCode.higher_block_code(golden, 2), golden, h2) is None
    assert check_code_image(SlidingBlockCode.identity(full2), full2, golden) is not None


def test_preimage(golden):
    h = SlidingBlockCode.higher_block_code(golden, 2)
    x = P((0,), (0, 1))
    assert preimage(h, golden, apply_code(h, x)) == x


def test_code_json_roundtrip(golden):
    h2 = higher_block(golden, 2)
    h = SlidingBlockCode.higher_block_code(golden, 2)
    doc = h.to_json(golden.alphabet, h2.alphabet)
    assert SlidingBlockCode.from_json(doc, golden.alphabet, h2.alphabet).block_map == h.block_map


# -- potentials and cocycles -------------------------------------------------

def test_potential_validation(golden):
    with pytest.raises(InputError):
        CylinderPotential(0, {})
    with pytest.raises(InputError):
        CylinderPotential(2, {(0,): 1})
    f = CylinderPotential.indicator(golden, (0, 1))
    with pytest.raises(InputError):
        f((1, 1))


def test_ergodic_sums_match_direct_sum(even, rng):
    for _ in range(20):
        f = CylinderPotential.random(even, 3, rng)
        x = random_point(even, rng)
        sums = ergodic_sums(f, x, 15)
        direct = [sum(f(x.window(i, 3)) for i in range(m)) for m in range(16)]
        assert sums.tolist() == direct


def test_additivity(golden, rng):
    f = CylinderPotential.random(golden, 2, rng)
    for _ in range(20):
        x = random_point(golden, rng)
        for n in range(6):
            for m in range(6):
                assert ergodic_sum(f, x, n + m) == ergodic_sum(f, x, n) + ergodic_sum(f, x.shift(n), m)


def test_groupoid_elements(golden, rng):
    x = P((0,), (0, 1))
    z = P((0, 0), (0, 1))
    with pytest.raises(InputError):
        GroupoidElement(x, z, 0, 0)
    g = GroupoidElement(x, z, 1, 2)
    assert g.lag == -1
    f = CylinderPotential.random(golden, 2, rng)
    assert groupoid_cocycle(f, g) == groupoid_cocycle(f, g.reindex(3))
    assert groupoid_cocycle(f, g.inverse()) == -groupoid_cocycle(f, g)
    h = GroupoidElement(z, P((), (1, 0)), 2, 1)
    assert groupoid_cocycle(f, compose(g, h)) == groupoid_cocycle(f, g) + groupoid_cocycle(f, h)
    with pytest.raises(InputError):
        compose(g, g)


# -- conjugacy data -----------------------------------------------------------

@pytest.fixture
def two_block(golden):
    h2 = higher_block(golden, 2)
    h = SlidingBlockCode.higher_block_code(golden, 2)
    return golden, h2, h, CoeData.constant(h, golden, h2, 0, 1)


def test_psi_of_conjugacy_is_composition(two_block):
    S1, S2, h, D = two_block
    for k in (1, 2):
        for w in admissible_words(S2, k):
            f = CylinderPotential.indicator(S2, w)
            assert psi_transform(D, f, S1).agrees_with(compose_potential(f, h, S1), S1)


def test_psi_iterated_identity(two_block, rng):
    S1, S2, h, D = two_block
    f = CylinderPotential.random(S2, 2, rng)
    for _ in range(10):
        x = random_point(S1, rng)
        for p in range(1, 6):
            lhs = sum(psi_value(D, f, x.shift(i)) for i in range(p))
            lp, kp = ergodic_sum(D.l1, x, p), ergodic_sum(D.k1, x, p)
            rhs = ergodic_sum(f, apply_code(h, x), lp) - ergodic_sum(f, apply_code(h, x.shift(p)), kp)
            assert lhs == rhs


def test_psi_depth_cap(two_block):
    S1, S2, h, D = two_block
    with pytest.raises(DepthOverflow):
        psi_transform(D, CylinderPotential.indicator(S2, (0, 1)), S1, cap=2)


def test_groupoid_map_preserves_cocycles(two_block, rng):
    S1, S2, h, D = two_block
    f = CylinderPotential.random(S2, 2, rng)
    psi = psi_transform(D, f, S1)
    x = P((0,), (0, 1))
    g = GroupoidElement(x, P((), (1, 0)), 2, 2)
    assert groupoid_cocycle(f, groupoid_map(D, g)) == groupoid_cocycle(psi, g)


def test_verify_coe_passes_and_perturbation_fails(two_block, rng):
    S1, S2, h, D = two_block
    pts = [random_point(S1, rng) for _ in range(20)] + [P((), (0, 1))]
    assert verify_coe_data(D, S1, S2, pts).passed
    k1 = CylinderPotential(1, {(0,): 1, (1,): 0}, 2)
    bad = CoeData(h, k1, D.l1)
    report = verify_coe_data(bad, S1, S2, pts)
    assert not report.passed
    assert report.failures[0].witness["k"] == 1


def test_coe_rejects_negative_cocycles(golden):
    with pytest.raises(InputError):
        CoeData.constant(SlidingBlockCode.identity(golden), golden, golden, -1, 0)


def test_eventual_conjugacy(full2):
    head = ({(a, b): a ^ b for a in range(2) for b in range(2)},)
    h = SlidingBlockCode(1, {(a, b): a for a in range(2) for b in range(2)}, head)
    pts = [P((), (0,)), P((1,), (0,)), P((0, 1), (1, 0)), P((), (1, 1, 0))]
    assert verify_eventual_conjugacy(h, 1, full2, full2, pts, h_inv=h).passed
    assert verify_eventual_conjugacy(h, 1, full2, full2, pts).passed
    wrong = verify_eventual_conjugacy(h, 0, full2, full2, pts, h_inv=h)
    assert not wrong.passed and wrong.failures[0].witness is not None
    ident = SlidingBlockCode.identity(full2)
    assert verify_eventual_conjugacy(ident, 0, full2, full2, pts).passed


# -- forcing -------------------------------------------------------------------

def test_forcing_on_conjugacy(two_block, rng):
    S1, S2, h, D = two_block
    pts = [random_point(S1, rng) for _ in range(10)]
    assert forcing_check(D, S1, S2, pts).verdict == "conjugacy-forced"


def test_forcing_not_forced(golden):
    ident = SlidingBlockCode.identity(golden)
    D = CoeData(ident, CylinderPotential.constant(golden, 0),
                CylinderPotential(2, {(0, 0): 2, (0, 1): 1, (1, 0): 1}, 2))
    rep = forcing_check(D, golden, golden, [P((), (0,)), P((), (0, 1))])
    assert rep.verdict == "not-forced"
    assert rep.samples[0].violating is not None


def test_forcing_inconclusive(full2):
    ident = SlidingBlockCode.identity(full2)
    D = CoeData.constant(ident, full2, full2, 2, 3)
    rep = forcing_check(D, full2, full2, [P((), (1,))])
    assert rep.verdict == "inconclusive"
    assert not rep.samples[0].proxy


def test_forcing_requires_cocycle_equation(golden):
    ident = SlidingBlockCode.identity(golden)
    D = CoeData.constant(ident, golden, golden, 0, 2)
    with pytest.raises(InputError):
        forcing_check(D, golden, golden, [P((), (0, 1))])


# -- conjugacy search ------------------------------------------------------------

def test_verify_conjugacy(golden, full2):
    h2 = higher_block(golden, 2)
    assert verify_conjugacy(SlidingBlockCode.higher_block_code(golden, 2), golden, h2)
    assert verify_conjugacy(SlidingBlockCode.identity(full2), full2, full2)
    collapse = SlidingBlockCode(0, {(0,): 0, (1,): 0})
    res = verify_conjugacy(collapse, full2, sft([[1]], ["0"]))
    assert not res and "injective" in res.reason


def test_find_conjugacy(golden, full2, caplog):
    res = find_conjugacy(full2, full2, 0)
    assert res.anticipation == 0 and res.code.block_map == {(0,): 0, (1,): 1}
    with caplog.at_level("INFO"):
        res = find_conjugacy(golden, full2, 2)
    assert res.code is None
    assert any("|B_" in o for o in res.obstructions)
    assert "obstruction" in caplog.text
    res = find_conjugacy(golden, higher_block(golden, 2), 1)
    assert res.anticipation == 1 and verify_conjugacy(res.code, golden, higher_block(golden, 2))


def test_find_conjugacy_cap(golden, full2):
    with pytest.raises(SearchSpaceTooLarge):
        find_conjugacy(golden, full2, 3, cap=10)


def test_periodic_point_counts(golden, full2):
    assert [periodic_point_count(golden, p) for p in range(1, 6)] == [1, 3, 4, 7, 11]
    assert [periodic_point_count(full2, p) for p in range(1, 5)] == [2, 4, 8, 16]


def test_numpy_array_input(golden):
    f = CylinderPotential.constant(golden, 2)
    assert isinstance(ergodic_sums(f, P((), (0,)), 3), np.ndarray)
