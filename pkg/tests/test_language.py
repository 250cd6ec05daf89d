import itertools

import pytest

import brute
from conftest import GOLDEN_MATRIX, sft
from symdyn.errors import (InadmissibleWord, InputError, OracleDepthExceeded,
                           UnsupportedPresentation)
from symdyn.language import (Alphabet, Subshift, Verdict, admissible_words, as_oracle,
                             bridging_search, builtin_oracle, check_factorial, follower_set,
                             higher_block, is_admissible, is_irreducible, is_nontrivial,
                             predecessor_set)


def test_alphabet_rejects_duplicates_and_empty():
    with pytest.raises(InputError):
        Alphabet(("a", "a"))
    with pytest.raises(InputError):
        Alphabet(())


def test_alphabet_format_roundtrip():
    a = Alphabet(("1", "2"))
    assert a.parse(a.format((1, 0, 1))) == (1, 0, 1)
    b = Alphabet(("ab", "c"))
    assert b.format((0, 1)) == "ab.c"
    assert b.parse("ab.c") == (0, 1)


def test_matrix_validation():
    with pytest.raises(InputError):
        Subshift.from_matrix([[1, 0], [0, 0]])
    with pytest.raises(InputError):
        Subshift.from_matrix([[1, 2], [1, 1]])
    with pytest.raises(InputError):
        Subshift.from_matrix([[1, 1]])


def test_graph_trimming_drops_stranded_vertices():
    S = Subshift.from_graph(["0", "1"], ["A", "B", "C"],
                            [("A", "0", "A"), ("A", "1", "B"), ("B", "1", "A"), ("C", "0", "A")])
    assert S.graph.vertices == ("A", "B")


def test_graph_without_cycle_is_rejected():
    with pytest.raises(InputError):
        Subshift.from_graph(["0", "1"], ["A", "B"], [("A", "0", "B")])


def test_admissibility_examples(golden, full2, even):
    assert not is_admissible(golden, (1, 1))
    assert all(is_admissible(full2, w) for w in itertools.product(range(2), repeat=5))
    assert not is_admissible(even, (0, 1, 0))
    assert is_admissible(even, (0, 1, 1, 0))


def test_word_counts(golden, full2, even):
    assert admissible_words(golden, 2) == ((0, 0), (0, 1), (1, 0))
    assert len(admissible_words(full2, 3)) == 8
    ws = admissible_words(even, 3)
    assert len(ws) == 7 and (0, 1, 0) not in ws
    assert admissible_words(golden, 0) == ((),)


@pytest.mark.parametrize("k", range(1, 8))
def test_word_sets_match_brute_force(golden, even, k):
    assert admissible_words(golden, k) == brute.words(brute.sft_member(GOLDEN_MATRIX), 2, k)
    assert admissible_words(even, k) == brute.language(brute.even_member, 2, k)


def test_gamma_examples(golden, even, full2):
    assert predecessor_set(golden, (1,), 1) == ((0,),)
    assert predecessor_set(even, (1, 0), 1) == ((1,),)
    assert follower_set(golden, (1,), 1) == ((0,),)
    assert follower_set(even, (0, 1), 1) == ((1,),)
    assert predecessor_set(full2, (0, 1), 2) == admissible_words(full2, 2)
    assert predecessor_set(golden, (0,), 0) == ((),)


def test_gamma_rejects_inadmissible(golden):
    with pytest.raises(InadmissibleWord):
        predecessor_set(golden, (1, 1), 1)
    with pytest.raises(InputError):
        predecessor_set(golden, (5,), 1)


@pytest.mark.parametrize("l", range(4))
def test_predecessor_sets_match_brute_force(even, l):
    for k in range(1, 5):
        for mu in admissible_words(even, k):
            assert predecessor_set(even, mu, l) == brute.predecessors(brute.even_member, 2, mu, l)


def test_irreducibility(golden, full2):
    assert is_irreducible(golden) is Verdict.PROVEN
    assert is_irreducible(full2) is Verdict.PROVEN
    assert is_irreducible(sft([[1, 0], [0, 1]])) is Verdict.REFUTED


def test_sofic_irreducibility_with_transient_part():
    # a one-way bridge from a 0-loop into a 1-loop: 1 0 never occurs
    S = Subshift.from_graph(["0", "1"], ["A", "B"],
                            [("A", "0", "A"), ("A", "1", "B"), ("B", "1", "B")])
    assert is_irreducible(S) is Verdict.REFUTED
    # a reducible presentation of an irreducible shift: a copy of the full shift dangling in
    S = Subshift.from_graph(["0", "1"], ["A", "B"],
                            [("A", "0", "A"), ("A", "1", "A"), ("A", "0", "B"), ("B", "1", "B"),
                             ("B", "0", "B")])
    assert is_irreducible(S) is Verdict.PROVEN


def test_oracle_irreducibility_is_unknown(dyck2):
    assert is_irreducible(dyck2) is Verdict.UNKNOWN


def test_nontrivial(golden, full2):
    assert is_nontrivial(golden)
    assert is_nontrivial(full2)
    assert not is_nontrivial(sft([[0, 1], [1, 0]]))


def test_nontrivial_rejects_oracle(dyck2):
    with pytest.raises(UnsupportedPresentation):
        is_nontrivial(dyck2)


def test_higher_block(golden, full2):
    h = higher_block(golden, 2)
    assert h.alphabet.symbols == ("11", "12", "21")
    assert h.matrix.tolist() == [[1, 1, 0], [0, 0, 1], [1, 1, 0]]
    assert higher_block(golden, 1) is golden
    expected = [[int(u[1] == v[0]) for v in itertools.product(range(2), repeat=2)]
                for u in itertools.product(range(2), repeat=2)]
    assert higher_block(full2, 2).matrix.tolist() == expected


def test_oracle_depth_bound(dyck2):
    with pytest.raises(OracleDepthExceeded):
        is_admissible(dyck2, (0,) * 9)
    assert is_admissible(dyck2, (0, 2, 1, 3))
    assert not is_admissible(dyck2, (0, 3))


def test_oracle_words_and_sets(dyck2):
    ws = admissible_words(dyck2, 2)
    assert (0, 3) not in ws and (0, 2) in ws and len(ws) == 14
    assert predecessor_set(dyck2, (2,), 1) == ((0,), (2,), (3,))


def test_beta_golden_matches_golden_mean(golden):
    oracle = Subshift.from_oracle(builtin_oracle("beta-golden", 8))
    for k in range(1, 7):
        assert admissible_words(oracle, k) == admissible_words(golden, k)


def test_wrapped_oracle_agrees(golden, even):
    for S in (golden, even):
        O = as_oracle(S, 7)
        for k in range(1, 5):
            assert admissible_words(O, k) == admissible_words(S, k)
            for mu in admissible_words(S, k):
                assert predecessor_set(O, mu, 2) == predecessor_set(S, mu, 2)
                assert follower_set(O, mu, 2) == follower_set(S, mu, 2)


def test_bridging_search(golden, dyck2):
    assert bridging_search(golden, 3) is None
    assert bridging_search(dyck2, 2) is None
    assert bridging_search(sft([[1, 0], [0, 1]]), 2) == ((0,), (1,))


def test_factorial_sampling(dyck2, rng):
    assert check_factorial(dyck2, rng) is None


def test_unknown_oracle_name():
    with pytest.raises(InputError):
        builtin_oracle("nope", 5)
