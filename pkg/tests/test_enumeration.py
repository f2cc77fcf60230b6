import random
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from ternary_exp.enumeration import (
    ParityClass,
    Solution,
    Triple,
    bennett_pair_count,
    bennett_pairs,
    check_parity_uniqueness,
    find_solutions,
    gap_lemma_exceptions,
    multi_solution_prime_triples,
    parity_class,
    parity_sweep,
    pillai_collisions,
    verify_conjecture_table,
)
from ternary_exp.tables import GENERAL_TABLE, PRIME_TABLE, family_i

EVEN, ODD = "even", "odd"


def naive_solutions(a, b, c, bound):
    return [
        (x, y, z)
        for x in range(1, bound + 1)
        for y in range(1, bound + 1)
        for z in range(1, bound + 1)
        if a**x + b**y == c**z
    ]


def naive_bennett(c, b, bound):
    out = []
    for z in range(1, bound + 1):
        for y in range(1, bound + 1):
            d = c**z - b**y
            if d and 16 * d * d < max(c**z, b**y):
                out.append((z, y))
    return out


@pytest.mark.parametrize(
    "triple, bound, expected",
    [
        ((2, 3, 5), 10, [(1, 1, 1), (4, 2, 2)]),
        ((3, 5, 2), 10, [(1, 1, 3), (1, 3, 7), (3, 1, 5)]),
        ((2, 89, 91), 15, [(1, 1, 1), (13, 1, 2)]),
    ],
)
def test_find_solutions_examples(triple, bound, expected):
    got = find_solutions(triple, bound)
    assert got == expected
    assert got == naive_solutions(*triple, bound)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 40), st.integers(2, 40), st.integers(2, 60), st.integers(1, 9))
def test_find_solutions_matches_naive(a, b, c, bound):
    assume(gcd(a, b) == gcd(a, c) == gcd(b, c) == 1)
    assert find_solutions((a, b, c), bound) == naive_solutions(a, b, c, bound)


def test_find_solutions_exact_big():
    # every hit re-verifies in exact arithmetic
    for e in PRIME_TABLE:
        for x, y, z in find_solutions(e.triple, 200):
            a, b, c = e.triple
            assert a**x + b**y == c**z


def test_triple_validation():
    with pytest.raises(ValueError):
        find_solutions((2, 4, 5), 10)
    with pytest.raises(ValueError):
        Triple(1, 3, 5)
    with pytest.raises(ValueError):
        find_solutions((2, 3, 5), 0)
    with pytest.raises(ValueError):
        find_solutions((2, 3, 5), 1001)


@pytest.mark.parametrize(
    "s, expected",
    [((4, 2, 2), (EVEN, EVEN)), ((1, 1, 1), (ODD, ODD)), ((13, 1, 2), (ODD, ODD)), ((2, 1, 2), (EVEN, ODD))],
)
def test_parity_class(s, expected):
    assert parity_class(Solution(*s)) == ParityClass(*expected)


def test_parity_uniqueness_examples():
    assert check_parity_uniqueness((2, 3, 5), 20) == []
    assert check_parity_uniqueness((3, 10, 13), 20) == [ParityClass(ODD, ODD)]
    assert check_parity_uniqueness((10, 3, 13), 20) == [ParityClass(ODD, ODD)]
    assert check_parity_uniqueness((2, 7, 3), 20) == []
    # brute force behind the (3, 10, 13) example
    assert naive_solutions(3, 10, 13, 8) == [(1, 1, 1), (7, 1, 3)]


def test_parity_uniqueness_rejects_bad_c():
    with pytest.raises(ValueError):
        check_parity_uniqueness((3, 5, 2), 10)
    with pytest.raises(ValueError):
        check_parity_uniqueness((2, 3, 35), 10)


def test_parity_sweep_small():
    bad = parity_sweep(60, 40)
    assert [t for t, _ in bad] == [(3, 10, 13)]


def test_table_entries_exact():
    reports = verify_conjecture_table(16)
    assert len(reports) == 13 and all(r.match for r in reports)
    by_label = {r.label: r for r in reports}
    assert by_label["xiii"].instances[0][2] == {(1, 3, 1), (7, 1, 1)}
    assert by_label["v"].instances[0][2] == {(1, 2, 3), (2, 1, 2)}
    assert by_label["i"].instances[0] == ((2, 3, 5), family_i(2).solutions, frozenset({(1, 1, 1), (4, 2, 2)}))
    assert [t for t, _, _ in by_label["i"].instances] == [family_i(r).triple for r in range(2, 9)]


def test_table_bound_precondition():
    with pytest.raises(ValueError):
        verify_conjecture_table(15)


def test_table_entries_hold_as_identities():
    for entries in GENERAL_TABLE.values():
        for e in entries:
            a, b, c = e.triple
            for x, y, z in e.solutions:
                assert a**x + b**y == c**z


def test_prime_triples_small_limit():
    got = multi_solution_prime_triples(30, 20)
    assert set(got) == {e.triple for e in PRIME_TABLE}


@pytest.mark.parametrize("bound, expected", [(3, {1}), (10, {1, -5, -13}), (40, {1, -5, -13})])
def test_pillai_examples(bound, expected):
    assert pillai_collisions(bound) == expected


def test_pillai_monotone_and_stable():
    prev = set()
    for n in range(1, 30):
        cur = pillai_collisions(n)
        assert prev <= cur
        if n >= 8:
            assert cur == {1, -5, -13}
        prev = cur
    assert 3**5 - 2**8 == 3 - 2**4 == -13


def test_gap_lemma():
    pairs = gap_lemma_exceptions(100, 20)
    assert (3, 3) in pairs
    assert (5, 4) not in pairs
    assert 2 ** (0.26 * 4) < 9
    # 25 - 32 = -7 is an excepted value, but |-7| > 2^(0.26*5) so the pair
    # does not violate the inequality and is not returned
    assert (5, 5) not in pairs and 25 - 32 == -7 and 7 > 2 ** (0.26 * 5)
    assert all(X * X - 2**n in (1, -7) for X, n in gap_lemma_exceptions(200, 40))
    assert (181, 15) in gap_lemma_exceptions(200, 20)


def test_gap_lemma_against_float_evaluation():
    # float check is safe away from the boundary; exact comparison decides ties
    for X, n in gap_lemma_exceptions(300, 40):
        assert abs(X * X - 2**n) <= 2 ** (0.26 * n) * (1 + 1e-12)


@pytest.mark.parametrize("c, b, bound", [(5, 3, 10), (2, 2, 10), (91, 2, 14), (3, 2, 20), (7, 2, 20), (2, 3, 30)])
def test_bennett_matches_brute_force(c, b, bound):
    assert bennett_pairs(c, b, bound) == naive_bennett(c, b, bound)
    assert bennett_pair_count(c, b, bound) <= 1


def test_bennett_near_miss_example():
    # 91^2 - 2^13 = 89, far above max(91, 2^6.5) / 4
    assert 91**2 - 2**13 == 89
    assert 16 * 89**2 >= max(91**2, 2**13)
    assert bennett_pair_count(91, 2, 14) == 0


def test_bennett_random_pairs_match_brute():
    rng = random.Random(7)
    for _ in range(200):
        c, b = rng.randint(2, 60), rng.randint(2, 60)
        assert bennett_pairs(c, b, 12) == naive_bennett(c, b, 12)


def test_bennett_finds_close_pairs():
    # 13^3 - 3^7 = 10 and 16 * 10^2 < 13^3
    assert bennett_pairs(3, 13, 10) == [(7, 3)]
    assert bennett_pairs(2, 17, 10) == [(4, 1)]
    hits = [(c, b) for c in range(2, 200) for b in range(2, 30) if bennett_pairs(c, b, 8)]
    for c, b in hits:
        assert bennett_pairs(c, b, 8) == naive_bennett(c, b, 8)
        assert len(bennett_pairs(c, b, 8)) <= 1
