from math import gcd, isqrt

import numpy as np
import pytest
import sympy

from ternary_exp.classnum import (
    Discriminant,
    _character_table,
    class_number_analytic,
    class_number_forms,
    reduced_forms,
    z2_candidates,
)
from ternary_exp.modarith import primes_in_range


def naive_forms(d):
    """Triple loop over A, B, C; no shortcuts."""
    out = []
    n = -d
    for a in range(1, n + 1):
        if 3 * a * a > n:
            break
        for b in range(-a, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a or gcd(gcd(a, b), c) != 1:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            out.append((a, b, c))
    return sorted(out)


@pytest.mark.parametrize("d, h", [(-4, 1), (-52, 2), (-244, 6), (-148, 2), (-20, 2)])
def test_forms_examples(d, h):
    assert class_number_forms(d) == h
    assert len(naive_forms(d)) == h


def test_forms_match_naive_enumeration():
    for n in range(3, 2000):
        d = -n
        if d % 4 in (0, 1):
            assert sorted(reduced_forms(d)) == naive_forms(d), d


def test_class_number_one_discriminants():
    ones = [d for d in range(3, 200) if d % 4 in (0, 3) and class_number_forms(-d) == 1]
    # includes non-fundamental orders such as -12, -16, -27, -28
    assert ones == [3, 4, 7, 8, 11, 12, 16, 19, 27, 28, 43, 67, 163]


def test_forms_reduced_and_primitive():
    for d in (-52, -244, -4 * 1009, -420, -3 * 4 * 7 * 11):
        for a, b, c in reduced_forms(d):
            assert b * b - 4 * a * c == d
            assert abs(b) <= a <= c
            assert gcd(gcd(a, b), c) == 1


def test_boundary_convention_same_count():
    for n in range(3, 3000):
        if -n % 4 in (0, 1):
            assert len(reduced_forms(-n, "nonneg")) == len(reduced_forms(-n, "nonpos"))
    with pytest.raises(ValueError):
        reduced_forms(-4, "either")


@pytest.mark.parametrize("d, h", [(-4, 1), (-52, 2), (-148, 2), (-3, 1), (-7, 1), (-8, 1), (-24, 2), (-23, 3), (-420, 8)])
def test_analytic_examples(d, h):
    assert class_number_analytic(d) == h


def test_analytic_rejects_non_fundamental():
    for d in (-12, -16, -27, -28, -36):
        with pytest.raises(ValueError):
            class_number_analytic(d)


def test_discriminant_validation():
    for bad in (0, 5, -1, -2, -6):
        with pytest.raises(ValueError):
            Discriminant(bad)
    with pytest.raises(ValueError):
        class_number_forms(-6)
    assert Discriminant(-4).is_fundamental and not Discriminant(-16).is_fundamental


def test_character_table_is_kronecker_symbol():
    for d in (-4, -3, -8, -24, -52, -84, -120, -4 * 101, -7 * 11 * 4, -8 * 3 * 5):
        if not Discriminant(d).is_fundamental:
            continue
        chi = _character_table(d)
        for a in range(1, -d, 2):
            assert chi[a] == sympy.jacobi_symbol(d, a), (d, a)


def test_routes_agree_on_all_fundamental_discriminants_to_2000():
    for n in range(3, 2001):
        d = Discriminant(-n) if -n % 4 in (0, 1) else None
        if d is not None and d.is_fundamental:
            assert class_number_forms(d) == class_number_analytic(d), -n


@pytest.mark.parametrize("b, expected", [(13, []), (61, [3]), (5, [])])
def test_z2_examples(b, expected):
    assert z2_candidates(b) == expected


@pytest.mark.parametrize("b", [12, 2, 7, 9, 15])
def test_z2_rejects(b):
    with pytest.raises(ValueError):
        z2_candidates(b)


def test_z2_properties():
    for b in primes_in_range(5, 20000):
        if b % 4 != 1:
            continue
        h = class_number_forms(-4 * b)
        zs = z2_candidates(b)
        assert zs == sorted(zs)
        assert all(z % 2 == 1 and z > 1 and h % z == 0 for z in zs)
        for z in zs:
            for t in range(3, z, 2):
                if z % t == 0:
                    assert t in zs
        # every odd divisor > 1 is present
        odd = h
        while odd % 2 == 0:
            odd //= 2
        assert len(zs) == len(sympy.divisors(odd)) - 1
