import itertools
from math import comb, factorial, gcd, perm

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordhyp.groupmodel import (
    BudgetExceeded,
    CosetSpec,
    EquationSpec,
    FiniteAbelianGroup,
    GroupKind,
    candidate_groups,
    closed_form_max,
    closed_form_min,
    count_all_targets,
    count_bruteforce,
    count_recurrence,
    count_recurrence_all,
    dplus1_predict,
    maximize_dplus1,
    minimize_ordinary,
    ordinary_predict,
    renormalization_iso_check,
)

Z = FiniteAbelianGroup.cyclic
P = FiniteAbelianGroup.product

# frozen from the brute-force oracle
BRUTE_2111_Z10_0 = 480


def naive_count(g, weights, c):
    total = 0
    for tup in itertools.permutations(range(g.n), len(weights)):
        s = 0
        for m, a in zip(weights, tup):
            s = g.add(s, g.scale(m, a))
        total += s == c
    return total


def test_group_tables():
    g = P(12)
    assert g.label == "Z6xZ2"
    assert g.encode((5, 1)) == 11 and g.decode(11) == (5, 1)
    assert g.add(g.encode((4, 1)), g.encode((3, 1))) == g.encode((1, 0))
    for x in range(12):
        assert g.add(x, g.neg(x)) == 0
    with pytest.raises(ValueError):
        P(10)


def test_bruteforce_examples():
    for n in (3, 7, 10):
        for c in range(n):
            assert count_bruteforce(Z(n), EquationSpec((1,), c)) == 1
    assert count_bruteforce(Z(6), EquationSpec((2,), 0)) == 2
    assert count_bruteforce(Z(10), EquationSpec((2, 1, 1, 1), 0)) == BRUTE_2111_Z10_0


@pytest.mark.parametrize("g", [Z(7), Z(8), P(8), Z(9)])
def test_kernels_against_naive_loop(g):
    for weights in [(1, 1), (2, 1), (3, 1, 1), (2, 2, 1), (1, 2, 3)]:
        hist = count_all_targets(g, weights)
        for c in range(g.n):
            want = naive_count(g, weights, c)
            assert hist[c] == want
            assert count_bruteforce(g, EquationSpec(weights, c)) == want


def test_pure_python_kernels_match_compiled():
    from ordhyp import _kernels_py
    from ordhyp._backend import kernels

    g = P(12)
    mul = np.stack([g.mul_row(m) for m in (2, 1, 3, 1)])
    assert list(_kernels_py.count_histogram(g.add_table, mul)) == list(kernels.count_histogram(g.add_table, mul))


def test_recurrence_examples():
    g = Z(10)
    assert count_recurrence(g, EquationSpec((2, 1, 1, 1), 0)) == BRUTE_2111_Z10_0
    for n in (5, 9, 12):
        for c in range(n):
            assert count_recurrence(Z(n), EquationSpec((1, 1), c)) == n - count_bruteforce(Z(n), EquationSpec((2,), c))
    with pytest.raises(ValueError):
        count_recurrence(g, EquationSpec((1, 2), 0))


@pytest.mark.parametrize("d", [3, 4, 5, 6])
@pytest.mark.parametrize("n", [9, 12, 14])
def test_dplus1_identity(d, n):
    for g in candidate_groups(n):
        ones = count_recurrence_all(g, (1,) * (d + 1))
        two = count_recurrence_all(g, (2,) + (1,) * (d - 1))
        for c in range(n):
            assert ones[c] == factorial(d) * comb(n, d) - d * two[c]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12).flatmap(lambda n: st.tuples(
    st.sampled_from(candidate_groups(n)),
    st.lists(st.integers(1, 3), min_size=1, max_size=min(5, n)),
)))
def test_recurrence_equals_bruteforce_random(case):
    g, weights = case
    weights = tuple(weights) + (1,)
    if len(weights) > g.n:
        return
    rec = count_recurrence_all(g, weights)
    brute = count_all_targets(g, weights)
    assert list(rec) == list(brute)


@pytest.mark.parametrize("n", range(6, 15))
def test_upper_bound_and_averaging(n):
    for d in (3, 4, 5):
        if n < d:
            continue
        for g in candidate_groups(n):
            w = (2,) + (1,) * (d - 1)
            hist = count_recurrence_all(g, w)
            assert sum(hist) == perm(n, d)
            for c in range(n):
                assert hist[c] <= 2 * w[-1] * factorial(d - 1) * comb(n, d - 1)


@pytest.mark.parametrize("d,n", [(4, 11), (4, 13), (5, 11), (6, 10), (6, 13), (3, 9)])
def test_coprime_exactness(d, n):
    assert gcd(d + 1, n) == 1
    for c in range(n):
        assert ordinary_predict(CosetSpec(Z(n), d, c)) == comb(n - 1, d - 1)


def test_predict_examples():
    assert ordinary_predict(CosetSpec(Z(11), 4, 3)) == 120
    assert minimize_ordinary(4, 10).value == 80
    assert minimize_ordinary(5, 12).value == 312
    assert minimize_ordinary(5, 9).value == 66
    assert minimize_ordinary(6, 15).value == 2002
    assert maximize_dplus1(4, 10).value == 26
    assert dplus1_predict(CosetSpec(Z(11), 4, 0)) == 42
    assert maximize_dplus1(6, 14).value == 246


def test_tie_break_is_deterministic():
    r = minimize_ordinary(4, 11)
    assert r.group.kind is GroupKind.CYCLIC and r.c == 0
    r = minimize_ordinary(4, 12)
    assert (r.group.kind, r.c) == (GroupKind.CYCLIC, 0)


def test_closed_forms_examples():
    assert closed_form_min(5, 8) == 32
    assert closed_form_min(6, 14) == 1281
    assert closed_form_max(5, 12) == 80
    with pytest.raises(ValueError):
        closed_form_min(7, 20)


def test_budget():
    with pytest.raises(BudgetExceeded):
        count_bruteforce(Z(14), EquationSpec((1, 2, 1, 1, 1, 1), 0), budget=1000)
    with pytest.raises(BudgetExceeded):
        count_all_targets(Z(14), (1, 2, 1), budget=10)


def test_renormalization():
    assert renormalization_iso_check(Z(9), 0, 3)
    assert renormalization_iso_check(Z(7), 3, 2)
    assert renormalization_iso_check(P(12), 5, 3, samples=2000, seed=1)
    assert renormalization_iso_check(P(8), 3, 2)
