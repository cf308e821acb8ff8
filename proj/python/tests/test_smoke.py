from fractions import Fraction

import pytest

import propmatch

STANDARD = "1: a,b,c,d\n2: a,b,c,d\n3: a,b,c,d\n4: b,a,c,d\n"


def test_parse_and_rankings():
    p = propmatch.Profile.parse(STANDARD)
    assert p.size == 4
    assert p.rankings()[3] == [1, 0, 2, 3]
    assert p == propmatch.Profile([[0, 1, 2, 3]] * 3 + [[1, 0, 2, 3]])


def test_engine_counts():
    p = propmatch.Profile.parse(STANDARD)
    assert propmatch.run_engine("PFS", p) == ([0, 1, 2, 3], 10)
    assert propmatch.run_engine("TLQ", p) == ([0, 1, 3, 2], 21)
    assert propmatch.run("SD", p, [3, 2, 1, 0]) == [3, 2, 0, 1]


def test_lotteries_are_exact():
    p = propmatch.Profile([[0, 1, 2, 3]] * 3 + [[0, 2, 3, 1]])
    rsd = propmatch.random_assignment("RSD", p)
    assert rsd[3] == [Fraction(1, 4), 0, Fraction(1, 2), Fraction(1, 4)]
    assert all(sum(row) == 1 for row in rsd)
    ps = propmatch.probabilistic_serial(p)
    assert propmatch.is_ordinally_efficient(ps, p)


def test_efficiency_and_welfare():
    p = propmatch.Profile([[0, 1, 2], [0, 1, 2], [1, 0, 2]])
    assert propmatch.is_pareto_efficient([0, 1, 2], p)
    assert not propmatch.is_pareto_efficient([2, 1, 0], p)
    mean, se = propmatch.utilitarian_loss("RSD", 4, profiles=200, seed=3)
    assert 0 <= mean <= 1 and se >= 0
    assert propmatch.utilitarian_loss("RSD", 4, profiles=200, seed=3) == (mean, se)


def test_errors_are_value_errors():
    with pytest.raises(propmatch.PropmatchError):
        propmatch.Profile.parse("1: a,b\n2: a\n")
    with pytest.raises(ValueError):
        propmatch.run("R-PS", propmatch.Profile([[0]]))
