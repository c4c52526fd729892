from fractions import Fraction

import pytest

from seqsched.engines import RationalityModel, play
from seqsched.generators import (
    GeneratorSpec,
    InvalidSpec,
    gen,
    infinity_surrogate,
    simple_minded_family,
    table5,
)
from seqsched.numeric import EpsValue


def E(c, e=0):
    return EpsValue.of(c, e)


def test_table1_matrix():
    inst = gen(GeneratorSpec("table1"))
    # machine rows of the reference matrix, job columns
    m1 = [E(3, -11), E(0, 1), E(0, 1), E(1, -2), E(2, -8)]
    m2 = [E(0, 1), E(2, -9), E(2, -8), E(1, -2), E(1, -2)]
    assert [row[0] for row in inst.p] == m1
    assert [row[1] for row in inst.p] == m2


def test_table4_matrix():
    inst = gen(GeneratorSpec("table4"))
    assert [row[0] for row in inst.p] == [E(1, 1), E(2)]
    assert [row[1] for row in inst.p] == [E(1), E(1, 1)]


def test_table5_matrix():
    inst = gen(GeneratorSpec("table5"))
    inf = E(100)
    assert inst.time(2, 1) == E(4, -5)
    rows = [
        [E(1, -1)] * 4,
        [E(4, -5), E(1), inf, inf],
        [inf, E(3, -4), E(1), inf],
        [inf, inf, E(2, -3), E(1)],
    ]
    for i, row in enumerate(rows, start=1):
        assert [inst.time(i, j) for j in range(1, 5)] == row


def test_family_reproduces_table5():
    assert simple_minded_family(4).p == table5().p


def test_family_structure():
    m = 6
    inst = simple_minded_family(m)
    for j in range(1, m + 1):
        assert inst.time(1, j) == E(1, -1)
        if j >= 2:
            assert inst.time(j, j) == E(1)
        if j <= m - 1:
            assert inst.time(j + 1, j) == E(m + 1 - j, -(m + 2 - j))


def test_infinity_surrogate():
    finite = [t for row in table5().p for t in row if t != E(100)]
    assert infinity_surrogate(4, finite) == E(100)
    assert infinity_surrogate(4, finite).c > 4 * 5
    # largest finite constant of the m-family is m, so the floor is m(m+1)
    assert infinity_surrogate(6, [E(6)]) == E(100)
    assert infinity_surrogate(10, [E(10)]) == E(1000)
    assert infinity_surrogate(40, [E(40)]) == E(10000)


@pytest.mark.parametrize("m", [3, 4, 5, 6, 9])
def test_surrogate_insensitivity(m):
    base = simple_minded_family(m)
    doubled = simple_minded_family(m, surrogate=E(2 * infinity_surrogate(m, [E(m)]).c))
    assert base.p != doubled.p
    models = [RationalityModel.greedy(), RationalityModel.simple_minded()]
    models += [RationalityModel.lookahead(k) for k in range(0, min(m, 5))]
    if m <= 6:
        models.append(RationalityModel.perfect())
    for model in models:
        assert play(base, model).sigma == play(doubled, model).sigma, model


def test_random_reproducible():
    spec = GeneratorSpec("random", m=3, n=7, seed=11)
    assert gen(spec) == gen(spec)
    assert gen(spec).dumps() == gen(spec).dumps()
    assert gen(GeneratorSpec("random", m=3, n=7, seed=12)).p != gen(spec).p
    assert all(t.e == 0 and 0 < t.c <= 10 and (t.c * 100).denominator == 1 for row in gen(spec).p for t in row)


def test_random_empty():
    assert gen(GeneratorSpec("random", m=2, n=0, seed=1)).n == 0


def test_integer_distribution():
    inst = gen(GeneratorSpec("random", m=2, n=20, seed=1, distribution="integer"))
    assert {t.c for row in inst.p for t in row} <= {Fraction(v) for v in range(1, 6)}


@pytest.mark.parametrize(
    "spec",
    [
        GeneratorSpec("nope"),
        GeneratorSpec("simple-minded", m=1),
        GeneratorSpec("random", m=0, n=3, seed=1),
        GeneratorSpec("random", m=2, n=-1, seed=1),
        GeneratorSpec("random", m=2, n=3),
        GeneratorSpec("random", m=2, n=3, seed=1, distribution="cauchy"),
    ],
)
def test_invalid_specs(spec):
    with pytest.raises(InvalidSpec):
        gen(spec)


def test_concrete_eps():
    inst = gen(GeneratorSpec("table4", eps=Fraction(1, 10)), concrete=True)
    assert inst.time(1, 1) == E("11/10")
    assert all(t.e == 0 for row in inst.p for t in row)
