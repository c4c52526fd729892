import pytest
from oracles import as_pairs, opt_by_enumeration

from seqsched.engines import RationalityModel, play
from seqsched.generators import random_instance, table1, table4, table5
from seqsched.model import Instance, loads_after, makespan
from seqsched.numeric import EpsValue
from seqsched.optimal import SizeLimit, opt, opt_exhaustive, opt_lower_bounds
from seqsched.suites import ensemble_instance


def E(c, e=0):
    return EpsValue.of(c, e)


def test_opt_table4():
    res = opt(table4())
    assert res.makespan == E(1, 1)
    assert res.schedule.sigma == (1, 2)


def test_opt_table5():
    res = opt(table5())
    assert res.makespan == E(1)
    assert res.schedule.sigma == (1, 2, 3, 4)


def test_opt_table1():
    # exhaustive enumeration of the 32 assignments gives exactly 1
    res = opt(table1())
    assert res.makespan == E(1)
    assert makespan(loads_after(table1(), res.schedule)) == E(1)
    assert makespan(loads_after(table1(), (2, 1, 1, 1, 2))) == E(1)


def test_opt_empty_instance():
    res = opt(Instance(3, ()))
    assert res.makespan == E(0) and res.schedule.sigma == ()


def test_lower_bounds_examples():
    assert opt_lower_bounds(table4()) == (E(1, "1/2"), E(1, 1))
    single = Instance(3, ((E(6), E(4), E(9)),))
    assert opt_lower_bounds(single) == (E("4/3"), E(4))
    # every job of the 4-machine family has minimum time 1-e on machine 1
    assert opt_lower_bounds(table5())[1] == E(1, -1)


@pytest.mark.parametrize("dist", ["uniform", "integer"])
def test_branch_and_bound_matches_enumeration(dist):
    for t in range(80):
        inst = ensemble_instance("opt-unit", 5, t, (1, 2, 3), 7, distribution=dist)
        res = opt(inst)
        want = opt_by_enumeration(as_pairs(inst), inst.m)
        assert (res.makespan.c, res.makespan.e) == want, inst.name
        assert makespan(loads_after(inst, res.schedule)) == res.makespan
        assert opt_exhaustive(inst).makespan == res.makespan


def test_bound_sandwich():
    models = [RationalityModel.greedy(), RationalityModel.simple_minded(), RationalityModel.lookahead(1)]
    for t in range(60):
        inst = ensemble_instance("sandwich", 2, t, (2, 3, 4), 8)
        avg, maxmin = opt_lower_bounds(inst)
        best = opt(inst).makespan
        assert avg <= best and maxmin <= best
        for model in models:
            assert best <= makespan(loads_after(inst, play(inst, model)))


def test_eps_entries_are_exact():
    inst = Instance(2, ((E(1, 1), E(1, 2)), (E(1, 3), E(1, 1)), (E(0, 1), E(0, 1))))
    want = opt_by_enumeration(as_pairs(inst), 2)
    res = opt(inst)
    assert (res.makespan.c, res.makespan.e) == want


def test_size_limit():
    inst = random_instance(4, 14, 0)
    with pytest.raises(SizeLimit):
        opt(inst, budget=50)
