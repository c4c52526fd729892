from fractions import Fraction

import pytest

from seqsched.analysis import (
    DegenerateOpt,
    NotTwoMachines,
    ScanRanOffEnd,
    breakpoints,
    check_claim1,
    check_lemma1,
    check_theorem_bounds,
    delta_l_estimate,
    delta_l_samples,
    spoa,
    spoa_bound,
)
from seqsched.engines import RationalityModel, final_loads
from seqsched.generators import simple_minded_family, table1, table4, table5
from seqsched.model import Instance, makespan
from seqsched.numeric import EpsValue
from seqsched.suites import ensemble_instance

LA1 = RationalityModel.lookahead(1)


def E(c, e=0):
    return EpsValue.of(c, e)


def test_spoa_table4_lookahead1():
    rep = spoa(table4(), LA1)
    assert rep.eq_makespan == E(2)
    assert rep.opt_makespan == E(1, 1)
    assert rep.ratio_limit == 2 and rep.bound == 2 and rep.bound_satisfied


def test_spoa_table5_simple_minded():
    rep = spoa(table5(), RationalityModel.simple_minded())
    assert rep.eq_makespan == E(4, -5)
    assert rep.ratio_limit == 4 and rep.bound == 4 and rep.bound_satisfied


def test_spoa_table1_perfect_has_no_bound():
    rep = spoa(table1(), RationalityModel.perfect())
    assert rep.eq_makespan == E(4, -13)
    assert rep.ratio_limit == 4
    assert rep.bound is None and rep.bound_satisfied


def test_spoa_degenerate_opt():
    inst = Instance(2, ((E(0, 1), E(0, 2)),))
    with pytest.raises(DegenerateOpt):
        spoa(inst, RationalityModel.greedy())


def test_spoa_ratio_arithmetic():
    for t in range(40):
        inst = ensemble_instance("ratio", 1, t, (2, 3), 7)
        rep = spoa(inst, RationalityModel.lookahead(2))
        assert rep.ratio_limit * rep.opt_makespan.c == rep.eq_makespan.c


@pytest.mark.parametrize(
    "model, m, n, expected",
    [
        (RationalityModel.lookahead(1), 2, 9, 2),
        (RationalityModel.lookahead(2), 2, 9, 6),
        (RationalityModel.lookahead(3), 2, 9, 14),
        (RationalityModel.lookahead(1), 3, 5, 9),  # min(3*1*2+3, 3+5*2)
        (RationalityModel.lookahead(2), 4, 3, 16),  # min(4*2*4+4, 4+3*4)
        (RationalityModel.lookahead(2), 4, 10, 36),
        (RationalityModel.greedy(), 5, 3, 5),
        (RationalityModel.simple_minded(), 3, 3, 3),
        (RationalityModel.perfect(), 2, 3, None),
    ],
)
def test_spoa_bound_constants(model, m, n, expected):
    assert spoa_bound(model, m, n) == expected


def test_breakpoints_table4():
    assert breakpoints(table4(), (2, 1)) == [0, 1, 2]


def test_breakpoints_trivial_cases():
    assert breakpoints(Instance(2, ()), ()) == [0]
    inst = Instance(2, ((E(1), E(3)), (E(2), E(1))))
    # job 1 takes machine 1, which the first comparison favours
    assert breakpoints(inst, (1, 2))[1] == 1


def test_breakpoints_errors():
    with pytest.raises(NotTwoMachines):
        breakpoints(table5(), (2, 3, 4, 1))
    # first comparison favours machine 2 but nobody ever takes it
    with pytest.raises(ScanRanOffEnd):
        breakpoints(table4(), (1, 1))


def test_claim1_table4():
    res = check_claim1(table4())
    assert res.holds
    assert res.breakpoints == (0, 1, 2)
    assert [(r.max_load, r.min_time_sum) for r in res.rows] == [
        (E(0), E(0)),
        (E(1), E(1)),
        (E(2), E(2, 1)),
    ]


def test_claim1_empty_instance():
    assert check_claim1(Instance(2, ())).holds


def test_lemma1_examples():
    assert check_lemma1(table4())
    assert check_lemma1(Instance(2, ((E(3), E(2)),)))
    with pytest.raises(NotTwoMachines):
        check_lemma1(table5())


def test_lemma1_and_claim1_on_ensemble():
    for t in range(300):
        inst = ensemble_instance("analysis-unit", 8, t, (2,), 10, distribution="integer")
        assert check_lemma1(inst), inst.name
        assert check_claim1(inst).holds, inst.name


def test_delta_l_empty_window():
    assert delta_l_estimate(table1(), jobs=[]) == E(0)


def test_delta_l_single_job():
    inst = table4()
    est = delta_l_estimate(inst, jobs=[2], model=RationalityModel.greedy(), samples=30, seed=1)
    sub = inst.subgame([2])
    expected = max(makespan(final_loads(sub, RationalityModel.greedy(), D)) - makespan(D)
                   for D in delta_l_samples(sub, 30, 1))
    assert est == expected
    assert est >= E(0)


def test_delta_l_lower_bounded_by_zero_start_and_monotone():
    inst = table1()
    model = RationalityModel.lookahead(2)
    zero_start = makespan(final_loads(inst, model))
    prev = None
    for samples in (0, 5, 20, 60):
        est = delta_l_estimate(inst, model=model, samples=samples, seed=4)
        assert est >= zero_start
        if prev is not None:
            assert est >= prev
        prev = est


def test_theorem_bounds_table4():
    res = check_theorem_bounds([table4()], LA1)
    assert res.ok and res.max_ratio == 2


def test_theorem_bounds_simple_minded_family_meets_bound():
    for m in range(2, 7):
        res = check_theorem_bounds([simple_minded_family(m)], RationalityModel.simple_minded())
        assert res.ok
        assert res.max_ratio == m == res.reports[0].bound


def test_theorem_bounds_random_lookahead2():
    insts = [ensemble_instance("tb-unit", 6, t, (2,), 8) for t in range(100)]
    res = check_theorem_bounds(insts, RationalityModel.lookahead(2))
    assert res.ok and res.max_ratio <= 6


def test_theorem_bounds_collects_errors():
    bad = Instance(2, ((E(0, 1), E(0, 1)),), "eps-only")
    res = check_theorem_bounds([table4(), bad], LA1)
    assert not res.ok
    assert res.errors[0][0] == "eps-only"
    assert res.max_ratio == Fraction(2)
