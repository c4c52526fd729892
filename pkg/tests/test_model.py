import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqsched.generators import random_instance, table1, table4, table5
from seqsched.model import (
    IndexOutOfRange,
    Instance,
    InstanceError,
    Schedule,
    loads_after,
    makespan,
    min_time,
    zero_loads,
)
from seqsched.numeric import ZERO, EpsValue


def E(c, e=0):
    return EpsValue.of(c, e)


def test_loads_after_table1_spe():
    # machine 1: (3-11e) + e ; machine 2: (2-9e) + (1-2e) + (1-2e)
    assert loads_after(table1(), (1, 2, 1, 2, 2)) == (E(3, -10), E(4, -13))


def test_loads_after_empty_prefix_keeps_initial():
    initial = (E(5), E("1/3", 2))
    assert loads_after(table1(), (1, 2, 1, 2, 2), upto=0, initial=initial) == initial


def test_loads_after_table4():
    assert loads_after(table4(), Schedule((2, 1)), 2) == (E(2), E(1))


def test_loads_after_errors():
    with pytest.raises(IndexOutOfRange):
        loads_after(table4(), (2, 1), 3)
    with pytest.raises(IndexOutOfRange):
        loads_after(table4(), (2, 3), 2)


def test_makespan_examples():
    assert makespan((E(3, -10), E(4, -13))) == E(4, -13)
    assert makespan(zero_loads(3)) == ZERO
    assert makespan((E(2), E(1))) == E(2)


def test_min_time_examples():
    assert min_time(table1(), 1) == (E(0, 1), 2)
    assert min_time(Instance(3, ((E(2), E(2), E(2)),)), 1) == (E(2), 1)
    assert min_time(table5(), 2) == (E(1, -1), 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 8), st.integers(0, 10**6), st.data())
def test_load_invariants(m, n, seed, data):
    inst = random_instance(m, n, seed)
    sigma = tuple(data.draw(st.lists(st.integers(1, m), min_size=n, max_size=n)))
    prev = loads_after(inst, sigma, 0)
    for l in range(1, n + 1):
        cur = loads_after(inst, sigma, l)
        for i in range(m):
            delta = cur[i] - prev[i]
            assert delta == (inst.p[l - 1][i] if sigma[l - 1] == i + 1 else ZERO)
        assert makespan(cur) >= makespan(prev)
        prev = cur
    mass = ZERO
    for j, i in enumerate(sigma):
        mass = mass + inst.p[j][i - 1]
    total = ZERO
    for x in prev:
        total = total + x
    assert total == mass


def test_instance_rejects_nonpositive_times():
    with pytest.raises(InstanceError, match=r"jobs\[0\]\[1\]"):
        Instance(2, ((E(1), E(0)),))
    with pytest.raises(InstanceError, match=r"jobs\[1\]\[0\]"):
        Instance(2, ((E(1), E(1)), (E(0, -1), E(1))))


def test_instance_rejects_bad_shape():
    with pytest.raises(InstanceError, match=r"jobs\[0\]"):
        Instance(2, ((E(1),),))
    with pytest.raises(InstanceError, match="machines"):
        Instance(0, ())


def test_file_round_trip(tmp_path):
    inst = table1()
    path = tmp_path / "t1.json"
    inst.save(path)
    assert Instance.load(path) == inst
    data = json.loads(path.read_text())
    assert data["machines"] == 2
    assert data["jobs"][0] == [{"c": "3", "e": "-11"}, {"c": "0", "e": "1"}]


def test_file_accepts_mixed_encodings():
    inst = Instance.from_dict({"name": "x", "machines": 2, "jobs": [[1, "3/2"], [{"c": "1", "e": "1"}, 2]]})
    assert inst.p == ((E(1), E("3/2")), (E(1, 1), E(2)))


@pytest.mark.parametrize(
    "data, field",
    [
        ({"jobs": []}, "machines"),
        ({"machines": 2}, "jobs"),
        ({"machines": 2, "jobs": [[1, "x/y"]]}, r"jobs\[0\]\[1\]"),
        ({"machines": 2, "jobs": [[1, -1]]}, r"jobs\[0\]\[1\]"),
        ({"machines": 2, "jobs": [5]}, r"jobs\[0\]"),
    ],
)
def test_file_errors_name_the_field(data, field):
    with pytest.raises(InstanceError, match=field):
        Instance.from_dict(data)


def test_subgame_and_schedule_check():
    sub = table1().subgame([2, 4])
    assert sub.n == 2 and sub.p[0] == table1().p[1]
    with pytest.raises(IndexOutOfRange):
        table1().subgame([6])
    with pytest.raises(InstanceError):
        Schedule((1, 2)).check(table1())
