"""Exact minimum makespan on unrelated machines, plus simple lower bounds."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .engines import RationalityModel, play
from .model import Instance, Schedule, loads_after, makespan, min_time
from .numeric import ZERO, EpsValue

DEFAULT_BUDGET = 5_000_000


class SizeLimit(RuntimeError):
    """The search budget ran out before optimality was proven."""


@dataclass(frozen=True)
class OptResult:
    makespan: EpsValue
    schedule: Schedule
    nodes_explored: int


def _encoder(inst: Instance):
    """Map EpsValues of ``inst`` to Python ints preserving order and sums.

    ``c + e*eps`` becomes ``C*B + E`` where ``C, E`` are the coefficients
    scaled to a common integer denominator and ``B`` exceeds twice any ``|E|``
    the search can produce (loads, totals, and ``m`` times a makespan).
    """
    entries = [t for row in inst.p for t in row]
    den = 1
    for t in entries:
        den = math.lcm(den, t.c.denominator, t.e.denominator)
    spread = sum(max((abs(t.e) * den for t in row), default=0) for row in inst.p)
    base = 2 * inst.m * int(spread) + 1

    def encode(x: EpsValue) -> int:
        return int(x.c * den) * base + int(x.e * den)

    return encode


def opt(inst: Instance, budget: int = DEFAULT_BUDGET) -> OptResult:
    """Depth-first branch and bound over machine assignments.

    Jobs are branched in input order and machines in index order. A node is
    cut when its makespan so far, the average-load bound or the largest
    remaining minimum time reaches the incumbent, which starts as the greedy
    schedule.

    Raises:
        SizeLimit: if more than ``budget`` nodes are expanded.
    """
    n, m = inst.n, inst.m
    if n == 0:
        return OptResult(ZERO, Schedule(()), 1)
    enc = _encoder(inst)
    P = [[enc(t) for t in row] for row in inst.p]
    pmin = [min(row) for row in P]
    rest_sum = [0] * (n + 1)
    rest_max = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        rest_sum[j] = rest_sum[j + 1] + pmin[j]
        rest_max[j] = max(rest_max[j + 1], pmin[j])

    greedy = play(inst, RationalityModel.greedy()).sigma
    best_sigma = list(greedy)
    g_loads = [0] * m
    for j, i in enumerate(greedy):
        g_loads[i - 1] += P[j][i - 1]
    incumbent = max(g_loads)

    loads = [0] * m
    sigma = [0] * n
    nodes = 0
    total = 0

    def dfs(j: int, cur_max: int) -> None:
        nonlocal nodes, incumbent, best_sigma, total
        nodes += 1
        if nodes > budget:
            raise SizeLimit(f"{inst.name or 'instance'}: more than {budget} nodes without proof of optimality")
        if j == n:
            if cur_max < incumbent:
                incumbent = cur_max
                best_sigma = [i + 1 for i in sigma]
            return
        if rest_max[j] >= incumbent:
            return
        row = P[j]
        for i in range(m):
            new = loads[i] + row[i]
            nm = new if new > cur_max else cur_max
            if nm >= incumbent:
                continue
            if total + row[i] + rest_sum[j + 1] >= m * incumbent:
                continue
            loads[i] = new
            total += row[i]
            sigma[j] = i
            dfs(j + 1, nm)
            loads[i] -= row[i]
            total -= row[i]

    dfs(0, 0)
    witness = Schedule(tuple(best_sigma))
    return OptResult(makespan(loads_after(inst, witness)), witness, nodes)


def opt_exhaustive(inst: Instance) -> OptResult:
    """Enumerate all ``m**n`` assignments; the first minimum wins."""
    best: EpsValue | None = None
    best_sigma: tuple[int, ...] = ()
    count = 0
    for sigma in itertools.product(range(1, inst.m + 1), repeat=inst.n):
        count += 1
        value = makespan(loads_after(inst, sigma))
        if best is None or value < best:
            best, best_sigma = value, sigma
    return OptResult(best if best is not None else ZERO, Schedule(best_sigma), count)


def opt_lower_bounds(inst: Instance) -> tuple[EpsValue, EpsValue]:
    """``(sum_j p_j / m, max_j p_j)`` with ``p_j`` the minimum time of job ``j``."""
    mins = [min_time(inst, j)[0] for j in range(1, inst.n + 1)]
    total = ZERO
    for t in mins:
        total = total + t
    return total / inst.m, max(mins, default=ZERO)
