"""Price-of-anarchy reports and the inequality checks built on them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .engines import GREEDY, LOOKAHEAD, SIMPLE_MINDED, RationalityModel, final_loads, play
from .model import Instance, Schedule, loads_after, makespan, min_time, total_min_time, zero_loads
from .numeric import EpsValue, limit_ratio
from .optimal import DEFAULT_BUDGET, OptResult, opt


class DegenerateOpt(ZeroDivisionError):
    """The optimal makespan is infinitesimal, so the ratio has no finite limit."""


class NotTwoMachines(ValueError):
    pass


class ScanRanOffEnd(RuntimeError):
    """A breakpoint scan passed the last job without finding a hit."""


def spoa_bound(model: RationalityModel, m: int, n: int) -> Fraction | None:
    """Proven upper bound on the ratio for this model, or ``None`` if there is none.

    Lookahead uses the explicit constants of the proofs: ``2(k^2 - k + 1)`` on
    two machines and ``min(m k 2^k + m, m + n 2^k)`` otherwise.
    """
    if model.kind in (GREEDY, SIMPLE_MINDED):
        return Fraction(m)
    if model.kind == LOOKAHEAD:
        k = model.k
        if m == 2:
            return Fraction(2 * (k * k - k + 1))
        return Fraction(min(m * k * 2**k + m, m + n * 2**k))
    return None


@dataclass(frozen=True)
class SpoaReport:
    instance: str
    model: RationalityModel
    m: int
    n: int
    eq_makespan: EpsValue
    opt_makespan: EpsValue
    ratio_limit: Fraction
    bound: Fraction | None
    bound_satisfied: bool
    schedule: Schedule = field(compare=False, default=Schedule(()))


def spoa(
    inst: Instance,
    model: RationalityModel,
    optimum: OptResult | None = None,
    budget: int = DEFAULT_BUDGET,
) -> SpoaReport:
    """Equilibrium makespan over optimum for one instance, as ``eps -> 0+``.

    ``optimum`` may be passed in to reuse one solve across several models.

    Raises:
        DegenerateOpt: if the optimum has zero constant part.
    """
    if optimum is None:
        optimum = opt(inst, budget=budget)
    if optimum.makespan.c == 0:
        raise DegenerateOpt(f"{inst.name or 'instance'}: optimal makespan {optimum.makespan} has no constant part")
    sched = play(inst, model)
    eq = makespan(loads_after(inst, sched))
    ratio = limit_ratio(eq, optimum.makespan)
    bound = spoa_bound(model, inst.m, inst.n)
    return SpoaReport(
        instance=inst.name,
        model=model,
        m=inst.m,
        n=inst.n,
        eq_makespan=eq,
        opt_makespan=optimum.makespan,
        ratio_limit=ratio,
        bound=bound,
        bound_satisfied=bound is None or ratio <= bound,
        schedule=sched,
    )


@dataclass
class BoundCheck:
    reports: list[SpoaReport]
    errors: list[tuple[str, str]]
    max_ratio: Fraction | None

    @property
    def ok(self) -> bool:
        return not self.errors and all(r.bound_satisfied for r in self.reports)

    @property
    def violations(self) -> list[SpoaReport]:
        return [r for r in self.reports if not r.bound_satisfied]


def check_theorem_bounds(instances: Iterable[Instance], model: RationalityModel) -> BoundCheck:
    """Run :func:`spoa` over a batch; per-instance failures are collected, not raised."""
    reports: list[SpoaReport] = []
    errors: list[tuple[str, str]] = []
    for inst in instances:
        try:
            reports.append(spoa(inst, model))
        except (ArithmeticError, RuntimeError) as exc:
            errors.append((inst.name, f"{type(exc).__name__}: {exc}"))
    max_ratio = max((r.ratio_limit for r in reports), default=None)
    return BoundCheck(reports, errors, max_ratio)


# two-machine, one-step lookahead ---------------------------------------------


def breakpoints(inst: Instance, sigma: Schedule | Sequence[int]) -> list[int]:
    """Partition points ``0 = n_0 < n_1 < ... < n_u = n`` of a two-machine play.

    Starting from ``v = 1``: if ``D_1(v-1) + p_{1,v} <= D_2(v-1) + p_{2,v}``
    scan forward to the next job on machine 1, otherwise to the next job on
    machine 2; that job is the next breakpoint and the scan resumes after it.

    Raises:
        NotTwoMachines: unless ``inst.m == 2``.
        ScanRanOffEnd: if a scan passes job ``n`` without a hit.
    """
    if inst.m != 2:
        raise NotTwoMachines(f"breakpoints need exactly 2 machines, got {inst.m}")
    x = sigma.sigma if isinstance(sigma, Schedule) else tuple(sigma)
    n = inst.n
    if len(x) != n:
        raise ValueError(f"sigma: length {len(x)} != n = {n}")
    # D[l] = loads after the first l jobs
    D = [zero_loads(2)]
    for l in range(1, n + 1):
        D.append(loads_after(inst, x, l))
    out = [0]
    v = 1
    while v <= n:
        if D[v - 1][0] + inst.time(1, v) <= D[v - 1][1] + inst.time(2, v):
            target = 1
        else:
            target = 2
        start = v
        while x[v - 1] != target:
            v += 1
            if v > n:
                raise ScanRanOffEnd(
                    f"scan from job {start} for the next job on machine {target} passed job {n}"
                )
        out.append(v)
        v += 1
    return out


@dataclass(frozen=True)
class Claim1Row:
    breakpoint: int
    max_load: EpsValue
    min_time_sum: EpsValue

    @property
    def holds(self) -> bool:
        return self.max_load <= self.min_time_sum


@dataclass(frozen=True)
class Claim1Result:
    holds: bool
    breakpoints: tuple[int, ...]
    rows: tuple[Claim1Row, ...]

    def __bool__(self) -> bool:
        return self.holds


def check_claim1(inst: Instance, model: RationalityModel | None = None) -> Claim1Result:
    """At every breakpoint of the 1-lookahead play, the makespan so far is at
    most the summed minimum times of the jobs placed so far."""
    if inst.m != 2:
        raise NotTwoMachines(f"the breakpoint check needs exactly 2 machines, got {inst.m}")
    model = model or RationalityModel.lookahead(1)
    sched = play(inst, model)
    points = breakpoints(inst, sched)
    prefix = [EpsValue()]
    for j in range(1, inst.n + 1):
        prefix.append(prefix[-1] + min_time(inst, j)[0])
    rows = tuple(
        Claim1Row(b, makespan(loads_after(inst, sched, b)), prefix[b]) for b in points
    )
    return Claim1Result(all(r.holds for r in rows), tuple(points), rows)


def check_lemma1(inst: Instance, model: RationalityModel | None = None) -> bool:
    """1-lookahead makespan is at most the sum of minimum processing times."""
    if inst.m != 2:
        raise NotTwoMachines(f"the min-time bound check needs exactly 2 machines, got {inst.m}")
    model = model or RationalityModel.lookahead(1)
    sched = play(inst, model)
    return makespan(loads_after(inst, sched)) <= total_min_time(inst)


# makespan increase -------------------------------------------------------------


def delta_l_samples(inst: Instance, samples: int, seed: int) -> list[tuple[EpsValue, ...]]:
    """Initial load vectors probed by :func:`delta_l_estimate`.

    The zero vector, each unit vector scaled by the summed minimum time, then
    ``samples`` random vectors with entries ``2 * total * i / 1000`` for
    ``i`` uniform on ``0..1000``. A larger ``samples`` extends the same list.
    """
    m = inst.m
    total = total_min_time(inst)
    out = [zero_loads(m)]
    for i in range(m):
        out.append(tuple(total if a == i else EpsValue() for a in range(m)))
    rng = random.Random(seed)
    for _ in range(samples):
        out.append(tuple(total * Fraction(2 * rng.randint(0, 1000), 1000) for _ in range(m)))
    return out


def delta_l_estimate(
    inst: Instance,
    jobs: Sequence[int] | None = None,
    model: RationalityModel | None = None,
    samples: int = 64,
    seed: int = 0,
) -> EpsValue:
    """Sampled lower estimate of the largest makespan increase the given jobs
    can cause over any initial load.

    ``jobs`` are 1-based indices of ``inst`` (all jobs by default) and play
    under ``model`` (perfect play by default). The true supremum is at least
    the returned value.
    """
    sub = inst if jobs is None else inst.subgame(jobs)
    model = model or RationalityModel.perfect()
    best: EpsValue | None = None
    for D in delta_l_samples(sub, samples, seed):
        gain = makespan(final_loads(sub, model, D)) - makespan(D)
        if best is None or gain > best:
            best = gain
    return best


__all__ = [
    "BoundCheck",
    "Claim1Result",
    "DegenerateOpt",
    "NotTwoMachines",
    "ScanRanOffEnd",
    "SpoaReport",
    "breakpoints",
    "check_claim1",
    "check_lemma1",
    "check_theorem_bounds",
    "delta_l_estimate",
    "spoa",
    "spoa_bound",
]
