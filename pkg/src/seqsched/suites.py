"""Seeded property ensembles shared by ``seqsched verify`` and the test suite.

Every trial derives its own instance from ``(ensemble, seed, trial)`` so a
failing trial can be regenerated in isolation, and results do not depend on
how trials are spread over worker processes.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .analysis import ScanRanOffEnd, check_claim1, check_lemma1, spoa, spoa_bound
from .engines import RationalityModel, play, simple_minded_potentials
from .generators import random_instance
from .model import Instance, makespan
from .optimal import opt, opt_exhaustive

Case = tuple[str, int, int]


@dataclass
class Outcome:
    ok: bool
    detail: str = ""
    instance: Instance | None = None


@dataclass
class SuiteResult:
    suite: str
    seed: int
    trials: int
    passed: int = 0
    failed: int = 0
    first_failure: Outcome | None = None
    failures: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def ensemble_instance(
    ensemble: str,
    seed: int,
    trial: int,
    machines: tuple[int, ...],
    n_max: int,
    n_min: int = 1,
    distribution: str = "uniform",
) -> Instance:
    rng = random.Random(f"{ensemble}:{seed}:{trial}")
    m = rng.choice(machines)
    n = rng.randint(n_min, n_max)
    inst = random_instance(m, n, rng.getrandbits(32), distribution)
    return Instance(inst.m, inst.p, f"{ensemble}-s{seed}-t{trial}-m{m}-n{n}")


# individual suites -------------------------------------------------------------


def _two_machine(seed: int, trial: int) -> Instance:
    return ensemble_instance("two-machine", seed, trial, (2,), 10)


def check_lemma1_case(seed: int, trial: int) -> Outcome:
    inst = _two_machine(seed, trial)
    if check_lemma1(inst):
        return Outcome(True)
    return Outcome(False, "1-lookahead makespan exceeds the summed minimum times", inst)


def check_claim1_case(seed: int, trial: int) -> Outcome:
    inst = _two_machine(seed, trial)
    try:
        res = check_claim1(inst)
    except ScanRanOffEnd as exc:
        return Outcome(False, f"ScanRanOffEnd: {exc}", inst)
    if res.holds:
        return Outcome(True)
    bad = next(r for r in res.rows if not r.holds)
    return Outcome(
        False,
        f"breakpoint {bad.breakpoint}: max load {bad.max_load} > {bad.min_time_sum}",
        inst,
    )


def check_monotone_case(seed: int, trial: int) -> Outcome:
    inst = ensemble_instance("simple-minded", seed, trial, (1, 2, 3, 4, 5), 12)
    sched = play(inst, RationalityModel.simple_minded())
    amax = [makespan(a) for a in simple_minded_potentials(inst, sched)]
    for l in range(1, len(amax)):
        if amax[l] > amax[l - 1]:
            return Outcome(False, f"A_max({l}) = {amax[l]} > A_max({l - 1}) = {amax[l - 1]}", inst)
    return Outcome(True)


THEOREM_MODELS: dict[int, tuple[RationalityModel, ...]] = {
    2: (
        RationalityModel.lookahead(2),
        RationalityModel.lookahead(3),
        RationalityModel.greedy(),
        RationalityModel.simple_minded(),
    ),
    3: (
        RationalityModel.lookahead(1),
        RationalityModel.lookahead(2),
        RationalityModel.greedy(),
        RationalityModel.simple_minded(),
    ),
    4: (
        RationalityModel.lookahead(1),
        RationalityModel.lookahead(2),
        RationalityModel.greedy(),
        RationalityModel.simple_minded(),
    ),
}


def check_theorem_case(seed: int, trial: int) -> Outcome:
    """One random instance per machine count, every model that has a bound there.

    Trial ``t`` uses machine count ``(2, 3, 4)[t % 3]`` so ``3 * T`` trials give
    ``T`` instances per machine count.
    """
    m = (2, 3, 4)[trial % 3]
    inst = ensemble_instance(f"theorem-m{m}", seed, trial // 3, (m,), 10)
    optimum = opt(inst)
    for model in THEOREM_MODELS[m]:
        rep = spoa(inst, model, optimum=optimum)
        if not rep.bound_satisfied:
            return Outcome(
                False,
                f"{model}: ratio {rep.ratio_limit} > bound {spoa_bound(model, inst.m, inst.n)}",
                inst,
            )
    return Outcome(True)


def check_coincidence_case(seed: int, trial: int, distribution: str = "uniform") -> Outcome:
    if trial % 2 == 0:
        inst = ensemble_instance("coincidence-m2", seed, trial, (2,), 8, distribution=distribution)
    else:
        inst = ensemble_instance("coincidence-m3", seed, trial, (3,), 6, distribution=distribution)
    perfect = play(inst, RationalityModel.perfect()).sigma
    for k in (inst.n - 1, inst.n, inst.n + 2):
        if k < 0:
            continue
        got = play(inst, RationalityModel.lookahead(k)).sigma
        if got != perfect:
            return Outcome(False, f"lookahead({k}) {got} != perfect {perfect}", inst)
    greedy = play(inst, RationalityModel.greedy()).sigma
    zero = play(inst, RationalityModel.lookahead(0)).sigma
    if zero != greedy:
        return Outcome(False, f"lookahead(0) {zero} != greedy {greedy}", inst)
    return Outcome(True)


def check_opt_case(seed: int, trial: int) -> Outcome:
    inst = ensemble_instance("opt-oracle", seed, trial, (1, 2, 3), 8)
    fast = opt(inst)
    slow = opt_exhaustive(inst)
    if fast.makespan != slow.makespan:
        return Outcome(False, f"branch and bound {fast.makespan} != exhaustive {slow.makespan}", inst)
    return Outcome(True)


SUITES: dict[str, Callable[[int, int], Outcome]] = {
    "lemma1": check_lemma1_case,
    "claim1": check_claim1_case,
    "simpleminded-monotone": check_monotone_case,
    "theorem-bounds": check_theorem_case,
    "model-coincidence": check_coincidence_case,
    "opt-oracle": check_opt_case,
}


def _run_one(args: tuple[str, int, int]) -> Outcome:
    name, seed, trial = args
    try:
        return SUITES[name](seed, trial)
    except Exception as exc:  # a crash inside a trial is a failed trial
        return Outcome(False, f"{type(exc).__name__}: {exc}")


def run_suite(name: str, trials: int, seed: int, jobs: int = 1) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    cases = [(name, seed, t) for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_one, cases, chunksize=max(1, trials // (4 * jobs))))
    else:
        outcomes = [_run_one(c) for c in cases]
    res = SuiteResult(name, seed, trials)
    for t, out in enumerate(outcomes):
        if out.ok:
            res.passed += 1
        else:
            res.failed += 1
            res.failures.append(t)
            if res.first_failure is None:
                res.first_failure = out
    return res
