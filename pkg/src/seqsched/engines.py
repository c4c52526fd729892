"""Decision procedures for players of the sequential scheduling game.

Four rationality models are supported:

* ``perfect``: backward induction over the whole remaining game (SPE play).
* ``lookahead(k)``: backward induction over the player and its next ``k``
  successors, treating the last job of that window as the last job.
* ``simple-minded``: the player assumes every successor goes to its
  minimum-processing-time machine and picks the machine with the least
  anticipated load.
* ``greedy``: current load plus own processing time.

All ties, at every level of every induction, go to the lowest machine index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import (
    DecisionRecord,
    Instance,
    LoadVector,
    Schedule,
    min_time,
    zero_loads,
)
from .numeric import EpsValue

PERFECT = "perfect"
LOOKAHEAD = "lookahead"
SIMPLE_MINDED = "simple-minded"
GREEDY = "greedy"
KINDS = (PERFECT, LOOKAHEAD, SIMPLE_MINDED, GREEDY)

# Largest induction depth accepted per machine count; m = 1 is never limited.
DEPTH_LIMIT_TWO_MACHINES = 22
DEPTH_LIMIT_MANY_MACHINES = 14


class TreeTooLarge(RuntimeError):
    """A backward-induction window exceeds the configured depth guard."""


@dataclass(frozen=True)
class RationalityModel:
    kind: str
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"model: unknown kind {self.kind!r}, expected one of {KINDS}")
        if self.kind == LOOKAHEAD:
            if not isinstance(self.k, int) or self.k < 0:
                raise ValueError(f"k: lookahead depth must be an integer >= 0, got {self.k!r}")
        elif self.k is not None:
            raise ValueError(f"k: only meaningful for lookahead, got k={self.k} for {self.kind}")

    @classmethod
    def perfect(cls) -> RationalityModel:
        return cls(PERFECT)

    @classmethod
    def lookahead(cls, k: int) -> RationalityModel:
        return cls(LOOKAHEAD, k)

    @classmethod
    def simple_minded(cls) -> RationalityModel:
        return cls(SIMPLE_MINDED)

    @classmethod
    def greedy(cls) -> RationalityModel:
        return cls(GREEDY)

    @classmethod
    def parse(cls, name: str, k: int | None = None) -> RationalityModel:
        name = name.strip().lower().replace("_", "-")
        if name == "simpleminded":
            name = SIMPLE_MINDED
        if name == LOOKAHEAD:
            if k is None:
                raise ValueError("k: --k is required for the lookahead model")
            return cls(LOOKAHEAD, k)
        return cls(name)

    def __str__(self) -> str:
        return f"lookahead({self.k})" if self.kind == LOOKAHEAD else self.kind


def depth_limit(m: int) -> int | None:
    if m <= 1:
        return None
    return DEPTH_LIMIT_TWO_MACHINES if m == 2 else DEPTH_LIMIT_MANY_MACHINES


def _guard(m: int, depth: int) -> None:
    limit = depth_limit(m)
    if limit is not None and depth > limit:
        raise TreeTooLarge(
            f"backward induction over {depth} jobs on {m} machines exceeds the limit of {limit}"
        )


def _place(loads: LoadVector, i: int, t: EpsValue) -> LoadVector:
    return loads[:i] + (loads[i] + t,) + loads[i + 1 :]


def _argmin(costs: Sequence[EpsValue]) -> int:
    best = 0
    for i in range(1, len(costs)):
        if costs[i] < costs[best]:
            best = i
    return best


def _induce(p: Sequence[Sequence[EpsValue]], loads: LoadVector, start: int, stop: int) -> LoadVector:
    """Final loads when jobs ``start..stop-1`` (0-based) play backward induction
    on the truncated game that ends with job ``stop-1``."""
    if start >= stop:
        return loads
    best_cost = None
    best_final = loads
    for i, t in enumerate(p[start]):
        final = _induce(p, _place(loads, i, t), start + 1, stop)
        if best_cost is None or final[i] < best_cost:
            best_cost = final[i]
            best_final = final
    return best_final


def _window_costs(inst: Instance, j: int, loads: LoadVector, stop: int) -> list[EpsValue]:
    """Anticipated cost of each machine for 1-based job ``j`` when the game is
    truncated after 0-based index ``stop - 1``."""
    _guard(inst.m, stop - (j - 1))
    row = inst.p[j - 1]
    return [_induce(inst.p, _place(loads, i, t), j, stop)[i] for i, t in enumerate(row)]


def perfect_costs(inst: Instance, j: int, loads: LoadVector) -> list[EpsValue]:
    return _window_costs(inst, j, tuple(loads), inst.n)


def lookahead_costs(inst: Instance, j: int, loads: LoadVector, k: int) -> list[EpsValue]:
    return _window_costs(inst, j, tuple(loads), min(j + k, inst.n))


def assumed_machines(inst: Instance) -> list[int]:
    """0-based machine each job is assumed to take by a simple-minded predecessor."""
    return [min_time(inst, j)[1] - 1 for j in range(1, inst.n + 1)]


def assumed_suffix_loads(inst: Instance) -> list[LoadVector]:
    """``out[l][i]`` is P_i([l+1 : n]): time of jobs after the first ``l``
    that are assumed to choose machine ``i``, for ``l = 0..n``."""
    out = [zero_loads(inst.m)]
    assumed = assumed_machines(inst)
    for j in range(inst.n - 1, -1, -1):
        i = assumed[j]
        out.append(_place(out[-1], i, inst.p[j][i]))
    out.reverse()
    return out


def _simple_minded_costs(inst: Instance, j: int, loads: LoadVector, rest: LoadVector) -> list[EpsValue]:
    return [loads[i] + t + rest[i] for i, t in enumerate(inst.p[j - 1])]


def simple_minded_costs(inst: Instance, j: int, loads: LoadVector) -> list[EpsValue]:
    rest = list(zero_loads(inst.m))
    for jj in range(j + 1, inst.n + 1):
        t, i = min_time(inst, jj)
        rest[i - 1] = rest[i - 1] + t
    return _simple_minded_costs(inst, j, tuple(loads), tuple(rest))


def greedy_costs(inst: Instance, j: int, loads: LoadVector) -> list[EpsValue]:
    return [loads[i] + t for i, t in enumerate(inst.p[j - 1])]


def _decide(costs: list[EpsValue]) -> tuple[int, EpsValue]:
    i = _argmin(costs)
    return i + 1, costs[i]


def decide_perfect(inst: Instance, j: int, loads: LoadVector) -> tuple[int, EpsValue]:
    """Machine (1-based) chosen by job ``j`` under full backward induction and
    its anticipated final load."""
    return _decide(perfect_costs(inst, j, loads))


def decide_lookahead(inst: Instance, j: int, loads: LoadVector, k: int) -> tuple[int, EpsValue]:
    return _decide(lookahead_costs(inst, j, loads, k))


def decide_simple_minded(inst: Instance, j: int, loads: LoadVector) -> tuple[int, EpsValue]:
    return _decide(simple_minded_costs(inst, j, loads))


def decide_greedy(inst: Instance, j: int, loads: LoadVector) -> tuple[int, EpsValue]:
    return _decide(greedy_costs(inst, j, loads))


def play(
    inst: Instance,
    model: RationalityModel,
    initial: Sequence[EpsValue] | None = None,
) -> Schedule:
    """Let jobs ``1..n`` choose in order, each running ``model``'s decision rule
    on the loads left by its predecessors."""
    loads = tuple(initial) if initial is not None else zero_loads(inst.m)
    if len(loads) != inst.m:
        raise ValueError(f"initial: expected {inst.m} loads, got {len(loads)}")
    if model.kind == PERFECT:
        _guard(inst.m, inst.n)
    elif model.kind == LOOKAHEAD:
        _guard(inst.m, min(model.k + 1, inst.n))
    suffix = assumed_suffix_loads(inst) if model.kind == SIMPLE_MINDED else None

    sigma: list[int] = []
    trace: list[DecisionRecord] = []
    for j in range(1, inst.n + 1):
        if model.kind == PERFECT:
            costs = perfect_costs(inst, j, loads)
        elif model.kind == LOOKAHEAD:
            costs = lookahead_costs(inst, j, loads, model.k)
        elif model.kind == SIMPLE_MINDED:
            costs = _simple_minded_costs(inst, j, loads, suffix[j])
        else:
            costs = greedy_costs(inst, j, loads)
        i = _argmin(costs)
        sigma.append(i + 1)
        trace.append(
            DecisionRecord(
                job=j,
                chosen=i + 1,
                anticipated_cost=costs[i],
                alternatives=tuple((a + 1, c) for a, c in enumerate(costs)),
            )
        )
        loads = _place(loads, i, inst.p[j - 1][i])
    return Schedule(tuple(sigma), tuple(trace))


def final_loads(inst: Instance, model: RationalityModel, initial: Sequence[EpsValue] | None = None) -> LoadVector:
    """``L(D, N)``: loads after all jobs play from initial loads ``D``."""
    loads = list(initial) if initial is not None else list(zero_loads(inst.m))
    for j, i in enumerate(play(inst, model, initial).sigma):
        loads[i - 1] = loads[i - 1] + inst.p[j][i - 1]
    return tuple(loads)


def simple_minded_potentials(inst: Instance, sigma: Schedule | Sequence[int]) -> list[LoadVector]:
    """``A(l)`` for ``l = 0..n`` with ``A_i(l) = D_i(l) + P_i([l+1 : n])``.

    ``D_i(l)`` is the load of machine ``i`` after the first ``l`` jobs of
    ``sigma``; ``P_i`` sums the successors assumed to take machine ``i``.
    """
    choices = sigma.sigma if isinstance(sigma, Schedule) else tuple(sigma)
    suffix = assumed_suffix_loads(inst)
    loads = zero_loads(inst.m)
    out = []
    for l in range(inst.n + 1):
        out.append(tuple(d + r for d, r in zip(loads, suffix[l])))
        if l < inst.n:
            i = choices[l] - 1
            loads = _place(loads, i, inst.p[l][i])
    return out


__all__ = [
    "GREEDY",
    "LOOKAHEAD",
    "PERFECT",
    "SIMPLE_MINDED",
    "RationalityModel",
    "TreeTooLarge",
    "assumed_suffix_loads",
    "decide_greedy",
    "decide_lookahead",
    "decide_perfect",
    "decide_simple_minded",
    "final_loads",
    "play",
    "simple_minded_potentials",
]
