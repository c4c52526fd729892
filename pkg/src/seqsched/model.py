"""Instances, schedules and load vectors of the sequential scheduling game.

Machine numbers in :class:`Schedule` and :class:`DecisionRecord` are
1-based, as are job numbers in rendered traces. Processing times are indexed
``inst.p[j][i]`` with 0-based ``j`` (job) and ``i`` (machine).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .numeric import ZERO, EpsValue, ParseError, parse_eps

LoadVector = tuple[EpsValue, ...]


class InstanceError(ValueError):
    """Invalid instance data; the message names the offending field."""


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class Instance:
    """A game ``(N, M, p)``: ``n`` jobs playing in index order on ``m`` machines."""

    m: int
    p: tuple[tuple[EpsValue, ...], ...]
    name: str = ""

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or isinstance(self.m, bool) or self.m < 1:
            raise InstanceError(f"machines: expected an integer >= 1, got {self.m!r}")
        rows = tuple(tuple(parse_eps(t) for t in row) for row in self.p)
        for j, row in enumerate(rows):
            if len(row) != self.m:
                raise InstanceError(
                    f"jobs[{j}]: expected {self.m} processing times, got {len(row)}"
                )
            for i, t in enumerate(row):
                if not t.is_positive():
                    raise InstanceError(
                        f"jobs[{j}][{i}]: processing time must be positive, got {t}"
                    )
        object.__setattr__(self, "p", rows)

    @property
    def n(self) -> int:
        return len(self.p)

    def time(self, machine: int, job: int) -> EpsValue:
        """``p_{machine, job}`` with both arguments 1-based."""
        return self.p[job - 1][machine - 1]

    def subgame(self, jobs: Iterable[int], name: str | None = None) -> Instance:
        """The instance restricted to the given 1-based jobs, in that order."""
        jobs = list(jobs)
        for j in jobs:
            if not 1 <= j <= self.n:
                raise IndexOutOfRange(f"job {j} not in [1..{self.n}]")
        return Instance(self.m, tuple(self.p[j - 1] for j in jobs), name or self.name)

    def with_replaced(self, old: EpsValue, new: EpsValue) -> Instance:
        """Copy with every entry equal to ``old`` replaced by ``new``."""
        rows = tuple(tuple(new if t == old else t for t in row) for row in self.p)
        return Instance(self.m, rows, self.name)

    # file format -----------------------------------------------------------
    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "machines": self.m,
            "jobs": [[t.to_json() for t in row] for row in self.p],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: Any) -> Instance:
        if not isinstance(data, dict):
            raise InstanceError("instance: expected a JSON object")
        if "machines" not in data:
            raise InstanceError("machines: missing")
        if "jobs" not in data or not isinstance(data["jobs"], list):
            raise InstanceError("jobs: missing or not a list")
        rows = []
        for j, row in enumerate(data["jobs"]):
            if not isinstance(row, list):
                raise InstanceError(f"jobs[{j}]: expected a list of processing times")
            parsed = []
            for i, t in enumerate(row):
                try:
                    parsed.append(parse_eps(t))
                except (ParseError, ValueError, TypeError) as exc:
                    raise InstanceError(f"jobs[{j}][{i}]: {exc}") from None
            rows.append(tuple(parsed))
        name = data.get("name", "")
        if not isinstance(name, str):
            raise InstanceError("name: expected a string")
        return cls(data["machines"], tuple(rows), name)

    @classmethod
    def load(cls, path: str | Path) -> Instance:
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InstanceError(f"{path}: not valid JSON ({exc})") from None
        inst = cls.from_dict(data)
        if not inst.name:
            inst = Instance(inst.m, inst.p, path.stem)
        return inst

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())


@dataclass(frozen=True)
class DecisionRecord:
    job: int
    chosen: int
    anticipated_cost: EpsValue
    alternatives: tuple[tuple[int, EpsValue], ...]


@dataclass(frozen=True)
class Schedule:
    sigma: tuple[int, ...]
    trace: tuple[DecisionRecord, ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.sigma)

    def check(self, inst: Instance) -> None:
        if len(self.sigma) != inst.n:
            raise InstanceError(f"sigma: length {len(self.sigma)} != n = {inst.n}")
        for j, i in enumerate(self.sigma, start=1):
            if not 1 <= i <= inst.m:
                raise IndexOutOfRange(f"sigma[{j}] = {i} not in [1..{inst.m}]")


def zero_loads(m: int) -> LoadVector:
    return (ZERO,) * m


def loads_after(
    inst: Instance,
    sigma: Schedule | Sequence[int],
    upto: int | None = None,
    initial: Sequence[EpsValue] | None = None,
) -> LoadVector:
    """Machine loads once jobs ``1..upto`` have been placed according to ``sigma``."""
    choices = sigma.sigma if isinstance(sigma, Schedule) else tuple(sigma)
    upto = inst.n if upto is None else upto
    if not 0 <= upto <= inst.n or upto > len(choices):
        raise IndexOutOfRange(f"upto = {upto} outside [0..{min(inst.n, len(choices))}]")
    loads = list(initial) if initial is not None else list(zero_loads(inst.m))
    if len(loads) != inst.m:
        raise IndexOutOfRange(f"initial load vector has {len(loads)} entries, need {inst.m}")
    for j in range(upto):
        i = choices[j]
        if not 1 <= i <= inst.m:
            raise IndexOutOfRange(f"sigma[{j + 1}] = {i} not in [1..{inst.m}]")
        loads[i - 1] = loads[i - 1] + inst.p[j][i - 1]
    return tuple(loads)


def makespan(loads: Iterable[EpsValue]) -> EpsValue:
    return max(loads, default=ZERO)


def min_time(inst: Instance, j: int) -> tuple[EpsValue, int]:
    """Smallest processing time of 1-based job ``j`` and the lowest machine attaining it."""
    row = inst.p[j - 1]
    best = 0
    for i in range(1, len(row)):
        if row[i] < row[best]:
            best = i
    return row[best], best + 1


def total_min_time(inst: Instance) -> EpsValue:
    """Sum over jobs of their minimum processing time."""
    total = ZERO
    for j in range(1, inst.n + 1):
        total = total + min_time(inst, j)[0]
    return total
