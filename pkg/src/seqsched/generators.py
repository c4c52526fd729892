"""Instance families: the fixed reference examples, the simple-minded lower-bound
family, and seeded random ensembles."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .model import Instance
from .numeric import EpsValue

TABLE1 = "table1"
TABLE4 = "table4"
TABLE5 = "table5"
SIMPLE_MINDED_FAMILY = "simple-minded"
RANDOM = "random"
FAMILIES = (TABLE1, TABLE4, TABLE5, SIMPLE_MINDED_FAMILY, RANDOM)

DISTRIBUTIONS = ("uniform", "integer")


class InvalidSpec(ValueError):
    pass


def E(c: int | str | Fraction, e: int | str | Fraction = 0) -> EpsValue:
    return EpsValue.of(c, e)


@dataclass(frozen=True)
class GeneratorSpec:
    """What to build.

    ``m``/``n`` are only read by the random and simple-minded families.
    ``eps`` is only used when a concrete (non-symbolic) instance is asked for.
    ``surrogate`` overrides the finite stand-in for infinite entries.
    """

    family: str
    m: int | None = None
    n: int | None = None
    distribution: str = "uniform"
    seed: int | None = None
    eps: Fraction = Fraction(1, 1000)
    surrogate: EpsValue | None = None

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidSpec(f"family: unknown {self.family!r}, expected one of {FAMILIES}")
        if self.family == SIMPLE_MINDED_FAMILY and (self.m is None or self.m < 2):
            raise InvalidSpec(f"m: the simple-minded family needs m >= 2, got {self.m!r}")
        if self.family == RANDOM:
            if self.m is None or self.m < 1:
                raise InvalidSpec(f"m: random instances need m >= 1, got {self.m!r}")
            if self.n is None or self.n < 0:
                raise InvalidSpec(f"n: random instances need n >= 0, got {self.n!r}")
            if self.seed is None:
                raise InvalidSpec("seed: random instances need an explicit seed")
            if self.distribution not in DISTRIBUTIONS:
                raise InvalidSpec(
                    f"distribution: unknown {self.distribution!r}, expected one of {DISTRIBUTIONS}"
                )
        if not self.eps > 0:
            raise InvalidSpec(f"eps: must be positive, got {self.eps}")


def infinity_surrogate(m: int, finite: list[EpsValue]) -> EpsValue:
    """Finite stand-in for an infinite processing time.

    Strictly above ``m * (largest finite constant + 1)``: the smallest power of
    ten that is at least 100 and clears that bound.
    """
    largest = max((t.c for t in finite), default=Fraction(0))
    floor = m * (largest + 1)
    value = 100
    while value <= floor:
        value *= 10
    return EpsValue(Fraction(value))


def table1() -> Instance:
    jobs = [
        (E(3, -11), E(0, 1)),
        (E(0, 1), E(2, -9)),
        (E(0, 1), E(2, -8)),
        (E(1, -2), E(1, -2)),
        (E(2, -8), E(1, -2)),
    ]
    return Instance(2, tuple(jobs), "table1")


def table4() -> Instance:
    return Instance(2, ((E(1, 1), E(1)), (E(2), E(1, 1))), "table4")


def simple_minded_family(m: int, surrogate: EpsValue | None = None) -> Instance:
    """``m`` jobs on ``m`` machines where simple-minded play costs about ``m``
    times the optimum.

    Job ``j`` costs ``1 - eps`` on machine 1, ``1`` on machine ``j`` (j >= 2),
    ``(m+1-j) - (m+2-j) eps`` on machine ``j+1`` (j <= m-1), and is
    unavailable (surrogate) elsewhere.
    """
    if m < 2:
        raise InvalidSpec(f"m: the simple-minded family needs m >= 2, got {m}")
    rows: list[list[EpsValue | None]] = [[None] * m for _ in range(m)]
    for j in range(1, m + 1):
        rows[j - 1][0] = E(1, -1)
        if j >= 2:
            rows[j - 1][j - 1] = E(1)
        if j <= m - 1:
            rows[j - 1][j] = E(m + 1 - j, -(m + 2 - j))
    if surrogate is None:
        surrogate = infinity_surrogate(m, [t for row in rows for t in row if t is not None])
    jobs = tuple(tuple(surrogate if t is None else t for t in row) for row in rows)
    return Instance(m, jobs, f"simple-minded-{m}")


def table5(surrogate: EpsValue | None = None) -> Instance:
    inf = surrogate if surrogate is not None else E(100)
    jobs = [
        (E(1, -1), E(4, -5), inf, inf),
        (E(1, -1), E(1), E(3, -4), inf),
        (E(1, -1), inf, E(1), E(2, -3)),
        (E(1, -1), inf, inf, E(1)),
    ]
    return Instance(4, tuple(jobs), "table5")


def random_instance(m: int, n: int, seed: int, distribution: str = "uniform") -> Instance:
    """Entries ``i/100`` with ``i`` uniform on ``1..1000`` (``uniform``) or
    integers uniform on ``1..5`` (``integer``, tie-heavy); no eps terms."""
    rng = random.Random(seed)
    if distribution == "uniform":
        draw = lambda: Fraction(rng.randint(1, 1000), 100)  # noqa: E731
    elif distribution == "integer":
        draw = lambda: Fraction(rng.randint(1, 5))  # noqa: E731
    else:
        raise InvalidSpec(f"distribution: unknown {distribution!r}")
    jobs = tuple(tuple(EpsValue(draw()) for _ in range(m)) for _ in range(n))
    return Instance(m, jobs, f"random-m{m}-n{n}-s{seed}")


def concretize(inst: Instance, eps: Fraction) -> Instance:
    """Substitute a concrete positive ``eps`` into every entry."""
    jobs = tuple(tuple(EpsValue(t.at(eps)) for t in row) for row in inst.p)
    return Instance(inst.m, jobs, inst.name)


def gen(spec: GeneratorSpec, concrete: bool = False) -> Instance:
    spec.validate()
    if spec.family == TABLE1:
        inst = table1()
    elif spec.family == TABLE4:
        inst = table4()
    elif spec.family == TABLE5:
        inst = table5(spec.surrogate)
    elif spec.family == SIMPLE_MINDED_FAMILY:
        inst = simple_minded_family(spec.m, spec.surrogate)
    else:
        inst = random_instance(spec.m, spec.n, spec.seed, spec.distribution)
    return concretize(inst, spec.eps) if concrete else inst
