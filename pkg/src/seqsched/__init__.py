"""Sequential scheduling games on unrelated machines with boundedly rational players."""

from .analysis import (
    SpoaReport,
    breakpoints,
    check_claim1,
    check_lemma1,
    check_theorem_bounds,
    delta_l_estimate,
    spoa,
    spoa_bound,
)
from .engines import RationalityModel, play
from .generators import GeneratorSpec, gen
from .model import Instance, Schedule, loads_after, makespan, min_time
from .numeric import EpsValue, compare, limit_ratio, parse_eps
from .optimal import opt, opt_exhaustive, opt_lower_bounds

__version__ = "0.1.0"

__all__ = [
    "EpsValue",
    "GeneratorSpec",
    "Instance",
    "RationalityModel",
    "Schedule",
    "SpoaReport",
    "breakpoints",
    "check_claim1",
    "check_lemma1",
    "check_theorem_bounds",
    "compare",
    "delta_l_estimate",
    "gen",
    "limit_ratio",
    "loads_after",
    "makespan",
    "min_time",
    "opt",
    "opt_exhaustive",
    "opt_lower_bounds",
    "parse_eps",
    "play",
    "spoa",
    "spoa_bound",
]
