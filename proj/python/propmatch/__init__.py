from ._core import (
    Profile,
    PropmatchError,
    is_ordinally_efficient,
    is_pareto_efficient,
    probabilistic_serial,
    random_assignment,
    run,
    run_engine,
    utilitarian_loss,
)

__all__ = [
    "Profile",
    "PropmatchError",
    "is_ordinally_efficient",
    "is_pareto_efficient",
    "probabilistic_serial",
    "random_assignment",
    "run",
    "run_engine",
    "utilitarian_loss",
]
