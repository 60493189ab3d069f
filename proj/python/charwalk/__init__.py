"""Character-sum walks modulo m and their random-walk model."""

import json as _json

from ._charwalk import (
    InvalidInput,
    ResourceLimit,
    StatisticKind,
    WalkKind,
    __version__,
    block_pattern_census,
    char_walk_distribution,
    is_perfect_square,
    is_prime,
    is_squarefree,
    legendre_symbol,
    poly_eval,
    psi_decay_bound,
    psi_exact,
    psi_N,
    sieve_primes,
    sign_pattern_fraction,
    theorem1_check,
    twisted_char_sum,
    variance_statistic,
    variance_sum_exact,
    walk_enumerate,
    walk_monte_carlo,
    weil_bound_check,
)
from ._charwalk import run_experiment_json as _run_experiment_json


def run_experiment(command, **parameters):
    """Run a CLI command in-process and return the report as a dict.

    Keyword names follow the CLI flags with dashes replaced by underscores,
    e.g. ``run_experiment("char-dist", p=7, poly="0,1", m=2)``.
    """
    params = {k.replace("_", "-"): str(v) for k, v in parameters.items()}
    text, _csv, _status = _run_experiment_json(command, params)
    return _json.loads(text)


def run_experiment_csv(command, **parameters):
    """Like run_experiment but returns the CSV text of the primary table."""
    params = {k.replace("_", "-"): str(v) for k, v in parameters.items()}
    return _run_experiment_json(command, params)[1]


def verify(level="fast", threads=0):
    """Run the bundled acceptance checks; returns the report dict."""
    return run_experiment("verify", level=level, threads=threads)
