"""Two-way wiretap channel toolbox: rate regions, exponents, and
desk-scale verification of the ensemble-average secrecy/reliability bounds.

The structured operations take and return plain dicts (json underneath,
identical schemas to the `twwc` CLI); the scalar information measures are
direct functions. All values are in nats unless bits=True is passed.
"""

import json as _json

from ._core import (
    ConvergenceError,
    SizingError,
    ValidationError,
    breve_mi,
    breve_mi_conditional,
    kl_divergence,
    log_sum_exp,
    mi_down,
    mi_up,
    mi_up_conditional,
    renyi_entropy,
    renyi_relative_entropy,
    run as _run,
    shannon_entropy,
    shannon_mi,
)

__all__ = [
    "ConvergenceError",
    "SizingError",
    "ValidationError",
    "breve_mi",
    "breve_mi_conditional",
    "exponent",
    "fm",
    "kl_divergence",
    "log_sum_exp",
    "mi_down",
    "mi_up",
    "mi_up_conditional",
    "region",
    "renyi_entropy",
    "renyi_relative_entropy",
    "shannon_entropy",
    "shannon_mi",
    "simulate",
    "verify_gallager",
    "verify_resolvability",
]


def _dispatch(command, spec, **kwargs):
    text = _run(command, _json.dumps(spec), **kwargs)
    if kwargs.get("format") == "csv":
        return text
    return _json.loads(text)


def region(spec, **kwargs):
    """Rate region of a channel spec dict; see the CLI `region` command."""
    return _dispatch("region", spec, **kwargs)


def exponent(spec, **kwargs):
    """Finite-blocklength exponent table; see the CLI `exponent` command."""
    return _dispatch("exponent", spec, **kwargs)


def simulate(spec, **kwargs):
    """Monte Carlo error trials plus exact leakage of a sampled codebook."""
    return _dispatch("simulate", spec, **kwargs)


def verify_resolvability(spec, **kwargs):
    """Check E_C[divergence] against the resolvability bound."""
    return _dispatch("verify-resolvability", spec, **kwargs)


def verify_gallager(spec, **kwargs):
    """Check the exact ensemble ML error against the random-coding bound."""
    return _dispatch("verify-gallager", spec, **kwargs)


def fm(spec, **kwargs):
    """Fourier-Motzkin elimination of a linear inequality system."""
    return _dispatch("fm", spec, **kwargs)
