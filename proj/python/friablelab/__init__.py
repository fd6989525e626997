"""Smooth integers in arithmetic progressions, at desk scale."""

import json as _json

from ._core import (
    AccuracyError,
    CapacityError,
    ConfigError,
    DickmanTable,
    DomainError,
    Error,
    FactorTable,
    KloostermanResult,
    NonInvertibleError,
    RangeError,
    SaddleResult,
    build_rho_table,
    c_alpha,
    gh_values,
    kloosterman,
    lambda_smooth,
    omega_eps,
    psi,
    psi_coprime,
    psi_progression,
    run_cli,
    saddle_alpha,
    titchmarsh_sum,
    titchmarsh_sum_split,
)


def run(command, **params):
    """Run a subcommand with keyword parameters and return its parsed JSON report."""
    args = [command]
    for key, value in params.items():
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        args += ["--" + key, str(value)]
    code, out, err = run_cli(args)
    if code != 0:
        raise RuntimeError(f"friablelab {command} exited with {code}: {err.strip()}")
    return _json.loads(out)
