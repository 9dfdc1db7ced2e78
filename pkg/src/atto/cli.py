"""Command-line front-end: build operators, test membership, recover symbols.

Usage::

    atto <command> --config <file> [--csv <path>] [--seed N]

with command one of space-info, build, check-membership, recover,
verify-suite.  Configuration is a JSON object; reports are JSON on stdout
(schema field "atto-report/1"), machine-readable errors go to stderr.  Exit
codes: 0 success, 1 validation failure, 2 not-divisible / not-in-class,
3 tolerance failure inside verify-suite.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import inner as inner_mod
from .errors import AttoError, NotDivisible, NotInClass
from .grid import GridFunction
from .model import Decomposition, ModelSpace, kernels
from .operators import AttoMatrix, SymbolPair, build_atto, build_atto_from_pair
from .characterize import membership_extract, mu_nu_extract
from .recover import gauge_fit, recover_symbol_from_actions, recover_symbol_from_mu_nu
from .serialize import (
    complex_to_json,
    inner_from_json,
    laurent_from_json,
    matrix_from_json,
    matrix_to_json,
    vector_from_json,
    vector_to_json,
)
from .verify import run_suite

SCHEMA = "atto-report/1"
COMMANDS = ("space-info", "build", "check-membership", "recover", "verify-suite")


class ConfigError(AttoError):
    pass


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc


def _inner_from_config(config: dict, key: str, required=True):
    if key not in config:
        if required:
            raise ConfigError(f"config is missing {key!r}")
        return None
    try:
        return inner_from_json(config[key])
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"invalid inner function under {key!r}: {exc}") from exc


def _symbol_from_config(config: dict, dec: Decomposition):
    spec = config.get("symbol")
    if spec is None:
        raise ConfigError("config is missing 'symbol'")
    if "laurent" in spec:
        return GridFunction.from_laurent(laurent_from_json(spec["laurent"]), dec.m), None
    if "pair" in spec:
        pair = SymbolPair(psi=vector_from_json(spec["pair"]["psi"]),
                          chi=vector_from_json(spec["pair"]["chi"]))
        if pair.psi.size != dec.alpha_space.dim or pair.chi.size != dec.theta_space.dim:
            raise ConfigError("symbol pair lengths do not match the space dimensions")
        return None, pair
    raise ConfigError("symbol must contain 'laurent' or 'pair'")


def _matrix_from_config(config: dict) -> np.ndarray:
    if "matrix" in config:
        return matrix_from_json(config["matrix"])
    if "matrix_file" in config:
        with open(config["matrix_file"], "r", encoding="utf-8") as handle:
            return matrix_from_json(json.load(handle))
    raise ConfigError("config is missing 'matrix' or 'matrix_file'")


def _operator_from_config(config: dict, theta, alpha, dec: Decomposition) -> AttoMatrix:
    if "symbol" in config:
        phi, pair = _symbol_from_config(config, dec)
        if pair is not None:
            return build_atto_from_pair(theta, alpha, pair, m=dec.m)
        return build_atto(theta, alpha, phi, m=dec.m)
    matrix = _matrix_from_config(config)
    return AttoMatrix(domain=theta, codomain=alpha, matrix=matrix,
                      domain_space=dec.theta_space, codomain_space=dec.alpha_space)


def _write_csv(path: str, matrix: np.ndarray):
    with open(path, "w", encoding="utf-8") as handle:
        for row in matrix:
            cells = []
            for value in row:
                cells.append(repr(float(value.real)))
                cells.append(repr(float(value.imag)))
            handle.write(",".join(cells) + "\n")


def _pair_report(pair: SymbolPair) -> dict:
    return {"psi": vector_to_json(pair.psi), "chi": vector_to_json(pair.chi)}


def cmd_space_info(config: dict) -> dict:
    theta = _inner_from_config(config, "theta")
    alpha = _inner_from_config(config, "alpha", required=False)
    report = {"schema": SCHEMA, "command": "space-info"}
    if alpha is not None:
        dec = Decomposition.build(theta, alpha)
        spaces = {"theta": dec.theta_space, "alpha": dec.alpha_space}
        if dec.quot_space is not None:
            spaces["theta_over_alpha"] = dec.quot_space
        report["grid_size"] = dec.m
    else:
        space = ModelSpace.build(theta)
        spaces = {"theta": space}
        report["grid_size"] = space.m
    for name, space in spaces.items():
        shift, shift_adj = space.compressed_shift()
        vectors = kernels(space)
        report[name] = {
            "dim": space.dim,
            "k0": vector_to_json(vectors.k0),
            "k0_tilde": vector_to_json(vectors.k0_tilde),
            "shift": matrix_to_json(shift),
            "shift_adjoint": matrix_to_json(shift_adj),
        }
    return report


def cmd_build(config: dict, csv_path=None) -> dict:
    theta = _inner_from_config(config, "theta")
    alpha = _inner_from_config(config, "alpha")
    dec = Decomposition.build(theta, alpha)
    operator = _operator_from_config(config, theta, alpha, dec)
    if csv_path:
        _write_csv(csv_path, operator.matrix)
    return {
        "schema": SCHEMA,
        "command": "build",
        "grid_size": dec.m,
        "matrix": matrix_to_json(operator.matrix),
        "operator_norm": operator.norm(),
    }


def cmd_check_membership(config: dict) -> dict:
    theta = _inner_from_config(config, "theta")
    alpha = _inner_from_config(config, "alpha")
    dec = Decomposition.build(theta, alpha)
    matrix = _matrix_from_config(config)
    tol = float(config.get("tolerances", {}).get("residual_threshold", 1e-8))
    report = membership_extract(theta, alpha, matrix, dec, tol=tol)
    out = {
        "schema": SCHEMA,
        "command": "check-membership",
        "in_class": report.in_class,
        "residual": report.residual,
    }
    if report.pair is not None:
        out.update(_pair_report(report.pair))
    return out


def cmd_recover(config: dict) -> dict:
    theta = _inner_from_config(config, "theta")
    alpha = _inner_from_config(config, "alpha")
    dec = Decomposition.build(theta, alpha)
    operator = _operator_from_config(config, theta, alpha, dec)

    pair_actions = recover_symbol_from_actions(theta, alpha, operator)
    back_actions = build_atto_from_pair(theta, alpha, pair_actions, m=dec.m)
    res_actions = float(np.linalg.norm(back_actions.matrix - operator.matrix, 2))

    extraction = mu_nu_extract(theta, alpha, operator.matrix, dec)
    if not extraction.in_class:
        raise NotInClass("matrix is not in the Toeplitz class",
                         residual=extraction.residual)
    pair_mu_nu = recover_symbol_from_mu_nu(theta, alpha, extraction.data, dec)
    back_mu_nu = build_atto_from_pair(theta, alpha, pair_mu_nu, m=dec.m)
    res_mu_nu = float(np.linalg.norm(back_mu_nu.matrix - operator.matrix, 2))

    gauge_c, gauge_res = gauge_fit(pair_actions, pair_mu_nu,
                                   dec.alpha_space.k0, dec.theta_space.k0)
    return {
        "schema": SCHEMA,
        "command": "recover",
        "grid_size": dec.m,
        "paths": {
            "actions": {**_pair_report(pair_actions), "residual": res_actions,
                        "path": "actions"},
            "mu_nu": {**_pair_report(pair_mu_nu), "residual": res_mu_nu,
                      "gauge_c": complex_to_json(gauge_c), "path": "mu_nu"},
        },
        "agreement": {
            "gauge_c": complex_to_json(gauge_c),
            "post_gauge_residual": gauge_res,
            "matrix_residual": float(np.linalg.norm(back_actions.matrix - back_mu_nu.matrix, 2)),
        },
    }


def cmd_verify_suite(config: dict, seed=None) -> dict:
    seed = int(config.get("seed", 42)) if seed is None else seed
    cases = config.get("cases")
    cases = int(cases) if cases is not None else None
    report = run_suite(seed=seed, cases=cases)
    report["schema"] = SCHEMA
    report["command"] = "verify-suite"
    return report


def _validate_divisibility(config: dict):
    theta = _inner_from_config(config, "theta", required=False)
    alpha = _inner_from_config(config, "alpha", required=False)
    if theta is not None and alpha is not None and not inner_mod.divides(alpha, theta):
        raise NotDivisible("alpha does not divide theta")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="atto",
        description="Model spaces and truncated Toeplitz operators between them.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="JSON configuration file")
    parser.add_argument("--csv", help="also dump the built matrix as CSV (re,im pairs)")
    parser.add_argument("--seed", type=int, help="override the config seed")
    args = parser.parse_args(argv)

    try:
        config = _load_config(args.config)
        if "command" in config and config["command"] != args.command:
            raise ConfigError(
                f"config command {config['command']!r} conflicts with {args.command!r}"
            )
        if "tolerances" in config and "grid_floor" in config["tolerances"]:
            os.environ["ATTO_GRID_FLOOR"] = str(int(config["tolerances"]["grid_floor"]))
        _validate_divisibility(config)
        if args.command == "space-info":
            report = cmd_space_info(config)
        elif args.command == "build":
            report = cmd_build(config, csv_path=args.csv)
        elif args.command == "check-membership":
            report = cmd_check_membership(config)
        elif args.command == "recover":
            report = cmd_recover(config)
        else:
            report = cmd_verify_suite(config, seed=args.seed)
    except (NotDivisible, NotInClass) as exc:
        _emit_error(exc)
        return 2
    except AttoError as exc:
        _emit_error(exc)
        return 1
    except OSError as exc:
        _emit_error(exc)
        return 1

    if "seed" in config or args.seed is not None:
        report.setdefault("seed", args.seed if args.seed is not None else config.get("seed"))
    print(json.dumps(report, sort_keys=True))
    if args.command == "verify-suite" and not report["passed"]:
        return 3
    return 0


def _emit_error(exc: Exception):
    payload = {"error": type(exc).__name__, "message": str(exc)}
    residual = getattr(exc, "residual", None)
    if residual is not None:
        payload["residual"] = residual
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
