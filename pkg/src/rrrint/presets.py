"""Built-in experiment configurations (plain JSON-compatible dicts)."""

from __future__ import annotations

import copy

_STATIONARY_SPEC = {
    "Lambda": [[1.0, 0.0, 0.0, 0.0], [0.4, 1.0, 0.0, 0.0]],
    "Sigma": [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]],
    "b_r": [[1.0, 0.5, -0.5], [0.5, 0.25, -0.25]],
    "b_u": [[0.3], [-0.2]],
    "H_r": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    "H_u": [[1.0]],
    "ma_coeffs": [
        [[1.0, 0.0, 0.0, 0.0], [0.3, 1.0, 0.0, 0.0], [0.0, 0.3, 1.0, 0.0], [0.0, 0.0, 0.3, 1.0]],
        [[0.4, 0.0, 0.0, 0.0], [0.0, 0.4, 0.0, 0.0], [0.0, 0.0, 0.4, 0.0], [0.0, 0.0, 0.0, 0.4]],
    ],
    "c_r": 0, "c_u": 0, "n": 1, "name": "stationary",
}

_ANDERSON = {"builder": "anderson_var1",
             "args": {"Upsilon22": [[-0.5]], "Sigma_W": [[1.0, 0.5], [0.5, 1.0]], "c_y_block": 1}}

_JOHANSEN = {"builder": "johansen_vecm",
             "args": {"alpha": [[-0.3], [0.2], [0.1]], "beta": [[1.0], [-1.0], [0.0]],
                      "lag_coeffs": [[[0.2, 0.0, 0.0], [0.0, 0.2, 0.0], [0.0, 0.0, 0.2]]],
                      "Sigma": [[1.0, 0.3, 0.0], [0.3, 1.0, 0.0], [0.0, 0.0, 1.0]]}}

_CY_POSITIVE = {"builder": "cy_positive",
                "args": {"s": 3, "m_r": 3, "m_u": 1, "c_r": 2, "c_u": 1, "n": 2, "c_y": 1, "seed": 5}}

ALL4 = ["OLS", "RRR", "FM_OLS", "FM_RRR"]

PRESETS = {
    "stationary": {
        "description": "no integrated regressors; sqrt(T) rates and the Kronecker covariance of OLS / FM-OLS",
        "config": {
            "seed": 20240101,
            "experiments": [
                {"id": "stationary-rate", "kind": "rate", "spec": _STATIONARY_SPEC, "estimators": ALL4,
                 "T_grid": [200, 400, 800, 1600], "R": 200},
                {"id": "stationary-cov", "kind": "dist", "spec": _STATIONARY_SPEC,
                 "estimators": ["OLS", "FM_OLS"], "T_grid": [1000], "R": 300},
                {"id": "stationary-matched", "kind": "matched", "spec": _STATIONARY_SPEC,
                 "estimators": ["OLS", "RRR"], "T_grid": [400, 800, 1600], "R": 200},
            ],
        },
    },
    "anderson-var1": {
        "description": "first-order VAR with a unit-root block (c_y = 0): identities and FM-OLS vs RRR",
        "config": {
            "seed": 7,
            "experiments": [
                {"id": "anderson-identity", "kind": "identity", "spec": _ANDERSON, "T_grid": [400], "R": 50},
                {"id": "anderson-matched", "kind": "matched", "spec": _ANDERSON,
                 "estimators": ["OLS", "RRR", "FM_OLS"], "T_grid": [250, 500, 1000], "R": 300},
            ],
        },
    },
    "johansen-vecm": {
        "description": "cointegrated VAR with a lagged difference: identities, rates and the unit-root limit",
        "config": {
            "seed": 11,
            "experiments": [
                {"id": "johansen-identity", "kind": "identity", "spec": _JOHANSEN, "T_grid": [400], "R": 50},
                {"id": "johansen-rate", "kind": "rate", "spec": _JOHANSEN, "estimators": ["OLS", "RRR"],
                 "T_grid": [200, 400, 800, 1600], "R": 200},
                {"id": "johansen-dist", "kind": "dist", "spec": _JOHANSEN, "estimators": ["OLS", "RRR"],
                 "T_grid": [1000], "R": 300},
            ],
        },
    },
    "cy-positive": {
        "description": "integrated regressors that load on integrated outputs (c_y > 0): rates and corrections",
        "config": {
            "seed": 13,
            "experiments": [
                {"id": "cy-identity", "kind": "identity", "spec": _CY_POSITIVE, "T_grid": [400], "R": 50},
                {"id": "cy-rate", "kind": "rate", "spec": _CY_POSITIVE, "estimators": ["OLS", "RRR"],
                 "T_grid": [200, 400, 800, 1600], "R": 200},
                {"id": "cy-matched", "kind": "matched", "spec": _CY_POSITIVE, "estimators": ["OLS", "RRR"],
                 "T_grid": [400, 800, 1600], "R": 200},
            ],
        },
    },
    "fm-comparison": {
        "description": "all four estimators against their limit laws (VAR(1) unit-root block and c_y > 0)",
        "config": {
            "seed": 17,
            "experiments": [
                {"id": "fm-anderson", "kind": "dist", "spec": _ANDERSON, "estimators": ALL4,
                 "T_grid": [1000], "R": 300},
                {"id": "fm-cy", "kind": "dist", "spec": _CY_POSITIVE, "estimators": ALL4,
                 "T_grid": [1000], "R": 300},
            ],
        },
    },
}


def preset_names() -> list:
    return list(PRESETS)


def get_preset(name: str) -> dict:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    return copy.deepcopy(PRESETS[name]["config"])
