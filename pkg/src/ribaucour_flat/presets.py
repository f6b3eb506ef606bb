"""Parameter sets of the six figure presets.

Each preset fixes (r1, c) and the generator family. The parameter
rectangles are choices, recorded in each preset's ``note``.
"""
from __future__ import annotations

FIGURE_RECT_C4 = {"u1": [-2.0, 2.0], "u2": [-2.5, 2.5], "n": [400, 400]}
FIGURE_RECT_SMALL_C = {"u1": [-60.0, 60.0], "u2": [-60.0, 60.0], "n": [400, 400]}

_RECT_NOTE = "parameter rectangle chosen to show the region near the excluded set"
_SMALL_C_NOTE = "rectangle widened by ~1/sqrt(c)"

PRESETS = {
    "fig1": {
        "r1": 0.6, "c": 4.0, "family": "cosh-sinh",
        "grid": FIGURE_RECT_C4, "note": "f = cosh(8u1/5), g = (4/3) sinh(6u2/5); " + _RECT_NOTE,
    },
    "fig2": {
        "r1": 0.6, "c": 4.0, "family": "sinh-cosh",
        "grid": FIGURE_RECT_C4, "note": "f = sinh(8u1/5), g = (4/3) cosh(6u2/5); " + _RECT_NOTE,
    },
    "fig3a": {
        "r1": 0.6, "c": 0.001, "family": "cosh-sinh",
        "grid": FIGURE_RECT_SMALL_C, "note": "first surface of the pair; " + _SMALL_C_NOTE,
    },
    "fig3b": {
        "r1": 0.6, "c": 0.001, "family": "sinh-cosh",
        "grid": FIGURE_RECT_SMALL_C, "note": "second surface of the pair; " + _SMALL_C_NOTE,
    },
    "fig4a": {
        "r1": 0.6, "c": 0.001, "family": "exp", "a1": 1.0, "b1": 1.0, "eps1": 1, "eps2": 1,
        "grid": FIGURE_RECT_SMALL_C,
        "note": "exponential pair; signs eps1 = eps2 = +1 are a choice; " + _SMALL_C_NOTE,
    },
    "fig4b": {
        "r1": 0.6, "c": 0.001, "family": "exp", "a1": 1.0, "b1": 1.0, "eps1": 1, "eps2": -1,
        "grid": FIGURE_RECT_SMALL_C,
        "note": "exponential pair; signs eps1 = +1, eps2 = -1 are a choice; " + _SMALL_C_NOTE,
    },
}


def preset(name: str) -> dict:
    try:
        src = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    out = dict(src)
    out["grid"] = {k: list(v) for k, v in src["grid"].items()}
    out["preset"] = name
    return out
