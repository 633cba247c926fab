"""Built-in scenarios for the command line front end."""

from __future__ import annotations

import random
import re

from .scalars import Q
from .fields import random_connection, random_tetrad

PRESET_NAMES = ("minkowski", "constant-connection",
                "random-poly(DEGREE,SEED)", "vacuum-check")

_RANDOM_POLY = re.compile(r"random-poly\((\d+)\s*,\s*(\d+)\)")

_ALL_FAMILIES = ["einstein", "spin", "equivariance", "r1", "r2"]

_DEFAULT_POINTS = [["0", "0", "0", "0"], ["1", "1/2", "-1", "2"]]
_DEFAULT_GROUP_SAMPLES = [["0", "0", "0", "0", "0", "0"],
                          ["1/2", "0", "-1/3", "0", "1", "0"]]


def _flat_tetrad():
    return [[str(1 if a == mu else 0) for mu in range(4)] for a in range(4)]


def _zero_connection():
    return [[["0"] * 4 for _ in range(4)] for _ in range(4)]


def _poly_str(f) -> str:
    return str(f)


def preset(name: str) -> dict:
    """Return the scenario dict for a named preset.

    Known names: minkowski, constant-connection, random-poly(degree,seed),
    vacuum-check.  Unknown names raise KeyError listing the alternatives.
    """
    if name == "minkowski":
        return {
            "name": "minkowski",
            "tetrad": _flat_tetrad(),
            "connection": _zero_connection(),
            "momentum": None,
            "evaluation_points": _DEFAULT_POINTS,
            "group_samples": _DEFAULT_GROUP_SAMPLES,
            "suite_filter": None,
            "expect_zero_residuals": list(_ALL_FAMILIES),
        }
    if name == "constant-connection":
        conn = _zero_connection()
        # A^{01}_2 = 1/2 and A^{23}_0 = -1: antisymmetric after raising.
        # lower entries: A^0_{1 2} = 1/2 * h_{11} = -1/2, A^1_{0 2} = -1/2...
        # easier to fill the lowered entries directly:
        conn[0][1][2] = "-1/2"   # A^0_{1,mu=2}
        conn[1][0][2] = "-1/2"   # A^1_{0,mu=2}: A^{10} = -A^{01}
        conn[2][3][0] = "1"      # A^2_{3,mu=0}
        conn[3][2][0] = "-1"     # A^3_{2,mu=0}
        return {
            "name": "constant-connection",
            "tetrad": _flat_tetrad(),
            "connection": conn,
            "momentum": None,
            "evaluation_points": _DEFAULT_POINTS,
            "group_samples": _DEFAULT_GROUP_SAMPLES,
            "suite_filter": None,
            "expect_zero_residuals": ["equivariance"],
        }
    m = _RANDOM_POLY.fullmatch(name)
    if m:
        degree, seed = int(m.group(1)), int(m.group(2))
        rng = random.Random(f"random-poly:{degree}:{seed}")
        e = random_tetrad(rng, degree=degree)
        a = random_connection(rng, degree=degree)
        return {
            "name": name,
            "tetrad": [[_poly_str(e.e[i][mu]) for mu in range(4)]
                       for i in range(4)],
            "connection": [[[_poly_str(a.a[i][j][mu]) for mu in range(4)]
                            for j in range(4)] for i in range(4)],
            "momentum": None,
            "evaluation_points": _DEFAULT_POINTS,
            "group_samples": _DEFAULT_GROUP_SAMPLES,
            "suite_filter": None,
            "expect_zero_residuals": ["equivariance"],
        }
    if name == "vacuum-check":
        base = preset("random-poly(1,7)")
        base["name"] = "vacuum-check"
        base["suite_filter"] = r"(ec|hvdw)\..*"
        return base
    raise KeyError(
        f"unknown preset {name!r}; known presets: {', '.join(PRESET_NAMES)}")
