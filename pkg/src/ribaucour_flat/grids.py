"""Parameter rectangles: regular lattices and low-discrepancy samples."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from .errors import GridTooLarge, OutOfRange

DEFAULT_VERTEX_CAP = 4_000_000


@dataclass(frozen=True)
class GridSpec:
    u1_min: float
    u1_max: float
    u2_min: float
    u2_max: float
    n1: int
    n2: int
    cap: int = DEFAULT_VERTEX_CAP

    def __post_init__(self):
        for key in ("u1_min", "u1_max", "u2_min", "u2_max"):
            if not math.isfinite(getattr(self, key)):
                raise OutOfRange(key, getattr(self, key))
        if not self.u1_max > self.u1_min:
            raise OutOfRange("grid.u1", (self.u1_min, self.u1_max), "grid needs u1_max > u1_min")
        if not self.u2_max > self.u2_min:
            raise OutOfRange("grid.u2", (self.u2_min, self.u2_max), "grid needs u2_max > u2_min")
        if int(self.n1) != self.n1 or int(self.n2) != self.n2 or self.n1 < 2 or self.n2 < 2:
            raise OutOfRange("grid.n", (self.n1, self.n2), "grid needs integer n1, n2 >= 2")
        if self.n1 * self.n2 > self.cap:
            raise GridTooLarge(f"{self.n1}x{self.n2} vertices exceeds the cap of {self.cap}")

    @classmethod
    def square(cls, half_width, n):
        return cls(-half_width, half_width, -half_width, half_width, n, n)

    @property
    def rect(self):
        return (self.u1_min, self.u1_max, self.u2_min, self.u2_max)

    @property
    def shape(self):
        """Array shape of sampled fields: rows follow u2, columns u1."""
        return (self.n2, self.n1)

    def axes(self):
        return (
            np.linspace(self.u1_min, self.u1_max, self.n1),
            np.linspace(self.u2_min, self.u2_max, self.n2),
        )

    def lattice(self):
        """(U1, U2) of shape (n2, n1); flattening is row-major, u1 fastest."""
        a1, a2 = self.axes()
        return np.meshgrid(a1, a2, indexing="xy")

    def to_dict(self):
        return {"u1": [self.u1_min, self.u1_max], "u2": [self.u2_min, self.u2_max], "n": [self.n1, self.n2]}


def sample_points(rect, n, seed=0):
    """``n`` scrambled-Sobol points in ``rect = (u1_min, u1_max, u2_min, u2_max)``.

    The same ``(rect, n, seed)`` always yields the same points.
    """
    m = max(0, math.ceil(math.log2(max(n, 1))))
    unit = qmc.Sobol(d=2, scramble=True, seed=seed).random_base2(m)[:n]
    lo = np.array([rect[0], rect[2]], dtype=float)
    hi = np.array([rect[1], rect[3]], dtype=float)
    pts = qmc.scale(unit, lo, hi)
    return pts[:, 0], pts[:, 1]
