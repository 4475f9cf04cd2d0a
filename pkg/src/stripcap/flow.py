"""Uniform potential flow past slit obstacles in the strip.

The complex potential is the conformal map from the slit strip onto a
horizontal-slit strip (the canonical map with all component angles zero),
composed with the inverse of the original map.  Obstacles and channel walls
then sit on level curves of the imaginary part.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError
from .geometry import HALF_PI, point_segment_distance
from .stripmap import build_map, inverse_map


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 points per axis")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("empty grid range")

    def axes(self):
        return (
            np.linspace(self.x_min, self.x_max, self.nx),
            np.linspace(self.y_min, self.y_max, self.ny),
        )


@dataclass
class FlowField:
    grid: GridSpec
    psi_values: np.ndarray  # shape (ny, nx), nan where masked
    mask: np.ndarray  # True where the stream function is defined
    slit_levels: np.ndarray
    failures: int = 0

    def to_csv(self, path):
        xs, ys = self.grid.axes()
        with open(path, "w") as fh:
            fh.write("x,y,psi\n")
            for iy, y in enumerate(ys):
                for ix, x in enumerate(xs):
                    v = self.psi_values[iy, ix]
                    fh.write(f"{x!r},{y!r},{'' if np.isnan(v) else repr(v)}\n")

    def to_json(self, path):
        payload = {
            "grid": {
                "x": [self.grid.x_min, self.grid.x_max, self.grid.nx],
                "y": [self.grid.y_min, self.grid.y_max, self.grid.ny],
            },
            "psi": [
                [None if np.isnan(v) else v for v in row]
                for row in self.psi_values.tolist()
            ],
            "mask": self.mask.astype(int).tolist(),
            "slit_levels": list(self.slit_levels),
            "failures": self.failures,
        }
        with open(path, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1)


def horizontal_slit_map(pre):
    """Second canonical map from the converged preimage: all angles zero."""
    md = pre.map
    theta = np.zeros(md.bp.m + 1)
    return build_map(md.bp, theta, alpha=md.alpha)


def complex_potential(pre, upsilon, points):
    """W(z) on points of the slit strip: forward horizontal-slit map
    composed with the inverse of the original map."""
    pts_in = np.asarray(points, dtype=complex)
    pts = np.atleast_1d(pts_in)
    w = inverse_map(pre.map, pts)
    vals = upsilon.eval(w)
    return vals if pts_in.ndim else complex(vals[0])


def slit_stream_levels(upsilon):
    """Constant stream value carried by each obstacle (mean of Im on its
    image; the spread is a diagnostic, not removed)."""
    return np.array(
        [upsilon.zeta[j].imag.mean() for j in range(1, upsilon.m + 1)]
    )


def stream_grid(pre, upsilon, grid, exclusion=0.02):
    """Sample Im W on a rectangular grid, masking excluded points.

    Masked: outside the open strip, within ``exclusion`` of any slit, or
    failing the interior test of the inverse map.  Evaluation failures at
    individual points are masked and counted rather than raised.
    """
    xs, ys = grid.axes()
    X, Y = np.meshgrid(xs, ys)
    Z = X + 1j * Y
    mask = np.abs(Z.imag) < HALF_PI - 1e-12
    slits = pre.omega.slits if pre.omega is not None else []
    for s in slits:
        mask &= point_segment_distance(Z, s.a, s.b) > exclusion
    psi_values = np.full(Z.shape, np.nan)
    idx = np.where(mask.reshape(-1))[0]
    if idx.size:
        flat = Z.reshape(-1)[idx]
        try:
            vals = np.asarray(complex_potential(pre, upsilon, flat)).imag
        except GeometryError:
            # fall back to pointwise evaluation so one bad point cannot
            # poison the whole grid
            vals = np.full(idx.size, np.nan)
            for i, z in enumerate(flat):
                try:
                    vals[i] = complex(complex_potential(pre, upsilon, z)).imag
                except GeometryError:
                    pass
        psi_values.reshape(-1)[idx] = vals
    failures = int((mask & ~np.isfinite(psi_values)).sum())
    mask &= np.isfinite(psi_values)
    psi_values[~mask] = np.nan
    return FlowField(
        grid=grid,
        psi_values=psi_values,
        mask=mask,
        slit_levels=slit_stream_levels(upsilon),
        failures=failures,
    )
