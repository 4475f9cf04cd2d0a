"""Solving (I - N) rho = -M gamma and Cauchy evaluation of analytic data."""

import inspect
from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import LinearOperator, gmres

from ._backend import cauchy_sums
from .errors import ConvergenceError, GeometryError

DEFAULT_TOL = 1e-14
DEFAULT_MAXIT = 100

_GMRES_TOL_KW = "rtol" if "rtol" in inspect.signature(gmres).parameters else "tol"


@dataclass
class SolverStats:
    iterations: int
    residual: float
    history: list


@dataclass
class BieSolution:
    """One solved boundary integral equation.

    ``h`` holds the per-component means of the field [M rho - (I-N) gamma]/2
    and ``h_dev`` the per-component standard deviations of that field --
    the cheapest end-to-end consistency monitor the pipeline has.
    """

    rho: np.ndarray
    h: np.ndarray
    h_dev: np.ndarray
    gamma: np.ndarray
    stats: SolverStats


def solve_rho(ks, gamma, tol=DEFAULT_TOL, maxit=DEFAULT_MAXIT):
    """Solve the integral equation by restart-free GMRES, matrix-free.

    Relative residual tolerance; raises ConvergenceError (with the residual
    history attached) when ``maxit`` Krylov iterations are exhausted.
    """
    gamma = np.asarray(gamma, dtype=float)
    if not np.all(np.isfinite(gamma)):
        raise ValueError("right-hand data contains non-finite values")
    if not (0.0 < tol <= 1e-6):
        raise ValueError(f"tol must be in (0, 1e-6], got {tol}")
    rhs = -ks.apply_M(gamma)
    rhs_norm = np.abs(rhs).max()
    if rhs_norm == 0.0:
        stats = SolverStats(iterations=0, residual=0.0, history=[])
        return np.zeros_like(gamma), stats
    ntot = gamma.size
    op = LinearOperator((ntot, ntot), matvec=ks.apply_I_minus_N, dtype=float)
    history = []
    kwargs = {
        _GMRES_TOL_KW: tol,
        "atol": 0.0,
        "restart": min(maxit, ntot),
        "maxiter": 1,
        "callback": history.append,
        "callback_type": "pr_norm",
    }
    rho, info = gmres(op, rhs, **kwargs)
    if info == 0:
        # one pass of iterative refinement: the Krylov basis loses about a
        # digit to rounding at rtol = 1e-14, and the correction restores it
        defect = rhs - ks.apply_I_minus_N(rho)
        corr, info2 = gmres(op, defect, **{**kwargs, "callback": None})
        if info2 == 0:
            rho = rho + corr
    residual = np.abs(ks.apply_I_minus_N(rho) - rhs).max()
    if info != 0 or residual > 10.0 * tol * rhs_norm:
        raise ConvergenceError(
            f"GMRES stalled: residual {residual:.3e} after "
            f"{len(history)} iterations (target {10 * tol * rhs_norm:.3e})",
            history=history,
        )
    stats = SolverStats(
        iterations=len(history), residual=float(residual), history=history
    )
    return rho, stats


def compute_h(ks, rho, gamma):
    """Piecewise constants of the field [M rho - (I-N) gamma]/2.

    Returns (h, h_dev): per-component mean and standard deviation.  The
    theory makes the field exactly constant on each component, so h_dev is
    pure discretization/solver noise.
    """
    field = 0.5 * (ks.apply_M(rho) - ks.apply_I_minus_N(gamma))
    rows = ks.bp.split(field)
    return rows.mean(axis=1), rows.std(axis=1)


def solve_bie(ks, gamma, tol=DEFAULT_TOL, maxit=DEFAULT_MAXIT):
    """solve_rho + compute_h bundled into a BieSolution."""
    gamma = np.asarray(gamma, dtype=float)
    rho, stats = solve_rho(ks, gamma, tol=tol, maxit=maxit)
    h, h_dev = compute_h(ks, rho, gamma)
    return BieSolution(rho=rho, h=h, h_dev=h_dev, gamma=gamma, stats=stats)


def cauchy_eval(bnodes, bder, bvalues, points, near_fraction=5.0):
    """Normalized trapezoidal Cauchy sums at interior points.

    f(w) ~= [sum_i f_i eta'_i/(eta_i - w)] / [sum_i eta'_i/(eta_i - w)].
    The denominator equals 2*pi*i/(2*pi/n) for interior points, so the
    normalized form reproduces constants exactly and sharpens accuracy near
    the boundary.  Points closer than ``near_fraction`` arc spacings to the
    nearest node are flagged (second return value), not refined.

    Raises GeometryError when a point sits on the boundary (within 1e-13).
    """
    bnodes = np.asarray(bnodes, dtype=complex).reshape(-1)
    bder = np.asarray(bder, dtype=complex).reshape(-1)
    bvalues = np.asarray(bvalues, dtype=complex).reshape(-1)
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    num, den, dmin = cauchy_sums(bnodes, bder, bvalues, pts)
    if dmin.min() < 1e-13:
        raise GeometryError("evaluation point lies on the boundary")
    spacing = 2.0 * np.pi * np.abs(bder).max() / len(bnodes)
    near = dmin < near_fraction * spacing
    return num / den, near
