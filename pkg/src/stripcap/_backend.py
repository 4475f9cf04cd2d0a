"""Hot numeric loops: numba-compiled kernels with a pure-numpy fallback.

The two expensive operations in the package are the dense Nystrom assembly
of the kernel matrices and the evaluation of Cauchy sums at many target
points.  Both are implemented twice: once with ``numba.njit(parallel=True)``
and once with chunked numpy broadcasting.  Set the environment variable
``STRIPCAP_BACKEND=numpy`` to force the fallback (the default is ``numba``
whenever numba imports cleanly).  ``benchmarks/bench_kernels.py`` compares
the two paths directly.
"""

import os

import numpy as np

_requested = os.environ.get("STRIPCAP_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(
        f"STRIPCAP_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

HAVE_NUMBA = False
if _requested == "numba":
    try:
        import numba
        from numba import njit, prange

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - depends on environment
        HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# kernel matrix assembly
#
# Off-diagonal entry (rows s_i, columns t_j):
#     C_ij = (1/pi) * (A_i/A_j) * eta_dot_j / (eta_j - eta_i)
#     N_ij  = Im C_ij
#     M1_ij = Re C_ij + cot((t_i - t_j)/2)/(2 pi)   on the same component
#     M1_ij = Re C_ij                               across components
# Diagonal entries come in precomputed as the complex vector
#     d_i = (1/pi) * (eta_ddot_i/(2 eta_dot_i) - A_dot_i/A_i)
# whose imaginary/real parts are the limits of N and M1.
# ---------------------------------------------------------------------------


def _assemble_numpy(eta, eta_dot, A, t, comp, diag, N, M1):
    ntot = eta.shape[0]
    col = eta_dot / A / np.pi
    idx = np.arange(ntot)
    # chunk rows to keep the complex temporaries bounded (~64 MB each)
    step = max(1, (1 << 22) // ntot)
    for i0 in range(0, ntot, step):
        rows = slice(i0, min(i0 + step, ntot))
        with np.errstate(divide="ignore", invalid="ignore"):
            c = (A[rows, None] * col[None, :]) / (eta[None, :] - eta[rows, None])
        N[rows, :] = c.imag
        M1[rows, :] = c.real
        same = comp[rows, None] == comp[None, :]
        dt = t[rows, None] - t[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            cot = 0.5 / np.pi / np.tan(0.5 * dt)
        M1[rows, :] += np.where(same, cot, 0.0)
        # in-chunk diagonal overwritten below
        sub = idx[rows]
        N[sub, sub] = diag[sub].imag
        M1[sub, sub] = diag[sub].real
    return np.isfinite(N).all() and np.isfinite(M1).all()


if HAVE_NUMBA:

    @njit(parallel=True, cache=True)
    def _assemble_numba(eta, eta_dot, A, t, comp, diag, N, M1):  # pragma: no cover
        ntot = eta.shape[0]
        inv_pi = 1.0 / np.pi
        half_inv_pi = 0.5 / np.pi
        ok = True
        for i in prange(ntot):
            Ai = A[i]
            ei = eta[i]
            ti = t[i]
            ci = comp[i]
            for j in range(ntot):
                if i == j:
                    N[i, j] = diag[i].imag
                    M1[i, j] = diag[i].real
                    continue
                dz = eta[j] - ei
                if dz == 0:
                    ok = False
                    N[i, j] = np.nan
                    M1[i, j] = np.nan
                    continue
                c = (Ai / A[j]) * eta_dot[j] / dz * inv_pi
                N[i, j] = c.imag
                re = c.real
                if comp[j] == ci:
                    re += half_inv_pi / np.tan(0.5 * (ti - t[j]))
                M1[i, j] = re
        return ok


def assemble_kernel_matrices(eta, eta_dot, A, t, comp, diag):
    """Fill and return the dense (N, M1) matrices; raises on coincident nodes."""
    ntot = eta.shape[0]
    N = np.empty((ntot, ntot))
    M1 = np.empty((ntot, ntot))
    if HAVE_NUMBA:
        ok = _assemble_numba(
            eta, eta_dot, A, t, comp.astype(np.int64), diag, N, M1
        )
        ok = bool(ok) and np.isfinite(N).all() and np.isfinite(M1).all()
    else:
        ok = _assemble_numpy(eta, eta_dot, A, t, comp, diag, N, M1)
    if not ok:
        from .errors import GeometryError

        raise GeometryError("coincident boundary nodes while assembling kernels")
    return N, M1


# ---------------------------------------------------------------------------
# Cauchy sums:  for each target z compute
#     num(z) = sum_i v_i * w_i / (b_i - z)
#     den(z) = sum_i       w_i / (b_i - z)
#     dmin(z) = min_i |b_i - z|
# ---------------------------------------------------------------------------


def _cauchy_numpy(bnodes, weights, values, targets):
    npts = targets.shape[0]
    num = np.empty(npts, dtype=np.complex128)
    den = np.empty(npts, dtype=np.complex128)
    dmin = np.empty(npts)
    step = max(1, (1 << 21) // max(1, bnodes.shape[0]))
    vw = values * weights
    for p0 in range(0, npts, step):
        sl = slice(p0, min(p0 + step, npts))
        diff = bnodes[None, :] - targets[sl, None]
        dmin[sl] = np.abs(diff).min(axis=1)
        # an exactly-coincident node would divide by zero; the caller rejects
        # the point via dmin anyway, so any finite placeholder works
        inv = 1.0 / np.where(diff == 0, 1.0, diff)
        num[sl] = inv @ vw
        den[sl] = inv @ weights
    return num, den, dmin


if HAVE_NUMBA:

    @njit(parallel=True, cache=True)
    def _cauchy_numba(bnodes, weights, values, targets, num, den, dmin):  # pragma: no cover
        for p in prange(targets.shape[0]):
            z = targets[p]
            sn = 0.0 + 0.0j
            sd = 0.0 + 0.0j
            dm = np.inf
            for i in range(bnodes.shape[0]):
                diff = bnodes[i] - z
                a = abs(diff)
                if a < dm:
                    dm = a
                if diff == 0:
                    continue
                w = weights[i] / diff
                sd += w
                sn += values[i] * w
            num[p] = sn
            den[p] = sd
            dmin[p] = dm


def cauchy_sums(bnodes, weights, values, targets):
    """Numerator/denominator Cauchy sums plus distance to the closest node."""
    targets = np.ascontiguousarray(targets, dtype=np.complex128)
    if HAVE_NUMBA:
        npts = targets.shape[0]
        num = np.empty(npts, dtype=np.complex128)
        den = np.empty(npts, dtype=np.complex128)
        dmin = np.empty(npts)
        _cauchy_numba(
            np.ascontiguousarray(bnodes),
            np.ascontiguousarray(weights),
            np.ascontiguousarray(values, dtype=np.complex128),
            targets,
            num,
            den,
            dmin,
        )
        return num, den, dmin
    return _cauchy_numpy(bnodes, weights, values, targets)
