"""Generalized Neumann kernel and the split singular companion kernel.

Off the diagonal the kernels are direct samples of

    N(s,t)  = (1/pi) Im[ A(s)/A(t) * eta'(t)/(eta(t)-eta(s)) ]
    M(s,t)  = (1/pi) Re[ ... same argument ... ]

M is singular along the diagonal of each component; the stored matrix M1
carries the continuous remainder M(s,t) + cot((s-t)/2)/(2 pi) there (and M
itself across components).  The removed cotangent convolution is applied
spectrally as the Fourier multiplier i*sign(k), a convention pinned down by
the principal-value quadrature oracle in the tests.  Diagonal entries are
the limits

    N(t,t)  = (1/pi) Im[ eta''/(2 eta') - A'/A ]
    M1(t,t) = (1/pi) Re[ eta''/(2 eta') - A'/A ]

obtained from the Taylor expansion at s = t and cross-checked against a
finite-difference extrapolation in the tests.
"""

import numpy as np

from ._backend import assemble_kernel_matrices
from .errors import GeometryError
from .geometry import trig_derivative, winding_number


def build_A(bp, theta, alpha):
    """Samples of A(t) = e^{i(pi/2 - theta_j)} (eta(t) - alpha) on each J_j.

    ``alpha`` must lie strictly inside the domain: winding +1 about the
    outer circle and 0 about every (clockwise) hole boundary.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (bp.m + 1,):
        raise ValueError(f"theta must have {bp.m + 1} entries")
    _check_interior(bp, alpha)
    phase = np.exp(1j * (0.5 * np.pi - theta))
    return phase[:, None] * (bp.eta - alpha)


def _check_interior(bp, alpha):
    if winding_number(bp.eta[0], alpha) != 1:
        raise GeometryError(f"base point {alpha} is not inside the unit circle")
    for j in range(1, bp.m + 1):
        if winding_number(bp.eta[j], alpha) != 0:
            raise GeometryError(f"base point {alpha} lies inside hole {j}")
    if np.abs(bp.flat_eta - alpha).min() < 1e-12:
        raise GeometryError(f"base point {alpha} lies on the boundary")


class KernelSet:
    """Assembled Nystrom data for one geometry and one choice of A.

    Stores the dense N and M1 matrices plus everything needed to apply the
    discretized operators.  Immutable once built; safe to share between
    concurrent solves.
    """

    def __init__(self, bp, theta, alpha):
        self.bp = bp
        self.theta = np.asarray(theta, dtype=float)
        self.alpha = complex(alpha)
        self.A = build_A(bp, self.theta, self.alpha)
        # spectral second derivative of eta and first derivative of A,
        # component by component, for the diagonal limits
        eta_ddot = trig_derivative(bp.eta_dot)
        A_dot = trig_derivative(self.A)
        diag = (
            eta_ddot / (2.0 * bp.eta_dot) - A_dot / self.A
        ).reshape(-1) / np.pi
        self.N, self.M1 = assemble_kernel_matrices(
            bp.flat_eta,
            bp.flat_eta_dot,
            self.A.reshape(-1),
            bp.flat_t,
            bp.component_of,
            diag,
        )
        self._w = 2.0 * np.pi / bp.n

    def apply_N(self, x):
        """Trapezoidal discretization of the compact operator."""
        return self._w * (self.N @ np.asarray(x, dtype=float))

    def apply_M(self, x):
        """Discretized singular operator: trapezoidal M1 plus cot convolution."""
        x = np.asarray(x, dtype=float)
        out = self._w * (self.M1 @ x)
        out += singular_cot_part(self.bp.split(x)).reshape(-1)
        return out

    def apply_I_minus_N(self, x):
        x = np.asarray(x, dtype=float)
        return x - self._w * (self.N @ x)


def singular_cot_part(rows):
    """Per-component convolution with -cot((s-t)/2)/(2 pi).

    Acts on real samples along the last axis via the Fourier multiplier
    i*sign(k) (constant and Nyquist modes annihilated).  Exact on
    trigonometric polynomials of degree below n/2.
    """
    rows = np.asarray(rows, dtype=float)
    n = rows.shape[-1]
    F = np.fft.rfft(rows, axis=-1)
    F *= 1j
    F[..., 0] = 0.0
    F[..., n // 2] = 0.0
    return np.fft.irfft(F, n=n, axis=-1)


def apply_M(gamma, ks):
    """Convenience wrapper: the discretized M operator from a KernelSet."""
    return ks.apply_M(gamma)
