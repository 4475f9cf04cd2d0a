"""Slit-strip domains, smooth preimage boundaries, and FFT utilities.

Coordinates live in two worlds: the infinite strip ``|Im z| < pi/2`` with
rectilinear slits removed (the target domain), and the unit disk minus m
smooth holes (the preimage domain).  The elementary map between them is
``psi``/``psi_inv``.  Boundary curves are sampled at ``n`` equidistant
parameter nodes per component with spectral (FFT) differentiation, so ``n``
is restricted to powers of two.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, OverlapError

HALF_PI = 0.5 * np.pi


# ---------------------------------------------------------------------------
# elementary maps
# ---------------------------------------------------------------------------


def psi(w):
    """Map the unit disk onto the strip ``|Im| < pi/2``: log((1+w)/(1-w)).

    Principal branch; ``w = +-1`` are the poles and are rejected.
    """
    w = np.asarray(w, dtype=complex)
    if np.any(w == 1.0) or np.any(w == -1.0):
        raise GeometryError("psi is singular at w = +1 and w = -1")
    out = np.log((1.0 + w) / (1.0 - w))
    if out.ndim == 0:
        return complex(out)
    return out


def psi_inv(zeta):
    """Inverse of :func:`psi`: tanh(zeta/2), entire on the strip."""
    out = np.tanh(np.asarray(zeta, dtype=complex) / 2.0)
    if out.ndim == 0:
        return complex(out)
    return out


def psi_inv_deriv(zeta):
    """d/dzeta tanh(zeta/2) = (1 - tanh(zeta/2)^2)/2."""
    th = np.tanh(np.asarray(zeta, dtype=complex) / 2.0)
    return 0.5 * (1.0 - th * th)


# ---------------------------------------------------------------------------
# FFT helpers (periodic, power-of-two grids)
# ---------------------------------------------------------------------------


def _check_pow2(n):
    if n < 8 or (n & (n - 1)) != 0:
        raise ValueError(f"node count must be a power of two >= 8, got {n}")


def trig_derivative(samples):
    """Spectral derivative of 2*pi-periodic samples on an equidistant grid.

    Fourier coefficients are multiplied by ``i*k``; the Nyquist mode is
    zeroed.  Exact (to rounding) for trigonometric polynomials of degree
    below n/2.
    """
    samples = np.asarray(samples)
    n = samples.shape[-1]
    _check_pow2(n)
    k = np.fft.fftfreq(n, d=1.0 / n)
    k[n // 2] = 0.0
    return np.fft.ifft(np.fft.fft(samples, axis=-1) * (1j * k), axis=-1)


def trig_interp(samples, tq):
    """Evaluate the trigonometric interpolant of ``samples`` at points ``tq``.

    The Nyquist coefficient is treated as a pure cosine so real data stay
    real.  Cost O(n) per query point; used for sub-grid refinement.
    """
    samples = np.asarray(samples)
    n = samples.shape[-1]
    _check_pow2(n)
    c = np.fft.fft(samples) / n
    tq = np.asarray(tq, dtype=float)
    k = np.fft.fftfreq(n, d=1.0 / n)
    # split off the Nyquist mode: c_{n/2} e^{-i(n/2)t} -> c_{n/2} cos((n/2) t)
    cn = c[n // 2]
    c = c.copy()
    c[n // 2] = 0.0
    ph = np.exp(1j * np.outer(tq, k))
    vals = ph @ c + cn * np.cos((n // 2) * tq)
    return vals


def trig_interp_maximizer(samples, sign=1.0, newton_steps=30):
    """Locate an extremum of the trig interpolant of real ``samples``.

    Starts from the grid arg-extremum and polishes with Newton on the
    spectral derivative; returns (t_star, value).  ``sign=+1`` finds the
    maximum, ``sign=-1`` the minimum.  Grid-level quadratic refinement alone
    leaves an O(h^4) bias in the extremum value, far above the 1e-14
    self-consistency the preimage iteration targets, hence the Newton polish.
    """
    u = np.asarray(samples, dtype=float)
    n = u.shape[0]
    _check_pow2(n)
    c = np.fft.fft(u) / n
    k = np.fft.fftfreq(n, d=1.0 / n)
    k[n // 2] = 0.0
    c1 = c * (1j * k)
    c2 = c1 * (1j * k)
    i0 = int(np.argmax(sign * u))
    t = 2.0 * np.pi * i0 / n
    h = 2.0 * np.pi / n
    scale = max(1.0, np.abs(u).max())
    for _ in range(newton_steps):
        ph = np.exp(1j * k * t)
        du = (c1 @ ph).real
        d2u = (c2 @ ph).real
        if sign * d2u >= 0.0:
            break  # left the basin; keep current point
        step = du / d2u
        step = np.clip(step, -h, h)
        t -= step
        if abs(du) < 1e-15 * scale:
            break
    ph = np.exp(1j * k * t)
    val = (c @ ph).real + 0.0  # Nyquist already zeroed in k
    return t % (2.0 * np.pi), val


# ---------------------------------------------------------------------------
# domain description
# ---------------------------------------------------------------------------


def _norm_theta(th):
    """Wrap an angle into (-pi/2, pi/2]; a slit equals its reversal."""
    th = (th + HALF_PI) % np.pi - HALF_PI
    if th <= -HALF_PI + 0.0:  # boundary case from the modulo
        th += np.pi
    if th == -0.0:
        th = 0.0
    return th


@dataclass(frozen=True)
class SlitSpec:
    """One rectilinear slit [a, b] strictly inside the strip."""

    a: complex
    b: complex

    def __post_init__(self):
        if abs(self.a.imag) >= HALF_PI or abs(self.b.imag) >= HALF_PI:
            raise GeometryError(
                f"slit endpoints must satisfy |Im| < pi/2: {self.a}, {self.b}"
            )
        if self.a == self.b:
            raise GeometryError("slit endpoints coincide")

    @property
    def c(self):
        return 0.5 * (self.a + self.b)

    @property
    def ell(self):
        return abs(self.b - self.a)

    @property
    def theta(self):
        return _norm_theta(float(np.angle(self.b - self.a)))


def point_segment_distance(z, a, b):
    """Distance from point(s) z to the segment [a, b], vectorized."""
    z = np.asarray(z, dtype=complex)
    d = b - a
    t = np.clip(((z - a) * np.conj(d)).real / abs(d) ** 2, 0.0, 1.0)
    return np.abs(z - (a + t * d))


def segment_distance(p0, p1, q0, q1):
    """Exact minimum distance between segments [p0,p1] and [q0,q1] in C."""

    def pt_seg(z, a, b):
        d = b - a
        t = ((z - a) * np.conj(d)).real / abs(d) ** 2
        t = min(1.0, max(0.0, t))
        return abs(z - (a + t * d))

    # crossing test via orientation signs
    def cross(o, u, v):
        return ((u - o) * np.conj(v - o)).imag

    d1 = cross(p0, p1, q0)
    d2 = cross(p0, p1, q1)
    d3 = cross(q0, q1, p0)
    d4 = cross(q0, q1, p1)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return 0.0
    return min(
        pt_seg(q0, p0, p1),
        pt_seg(q1, p0, p1),
        pt_seg(p0, q0, q1),
        pt_seg(p1, q0, q1),
    )


@dataclass(frozen=True)
class StripSlitDomain:
    """The strip minus m pairwise disjoint rectilinear slits."""

    slits: tuple

    def __init__(self, slits):
        slits = tuple(slits)
        if len(slits) < 1:
            raise GeometryError("need at least one slit")
        for i in range(len(slits)):
            for j in range(i + 1, len(slits)):
                d = segment_distance(
                    slits[i].a, slits[i].b, slits[j].a, slits[j].b
                )
                if d <= 1e-12:
                    raise OverlapError(
                        f"slits {i} and {j} are not disjoint (distance {d:.2e})"
                    )
        object.__setattr__(self, "slits", slits)

    @property
    def m(self):
        return len(self.slits)

    @property
    def theta(self):
        """Component angle vector (theta_0 = 0 for the unit circle)."""
        return np.array([0.0] + [s.theta for s in self.slits])

    @classmethod
    def from_dict(cls, data):
        slits = []
        for entry in data["slits"]:
            a = complex(entry["a"][0], entry["a"][1])
            b = complex(entry["b"][0], entry["b"][1])
            slits.append(SlitSpec(a, b))
        return cls(slits)

    def to_dict(self):
        return {
            "slits": [
                {"a": [s.a.real, s.a.imag], "b": [s.b.real, s.b.imag]}
                for s in self.slits
            ]
        }


@dataclass(frozen=True)
class EllipseParams:
    """Intermediate-domain ellipse: center z, major axis a, tilt theta, ratio r."""

    z: complex
    a: float
    theta: float
    r: float

    def __post_init__(self):
        if not (0.0 < self.r <= 1.0):
            raise GeometryError(f"aspect ratio must be in (0, 1], got {self.r}")
        if self.a <= 0.0:
            raise GeometryError(f"major axis must be positive, got {self.a}")


def parametrize_ellipse(p, n):
    """Samples of the ellipse boundary and its derivative at 2*pi*i/n.

    The parametrization z + 0.5*a*e^{i theta}(cos t - i r sin t) runs
    clockwise, which is the orientation required of inner components.
    """
    _check_pow2(n)
    t = 2.0 * np.pi * np.arange(n) / n
    rot = 0.5 * p.a * np.exp(1j * p.theta)
    eta = p.z + rot * (np.cos(t) - 1j * p.r * np.sin(t))
    eta_dot = -rot * (np.sin(t) + 1j * p.r * np.cos(t))
    return eta, eta_dot


# ---------------------------------------------------------------------------
# sampled boundaries
# ---------------------------------------------------------------------------


class BoundaryParametrization:
    """Sampled boundary of a multiply connected domain inside the unit disk.

    ``eta`` and ``eta_dot`` have shape (m+1, n): row 0 is the unit circle
    (counterclockwise), rows 1..m the hole boundaries (clockwise).  Immutable
    after construction.
    """

    def __init__(self, eta, eta_dot):
        eta = np.asarray(eta, dtype=complex)
        eta_dot = np.asarray(eta_dot, dtype=complex)
        if eta.shape != eta_dot.shape or eta.ndim != 2:
            raise ValueError("eta and eta_dot must share a 2-D shape")
        _check_pow2(eta.shape[1])
        self.eta = eta
        self.eta_dot = eta_dot
        self.eta.setflags(write=False)
        self.eta_dot.setflags(write=False)
        self.m = eta.shape[0] - 1
        self.n = eta.shape[1]
        self.t = 2.0 * np.pi * np.arange(self.n) / self.n

    @property
    def total(self):
        return (self.m + 1) * self.n

    @property
    def flat_eta(self):
        return self.eta.reshape(-1)

    @property
    def flat_eta_dot(self):
        return self.eta_dot.reshape(-1)

    @property
    def flat_t(self):
        return np.tile(self.t, self.m + 1)

    @property
    def component_of(self):
        return np.repeat(np.arange(self.m + 1), self.n)

    def split(self, flat_values):
        """View a flat length-(m+1)n vector as per-component rows."""
        return np.asarray(flat_values).reshape(self.m + 1, self.n)


def winding_number(curve, w):
    """Discrete winding number of a sampled closed curve about point(s) w."""
    curve = np.asarray(curve)
    w_in = np.asarray(w, dtype=complex)
    scalar = w_in.ndim == 0
    wv = np.atleast_1d(w_in)
    z = curve[None, :] - wv[:, None]
    rot = np.roll(z, -1, axis=1) / z
    total = np.angle(rot).sum(axis=1) / (2.0 * np.pi)
    res = np.rint(total).astype(int)
    return int(res[0]) if scalar else res


def polyline_min_distance(za, zb):
    """Approximate min distance between two closed sampled curves.

    Point-to-segment distances in both directions; 0 if the polylines cross.
    """

    def pts_to_segs(pts, poly):
        a = poly
        b = np.roll(poly, -1)
        d = b - a
        L2 = np.abs(d) ** 2
        t = ((pts[:, None] - a[None, :]) * np.conj(d)[None, :]).real / L2[None, :]
        t = np.clip(t, 0.0, 1.0)
        proj = a[None, :] + t * d[None, :]
        return np.abs(pts[:, None] - proj).min()

    d = min(pts_to_segs(za, zb), pts_to_segs(zb, za))
    # crude crossing detection: winding of one curve about the other's points
    if d > 0:
        w = winding_number(za, zb[:: max(1, len(zb) // 32)])
        if np.any(w != w[0]):
            return 0.0
    return d


def build_preimage_boundary(params, n):
    """Boundary of the preimage domain from a list of ellipse parameters.

    Component 0 is the unit circle; components 1..m are psi_inv images of
    the ellipses, with derivatives by the chain rule.  Raises OverlapError
    if the resulting curves intersect or escape the open unit disk.
    """
    _check_pow2(n)
    t = 2.0 * np.pi * np.arange(n) / n
    m = len(params)
    eta = np.empty((m + 1, n), dtype=complex)
    eta_dot = np.empty((m + 1, n), dtype=complex)
    eta[0] = np.exp(1j * t)
    eta_dot[0] = 1j * eta[0]
    for j, p in enumerate(params, start=1):
        hat, hat_dot = parametrize_ellipse(p, n)
        if np.abs(hat.imag).max() >= HALF_PI:
            raise GeometryError(f"ellipse {j} leaves the strip")
        eta[j] = psi_inv(hat)
        eta_dot[j] = psi_inv_deriv(hat) * hat_dot
        if np.abs(eta[j]).max() >= 1.0:
            raise GeometryError(f"curve {j} touches the unit circle")
    step = max(1, n // 256)
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            if polyline_min_distance(eta[i][::step], eta[j][::step]) <= 0.0:
                raise OverlapError(
                    f"preimage curves {i} and {j} intersect; decrease r"
                )
    return BoundaryParametrization(eta, eta_dot)
