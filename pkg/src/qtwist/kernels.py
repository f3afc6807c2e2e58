"""Smooth weights and transforms.

The AFE kernel W, the fixed dyadic partition function G, the compactly
supported test function F with band-limited check-transform, the moment
window J, and the functional-equation kernel (vertical-line integral
against the Mellin transform of G).
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.special import gammaincc, loggamma

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# smoothed step and the fixed partition function G


def smoothstep(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1, exp(-1/t)-based in between."""
    t = np.asarray(t, dtype=np.float64)
    out = np.zeros_like(t)
    out[t >= 1.0] = 1.0
    mid = (t > 0.0) & (t < 1.0)
    tm = t[mid]
    a = np.exp(-1.0 / tm)
    b = np.exp(-1.0 / (1.0 - tm))
    out[mid] = a / (a + b)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class PartitionG:
    """The fixed smooth G: supported on [3/4, 2], G = 1 on [1, 3/2],
    G(x) + G(x/2) = 1 on [1, 3]."""

    kind: str = "G-partition"
    support: tuple[float, float] = (0.75, 2.0)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros_like(x)
        rise = (x > 0.75) & (x < 1.0)
        out[rise] = smoothstep((x[rise] - 0.75) * 4.0)
        out[(x >= 1.0) & (x <= 1.5)] = 1.0
        fall = (x > 1.5) & (x < 2.0)
        out[fall] = 1.0 - smoothstep((x[fall] / 2.0 - 0.75) * 4.0)
        return out if out.ndim else float(out)

    @property
    def profile_hash(self) -> str:
        spec = "smoothstep-exp(-1/t);rise[3/4,1];reflect G(x)=1-G(x/2)"
        return hashlib.sha256(spec.encode()).hexdigest()[:16]

    def mellin(self, s):
        """G~(s) = int G(x) x^{s-1} dx, entire in s; vectorized over s."""
        return _mellin_on_support(self, 0.75, 2.0, s)

    def partition_sum(self, x, j_max: int):
        """sum_{j=0..j_max} G(x / 2^j)."""
        x = np.asarray(x, dtype=np.float64)
        total = np.zeros_like(x)
        for j in range(j_max + 1):
            total = total + self(x / 2.0**j)
        return total if total.ndim else float(total)


def build_partition_G() -> PartitionG:
    return PartitionG()


def build_window_V(G: PartitionG, j_min: int = -1, j_max: int = 2):
    """V(x) = sum_{j=j_min..j_max} G(x/2^j); with (-1, 2) this is identically 1
    on [1/2, 6]."""

    def V(x):
        x = np.asarray(x, dtype=np.float64)
        total = np.zeros_like(x)
        for j in range(j_min, j_max + 1):
            total = total + G(x / 2.0**j)
        return total if total.ndim else float(total)

    return V


def _mellin_on_support(fn, lo: float, hi: float, s, n_grid: int = 8193):
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    x = np.linspace(lo, hi, n_grid)
    fx = fn(x)
    out = np.empty(len(s_arr), dtype=np.complex128)
    chunk = 128
    lx = np.log(x)
    for i in range(0, len(s_arr), chunk):
        sc = s_arr[i : i + chunk]
        integ = fx[None, :] * np.exp((sc[:, None] - 1.0) * lx[None, :])
        out[i : i + chunk] = np.trapezoid(integ, x, axis=1)
    if np.isscalar(s) or np.asarray(s).ndim == 0:
        return complex(out[0])
    return out


def mellin_inverse(mellin_fn, x: float, sigma: float = 1.0, t_max: float = 200.0,
                  n: int = 16385) -> float:
    """(1/2pi) int mellin_fn(sigma+it) x^{-sigma-it} dt, for round-trip checks."""
    t = np.linspace(-t_max, t_max, n)
    s = sigma + 1j * t
    vals = mellin_fn(s) * np.exp(-s * math.log(x))
    return float(np.real(np.trapezoid(vals, t) / TWO_PI))


# ---------------------------------------------------------------------------
# AFE kernel W


def w_half(x, kappa: int = 12):
    """Closed form of the central AFE kernel: the regularized upper
    incomplete gamma Q(kappa/2, 2 pi x)."""
    if kappa % 2 != 0 or kappa < 4:
        raise ValueError("kappa must be even and >= 4")
    return gammaincc(kappa // 2, TWO_PI * np.asarray(x, dtype=np.float64))


def w_half_contour(x: float, kappa: int = 12, t_max: float = 80.0,
                   n: int = 40001) -> float:
    """Independent vertical-line quadrature of the defining contour integral
    on Re w = 2 (exponential decay from the Gamma factor)."""
    m = kappa // 2
    t = np.linspace(-t_max, t_max, n)
    w = 2.0 + 1j * t
    integrand = (
        np.exp(loggamma(m + w) - loggamma(m))
        * np.exp(-w * math.log(TWO_PI * x))
        / w
    )
    return float(np.real(np.trapezoid(integrand, t) / TWO_PI))


def w_s(x: float, s: complex, kappa: int = 12) -> complex:
    """General-s AFE kernel W_s(x) = Q(s + (kappa-1)/2, 2 pi x), complex s."""
    a = s + (kappa - 1) / 2.0
    y = TWO_PI * x
    return complex(mpmath.gammainc(a, y) / mpmath.gamma(a))


def afe_sign(d: int, kappa: int) -> int:
    """i^kappa * epsilon(d) as a real sign; epsilon(d) = (d / -1)."""
    if kappa % 2 != 0:
        raise ValueError("kappa must be even: the sign is not real otherwise")
    i_k = 1 if kappa % 4 == 0 else -1
    eps = 1 if d > 0 else -1
    return i_k * eps


# ---------------------------------------------------------------------------
# functional-equation kernel


class GraveKernel:
    """The transformed-sum kernel
    (1/2pi i) int_{(sigma)} Gamma(s - z + kappa/2)/Gamma(-s + z + kappa/2)
                 x^{-s} G~(-s) ds.

    The Gamma ratio with x^{-s} is the Mellin pair of a Bessel function:
    (1/2pi i) int Gamma(s' + nu/2)/Gamma(1 + nu/2 - s') w^{-s'} ds'
        = J_nu(2 sqrt(w)),  nu = kappa - 1, s' = s - z + 1/2,
    so after unfolding G~ the line integral collapses to the compactly
    supported smooth integral
        int G(y)/y (xy)^{1/2 - z} J_nu(2 sqrt(xy)) dy,
    evaluated by step-refined trapezoid quadrature.  A direct vertical-line
    quadrature is kept (`line_value`) as an independent slow oracle."""

    def __init__(self, G: PartitionG, kappa: int = 12, tol: float = 1e-10):
        self.G = G
        self.kappa = kappa
        self.tol = tol
        self._tables: dict = {}

    def _bessel_integral(self, x: float, z: complex, n: int) -> complex:
        lo, hi = self.G.support
        y = np.linspace(lo, hi, n)
        gy = self.G(y)
        xy = x * y
        from scipy.special import jv

        integrand = (
            gy / y
            * np.exp((0.5 - z) * np.log(xy))
            * jv(self.kappa - 1, 2.0 * np.sqrt(xy))
        )
        return complex(np.trapezoid(integrand, y))

    def __call__(self, x: float, z: complex = 0.0) -> complex:
        if x <= 0:
            raise ValueError("x must be positive")
        # points per oscillation cycle of J_nu(2 sqrt(xy)) across the support
        cycles = 2.0 * math.sqrt(2.0 * x) / TWO_PI + 1.0
        n = max(4097, int(64 * cycles)) | 1
        prev = self._bessel_integral(x, z, n)
        for _ in range(6):
            n = 2 * n - 1
            est = self._bessel_integral(x, z, n)
            if abs(est - prev) < self.tol:
                return est
            prev = est
        raise RuntimeError(
            f"kernel quadrature did not converge at x={x}: "
            f"last change {abs(est - prev):.2e}"
        )

    def _band_fit(self, z: complex, u_lo: float, u_hi: float,
                  degree: int) -> np.ndarray:
        """Chebyshev-Lobatto fit of K(u^2) on u in [u_lo, u_hi]."""
        from scipy.fft import dct

        theta = np.pi * np.arange(degree + 1) / degree
        u = u_lo + (np.cos(theta) + 1.0) * ((u_hi - u_lo) / 2.0)
        vals = np.empty(degree + 1, dtype=np.complex128)
        for i, ui in enumerate(u):
            x = max(ui * ui, 1e-12)
            cycles = 2.0 * math.sqrt(2.0 * x) / TWO_PI + 1.0
            n = max(4097, int(80 * cycles)) | 1
            vals[i] = self._bessel_integral(x, z, n)
        coef = np.empty(degree + 1, dtype=np.complex128)
        coef.real = dct(np.ascontiguousarray(vals.real), type=1) / degree
        coef.imag = dct(np.ascontiguousarray(vals.imag), type=1) / degree
        coef[0] /= 2.0
        coef[-1] /= 2.0
        return coef

    def tabulate(self, z: complex = 0.0, x_max: float = 4.2e6) -> "GraveKernelTable":
        """Piecewise-Chebyshev table of the kernel in the variable
        u = sqrt(x), split into octave bands.  The kernel oscillates at a
        bounded rate in u (frequencies 2 sqrt(y) over the support of G), so
        degree ~ 3 per unit of band width resolves it; per-band absolute
        fits avoid amplifying the roundoff floor of the large-x quadrature.
        Shared by every dual-sum evaluation at the same shift z."""
        key = (complex(z), float(x_max))
        hit = self._tables.get(key)
        if hit is not None:
            return hit
        u_max = math.sqrt(x_max)
        edges = [math.sqrt(_TABLE_DIRECT_BELOW)]
        while edges[-1] < u_max:
            edges.append(min(2.0 * edges[-1], u_max))
        bands = []
        for u_lo, u_hi in zip(edges[:-1], edges[1:]):
            degree = max(256, int(3.2 * (u_hi - u_lo)) + 64)
            bands.append((u_lo, u_hi, self._band_fit(z, u_lo, u_hi, degree)))
        table = GraveKernelTable(z=complex(z), x_max=float(x_max),
                                 bands=tuple(bands), kernel=self)
        self._tables[key] = table
        if len(self._tables) > 8:
            self._tables.pop(next(iter(self._tables)))
        return table

    def line_value(self, x: float, z: complex = 0.0, sigma: float = 2.371,
                   t_max: float = 2000.0, n: int = 160001,
                   n_x: int = 16385) -> complex:
        """Direct truncated vertical-line quadrature (oracle use; accurate
        only where the truncated tail is small, i.e. modest x)."""
        t = np.linspace(-t_max, t_max, n)
        s = sigma + 1j * t
        half = self.kappa / 2.0
        ratio = np.exp(loggamma(s - z + half) - loggamma(-s + z + half))
        gt = _mellin_on_support(self.G, *self.G.support, -s, n_grid=n_x)
        vals = ratio * gt * np.exp(-s * math.log(x))
        return complex(np.trapezoid(vals, t) / TWO_PI)


_TABLE_DIRECT_BELOW = 400.0  # small-x calls bypass the table


@dataclass(frozen=True)
class GraveKernelTable:
    """Fast vectorized kernel evaluation from octave-band Chebyshev fits of
    K(u^2) in u = sqrt(x); x above x_max evaluates to zero (the kernel
    there is below the quadrature roundoff floor ~1e-12), x below a small
    threshold goes through the adaptive quadrature directly."""

    z: complex
    x_max: float
    bands: tuple  # of (u_lo, u_hi, chebyshev coefficients)
    kernel: GraveKernel

    def values(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros(x.shape, dtype=np.complex128)
        flat_x = x.ravel()
        flat_out = out.ravel()
        u_all = np.sqrt(np.maximum(flat_x, 0.0))
        for u_lo, u_hi, coef in self.bands:
            sel = (u_all >= u_lo) & (u_all <= u_hi)
            if not sel.any():
                continue
            t = (2.0 * u_all[sel] - (u_lo + u_hi)) / (u_hi - u_lo)
            flat_out[sel] = np.polynomial.chebyshev.chebval(t, coef)
        low = (flat_x > 0) & (flat_x < _TABLE_DIRECT_BELOW)
        for i in np.nonzero(low)[0]:
            flat_out[i] = self.kernel(float(flat_x[i]), self.z)
        return out

    def self_check(self, rng=None, samples: int = 12) -> float:
        """Max deviation of the table against the adaptive quadrature at
        random interior points."""
        import random

        rng = rng or random.Random(1)
        worst = 0.0
        for _ in range(samples):
            x = math.exp(rng.uniform(math.log(_TABLE_DIRECT_BELOW),
                                     math.log(self.x_max)))
            worst = max(worst, abs(self.values(np.array([x]))[0]
                                   - self.kernel(x, self.z)))
        return worst


def grave_G(x: float, z: complex, kappa: int, G: PartitionG) -> complex:
    return GraveKernel(G, kappa)(x, z)


# ---------------------------------------------------------------------------
# band-limited test function F (Fourier transform supported in [-c0, c0])


@dataclass
class TestFunctionF:
    """F(x) = C1 * hhat0(C2 x)^2 for a fixed bump h0 on [-c0/2, c0/2].

    F is even, nonnegative, >= 1 on [-c1, c1]; F^ (and hence F-check) is
    (C1/C2) (h0 * h0)(y / C2), compactly supported in [-c0 C2, c0 C2].
    All evaluations are direct trapezoid quadrature against the stored h0
    grid, so the only numerical error is the (spectral) quadrature error
    of a C-infinity compactly supported integrand."""

    c0: float
    c1: float
    C1: float
    C2: float
    x_cut: float  # |x| beyond which F is numerically negligible
    _t: np.ndarray = field(repr=False)
    _h0t: np.ndarray = field(repr=False)
    kind: str = "F-testfunction"

    def _h0(self, t):
        hw = self.c0 / 2.0
        t = np.asarray(t, dtype=np.float64)
        out = np.zeros_like(t)
        inside = np.abs(t) < hw
        u = t[inside] / hw
        out[inside] = np.exp(-1.0 / (1.0 - u * u))
        return out

    def h0_hat(self, y):
        """Cosine transform of the base bump, vectorized over y."""
        y = np.atleast_1d(np.asarray(y, dtype=np.float64))
        out = np.empty(len(y))
        chunk = 1024
        t, h0t = self._t, self._h0t
        for i in range(0, len(y), chunk):
            yc = y[i : i + chunk]
            out[i : i + chunk] = np.trapezoid(
                h0t[None, :] * np.cos(TWO_PI * t[None, :] * yc[:, None]), t,
                axis=1,
            )
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        g = self.h0_hat(np.atleast_1d(self.C2 * x))
        out = self.C1 * g * g
        return out if x.ndim else float(out[0])

    def conv_h(self, u):
        """(h0 * h0)(u) by direct overlap quadrature (exact support [-c0, c0])."""
        u = np.atleast_1d(np.asarray(u, dtype=np.float64))
        out = np.zeros_like(u)
        t, h0t = self._t, self._h0t
        for i, ui in enumerate(u):
            if abs(ui) >= self.c0:
                continue
            out[i] = np.trapezoid(h0t * self._h0(ui - t), t)
        return out

    def f_hat(self, y):
        """Fourier transform of F; compactly supported in [-c0*C2, c0*C2]."""
        y = np.asarray(y, dtype=np.float64)
        out = (self.C1 / self.C2) * self.conv_h(np.atleast_1d(y) / self.C2)
        return out if y.ndim else float(out[0])

    def f_check(self, y):
        """cos+sin transform; equals f_hat since F is even."""
        return self.f_hat(y)

    def f_check_direct(self, y: float, x_step: float = 0.05) -> float:
        """Independent direct-integral route for the transform (oracle)."""
        x = np.arange(-self.x_cut, self.x_cut + x_step, x_step)
        fx = self(x)
        phase = TWO_PI * x * y
        return float(np.trapezoid(fx * (np.cos(phase) + np.sin(phase)), x))

    @property
    def check_support(self) -> float:
        return self.c0 * self.C2

    def integral(self) -> float:
        return self.f_hat(0.0)


def build_test_F(c0: float = 1.0 / 16.0, c1: float = 4.0,
                 n_grid: int = 8193) -> TestFunctionF:
    if c0 <= 0 or c1 <= 0:
        raise ValueError("c0 and c1 must be positive")
    hw = c0 / 2.0

    t = np.linspace(-hw, hw, n_grid)
    u = t / hw
    h0t = np.zeros_like(t)
    inner = np.abs(u) < 1.0
    h0t[inner] = np.exp(-1.0 / (1.0 - u[inner] ** 2))

    probe = TestFunctionF(c0=c0, c1=c1, C1=1.0, C2=1.0, x_cut=0.0,
                          _t=t, _h0t=h0t)

    # choose C2 <= 1 so h0_hat stays safely positive on [0, C2 c1]
    g0 = float(probe.h0_hat(0.0)[0])
    C2 = 1.0
    while True:
        vals = probe.h0_hat(np.linspace(0.0, C2 * c1, 513))
        if vals.min() > 0.05 * g0:
            break
        C2 *= 0.8

    gmin = min(float(probe.h0_hat(np.linspace(0.0, C2 * c1, 4097)).min()), g0)
    C1 = 1.001 / gmin**2

    # decay cutoff: F below 1e-18 of its peak
    y_hi = C2 * c1
    while True:
        edge = float(probe.h0_hat(y_hi)[0])
        if edge * edge < 1e-18 * g0 * g0 or y_hi > 1e5:
            break
        y_hi *= 1.3

    return TestFunctionF(c0=c0, c1=c1, C1=C1, C2=C2, x_cut=y_hi / C2,
                         _t=t, _h0t=h0t)


# ---------------------------------------------------------------------------
# moment window J


@dataclass(frozen=True)
class MomentWindowJ:
    """Smooth nonnegative window supported on [1/2, 2], transition width 1/8."""

    width: float = 0.125
    kind: str = "J-weight"
    support: tuple[float, float] = (0.5, 2.0)

    def __call__(self, x):
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        w = self.width
        out = smoothstep((x - 0.5) / w) * smoothstep((2.0 - x) / w)
        return float(out[0]) if scalar else out

    def mellin_at_1(self) -> float:
        """J~(1) = integral of J."""
        x = np.linspace(0.5, 2.0, 8193)
        return float(np.trapezoid(self(x), x))


def build_J(width: float = 0.125) -> MomentWindowJ:
    return MomentWindowJ(width=width)
