"""Spectral machinery on the unit circle.

Functions are sampled at theta_j = 2*pi*j/grid_size and represented by the
coefficients a_k of sum_k a_k e^{i k theta} (a_k = fft(values)/grid_size).
The harmonic extension of such a trace weights a_k by r^|k|; its conjugate is
produced by the frequency multiplier -i*sign(k), pinned to vanish at tau = 1.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AccuracyError,
    ConfigurationError,
    DomainError,
    InvalidInputError,
)

MIN_GRID = 256
DEFAULT_GRID = 2048


def _check_grid_size(grid_size):
    if grid_size < MIN_GRID or grid_size & (grid_size - 1):
        raise ConfigurationError(
            f"grid_size must be a power of two >= {MIN_GRID}, got {grid_size}"
        )


def grid_angles(grid_size):
    """The sample angles theta_j = 2*pi*j/grid_size."""
    _check_grid_size(grid_size)
    return np.arange(grid_size) * (2.0 * np.pi / grid_size)


def grid_points(grid_size):
    """The sample points tau_j = e^{i theta_j}; tau_0 = 1 is on the grid."""
    return np.exp(1j * grid_angles(grid_size))


@dataclass
class BoundaryFunction:
    """A function on the circle given by uniform samples.

    values may be real or complex; the Fourier coefficient vector is cached
    on first use and kept in fft frequency order (0, 1, ..., -1).
    """

    values: np.ndarray
    _fourier: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.ndim != 1:
            raise InvalidInputError("boundary samples must be a 1-d vector")
        _check_grid_size(self.values.shape[0])
        if not np.all(np.isfinite(self.values)):
            raise InvalidInputError("boundary samples must be finite")

    @property
    def grid_size(self):
        return self.values.shape[0]

    @property
    def fourier(self):
        if self._fourier is None:
            self._fourier = np.fft.fft(self.values) / self.grid_size
        return self._fourier

    @property
    def frequencies(self):
        g = self.grid_size
        return np.fft.fftfreq(g, d=1.0 / g).astype(int)

    @classmethod
    def from_coefficients(cls, coeffs):
        g = len(coeffs)
        values = np.fft.ifft(np.asarray(coeffs) * g)
        return cls(values)

    @classmethod
    def from_callable(cls, fn, grid_size=DEFAULT_GRID):
        return cls(np.asarray(fn(grid_angles(grid_size))))

    def is_real(self, tol=1e-12):
        if not np.iscomplexobj(self.values):
            return True
        scale = max(1.0, float(np.max(np.abs(self.values), initial=0.0)))
        return float(np.max(np.abs(self.values.imag))) <= tol * scale

    def real_values(self):
        return self.values.real if np.iscomplexobj(self.values) else self.values

    def value_at_one(self):
        """Value at tau = 1 (grid sample j = 0)."""
        return self.values[0]

    def __add__(self, other):
        other_values = other.values if isinstance(other, BoundaryFunction) else other
        return BoundaryFunction(self.values + other_values)

    def __sub__(self, other):
        other_values = other.values if isinstance(other, BoundaryFunction) else other
        return BoundaryFunction(self.values - other_values)

    def __mul__(self, scalar):
        return BoundaryFunction(self.values * scalar)

    __rmul__ = __mul__


def hilbert_t1(f):
    """Boundary trace of the harmonic conjugate, normalized to vanish at tau=1.

    For f = sum a_k e^{ik theta} the conjugate multiplier is -i*sign(k); the
    resulting trace is then shifted by its own value at theta = 0 so that the
    operator annihilates its output at tau = 1.  f + i*hilbert_t1(f) has no
    negative-frequency content.
    """
    if not isinstance(f, BoundaryFunction):
        f = BoundaryFunction(np.asarray(f))
    if not f.is_real():
        raise InvalidInputError("hilbert_t1 expects a real-valued trace")
    g = f.grid_size
    coeffs = np.fft.fft(f.real_values()) / g
    k = np.fft.fftfreq(g, d=1.0 / g)
    mult = -1j * np.sign(k)
    mult[g // 2] = 0.0  # Nyquist bin has no representable conjugate
    conj_coeffs = mult * coeffs
    out = np.fft.ifft(conj_coeffs * g).real
    return BoundaryFunction(out - out[0])


def radial_derivative_at_one(f, tail_rtol=1e-8):
    """d/dr at r=1, theta=0 of the harmonic extension: sum_k |k| a_k.

    The grid sum only resolves frequencies up to grid/2; the band beyond
    grid/4 estimates the unresolved tail.  When that band carries more than
    ``tail_rtol`` of the total weight the sum is not trusted and an
    AccuracyError (carrying the tail magnitude) is raised.  Pass a larger
    tail_rtol for slowly decaying singular profiles, where the sign and the
    leading digits are still meaningful.
    """
    if not isinstance(f, BoundaryFunction):
        f = BoundaryFunction(np.asarray(f))
    g = f.grid_size
    coeffs = f.fourier
    k = np.abs(np.fft.fftfreq(g, d=1.0 / g))
    weights = k * np.abs(coeffs)
    total = float(weights.sum())
    tail = float(weights[k > g // 4].sum())
    if total > 0.0 and tail > tail_rtol * total:
        raise AccuracyError(
            f"Fourier tail beyond k={g // 4} carries {tail:.3e} of weight "
            f"(relative {tail / total:.3e} > {tail_rtol:.1e}); refine the grid "
            "or relax tail_rtol",
            magnitude=tail,
        )
    value = complex((k * coeffs).sum())
    if f.is_real():
        return float(value.real)
    return value


def singular_factor(alpha, tau):
    """Principal branch of (1 - tau)^alpha on the closed disc.

    Real and positive on tau in (0, 1), zero at tau = 1, continuous on the
    closed disc minus {1}.  Accepts scalars or arrays.
    """
    if not 0.0 < alpha <= 2.0:
        raise DomainError(f"alpha must lie in (0, 2], got {alpha}")
    tau = np.asarray(tau, dtype=complex)
    if np.any(np.abs(tau) > 1.0 + 1e-12):
        raise DomainError("singular_factor requires |tau| <= 1")
    base = 1.0 - tau
    out = np.where(base == 0, 0.0 + 0.0j, base ** alpha)
    if out.ndim == 0:
        return complex(out)
    return out


def holomorphy_residual(f):
    """Fraction of spectral energy at strictly negative frequencies.

    Zero for boundary values of a holomorphic function; the zero function
    returns 0 by convention.
    """
    if not isinstance(f, BoundaryFunction):
        f = BoundaryFunction(np.asarray(f))
    coeffs = f.fourier
    k = f.frequencies
    total = float(np.sum(np.abs(coeffs) ** 2))
    if total == 0.0:
        return 0.0
    neg = float(np.sum(np.abs(coeffs[k < 0]) ** 2))
    return neg / total


def holder_norm(f, alpha, window=256):
    """Discrete Hoelder-alpha estimate: sup|f| + windowed difference quotient.

    The seminorm maximizes |f(theta_i) - f(theta_j)| / |theta_i - theta_j|^alpha
    over sample pairs at most ``window`` grid steps apart.  This is an
    engineering estimate (it gates smallness heuristics), not a certified
    bound.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if not isinstance(f, BoundaryFunction):
        f = BoundaryFunction(np.asarray(f))
    vals = f.values
    g = f.grid_size
    step = 2.0 * np.pi / g
    sup = float(np.max(np.abs(vals)))
    semi = 0.0
    for offset in range(1, min(window, g // 2) + 1):
        diffs = np.abs(np.roll(vals, -offset) - vals)
        semi = max(semi, float(np.max(diffs)) / (offset * step) ** alpha)
    return sup + semi


@dataclass
class HarmonicField:
    """Harmonic extension of a boundary trace to the open disc."""

    boundary: BoundaryFunction

    def at(self, tau):
        """Evaluate at interior points tau (|tau| < 1)."""
        tau = np.asarray(tau, dtype=complex)
        if np.any(np.abs(tau) >= 1.0):
            raise DomainError("harmonic field evaluation requires |tau| < 1")
        coeffs = self.boundary.fourier
        k = self.boundary.frequencies
        r = np.abs(tau)[..., None]
        theta = np.angle(tau)[..., None]
        terms = coeffs * r ** np.abs(k) * np.exp(1j * k * theta)
        out = terms.sum(axis=-1)
        if self.boundary.is_real():
            out = out.real
        if out.ndim == 0:
            return out[()]
        return out

    def radial_derivative_at_one(self, tail_rtol=1e-8):
        return radial_derivative_at_one(self.boundary, tail_rtol=tail_rtol)


def singular_profile(alpha, grid_size=DEFAULT_GRID):
    """Samples of |1 - tau|^(2 alpha), the shape of the leading disc bulge."""
    theta = grid_angles(grid_size)
    return BoundaryFunction((2.0 * np.abs(np.sin(theta / 2.0))) ** (2.0 * alpha))


@dataclass
class SingularFunction:
    """A trace c_plus (1-tau)^alpha + c_minus (1-conj(tau))^alpha + remainder.

    The remainder carries the smooth (C^{1, 2 alpha - 1}) part; prescribed
    disc components keep c_minus = 0 so the trace is holomorphic.
    """

    alpha: float
    coeff_plus: complex = 0.0
    coeff_minus: complex = 0.0
    remainder: BoundaryFunction = None
    grid_size: int = DEFAULT_GRID

    def __post_init__(self):
        if not 0.5 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (1/2, 1], got {self.alpha}")
        if self.remainder is not None:
            self.grid_size = self.remainder.grid_size

    @property
    def beta(self):
        return 2.0 * self.alpha - 1.0

    def boundary_values(self, grid_size=None):
        g = grid_size or self.grid_size
        tau = grid_points(g)
        vals = np.zeros(g, dtype=complex)
        if self.coeff_plus != 0:
            vals += self.coeff_plus * singular_factor(self.alpha, tau)
        if self.coeff_minus != 0:
            vals += self.coeff_minus * np.conj(singular_factor(self.alpha, tau))
        if self.remainder is not None:
            if self.remainder.grid_size != g:
                raise ConfigurationError("remainder grid does not match request")
            vals += self.remainder.values
        return vals

    def value_at_one(self):
        """Both singular factors vanish at tau=1, so only the remainder counts."""
        if self.remainder is None:
            return 0.0 + 0.0j
        return complex(self.remainder.value_at_one())

    def interior_values(self, tau):
        """Evaluate inside the disc; requires coeff_minus = 0 (holomorphic)."""
        tau = np.asarray(tau, dtype=complex)
        if np.abs(self.coeff_minus) != 0:
            raise DomainError("anti-holomorphic part has no interior extension")
        vals = self.coeff_plus * singular_factor(self.alpha, tau)
        if self.remainder is not None:
            coeffs = self.remainder.fourier
            k = self.remainder.frequencies
            keep = k >= 0
            vals = vals + (coeffs[keep] * tau[..., None] ** k[keep]).sum(axis=-1)
        return vals

    def norm_summands(self):
        """(Hoelder-alpha size of the singular part, C^{1,beta} size of the rest).

        The two summands are reported separately; callers weigh them as
        their smallness gates require.
        """
        tau = grid_points(self.grid_size)
        factor = BoundaryFunction(singular_factor(self.alpha, tau))
        singular = ((abs(self.coeff_plus) + abs(self.coeff_minus))
                    * holder_norm(factor, self.alpha))
        smooth = 0.0
        if self.remainder is not None:
            g = self.remainder.grid_size
            coeffs = self.remainder.fourier
            k = np.fft.fftfreq(g, d=1.0 / g)
            deriv = BoundaryFunction(np.fft.ifft(1j * k * coeffs * g))
            smooth = (float(np.max(np.abs(self.remainder.values)))
                      + holder_norm(deriv, self.beta))
        return singular, smooth
