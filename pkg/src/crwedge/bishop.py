"""Boundary fixed-point solver attaching analytic discs to graph manifolds.

The disc (z(tau), w(tau)) is attached to M = {y = h(x, w)} by solving

    u = x - T1[h(u, w)]        on the grid,  u = Re z,

with T1 the normalized conjugation operator; the imaginary part is then
reconstructed holomorphically as Im z = T1 u + h(x(1), w(1)), so holomorphy
is exact by construction and the attachment residual measures the quality
of the fixed point.  Prescribed w-components may carry an exact singular
factor eta (1 - tau)^alpha.
"""

from dataclasses import dataclass, field

import numpy as np

from .circle import (
    BoundaryFunction,
    SingularFunction,
    hilbert_t1,
    holder_norm,
    holomorphy_residual,
)
from .errors import (
    ConvergenceError,
    DomainError,
    InvalidInputError,
    NoContractionError,
)

DEFAULT_GRID = 2048
DEFAULT_TOL = 1e-11
DEFAULT_MAX_ITER = 200
SMALLNESS_GATE = 0.3


def singular_component(alpha, eta, w0):
    """Prescribed components eta (1 - tau)^alpha w0, one per coordinate of w0.

    eta = 0 gives identically zero components; the value at tau = 1 is 0.
    """
    if eta < 0:
        raise InvalidInputError("eta must be nonnegative")
    w0 = np.atleast_1d(np.asarray(w0, dtype=complex))
    return [SingularFunction(alpha, coeff_plus=eta * c) for c in w0]


class _WTrace:
    """Uniform access to prescribed w-components of mixed representations."""

    def __init__(self, components, grid_size):
        self.grid_size = grid_size
        self.components = []
        for comp in components:
            if isinstance(comp, SingularFunction):
                self.components.append(comp)
            elif isinstance(comp, BoundaryFunction):
                self.components.append(comp)
            else:
                arr = np.asarray(comp, dtype=complex)
                if arr.ndim == 0:
                    arr = np.full(grid_size, complex(arr))
                self.components.append(BoundaryFunction(arr))

    @property
    def n(self):
        return len(self.components)

    @property
    def alpha(self):
        alphas = [c.alpha for c in self.components if isinstance(c, SingularFunction)]
        return min(alphas) if alphas else None

    def boundary_matrix(self):
        rows = []
        for comp in self.components:
            if isinstance(comp, SingularFunction):
                rows.append(comp.boundary_values(self.grid_size))
            else:
                if comp.grid_size != self.grid_size:
                    raise InvalidInputError("w-component grid mismatch")
                rows.append(np.asarray(comp.values, dtype=complex))
        return np.array(rows)

    def value_at_one(self):
        return np.array([
            comp.value_at_one() if isinstance(comp, SingularFunction)
            else complex(comp.values[0])
            for comp in self.components
        ])

    def interior(self, tau):
        out = []
        for comp in self.components:
            if isinstance(comp, SingularFunction):
                out.append(comp.interior_values(np.asarray(tau, dtype=complex)))
            else:
                coeffs = comp.fourier
                k = comp.frequencies
                keep = k >= 0
                out.append((coeffs[keep]
                            * np.asarray(tau, dtype=complex)[..., None] ** k[keep]
                            ).sum(axis=-1))
        return np.array(out)

    def holder_estimate(self):
        total = 0.0
        values = self.boundary_matrix()
        for i, comp in enumerate(self.components):
            alpha = comp.alpha if isinstance(comp, SingularFunction) else 1.0
            total += holder_norm(BoundaryFunction(values[i]), alpha)
        return total


@dataclass
class AnalyticDisc:
    """An attached disc: z-block grid samples plus prescribed w-components."""

    manifold: object
    grid_size: int
    z_values: np.ndarray          # (l, grid) complex
    w_trace: _WTrace
    x_target: np.ndarray
    attach_residual: float
    holomorphy_residual: float
    iterations: int
    contraction_factor: float
    attach_tol: float
    deltas: list = field(default_factory=list, repr=False)

    @property
    def w_values(self):
        return self.w_trace.boundary_matrix()

    @property
    def alpha(self):
        return self.w_trace.alpha

    def center_value(self):
        """A(1) = (z(1), w(1))."""
        return self.z_values[:, 0].copy(), self.w_trace.value_at_one()

    def boundary_chart(self):
        """(x, w) samples of the boundary in the graph chart of M."""
        return self.z_values.real, self.w_values

    def is_degenerate(self, tol=1e-13):
        scale = max(float(np.max(np.abs(self.z_values), initial=0.0)),
                    float(np.max(np.abs(self.w_values), initial=0.0)))
        return scale <= tol

    def interior_point(self, tau):
        return disc_interior_eval(self, tau)

    def z_radial_derivative_at_one(self):
        """d/dr of the z-block at tau = 1 via the one-sided series sum k z_k."""
        g = self.grid_size
        out = np.empty(self.manifold.l, dtype=complex)
        for comp in range(self.manifold.l):
            coeffs = np.fft.fft(self.z_values[comp]) / g
            k = np.fft.fftfreq(g, d=1.0 / g)
            keep = k >= 0
            out[comp] = np.sum(k[keep] * coeffs[keep])
        return out

    def z_angular_derivative_at_one(self):
        g = self.grid_size
        out = np.empty(self.manifold.l, dtype=complex)
        for comp in range(self.manifold.l):
            coeffs = np.fft.fft(self.z_values[comp]) / g
            k = np.fft.fftfreq(g, d=1.0 / g)
            out[comp] = np.sum(1j * k * coeffs)
        return out

    def c1_beta_norm(self, beta=None):
        """Discrete C^{1,beta} size of the z-block: sup of z' plus its seminorm."""
        if beta is None:
            beta = 2.0 * (self.alpha or 1.0) - 1.0
        g = self.grid_size
        worst = 0.0
        for comp in range(self.manifold.l):
            coeffs = np.fft.fft(self.z_values[comp]) / g
            k = np.fft.fftfreq(g, d=1.0 / g)
            deriv = np.fft.ifft(1j * k * coeffs * g)
            worst = max(worst, holder_norm(BoundaryFunction(deriv), beta))
        return worst


def solve_bishop(M, w, x=None, grid_size=DEFAULT_GRID, max_iter=DEFAULT_MAX_ITER,
                 tol=DEFAULT_TOL, smallness_gate=SMALLNESS_GATE, u0=None):
    """Attach a disc to M with prescribed w-components and x(1) = x.

    Picard iteration u <- x - T1[h(u, w)] from u = x (or ``u0``); diverging
    data raises NoContractionError, exhaustion raises ConvergenceError.  The
    returned disc satisfies x(1) = x exactly and carries its residuals.
    """
    if not isinstance(w, (list, tuple)):
        w = [w]
    trace = _WTrace(w, grid_size)
    if trace.n != M.n:
        raise InvalidInputError(f"need {M.n} w-components, got {trace.n}")
    x = np.zeros(M.l) if x is None else np.asarray(x, dtype=float).reshape(M.l)

    size = trace.holder_estimate() + float(np.linalg.norm(x))
    if size > smallness_gate:
        raise InvalidInputError(
            f"data size {size:.3f} exceeds the smallness gate {smallness_gate}; "
            "shrink eta or x"
        )

    w_grid = trace.boundary_matrix()
    u = np.tile(x[:, None], (1, grid_size)) if u0 is None else np.array(u0, dtype=float)
    if u.shape != (M.l, grid_size):
        raise InvalidInputError("u0 must have shape (l, grid_size)")

    deltas = []
    grow_streak = 0
    for iteration in range(1, max_iter + 1):
        v = M.h(u, w_grid)
        u_next = np.empty_like(u)
        for comp in range(M.l):
            u_next[comp] = x[comp] - hilbert_t1(BoundaryFunction(v[comp])).values
        delta = float(np.max(np.abs(u_next - u)))
        deltas.append(delta)
        u = u_next
        if delta < tol:
            break
        if len(deltas) >= 2 and deltas[-1] > deltas[-2]:
            grow_streak += 1
            if grow_streak >= 5:
                raise NoContractionError(
                    "fixed-point iteration diverges; the prescribed data is too "
                    "large for the contraction regime",
                    residual=delta,
                )
        else:
            grow_streak = 0
    else:
        raise ConvergenceError(
            f"no convergence after {max_iter} iterations", residual=deltas[-1]
        )

    v = M.h(u, w_grid)
    v_one = v[:, 0]
    z = np.empty((M.l, grid_size), dtype=complex)
    attach = 0.0
    for comp in range(M.l):
        conj_u = hilbert_t1(BoundaryFunction(u[comp])).values
        y = conj_u + v_one[comp]
        z[comp] = u[comp] + 1j * y
        attach = max(attach, float(np.max(np.abs(y - v[comp]))))

    holo = max(
        [holomorphy_residual(BoundaryFunction(z[comp])) for comp in range(M.l)]
        + [holomorphy_residual(BoundaryFunction(w_grid[comp]))
           for comp in range(M.n)]
    )

    ratios = [deltas[i + 1] / deltas[i]
              for i in range(len(deltas) - 1) if deltas[i] > 0 and deltas[i + 1] > 0]
    factor = float(np.median(ratios)) if ratios else 0.0
    singular = trace.alpha is not None and trace.alpha < 1.0
    return AnalyticDisc(
        manifold=M,
        grid_size=grid_size,
        z_values=z,
        w_trace=trace,
        x_target=x,
        attach_residual=attach,
        holomorphy_residual=holo,
        iterations=len(deltas),
        contraction_factor=factor,
        attach_tol=1e-7 if singular else 1e-9,
        deltas=deltas,
    )


def disc_interior_eval(disc, tau):
    """Evaluate the disc at a point of the closed disc via its one-sided series.

    The z-block uses the nonnegative-frequency Fourier sum, the w-components
    their exact singular factors plus remainder series; points outside the
    closed disc are rejected.
    """
    tau = complex(tau)
    if abs(tau) > 1.0 + 1e-12:
        raise DomainError("disc evaluation requires |tau| <= 1")
    if disc.holomorphy_residual > 1e-6:
        raise InvalidInputError(
            "disc is not holomorphic to tolerance; refusing interior evaluation"
        )
    g = disc.grid_size
    z_out = np.empty(disc.manifold.l, dtype=complex)
    for comp in range(disc.manifold.l):
        coeffs = np.fft.fft(disc.z_values[comp]) / g
        k = np.fft.fftfreq(g, d=1.0 / g).astype(int)
        keep = k >= 0
        z_out[comp] = np.sum(coeffs[keep] * tau ** k[keep])
    w_out = disc.w_trace.interior(np.array([tau]))[:, 0]
    return np.concatenate([z_out, w_out])


@dataclass
class MembershipReport:
    passed: bool
    failing: np.ndarray
    degenerate: bool
    checked: int

    def __bool__(self):
        return self.passed


def wedge_membership_of_boundary(disc, wedge, exclude_one=True):
    """Evaluate the wedge predicate at every boundary sample except tau = 1.

    The predicates are the scenario's strict inequalities on the graph chart
    of M; an identically zero disc is reported degenerate (the constant base
    point never lies in the open wedge).
    """
    if not wedge.membership:
        raise InvalidInputError(f"wedge {wedge.name!r} carries no membership predicate")
    if disc.is_degenerate():
        return MembershipReport(False, np.arange(disc.grid_size), True, 0)
    x, w = disc.boundary_chart()
    vals = wedge.predicate_values(x, w)   # (npred, grid)
    ok = np.all(np.asarray(vals) > 0.0, axis=0)
    idx = np.arange(disc.grid_size)
    if exclude_one:
        ok = ok[1:]
        idx = idx[1:]
    failing = idx[~ok]
    return MembershipReport(failing.size == 0, failing, False, int(ok.size))
