"""Graph manifolds M = {y = h(x, w)} at the base point 0.

Ambient real coordinates for C^N = C^l x C^n are laid out as

    [x_1..x_l, y_1..y_l, Re w_1..Re w_n, Im w_1..Im w_n]   (dim 2N)

so T_0M = {y = 0} with intrinsic coordinates [x, Re w, Im w] (dim l + 2n)
and T^c_0M = {x = 0, y = 0} is the w-space.  Multiplication by i acts as
(x, y, u, v) -> (-y, x, -v, u).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .expressions import DefiningMap, real_hessian, second_derivatives


def apply_i(vec, l, n):
    """Multiply an ambient vector by i."""
    vec = np.asarray(vec, dtype=float)
    x, y = vec[:l], vec[l:2 * l]
    u, v = vec[2 * l:2 * l + n], vec[2 * l + n:]
    return np.concatenate([-y, x, -v, u])


def ambient_from_complex(z, w, l, n):
    """Ambient real vector of the point/vector (z, w) in C^l x C^n."""
    z = np.asarray(z, dtype=complex).reshape(l)
    w = np.asarray(w, dtype=complex).reshape(n)
    return np.concatenate([z.real, z.imag, w.real, w.imag])


def complex_from_ambient(vec, l, n):
    vec = np.asarray(vec, dtype=float)
    z = vec[:l] + 1j * vec[l:2 * l]
    w = vec[2 * l:2 * l + n] + 1j * vec[2 * l + n:]
    return z, w


def tangent_coords(vec, l, n, tol=1e-9):
    """Intrinsic [x, u, v] coordinates of an ambient vector in T_0M."""
    vec = np.asarray(vec, dtype=float)
    yblock = vec[l:2 * l]
    scale = max(1.0, float(np.max(np.abs(vec), initial=0.0)))
    if l and float(np.max(np.abs(yblock), initial=0.0)) > tol * scale:
        raise InvalidInputError("vector does not lie in T_0M = {y = 0}")
    return np.concatenate([vec[:l], vec[2 * l:]])


def ambient_from_tangent(t, l, n):
    t = np.asarray(t, dtype=float)
    return np.concatenate([t[:l], np.zeros(l), t[l:]])


def tangent_from_w(w, l, n):
    """Intrinsic T_0M coordinates of a complex tangent vector w in T^c_0M."""
    w = np.asarray(w, dtype=complex).reshape(n)
    return np.concatenate([np.zeros(l), w.real, w.imag])


@dataclass
class GraphManifold:
    """A generic submanifold given as a graph y = h(x, w) with h(0)=0, h'(0)=0."""

    defining: DefiningMap
    _levi: list = field(default=None, repr=False, compare=False)

    @classmethod
    def from_sources(cls, sources, l, n):
        return cls(DefiningMap.from_sources(sources, l, n))

    @property
    def l(self):
        return self.defining.l

    @property
    def n(self):
        return self.defining.n

    @property
    def N(self):
        return self.l + self.n

    @property
    def tangent_dim(self):
        return self.l + 2 * self.n

    def h(self, x, w):
        return self.defining(x, w)

    def levi_matrices(self):
        """One hermitian n x n matrix of mixed second derivatives per component."""
        if self._levi is None:
            x0 = np.zeros(self.l)
            w0 = np.zeros(self.n, dtype=complex)
            self._levi = [
                second_derivatives(comp, (x0, w0), mode="wirtinger")
                for comp in self.defining.components
            ]
        return self._levi

    def levi_form(self, w):
        """The Levi form value L(w, w) in T_0 C^N / T_0 M = R^l.

        Each component is sum_ij d2 h_k / dw_i dconj(w_j) w_i conj(w_j);
        homogeneous of degree 2 in |w|.
        """
        w = np.asarray(w, dtype=complex).reshape(self.n)
        if np.max(np.abs(w), initial=0.0) > 10.0:
            raise InvalidInputError("levi_form expects |w| <= 10 (scale guard)")
        return np.array(
            [float(np.real(w @ A @ np.conj(w))) for A in self.levi_matrices()]
        )

    def pr(self, vec):
        """Projection T_0 C^N -> T_0 C^N / T_0 M: the y-block of an ambient vector."""
        vec = np.asarray(vec, dtype=float)
        return vec[self.l:2 * self.l].copy()

    @property
    def harmonic_quadratic_flag(self):
        return harmonic_normalization_check(self).flagged

    def signature_key(self):
        """Stable identity for compatibility checks between wedges."""
        from .expressions import to_source

        return (self.l, self.n,
                tuple(to_source(c) for c in self.defining.components))


@dataclass
class EdgeSpec:
    """A real subspace of T_0M, spanned by ambient 2N-vectors."""

    spanning: np.ndarray  # shape (k, 2N)
    l: int
    n: int

    def __post_init__(self):
        self.spanning = np.asarray(self.spanning, dtype=float)
        if self.spanning.ndim != 2 or self.spanning.shape[1] != 2 * (self.l + self.n):
            raise InvalidInputError(
                f"edge spanning vectors must live in R^{2 * (self.l + self.n)}"
            )
        for row in self.spanning:
            tangent_coords(row, self.l, self.n, tol=1e-10)

    @property
    def dim(self):
        return int(np.linalg.matrix_rank(self.spanning, tol=1e-10))

    def basis(self):
        """Orthonormal ambient basis of the edge subspace."""
        q, r = np.linalg.qr(self.spanning.T)
        diag = np.abs(np.diag(r))
        keep = diag > 1e-10 * max(1.0, diag.max(initial=0.0))
        return q[:, keep]

    def tangent_basis(self):
        """The same basis in intrinsic T_0M coordinates."""
        b = self.basis()
        return np.stack(
            [tangent_coords(b[:, j], self.l, self.n) for j in range(b.shape[1])],
            axis=1,
        )


def genericity_check(edge, N=None):
    """Whether span(E) + i span(E) is all of C^N; returns (bool, achieved rank)."""
    if N is None:
        N = edge.l + edge.n
    basis = edge.basis()
    if basis.size == 0:
        return False, 0
    i_basis = np.stack(
        [apply_i(basis[:, j], edge.l, edge.n) for j in range(basis.shape[1])],
        axis=1,
    )
    stacked = np.concatenate([basis, i_basis], axis=1)
    rank = int(np.linalg.matrix_rank(stacked, tol=1e-10))
    return rank == 2 * N, rank


@dataclass
class NormalizationReport:
    hermitian: list          # per-component mixed Wirtinger matrices
    pluriharmonic_norm: float
    flagged: bool


def harmonic_normalization_check(M, tol=1e-8):
    """Detect second-order terms of h beyond the hermitian (mixed) part.

    The quadratic Taylor part of each h_k splits into the hermitian form
    (read from d2/dw dconj(w)) and a pluriharmonic rest (dw dw terms, their
    conjugates, and anything involving x).  The rest is reported, never
    removed; scenarios that need the normalization are expected to supply
    pre-normalized coordinates.
    """
    x0 = np.zeros(M.l)
    w0 = np.zeros(M.n, dtype=complex)
    l, n = M.l, M.n
    hermitians = []
    worst = 0.0
    for comp in M.defining.components:
        full = real_hessian(comp, (x0, w0))
        mixed = second_derivatives(comp, (x0, w0), mode="wirtinger")
        herm_real = np.zeros_like(full)
        herm_real[l:l + n, l:l + n] = 2.0 * mixed.real
        herm_real[l + n:, l + n:] = 2.0 * mixed.real
        herm_real[l:l + n, l + n:] = 2.0 * mixed.imag
        herm_real[l + n:, l:l + n] = -2.0 * mixed.imag
        residual = full - herm_real
        worst = max(worst, float(np.max(np.abs(residual), initial=0.0)))
        hermitians.append(mixed)
    return NormalizationReport(hermitians, worst, worst > tol)
