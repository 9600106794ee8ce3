"""Convex cones in tangent spaces and the angle machinery built on them.

Cones live in the intrinsic coordinates [x, Re w, Im w] of T_0M (dimension
l + 2n) unless stated otherwise; directional cones live in a stored
complement basis of T_0M / T_0E.  The opening angle gamma_w of a complex
direction w measures the arc {phi : e^{i phi} w in C_0V} by uniform scan
plus bisection refinement of the run boundaries.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import nnls
from scipy.stats import norm, qmc

from . import _arcscan_py, kernels
from .errors import HypothesisError, InvalidInputError
from .manifold import apply_i, genericity_check, tangent_from_w

TWO_PI = 2.0 * math.pi
DEFAULT_RESOLUTION = 1440
REFINE_TOL = 1e-6


# ---------------------------------------------------------------------------
# cone variants


def _unit_rows(mat):
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    norms = np.linalg.norm(mat, axis=1)
    if np.any(norms < 1e-14):
        raise InvalidInputError("zero row in cone data")
    return mat / norms[:, None]


@dataclass
class PolyhedralCone:
    """{v : a_i . v > 0 (strict) or >= 0 (closed) for all i}."""

    normals: np.ndarray
    strict: np.ndarray = None

    def __post_init__(self):
        self.normals = _unit_rows(self.normals)
        if self.strict is None:
            self.strict = np.zeros(self.normals.shape[0], dtype=bool)
        self.strict = np.asarray(self.strict, dtype=bool)
        if self.strict.shape[0] != self.normals.shape[0]:
            raise InvalidInputError("one open/closed flag per normal required")

    @property
    def dim(self):
        return self.normals.shape[1]

    def contains(self, v, margin=0.0):
        v = np.asarray(v, dtype=float)
        scale = np.linalg.norm(v)
        if scale == 0.0:
            return not bool(self.strict.any()) and margin <= 0.0
        vals = self.normals @ (v / scale)
        if margin > 0.0:
            return bool(np.all(vals >= margin))
        ok = np.where(self.strict, vals > 0.0, vals >= 0.0)
        return bool(np.all(ok))

    def contains_batch(self, vecs):
        vecs = np.asarray(vecs, dtype=float)
        vals = vecs @ self.normals.T
        ok = np.where(self.strict[None, :], vals > 0.0, vals >= 0.0)
        return np.all(ok, axis=1)

    def generators(self):
        return polyhedral_generators(self.normals)


@dataclass
class SectorCone:
    """Angular sector in an oriented 2-plane, plus a free linear subspace.

    Membership: the in-plane part has polar angle in [phi0, phi1] (taken
    modulo 2 pi), any component in the subspace is free, and nothing may
    stick out of span(plane, subspace).
    """

    e1: np.ndarray
    e2: np.ndarray
    phi0: float
    phi1: float
    subspace: np.ndarray = None  # rows spanning the free part, may be empty

    def __post_init__(self):
        self.e1 = np.asarray(self.e1, dtype=float)
        self.e2 = np.asarray(self.e2, dtype=float)
        for v in (self.e1, self.e2):
            if abs(np.linalg.norm(v) - 1.0) > 1e-9:
                raise InvalidInputError("sector plane basis must be unit vectors")
        if abs(self.e1 @ self.e2) > 1e-9:
            raise InvalidInputError("sector plane basis must be orthogonal")
        if not 0.0 < self.phi1 - self.phi0 <= TWO_PI:
            raise InvalidInputError("sector needs 0 < phi1 - phi0 <= 2 pi")
        if self.subspace is None or len(self.subspace) == 0:
            self.subspace = np.zeros((0, self.e1.shape[0]))
        else:
            sub = np.atleast_2d(np.asarray(self.subspace, dtype=float))
            q, r = np.linalg.qr(sub.T)
            keep = np.abs(np.diag(r)) > 1e-10
            self.subspace = q[:, keep].T
        for row in self.subspace:
            if abs(row @ self.e1) > 1e-9 or abs(row @ self.e2) > 1e-9:
                raise InvalidInputError("sector subspace must be orthogonal to the plane")

    @property
    def dim(self):
        return self.e1.shape[0]

    def _split(self, vecs):
        vecs = np.atleast_2d(np.asarray(vecs, dtype=float))
        c1 = vecs @ self.e1
        c2 = vecs @ self.e2
        sub = vecs @ self.subspace.T if self.subspace.size else np.zeros((len(vecs), 0))
        recon = np.outer(c1, self.e1) + np.outer(c2, self.e2)
        if self.subspace.size:
            recon = recon + sub @ self.subspace
        resid = np.linalg.norm(vecs - recon, axis=1)
        return c1, c2, resid

    def contains_batch(self, vecs, margin=0.0):
        vecs = np.atleast_2d(np.asarray(vecs, dtype=float))
        c1, c2, resid = self._split(vecs)
        scale = np.maximum(np.linalg.norm(vecs, axis=1), 1e-300)
        in_span = resid <= 1e-9 * np.maximum(scale, 1.0)
        inplane = np.hypot(c1, c2)
        lineal = inplane <= 1e-12 * scale
        psi = np.mod(np.arctan2(c2, c1) - self.phi0, TWO_PI)
        width = self.phi1 - self.phi0
        in_angle = (psi >= margin) & (psi <= width - margin)
        return in_span & (lineal | in_angle)

    def contains(self, v, margin=0.0):
        return bool(self.contains_batch(np.asarray(v, dtype=float)[None, :], margin)[0])

    def generators(self, arc_samples=17):
        rays = []
        for t in np.linspace(self.phi0, self.phi1, arc_samples):
            rays.append(math.cos(t) * self.e1 + math.sin(t) * self.e2)
        for row in self.subspace:
            rays.append(row)
            rays.append(-row)
        return np.array(rays)


@dataclass
class FullCone:
    dim: int

    def contains(self, v, margin=0.0):
        return True

    def contains_batch(self, vecs):
        return np.ones(len(np.atleast_2d(vecs)), dtype=bool)

    def generators(self):
        eye = np.eye(self.dim)
        return np.concatenate([eye, -eye], axis=0)


@dataclass
class GeneratorCone:
    """Conic hull of finitely many rays; membership via nonnegative least squares."""

    rays: np.ndarray

    def __post_init__(self):
        self.rays = _unit_rows(self.rays) if len(self.rays) else np.zeros((0, 1))

    @property
    def dim(self):
        return self.rays.shape[1]

    def contains(self, v, tol=1e-9):
        v = np.asarray(v, dtype=float)
        if np.linalg.norm(v) == 0.0:
            return True
        if self.rays.shape[0] == 0:
            return False
        _, resid = nnls(self.rays.T, v)
        return resid <= tol * max(1.0, np.linalg.norm(v))

    def contains_batch(self, vecs):
        return np.array([self.contains(v) for v in np.atleast_2d(vecs)])

    def generators(self):
        return self.rays.copy()


@dataclass
class CompositeCone:
    """Minkowski sum of cones: the conic hull of the union of generators."""

    parts: list

    @property
    def dim(self):
        return self.parts[0].dim

    def generators(self):
        return np.concatenate([p.generators() for p in self.parts], axis=0)

    def contains(self, v, tol=1e-9):
        return GeneratorCone(self.generators()).contains(v, tol=tol)

    def contains_batch(self, vecs):
        gc = GeneratorCone(self.generators())
        return gc.contains_batch(vecs)


def polyhedral_generators(normals, tol=1e-9):
    """V-representation of {A v >= 0}: lineality basis (both signs) + extreme rays."""
    A = np.atleast_2d(np.asarray(normals, dtype=float))
    m, d = A.shape
    lin = null_space(A, rcond=1e-12)
    rays = [lin[:, j] for j in range(lin.shape[1])]
    rays += [-lin[:, j] for j in range(lin.shape[1])]
    comp = null_space(lin.T, rcond=1e-12) if lin.shape[1] else np.eye(d)
    dc = comp.shape[1]
    if dc == 0:
        return _dedupe_rays(rays)
    Ap = A @ comp
    if dc == 1:
        for sign in (1.0, -1.0):
            if np.all(Ap[:, 0] * sign >= -tol):
                rays.append(sign * comp[:, 0])
        return _dedupe_rays(rays)
    from itertools import combinations

    for subset in combinations(range(m), dc - 1):
        sub = Ap[list(subset)]
        ker = null_space(sub, rcond=1e-12) if subset else np.eye(dc)
        if ker.shape[1] != 1:
            continue
        r = ker[:, 0]
        for cand in (r, -r):
            if np.all(Ap @ cand >= -tol):
                rays.append(comp @ cand)
    return _dedupe_rays(rays)


def _dedupe_rays(rays, decimals=9):
    out, seen = [], set()
    for r in rays:
        norm_r = np.linalg.norm(r)
        if norm_r < 1e-12:
            continue
        key = tuple(np.round(r / norm_r, decimals))
        if key not in seen:
            seen.add(key)
            out.append(np.asarray(r, dtype=float) / norm_r)
    if not out:
        return np.zeros((0, len(rays[0]) if len(rays) else 1))
    return np.array(out)


def cone_from_dict(data, dim):
    kind = data.get("type")
    if kind == "polyhedral":
        cone = PolyhedralCone(np.asarray(data["normals"], dtype=float),
                              np.asarray(data.get("strict", [False] * len(data["normals"]))))
    elif kind == "sector":
        cone = SectorCone(
            np.asarray(data["e1"], dtype=float),
            np.asarray(data["e2"], dtype=float),
            float(data["angles"][0]),
            float(data["angles"][1]),
            np.asarray(data.get("subspace", []), dtype=float) if data.get("subspace") else None,
        )
    elif kind == "full":
        cone = FullCone(dim)
    elif kind == "generators":
        cone = GeneratorCone(np.asarray(data["rays"], dtype=float))
    else:
        raise InvalidInputError(f"unknown cone type {kind!r}")
    if cone.dim != dim:
        raise InvalidInputError(
            f"cone dimension {cone.dim} does not match expected {dim}"
        )
    return cone


# ---------------------------------------------------------------------------
# wedges


@dataclass
class WedgeSpec:
    """A wedge V in M with edge E: tangent cone, quotient data, V-predicate."""

    manifold: object
    edge: object
    tangent_cone: object
    complement_basis: np.ndarray = None     # columns span a complement of T_0E in T_0M
    directional_cone: object = None         # cone in the complement coordinates
    membership: list = field(default_factory=list)  # parsed predicates, each > 0 on V
    name: str = "V"

    def __post_init__(self):
        m_dim = self.manifold.tangent_dim
        if self.tangent_cone.dim != m_dim:
            raise InvalidInputError("tangent cone must live in T_0M coordinates")
        if self.complement_basis is not None:
            self.complement_basis = np.asarray(self.complement_basis, dtype=float)
            if self.complement_basis.shape[0] != m_dim:
                raise InvalidInputError("complement basis rows must have dim(T_0M)")
        for vec in self.edge.tangent_basis().T:
            if not self.tangent_cone.contains(vec) or not self.tangent_cone.contains(-vec):
                raise InvalidInputError(
                    "tangent cone must contain the edge subspace in its lineality"
                )

    def quotient_dim(self):
        return self.manifold.tangent_dim - self.edge.dim

    def quotient_coords(self, t):
        """Class of a T_0M vector in T_0M / T_0E, in the complement basis."""
        if self.complement_basis is None:
            raise InvalidInputError("wedge has no stored complement basis")
        E = self.edge.tangent_basis()
        Q = self.complement_basis
        stacked = np.concatenate([E, Q], axis=1)
        coef, *_ = np.linalg.lstsq(stacked, np.asarray(t, dtype=float), rcond=None)
        resid = np.linalg.norm(stacked @ coef - t)
        if resid > 1e-8 * max(1.0, np.linalg.norm(t)):
            raise InvalidInputError("vector does not decompose in edge + complement")
        return coef[E.shape[1]:]

    def predicate_values(self, x, w):
        from .expressions import evaluate

        return np.array([evaluate(p, x, w) for p in self.membership])


# ---------------------------------------------------------------------------
# the opening angle gamma_w


def _direction_pq(cone, u, ui):
    p = cone.normals @ u
    q = cone.normals @ ui
    return p, q, np.ascontiguousarray(cone.strict.astype(np.uint8))


def _arc_generic(cone, u, ui, resolution, tol):
    phis = np.arange(resolution) * (TWO_PI / resolution)
    vecs = np.outer(np.cos(phis), u) + np.outer(np.sin(phis), ui)
    mask = np.asarray(cone.contains_batch(vecs), dtype=bool)
    npass = int(mask.sum())
    if npass == 0:
        return 0.0, None
    if npass == resolution:
        return TWO_PI, None
    step = TWO_PI / resolution

    def member(phi):
        v = math.cos(phi) * u + math.sin(phi) * ui
        return bool(cone.contains(v))

    total = 0.0
    best = (-1.0, None)
    for j, e in _arcscan_py._runs_from_mask(mask):
        left = _bisect(member, (j - 1) * step, j * step, False, tol)
        right = _bisect(member, e * step, (e + 1) * step, True, tol)
        if right < left:
            right += TWO_PI
        total += right - left
        if right - left > best[0]:
            best = (right - left, 0.5 * (left + right))
    return total, best[1]


def _bisect(member, lo, hi, lo_member, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if member(mid) == lo_member:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _wedge_cone_dims(wedge_or_cone, l=None, n=None):
    if isinstance(wedge_or_cone, WedgeSpec):
        M = wedge_or_cone.manifold
        return wedge_or_cone.tangent_cone, M.l, M.n
    if l is None or n is None:
        raise InvalidInputError("passing a bare cone requires the (l, n) signature")
    return wedge_or_cone, l, n


def gamma_angle(w, wedge_or_cone, resolution=DEFAULT_RESOLUTION, l=None, n=None,
                refine_tol=REFINE_TOL):
    """Opening angle of the plane cone C w  intersect  C_0V, in [0, 2 pi].

    Uniform scan at ``resolution`` angles with bisection refinement of every
    arc boundary; 0 when no open arc is found, 2 pi when the whole plane
    lies in the cone.
    """
    cone, l, n = _wedge_cone_dims(wedge_or_cone, l, n)
    w = np.asarray(w, dtype=complex).reshape(n)
    if np.linalg.norm(w) == 0.0:
        raise InvalidInputError("gamma_angle requires w != 0")
    if resolution < 720:
        raise InvalidInputError("resolution must be at least 720")
    u = tangent_from_w(w, l, n)
    ui = tangent_from_w(1j * w, l, n)
    if isinstance(cone, FullCone):
        return TWO_PI
    if isinstance(cone, PolyhedralCone):
        p, q, strict = _direction_pq(cone, u, ui)
        return float(kernels.arc_measure(p, q, strict, resolution, refine_tol))
    measure, _ = _arc_generic(cone, u, ui, resolution, refine_tol)
    return float(measure)


def gamma_arc_center(w, wedge_or_cone, resolution=DEFAULT_RESOLUTION, l=None, n=None):
    """(gamma, center angle of the longest arc); center None for 0 or 2 pi."""
    cone, l, n = _wedge_cone_dims(wedge_or_cone, l, n)
    w = np.asarray(w, dtype=complex).reshape(n)
    u = tangent_from_w(w, l, n)
    ui = tangent_from_w(1j * w, l, n)
    if isinstance(cone, FullCone):
        return TWO_PI, None
    measure, center = _arc_generic(cone, u, ui, resolution, REFINE_TOL)
    return float(measure), center


def gamma_batch(W, wedge_or_cone, resolution=DEFAULT_RESOLUTION, l=None, n=None,
                refine_tol=REFINE_TOL):
    """gamma_angle for every row of the (count, n) complex matrix W."""
    cone, l, n = _wedge_cone_dims(wedge_or_cone, l, n)
    W = np.asarray(W, dtype=complex)
    if isinstance(cone, FullCone):
        return np.full(W.shape[0], TWO_PI)
    U = np.concatenate(
        [np.zeros((W.shape[0], l)), W.real, W.imag], axis=1)
    Ui = np.concatenate(
        [np.zeros((W.shape[0], l)), -W.imag, W.real], axis=1)
    if isinstance(cone, PolyhedralCone):
        P = U @ cone.normals.T
        Q = Ui @ cone.normals.T
        strict = np.ascontiguousarray(cone.strict.astype(np.uint8))
        return np.asarray(kernels.arc_measure_batch(
            np.ascontiguousarray(P), np.ascontiguousarray(Q), strict,
            resolution, refine_tol))
    out = np.empty(W.shape[0])
    for i in range(W.shape[0]):
        measure, _ = _arc_generic(cone, U[i], Ui[i], resolution, refine_tol)
        out[i] = measure
    return out


# ---------------------------------------------------------------------------
# equivalent form of the angle condition


@dataclass
class AngleConditionWitness:
    theta: float
    w_tilde: np.ndarray
    a: np.ndarray                 # ambient vectors in T_0E
    b: np.ndarray
    margin: float
    radius: float


def phase_decomposition(w, theta, edge):
    """Split e^{i theta} w = a + i b with a, b in T_0E (defined mod T^c_0E)."""
    l, n = edge.l, edge.n
    B = edge.basis()
    JB = np.stack([apply_i(B[:, j], l, n) for j in range(B.shape[1])], axis=1)
    stacked = np.concatenate([B, JB], axis=1)
    w = np.asarray(w, dtype=complex).reshape(n)
    target = np.concatenate([
        np.zeros(2 * l), (np.exp(1j * theta) * w).real, (np.exp(1j * theta) * w).imag
    ])
    coef, *_ = np.linalg.lstsq(stacked, target, rcond=None)
    resid = np.linalg.norm(stacked @ coef - target)
    if resid > 1e-8 * max(1.0, np.linalg.norm(target)):
        raise HypothesisError(
            "phase decomposition failed; the edge is not generic",
            clause="edge generic",
        )
    e_dim = B.shape[1]
    a = B @ coef[:e_dim]
    b = B @ coef[e_dim:]
    return a, b


def _sigma_margin(wedge, vec_ambient):
    """Normalized strict membership margin of [i * vec] in the directional cone."""
    l, n = wedge.manifold.l, wedge.manifold.n
    iv = apply_i(vec_ambient, l, n)
    # i * vec lies in T_0M when vec comes from a T^c_0M phase decomposition
    t = np.concatenate([iv[:l], iv[2 * l:]])
    yblock = iv[l:2 * l]
    if l and np.max(np.abs(yblock), initial=0.0) > 1e-6 * max(1.0, np.linalg.norm(iv)):
        return -np.inf
    q = wedge.quotient_coords(t)
    norm_q = np.linalg.norm(q)
    if norm_q < 1e-14:
        return -np.inf
    q = q / norm_q
    sigma = wedge.directional_cone
    if isinstance(sigma, PolyhedralCone):
        return float(np.min(sigma.normals @ q))
    if isinstance(sigma, SectorCone):
        c1, c2, resid = sigma._split(q[None, :])
        if resid[0] > 1e-9:
            return -np.inf
        width = sigma.phi1 - sigma.phi0
        psi = float(np.mod(math.atan2(c2[0], c1[0]) - sigma.phi0, TWO_PI))
        if psi <= width:
            return min(psi, width - psi)
        return -min(psi - width, TWO_PI - psi)
    return 0.0 if sigma.contains(q) else -np.inf


def angle_condition_equiv(w, wedge, budget=400, margin=1e-6,
                          resolution=DEFAULT_RESOLUTION, seed=7):
    """Search for (theta, w_tilde near w) whose decomposition has b +- a in Sigma.

    Equivalent to gamma_w > pi/2 away from the borderline; the witness records
    the perturbation radius actually used.  Raises when the edge is not
    generic (the decomposition needs T_0E + i T_0E = C^N).
    """
    M = wedge.manifold
    generic, rank = genericity_check(wedge.edge, M.N)
    if not generic:
        raise HypothesisError(
            f"edge is not generic (rank {rank} < {2 * M.N})", clause="edge generic"
        )
    if wedge.directional_cone is None:
        raise InvalidInputError("wedge has no directional cone")
    w = np.asarray(w, dtype=complex).reshape(M.n)

    gamma, center = gamma_arc_center(w, wedge, resolution=resolution)
    thetas = []
    if center is not None:
        # rotating by the arc center puts the candidate arc symmetric around 0
        thetas.extend([center, center + 0.01, center - 0.01])
    thetas.extend(np.linspace(0.0, TWO_PI, 16, endpoint=False))

    rng = np.random.default_rng(seed)
    dirs = [np.zeros(M.n, dtype=complex)]
    eye = np.eye(M.n)
    for j in range(M.n):
        dirs.extend([eye[j].astype(complex), 1j * eye[j], -eye[j].astype(complex), -1j * eye[j]])
    extra = rng.standard_normal((4, M.n)) + 1j * rng.standard_normal((4, M.n))
    dirs.extend(extra / np.linalg.norm(extra, axis=1)[:, None])

    # perturbation radii stay well below the 0.05 agreement band of gamma_w,
    # so a witness never comes from a direction with materially different angle
    radii = [0.0, 0.01, 0.002]
    tried = 0
    best = None
    for radius in radii:
        for d in dirs if radius > 0.0 else [dirs[0]]:
            w_t = w + radius * d
            if np.linalg.norm(w_t) < 1e-12:
                continue
            for theta in thetas:
                if tried >= budget:
                    break
                tried += 1
                a, b = phase_decomposition(w_t, theta, wedge.edge)
                m_plus = _sigma_margin(wedge, b + a)
                m_minus = _sigma_margin(wedge, b - a)
                m = min(m_plus, m_minus)
                if best is None or m > best.margin:
                    best = AngleConditionWitness(theta, w_t, a, b, m, radius)
                if m > margin:
                    return True, AngleConditionWitness(theta, w_t, a, b, m, radius)
    return False, best


# ---------------------------------------------------------------------------
# Levi cones


@dataclass
class LeviSample:
    w: np.ndarray
    gamma: float
    value: np.ndarray


@dataclass
class LeviCone:
    alpha_angle: float           # the angle threshold (alpha * pi)
    samples: list                # kept LeviSample records
    hull: np.ndarray             # unit generator rays in R^l
    interior_nonempty: bool
    total_sampled: int = 0
    diagnostic: str = ""

    def contains(self, v, tol=1e-9):
        return GeneratorCone(self.hull).contains(v, tol=tol) if len(self.hull) else False


def sample_sphere(n_complex, count, seed=0):
    """Deterministic low-discrepancy unit vectors on the sphere of C^n."""
    d = 2 * n_complex
    sob = qmc.Sobol(d=d, scramble=True, seed=seed)
    m = max(1, math.ceil(math.log2(max(2, count))))
    pts = sob.random_base2(m)[:count]
    pts = np.clip(pts, 1e-12, 1.0 - 1e-12)
    gauss = norm.ppf(pts)
    norms = np.linalg.norm(gauss, axis=1)
    norms[norms == 0.0] = 1.0
    gauss /= norms[:, None]
    return gauss[:, :n_complex] + 1j * gauss[:, n_complex:]


def levi_values(M, W):
    """L(w, w) for every row of W, one column per normal component."""
    W = np.asarray(W, dtype=complex)
    out = np.empty((W.shape[0], M.l))
    for k, A in enumerate(M.levi_matrices()):
        out[:, k] = np.real(np.einsum("si,ij,sj->s", W, A, W.conj()))
    return out


def levi_cone(M, wedge, alpha, sample_count=2000, margin=0.02,
              resolution=DEFAULT_RESOLUTION, seed=0):
    """Convex cone spanned by Levi values over directions passing the angle test.

    Samples unit w on the sphere of C^n (low-discrepancy, seeded), keeps
    those with gamma_w > alpha*pi + margin and builds the conic hull of
    their Levi values.  alpha = 1/2 gives the pi/2-cone of the extension
    theorems; the margin keeps numerically borderline directions out.
    """
    if not 0.5 <= alpha <= 1.0:
        raise InvalidInputError("alpha must lie in [1/2, 1]")
    if sample_count < 500:
        raise InvalidInputError("sample_count must be at least 500")
    threshold = alpha * math.pi + margin
    W = sample_sphere(M.n, sample_count, seed=seed)
    gammas = gamma_batch(W, wedge, resolution=resolution)
    keep = gammas > threshold
    kept_W = W[keep]
    kept_gammas = gammas[keep]
    if kept_W.shape[0] == 0:
        return LeviCone(alpha * math.pi, [], np.zeros((0, M.l)), False,
                        total_sampled=sample_count,
                        diagnostic="no sampled direction passes the angle threshold")
    values = levi_values(M, kept_W)
    samples = [LeviSample(kept_W[i], float(kept_gammas[i]), values[i])
               for i in range(kept_W.shape[0])]
    hull = _dedupe_rays(list(values), decimals=6)
    interior = _hull_interior_nonempty(hull, radius=1e-3)
    return LeviCone(alpha * math.pi, samples, hull, interior,
                    total_sampled=sample_count)


def _hull_interior_nonempty(hull, radius=1e-3):
    if len(hull) == 0:
        return False
    candidates = [hull.mean(axis=0)] + list(hull)
    gc = GeneratorCone(hull)
    dim = hull.shape[1]
    for cand in candidates:
        nc = np.linalg.norm(cand)
        if nc < 1e-9:
            continue
        cand = cand / nc
        ok = True
        for j in range(dim):
            e = np.zeros(dim)
            e[j] = radius
            if not (gc.contains(cand + e, tol=1e-7) and gc.contains(cand - e, tol=1e-7)):
                ok = False
                break
        if ok:
            return True
    return False


def polyhedral_approximation(target, inner, margin=1e-3, probe_count=100, seed=3):
    """Finitely many kept Levi samples whose conic hull still contains ``inner``.

    ``inner`` must be strictly smaller than the target hull: every probe ray
    of its closure interior to the hull with the given margin.  The selection
    is greedy, smallest count first.
    """
    if not isinstance(target, LeviCone) or len(target.hull) == 0:
        raise HypothesisError("target cone is empty", clause="nonempty target")
    probes = _inner_probe_rays(inner, probe_count, seed)
    hull_cone = GeneratorCone(target.hull)
    dim = target.hull.shape[1]
    for ray in probes:
        ok = True
        for j in range(dim):
            e = np.zeros(dim)
            e[j] = margin
            if not (hull_cone.contains(ray + e, tol=1e-7)
                    and hull_cone.contains(ray - e, tol=1e-7)):
                ok = False
                break
        if not ok:
            raise HypothesisError(
                "inner cone is not strictly smaller than the target hull",
                clause="strict inclusion",
            )
    candidates = [np.asarray(s.value, dtype=float) for s in target.samples]
    cand_rays = _dedupe_rays(candidates, decimals=6)
    selected = []
    uncovered = list(range(len(probes)))
    while uncovered:
        best_idx, best_cover = None, -1
        for ci in range(len(cand_rays)):
            trial = GeneratorCone(np.array(selected + [cand_rays[ci]]))
            cover = sum(1 for pi in uncovered if trial.contains(probes[pi], tol=1e-7))
            if cover > best_cover:
                best_idx, best_cover = ci, cover
        if best_idx is None or best_cover == 0 and len(selected) >= len(cand_rays):
            raise HypothesisError(
                "kept samples cannot cover the inner cone", clause="coverage"
            )
        selected.append(cand_rays[best_idx])
        cand_rays = np.delete(cand_rays, best_idx, axis=0)
        cone = GeneratorCone(np.array(selected))
        uncovered = [pi for pi in uncovered if not cone.contains(probes[pi], tol=1e-7)]
        if len(cand_rays) == 0 and uncovered:
            raise HypothesisError(
                "kept samples cannot cover the inner cone", clause="coverage"
            )
    return np.array(selected)


def _inner_probe_rays(inner, probe_count, seed):
    gens = inner.generators()
    probes = [g / np.linalg.norm(g) for g in gens if np.linalg.norm(g) > 1e-12]
    rng = np.random.default_rng(seed)
    if len(gens) >= 2:
        for _ in range(max(0, probe_count - len(probes))):
            coeffs = rng.random(len(gens))
            v = coeffs @ gens
            nv = np.linalg.norm(v)
            if nv > 1e-12:
                probes.append(v / nv)
    return probes


# ---------------------------------------------------------------------------
# paired-wedge (edge-of-the-wedge) hypothesis checks


@dataclass
class EdgeOfWedgeVerdict:
    condition_i: bool
    condition_ii: bool
    tangent_margin: float
    levi_margin: float
    details: dict

    @property
    def passed(self):
        return self.condition_i and self.condition_ii


def _positive_span_margin(rays, dim):
    """Largest delta such that every +-delta-perturbed unit axis stays inside."""
    if len(rays) == 0:
        return -1.0
    gc = GeneratorCone(rays)
    margin = np.inf
    for j in range(dim):
        for sign in (1.0, -1.0):
            e = np.zeros(dim)
            e[j] = sign
            if not gc.contains(e, tol=1e-8):
                return -1.0
            lo, hi = 0.0, 1.0
            for k in range(dim):
                f = np.zeros(dim)
                f[k] = 1.0
                for s2 in (1.0, -1.0):
                    step = 0.25
                    if not gc.contains(e + step * s2 * f, tol=1e-8):
                        hi = min(hi, step)
            margin = min(margin, hi)
    return float(margin if margin is not np.inf else 1.0)


def edge_of_wedge_check(wedges, M, alpha=0.5, sample_count=2000, margin=0.02,
                        resolution=DEFAULT_RESOLUTION, seed=0):
    """Check the two summation conditions for a family of wedges with one edge.

    (i) the Minkowski sum of the tangent cones is all of T_0M;
    (ii) the sum of the Levi angle-cones is the whole normal space R^l.
    """
    if len(wedges) == 0:
        raise InvalidInputError("need at least one wedge")
    key = M.signature_key()
    edge0 = wedges[0].edge
    for wedge in wedges:
        if wedge.manifold.signature_key() != key:
            raise InvalidInputError("wedges live on different manifolds")
        if wedge.edge.dim != edge0.dim or not np.allclose(
            wedge.edge.basis() @ wedge.edge.basis().T,
            edge0.basis() @ edge0.basis().T, atol=1e-9,
        ):
            raise InvalidInputError("wedges have different edges")
    generic, rank = genericity_check(edge0, M.N)
    if not generic:
        raise HypothesisError(
            f"edge is not generic (rank {rank} < {2 * M.N})", clause="edge generic"
        )

    tangent_rays = np.concatenate(
        [w.tangent_cone.generators() for w in wedges], axis=0)
    dim_m = M.tangent_dim
    t_margin = _positive_span_margin(tangent_rays, dim_m)
    cond_i = t_margin > 0.0

    levi_cones = [
        levi_cone(M, w, alpha, sample_count=sample_count, margin=margin,
                  resolution=resolution, seed=seed + i)
        for i, w in enumerate(wedges)
    ]
    levi_rays = np.concatenate(
        [lc.hull for lc in levi_cones if len(lc.hull)], axis=0
    ) if any(len(lc.hull) for lc in levi_cones) else np.zeros((0, M.l))
    l_margin = _positive_span_margin(levi_rays, M.l)
    cond_ii = l_margin > 0.0

    return EdgeOfWedgeVerdict(
        cond_i, cond_ii, t_margin, l_margin,
        details={
            "tangent_generators": tangent_rays,
            "levi_hulls": [lc.hull for lc in levi_cones],
        },
    )
