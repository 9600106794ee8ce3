"""Disc-family sweeps, alpha-wedge membership and the wedge-lift construction.

The sweep attaches discs with w-components eta (1-tau)^alpha w0 for a list
of shrinking eta, extracts the second eta-difference of the transverse
boundary trace, fits it against the profile |1-tau|^{2 alpha} scaled by the
Levi value, and checks the sign of the radial derivative at tau = 1 together
with the alignment of the inward normal direction with the Levi value.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bishop import singular_component, solve_bishop
from .circle import (
    BoundaryFunction,
    hilbert_t1,
    radial_derivative_at_one,
    singular_profile,
)
from .cones import gamma_angle, levi_cone
from .errors import (
    AccuracyError,
    ConstructionError,
    DegenerateDiscError,
    DomainError,
    HypothesisError,
    InvalidInputError,
)
from .manifold import GraphManifold, genericity_check, harmonic_normalization_check

SINGULAR_TAIL_RTOL = 0.5  # slowly decaying singular profiles: sign + 2 digits


# ---------------------------------------------------------------------------
# eta sweep


@dataclass
class DiscFamilyReport:
    eta_list: list
    alpha: float
    levi_value: np.ndarray
    discs: dict                      # eta -> (disc_plus, disc_minus)
    vddot_profile: np.ndarray        # (l, grid) second eta-difference at smallest eta
    kappa: float
    correlation: float
    hopf_constants: np.ndarray       # per-component ratio d_r vddot(1) / L
    vddot_radial: np.ndarray         # d_r of the harmonic extension of vddot at 1
    radial_by_eta: dict              # eta -> (l,) radial derivative of v_eta at 1
    alignment_by_eta: dict           # eta -> cosine(-d_r v(1), L)
    verdicts: dict

    @property
    def alignment_cosine(self):
        return self.alignment_by_eta[min(self.eta_list)]

    @property
    def passed(self):
        return all(self.verdicts.values())


def _cosine(a, b):
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def eta_sweep(M, wedge, w0, alpha, eta_list, grid_size=2048, gamma_margin=0.02,
              min_correlation=0.9, solver_kwargs=None):
    """Sweep attached discs over eta and verify the transverse bulge law.

    Preconditions: the manifold has no second-order terms beyond the
    hermitian part, gamma_{w0} exceeds alpha*pi with margin, and the Levi
    value at w0 does not vanish; each violation raises HypothesisError
    naming the clause.  Poor profile correlation raises AccuracyError.
    """
    eta_list = sorted(float(e) for e in eta_list)
    if len(eta_list) < 3 or eta_list[0] <= 0:
        raise InvalidInputError("eta_list needs >= 3 positive values")
    w0 = np.asarray(w0, dtype=complex).reshape(M.n)

    report = harmonic_normalization_check(M)
    if report.flagged:
        raise HypothesisError(
            f"pluriharmonic second-order terms of size {report.pluriharmonic_norm:.2e} "
            "contaminate the expansion",
            clause="pluriharmonic contamination",
        )
    gamma = gamma_angle(w0, wedge)
    if gamma <= alpha * math.pi + gamma_margin:
        raise HypothesisError(
            f"gamma = {gamma:.6f} does not exceed alpha*pi = {alpha * math.pi:.6f} "
            f"with margin {gamma_margin}",
            clause="gamma margin",
        )
    L = M.levi_form(w0)
    if np.linalg.norm(L) <= 1e-6 * float(np.linalg.norm(w0)) ** 2:
        raise HypothesisError("Levi value vanishes at w0", clause="Levi value")

    solver_kwargs = solver_kwargs or {}
    profile = singular_profile(alpha, grid_size).values
    discs = {}
    radial_by_eta = {}
    alignment_by_eta = {}
    for eta in sorted(eta_list, reverse=True):
        plus = solve_bishop(M, singular_component(alpha, eta, w0),
                            grid_size=grid_size, **solver_kwargs)
        minus = solve_bishop(M, singular_component(alpha, eta, -w0),
                             grid_size=grid_size, **solver_kwargs)
        discs[eta] = (plus, minus)
        v = plus.z_values.imag
        radial = np.array([
            radial_derivative_at_one(BoundaryFunction(v[comp]),
                                     tail_rtol=SINGULAR_TAIL_RTOL)
            for comp in range(M.l)
        ])
        radial_by_eta[eta] = radial
        alignment_by_eta[eta] = _cosine(-radial, L)

    eta_min = eta_list[0]
    plus, minus = discs[eta_min]
    vddot = (plus.z_values.imag + minus.z_values.imag) / eta_min ** 2

    target = np.outer(L, profile)
    flat_v, flat_t = vddot.ravel(), target.ravel()
    denom = float(np.dot(flat_t, flat_t))
    kappa = float(np.dot(flat_v, flat_t) / denom) if denom > 0 else 0.0
    correlation = _cosine(flat_v, flat_t)
    if correlation < min_correlation:
        raise AccuracyError(
            f"profile correlation {correlation:.4f} < {min_correlation}; "
            "differencing noise dominates, enlarge the grid or eta",
            magnitude=1.0 - correlation,
        )

    vddot_radial = np.array([
        radial_derivative_at_one(BoundaryFunction(vddot[comp]),
                                 tail_rtol=SINGULAR_TAIL_RTOL)
        for comp in range(M.l)
    ])
    with np.errstate(divide="ignore", invalid="ignore"):
        hopf = np.where(np.abs(L) > 1e-6, vddot_radial / L, np.nan)

    verdicts = {
        "profile_correlation": correlation >= 0.999,
        "kappa_positive": kappa > 0.0,
        "hopf_negative": bool(np.all(hopf[np.isfinite(hopf)] < 0.0)),
        "alignment": alignment_by_eta[eta_min] >= 0.99,
    }
    return DiscFamilyReport(
        eta_list=eta_list,
        alpha=alpha,
        levi_value=L,
        discs=discs,
        vddot_profile=vddot,
        kappa=kappa,
        correlation=correlation,
        hopf_constants=hopf,
        vddot_radial=vddot_radial,
        radial_by_eta=radial_by_eta,
        alignment_by_eta=alignment_by_eta,
        verdicts=verdicts,
    )


# ---------------------------------------------------------------------------
# alpha-wedge membership


@dataclass
class AlphaWedgeSpec:
    """The region {z in W : dist(z, V) < c dist(z, dV)^{1/alpha}}.

    W is the ambient wedge over M: points whose transverse displacement
    from M points into ``transverse_cone`` (a cone in R^l) and stays below
    ``max_displacement``.
    """

    wedge: object
    alpha: float
    c: float
    transverse_cone: object = None
    max_displacement: float = 0.1

    def __post_init__(self):
        if not 0.5 < self.alpha <= 1.0:
            raise DomainError("alpha must lie in (1/2, 1]")
        if self.c <= 0:
            raise DomainError("the wedge constant c must be positive")


@dataclass
class AlphaWedgeResult:
    member: bool
    dist_v: float
    dist_boundary: float
    displacement: np.ndarray


def _chart_to_ambient(M, x, w):
    """Embed chart samples (x, w) as complex points of M in C^N."""
    h = M.h(x, w)
    z = x + 1j * h
    return np.concatenate([z, w], axis=0)


def _ambient_real(points):
    return np.concatenate([points.real, points.imag], axis=0)


_CLOUD_CACHE = {}


def _point_clouds(M, wedge, chart_radius, density, seed):
    """Sampled points of V and of its boundary inside the chart ball.

    Cached per (manifold, predicates, radius, density, seed) within the
    process; repeated membership queries against the same wedge reuse the
    clouds.
    """
    from .expressions import to_source

    key = (M.signature_key(), tuple(to_source(p) for p in wedge.membership),
           float(chart_radius), int(density), int(seed))
    if key in _CLOUD_CACHE:
        return _CLOUD_CACHE[key]
    dim = M.l + 2 * M.n
    from scipy.stats import qmc

    sob = qmc.Sobol(d=dim, scramble=True, seed=seed)
    m = max(2, math.ceil(math.log2(density)))
    raw = (sob.random_base2(m)[:density] * 2.0 - 1.0) * chart_radius
    x = raw[:, :M.l].T
    w = (raw[:, M.l:M.l + M.n] + 1j * raw[:, M.l + M.n:]).T
    preds = np.asarray(wedge.predicate_values(x, w))
    min_pred = preds.min(axis=0)
    inside = min_pred > 0.0

    v_cloud = _chart_to_ambient(M, x[:, inside], w[:, inside])

    if not np.any(inside):
        raise AccuracyError("no chart sample falls inside the wedge", magnitude=0.0)
    anchor_idx = int(np.argmax(min_pred))
    ax, aw = x[:, anchor_idx:anchor_idx + 1], w[:, anchor_idx:anchor_idx + 1]
    out_idx = np.nonzero(min_pred < 0.0)[0]
    if out_idx.size == 0:
        raise AccuracyError("no boundary points found in the chart ball",
                            magnitude=0.0)
    # bisect anchor (inside) -> sample (outside) segments, all at once
    ox, ow = x[:, out_idx], w[:, out_idx]
    lo = np.zeros(out_idx.size)
    hi = np.ones(out_idx.size)
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        mx = ax + mid[None, :] * (ox - ax)
        mw = aw + mid[None, :] * (ow - aw)
        inside_mid = np.asarray(wedge.predicate_values(mx, mw)).min(axis=0) > 0.0
        lo = np.where(inside_mid, mid, lo)
        hi = np.where(inside_mid, hi, mid)
    mid = 0.5 * (lo + hi)
    bx = ax + mid[None, :] * (ox - ax)
    bw = aw + mid[None, :] * (ow - aw)
    b_cloud = _chart_to_ambient(M, bx, bw)
    if len(_CLOUD_CACHE) > 64:
        _CLOUD_CACHE.clear()
    _CLOUD_CACHE[key] = (v_cloud, b_cloud)
    return v_cloud, b_cloud


def _min_distance(point, cloud):
    diff = _ambient_real(cloud) - _ambient_real(point[:, None])
    return float(np.min(np.linalg.norm(diff, axis=0)))


def alpha_wedge_membership(point, spec, M, chart_radius=0.3, density=4096,
                           seed=11, check_stability=True):
    """Distance-based membership in the alpha-wedge over V.

    Distances are measured against point clouds of V and of its boundary,
    sampled in the graph chart and refined by bisection; instability above
    10 percent under density doubling raises AccuracyError.  Membership is
    monotone in c by construction of the defining inequality.
    """
    point = np.asarray(point, dtype=complex).reshape(M.N)
    x = point[:M.l].real
    w = point[M.l:]
    displacement = point[:M.l].imag - M.h(x, w)
    if spec.transverse_cone is not None:
        if np.linalg.norm(displacement) > spec.max_displacement:
            raise DomainError("point lies outside the ambient wedge W (too far)")
        if np.linalg.norm(displacement) > 1e-12 and not spec.transverse_cone.contains(
            displacement
        ):
            raise DomainError(
                "point lies outside the ambient wedge W (wrong transverse direction)"
            )

    def distances(dens):
        v_cloud, b_cloud = _point_clouds(M, spec.wedge, chart_radius, dens, seed)
        on_m = np.linalg.norm(displacement) <= 1e-9
        in_v = bool(np.all(spec.wedge.predicate_values(x, w) > 0.0))
        dv = 0.0 if (on_m and in_v) else _min_distance(point, v_cloud)
        db = _min_distance(point, b_cloud)
        return dv, db

    dist_v, dist_b = distances(density)
    if check_stability:
        dist_v2, dist_b2 = distances(2 * density)
        for a, b in ((dist_v, dist_v2), (dist_b, dist_b2)):
            ref = max(a, b, 1e-12)
            if abs(a - b) / ref > 0.10:
                raise AccuracyError(
                    "distance estimates unstable under density doubling; "
                    "increase density or shrink the chart",
                    magnitude=abs(a - b) / ref,
                )
        dist_v, dist_b = dist_v2, dist_b2
    member = dist_v < spec.c * dist_b ** (1.0 / spec.alpha)
    return AlphaWedgeResult(bool(member), dist_v, dist_b, displacement)


# ---------------------------------------------------------------------------
# the lift construction over a deformed manifold


_PRESCRIBED_REF_GRID = 1 << 15


@dataclass
class LiftReport:
    disc: object
    rho: float
    mu: float
    c3: float
    c4: float
    alpha: float
    prescribed_margin: float
    inclusion_margin: float
    inclusion_failures: np.ndarray
    transversal: np.ndarray        # pr(d_r z(1)) in R^l of the original manifold
    tangential_derivative: float   # |d_theta z(1)|
    vprime_checked: bool
    vprime_failures: np.ndarray
    verdicts: dict

    @property
    def passed(self):
        return all(self.verdicts.values())

    def stability_scalars(self):
        """The grid-comparable outputs (prescribed parts use a fixed fine grid)."""
        return {
            "prescribed_margin": self.prescribed_margin,
            "inclusion_margin": self.inclusion_margin,
            "transversal_norm": float(np.linalg.norm(self.transversal)),
        }


_BASE_MAP_CACHE = {}


def _prescribed_map(alpha, rho, mu, grid_size):
    """Holomorphic boundary trace with Im part rho |1-tau|^{2 alpha}, rotated by mu.

    Built as the analytic completion i (y0 + i T1 y0) of the boundary profile
    y0, so the imaginary part is exactly the profile and the real part its
    conjugate trace; C^{1, 2 alpha - 1} regular with a genuinely linear real
    part near tau = 1.  The completion is always evaluated on the fixed
    reference grid and downsampled (power-of-two grids nest), so the map is
    one fixed function regardless of the working resolution.
    """
    key = float(alpha)
    if key not in _BASE_MAP_CACHE:
        y0 = singular_profile(alpha, _PRESCRIBED_REF_GRID).values
        conj = hilbert_t1(BoundaryFunction(y0)).values
        _BASE_MAP_CACHE[key] = 1j * (y0 + 1j * conj)
    base = _BASE_MAP_CACHE[key]
    if _PRESCRIBED_REF_GRID % grid_size:
        raise InvalidInputError(
            f"grid_size must divide the reference grid {_PRESCRIBED_REF_GRID}"
        )
    stride = _PRESCRIBED_REF_GRID // grid_size
    return rho * np.exp(1j * mu) * base[::stride]


def _calibrate_rho(alpha, c3, safety=0.7):
    """Largest safe rho for the prescribed-component bound y >= c3 |x|^{2 alpha}.

    Calibrated on the fixed reference grid so the prescribed family does not
    depend on the working grid size.
    """
    g = _prescribed_map(alpha, 1.0, 0.0, _PRESCRIBED_REF_GRID)
    y, x = g.imag, g.real
    mask = y > 1e-13
    ratio = np.min(y[mask] / (c3 * np.abs(x[mask]) ** (2.0 * alpha)))
    return float((safety * ratio) ** (1.0 / (2.0 * alpha - 1.0)))


_STENCIL = 512


def _stencil_min(values, grid_size):
    """Minimum over a fixed set of angles shared by all power-of-two grids."""
    stride = max(1, grid_size // _STENCIL)
    return float(np.min(values[stride::stride]))


def _prescribed_radial_reference(alpha, rho, mu):
    """d_r at tau=1 of the harmonic extensions of (Re g, Im g) on a fine fixed grid.

    The prescribed component is grid-independent, so its radial data is
    evaluated once on a fine reference grid; only the solved component
    varies with the working grid.
    """
    g = _prescribed_map(alpha, rho, mu, _PRESCRIBED_REF_GRID)
    d_im = radial_derivative_at_one(BoundaryFunction(g.imag), tail_rtol=1.0)
    d_re = radial_derivative_at_one(BoundaryFunction(g.real), tail_rtol=1.0)
    return complex(d_re + 1j * d_im)


def wedge_lift(M, alpha, c3, c4, grid_size=2048, rho=None, mu=0.0,
               vprime_spec=None, solver_kwargs=None):
    """Attach a disc to the deformed graph {y_N = c3 ||(z', x_N)||^2}.

    Requires the coordinate frame with the distinguished last two z-slots
    (so l >= 2) and c3 >= 8 c4.  The next-to-last component is prescribed
    from a fixed two-parameter family (scale rho x rotation mu) searched
    until the bound y >= c3 |x|^{2 alpha} holds with margin on the grid;
    the solved disc is then checked for the power-norm inclusion at every
    boundary sample except tau = 1 and for transversality of d_r z(1) to
    T_0M.
    """
    if M.l < 2:
        raise InvalidInputError(
            "the lift frame needs two distinguished graph slots (l >= 2)"
        )
    if c3 < 8.0 * c4:
        raise InvalidInputError(f"need c3 >= 8 c4, got c3={c3}, c4={c4}")
    if rho is not None and rho == 0.0:
        raise DegenerateDiscError("prescribed component is identically zero")
    if not 0.5 < alpha < 1.0:
        raise DomainError("the lift needs 1/2 < alpha < 1")

    n_tilde = M.n + M.l - 1   # w-block of the deformed graph: (w, z_1..z_{l-1})
    terms = " + ".join([f"abs2(w{j + 1})" for j in range(n_tilde)] + ["x1^2"])
    M_tilde = GraphManifold.from_sources([f"{c3}*({terms})"], 1, n_tilde)

    if rho is None:
        rho = _calibrate_rho(alpha, c3)
    candidates = [(rho, mu)] + [(rho * s, mu) for s in (0.5, 0.25)]
    g = None
    for rho_c, mu_c in candidates:
        trial = _prescribed_map(alpha, rho_c, mu_c, grid_size)
        y, xr = trial.imag, trial.real
        bound = c3 * np.abs(xr) ** (2.0 * alpha)
        if np.all(y >= bound):
            g, rho, mu = trial, rho_c, mu_c
            break
    if g is None:
        trial = _prescribed_map(alpha, candidates[-1][0], mu, grid_size)
        bad = np.nonzero(trial.imag < c3 * np.abs(trial.real) ** (2.0 * alpha))[0]
        raise ConstructionError(
            "no scale satisfies the prescribed-component bound on the grid",
            samples=bad,
        )
    y, xr = g.imag, g.real
    with np.errstate(divide="ignore", invalid="ignore"):
        prescribed_ratios = np.where(
            y > 1e-13, (y - c3 * np.abs(xr) ** (2.0 * alpha)) / np.maximum(y, 1e-300),
            np.inf,
        )
    prescribed_margin = _stencil_min(prescribed_ratios, grid_size)

    components = [np.zeros(grid_size, dtype=complex) for _ in range(n_tilde - 1)]
    components.append(g)
    disc = solve_bishop(M_tilde, components, grid_size=grid_size,
                        **(solver_kwargs or {}))

    # power-norm inclusion: y_{N-1} > c4 ||(z'', x_{N-1}, x_N)||^{2 alpha} off tau = 1
    x_n = disc.z_values[0].real
    z_pp = np.array(components[:M.n + M.l - 2]) if n_tilde >= 2 else np.zeros((0, grid_size))
    norm_sq = np.abs(z_pp) ** 2
    base = norm_sq.sum(axis=0) if norm_sq.size else np.zeros(grid_size)
    base = base + xr ** 2 + x_n ** 2
    rhs = c4 * base ** alpha
    lhs = y
    good = lhs[1:] > rhs[1:]
    inclusion_failures = np.nonzero(~good)[0] + 1
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(rhs > 0, lhs / rhs, np.inf)
    inclusion_margin = _stencil_min(ratios, grid_size) - 1.0

    d_r_prescribed = _prescribed_radial_reference(alpha, rho, mu)
    d_r_solved = disc.z_radial_derivative_at_one()[0]
    transversal = np.zeros(M.l)
    transversal[M.l - 2] = d_r_prescribed.imag
    transversal[M.l - 1] = d_r_solved.imag

    g_coeffs = np.fft.fft(g) / grid_size
    k = np.fft.fftfreq(grid_size, d=1.0 / grid_size)
    d_theta = complex(np.sum(1j * k * g_coeffs))
    if abs(d_theta) < 1e-10:
        raise DegenerateDiscError(
            "prescribed component has no tangential derivative at tau = 1"
        )

    vprime_failures = np.array([], dtype=int)
    vprime_checked = False
    if vprime_spec is not None:
        vprime_checked = True
        stride = max(1, grid_size // 32)
        fails = []
        for j in range(1, grid_size, stride):
            point = np.zeros(M.N, dtype=complex)
            z_slots = np.concatenate([
                np.array(components)[M.n:, j] if M.l > 2 else [],
                [g[j]], [disc.z_values[0, j]],
            ]) if M.l > 2 else np.array([g[j], disc.z_values[0, j]])
            point[:M.l] = z_slots
            point[M.l:] = np.array(components)[:M.n, j] if M.n else []
            try:
                res = alpha_wedge_membership(point, vprime_spec, M,
                                             check_stability=False)
                if not res.member:
                    fails.append(j)
            except DomainError:
                fails.append(j)
        vprime_failures = np.array(fails, dtype=int)

    verdicts = {
        "prescribed_bound": prescribed_margin > 0.0,
        "inclusion": inclusion_failures.size == 0,
        "transversal": float(np.linalg.norm(transversal)) > 1e-6,
    }
    if vprime_checked:
        verdicts["vprime"] = vprime_failures.size == 0
    return LiftReport(
        disc=disc, rho=rho, mu=mu, c3=c3, c4=c4, alpha=alpha,
        prescribed_margin=prescribed_margin, inclusion_margin=inclusion_margin,
        inclusion_failures=inclusion_failures, transversal=transversal,
        tangential_derivative=abs(d_theta),
        vprime_checked=vprime_checked, vprime_failures=vprime_failures,
        verdicts=verdicts,
    )


# ---------------------------------------------------------------------------
# hypothesis bundle


def _nearby_directions(w0, radius=0.05, count=64, seed=0):
    """Deterministic perturbations of a direction, for borderline hypotheses."""
    n = w0.shape[0]
    rng = np.random.default_rng(seed)
    steps = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    steps /= np.linalg.norm(steps, axis=1)[:, None]
    return [w0 + radius * s for s in steps]


@dataclass
class HypothesisClause:
    name: str
    passed: bool
    detail: str
    margin: float = float("nan")


@dataclass
class HypothesesVerdict:
    clauses: list
    witness: object = None

    @property
    def passed(self):
        return all(c.passed for c in self.clauses)

    def failing(self):
        return [c for c in self.clauses if not c.passed]


def theorem_hypotheses_check(M, wedge, alpha=0.5, w0_candidates=(),
                             direction_query=None, sample_count=2000,
                             gamma_margin=0.02, seed=0):
    """Bundle of the extension-theorem hypotheses for one wedge.

    Checks edge genericity, nonempty interior of the angle-filtered Levi
    cone, and the per-direction condition gamma > alpha*pi with L != 0; an
    optional direction query asks whether some kept sample realizes the
    given normal direction.
    """
    clauses = []
    generic, rank = genericity_check(wedge.edge, M.N)
    clauses.append(HypothesisClause(
        "edge generic", generic,
        f"rank {rank} of span(E) + i span(E), need {2 * M.N}",
        margin=float(rank - 2 * M.N),
    ))

    witness = None
    # the cone sampling itself does not need a generic edge
    lc = levi_cone(M, wedge, alpha, sample_count=sample_count,
                   margin=gamma_margin, seed=seed)
    clauses.append(HypothesisClause(
        "levi cone interior nonempty", lc.interior_nonempty,
        f"{len(lc.samples)} samples kept of {lc.total_sampled}; "
        f"{len(lc.hull)} hull rays",
    ))

    for idx, w0 in enumerate(w0_candidates):
        w0 = np.asarray(w0, dtype=complex).reshape(M.n)
        threshold = alpha * math.pi + gamma_margin

        def condition(v):
            gamma = gamma_angle(v, wedge)
            L = M.levi_form(v)
            return gamma, L, gamma > threshold and np.linalg.norm(L) > 1e-6

        gamma, L, ok = condition(w0)
        detail = (f"gamma = {gamma:.6f}, threshold {threshold:.6f}, "
                  f"|L| = {np.linalg.norm(L):.3e}")
        w_used = w0
        if not ok:
            # the condition only needs to hold arbitrarily close to w0
            for cand in _nearby_directions(w0, seed=seed):
                g2, L2, ok2 = condition(cand)
                if ok2:
                    gamma, L, ok, w_used = g2, L2, True, cand
                    detail += (f"; nearby direction passes with gamma = "
                               f"{g2:.6f}")
                    break
        clauses.append(HypothesisClause(
            f"condition gamma > alpha*pi, L != 0 (w0[{idx}])", ok, detail,
            margin=float(gamma - threshold),
        ))

    if direction_query is not None and lc is not None:
        d = np.asarray(direction_query, dtype=float).reshape(M.l)
        hits = [s for s in lc.samples
                if np.dot(s.value, d) > 0.999 * np.linalg.norm(s.value) * np.linalg.norm(d)]
        in_hull = lc.contains(d) if len(lc.hull) else False
        ok = in_hull and bool(hits)
        if hits:
            witness = hits[0]
        clauses.append(HypothesisClause(
            f"extension direction {np.array2string(d)}", ok,
            f"{len(hits)} kept samples realize the direction; hull membership "
            f"{in_hull}",
        ))
    return HypothesesVerdict(clauses, witness)
