import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crwedge.cones import (
    CompositeCone,
    FullCone,
    GeneratorCone,
    LeviCone,
    LeviSample,
    PolyhedralCone,
    SectorCone,
    WedgeSpec,
    angle_condition_equiv,
    edge_of_wedge_check,
    gamma_angle,
    gamma_batch,
    levi_cone,
    polyhedral_approximation,
    polyhedral_generators,
    sample_sphere,
)
from crwedge.errors import HypothesisError, InvalidInputError
from crwedge.manifold import EdgeSpec, GraphManifold, genericity_check

W0_14 = np.array([-1 + 1j, 1 + 1j])


class TestConeMembership:
    @settings(max_examples=50, deadline=None)
    @given(t=st.floats(1e-3, 1e3))
    def test_positive_homogeneity(self, t):
        cone = PolyhedralCone(np.array([[1.0, -0.3], [0.2, 1.0]]))
        rng = np.random.default_rng(3)
        v = rng.standard_normal(2)
        assert cone.contains(v) == cone.contains(t * v)

    def test_convexity_of_member_midpoints(self):
        cone = PolyhedralCone(np.array([[1.0, -0.5, 0.1], [0.3, 1.0, -0.2]]))
        rng = np.random.default_rng(4)
        members = []
        while len(members) < 60:
            v = rng.standard_normal(3)
            if cone.contains(v):
                members.append(v)
        for _ in range(1000):
            i, j = rng.integers(0, len(members), size=2)
            assert cone.contains(0.5 * (members[i] + members[j]))

    def test_sector_membership(self):
        sec = SectorCone(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]),
                         0.0, 0.5 * np.pi, subspace=np.array([[0, 0, 1.0]]))
        assert sec.contains([1.0, 1.0, 5.0])
        assert not sec.contains([1.0, -0.2, 0.0])
        assert sec.contains([0.0, 0.0, 1.0])  # pure lineality

    def test_generator_cone(self):
        gc = GeneratorCone(np.array([[1.0, 0.0], [1.0, 1.0]]))
        assert gc.contains([2.0, 0.5])
        assert not gc.contains([-1.0, 0.0])


class TestPolyhedralGenerators:
    def test_quadrant(self):
        rays = polyhedral_generators(np.eye(2))
        dirs = {tuple(np.round(r, 6)) for r in rays}
        assert (1.0, 0.0) in dirs and (0.0, 1.0) in dirs

    def test_halfspace_has_lineality(self):
        rays = polyhedral_generators(np.array([[1.0, 0.0]]))
        gc = GeneratorCone(rays)
        assert gc.contains([0.0, 1.0]) and gc.contains([0.0, -1.0])
        assert gc.contains([1.0, 5.0])
        assert not gc.contains([-1.0, 0.0])

    def test_v_and_h_representations_agree(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            normals = rng.standard_normal((3, 3))
            cone = PolyhedralCone(normals)
            gens = polyhedral_generators(cone.normals)
            if len(gens) == 0:
                continue
            gc = GeneratorCone(gens)
            for _ in range(40):
                v = rng.standard_normal(3)
                if gc.contains(v, tol=1e-8):
                    assert cone.contains(v) or np.min(cone.normals @ v) > -1e-6


class TestGammaAngle:
    def test_near_negative_borderline(self, wedge_14):
        gamma = gamma_angle(W0_14, wedge_14)
        assert gamma == pytest.approx(math.pi / 2.0, abs=1e-5)

    def test_sector_angle(self, sector_13):
        gamma = gamma_angle([1.0], sector_13, l=1, n=1)
        assert gamma == pytest.approx(0.75 * math.pi, abs=1e-5)

    def test_full_plane(self):
        assert gamma_angle([1.0], FullCone(3), l=1, n=1) == pytest.approx(2 * math.pi)

    def test_real_direction_half_plane(self, wedge_12):
        assert gamma_angle([1.0, 0.0], wedge_12) == pytest.approx(math.pi, abs=1e-5)

    def test_rejects_zero_vector(self, wedge_12):
        with pytest.raises(InvalidInputError):
            gamma_angle([0.0, 0.0], wedge_12)

    def test_resolution_floor(self, wedge_12):
        with pytest.raises(InvalidInputError):
            gamma_angle([1.0, 0.0], wedge_12, resolution=360)

    @settings(max_examples=25, deadline=None)
    @given(phase=st.floats(0, 2 * np.pi), scale=st.floats(0.1, 5.0))
    def test_phase_and_scale_invariance(self, wedge_14, phase, scale):
        base = gamma_angle(W0_14, wedge_14)
        rotated = gamma_angle(scale * np.exp(1j * phase) * W0_14, wedge_14)
        assert rotated == pytest.approx(base, abs=1e-4)

    def test_monotone_under_cone_inclusion(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            normals = rng.standard_normal((2, 4))
            extra = rng.standard_normal((1, 4))
            big = PolyhedralCone(normals)
            small = PolyhedralCone(np.concatenate([normals, extra]))
            w = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            g_small = gamma_angle(w, small, l=0, n=2)
            g_big = gamma_angle(w, big, l=0, n=2)
            assert g_small <= g_big + 1e-6

    def test_edge_vectors_get_pi_or_two_pi(self, wedge_12):
        # Real directions w in the edge: the plane C w meets the tangent cone
        # in the arcs where sin(phi) [i w] stays in the directional cone, so
        # gamma is pi when [i w] lies in +-Sigma, 0 when it leaves it, and
        # never strictly in between; for w in T^c of the edge it is 2 pi.
        for w, expected in ([ (1.0, 0.0), math.pi],
                            [(2.0, -1.0), math.pi],
                            [(1.0, 1.0), math.pi],     # boundary ray of Sigma
                            [(0.0, 1.0), 0.0]):        # [i w] outside +-Sigma
            gamma = gamma_angle(np.array(w), wedge_12)
            assert gamma == pytest.approx(expected, abs=1e-4)

    def test_batch_matches_scalar(self, wedge_12):
        W = sample_sphere(2, 50, seed=2)
        batch = gamma_batch(W, wedge_12)
        singles = np.array([gamma_angle(W[i], wedge_12) for i in range(50)])
        assert np.allclose(batch, singles, atol=1e-9)


class TestAngleConditionEquiv:
    def test_witness_for_interior_direction(self, wedge_12):
        ok, witness = angle_condition_equiv(np.array([1.0, 0.0]), wedge_12)
        assert ok and witness.margin > 0
        assert witness.radius == 0.0

    def test_false_when_angle_small(self, wedge_12):
        # |w2| > |w1| keeps the angle below pi/2 with a wide margin
        ok, _ = angle_condition_equiv(np.array([0.2, 1.0]), wedge_12)
        assert not ok

    def test_near_borderline_direction_finds_nearby_witness(self, wedge_14):
        ok, witness = angle_condition_equiv(W0_14, wedge_14)
        assert ok
        assert np.linalg.norm(witness.w_tilde - W0_14) <= 0.011

    def test_complex_edge_direction_needs_perturbation(self, mixed_signature):
        # an edge containing the whole w1-line: directions inside its complex
        # tangent decompose with vanishing classes, so only a perturbed
        # direction produces the witness; the angle itself is 2 pi there
        edge = EdgeSpec(np.array([
            [1, 0, 0, 0, 0, 0],   # x1
            [0, 0, 1, 0, 0, 0],   # Re w1
            [0, 0, 0, 0, 1, 0],   # Im w1
            [0, 0, 0, 1, 0, 0],   # Re w2
        ], float), 1, 2)
        generic, rank = genericity_check(edge, 3)
        assert generic and rank == 6
        tangent = PolyhedralCone(np.array([[0, 0, 0, 0, 1.0]]))  # v2 >= 0
        comp = np.array([[0, 0, 0, 0, 1.0]], float).T
        sigma = PolyhedralCone(np.array([[1.0]]))
        wedge = WedgeSpec(mixed_signature, edge, tangent, comp, sigma)

        w_in_tce = np.array([1.0, 0.0])   # spans the complex tangent of E
        assert gamma_angle(w_in_tce, wedge) == pytest.approx(2 * math.pi)
        ok, witness = angle_condition_equiv(w_in_tce, wedge)
        assert ok
        assert witness.radius > 0.0       # the unperturbed classes vanish

        w_edge = np.array([0.0, 1.0])     # in the edge but not its complex part
        assert gamma_angle(w_edge, wedge) == pytest.approx(math.pi, abs=1e-4)

    def test_requires_generic_edge(self, quadric, sector_13):
        edge = EdgeSpec(np.array([[1, 0, 0, 0]], float), 1, 1)
        comp = np.array([[0, 1.0, 0], [0, 0, 1.0]], float).T
        sigma = SectorCone(np.array([1.0, 0]), np.array([0, 1.0]),
                           0.0, 0.75 * np.pi)
        wedge = WedgeSpec(quadric, edge, sector_13, comp, sigma)
        with pytest.raises(HypothesisError):
            angle_condition_equiv(np.array([1.0]), wedge)

    def test_agreement_with_gamma(self, wedge_12, wedge_14):
        # spot agreement on both wedges at comfortably non-borderline angles
        rng = np.random.default_rng(9)
        checked = 0
        for wedge in (wedge_12, wedge_14):
            W = sample_sphere(2, 40, seed=21)
            for w in W:
                gamma = gamma_angle(w, wedge)
                if abs(gamma - math.pi / 2) <= 0.05:
                    continue
                ok, _ = angle_condition_equiv(w, wedge)
                assert ok == (gamma > math.pi / 2)
                checked += 1
        assert checked >= 40


class TestLeviCone:
    def test_mixed_signature_upper_halfline(self, mixed_signature, wedge_12):
        lc = levi_cone(mixed_signature, wedge_12, 0.5, sample_count=2000, seed=1)
        values = np.array([s.value[0] for s in lc.samples])
        assert len(values) > 100
        assert np.min(values) >= 0.0
        assert lc.interior_nonempty

    def test_quadric_halfspace_wedge(self, quadric):
        # V given by a half-space cone over the generic 2-real-dim edge
        edge = EdgeSpec(np.array([[1, 0, 0, 0], [0, 0, 1, 0]], float), 1, 1)
        tangent = PolyhedralCone(np.array([[0.0, 0.0, 1.0]]))
        wedge = WedgeSpec(quadric, edge, tangent)
        lc = levi_cone(quadric, wedge, 0.5, sample_count=500, seed=0)
        assert len(lc.samples) == 500          # gamma = pi for every direction
        assert np.allclose(lc.hull, [[1.0]])
        assert lc.interior_nonempty

    def test_alpha_one_keeps_nothing(self, near_negative, wedge_14):
        lc = levi_cone(near_negative, wedge_14, 1.0, sample_count=500, seed=0)
        assert len(lc.samples) == 0
        assert not lc.interior_nonempty
        assert lc.diagnostic

    def test_hull_stable_under_sample_doubling(self, mixed_signature, wedge_12):
        hulls = {}
        for count in (2000, 4000):
            lc = levi_cone(mixed_signature, wedge_12, 0.5,
                           sample_count=count, seed=1)
            hulls[count] = lc.hull
        # hausdorff distance between generator sets on the unit sphere
        a, b = hulls[2000], hulls[4000]
        d = max(
            max(np.min(np.linalg.norm(b - ray, axis=1)) for ray in a),
            max(np.min(np.linalg.norm(a - ray, axis=1)) for ray in b),
        )
        assert d <= 1e-3

    def test_sample_count_floor(self, mixed_signature, wedge_12):
        with pytest.raises(InvalidInputError):
            levi_cone(mixed_signature, wedge_12, 0.5, sample_count=100)


def _synthetic_levi_cone(rays, spread=24):
    """A LeviCone whose samples populate the conic hull of the given rays."""
    rays = np.asarray(rays, dtype=float)
    rng = np.random.default_rng(23)
    samples = []
    for _ in range(spread):
        coeffs = rng.random(len(rays))
        v = coeffs @ rays
        samples.append(LeviSample(np.array([1.0 + 0j]), 2.0, v))
    for ray in rays:
        samples.append(LeviSample(np.array([1.0 + 0j]), 2.0, ray.astype(float)))
    hull = rays / np.linalg.norm(rays, axis=1)[:, None]
    return LeviCone(math.pi / 2, samples, hull, True)


class TestPolyhedralApproximation:
    def test_single_ray_in_halfline(self):
        target = _synthetic_levi_cone(np.array([[1.0]]))
        inner = GeneratorCone(np.array([[1.0]]))
        gens = polyhedral_approximation(target, inner, margin=1e-4)
        assert gens.shape == (1, 1)
        assert gens[0, 0] > 0

    def test_narrow_sector_in_quadrant(self):
        target = _synthetic_levi_cone(np.array([[1.0, 0.0], [0.0, 1.0]]))
        inner_rays = np.array([
            [np.cos(t), np.sin(t)] for t in np.linspace(0.6, 0.9, 5)
        ])
        inner = GeneratorCone(inner_rays)
        gens = polyhedral_approximation(target, inner, margin=1e-3)
        assert len(gens) <= 3
        hull = GeneratorCone(gens)
        rng = np.random.default_rng(29)
        for _ in range(100):
            t = rng.uniform(0.6, 0.9)
            assert hull.contains([np.cos(t), np.sin(t)], tol=1e-7)

    def test_inner_equal_to_target_rejected(self):
        target = _synthetic_levi_cone(np.array([[1.0, 0.0], [0.0, 1.0]]))
        inner = GeneratorCone(np.array([[1.0, 0.0], [0.0, 1.0]]))
        with pytest.raises(HypothesisError):
            polyhedral_approximation(target, inner, margin=1e-3)


class TestEdgeOfWedge:
    def test_opposite_halfspaces_pass(self, quadric):
        edge = EdgeSpec(np.array([[1, 0, 0, 0], [0, 0, 1, 0]], float), 1, 1)
        up = WedgeSpec(quadric, edge, PolyhedralCone(np.array([[0.0, 0, 1.0]])))
        down = WedgeSpec(quadric, edge, PolyhedralCone(np.array([[0.0, 0, -1.0]])))
        M_down = GraphManifold.from_sources(["-abs2(w1)"], 1, 1)
        # same manifold, two opposite wedges: tangent cones clearly sum to all;
        # levi hulls are +1 from each, so condition (ii) fails for the pair
        verdict = edge_of_wedge_check([up, down], quadric, sample_count=500)
        assert verdict.condition_i
        assert not verdict.condition_ii

    def test_single_wedge_fails_ii(self, mixed_signature, wedge_12):
        verdict = edge_of_wedge_check([wedge_12], mixed_signature,
                                      sample_count=1000)
        assert not verdict.condition_ii

    def test_paired_example_passes_both(self, mixed_signature, real_edge_c3,
                                        wedge_12):
        c150, s150 = math.cos(5 * math.pi / 6), math.sin(5 * math.pi / 6)
        c135, s135 = math.cos(3 * math.pi / 4), math.sin(3 * math.pi / 4)
        companion = WedgeSpec(
            mixed_signature, real_edge_c3,
            PolyhedralCone(np.array([[0, 0, 0, c150, s150],
                                     [0, 0, 0, c135, s135]])),
            np.array([[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]], float).T,
            PolyhedralCone(np.array([[c150, s150], [c135, s135]])),
        )
        verdict = edge_of_wedge_check([wedge_12, companion], mixed_signature,
                                      sample_count=2000)
        assert verdict.condition_i and verdict.condition_ii

    def test_mismatched_manifolds_rejected(self, quadric, mixed_signature,
                                           wedge_12, quadric_full_wedge):
        with pytest.raises(InvalidInputError):
            edge_of_wedge_check([wedge_12, quadric_full_wedge], mixed_signature)


class TestWedgeSpec:
    def test_tangent_cone_must_contain_edge(self, mixed_signature, real_edge_c3):
        bad = PolyhedralCone(np.array([[1.0, 0, 0, 0, 0]]))  # cuts the x-axis
        with pytest.raises(InvalidInputError):
            WedgeSpec(mixed_signature, real_edge_c3, bad)

    def test_edge_translation_invariance(self, wedge_12):
        # membership of the tangent cone is unchanged by edge translations
        rng = np.random.default_rng(31)
        basis = wedge_12.edge.tangent_basis()
        for _ in range(50):
            v = rng.standard_normal(5)
            shift = basis @ rng.standard_normal(basis.shape[1])
            assert wedge_12.tangent_cone.contains(v) == \
                wedge_12.tangent_cone.contains(v + 5.0 * shift)


def test_composite_cone_is_minkowski_sum():
    a = PolyhedralCone(np.array([[1.0, 0.0]]))   # right half-plane
    b = PolyhedralCone(np.array([[0.0, 1.0]]))   # upper half-plane
    c = CompositeCone([a, b])
    assert c.contains([-1.0, 1.0])
    assert c.contains([1.0, -1.0])
    assert c.contains([-1.0, -1.0])  # (-1,-3)+(0,2) style decompositions exist
