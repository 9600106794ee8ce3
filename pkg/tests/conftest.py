import numpy as np
import pytest

from crwedge.cones import FullCone, PolyhedralCone, SectorCone, WedgeSpec
from crwedge.manifold import EdgeSpec, GraphManifold


@pytest.fixture(scope="session")
def quadric():
    """Im z2 = |z1|^2 in C^2."""
    return GraphManifold.from_sources(["abs2(w1)"], 1, 1)


@pytest.fixture(scope="session")
def mixed_signature():
    """Im z3 = (Im z1)^2 - (Im z2)^2 in C^3."""
    return GraphManifold.from_sources(["Im(w1)^2 - Im(w2)^2"], 1, 2)


@pytest.fixture(scope="session")
def near_negative():
    """Im z3 = |z1|^2 + |z2|^2 - 2.1 Im(z1 conj(z2)); negative only near one direction."""
    return GraphManifold.from_sources(
        ["abs2(w1) + abs2(w2) - 2.1*Im(w1*conj(w2))"], 1, 2
    )


@pytest.fixture(scope="session")
def real_edge_c3():
    """The real 3-space edge inside C^3 graph coordinates (l=1, n=2)."""
    return EdgeSpec(np.array([
        [1, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
    ], dtype=float), 1, 2)


def make_wedge_12(M, edge):
    tangent = PolyhedralCone(np.array([[0, 0, 0, 1, -1], [0, 0, 0, 1, 1]], float))
    comp = np.array([[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]], float).T
    sigma = PolyhedralCone(np.array([[1, -1], [1, 1]], float))
    from crwedge.expressions import parse

    preds = [parse("Im(w1) - Im(w2)", l=1, n=2), parse("Im(w1) + Im(w2)", l=1, n=2)]
    return WedgeSpec(M, edge, tangent, comp, sigma, preds, name="V")


def make_wedge_14(M, edge):
    tangent = PolyhedralCone(np.array([[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]], float))
    comp = np.array([[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]], float).T
    sigma = PolyhedralCone(np.eye(2))
    from crwedge.expressions import parse

    preds = [parse("Im(w1)", l=1, n=2), parse("Im(w2)", l=1, n=2)]
    return WedgeSpec(M, edge, tangent, comp, sigma, preds, name="V")


@pytest.fixture(scope="session")
def wedge_12(mixed_signature, real_edge_c3):
    return make_wedge_12(mixed_signature, real_edge_c3)


@pytest.fixture(scope="session")
def wedge_14(near_negative, real_edge_c3):
    return make_wedge_14(near_negative, real_edge_c3)


@pytest.fixture(scope="session")
def quadric_full_wedge(quadric):
    edge = EdgeSpec(np.array([
        [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
    ], dtype=float), 1, 1)
    return WedgeSpec(quadric, edge, FullCone(3))


@pytest.fixture(scope="session")
def sector_13():
    """Tangent cone of the thin-edge sector wedge on the quadric."""
    return SectorCone(np.array([0, 1.0, 0]), np.array([0, 0, 1.0]),
                      0.0, 0.75 * np.pi, subspace=np.array([[1.0, 0, 0]]))
