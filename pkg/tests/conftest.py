import random

import pytest

from acmschemes.presentations import IdealHandle
from acmschemes.ring import PolyRing


@pytest.fixture(scope="session")
def random_corpus():
    """Deterministic corpus of small random ideals in F_32003[x, y, z].

    Each entry carries the ideal, its reduced basis and a full (possibly
    non-minimal) resolution of the quotient; shared by the property suites.
    """
    from acmschemes.resolve import full_resolution

    ring = PolyRing(32003, ["x", "y", "z"])
    rng = random.Random(20260809)
    entries = []
    while len(entries) < 150:
        ngens = rng.choice([2, 2, 2, 3])
        gens = []
        for _ in range(ngens):
            d = rng.choice([1, 2, 2, 3])
            monos = ring.monomials_of_degree(d)
            f = ring.zero
            for _ in range(rng.choice([2, 3])):
                f = f + ring.from_dict({rng.choice(monos): rng.randrange(ring.p)})
            if not f.is_zero():
                gens.append(f)
        if not gens:
            continue
        ideal = IdealHandle(ring, gens)
        pres = ideal.quotient_presentation()
        entries.append(
            {
                "ideal": ideal,
                "gb": ideal.gb(),
                "pres": pres,
                "res": full_resolution(pres),
            }
        )
    return ring, entries


@pytest.fixture(scope="session")
def R():
    """F_32003[x, y, z, w], the ambient ring of most worked examples."""
    return PolyRing(32003, ["x", "y", "z", "w"])


@pytest.fixture(scope="session")
def xyzw(R):
    return R.gens()


@pytest.fixture(scope="session")
def tetra_ideal(R, xyzw):
    """Vertices of the coordinate tetrahedron: four reduced points."""
    x, y, z, w = xyzw
    return IdealHandle(R, [x * y, x * z, x * w, y * z, y * w, z * w])


@pytest.fixture(scope="session")
def five_points_ideal(R, xyzw):
    """Four coordinate points plus (1:1:1:1): quadrics through all five."""
    x, y, z, w = xyzw
    zw = z * w
    return IdealHandle(R, [x * y - zw, x * z - zw, x * w - zw, y * z - zw, y * w - zw])


@pytest.fixture(scope="session")
def four_planar_ideal(R, xyzw):
    """Four general points in the plane w = 0: a (1,2,2) complete intersection."""
    x, y, z, w = xyzw
    return IdealHandle(R, [w, x * y - y * z, x * z - y * z])


@pytest.fixture(scope="session")
def three_lines_ideal(R, xyzw):
    """Union of the lines V(x,y), V(y,z), V(z,w)."""
    x, y, z, w = xyzw
    return IdealHandle(R, [y * z, y * w, x * z])


@pytest.fixture(scope="session")
def ci22_ideal(R, xyzw):
    """A complete intersection of two quadrics in P^3."""
    x, y, z, w = xyzw
    return IdealHandle(R, [x * z - y * y, y * w - z * z])


@pytest.fixture(scope="session")
def point_ideal(R, xyzw):
    x, y, z, w = xyzw
    return IdealHandle(R, [x, y, z])


@pytest.fixture(scope="session")
def line_ideal(R, xyzw):
    x, y, z, w = xyzw
    return IdealHandle(R, [x, y])
