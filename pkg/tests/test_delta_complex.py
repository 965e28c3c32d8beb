import pytest

import oracle
from lscat import delta_complex as dc
from lscat import exact_algebra as ea
from lscat.errors import (
    BadLensParams,
    DimensionOverflow,
    MalformedComplex,
    NoTriangulation,
    NotClosed,
    ParseError,
    UnknownGenerator,
)

ALL_GENERATORS = [
    ("S3", ()),
    ("S1xS2", ()),
    ("S1~S2", ()),
    ("T3", ()),
    ("RP2xS1", ()),
    ("L", (2, 1)),
    ("L", (3, 1)),
    ("L", (5, 1)),
    ("L", (7, 3)),
]


def test_boundary_of_4_simplex_is_standard_sphere():
    X = dc.generator("S3")
    rep = dc.validate(X)
    assert X.cell_counts() == (5, 10, 10, 5)
    assert rep.is_closed_pseudo_3_manifold
    assert rep.connected
    assert rep.orientable
    assert rep.euler_characteristic == 0
    assert ea.homology(X, 0).torsion(1) == ()


def test_t3_is_the_six_tetrahedron_cube_quotient():
    X = dc.generator("T3")
    rep = dc.validate(X)
    assert X.n_cells(3) == 6
    assert rep.is_closed_pseudo_3_manifold and rep.orientable
    assert rep.euler_characteristic == 0


def test_dangling_triangle_reported():
    # a single tetrahedron is a valid complex but not closed
    X = dc.from_facets([(0, 1, 2, 3)])
    rep = dc.validate(X)
    assert not rep.is_closed_pseudo_3_manifold
    assert rep.offending_faces == (0, 1, 2, 3)


def test_malformed_identities_rejected():
    # two triangles with inconsistent shared-edge face maps
    with pytest.raises(MalformedComplex):
        dc.DeltaComplex(3, [
            [(1, 0), (2, 0), (2, 1)],
            [(2, 1, 0), (0, 1, 2)],
        ])


def test_generator_errors():
    with pytest.raises(UnknownGenerator):
        dc.generator("K3")
    with pytest.raises(BadLensParams):
        dc.generator("L", 4, 2)
    with pytest.raises(BadLensParams):
        dc.generator("L", 1, 1)
    with pytest.raises(NoTriangulation):
        dc.generator("Poinc")
    with pytest.raises(NoTriangulation):
        dc.generator("Q8")


def test_lens_space_cell_counts_and_homology():
    for p, q in ((2, 1), (3, 1), (5, 1), (7, 3), (5, 2)):
        X = dc.generator("L", p, q)
        assert X.cell_counts() == (3, 2 * p + 3, 4 * p, 2 * p)
        assert oracle.homology_orders(X)[1] == (p,)


def test_twisted_bundle_facts():
    X = dc.generator("S1~S2")
    rep = dc.validate(X)
    assert rep.is_closed_pseudo_3_manifold and rep.connected
    assert not rep.orientable
    assert oracle.homology_orders(X) == ((0,), (0,), (2,), ())


@pytest.mark.parametrize("name,params", ALL_GENERATORS)
def test_generator_euler_characteristic_zero(name, params):
    X = dc.generator(name, *params)
    assert dc.validate(X).euler_characteristic == 0


@pytest.mark.parametrize("name,params", ALL_GENERATORS)
def test_orientability_matches_catalog(name, params):
    from lscat import manifold_algebra as ma

    X = dc.generator(name, *params)
    rec = ma.record_of((name, params))
    assert dc.validate(X).orientable == rec.orientable


def test_product_counting_identity():
    from math import factorial

    def paths(p, q, n):
        d = p + q - n
        if d < 0 or d > min(p, q):
            return 0
        return factorial(p + q - d) // (
            factorial(d) * factorial(p - d) * factorial(q - d)
        )

    A = dc.generator("L", 2, 1)
    B = dc.circle(1)
    P = dc.product(A, B)
    for n in range(P.dim + 1):
        expected = sum(
            A.n_cells(p) * B.n_cells(q) * paths(p, q, n)
            for p in range(A.dim + 1)
            for q in range(B.dim + 1)
        )
        assert P.n_cells(n) == expected


def test_product_torus():
    T = dc.product(dc.circle(1), dc.circle(1))
    assert oracle.homology_orders(T) == ((0,), (0, 0), (0,))


def test_product_with_point_is_identity():
    X = dc.generator("S1xS2")
    P = dc.product(X, dc.point())
    assert P == X


def test_product_rp2_circle():
    P = dc.product(dc.projective_plane(), dc.circle(3))
    assert oracle.homology_orders(P)[1] == (0, 2)


def test_product_dimension_cap():
    X = dc.generator("T3")
    with pytest.raises(DimensionOverflow):
        dc.product(X, dc.product(dc.circle(1), dc.circle(1)))


def test_connected_sum_with_sphere_is_neutral():
    for name, params in (("S1xS2", ()), ("L", (3, 1))):
        X = dc.generator(name, *params)
        S = dc.connected_sum(dc.generator("S3"), X)
        assert oracle.homology_orders(S) == oracle.homology_orders(X)


def test_connected_sum_rp3_rp3():
    S = dc.connected_sum(dc.generator("L", 2, 1), dc.generator("L", 2, 1))
    assert oracle.homology_orders(S)[1] == (2, 2)


def test_connected_sum_commutes_in_homology():
    A = dc.generator("L", 3, 1)
    B = dc.generator("S1xS2")
    H1 = ea.homology(dc.connected_sum(A, B), 0)
    H2 = ea.homology(dc.connected_sum(B, A), 0)
    assert H1.orders == H2.orders


def test_connected_sum_requires_closed():
    open_complex = dc.from_facets([(0, 1, 2, 3)])
    with pytest.raises(NotClosed):
        dc.connected_sum(open_complex, dc.generator("S3"))


def test_barycentric_preserves_homology():
    X = dc.generator("L", 3, 1)
    B = dc.barycentric(X)
    assert B.n_cells(3) == 24 * X.n_cells(3)
    assert oracle.homology_orders(B) == oracle.homology_orders(X)


def test_fundamental_cycle():
    X = dc.generator("L", 5, 1)
    cyc = dc.fundamental_cycle(X)
    assert cyc is not None and set(cyc) <= {1, -1}
    assert dc.fundamental_cycle(dc.generator("S1~S2")) is None


def test_dcx_roundtrip():
    for name, params in (("T3", ()), ("L", (3, 1)), ("S1xS2", ())):
        X = dc.generator(name, *params)
        text = dc.to_dcx(X)
        Y = dc.from_dcx(text)
        assert X == Y
        assert dc.to_dcx(Y) == text


def test_dcx_rejects_bad_input():
    with pytest.raises(ParseError):
        dc.from_dcx("dcx 2\ndim 0\n0 1\n\n")
    with pytest.raises(ParseError):
        dc.from_dcx("dcx 1\ndim 1\n0 1\n\n1 1\n0\n")  # wrong arity
    # out-of-range face index
    with pytest.raises(MalformedComplex):
        dc.from_dcx("dcx 1\ndim 1\n0 2\n\n\n1 1\n0 5\n")
    # simplicial identity violation
    bad = (
        "dcx 1\ndim 2\n0 3\n\n\n\n1 3\n1 0\n2 0\n2 1\n2 2\n2 1 0\n0 1 2\n"
    )
    with pytest.raises((MalformedComplex, ParseError)):
        dc.from_dcx(bad)


def test_simplicial_identities_hold_everywhere():
    # construction re-checks identities; spot-check a product and a sum
    for X in (
        dc.product(dc.generator("L", 2, 1), dc.circle(1)),
        dc.connected_sum(dc.generator("T3"), dc.generator("L", 2, 1)),
    ):
        for k in range(2, X.dim + 1):
            for fs in X.faces[k]:
                for j in range(k + 1):
                    for i in range(j):
                        left = X.faces[k - 1][fs[j]][i]
                        right = X.faces[k - 1][fs[i]][j - 1]
                        assert left == right
