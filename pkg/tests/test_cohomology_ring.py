import random

import pytest

import oracle
from lscat import cohomology_ring as ring
from lscat import delta_complex as dc
from lscat import exact_algebra as ea
from lscat.errors import CompositeModulus, DegreeOverflow, ModulusMismatch


def random_cochain(rng, X, k, m):
    return ring.Cochain(
        k, tuple(rng.randrange(m) for _ in range(X.n_cells(k)))
    )


def test_unit_acts_as_identity():
    X = dc.generator("L", 2, 1)
    one = ring.unit_cochain(X, 2)
    rng = random.Random(0)
    for k in range(4):
        b = random_cochain(rng, X, k, 2)
        assert ring.cup_product(X, one, b, 2).values == b.values


def test_degree_overflow():
    X = dc.generator("S3")
    a = ring.Cochain(2, (0,) * X.n_cells(2))
    with pytest.raises(DegreeOverflow):
        ring.cup_product(X, a, a, 2)


def test_rp3_triple_product_nonzero():
    X = dc.generator("L", 2, 1)
    R = ring.ring_table_cached(X, 2)
    assert R.dims == (1, 1, 1, 1)
    a = (1,)
    sq = R.multiply(1, a, 1, a)
    assert any(sq)
    cube = R.multiply(2, sq, 1, a)
    assert any(cube)
    # cross-check one evaluation against the oracle's own face walking
    u = R.reps[1][0]
    w = ring.cup_product(X, u, u, 2)
    for cell in range(X.n_cells(2)):
        assert w.values[cell] == oracle.cup_value(
            X, 1, u.values, 1, u.values, cell, 2
        )


def test_s1xs2_degree_one_square_zero():
    X = dc.generator("S1xS2")
    R = ring.ring_table_cached(X, 2)
    assert R.dim(1) == 1
    sq = R.multiply(1, (1,), 1, (1,))
    assert not any(sq)


def test_t3_exterior_algebra_table():
    X = dc.generator("T3")
    R = ring.ring_table_cached(X, 2)
    assert R.dims == (1, 3, 3, 1)
    # squares vanish and distinct generators multiply to a basis of H^2
    seen = set()
    for i in range(3):
        assert not any(R.multiply(1, _unit(3, i), 1, _unit(3, i)))
        for j in range(3):
            if i == j:
                continue
            prod = R.multiply(1, _unit(3, i), 1, _unit(3, j))
            assert any(prod)
            seen.add(tuple(prod))
    assert len(seen) == 3
    # a full flag of three distinct degree-1 classes reaches the top class
    top = R.multiply(
        2, R.multiply(1, _unit(3, 0), 1, _unit(3, 1)), 1, _unit(3, 2)
    )
    assert any(top)


def _unit(n, i):
    v = [0] * n
    v[i] = 1
    return tuple(v)


def test_rp2xs1_triple_product_witness():
    X = dc.generator("RP2xS1")
    R = ring.ring_table_cached(X, 2)
    length, witness = ring.cup_length(R)
    assert length == 3
    assert [d for d, _ in witness.factors] == [1, 1, 1]
    deg, coords = ring.witness_product(R, witness.factors)
    assert deg == 3 and any(coords)


def test_cochain_leibniz_random_trials():
    rng = random.Random(42)
    for name, params, m in (("L", (2, 1), 2), ("S1xS2", (), 2), ("T3", (), 3)):
        X = dc.generator(name, *params)
        for _ in range(200):
            p = rng.randrange(0, X.dim)
            q = rng.randrange(0, X.dim - p)
            a = random_cochain(rng, X, p, m)
            b = random_cochain(rng, X, q, m)
            left = ring.delta_cochain(X, ring.cup_product(X, a, b, m), m)
            da_b = ring.cup_product(X, ring.delta_cochain(X, a, m), b, m)
            a_db = ring.cup_product(X, a, ring.delta_cochain(X, b, m), m)
            sign = 1 if p % 2 == 0 else -1
            rhs = tuple(
                (x + sign * y) % m for x, y in zip(da_b.values, a_db.values)
            )
            assert left.values == rhs


def test_class_level_commutativity_mod2():
    X = dc.generator("RP2xS1")
    R = ring.ring_table_cached(X, 2)
    for d1 in range(1, 3):
        for d2 in range(1, 4 - d1):
            for i in range(R.dim(d1)):
                for j in range(R.dim(d2)):
                    ab = R.product_coords(d1, i, d2, j)
                    ba = R.product_coords(d2, j, d1, i)
                    assert ab == ba


def test_graded_commutativity_odd_prime():
    X = dc.generator("T3")
    R = ring.ring_table_cached(X, 3)
    for i in range(3):
        for j in range(3):
            ab = R.product_coords(1, i, 1, j)
            ba = R.product_coords(1, j, 1, i)
            assert ab == tuple((-x) % 3 for x in ba)


def test_associativity_of_structure_constants():
    X = dc.generator("T3")
    R = ring.ring_table_cached(X, 2)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                ij = R.multiply(1, _unit(3, i), 1, _unit(3, j))
                left = R.multiply(2, ij, 1, _unit(3, k))
                jk = R.multiply(1, _unit(3, j), 1, _unit(3, k))
                right = R.multiply(1, _unit(3, i), 2, jk)
                assert left == right


def test_duality_pairing_nondegenerate_mod2():
    for name, params in (
        ("S3", ()), ("S1xS2", ()), ("S1~S2", ()), ("T3", ()),
        ("RP2xS1", ()), ("L", (2, 1)), ("L", (5, 1)),
    ):
        X = dc.generator(name, *params)
        R = ring.ring_table_cached(X, 2)
        for k in range(4):
            M = ring.pairing_matrix(R, k)
            assert len(M) == R.dim(k) == R.dim(3 - k)
            ent = {
                (i, j): v
                for i, row in enumerate(M)
                for j, v in enumerate(row)
                if v % 2
            }
            assert ea.rank_mod_p(ent, 2) == R.dim(k)


def test_cup_length_values():
    assert _cl("S3") == 1
    assert _cl("L", 2, 1) == 3
    assert _cl("S1xS2") == 2
    assert _cl("S1~S2") == 2
    assert _cl("T3") == 3
    assert _cl("RP2xS1") == 3


def _cl(name, *params):
    X = dc.generator(name, *params)
    R = ring.ring_table_cached(X, 2)
    return ring.cup_length(R)[0]


def test_kunneth_tensor_unit_and_spheres():
    X = dc.generator("L", 2, 1)
    R = ring.ring_table_cached(X, 2)
    P = ring.ring_table_cached(dc.point(), 2)
    T = ring.kunneth_tensor(R, P)
    assert T.dims == R.dims
    S2 = ring.sphere_ring(2, 2)
    S3 = ring.sphere_ring(3, 2)
    T = ring.kunneth_tensor(S2, S3)
    assert ring.cup_length(T)[0] == 2


def test_kunneth_tensor_rp3_circle():
    R = ring.ring_table_cached(dc.generator("L", 2, 1), 2)
    C = ring.ring_table_cached(dc.circle(3), 2)
    T = ring.kunneth_tensor(R, C)
    assert ring.cup_length(T)[0] == 4


def test_kunneth_modulus_checks():
    R2 = ring.ring_table_cached(dc.generator("L", 2, 1), 2)
    R3 = ring.ring_table_cached(dc.generator("L", 2, 1), 3)
    with pytest.raises(ModulusMismatch):
        ring.kunneth_tensor(R2, R3)
    with pytest.raises(CompositeModulus):
        ring.ring_table(dc.generator("L", 2, 1), 6)


def test_tensor_matches_triangulated_product():
    pairs = [
        (dc.generator("L", 2, 1), dc.circle(1)),
        (dc.generator("S1xS2"), dc.circle(1)),
        (dc.circle(1), dc.circle(1)),
        (dc.projective_plane(), dc.circle(3)),
    ]
    for p in (2, 3):
        for A, B in pairs:
            P = dc.product(A, B)
            l_tri = ring.cup_length(ring.ring_table_cached(P, p))[0]
            T = ring.kunneth_tensor(
                ring.ring_table_cached(A, p), ring.ring_table_cached(B, p)
            )
            l_ten = ring.cup_length(T)[0]
            assert l_tri == l_ten


def test_kronecker_top():
    X = dc.generator("S3")
    R = ring.ring_table_cached(X, 2)
    assert ring.kronecker_top(X, R.reps[3][0], 2) == 1
    zero = ring.Cochain(3, (0,) * X.n_cells(3))
    assert ring.kronecker_top(X, zero, 2) == 0
    L = dc.generator("L", 2, 1)
    RL = ring.ring_table_cached(L, 2)
    a = RL.reps[1][0]
    cube = ring.cup_product(L, ring.cup_product(L, a, a, 2), a, 2)
    assert ring.kronecker_top(L, cube, 2) == 1


def test_cup_length_bounded_by_dimension():
    for name, params in (("T3", ()), ("L", (3, 1)), ("S1~S2", ())):
        X = dc.generator(name, *params)
        assert ring.cup_length(ring.ring_table_cached(X, 2))[0] <= 3
