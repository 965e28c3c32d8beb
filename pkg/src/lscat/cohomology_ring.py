"""Cup products, ring tables, cup-length, and the duality pairing.

Cup products use the front-face/back-face cochain formula, which is what the
ordered face maps of a Delta-complex are for.  Ring tables are computed over
prime moduli with deterministic echelon representatives; composite moduli are
served by top-degree generators plus the fundamental pairing, which is all
the finite-group rules downstream consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import delta_complex, exact_algebra
from .errors import (
    CompositeModulus,
    DegreeOverflow,
    ModulusMismatch,
    NonOrientable,
    NotClosed,
)


@dataclass(frozen=True)
class Cochain:
    degree: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))


def unit_cochain(X, m):
    return Cochain(0, (1 % m,) * X.n_cells(0))


@lru_cache(maxsize=None)
def _front_back(X, n, p):
    """Front p-face and back (n-p)-face of every n-cell."""
    fronts = []
    backs = []
    q = n - p
    for s in range(X.n_cells(n)):
        cur, d = s, n
        for _ in range(q):
            cur = X.faces[d][cur][d]  # drop the last vertex
            d -= 1
        fronts.append(cur)
        cur, d = s, n
        for _ in range(p):
            cur = X.faces[d][cur][0]  # drop the first vertex
            d -= 1
        backs.append(cur)
    return tuple(fronts), tuple(backs)


def cup_product(X, a, b, m):
    """Front/back cup product of two cochains over Z/m."""
    n = a.degree + b.degree
    if n > X.dim:
        raise DegreeOverflow(
            "degree %d product on a %d-complex" % (n, X.dim)
        )
    fronts, backs = _front_back(X, n, a.degree)
    av, bv = a.values, b.values
    return Cochain(n, tuple((av[f] * bv[g]) % m for f, g in zip(fronts, backs)))


def coboundary(X, k, values, m):
    """delta of a degree-k cochain over Z/m."""
    if k >= X.dim:
        return Cochain(k + 1, ())
    out = []
    for fs in X.faces[k + 1]:
        s = 0
        for i, f in enumerate(fs):
            s += values[f] if i % 2 == 0 else -values[f]
        out.append(s % m)
    return Cochain(k + 1, tuple(out))


def delta_cochain(X, c, m):
    return coboundary(X, c.degree, c.values, m)


def kronecker_top(X, u, m):
    """Evaluate a top cocycle against the fundamental cycle over Z/m.

    Mod 2 the cycle is the sum of all top cells; for other moduli the complex
    must be orientable and the signed integral cycle is used.
    """
    if not delta_complex.is_closed(X):
        raise NotClosed("Kronecker pairing needs a closed complex")
    if u.degree != X.dim:
        raise DegreeOverflow("pairing needs a top-degree cochain")
    if m == 2:
        return sum(u.values) % 2
    cyc = delta_complex.fundamental_cycle(X)
    if cyc is None:
        raise NonOrientable(
            "integral fundamental cycle requires an orientable complex"
        )
    return sum(s * v for s, v in zip(cyc, u.values)) % m


# ---------------------------------------------------------------------------
# ring tables


@dataclass(frozen=True, eq=False)
class CohomologyRing:
    """Graded basis with cup structure constants over Z/p.

    `products[(d1, i, d2, j)]` holds the coordinates of basis_i * basis_j in
    the degree d1+d2 basis.  `pairing` evaluates top-degree basis classes
    against the fundamental cycle (None when no pairing is available).
    `reps` keeps the representative cochains when the ring came from a
    complex; synthetic rings (spheres, tensor products) carry None.
    """

    m: int
    dims: tuple
    labels: tuple
    products: dict
    top_degree: int
    pairing: tuple | None
    reps: tuple | None = None
    source: str = ""

    def dim(self, k):
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def product_coords(self, d1, i, d2, j):
        if d1 == 0:
            return _unit_vec(self.dim(d2), j) if i == 0 else None
        if d2 == 0:
            return _unit_vec(self.dim(d1), i) if j == 0 else None
        return self.products.get((d1, i, d2, j), ())

    def multiply(self, d1, vec1, d2, vec2):
        """Coordinates of the product of two classes given by coordinates."""
        d = d1 + d2
        if d > self.top_degree:
            return ()
        out = [0] * self.dim(d)
        for i, a in enumerate(vec1):
            if not a:
                continue
            for j, b in enumerate(vec2):
                if not b:
                    continue
                coords = self.product_coords(d1, i, d2, j)
                for t, c in enumerate(coords):
                    out[t] = (out[t] + a * b * c) % self.m
        return tuple(out)


def _unit_vec(n, j):
    v = [0] * n
    v[j] = 1
    return tuple(v)


def ring_table(X, m, source=""):
    """Full structure-constant table of H^*(X; Z/m), prime m.

    The basis in each degree is the echelon extension of the coboundary
    space in index order, so tables are deterministic.  The fundamental
    pairing is attached for closed complexes (mod 2 always; other moduli
    when an integral fundamental cycle exists).
    """
    if not exact_algebra._is_prime(m):
        raise CompositeModulus(
            "ring tables are computed over prime moduli; composite moduli "
            "are served by top-degree generators"
        )
    rep = delta_complex.validate(X)
    if not rep.connected:
        raise NotClosed("ring tables need a connected complex")
    solvers = [exact_algebra.cochain_solver(X, k, m) for k in range(X.dim + 1)]
    reps = []
    for k, solver in enumerate(solvers):
        if k == 0:
            reps.append((unit_cochain(X, m),))
        else:
            reps.append(
                tuple(Cochain(k, r) for r in solver.reps)
            )
    dims = tuple(len(r) for r in reps)
    products = {}
    for d1 in range(1, X.dim + 1):
        for d2 in range(1, X.dim + 1 - d1):
            d = d1 + d2
            solver = solvers[d]
            for i, u in enumerate(reps[d1]):
                for j, v in enumerate(reps[d2]):
                    w = cup_product(X, u, v, m)
                    products[(d1, i, d2, j)] = solver.coords(w.values)
    pairing = None
    if rep.is_closed:
        if m == 2 or delta_complex.fundamental_cycle(X) is not None:
            pairing = tuple(
                kronecker_top(X, u, m) for u in reps[X.dim]
            )
    labels = tuple(
        tuple("h%d_%d" % (k, i) for i in range(dims[k]))
        for k in range(X.dim + 1)
    )
    return CohomologyRing(
        m=m,
        dims=dims,
        labels=labels,
        products=products,
        top_degree=X.dim,
        pairing=pairing,
        reps=tuple(reps),
        source=source,
    )


@lru_cache(maxsize=None)
def ring_table_cached(X, m):
    return ring_table(X, m)


def sphere_ring(n, p):
    """H^*(S^n; Z/p) given symbolically: unit and one top class."""
    dims = tuple(1 if k in (0, n) else 0 for k in range(n + 1))
    products = {(n, 0, n, 0): ()} if 2 * n <= n else {}
    labels = tuple(
        ("h%d_0" % k,) if dims[k] else () for k in range(n + 1)
    )
    return CohomologyRing(
        m=p,
        dims=dims,
        labels=labels,
        products=products,
        top_degree=n,
        pairing=(1,),
        reps=None,
        source="sphere:%d" % n,
    )


def kunneth_tensor(R1, R2):
    """Graded tensor product of two prime-field ring tables, with signs."""
    if R1.m != R2.m:
        raise ModulusMismatch("tensor factors must share a modulus")
    p = R1.m
    if not exact_algebra._is_prime(p):
        raise CompositeModulus("tensor rings are restricted to prime fields")
    top = R1.top_degree + R2.top_degree
    basis = []  # per degree: list of (d1, i, d2, j)
    for d in range(top + 1):
        level = []
        for d1 in range(min(d, R1.top_degree) + 1):
            d2 = d - d1
            if d2 > R2.top_degree:
                continue
            for i in range(R1.dim(d1)):
                for j in range(R2.dim(d2)):
                    level.append((d1, i, d2, j))
        basis.append(tuple(level))
    index = [
        {b: t for t, b in enumerate(level)} for level in basis
    ]
    dims = tuple(len(level) for level in basis)
    products = {}
    for da in range(1, top + 1):
        for db in range(1, top + 1 - da):
            d = da + db
            for ia, (a1, i1, a2, i2) in enumerate(basis[da]):
                for ib, (b1, j1, b2, j2) in enumerate(basis[db]):
                    c1 = R1.product_coords(a1, i1, b1, j1)
                    c2 = R2.product_coords(a2, i2, b2, j2)
                    out = [0] * dims[d]
                    if c1 and c2:
                        sign = -1 if (a2 * b1) % 2 else 1
                        for t1, v1 in enumerate(c1):
                            if not v1:
                                continue
                            for t2, v2 in enumerate(c2):
                                if not v2:
                                    continue
                                tt = index[d][(a1 + b1, t1, a2 + b2, t2)]
                                out[tt] = (out[tt] + sign * v1 * v2) % p
                    products[(da, ia, db, ib)] = tuple(out)
    pairing = None
    if R1.pairing is not None and R2.pairing is not None:
        pairing = tuple(
            (R1.pairing[i] * R2.pairing[j]) % p
            for (d1, i, d2, j) in basis[top]
        )
    labels = tuple(
        tuple(
            "%s*%s" % (R1.labels[d1][i], R2.labels[d2][j])
            for (d1, i, d2, j) in level
        )
        for level in basis
    )
    return CohomologyRing(
        m=p,
        dims=dims,
        labels=labels,
        products=products,
        top_degree=top,
        pairing=pairing,
        reps=None,
        source="tensor(%s, %s)" % (R1.source or "?", R2.source or "?"),
    )


# ---------------------------------------------------------------------------
# cup-length


@dataclass(frozen=True)
class CupLengthWitness:
    factors: tuple  # ((degree, basis index), ...) positive-degree classes
    product_degree: int
    product_coords: tuple
    length: int


def cup_length(R):
    """Exact cup-length with a witness, by graded subspace accumulation.

    Level k keeps, per degree, an independent set of realized k-fold
    products of positive-degree basis classes; products of level-(k-1)
    witnesses with basis classes span everything k-fold products span, so
    the maximum is exact and every retained vector is an honest product.
    """
    p = R.m
    top = R.top_degree
    level = {}
    for d in range(1, top + 1):
        for i in range(R.dim(d)):
            level.setdefault(d, []).append(
                (((d, i),), _unit_vec(R.dim(d), i))
            )
    if not level:
        return 0, None
    best = 1
    best_witness = level[min(level)][0]
    k = 1
    while True:
        nxt = {}
        reducers = {}
        for d in range(1, top + 1):
            if p == 2:
                reducers[d] = exact_algebra.Gf2Reducer()
            else:
                reducers[d] = exact_algebra.ModPReducer(p, R.dim(d))
        found = False
        for d1 in sorted(level):
            for factors, vec in level[d1]:
                for d2 in range(1, top - d1 + 1):
                    for j in range(R.dim(d2)):
                        prod = R.multiply(
                            d1, vec, d2, _unit_vec(R.dim(d2), j)
                        )
                        if not prod or not any(prod):
                            continue
                        d = d1 + d2
                        red = reducers[d]
                        if p == 2:
                            ok = red.insert(exact_algebra._vec_to_bits(prod))
                        else:
                            ok = red.insert(list(prod))
                        if ok is not None:
                            nxt.setdefault(d, []).append(
                                (factors + ((d2, j),), prod)
                            )
                            found = True
        if not found:
            break
        k += 1
        best = k
        first_d = min(nxt)
        best_witness = nxt[first_d][0]
        level = nxt
    factors, coords = best_witness
    witness = CupLengthWitness(
        factors=factors,
        product_degree=sum(d for d, _ in factors),
        product_coords=tuple(coords),
        length=best,
    )
    return best, witness


def witness_product(R, factors):
    """Recompute the class coordinates of a product of basis classes."""
    d0, i0 = factors[0]
    vec = _unit_vec(R.dim(d0), i0)
    deg = d0
    for d, i in factors[1:]:
        vec = R.multiply(deg, vec, d, _unit_vec(R.dim(d), i))
        deg += d
    return deg, vec


def pairing_matrix(R, k):
    """Duality pairing H^k x H^(top-k) -> Z/m on the chosen bases."""
    if R.pairing is None:
        raise NonOrientable("ring has no fundamental pairing")
    other = R.top_degree - k
    out = []
    for i in range(R.dim(k)):
        row = []
        for j in range(R.dim(other)):
            coords = R.product_coords(k, i, other, j)
            v = sum(
                c * w for c, w in zip(coords, R.pairing)
            ) % R.m
            row.append(v)
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# cross products on staircase product complexes


def cross_cochain(prod_labels, u, v, m):
    """Cochain representing the cross product u x v on a product complex.

    The front-face/back-face convention supports the cochain on the single
    canonical staircase per cell pair: all first-factor steps, then all
    second-factor steps.  Its class is the Kunneth image of [u] x [v].
    """
    p, q = u.degree, v.degree
    n = p + q
    canonical = tuple(
        [(x, 0) for x in range(p + 1)] + [(p, y) for y in range(1, q + 1)]
    )
    out = []
    for (cp, ia, cq, ib, ch) in prod_labels[n]:
        if cp == p and cq == q and ch == canonical:
            out.append((u.values[ia] * v.values[ib]) % m)
        else:
            out.append(0)
    return Cochain(n, tuple(out))
