"""Exact integer and modular linear algebra.

Smith normal form, chain-complex homology over Z and Z/m, and the small
GF(p) toolkit that the cochain machinery is built on.  Everything here is
exact: entries are Python ints or explicit modular residues.  No floating
point appears anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import CompositeModulus, NonOrientable, NotClosed


# ---------------------------------------------------------------------------
# dense Smith normal form with transforms


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(A):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (S, U, V) with S = U*A*V, S diagonal, each diagonal entry
    non-negative and dividing the next, and U, V unimodular.  The input is a
    list of equal-length rows of ints and is not modified.  Pivots are chosen
    by minimal absolute value to limit entry growth.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = [[int(v) for v in row] for row in A]
    for row in S:
        if len(row) != n:
            raise ValueError("ragged matrix")
    U = _identity(m)
    V = _identity(n)

    def swap_rows(a, b):
        S[a], S[b] = S[b], S[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for r in S:
            r[a], r[b] = r[b], r[a]
        for r in V:
            r[a], r[b] = r[b], r[a]

    def row_sub(i, t, q):
        Si, St = S[i], S[t]
        for j in range(n):
            Si[j] -= q * St[j]
        Ui, Ut = U[i], U[t]
        for j in range(m):
            Ui[j] -= q * Ut[j]

    def col_sub(j, t, q):
        for r in S:
            r[j] -= q * r[t]
        for r in V:
            r[j] -= q * r[t]

    t = 0
    while t < min(m, n):
        # minimal-absolute-value pivot in the trailing block
        piv = None
        best = None
        for i in range(t, m):
            Si = S[i]
            for j in range(t, n):
                v = Si[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    if q:
                        row_sub(i, t, q)
                    if S[i][t]:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    if q:
                        col_sub(j, t, q)
                    if S[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            break
        # pivot must divide the rest of the block for the divisibility chain
        # (folding an offending row into row t and re-clearing shrinks the gcd)
        d = S[t][t]
        bad = None
        for i in range(t + 1, m):
            Si = S[i]
            for j in range(t + 1, n):
                if Si[j] % d:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            Sb, Ub = S[bad], U[bad]
            St, Ut = S[t], U[t]
            for j in range(n):
                St[j] += Sb[j]
            for j in range(m):
                Ut[j] += Ub[j]
            continue
        if S[t][t] < 0:
            for j in range(n):
                S[t][j] = -S[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1
    return S, U, V


def _dense_invariant_factors(rows):
    """Nonzero diagonal of the Smith form, no transforms kept."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    S = [list(r) for r in rows]
    out = []
    t = 0
    while t < min(m, n):
        piv = None
        best = None
        for i in range(t, m):
            Si = S[i]
            for j in range(t, n):
                v = Si[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        i0, j0 = piv
        S[t], S[i0] = S[i0], S[t]
        if j0 != t:
            for r in S:
                r[t], r[j0] = r[j0], r[t]
        while True:
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    if q:
                        Si, St = S[i], S[t]
                        for j in range(n):
                            Si[j] -= q * St[j]
                    if S[i][t]:
                        S[t], S[i] = S[i], S[t]
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    if q:
                        for r in S:
                            r[j] -= q * r[t]
                    if S[t][j]:
                        for r in S:
                            r[t], r[j] = r[j], r[t]
                        dirty = True
            if dirty:
                continue
            break
        d = S[t][t]
        bad = None
        for i in range(t + 1, m):
            Si = S[i]
            for j in range(t + 1, n):
                if Si[j] % d:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            Sb, St = S[bad], S[t]
            for j in range(n):
                St[j] += Sb[j]
            continue
        out.append(abs(S[t][t]))
        t += 1
    return out


# ---------------------------------------------------------------------------
# sparse elimination paths (the sizes that matter live here)


def _sparse_from_entries(entries):
    rows = {}
    cols = {}
    for (i, j), v in entries.items():
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)
    return rows, cols


def invariant_factors(entries, nrows=None, ncols=None):
    """Invariant factors (with multiplicity, including 1s) of a sparse matrix.

    `entries` maps (row, col) -> nonzero int.  Unit pivots are eliminated
    first with a fill-minimizing heuristic; the small residual core goes
    through the dense routine.  The returned list is a divisibility chain.
    """
    rows, cols = _sparse_from_entries(entries)
    ones = 0
    while True:
        best = None
        best_cost = None
        for i, r in rows.items():
            li = len(r) - 1
            for j, v in r.items():
                if v == 1 or v == -1:
                    cost = li * (len(cols[j]) - 1)
                    if best_cost is None or cost < best_cost:
                        best_cost = cost
                        best = (i, j)
                        if cost == 0:
                            break
            if best_cost == 0:
                break
        if best is None:
            break
        i0, j0 = best
        prow = rows.pop(i0)
        pval = prow[j0]
        for j in prow:
            cols[j].discard(i0)
        for r in list(cols.get(j0, ())):
            rr = rows[r]
            f = rr.pop(j0) * pval  # pval in {1,-1}; f = entry / pval
            cols[j0].discard(r)
            for j, v in prow.items():
                if j == j0:
                    continue
                nv = rr.get(j, 0) - f * v
                if nv:
                    rr[j] = nv
                    cols[j].add(r)
                elif j in rr:
                    del rr[j]
                    cols[j].discard(r)
            if not rr:
                del rows[r]
        cols.pop(j0, None)
        ones += 1
    if rows:
        ridx = sorted(rows)
        cidx = sorted({j for r in rows.values() for j in r})
        cpos = {j: k for k, j in enumerate(cidx)}
        dense = [[0] * len(cidx) for _ in ridx]
        for a, i in enumerate(ridx):
            for j, v in rows[i].items():
                dense[a][cpos[j]] = v
        core = _dense_invariant_factors(dense)
    else:
        core = []
    return [1] * ones + core


def rank_mod_p(entries, p):
    """Rank of a sparse integer matrix over GF(p)."""
    rows = {}
    cols = {}
    for (i, j), v in entries.items():
        v %= p
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)
    rank = 0
    while rows:
        best = None
        best_cost = None
        for i, r in rows.items():
            li = len(r) - 1
            for j in r:
                cost = li * (len(cols[j]) - 1)
                if best_cost is None or cost < best_cost:
                    best_cost = cost
                    best = (i, j)
                    if cost == 0:
                        break
            if best_cost == 0:
                break
        i0, j0 = best
        prow = rows.pop(i0)
        pinv = pow(prow[j0], -1, p)
        for j in prow:
            cols[j].discard(i0)
        for r in list(cols.get(j0, ())):
            rr = rows[r]
            f = rr.pop(j0) * pinv % p
            cols[j0].discard(r)
            for j, v in prow.items():
                if j == j0:
                    continue
                nv = (rr.get(j, 0) - f * v) % p
                if nv:
                    rr[j] = nv
                    cols[j].add(r)
                elif j in rr:
                    del rr[j]
                    cols[j].discard(r)
            if not rr:
                del rows[r]
        cols.pop(j0, None)
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# boundary maps and homology of a DeltaComplex


def boundary_entries(X, k):
    """Sparse entries of the boundary map C_k -> C_{k-1}, alternating signs."""
    ent = {}
    if k < 1 or k > X.dim:
        return ent
    for j, fs in enumerate(X.faces[k]):
        for i, f in enumerate(fs):
            key = (f, j)
            v = ent.get(key, 0) + (1 if i % 2 == 0 else -1)
            if v:
                ent[key] = v
            elif key in ent:
                del ent[key]
    return ent


@lru_cache(maxsize=None)
def _integral_data(X):
    """Per-degree (rank, torsion factors) of every boundary map of X."""
    ranks = [0] * (X.dim + 2)
    tors = [()] * (X.dim + 2)
    for k in range(1, X.dim + 1):
        f = invariant_factors(boundary_entries(X, k))
        ranks[k] = len(f)
        tors[k] = tuple(d for d in f if d > 1)
    return tuple(ranks), tuple(tors)


@dataclass(frozen=True)
class HomologyGroups:
    """Graded abelian-group data: per degree, a tuple of cyclic orders.

    Order 0 marks an infinite cyclic (Z) summand; all other orders are > 1.
    With coeffs = 0 the groups are integral homology; with coeffs = m >= 2
    they are the Z/m homology, so every order divides m.
    """

    coeffs: int
    orders: tuple

    def betti(self, k):
        return sum(1 for d in self._deg(k) if d == 0)

    def torsion(self, k):
        return tuple(d for d in self._deg(k) if d > 1)

    def dim(self, k):
        """Summand count; a vector-space dimension when coeffs is prime."""
        return len(self._deg(k))

    def _deg(self, k):
        if 0 <= k < len(self.orders):
            return self.orders[k]
        return ()

    def describe(self, k):
        parts = ["Z"] * self.betti(k) + ["Z/%d" % d for d in self.torsion(k)]
        if self.coeffs:
            parts = ["Z/%d" % d for d in sorted(self._deg(k))]
        return " + ".join(parts) if parts else "0"


def _is_prime(m):
    if m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


def homology(X, coeffs=0):
    """Homology of a DeltaComplex over Z (coeffs=0) or Z/m (coeffs=m>=2).

    Integral groups come from Smith normal form of the boundary maps; prime
    moduli from GF(p) ranks; composite moduli by reducing the integral
    answer (universal coefficients).
    """
    ranks, tors = _integral_data(X)
    if coeffs == 0:
        orders = []
        for k in range(X.dim + 1):
            betti = X.n_cells(k) - ranks[k] - ranks[k + 1]
            orders.append((0,) * betti + tuple(sorted(tors[k + 1])))
        return HomologyGroups(0, tuple(orders))
    m = coeffs
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if _is_prime(m):
        orders = []
        for k in range(X.dim + 1):
            rk = rank_mod_p(boundary_entries(X, k), m)
            rk1 = rank_mod_p(boundary_entries(X, k + 1), m)
            orders.append((m,) * (X.n_cells(k) - rk - rk1))
        return HomologyGroups(m, tuple(orders))
    integral = homology(X, 0)
    orders = []
    for k in range(X.dim + 1):
        deg = [m] * integral.betti(k)
        deg += [gcd(d, m) for d in integral.torsion(k) if gcd(d, m) > 1]
        if k >= 1:
            deg += [gcd(d, m) for d in integral.torsion(k - 1) if gcd(d, m) > 1]
        orders.append(tuple(sorted(deg)))
    return HomologyGroups(m, tuple(orders))


# ---------------------------------------------------------------------------
# GF(p) cochain spaces with deterministic representatives

_SENTINEL = object()


class Gf2Reducer:
    """Reduced echelon store over GF(2); vectors are int bitmasks.

    Coordinates are tracked against the vectors inserted with a tag, which
    is how cohomology-class coordinates fall out of the reduction.
    """

    def __init__(self):
        self.pivots = {}  # pivot bit -> (vector, coord mask)

    def reduce(self, v, c=0):
        while v:
            b = v & -v
            hit = self.pivots.get(b)
            if hit is None:
                return v, c, b
            v ^= hit[0]
            c ^= hit[1]
        return 0, c, None

    def insert(self, v, c=0):
        v, c, b = self.reduce(v, c)
        if b is not None:
            self.pivots[b] = (v, c)
        return b


class ModPReducer:
    """Reduced echelon store over GF(p), dense tuple vectors."""

    def __init__(self, p, n, ntags=0):
        self.p = p
        self.n = n
        self.ntags = ntags
        self.pivots = {}  # pivot index -> (vector list, coord list)

    def reduce(self, v, c=None):
        p = self.p
        v = [x % p for x in v]
        c = list(c) if c is not None else [0] * self.ntags
        j = 0
        while j < self.n:
            if v[j]:
                hit = self.pivots.get(j)
                if hit is None:
                    return v, c, j
                f = v[j]
                hv, hc = hit
                for k in range(j, self.n):
                    if hv[k]:
                        v[k] = (v[k] - f * hv[k]) % p
                for k in range(self.ntags):
                    if hc[k]:
                        c[k] = (c[k] - f * hc[k]) % p
            j += 1
        return v, c, None

    def insert(self, v, c=None):
        v, c, j = self.reduce(v, c)
        if j is not None:
            inv = pow(v[j], -1, self.p)
            v = [x * inv % self.p for x in v]
            c = [x * inv % self.p for x in c]
            self.pivots[j] = (v, c)
        return j


class CochainSolver:
    """Cocycles, coboundaries, and cohomology representatives in one degree.

    Representatives are the echelon extension of the coboundary space inside
    the cocycle space, taken in index order — deterministic by construction.
    """

    def __init__(self, X, k, p):
        self.X = X
        self.k = k
        self.p = p
        n = X.n_cells(k)
        self.n = n
        cob = _coboundary_image_vectors(X, k, p)
        ker = _cocycle_basis(X, k, p)
        reps = []
        if p == 2:
            probe = Gf2Reducer()
            for v in cob:
                probe.insert(v, 0)
            for v in ker:
                if probe.insert(v, 0) is not None:
                    reps.append(v)
            base = Gf2Reducer()
            for v in cob:
                base.insert(v, 0)
            for i, v in enumerate(reps):
                base.insert(v, 1 << i)
            self._red = base
            self.reps = tuple(_bits_to_vec(v, n) for v in reps)
        else:
            probe = ModPReducer(p, n)
            for v in cob:
                probe.insert(v)
            for v in ker:
                if probe.insert(v) is not None:
                    reps.append(v)
            base = ModPReducer(p, n, ntags=len(reps))
            for v in cob:
                base.insert(v, [0] * len(reps))
            for i, v in enumerate(reps):
                tag = [0] * len(reps)
                tag[i] = 1
                base.insert(v, tag)
            self._red = base
            self.reps = tuple(tuple(v) for v in reps)
        self.dim = len(self.reps)

    def coords(self, vec):
        """Class coordinates of a cocycle in the chosen basis."""
        if self.p == 2:
            bits = _vec_to_bits(vec)
            r, c, b = self._red.reduce(bits, 0)
            if r:
                raise ValueError("vector is not a cocycle modulo coboundaries")
            return tuple((c >> i) & 1 for i in range(self.dim))
        r, c, j = self._red.reduce(vec)
        if j is not None:
            raise ValueError("vector is not a cocycle modulo coboundaries")
        # inserted combination tracks subtraction; negate to get coordinates
        return tuple((-x) % self.p for x in c)

    def is_cocycle(self, vec):
        from .cohomology_ring import coboundary  # local to avoid cycle

        return not any(coboundary(self.X, self.k, vec, self.p).values)


def _vec_to_bits(vec):
    b = 0
    for i, v in enumerate(vec):
        if v & 1:
            b |= 1 << i
    return b


def _bits_to_vec(bits, n):
    return tuple((bits >> i) & 1 for i in range(n))


def _coboundary_image_vectors(X, k, p):
    """Spanning set of the degree-k coboundary space, one vector per (k-1)-cell."""
    n = X.n_cells(k)
    if k == 0 or k > X.dim:
        return []
    ent = boundary_entries(X, k)
    out = {}
    for (i, j), v in ent.items():
        out.setdefault(i, {})[j] = v % p
    vecs = []
    if p == 2:
        for i in sorted(out):
            b = 0
            for j, v in out[i].items():
                if v & 1:
                    b |= 1 << j
            if b:
                vecs.append(b)
    else:
        for i in sorted(out):
            v = [0] * n
            for j, val in out[i].items():
                v[j] = val % p
            if any(v):
                vecs.append(v)
    return vecs


def _cocycle_basis(X, k, p):
    """Basis of ker(delta^k) over GF(p): nullspace of the transposed boundary."""
    n = X.n_cells(k)
    if k == X.dim:
        if p == 2:
            return [1 << i for i in range(n)]
        out = []
        for i in range(n):
            v = [0] * n
            v[i] = 1
            out.append(v)
        return out
    ent = boundary_entries(X, k + 1)
    rows = {}
    for (i, j), v in ent.items():
        rows.setdefault(j, {})[i] = v % p  # constraint per (k+1)-cell j
    if p == 2:
        cons = []
        for j in sorted(rows):
            b = 0
            for i, v in rows[j].items():
                if v & 1:
                    b |= 1 << i
            if b:
                cons.append(b)
        # fully reduced row echelon of the constraints; pivot rows keep zeros
        # at every other pivot column, so one reduction pass is complete
        pivots = {}  # pivot column -> row bitmask
        for b in cons:
            row = b
            for c, r in pivots.items():
                if (row >> c) & 1:
                    row ^= r
            if not row:
                continue
            lead = (row & -row).bit_length() - 1
            for c in list(pivots):
                if (pivots[c] >> lead) & 1:
                    pivots[c] ^= row
            pivots[lead] = row
        basis = []
        for i in range(n):
            if i in pivots:
                continue
            vec = 1 << i
            for pc, row in pivots.items():
                if (row >> i) & 1:
                    vec |= 1 << pc
            basis.append(vec)
        for b in basis:  # cheap guard on the kernel construction
            for c in cons:
                assert bin(b & c).count("1") % 2 == 0
        return basis
    # odd prime: dense RREF then kernel
    cons = []
    for j in sorted(rows):
        v = [0] * n
        for i, val in rows[j].items():
            v[i] = val % p
        if any(v):
            cons.append(v)
    red = ModPReducer(p, n)
    for v in cons:
        red.insert(v)
    pivot_cols = sorted(red.pivots)
    free_cols = [j for j in range(n) if j not in red.pivots]
    basis = []
    for fc in free_cols:
        vec = [0] * n
        vec[fc] = 1
        for pc in reversed(pivot_cols):
            row = red.pivots[pc][0]
            s = sum(row[j] * vec[j] for j in range(pc + 1, n)) % p
            vec[pc] = (-s) % p
        basis.append(vec)
    for b in basis:
        for c in cons:
            assert sum(x * y for x, y in zip(b, c)) % p == 0
    return basis


def cohomology_basis(X, m):
    """Per-degree generating cochains of H^k(X; Z/m) with their orders.

    For prime m this is a full basis (order m throughout).  For composite m
    only degrees 0 and dim are supported, through explicit generators with
    annihilator orders; other degrees raise CompositeModulus.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if _is_prime(m):
        out = []
        for k in range(X.dim + 1):
            solver = cochain_solver(X, k, m)
            out.append(tuple((rep, m) for rep in solver.reps))
        return out
    out = []
    for k in range(X.dim + 1):
        if k == 0:
            comps = _component_indicators(X)
            out.append(tuple((tuple(v), m) for v in comps))
        elif k == X.dim:
            out.append(_top_composite_generators(X, m))
        else:
            out.append(None)
    return out


def _component_indicators(X):
    n = X.n_cells(0)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    if X.dim >= 1:
        for e in X.faces[1]:
            a, b = find(e[0]), find(e[1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    out = []
    for root in sorted(comps):
        v = [0] * n
        for i in comps[root]:
            v[i] = 1
        out.append(v)
    return out


def _top_composite_generators(X, m):
    from .delta_complex import fundamental_cycle, is_closed

    if not is_closed(X):
        raise NotClosed("top-degree generators need a closed complex")
    cyc = fundamental_cycle(X)
    if cyc is None:
        raise NonOrientable(
            "composite-modulus top generators are only computed for "
            "orientable complexes"
        )
    n = X.n_cells(X.dim)
    gen = [0] * n
    gen[0] = cyc[0] % m  # pairs to a unit against the fundamental cycle
    return ((tuple(gen), m),)


@lru_cache(maxsize=None)
def cochain_solver(X, k, p):
    if not _is_prime(p):
        raise CompositeModulus("cochain bases are computed over prime moduli")
    return CochainSolver(X, k, p)
