"""Delta-complex triangulations: representation, generators, and surgeries.

A complex stores, for each dimension k >= 1, a tuple of simplices; simplex i
is the tuple of its k+1 face indices into dimension k-1, entry j being the
face that omits ordered vertex j.  All values are immutable and hashable, so
results of the expensive computations are cached per complex.

The generators cover the triangulable catalog primes; connected sums and
products realize the # and x operations on triangulations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from . import exact_algebra
from .errors import (
    BadLensParams,
    DimensionOverflow,
    MalformedComplex,
    NoTriangulation,
    NotClosed,
    ParseError,
    UnknownGenerator,
)


class DeltaComplex:
    """Immutable ordered semi-simplicial complex."""

    __slots__ = ("dim", "n_vertices", "faces", "_hash")

    def __init__(self, n_vertices, faces_by_dim):
        faces = tuple(
            tuple(tuple(int(i) for i in f) for f in level)
            for level in faces_by_dim
        )
        self.n_vertices = int(n_vertices)
        self.dim = len(faces)
        self.faces = ((),) + faces  # faces[k] valid for 1 <= k <= dim
        self._check()
        self._hash = hash((self.n_vertices, self.faces))

    def _check(self):
        if self.n_vertices <= 0:
            raise MalformedComplex("complex needs at least one vertex")
        for k in range(1, self.dim + 1):
            level = self.faces[k]
            if not level:
                raise MalformedComplex("dimension %d has no simplices" % k)
            below = self.n_cells(k - 1)
            for s, fs in enumerate(level):
                if len(fs) != k + 1:
                    raise MalformedComplex(
                        "simplex (%d,%d) has %d faces, expected %d"
                        % (k, s, len(fs), k + 1)
                    )
                for f in fs:
                    if not 0 <= f < below:
                        raise MalformedComplex(
                            "simplex (%d,%d) face index %d out of range"
                            % (k, s, f)
                        )
                if k >= 2:
                    lower = self.faces[k - 1]
                    for j in range(k + 1):
                        for i in range(j):
                            if lower[fs[j]][i] != lower[fs[i]][j - 1]:
                                raise MalformedComplex(
                                    "simplicial identity fails at simplex "
                                    "(%d,%d): d_%d d_%d != d_%d d_%d"
                                    % (k, s, i, j, j - 1, i)
                                )

    def n_cells(self, k):
        if k == 0:
            return self.n_vertices
        if 1 <= k <= self.dim:
            return len(self.faces[k])
        return 0

    def cell_counts(self):
        return tuple(self.n_cells(k) for k in range(self.dim + 1))

    def __eq__(self, other):
        return (
            isinstance(other, DeltaComplex)
            and self.n_vertices == other.n_vertices
            and self.faces == other.faces
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "DeltaComplex(dim=%d, cells=%s)" % (self.dim, self.cell_counts())


@dataclass(frozen=True)
class ClosedCheckReport:
    is_closed_pseudo_3_manifold: bool
    is_closed: bool  # codimension-1 double incidence in the complex's own dim
    connected: bool
    orientable: bool
    euler_characteristic: int
    offending_faces: tuple
    n_components: int


def euler_characteristic(X):
    return sum(
        (1 if k % 2 == 0 else -1) * X.n_cells(k) for k in range(X.dim + 1)
    )


@lru_cache(maxsize=None)
def _codim1_incidence(X):
    """For each codimension-1 cell, the list of (top cell, face position)."""
    inc = [[] for _ in range(X.n_cells(X.dim - 1))]
    for t, fs in enumerate(X.faces[X.dim]):
        for pos, f in enumerate(fs):
            inc[f].append((t, pos))
    return tuple(tuple(x) for x in inc)


def is_closed(X):
    if X.dim < 1:
        return False
    return all(len(v) == 2 for v in _codim1_incidence(X))


@lru_cache(maxsize=None)
def validate(X):
    """Closedness, connectivity, orientability, and Euler characteristic.

    Connectivity is read off the rank of H^0 and orientability off the
    H_dim(X; Z) = Z test, both through the exact-algebra module.
    """
    offenders = tuple(
        i for i, v in enumerate(_codim1_incidence(X)) if len(v) != 2
    ) if X.dim >= 1 else ()
    closed = X.dim >= 1 and not offenders
    integral = exact_algebra.homology(X, 0)
    n_comp = integral.betti(0)
    orientable = integral.betti(X.dim) == 1 and not integral.torsion(X.dim)
    if X.dim == 0:
        orientable = True
    return ClosedCheckReport(
        is_closed_pseudo_3_manifold=bool(closed and X.dim == 3),
        is_closed=bool(closed),
        connected=n_comp == 1,
        orientable=orientable,
        euler_characteristic=euler_characteristic(X),
        offending_faces=offenders,
        n_components=n_comp,
    )


@lru_cache(maxsize=None)
def fundamental_cycle(X):
    """Orientation signs of the top cells, or None if non-orientable.

    Signs are propagated across shared codimension-1 faces; the result is an
    explicit integral fundamental cycle (checked to lie in ker of the top
    boundary map) for closed orientable complexes.
    """
    if not is_closed(X):
        return None
    nt = X.n_cells(X.dim)
    signs = [0] * nt
    for start in range(nt):
        if signs[start]:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for pos, f in enumerate(X.faces[X.dim][t]):
                for (t2, pos2) in _codim1_incidence(X)[f]:
                    if t2 == t and pos2 == pos:
                        continue
                    want = -signs[t] * (-1) ** pos * (-1) ** pos2
                    if signs[t2] == 0:
                        signs[t2] = want
                        stack.append(t2)
                    elif signs[t2] != want:
                        return None
    # guard: the signed sum of top cells must be a cycle
    ent = exact_algebra.boundary_entries(X, X.dim)
    acc = {}
    for (i, j), v in ent.items():
        acc[i] = acc.get(i, 0) + v * signs[j]
    if any(acc.values()):
        return None
    return tuple(signs)


# ---------------------------------------------------------------------------
# constructors


def from_facets(facets):
    """Ordered simplicial complex from top-dimensional facets.

    Vertex labels must be sortable; every face of every facet is included,
    cells are sorted lexicographically by vertex tuple, which fixes the face
    maps deterministically.
    """
    X, _ = _from_facets_cells(facets)
    return X


def _from_facets_cells(facets):
    facets = [tuple(sorted(f)) for f in facets]
    if not facets:
        raise MalformedComplex("no facets")
    cells = {}
    for f in facets:
        if len(set(f)) != len(f):
            raise MalformedComplex("facet with repeated vertex: %r" % (f,))
        k = len(f) - 1
        stack = [f]
        seen = {f}
        cells.setdefault(k, set()).add(f)
        while stack:
            cur = stack.pop()
            if len(cur) == 1:
                continue
            for i in range(len(cur)):
                sub = cur[:i] + cur[i + 1 :]
                cells.setdefault(len(sub) - 1, set()).add(sub)
                if sub not in seen:
                    seen.add(sub)
                    stack.append(sub)
    dim = max(cells)
    for k in range(dim + 1):
        cells.setdefault(k, set())
    by_dim = [sorted(cells[k]) for k in range(dim + 1)]
    index = [{c: i for i, c in enumerate(level)} for level in by_dim]
    faces = []
    for k in range(1, dim + 1):
        level = []
        for c in by_dim[k]:
            level.append(
                tuple(index[k - 1][c[:i] + c[i + 1 :]] for i in range(k + 1))
            )
        faces.append(level)
    return DeltaComplex(len(by_dim[0]), faces), by_dim


def point():
    return from_facets([(0,)])


def interval():
    return from_facets([(0, 1)])


def circle(n_edges=1):
    """Triangulated circle; n_edges=1 gives the one-vertex loop."""
    if n_edges == 1:
        return DeltaComplex(1, [[(0, 0)]])
    if n_edges == 3:
        return from_facets([(0, 1), (1, 2), (0, 2)])
    raise ValueError("only 1- and 3-edge circles are provided")


def sphere2():
    return from_facets([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


_RP2_FACETS = (
    (1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
    (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6),
)


def projective_plane():
    """Six-vertex triangulation of the projective plane."""
    return from_facets(_RP2_FACETS)


# --- products (shuffle / staircase triangulation) --------------------------


def _lattice_paths(p, q):
    """Monotone paths (0,0) -> (p,q), steps right/up/diagonal, lex order."""
    out = []

    def go(x, y, acc):
        if x == p and y == q:
            out.append(tuple(acc))
            return
        if x < p and y < q:
            acc.append((x + 1, y + 1))
            go(x + 1, y + 1, acc)
            acc.pop()
        if x < p:
            acc.append((x + 1, y))
            go(x + 1, y, acc)
            acc.pop()
        if y < q:
            acc.append((x, y + 1))
            go(x, y + 1, acc)
            acc.pop()

    go(0, 0, [(0, 0)])
    return out


@lru_cache(maxsize=None)
def _paths_cached(p, q):
    return tuple(_lattice_paths(p, q))


def product(A, B):
    """Staircase triangulation of |A| x |B|."""
    X, _ = _product_labeled(A, B)
    return X


def _product_labeled(A, B):
    if A.dim + B.dim > 4:
        raise DimensionOverflow(
            "product dimension %d exceeds the supported 4" % (A.dim + B.dim)
        )
    dim = A.dim + B.dim
    labels = [[] for _ in range(dim + 1)]
    for p in range(A.dim + 1):
        for q in range(B.dim + 1):
            paths = _paths_cached(p, q)
            for ia in range(A.n_cells(p)):
                for ib in range(B.n_cells(q)):
                    for ch in paths:
                        labels[len(ch) - 1].append((p, ia, q, ib, ch))
    for level in labels:
        level.sort()
    index = [
        {lab: i for i, lab in enumerate(level)} for level in labels
    ]
    faces = []
    for n in range(1, dim + 1):
        level = []
        for (p, ia, q, ib, ch) in labels[n]:
            fs = []
            for l in range(n + 1):
                ch2 = ch[:l] + ch[l + 1 :]
                a, b = ch[l]
                xs = {x for x, _ in ch2}
                ys = {y for _, y in ch2}
                np_, nia = p, ia
                nq, nib = q, ib
                if a not in xs:
                    nia = A.faces[p][ia][a] if p >= 1 else ia
                    np_ = p - 1
                    ch2 = tuple(
                        (x - 1 if x > a else x, y) for x, y in ch2
                    )
                if b not in ys:
                    nib = B.faces[q][ib][b] if q >= 1 else ib
                    nq = q - 1
                    ch2 = tuple(
                        (x, y - 1 if y > b else y) for x, y in ch2
                    )
                fs.append(index[n - 1][(np_, nia, nq, nib, tuple(ch2))])
            level.append(tuple(fs))
        faces.append(level)
    X = DeltaComplex(len(labels[0]), faces)
    return X, tuple(tuple(level) for level in labels)


# --- barycentric subdivision ------------------------------------------------


def _flags_of(k):
    """Chains of position subsets S_0 < ... < S_r = {0..k}, all lengths."""
    full = tuple(range(k + 1))
    out = []

    def go(top, acc):
        out.append(tuple(acc))
        subs = _proper_subsets(top)
        for s in subs:
            acc.insert(0, s)
            go(s, acc)
            acc.pop(0)

    go(full, [full])
    return out


@lru_cache(maxsize=None)
def _proper_subsets(t):
    items = list(t)
    n = len(items)
    out = []
    for mask in range(1, (1 << n) - 1):
        out.append(tuple(items[i] for i in range(n) if (mask >> i) & 1))
    out.sort(key=lambda s: (len(s), s))
    return tuple(out)


@lru_cache(maxsize=None)
def _flags_cached(k):
    return tuple(_flags_of(k))


def cell_of_subset(X, k, i, keep):
    """Face of cell (k, i) spanned by the given ordered vertex positions."""
    cur_dim, cur = k, i
    for pos in sorted(set(range(k + 1)) - set(keep), reverse=True):
        cur = X.faces[cur_dim][cur][pos]
        cur_dim -= 1
    return cur_dim, cur


def barycentric(X):
    B, _ = _barycentric_labeled(X)
    return B


def _barycentric_labeled(X):
    """Barycentric subdivision; cells are (carrier cell, position flag).

    The flag is a strictly increasing chain of vertex-position subsets of the
    carrier, ending at the full set; bary vertices are ordered by subset
    size, so every induced map of flags is order-preserving.
    """
    labels = [[] for _ in range(X.dim + 1)]
    for k in range(X.dim + 1):
        for i in range(X.n_cells(k)):
            for flag in _flags_cached(k):
                labels[len(flag) - 1].append((k, i, flag))
    for level in labels:
        level.sort()
    index = [{lab: n for n, lab in enumerate(level)} for level in labels]
    faces = []
    for n in range(1, X.dim + 1):
        level = []
        for (k, i, flag) in labels[n]:
            fs = []
            for drop in range(n + 1):
                sub = flag[:drop] + flag[drop + 1 :]
                if drop < n:
                    fs.append(index[n - 1][(k, i, sub)])
                else:
                    top = flag[n - 1]
                    k2, i2 = cell_of_subset(X, k, i, top)
                    rank = {pos: r for r, pos in enumerate(top)}
                    sub2 = tuple(
                        tuple(sorted(rank[p] for p in S)) for S in sub
                    )
                    fs.append(index[n - 1][(k2, i2, sub2)])
            level.append(tuple(fs))
        faces.append(level)
    B = DeltaComplex(len(labels[0]), faces)
    return B, tuple(tuple(level) for level in labels)


# --- quotients, unions, surgeries -------------------------------------------


def quotient(X, pairs):
    """Identify cells positionally; identifications propagate to faces.

    `pairs` is an iterable of (dim, index_a, index_b).  The result reindexes
    each dimension by the ordered surviving representatives.
    """
    parent = [list(range(X.n_cells(k))) for k in range(X.dim + 1)]

    def find(k, a):
        pk = parent[k]
        while pk[a] != a:
            pk[a] = pk[pk[a]]
            a = pk[a]
        return a

    queue = [tuple(p) for p in pairs]
    while queue:
        k, a, b = queue.pop()
        ra, rb = find(k, a), find(k, b)
        if ra == rb:
            continue
        if rb < ra:
            ra, rb = rb, ra
        parent[k][rb] = ra
        if k >= 1:
            fa = X.faces[k][a]
            fb = X.faces[k][b]
            for l in range(k + 1):
                queue.append((k - 1, fa[l], fb[l]))
    reps = []
    remap = []
    for k in range(X.dim + 1):
        rs = sorted({find(k, i) for i in range(X.n_cells(k))})
        reps.append(rs)
        remap.append({r: n for n, r in enumerate(rs)})
    faces = []
    for k in range(1, X.dim + 1):
        level = []
        for r in reps[k]:
            level.append(
                tuple(remap[k - 1][find(k - 1, f)] for f in X.faces[k][r])
            )
        faces.append(level)
    return DeltaComplex(len(reps[0]), faces)


def disjoint_union(A, B):
    X, _ = _disjoint_with_offsets([A, B])
    return X


def _disjoint_with_offsets(pieces):
    dim = max(p.dim for p in pieces)
    if any(p.dim != dim for p in pieces):
        raise MalformedComplex("disjoint union needs equal dimensions")
    offsets = []
    counts = [0] * (dim + 1)
    for p in pieces:
        offsets.append(tuple(counts))
        for k in range(dim + 1):
            counts[k] += p.n_cells(k)
    faces = []
    for k in range(1, dim + 1):
        level = []
        for p, off in zip(pieces, offsets):
            for fs in p.faces[k]:
                level.append(tuple(f + off[k - 1] for f in fs))
        faces.append(level)
    return DeltaComplex(counts[0], faces), offsets


def remove_top_cell(X, t):
    faces = [list(level) for level in X.faces[1:]]
    del faces[X.dim - 1][t]
    return DeltaComplex(X.n_vertices, faces)


def find_embedded_top_cell(X):
    """Index of a top cell all of whose faces (all dims) are distinct cells."""
    k = X.dim
    full = tuple(range(k + 1))
    subsets = [s for s in _proper_subsets(full)] if k >= 1 else []
    for t in range(X.n_cells(k)):
        seen = set()
        ok = True
        for s in subsets:
            c = cell_of_subset(X, k, t, s)
            if c in seen:
                ok = False
                break
            seen.add(c)
        if ok:
            return t
    return None


def connected_sum(A, B):
    """Connected sum: drop one embedded tetrahedron from each and glue.

    Complexes without an embedded tetrahedron are barycentrically subdivided
    first (after which one always exists).  The four exposed triangles are
    identified positionally, which fixes the gluing deterministically.
    """
    pieces = []
    cells = []
    for X in (A, B):
        rep = validate(X)
        if X.dim != 3 or not rep.is_closed_pseudo_3_manifold:
            raise NotClosed("connected summands must be closed 3-complexes")
        if not rep.connected:
            raise NotClosed("connected summands must be connected")
        t = find_embedded_top_cell(X)
        if t is None:
            X = barycentric(X)
            t = find_embedded_top_cell(X)
            assert t is not None
        pieces.append(X)
        cells.append(t)
    (A1, B1), (tA, tB) = pieces, cells
    fA = A1.faces[3][tA]
    fB = B1.faces[3][tB]
    U, offs = _disjoint_with_offsets([remove_top_cell(A1, tA),
                                      remove_top_cell(B1, tB)])
    pairs = [(2, fA[l], offs[1][2] + fB[l]) for l in range(4)]
    return quotient(U, pairs)


# --- mapping torus (for the twisted sphere bundle) ---------------------------


def _cell_map_from_vertex_bijection(cells_by_dim, index_by_dim, bij):
    """(dim, idx) -> (dim, idx2, position map) for a facet-complex symmetry."""
    out = {}
    for k, level in enumerate(cells_by_dim):
        for i, verts in enumerate(level):
            image = tuple(sorted(bij[v] for v in verts))
            i2 = index_by_dim[k][image]
            pos = tuple(image.index(bij[v]) for v in verts)
            out[(k, i)] = (i2, pos)
    return out


def _induced_bary_automorphism(bary_labels, cell_map):
    """Map on barycentric cells induced by a cell map of the base complex."""
    index = [
        {lab: n for n, lab in enumerate(level)} for level in bary_labels
    ]
    out = []
    for n, level in enumerate(bary_labels):
        m = []
        for (k, i, flag) in level:
            i2, pos = cell_map[(k, i)]
            flag2 = tuple(tuple(sorted(pos[p] for p in S)) for S in flag)
            m.append(index[n][(k, i2, flag2)])
        out.append(tuple(m))
    return out


def mapping_torus_of_sphere_swap():
    """Mapping torus of the vertex-swapping automorphism of the 2-sphere.

    The swap of two vertices of the boundary tetrahedron reverses
    orientation, so this is the twisted 2-sphere bundle over the circle.
    The automorphism only becomes order-preserving on the barycentric
    subdivision, which is where the top and bottom copies are glued.
    """
    S, cells = _from_facets_cells(
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    )
    index = [{c: i for i, c in enumerate(level)} for level in cells]
    bij = {0: 1, 1: 0, 2: 2, 3: 3}
    cmap = _cell_map_from_vertex_bijection(cells, index, bij)
    K, blabels = _barycentric_labeled(S)
    phi = _induced_bary_automorphism(blabels, cmap)
    P, plabels = _product_labeled(K, interval())
    copy_idx = {}  # (interval vertex, dim, base cell) -> product cell
    for n, level in enumerate(plabels):
        for idx, (p, ia, q, ib, ch) in enumerate(level):
            if q == 0:
                copy_idx[(ib, n, ia)] = idx
    pairs = []
    for t in range(K.n_cells(2)):
        top = copy_idx[(1, 2, t)]
        bottom = copy_idx[(0, 2, phi[2][t])]
        pairs.append((2, top, bottom))
    return quotient(P, pairs)


# --- lens spaces --------------------------------------------------------------


def lens_space(p, q):
    """L(p, q) from the 2p-tetrahedron bipyramid with a rotation-q gluing.

    Each slice of the solid bipyramid over a p-gon is a pair of tetrahedra
    (apex, center, rim_i, rim_{i+1}); the upper boundary triangle of slice i
    is glued to the lower boundary triangle of slice i+q.  All gluings are
    positional, and correctness is enforced downstream by the homology and
    duality checks rather than claimed canonical.
    """
    if p < 2 or gcd(p, q) != 1:
        raise BadLensParams("lens space needs coprime (p, q) with p >= 2")
    tet, _ = _from_facets_cells([(0, 1, 2, 3)])
    U, offs = _disjoint_with_offsets([tet] * (2 * p))

    def tri(piece, face):
        # face maps of the standard tetrahedron give its triangle indices
        return offs[piece][2] + tet.faces[3][0][face]

    pairs = []
    for i in range(p):
        up, lo = 2 * i, 2 * i + 1
        up_next = 2 * ((i + 1) % p)
        lo_next = 2 * ((i + 1) % p) + 1
        lo_twist = 2 * ((i + q) % p) + 1
        pairs.append((2, tri(up, 0), tri(lo, 0)))        # equatorial fan
        pairs.append((2, tri(up, 2), tri(up_next, 3)))   # upper wall
        pairs.append((2, tri(lo, 2), tri(lo_next, 3)))   # lower wall
        pairs.append((2, tri(up, 1), tri(lo_twist, 1)))  # boundary rotation
    return quotient(U, pairs)


# --- catalog generators -------------------------------------------------------

_GENERATOR_NAMES = ("S3", "S1xS2", "S1~S2", "T3", "RP2xS1", "L")
_CATALOG_ONLY = ("Poinc", "Q8")


@lru_cache(maxsize=None)
def generator(name, *params):
    """Validated closed triangulation of a catalog prime."""
    if name == "S3":
        X = from_facets(
            [tuple(c for c in range(5) if c != i) for i in range(5)]
        )
    elif name == "S1xS2":
        X = product(sphere2(), circle(3))
    elif name == "S1~S2":
        X = mapping_torus_of_sphere_swap()
    elif name == "T3":
        X = product(circle(1), product(circle(1), circle(1)))
    elif name == "RP2xS1":
        X = product(projective_plane(), circle(3))
    elif name == "L":
        if len(params) != 2:
            raise BadLensParams("L needs parameters (p, q)")
        X = lens_space(*params)
    elif name in _CATALOG_ONLY:
        raise NoTriangulation("%s is catalog-only, no triangulation ships" % name)
    else:
        raise UnknownGenerator("unknown generator %r" % name)
    rep = validate(X)
    if not (rep.is_closed_pseudo_3_manifold and rep.connected):
        raise MalformedComplex("generator %s failed its closedness check" % name)
    return X


# ---------------------------------------------------------------------------
# DCX text format


def to_dcx(X):
    lines = ["dcx 1", "dim %d" % X.dim]
    for k in range(X.dim + 1):
        n = X.n_cells(k)
        lines.append("%d %d" % (k, n))
        if k == 0:
            lines.extend([""] * n)
        else:
            for fs in X.faces[k]:
                lines.append(" ".join(str(f) for f in fs))
    return "\n".join(lines) + "\n"


def from_dcx(text):
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    pos = 0

    def take(expected=None):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError("unexpected end of DCX input", position=pos)
        line = lines[pos]
        pos += 1
        return line

    header = take()
    if header.strip() != "dcx 1":
        raise ParseError("DCX header must be 'dcx 1'", position=0)
    dim_line = take().split()
    if len(dim_line) != 2 or dim_line[0] != "dim" or not dim_line[1].isdigit():
        raise ParseError("bad dim line", position=1)
    dim = int(dim_line[1])
    n_vertices = None
    faces = []
    for k in range(dim + 1):
        head = take().split()
        if len(head) != 2 or head[0] != str(k) or not head[1].isdigit():
            raise ParseError("bad section header for dimension %d" % k,
                             position=pos - 1)
        count = int(head[1])
        if count <= 0:
            raise ParseError("dimension %d has no simplices" % k,
                             position=pos - 1)
        if k == 0:
            for _ in range(count):
                if take().strip() != "":
                    raise ParseError("vertex lines must be empty",
                                     position=pos - 1)
            n_vertices = count
        else:
            level = []
            for _ in range(count):
                toks = take().split()
                if len(toks) != k + 1:
                    raise ParseError(
                        "expected %d face indices" % (k + 1), position=pos - 1
                    )
                try:
                    level.append(tuple(int(t) for t in toks))
                except ValueError:
                    raise ParseError("non-integer face index", position=pos - 1)
            faces.append(level)
    if pos != len(lines):
        raise ParseError("trailing content after final section", position=pos)
    return DeltaComplex(n_vertices, faces)
