"""Category values, detectability, and machine-checkable certificates.

The engine evaluates the three-valued category formula on connected-sum
expressions and backs every answer with a certificate tree over a small rule
kernel:

  R1  a nonzero positive-degree class has weight >= 1
  R2  a map pulling a class back nontrivially transports its weight bound
  R3  weights add across nonzero cup products
  R4  on an aspherical space a nonzero degree-s class has weight >= s
  R5  for finite fundamental groups every nonzero top class has weight 3

plus structural upper-bound nodes (dimension, wedge pushout, product
inequality, covering).  Leaves are premises tagged Verified (recomputed from
triangulations by the checker) or CatalogFact (recorded topological facts,
listed for audit).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import gcd

from . import cohomology_ring as ring
from . import delta_complex as dc
from . import exact_algebra as ea
from . import manifold_algebra as ma
from . import pi1
from .errors import LscatError, NonOrientable, ParseError


# ---------------------------------------------------------------------------
# claims and certificate nodes


@dataclass(frozen=True)
class Claim:
    kind: str
    fields: tuple  # ordered (key, value-string) pairs

    def get(self, key, default=None):
        for k, v in self.fields:
            if k == key:
                return v
        return default

    def to_text(self):
        parts = [self.kind]
        parts.extend("%s=%s" % (k, v) for k, v in self.fields)
        return ";".join(parts)

    @staticmethod
    def from_text(text):
        if text == "-":
            return None
        parts = text.split(";")
        fields = []
        for p in parts[1:]:
            k, _, v = p.partition("=")
            fields.append((k, v))
        return Claim(parts[0], tuple(fields))


def claim(kind, **kw):
    return Claim(kind, tuple((k, str(v)) for k, v in kw.items()))


VERIFIED = "Verified"
CATALOG = "CatalogFact"
STRUCTURAL = "Structural"


@dataclass(frozen=True)
class Node:
    rule: str
    bound: int
    premise: str
    claim: Claim | None = None
    children: tuple = ()
    tensor_level: bool = False


def evidence(cl, premise=CATALOG, tensor_level=False):
    return Node("EVIDENCE", 0, premise, cl, (), tensor_level)


@dataclass(frozen=True)
class DetectRoute:
    ring_name: str
    class_desc: str
    premise: str
    claim_: Claim | None = None


@dataclass(frozen=True)
class DetectVerdict:
    status: str  # detectable | unknown | not_applicable
    routes: tuple = ()
    reason: str = ""
    note: str = ""


@dataclass(frozen=True)
class CatResult:
    space: str
    lo: int
    hi: int
    upper: Node
    lower: Node
    detect: DetectVerdict
    kind: str = "cat"
    n: int = 0

    @property
    def value(self):
        return self.lo if self.lo == self.hi else None


# ---------------------------------------------------------------------------
# space references


def _expr_space(expr):
    return "expr:" + expr.compact()


@lru_cache(maxsize=None)
def _space_complex_cached(ref):
    if ref.startswith("expr:"):
        return ma.triangulate_expr(ma.parse_expr(ref[5:]))
    if ref.startswith("dcx:"):
        with open(ref[4:], "r", encoding="utf-8") as fh:
            return dc.from_dcx(fh.read())
    raise LscatError("unknown space reference %r" % ref)


def space_complex(ref):
    return _space_complex_cached(ref)


# ---------------------------------------------------------------------------
# detecting-class cochains (shared by the builder and the checker)


def _top_indicator(X, m):
    v = [0] * X.n_cells(X.dim)
    v[0] = 1 % m
    return ring.Cochain(X.dim, tuple(v))


def _circle_class(m):
    # the one-vertex circle: a single edge spanning H^1
    return ring.Cochain(1, (1 % m,))


def _detecting_cochain(X, spec_kind, spec_value, m):
    """Reconstruct the degree-3 detecting cochain named in a claim."""
    if spec_kind == "ucell":
        v = [0] * X.n_cells(X.dim)
        v[int(spec_value)] = 1 % m
        return ring.Cochain(X.dim, tuple(v))
    if spec_kind == "ubasis":
        solver = ea.cochain_solver(X, X.dim, m)
        return ring.Cochain(X.dim, solver.reps[int(spec_value)])
    if spec_kind == "ufactors":
        R = ring.ring_table_cached(X, m)
        factors = _parse_factors(spec_value)
        cochain = None
        for d, i in factors:
            rep = R.reps[d][i]
            cochain = rep if cochain is None else ring.cup_product(
                X, cochain, rep, m
            )
        return cochain
    raise LscatError("unknown detecting-class spec %r" % spec_kind)


def _parse_factors(text):
    out = []
    for part in text.split(","):
        d, _, i = part.partition(":")
        out.append((int(d), int(i)))
    return tuple(out)


def _format_factors(factors):
    return ",".join("%d:%d" % f for f in factors)


# ---------------------------------------------------------------------------
# weight-3 subtrees for cat-3 primes


def _prime_tree(summand, prefer_mod2=False):
    """Lower-bound tree, coefficient ring, and detecting-class spec for a
    single cat-3 prime summand, on that prime's own space."""
    rec = ma.record_of(summand)
    space = "expr:" + ma.ManifoldExpr((summand,)).compact()
    triang = rec.triangulable
    if rec.pi1.tag == "finite":
        d = rec.pi1.order
        use_mod2 = prefer_mod2 and d % 2 == 0
        coeffs = 2 if use_mod2 else d
        kids = [
            evidence(claim("catalog", fact="finite-pi1", space=space, order=d))
        ]
        if use_mod2:
            kids.append(
                evidence(claim("catalog", fact="even-order-mod2-route",
                               space=space, order=d))
            )
        if triang:
            X = space_complex(space)
            u = _top_indicator(X, coeffs)
            val = ring.kronecker_top(X, u, coeffs)
            assert gcd(val, coeffs) == 1
            cl = claim("top-order", space=space, coeffs=coeffs, ucell=0,
                       pair=val)
            premise = VERIFIED
        else:
            cl = claim("catalog", fact="h3-full-order", space=space,
                       coeffs=coeffs)
            premise = CATALOG
        node = Node("R5", 3, premise, cl, tuple(kids))
        return node, coeffs, ("ucell", "0"), "nonzero class of H^3(.;Z/%d)" % coeffs
    if rec.aspherical:
        kids = [evidence(claim("catalog", fact="aspherical", space=space))]
        if triang:
            cl = claim("h-nonzero", space=space, coeffs=2, degree=3)
            premise = VERIFIED
        else:
            cl = claim("catalog", fact="h3-nonzero", space=space, coeffs=2)
            premise = CATALOG
        node = Node("R4", 3, premise, cl, tuple(kids))
        return node, 2, ("ubasis", "0"), "nonzero degree-3 class over Z/2"
    # irreducible, infinite, pi2 != 0: the non-orientable cup-length route
    X = space_complex(space)
    R = ring.ring_table_cached(X, 2)
    length, witness = ring.cup_length(R)
    assert length == 3 and witness is not None
    cl = claim(
        "cup-witness", space=space, coeffs=2,
        factors=_format_factors(witness.factors),
    )
    kids = tuple(Node("R1", 1, STRUCTURAL) for _ in witness.factors)
    node = Node("R3", 3, VERIFIED, cl, kids)
    return node, 2, ("ufactors", _format_factors(witness.factors)), (
        "three-fold cup product over Z/2"
    )


def _pick_collapse_target(f):
    """Deterministic prime summand to collapse onto for composite sums."""
    candidates = []
    for s, r in zip(f.expr.summands, f.records):
        if r.pi1.tag in ("finite", "infinite_nonfree"):
            if not f.orientable and r.has_odd_torsion:
                continue
            candidates.append(s)
    return candidates[0] if candidates else None


# ---------------------------------------------------------------------------
# the category of an expression


def ls_category(expr):
    """Category of a closed 3-manifold given as a connected-sum expression."""
    if isinstance(expr, str):
        expr = ma.parse_expr(expr)
    f = ma.facts(expr)
    space = _expr_space(f.expr)
    tag = f.pi1.tag
    detect = detectability(f.expr)
    if tag == "trivial":
        upper = Node(
            "SPHERE", 1, CATALOG,
            claim("catalog", fact="trivial-pi1-homotopy-sphere", space=space),
        )
        if f.triangulable:
            lower = Node(
                "R1", 1, VERIFIED,
                claim("h-nonzero", space=space, coeffs=2, degree=3),
            )
        else:
            lower = Node(
                "R1", 1, CATALOG,
                claim("catalog", fact="h3-nonzero", space=space, coeffs=2),
            )
        return CatResult(space, 1, 1, upper, lower, detect)
    if tag == "free":
        upper = Node(
            "PUSHOUT", 2, CATALOG,
            claim("catalog", fact="free-pi1-wedge-pushout", space=space,
                  rank=f.pi1.rank),
        )
        lower = _cup_length_tree(space, need=2)
        return CatResult(space, 2, 2, upper, lower, detect)
    upper = Node("DIM", 3, STRUCTURAL, claim("dimension", d=3))
    lower = _lower3_tree(f, space)
    return CatResult(space, 3, 3, upper, lower, detect)


def _cup_length_tree(space, need):
    X = space_complex(space)
    R = ring.ring_table_cached(X, 2)
    length, witness = ring.cup_length(R)
    assert witness is not None and length >= need
    factors = witness.factors[:need] if length > need else witness.factors
    # re-check the truncated product is nonzero (prefix of a nonzero product)
    deg, coords = ring.witness_product(R, factors)
    assert any(coords)
    cl = claim(
        "cup-witness", space=space, coeffs=2, factors=_format_factors(factors)
    )
    kids = tuple(Node("R1", 1, STRUCTURAL) for _ in factors)
    return Node("R3", len(factors), VERIFIED, cl, kids)


def _lower3_tree(f, space):
    if f.pi1.tag == "finite":
        node, _, _, _ = _prime_tree(f.expr.summands[0])
        return node
    if f.single:
        node, _, _, _ = _prime_tree(f.expr.summands[0])
        return node
    if f.exceptional_shape:
        kids = (
            evidence(claim("catalog", fact="double-cover-category-3",
                           space=space)),
            evidence(claim("catalog", fact="covering-monotonicity",
                           space=space)),
        )
        return Node("COVER", 3, CATALOG,
                    claim("catalog", fact="double-cover-route", space=space),
                    kids)
    target = _pick_collapse_target(f)
    assert target is not None
    sub, coeffs, _, _ = _prime_tree(target, prefer_mod2=not f.orientable)
    kids = [
        sub,
        evidence(claim(
            "catalog", fact="degree-one-collapse", space=space,
            target="expr:" + ma.ManifoldExpr((target,)).compact(),
            coeffs=coeffs,
        )),
    ]
    if f.triangulable:
        kids.append(evidence(
            claim("h-nonzero", space=space, coeffs=coeffs, degree=3),
            premise=VERIFIED,
        ))
    return Node("R2", 3, STRUCTURAL, None, tuple(kids))


# ---------------------------------------------------------------------------
# detectability


def detectability(expr):
    """Detecting-element verdict; Unknown only for the residual shape.

    The one-directional clause of the classification is respected: the
    engine never answers "not detectable".
    """
    if isinstance(expr, str):
        expr = ma.parse_expr(expr)
    f = ma.facts(expr)
    space = _expr_space(f.expr)
    tag = f.pi1.tag
    if tag == "trivial":
        if f.triangulable:
            cl = claim("h-nonzero", space=space, coeffs=2, degree=3)
            premise = VERIFIED
        else:
            cl = claim("catalog", fact="h3-nonzero", space=space, coeffs=2)
            premise = CATALOG
        return DetectVerdict(
            "detectable",
            (DetectRoute("Z", "generator of the top cohomology", premise, cl),),
        )
    if tag == "free":
        X = space_complex(space)
        R = ring.ring_table_cached(X, 2)
        length, witness = ring.cup_length(R)
        cl = claim("cup-witness", space=space, coeffs=2,
                   factors=_format_factors(witness.factors[:2]
                                           if length > 2 else witness.factors))
        return DetectVerdict(
            "detectable",
            (DetectRoute("Z/2", "two-fold cup product realizing the "
                                "cup-length", VERIFIED, cl),),
        )
    if f.exceptional_shape:
        return DetectVerdict(
            "unknown",
            reason=(
                "non-orientable sum whose non-free summands all carry odd "
                "torsion; the classification proves no converse here"
            ),
            note="orientable double cover has category 3",
        )
    routes = []
    if tag == "finite":
        node, coeffs, uspec, desc = _prime_tree(f.expr.summands[0])
        routes.append(DetectRoute("Z/%d" % coeffs, desc, node.premise,
                                  node.claim))
        d = f.pi1.order
        if d % 2 == 0:
            node2, c2, _, desc2 = _prime_tree(
                f.expr.summands[0], prefer_mod2=True
            )
            routes.append(
                DetectRoute("Z/2", desc2 + " (even order)", node2.premise,
                            node2.claim)
            )
        return DetectVerdict("detectable", tuple(routes))
    if f.single:
        node, coeffs, _, desc = _prime_tree(f.expr.summands[0])
        return DetectVerdict(
            "detectable",
            (DetectRoute("Z/%d" % coeffs, desc, node.premise, node.claim),),
        )
    target = _pick_collapse_target(f)
    sub, coeffs, _, desc = _prime_tree(
        target, prefer_mod2=not f.orientable
    )
    cl = claim(
        "catalog", fact="degree-one-collapse", space=space,
        target="expr:" + ma.ManifoldExpr((target,)).compact(), coeffs=coeffs,
    )
    return DetectVerdict(
        "detectable",
        (DetectRoute(
            "Z/%d" % coeffs,
            "pullback of the %s summand's detecting class along the "
            "collapse map" % ma.ManifoldExpr((target,)).compact(),
            CATALOG, cl,
        ),),
    )


# ---------------------------------------------------------------------------
# Ganea verification


def _detecting_spec(f):
    """(coeffs, uspec) for the detecting class of a detectable expression."""
    tag = f.pi1.tag
    space = _expr_space(f.expr)
    if tag == "trivial":
        return 2, ("ubasis", "0")
    if tag == "free":
        X = space_complex(space)
        R = ring.ring_table_cached(X, 2)
        _, witness = ring.cup_length(R)
        return 2, ("ufactors", _format_factors(witness.factors[:2]))
    if tag == "finite":
        _, coeffs, uspec, _ = _prime_tree(f.expr.summands[0])
        return coeffs, uspec if f.triangulable else ("ucell", "0")
    if f.single:
        _, coeffs, uspec, _ = _prime_tree(f.expr.summands[0])
        return coeffs, uspec
    target = _pick_collapse_target(f)
    _, coeffs, _, _ = _prime_tree(target, prefer_mod2=not f.orientable)
    # the pulled-back class spans H^3 of the sum; any basis generator does
    return coeffs, ("ubasis", "0")


def verify_ganea(expr, n):
    """Category of M x S^n: always cat(M) + 1, with verified premises.

    For n = 1 and triangulable M the product premise is checked two ways:
    on the staircase triangulation of M x S^1 and in the Kunneth tensor
    ring.  For n >= 2 only the tensor ring is available and the premise is
    marked tensor-level.
    """
    if isinstance(expr, str):
        expr = ma.parse_expr(expr)
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    base = ls_category(expr)
    f = ma.facts(expr)
    space = base.space
    value = base.value + 1
    upper = Node(
        "PRODUCT", value, STRUCTURAL,
        claim("product-inequality", space=space, n=n), (base.upper,)
    )
    if f.exceptional_shape:
        kids = (
            evidence(claim("catalog", fact="double-cover-ganea", space=space,
                           n=n)),
        )
        lower = Node("COVER", value, CATALOG,
                     claim("catalog", fact="double-cover-route", space=space),
                     kids)
        detect = DetectVerdict(
            "unknown",
            reason="product with the residual non-orientable shape",
            note="verified through the orientable double cover",
        )
        return CatResult(space, value, value, upper, lower, detect,
                         kind="ganea", n=n)
    coeffs, uspec = _detecting_spec(f)
    sphere_node = Node("R1", 1, STRUCTURAL)
    kids_claims = []
    if f.triangulable and n == 1:
        X = space_complex(space)
        if coeffs != 2 and dc.fundamental_cycle(X) is None:
            raise NonOrientable("odd pairing on a non-orientable space")
        P, labels = dc._product_labeled(X, dc.circle(1))
        u = _detecting_cochain(X, uspec[0], uspec[1], coeffs)
        v = _circle_class(coeffs)
        cross = ring.cross_cochain(labels, u, v, coeffs)
        val = ring.kronecker_top(P, cross, coeffs)
        assert gcd(val, coeffs) == 1
        kids_claims.append((
            claim("cross-pairing", space=space, coeffs=coeffs, n=1,
                  **{uspec[0]: uspec[1]}, pair=val),
            VERIFIED, False,
        ))
    if f.triangulable and ea._is_prime(coeffs):
        cl = claim("kunneth-witness", space=space, coeffs=coeffs, n=n,
                   **{uspec[0]: uspec[1]})
        _verify_kunneth(cl)  # fail fast at build time
        kids_claims.append((cl, VERIFIED, n >= 2))
    if not kids_claims:
        kids_claims.append((
            claim("catalog", fact="kunneth-nonvanishing", space=space,
                  coeffs=coeffs, n=n),
            CATALOG, True,
        ))
    kids = tuple(
        evidence(cl, premise=prem, tensor_level=tl)
        for cl, prem, tl in kids_claims
    )
    lower = Node(
        "R3", value, kids_claims[0][1], kids_claims[0][0],
        (base.lower, sphere_node) + kids,
    )
    detect = DetectVerdict(
        "detectable",
        (DetectRoute("Z/%d" % coeffs,
                     "detecting class of the factor times the sphere class",
                     kids_claims[0][1], kids_claims[0][0]),),
    )
    return CatResult(space, value, value, upper, lower, detect,
                     kind="ganea", n=n)


def _sphere_tensor_check(X, coeffs, uspec, n):
    RM = ring.ring_table_cached(X, coeffs)
    RS = ring.sphere_ring(n, coeffs)
    T = ring.kunneth_tensor(RM, RS)
    if uspec[0] == "ufactors":
        factors = _parse_factors(uspec[1])
    else:
        # any H^3 generator: over a field the ring basis spans them all
        if RM.dim(3) == 0:
            return False
        factors = ((3, 0),)
    # embed the factors as (class x 1) and finish with (1 x sphere class)
    emb = []
    for d, i in factors:
        t = _tensor_index(RM, RS, d, i, 0, 0)
        emb.append((d, t))
    t_s = _tensor_index(RM, RS, 0, 0, n, 0)
    emb.append((n, t_s))
    deg, coords = ring.witness_product(T, tuple(emb))
    return bool(coords) and any(coords)


def _tensor_index(R1, R2, d1, i, d2, j):
    level = []
    for a1 in range(min(d1 + d2, R1.top_degree) + 1):
        a2 = d1 + d2 - a1
        if a2 > R2.top_degree:
            continue
        for ii in range(R1.dim(a1)):
            for jj in range(R2.dim(a2)):
                level.append((a1, ii, a2, jj))
    return level.index((d1, i, d2, j))


# ---------------------------------------------------------------------------
# degree-one maps


@dataclass(frozen=True)
class Degree1Verdict:
    consistent: bool
    reason: str
    cites: tuple


def degree_one_consequences(source, target):
    """Consistency of a hypothetical degree-one map source -> target."""
    if isinstance(source, str):
        source = ma.parse_expr(source)
    if isinstance(target, str):
        target = ma.parse_expr(target)
    fs, ft = ma.facts(source), ma.facts(target)
    if not fs.orientable or not ft.orientable:
        raise NonOrientable(
            "degree-one consequences are stated for oriented manifolds"
        )
    cs = ls_category(source).value
    ct = ls_category(target).value
    if cs >= ct:
        return Degree1Verdict(
            True,
            "cat(source) = %d >= %d = cat(target); no obstruction found"
            % (cs, ct),
            ("category-monotonicity-under-degree-one",),
        )
    cites = ["category-monotonicity-under-degree-one"]
    reason = (
        "cat(source) = %d < %d = cat(target), so no degree-one map exists"
        % (cs, ct)
    )
    if fs.pi1.tag in ("trivial", "free") and ft.pi1.tag not in (
        "trivial", "free"
    ):
        cites.append("free-fundamental-group-descends")
        reason += (
            "; a degree-one image of a free-pi1 manifold would have free pi1"
        )
    return Degree1Verdict(False, reason, tuple(cites))


# ---------------------------------------------------------------------------
# raw complexes


def ls_category_complex(X, ref="dcx:<input>"):
    """Category bounds for a raw closed triangulation.

    Known fundamental-group class gives the exact theorem value with
    premises verified on the given complex; otherwise the result is the
    interval [max(1, mod-2 cup-length), 3] with both traces.
    """
    rep = dc.validate(X)
    if X.dim != 3 or not rep.is_closed_pseudo_3_manifold or not rep.connected:
        raise LscatError(
            "category evaluation needs a closed connected 3-complex"
        )
    cls = pi1.classify_complex(X)
    R = ring.ring_table_cached(X, 2)
    length, witness = ring.cup_length(R)
    if cls.tag == "trivial":
        upper = Node(
            "SPHERE", 1, CATALOG,
            claim("catalog", fact="trivial-pi1-homotopy-sphere", space=ref),
        )
        lower = Node(
            "R1", 1, VERIFIED, claim("h-nonzero", space=ref, coeffs=2, degree=3)
        )
        pcl = claim("pi1-class", space=ref, tag="trivial")
        upper = replace(upper, children=(evidence(pcl, premise=VERIFIED),))
        return CatResult(ref, 1, 1, upper, lower,
                         DetectVerdict("detectable", (DetectRoute(
                             "Z", "top cohomology generator", VERIFIED,
                             lower.claim),)))
    if cls.tag == "free":
        pcl = claim("pi1-class", space=ref, tag="free", rank=cls.rank)
        upper = Node(
            "PUSHOUT", 2, CATALOG,
            claim("catalog", fact="free-pi1-wedge-pushout", space=ref,
                  rank=cls.rank),
            (evidence(pcl, premise=VERIFIED),),
        )
        factors = witness.factors[:2]
        deg, coords = ring.witness_product(R, factors)
        assert any(coords)
        cl = claim("cup-witness", space=ref, coeffs=2,
                   factors=_format_factors(factors))
        lower = Node("R3", 2, VERIFIED, cl,
                     (Node("R1", 1, STRUCTURAL), Node("R1", 1, STRUCTURAL)))
        return CatResult(ref, 2, 2, upper, lower,
                         DetectVerdict("detectable", (DetectRoute(
                             "Z/2", "two-fold cup product", VERIFIED, cl),)))
    if cls.tag in ("finite", "infinite_nonfree"):
        upper = Node("DIM", 3, STRUCTURAL, claim("dimension", d=3))
        pcl = claim("pi1-class", space=ref, tag=cls.tag)
        if cls.tag == "finite" and rep.orientable:
            d = cls.order
            u = _top_indicator(X, d)
            val = ring.kronecker_top(X, u, d)
            assert gcd(val, d) == 1
            lower = Node(
                "R5", 3, VERIFIED,
                claim("top-order", space=ref, coeffs=d, ucell=0, pair=val),
                (evidence(claim("pi1-class", space=ref, tag="finite",
                                order=d), premise=VERIFIED),),
            )
        elif length >= 3:
            cl = claim("cup-witness", space=ref, coeffs=2,
                       factors=_format_factors(witness.factors))
            lower = Node("R3", 3, VERIFIED, cl,
                         tuple(Node("R1", 1, STRUCTURAL)
                               for _ in witness.factors))
        else:
            lower = Node(
                "THEOREM", 3, VERIFIED,
                claim("pi1-class", space=ref, tag=cls.tag),
                (evidence(claim("catalog", fact="nonfree-pi1-category-3",
                                space=ref)),),
            )
        return CatResult(ref, 3, 3, upper, lower,
                         DetectVerdict("not_applicable",
                                       reason="raw triangulation"))
    lo = max(1, length)
    upper = Node("DIM", 3, STRUCTURAL, claim("dimension", d=3))
    if length >= 2:
        cl = claim("cup-witness", space=ref, coeffs=2,
                   factors=_format_factors(witness.factors))
        lower = Node("R3", length, VERIFIED, cl,
                     tuple(Node("R1", 1, STRUCTURAL)
                           for _ in witness.factors))
    else:
        lower = Node("R1", 1, VERIFIED,
                     claim("h-nonzero", space=ref, coeffs=2, degree=3))
    return CatResult(ref, lo, 3, upper, lower,
                     DetectVerdict("not_applicable",
                                   reason="fundamental group class unknown"))


# ---------------------------------------------------------------------------
# certificate checking


@dataclass
class CheckReport:
    ok: bool
    failures: list = field(default_factory=list)
    catalog_facts: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


_KNOWN_CATALOG_FACTS = {
    "trivial-pi1-homotopy-sphere", "free-pi1-wedge-pushout", "finite-pi1",
    "even-order-mod2-route", "h3-full-order", "h3-nonzero", "aspherical",
    "degree-one-collapse", "double-cover-category-3", "covering-monotonicity",
    "double-cover-route", "double-cover-ganea", "kunneth-nonvanishing",
    "nonfree-pi1-category-3", "pi1",
}


def check_certificate(result, jobs=None):
    """Re-verify a certificate: rule arithmetic plus every Verified premise.

    CatalogFact leaves are collected for audit, never trusted numerically
    beyond name validity.  Returns a CheckReport that is truthy when sound.
    """
    report = CheckReport(True)

    def fail(msg):
        report.ok = False
        report.failures.append(msg)

    def bound_of(node):
        return node.bound

    def walk(node, depth=0):
        if depth > 32:
            fail("certificate tree too deep")
            return
        kids = [c for c in node.children if c.rule != "EVIDENCE"]
        ev = [c for c in node.children if c.rule == "EVIDENCE"]
        rule = node.rule
        if rule == "R1":
            if node.bound != 1:
                fail("R1 must claim bound 1")
        elif rule == "R3":
            weight_kids = [c for c in kids]
            if node.bound != sum(bound_of(c) for c in weight_kids):
                fail("R3 bound %d is not the sum of its children" % node.bound)
            if node.claim is None:
                fail("R3 needs a nonvanishing-product premise")
        elif rule == "R2":
            if len(kids) != 1 or node.bound != kids[0].bound:
                fail("R2 must transport exactly one child bound")
        elif rule == "R4":
            if node.claim is None:
                fail("R4 needs a degree premise")
            else:
                deg = node.claim.get("degree")
                if deg is not None and int(deg) != node.bound:
                    fail("R4 bound differs from the class degree")
            if not any(
                c.claim and c.claim.get("fact") == "aspherical"
                for c in ev
            ):
                fail("R4 needs an asphericity fact")
        elif rule == "R5":
            if node.bound != 3:
                fail("R5 concludes bound 3")
        elif rule == "EVIDENCE":
            if node.bound != 0:
                fail("evidence nodes carry no bound")
        elif rule in ("DIM",):
            if node.claim is None or int(node.claim.get("d", -1)) != node.bound:
                fail("dimension bound mismatch")
        elif rule == "SPHERE":
            if node.bound != 1:
                fail("sphere upper bound is 1")
        elif rule == "PUSHOUT":
            if node.bound != 2:
                fail("pushout upper bound is 2")
        elif rule == "PRODUCT":
            if len(kids) != 1 or node.bound != kids[0].bound + 1:
                fail("product bound must be child + 1")
        elif rule == "COVER":
            if node.bound not in (3, 4):
                fail("cover route concludes 3 (or 4 after a sphere factor)")
        elif rule == "THEOREM":
            if node.bound != 3 or node.claim is None:
                fail("theorem node needs bound 3 and a pi1 premise")
        else:
            fail("unknown rule %r" % rule)
        if node.premise == VERIFIED and node.claim is not None:
            try:
                if not _verify_claim(node.claim):
                    fail("premise failed recomputation: %s"
                         % node.claim.to_text())
            except LscatError as exc:
                fail("premise not checkable (%s): %s"
                     % (exc, node.claim.to_text()))
            except (ValueError, IndexError, KeyError, AssertionError) as exc:
                fail("dangling or malformed premise (%s): %s"
                     % (exc, node.claim.to_text()))
        elif node.premise == CATALOG and node.claim is not None:
            fact = node.claim.get("fact", node.claim.kind)
            if node.claim.kind == "catalog" and fact not in _KNOWN_CATALOG_FACTS:
                fail("unknown catalog fact %r" % fact)
            else:
                report.catalog_facts.append(node.claim.to_text())
        for c in node.children:
            walk(c, depth + 1)

    walk(result.upper)
    walk(result.lower)
    if result.lo > result.hi:
        fail("empty interval")
    if result.upper.bound != result.hi:
        fail("upper trace bound %d does not match hi %d"
             % (result.upper.bound, result.hi))
    if result.lower.bound != result.lo:
        fail("lower trace bound %d does not match lo %d"
             % (result.lower.bound, result.lo))
    return report


def _verify_claim(cl):
    kind = cl.kind
    if kind == "h-nonzero":
        X = space_complex(cl.get("space"))
        m = int(cl.get("coeffs"))
        deg = int(cl.get("degree"))
        if ea._is_prime(m):
            return ea.homology(X, m).dim(deg) >= 1
        basis = ea.cohomology_basis(X, m)
        return basis[deg] is not None and len(basis[deg]) >= 1
    if kind == "cup-witness":
        X = space_complex(cl.get("space"))
        p = int(cl.get("coeffs"))
        factors = _parse_factors(cl.get("factors"))
        if not factors or any(d < 1 for d, _ in factors):
            return False
        R = ring.ring_table_cached(X, p)
        for d, i in factors:
            if not 0 <= i < R.dim(d):
                raise IndexError("witness factor (%d,%d) out of range" % (d, i))
        deg, coords = ring.witness_product(R, factors)
        return any(coords)
    if kind == "top-order":
        X = space_complex(cl.get("space"))
        m = int(cl.get("coeffs"))
        cell = int(cl.get("ucell"))
        if not 0 <= cell < X.n_cells(X.dim):
            raise IndexError("top cell out of range")
        v = [0] * X.n_cells(X.dim)
        v[cell] = 1 % m
        val = ring.kronecker_top(X, ring.Cochain(X.dim, tuple(v)), m)
        return val == int(cl.get("pair")) % m and gcd(val, m) == 1
    if kind == "cross-pairing":
        space = cl.get("space")
        X = space_complex(space)
        m = int(cl.get("coeffs"))
        uspec = _uspec_of(cl)
        P, labels = dc._product_labeled(X, dc.circle(1))
        u = _detecting_cochain(X, uspec[0], uspec[1], m)
        cross = ring.cross_cochain(labels, u, _circle_class(m), m)
        val = ring.kronecker_top(P, cross, m)
        return val == int(cl.get("pair")) % m and gcd(val, m) == 1
    if kind == "kunneth-witness":
        return _verify_kunneth(cl)
    if kind == "pi1-class":
        X = space_complex(cl.get("space"))
        cls = pi1.classify_complex(X)
        if cls.tag != cl.get("tag"):
            return False
        order = cl.get("order")
        return order is None or cls.order == int(order)
    if kind == "dimension":
        return True
    raise LscatError("no verifier for claim kind %r" % kind)


def _uspec_of(cl):
    for key in ("ucell", "ubasis", "ufactors"):
        v = cl.get(key)
        if v is not None:
            return (key, v)
    raise LscatError("claim carries no detecting-class spec")


def _verify_kunneth(cl):
    X = space_complex(cl.get("space"))
    coeffs = int(cl.get("coeffs"))
    n = int(cl.get("n"))
    uspec = _uspec_of(cl)
    return _sphere_tensor_check(X, coeffs, uspec, n)


# ---------------------------------------------------------------------------
# certificate serialization


def cert_to_text(result):
    lines = ["lscat-certificate 1"]
    if result.kind == "ganea":
        lines.append("kind ganea n=%d" % result.n)
    else:
        lines.append("kind cat")
    lines.append("space %s" % result.space)
    if result.value is not None:
        lines.append("value %d" % result.value)
    else:
        lines.append("interval %d %d" % (result.lo, result.hi))

    def emit(node, depth):
        cl = node.claim.to_text() if node.claim is not None else "-"
        flags = " tensor=1" if node.tensor_level else ""
        lines.append(
            "%s%s bound=%d premise=%s%s claim=%s"
            % ("  " * depth, node.rule, node.bound, node.premise, flags, cl)
        )
        for c in node.children:
            emit(c, depth + 1)

    lines.append("upper:")
    emit(result.upper, 1)
    lines.append("lower:")
    emit(result.lower, 1)
    d = result.detect
    lines.append("detect: %s" % d.status)
    for r in d.routes:
        lines.append(
            "  route ring=%s premise=%s claim=%s desc=%s"
            % (r.ring_name, r.premise,
               r.claim_.to_text() if r.claim_ else "-", r.class_desc)
        )
    if d.reason:
        lines.append("  reason=%s" % d.reason)
    if d.note:
        lines.append("  note=%s" % d.note)
    return "\n".join(lines) + "\n"


def cert_from_text(text):
    lines = [ln for ln in text.split("\n")]
    while lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != "lscat-certificate 1":
        raise ParseError("bad certificate header", position=0)
    i = 1
    kind, n = "cat", 0
    if lines[i].startswith("kind ganea"):
        kind = "ganea"
        n = int(lines[i].split("n=")[1])
        i += 1
    elif lines[i] == "kind cat":
        i += 1
    else:
        raise ParseError("bad kind line", position=i)
    if not lines[i].startswith("space "):
        raise ParseError("missing space line", position=i)
    space = lines[i][len("space "):]
    i += 1
    if lines[i].startswith("value "):
        lo = hi = int(lines[i].split()[1])
    elif lines[i].startswith("interval "):
        _, a, b = lines[i].split()
        lo, hi = int(a), int(b)
    else:
        raise ParseError("missing value line", position=i)
    i += 1

    def read_tree(start, stop_predicate):
        protos = []
        idx = start
        while idx < len(lines) and not stop_predicate(lines[idx]):
            line = lines[idx]
            depth = (len(line) - len(line.lstrip(" "))) // 2
            toks = line.strip().split(" ")
            fields = {}
            for t in toks[1:]:
                k, _, v = t.partition("=")
                fields[k] = v
            protos.append((depth, toks[0], fields))
            idx += 1
        if not protos:
            raise ParseError("empty certificate block", position=start)

        def build(pos, depth):
            d0, rule, fields = protos[pos]
            if d0 != depth:
                raise ParseError("bad certificate indentation", position=pos)
            kids = []
            nxt = pos + 1
            while nxt < len(protos) and protos[nxt][0] > depth:
                child, nxt = build(nxt, depth + 1)
                kids.append(child)
            node = Node(
                rule,
                int(fields.get("bound", "0")),
                fields.get("premise", STRUCTURAL),
                Claim.from_text(fields.get("claim", "-")),
                tuple(kids),
                tensor_level=fields.get("tensor") == "1",
            )
            return node, nxt

        root, nxt = build(0, 1)
        if nxt != len(protos):
            raise ParseError("multiple roots in certificate block",
                             position=start + nxt)
        return root, start + len(protos)

    if lines[i] != "upper:":
        raise ParseError("expected upper block", position=i)
    upper, i = read_tree(i + 1, lambda ln: ln == "lower:")
    if i >= len(lines) or lines[i] != "lower:":
        raise ParseError("expected lower block", position=i)
    lower, i = read_tree(i + 1, lambda ln: ln.startswith("detect:"))
    if i >= len(lines) or not lines[i].startswith("detect: "):
        raise ParseError("expected detect block", position=i)
    status = lines[i][len("detect: "):]
    i += 1
    routes = []
    reason = ""
    note = ""
    while i < len(lines):
        ln = lines[i].strip()
        if ln.startswith("route "):
            body = ln[len("route "):]
            ringname = body.split("ring=")[1].split(" ")[0]
            premise = body.split("premise=")[1].split(" ")[0]
            claimtext = body.split("claim=")[1].split(" desc=")[0]
            desc = body.split(" desc=")[1]
            routes.append(DetectRoute(ringname, desc, premise,
                                      Claim.from_text(claimtext)))
        elif ln.startswith("reason="):
            reason = ln[len("reason="):]
        elif ln.startswith("note="):
            note = ln[len("note="):]
        else:
            raise ParseError("unexpected certificate line", position=i)
        i += 1
    detect = DetectVerdict(status, tuple(routes), reason, note)
    return CatResult(space, lo, hi, upper, lower, detect, kind=kind, n=n)
