"""Connected-sum expressions over the catalog of prime 3-manifolds.

Inputs are declared prime decompositions; the normal form realizes
uniqueness of the decomposition as bookkeeping (drop sphere summands, sort
canonically) rather than as an algorithm on triangulations.  Catalog records
carry the topological facts the category engine consumes, and a consistency
self-check runs at import.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd

from . import delta_complex
from .errors import BadLensParams, NoTriangulation, ParseError
from .pi1 import Pi1Class


@dataclass(frozen=True)
class PrimeRecord:
    key: str
    pi1: Pi1Class
    orientable: bool
    irreducible: bool
    aspherical: bool
    pi2_zero: bool
    has_odd_torsion: bool
    triangulable: bool
    note: str = ""


def _finite(order):
    return Pi1Class("finite", order=order, evidence="catalog")


def _free(rank):
    return Pi1Class("free", rank=rank, evidence="catalog")


CATALOG = {
    "S3": PrimeRecord(
        "S3", Pi1Class("trivial", evidence="catalog"),
        orientable=True, irreducible=True, aspherical=False,
        pi2_zero=True, has_odd_torsion=False, triangulable=True,
        note="identity of the connected sum",
    ),
    "S1xS2": PrimeRecord(
        "S1xS2", _free(1),
        orientable=True, irreducible=False, aspherical=False,
        pi2_zero=False, has_odd_torsion=False, triangulable=True,
        note="orientable 2-sphere bundle over the circle",
    ),
    "S1~S2": PrimeRecord(
        "S1~S2", _free(1),
        orientable=False, irreducible=False, aspherical=False,
        pi2_zero=False, has_odd_torsion=False, triangulable=True,
        note="twisted 2-sphere bundle over the circle",
    ),
    "T3": PrimeRecord(
        "T3", Pi1Class("infinite_nonfree", evidence="catalog: Z^3"),
        orientable=True, irreducible=True, aspherical=True,
        pi2_zero=True, has_odd_torsion=False, triangulable=True,
    ),
    "RP2xS1": PrimeRecord(
        "RP2xS1", Pi1Class("infinite_nonfree", evidence="catalog: Z x Z/2"),
        orientable=False, irreducible=True, aspherical=False,
        pi2_zero=False, has_odd_torsion=False, triangulable=True,
        note=(
            "irreducible with pi2 != 0; primeness is a standard fact "
            "recorded here, not derived"
        ),
    ),
    "Poinc": PrimeRecord(
        "Poinc", _finite(120),
        orientable=True, irreducible=True, aspherical=False,
        pi2_zero=True, has_odd_torsion=True, triangulable=False,
        note="catalog-only spherical space form",
    ),
    "Q8": PrimeRecord(
        "Q8", _finite(8),
        orientable=True, irreducible=True, aspherical=False,
        pi2_zero=True, has_odd_torsion=False, triangulable=False,
        note="catalog-only quaternionic space form",
    ),
}


def _odd_part_nontrivial(p):
    while p % 2 == 0:
        p //= 2
    return p > 1


@lru_cache(maxsize=None)
def lens_record(p, q):
    if p < 2 or gcd(p, q) != 1:
        raise BadLensParams("lens space needs coprime (p, q) with p >= 2")
    return PrimeRecord(
        "L", _finite(p),
        orientable=True, irreducible=True, aspherical=False,
        pi2_zero=True, has_odd_torsion=_odd_part_nontrivial(p),
        triangulable=True,
    )


def record_of(summand):
    key, params = summand
    if key == "L":
        return lens_record(*params)
    return CATALOG[key]


def check_catalog():
    """Catalog consistency: the structural facts must cohere."""
    records = list(CATALOG.values()) + [lens_record(p, 1) for p in (2, 3, 5, 7)]
    for r in records:
        if r.pi1.tag == "free" and r.pi1.rank >= 1:
            assert not r.irreducible, r.key
        if r.pi1.tag == "finite" and r.pi1.order > 1 or r.pi1.tag == "trivial":
            assert r.orientable and r.pi2_zero, r.key
        if not r.irreducible:
            assert r.key in ("S1xS2", "S1~S2"), r.key
        if r.aspherical:
            assert r.pi2_zero and r.pi1.tag == "infinite_nonfree", r.key


check_catalog()


# ---------------------------------------------------------------------------
# expressions


@dataclass(frozen=True)
class ManifoldExpr:
    summands: tuple  # of (key, params)

    def __str__(self):
        return " # ".join(_format_summand(s) for s in self.summands)

    def compact(self):
        return "#".join(_format_summand(s) for s in self.summands)


def _format_summand(s):
    key, params = s
    if key == "L":
        return "L(%d,%d)" % params
    return key


_TOKENS = ("S1xS2", "S1~S2", "RP2xS1", "RP3", "S3", "T3", "Poinc", "Q8", "L")


def parse_expr(text):
    """Parse `term { "#" term }` over the catalog grammar.

    RP3 is an alias for L(2,1).  Whitespace is insignificant; errors carry
    the byte position in the original text.
    """
    pos = 0
    n = len(text)
    summands = []

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_int():
        nonlocal pos
        start = pos
        if pos < n and text[pos] in "+-":
            pos += 1
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start or not text[start:pos].lstrip("+-").isdigit():
            raise ParseError("expected integer", position=start)
        return int(text[start:pos])

    def parse_term():
        nonlocal pos
        skip_ws()
        for tok in _TOKENS:
            if text.startswith(tok, pos):
                # longest-match table already ordered to avoid prefixes
                pos += len(tok)
                if tok == "L":
                    skip_ws()
                    if pos >= n or text[pos] != "(":
                        raise ParseError("expected '(' after L", position=pos)
                    pos += 1
                    skip_ws()
                    p = parse_int()
                    skip_ws()
                    if pos >= n or text[pos] != ",":
                        raise ParseError("expected ','", position=pos)
                    pos += 1
                    skip_ws()
                    q = parse_int()
                    skip_ws()
                    if pos >= n or text[pos] != ")":
                        raise ParseError("expected ')'", position=pos)
                    pos += 1
                    if p < 2 or gcd(p, q) != 1:
                        raise BadLensParams(
                            "L(%d,%d): parameters must be coprime with p >= 2"
                            % (p, q)
                        )
                    return ("L", (p, q % p))
                if tok == "RP3":
                    return ("L", (2, 1))
                return (tok, ())
        raise ParseError("expected a manifold term", position=pos)

    summands.append(parse_term())
    skip_ws()
    while pos < n:
        if text[pos] != "#":
            raise ParseError("expected '#'", position=pos)
        pos += 1
        summands.append(parse_term())
        skip_ws()
    return ManifoldExpr(tuple(summands))


def _sort_key(summand):
    return (_format_summand(summand),)


def normalize(expr):
    """Drop sphere summands (unless alone) and sort canonically; idempotent."""
    rest = tuple(s for s in expr.summands if s[0] != "S3")
    if not rest:
        return ManifoldExpr((("S3", ()),))
    return ManifoldExpr(tuple(sorted(rest, key=_sort_key)))


def parse_normal(text):
    return normalize(parse_expr(text))


# ---------------------------------------------------------------------------
# aggregate facts


@dataclass(frozen=True)
class ExprFacts:
    expr: ManifoldExpr
    pi1: Pi1Class
    orientable: bool
    has_odd_torsion: bool
    exceptional_shape: bool
    triangulable: bool
    records: tuple

    @property
    def single(self):
        return len(self.expr.summands) == 1


def facts(expr):
    """Facts of the free product / connected sum of the summands."""
    expr = normalize(expr)
    records = tuple(record_of(s) for s in expr.summands)
    tags = [r.pi1 for r in records]
    nontrivial = [t for t in tags if t.tag != "trivial"]
    if not nontrivial:
        pi1 = Pi1Class("trivial", evidence="all summands simply connected")
    elif all(t.tag in ("trivial", "free") for t in tags):
        pi1 = Pi1Class(
            "free", rank=sum(t.rank for t in tags if t.tag == "free"),
            evidence="free product of free groups",
        )
    elif len(nontrivial) == 1 and nontrivial[0].tag == "finite":
        pi1 = nontrivial[0]
    else:
        pi1 = Pi1Class(
            "infinite_nonfree",
            evidence="free product with a non-free factor",
        )
    orientable = all(r.orientable for r in records)
    odd = any(r.has_odd_torsion for r in records)
    # The residual possibly-undetectable class: non-orientable, fundamental
    # group not free, and every summand with non-free group carries odd
    # torsion (so no summand offers a mod-2 detecting element to pull back).
    nonfree = [
        r for r in records if r.pi1.tag in ("finite", "infinite_nonfree")
    ]
    exceptional = (
        not orientable
        and pi1.tag == "infinite_nonfree"
        and bool(nonfree)
        and all(r.has_odd_torsion for r in nonfree)
    )
    return ExprFacts(
        expr=expr,
        pi1=pi1,
        orientable=orientable,
        has_odd_torsion=odd,
        exceptional_shape=exceptional,
        triangulable=all(r.triangulable for r in records),
        records=records,
    )


@lru_cache(maxsize=None)
def _triangulate_compact(compact):
    expr = parse_normal(compact)
    pieces = []
    for key, params in expr.summands:
        rec = record_of((key, params))
        if not rec.triangulable:
            raise NoTriangulation("%s has no triangulation" % _format_summand((key, params)))
        pieces.append(delta_complex.generator(key, *params))
    return reduce(delta_complex.connected_sum, pieces)


def triangulate_expr(expr):
    """Iterated connected sum of the summand triangulations."""
    return _triangulate_compact(normalize(expr).compact())
