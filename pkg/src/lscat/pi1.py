"""Fundamental groups from 2-skeleta and their certified classification.

Presentations use signed 1-based generator indices; words print as letters
with case marking inverses (aBAb), falling back to signed integers past 26
generators.  The classifier is sound by construction: every tag it returns
is backed by an explicit certificate (empty relator set, a completed coset
table, or an abelianization/finite-quotient obstruction), and it answers
Unknown rather than guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product as iproduct
from math import factorial

from . import exact_algebra
from .errors import NotConnected, ParseError


@dataclass(frozen=True)
class GroupPresentation:
    ngens: int
    relators: tuple

    def __post_init__(self):
        rels = tuple(tuple(int(c) for c in r) for r in self.relators)
        for r in rels:
            for c in r:
                if c == 0 or abs(c) > self.ngens:
                    raise ValueError("bad generator index %d" % c)
        object.__setattr__(self, "relators", rels)

    def total_length(self):
        return sum(len(r) for r in self.relators)

    def __str__(self):
        return format_presentation(self)


@dataclass(frozen=True)
class Pi1Class:
    tag: str  # trivial | free | finite | infinite_nonfree | unknown
    rank: int = 0
    order: int = 0
    evidence: str = ""

    def __str__(self):
        if self.tag == "free":
            return "Free(%d)" % self.rank
        if self.tag == "finite":
            return "Finite(%d)" % self.order
        return {
            "trivial": "Trivial",
            "infinite_nonfree": "InfiniteNonFree",
            "unknown": "Unknown",
        }[self.tag]


TRIVIAL = Pi1Class("trivial", evidence="empty presentation")


# ---------------------------------------------------------------------------
# words


def free_reduce(word):
    out = []
    for c in word:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def cyclic_reduce(word):
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word):
    return tuple(-c for c in reversed(word))


def _canonical_cyclic(word):
    """Least rotation among the word and its inverse, for deduplication."""
    cands = []
    for w in (word, invert_word(word)):
        n = len(w)
        for i in range(n):
            cands.append(w[i:] + w[:i])
    return min(cands) if cands else ()


def format_word(word, ngens):
    if not word:
        return "1"
    if ngens <= 26:
        out = []
        for c in word:
            ch = chr(ord("a") + abs(c) - 1)
            out.append(ch if c > 0 else ch.upper())
        return "".join(out)
    return " ".join(str(c) for c in word)


def format_presentation(pres):
    words = ", ".join(format_word(r, pres.ngens) for r in pres.relators)
    return "<%d; %s>" % (pres.ngens, words)


def parse_presentation(text):
    """Parse `<n; word, word>` with letter or signed-integer words."""
    text = text.strip()
    if not (text.startswith("<") and text.endswith(">")):
        raise ParseError("presentation must be wrapped in <...>", position=0)
    body = text[1:-1]
    if ";" not in body:
        raise ParseError("missing ';' in presentation", position=1)
    head, _, tail = body.partition(";")
    try:
        ngens = int(head.strip())
    except ValueError:
        raise ParseError("bad generator count %r" % head.strip(), position=1)
    relators = []
    for part in tail.split(","):
        part = part.strip()
        if not part or part == "1":
            continue
        if part.lstrip("-").split()[0].lstrip("-").isdigit() if part else False:
            word = tuple(int(t) for t in part.split())
        elif all(ch.isalpha() for ch in part):
            word = tuple(
                (ord(ch.lower()) - ord("a") + 1) * (-1 if ch.isupper() else 1)
                for ch in part
            )
        else:
            word = tuple(int(t) for t in part.split())
        relators.append(word)
    return GroupPresentation(ngens, tuple(relators))


# ---------------------------------------------------------------------------
# edge-path presentation


def edge_path_presentation(X):
    """Edge-path group of the 2-skeleton with a breadth-first spanning tree.

    Generators are the non-tree edges; each triangle contributes the relator
    (first edge)(last edge)(middle edge)^-1 read off its ordered boundary.
    """
    from . import delta_complex

    rep = delta_complex.validate(X)
    if not rep.connected:
        raise NotConnected("edge-path presentation needs a connected complex")
    nv = X.n_cells(0)
    ne = X.n_cells(1) if X.dim >= 1 else 0
    adj = [[] for _ in range(nv)]
    for e in range(ne):
        head, tail = X.faces[1][e][0], X.faces[1][e][1]
        adj[tail].append((head, e))
        adj[head].append((tail, e))
    in_tree = [False] * ne
    seen = [False] * nv
    seen[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for w, e in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    in_tree[e] = True
                    nxt.append(w)
        frontier = nxt
    gen_of = {}
    for e in range(ne):
        if not in_tree[e]:
            gen_of[e] = len(gen_of) + 1
    relators = []
    if X.dim >= 2:
        for fs in X.faces[2]:
            e12, e02, e01 = fs[0], fs[1], fs[2]
            word = []
            for e, sign in ((e01, 1), (e12, 1), (e02, -1)):
                if e in gen_of:
                    word.append(sign * gen_of[e])
            w = free_reduce(word)
            if w:
                relators.append(w)
    return GroupPresentation(len(gen_of), tuple(relators))


# ---------------------------------------------------------------------------
# Tietze simplification


def _substitute(relators, g, replacement):
    """Replace generator g by the given word, then free-reduce."""
    inv = invert_word(replacement)
    out = []
    for r in relators:
        w = []
        for c in r:
            if c == g:
                w.extend(replacement)
            elif c == -g:
                w.extend(inv)
            else:
                w.append(c)
        out.append(free_reduce(w))
    return out


def _drop_generator(relators, ngens, g):
    """Renumber generators after g has been eliminated."""
    out = []
    for r in relators:
        w = []
        for c in r:
            a = abs(c)
            assert a != g
            a = a - 1 if a > g else a
            w.append(a if c > 0 else -a)
        out.append(tuple(w))
    return out, ngens - 1


def tietze_simplify(pres, budget=10000):
    """Length-non-increasing Tietze simplification, deterministic.

    Moves: free/cyclic reduction, duplicate removal, elimination through
    length-1 and length-2 relators, and single-occurrence eliminations that
    do not increase the total relator length.  The budget counts generator
    eliminations; exhausting it returns the current state.
    """
    ngens = pres.ngens
    rels = [cyclic_reduce(r) for r in pres.relators]
    steps = 0
    while steps < budget:
        rels = [cyclic_reduce(r) for r in rels]
        seen = set()
        cleaned = []
        for r in rels:
            if not r:
                continue
            key = _canonical_cyclic(r)
            if key in seen:
                continue
            seen.add(key)
            cleaned.append(r)
        rels = cleaned
        move = None
        for idx, r in enumerate(rels):
            if len(r) == 1:
                move = ("kill", abs(r[0]), idx, ())
                break
            if len(r) == 2 and abs(r[0]) != abs(r[1]):
                a, b = r
                g = max(abs(a), abs(b))
                if abs(a) == g:
                    # a = b^-1 rearranged so the larger index goes away
                    repl = invert_word((b,)) if a > 0 else (b,)
                else:
                    repl = invert_word((a,)) if b > 0 else (a,)
                move = ("subst", g, idx, repl)
                break
        if move is None:
            occ = {}
            for idx, r in enumerate(rels):
                for c in r:
                    occ.setdefault(abs(c), []).append(idx)
            for g in sorted(occ):
                spots = occ[g]
                for idx in sorted(set(spots)):
                    r = rels[idx]
                    if sum(1 for c in r if abs(c) == g) != 1:
                        continue
                    others = len(spots) - 1
                    growth = others * (len(r) - 2) - len(r)
                    if growth > 0:
                        continue
                    pos = next(
                        i for i, c in enumerate(r) if abs(c) == g
                    )
                    rot = r[pos:] + r[:pos]
                    if rot[0] < 0:
                        rot = invert_word(rot)
                        pos2 = next(
                            i for i, c in enumerate(rot) if abs(c) == g
                        )
                        rot = rot[pos2:] + rot[:pos2]
                    repl = invert_word(rot[1:])
                    move = ("subst_rel", g, idx, repl)
                    break
                if move:
                    break
        if move is None:
            break
        kind, g, idx, repl = move
        if kind == "kill":
            del rels[idx]
            rels = _substitute(rels, g, ())
        else:
            del rels[idx]
            rels = _substitute(rels, g, repl)
        rels = [r for r in rels if r]
        rels, ngens = _drop_generator(rels, ngens, g)
        steps += 1
    return GroupPresentation(ngens, tuple(sorted(rels, key=lambda r: (len(r), r))))


def _aggressive_eliminate(pres, cap=4):
    """One single-occurrence elimination allowing bounded growth, or None."""
    rels = [cyclic_reduce(r) for r in pres.relators]
    best = None
    for idx, r in enumerate(rels):
        for g in sorted({abs(c) for c in r}):
            if sum(1 for c in r if abs(c) == g) != 1:
                continue
            others = sum(
                sum(1 for c in r2 for _ in [0] if abs(c) == g)
                for j, r2 in enumerate(rels)
                if j != idx
            )
            growth = others * (len(r) - 2) - len(r)
            if growth > cap * pres.total_length() + 100:
                continue
            if best is None or growth < best[0]:
                best = (growth, g, idx)
    if best is None:
        return None
    _, g, idx = best
    r = rels[idx]
    pos = next(i for i, c in enumerate(r) if abs(c) == g)
    rot = r[pos:] + r[:pos]
    if rot[0] < 0:
        rot = invert_word(rot)
        pos2 = next(i for i, c in enumerate(rot) if abs(c) == g)
        rot = rot[pos2:] + rot[:pos2]
    repl = invert_word(rot[1:])
    del rels[idx]
    rels = _substitute(rels, g, repl)
    rels = [x for x in rels if x]
    rels, ngens = _drop_generator(rels, pres.ngens, g)
    return GroupPresentation(ngens, tuple(rels))


# ---------------------------------------------------------------------------
# abelianization


def abelianization(pres):
    """Invariant factors of H_1: (free_rank, torsion factors > 1)."""
    ent = {}
    for j, r in enumerate(pres.relators):
        for c in r:
            key = (abs(c) - 1, j)
            ent[key] = ent.get(key, 0) + (1 if c > 0 else -1)
    ent = {k: v for k, v in ent.items() if v}
    factors = exact_algebra.invariant_factors(ent)
    free_rank = pres.ngens - len(factors)
    torsion = tuple(sorted(d for d in factors if d > 1))
    return free_rank, torsion


# ---------------------------------------------------------------------------
# Todd-Coxeter coset enumeration (HLT with coincidence folding)


def todd_coxeter(pres, max_cosets=100000):
    """Order of the presented group, or None when enumeration exceeds.

    A completed table certifies the order exactly; exceeding the coset bound
    certifies nothing.
    """
    ng = pres.ngens
    if ng == 0:
        return 1
    nsym = 2 * ng

    def sym(c):
        return 2 * (c - 1) if c > 0 else 2 * (-c - 1) + 1

    def inv_sym(s):
        return s ^ 1

    rels = [tuple(sym(c) for c in r) for r in pres.relators]
    table = [[-1] * nsym]
    rep = [0]

    def find(a):
        while rep[a] != a:
            rep[a] = rep[rep[a]]
            a = rep[a]
        return a

    def define(a, s):
        c = len(table)
        if c >= max_cosets:
            return None
        table.append([-1] * nsym)
        rep.append(c)
        table[a][s] = c
        table[c][inv_sym(s)] = a
        return c

    merge_queue = []

    def set_entry(a, s, b):
        cur = table[a][s]
        if cur == -1:
            table[a][s] = b
            back = table[b][inv_sym(s)]
            if back == -1:
                table[b][inv_sym(s)] = a
            elif find(back) != find(a):
                merge_queue.append((back, a))
        elif find(cur) != find(b):
            merge_queue.append((cur, b))

    def process_merges():
        while merge_queue:
            a, b = merge_queue.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            rep[b] = a
            for s in range(nsym):
                tb = table[b][s]
                if tb == -1:
                    continue
                ta = table[a][s]
                if ta == -1:
                    table[a][s] = tb
                    back = table[tb][inv_sym(s)]
                    if back == -1:
                        table[tb][inv_sym(s)] = a
                    elif find(back) != find(a):
                        merge_queue.append((back, a))
                elif find(ta) != find(tb):
                    merge_queue.append((ta, tb))

    def scan(a, rel):
        f = a
        i = 0
        n = len(rel)
        while i < n:
            nxt = table[find(f)][rel[i]]
            if nxt == -1:
                break
            f = find(nxt)
            i += 1
        b = a
        j = n
        while j > i:
            prv = table[find(b)][inv_sym(rel[j - 1])]
            if prv == -1:
                break
            b = find(prv)
            j -= 1
        if i == j:
            if find(f) != find(b):
                merge_queue.append((f, b))
            return True
        if i == j - 1:
            set_entry(find(f), rel[i], find(b))
            return True
        # fill one gap and let the caller rescan
        c = define(find(f), rel[i])
        if c is None:
            return None
        return False

    w = 0
    while w < len(table):
        if find(w) != w:
            w += 1
            continue
        for rel in rels:
            while True:
                r = scan(w, rel)
                if r is None:
                    return None
                process_merges()
                if find(w) != w:
                    break
                if r:
                    break
            if find(w) != w:
                break
        if find(w) != w:
            w += 1
            continue
        for s in range(nsym):
            if table[w][s] == -1:
                if define(w, s) is None:
                    return None
        w += 1
    live = {find(i) for i in range(len(table))}
    return len(live)


# ---------------------------------------------------------------------------
# finite-quotient counting (sound non-freeness certificates)


def count_homs_to_sym(pres, n, budget=400000):
    """Number of homomorphisms to the symmetric group S_n, or None if too big."""
    perms = list(permutations(range(n)))
    total = len(perms) ** pres.ngens
    if total * max(1, len(pres.relators)) > budget:
        return None
    ident = tuple(range(n))

    def compose(a, b):
        return tuple(a[x] for x in b)

    inv = {pm: tuple(sorted(range(n), key=lambda i: pm[i])) for pm in perms}
    count = 0
    for choice in iproduct(perms, repeat=pres.ngens):
        ok = True
        for r in pres.relators:
            acc = ident
            for c in r:
                pm = choice[abs(c) - 1]
                acc = compose(acc, pm if c > 0 else inv[pm])
            if acc != ident:
                ok = False
                break
        if ok:
            count += 1
    return count


# ---------------------------------------------------------------------------
# classification


def classify(pres, max_cosets=100000):
    """Sound three-valued classification of a finite presentation.

    Free is certified by an empty relator set after simplification; finite
    by a completed coset table; infinite-nonfree by torsion or a finite
    quotient count that a free group of the right rank cannot match,
    together with an infinite abelianization.  Everything else is Unknown.
    """
    Q = tietze_simplify(pres)
    for _ in range(3):
        if not Q.relators:
            break
        nxt = _aggressive_eliminate(Q)
        if nxt is None:
            break
        nxt = tietze_simplify(nxt)
        if (nxt.ngens, nxt.total_length()) < (Q.ngens, Q.total_length()):
            Q = nxt
        else:
            break
    if not Q.relators:
        if Q.ngens == 0:
            return Pi1Class("trivial", evidence="presentation reduced to <0;>")
        return Pi1Class(
            "free", rank=Q.ngens,
            evidence="presentation reduced to %d generators, no relators"
            % Q.ngens,
        )
    rank, torsion = abelianization(Q)
    if torsion:
        d = todd_coxeter(Q, max_cosets)
        if d is not None:
            return Pi1Class(
                "finite", order=d,
                evidence="coset enumeration completed with %d cosets" % d,
            )
        if rank >= 1:
            return Pi1Class(
                "infinite_nonfree",
                evidence="abelianization Z^%d with torsion %s"
                % (rank, list(torsion)),
            )
        return Pi1Class("unknown", evidence="torsion but enumeration exceeded")
    if rank == 0:
        d = todd_coxeter(Q, max_cosets)
        if d == 1:
            return Pi1Class("trivial", evidence="coset enumeration gives order 1")
        if d is not None:
            return Pi1Class(
                "finite", order=d,
                evidence="coset enumeration completed with %d cosets" % d,
            )
        return Pi1Class("unknown", evidence="perfect presentation, enumeration exceeded")
    for n in (3, 4):
        homs = count_homs_to_sym(Q, n)
        if homs is None:
            continue
        if homs != factorial(n) ** rank:
            return Pi1Class(
                "infinite_nonfree",
                evidence=(
                    "infinite by abelianization rank %d; not free since "
                    "#Hom(G, S_%d) = %d differs from the free count %d"
                    % (rank, n, homs, factorial(n) ** rank)
                ),
            )
    return Pi1Class(
        "unknown",
        evidence="torsion-free abelianization; freeness not certified",
    )


@lru_cache(maxsize=None)
def classify_complex(X):
    """Classification of the edge-path group of a complex."""
    return classify(tietze_simplify(edge_path_presentation(X)))
