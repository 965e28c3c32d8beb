"""Independent brute-force oracles for freezing expected values.

Everything here rebuilds its own boundary matrices and does its own linear
algebra (sympy for exact integer work, a local elimination for GF(p)), so
the values it produces do not depend on the code paths under test.
"""

import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf


def boundary_dense(X, k):
    """Dense boundary matrix C_k -> C_{k-1}, rebuilt from the face tuples."""
    rows = X.n_cells(k - 1)
    cols = X.n_cells(k)
    M = [[0] * cols for _ in range(rows)]
    if 1 <= k <= X.dim:
        for j, fs in enumerate(X.faces[k]):
            sign = 1
            for f in fs:
                M[f][j] += sign
                sign = -sign
    return M


def homology_orders(X):
    """Integral homology via sympy rank and Smith normal form.

    Returns, per degree, a sorted tuple with 0 for each Z summand and the
    invariant factors > 1.
    """
    ranks = [0] * (X.dim + 2)
    torsion = [()] * (X.dim + 2)
    for k in range(1, X.dim + 1):
        M = sympy.Matrix(boundary_dense(X, k))
        ranks[k] = M.rank()
        if ranks[k]:
            S = sympy_snf(M)
            diag = [abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0]
            torsion[k] = tuple(sorted(d for d in diag if d > 1))
    out = []
    for k in range(X.dim + 1):
        betti = X.n_cells(k) - ranks[k] - ranks[k + 1]
        out.append(tuple(sorted([0] * betti + list(torsion[k + 1]))))
    return tuple(out)


def _rank_mod_p(M, p):
    rows = [[v % p for v in row] for row in M]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank


def dim_mod_p(X, k, p):
    """dim H_k(X; Z/p) by plain dense elimination."""
    rk = _rank_mod_p(boundary_dense(X, k), p) if 1 <= k <= X.dim else 0
    rk1 = (
        _rank_mod_p(boundary_dense(X, k + 1), p)
        if 1 <= k + 1 <= X.dim
        else 0
    )
    return X.n_cells(k) - rk - rk1


def cup_value(X, p_deg, avals, q_deg, bvals, cell, m):
    """Front/back product value on one cell, via its own face walking."""
    n = p_deg + q_deg
    cur, d = cell, n
    while d > p_deg:
        cur = X.faces[d][cur][d]
        d -= 1
    front = cur
    cur, d = cell, n
    while d > q_deg:
        cur = X.faces[d][cur][0]
        d -= 1
    back = cur
    return (avals[front] * bvals[back]) % m


def abelianization_oracle(pres):
    """(free rank, torsion factors) via sympy Smith normal form."""
    M = sympy.zeros(pres.ngens, max(1, len(pres.relators)))
    for j, r in enumerate(pres.relators):
        for c in r:
            M[abs(c) - 1, j] += 1 if c > 0 else -1
    rank = M.rank()
    tors = ()
    if rank:
        S = sympy_snf(M)
        diag = [abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0]
        tors = tuple(sorted(d for d in diag if d > 1))
    return pres.ngens - rank, tors
