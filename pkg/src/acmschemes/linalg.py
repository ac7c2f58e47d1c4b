"""Small dense linear algebra over F_p (row reduction, nullspaces, ranks)."""

from __future__ import annotations


def rref(rows, ncols, p):
    """In-place-style reduced row echelon form; returns (rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        sel = None
        for r in range(rank, len(mat)):
            if mat[r][col] % p:
                sel = r
                break
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] % p:
                f = mat[r][col]
                row_src = mat[rank]
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], row_src)]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return mat[:rank], pivots


def rank(rows, ncols, p) -> int:
    return len(rref(rows, ncols, p)[0])


def nullspace(rows, ncols, p):
    """Basis of the right nullspace, one vector per free column."""
    red, pivots = rref(rows, ncols, p)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][fc]) % p
        basis.append(v)
    return basis
