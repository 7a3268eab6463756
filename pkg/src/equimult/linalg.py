"""Exact Gaussian elimination over any field implementing the operator protocol."""

from __future__ import annotations

from typing import Hashable, Sequence


def sparse_rank(rows: Sequence[dict]) -> int:
    """Rank of a matrix given as sparse rows ``{column: value}``."""
    pivots: dict[Hashable, dict] = {}
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            col = min(row, key=_col_key)
            piv = pivots.get(col)
            if piv is None:
                inv = 1 / row[col]
                pivots[col] = {k: v * inv for k, v in row.items()}
                break
            c = row[col]
            for k, v in piv.items():
                nv = row.get(k)
                nv = -c * v if nv is None else nv - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def _col_key(k):
    return k


def nullspace(vectors: Sequence[Sequence]) -> list[list]:
    """Basis of ``{c : sum_j c_j * vectors[j] = 0}``.

    ``vectors`` are equal-length coordinate lists; entries are field elements.
    """
    r = len(vectors)
    if r == 0:
        return []
    dim = len(vectors[0])
    # rows of the matrix whose columns are the vectors
    mat = [[vectors[j][i] for j in range(r)] for i in range(dim)]
    pivot_cols: list[int] = []
    row = 0
    for col in range(r):
        sel = next((i for i in range(row, dim) if mat[i][col]), None)
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [v * inv for v in mat[row]]
        for i in range(dim):
            if i != row and mat[i][col]:
                c = mat[i][col]
                mat[i] = [a - c * b for a, b in zip(mat[i], mat[row])]
        pivot_cols.append(col)
        row += 1
        if row == dim:
            break
    free = [c for c in range(r) if c not in pivot_cols]
    one = _one_like(vectors)
    basis = []
    for fcol in free:
        vec = [one * 0 for _ in range(r)]
        vec[fcol] = one
        for i, pcol in enumerate(pivot_cols):
            vec[pcol] = -mat[i][fcol]
        basis.append(vec)
    return basis


def _one_like(vectors):
    for v in vectors:
        for x in v:
            if x:
                return x / x
    from fractions import Fraction

    return Fraction(1)
