"""Exact determinants over rationals and over coefficient rings.

Two routines cover every determinant in the package:

* ``det_bareiss`` -- fraction-free Gaussian elimination for scalar
  (Fraction) matrices; each intermediate division is exact, so denominators
  never blow up beyond the entries' own.
* ``det_ring`` -- division-free evaluation for matrices over a commutative
  ring (Laurent polynomials, multivariate polynomials), by dynamic
  programming over column subsets.  Cost O(2**n * n) ring multiplications,
  ample for the sizes that occur here (n <= ~10).
"""

from __future__ import annotations

from .rational import Rat


def det_bareiss(rows: list[list[Rat]]) -> Rat:
    """Determinant of a square Fraction matrix by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return Rat(1)
    m = [[Rat(x) for x in row] for row in rows]
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = Rat(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Rat(0)
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) / prev
            m[i][k] = Rat(0)
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_ring(rows: list[list], zero, one):
    """Determinant over a commutative ring, no divisions.

    State ``d[mask]`` is the signed minor of the first popcount(mask) rows on
    the column set ``mask``; row k extends every state with each unused
    column, with the parity sign given by the columns already used above it.
    """
    n = len(rows)
    if n == 0:
        return one
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")
    states = {0: one}
    for k in range(n):
        nxt: dict[int, object] = {}
        for mask, acc in states.items():
            for col in range(n):
                bit = 1 << col
                if mask & bit:
                    continue
                entry = rows[k][col]
                if _is_ring_zero(entry):
                    continue
                # parity of used columns strictly above `col`
                sign = -1 if bin(mask >> (col + 1)).count("1") % 2 else 1
                term = acc * entry if sign > 0 else -(acc * entry)
                key = mask | bit
                if key in nxt:
                    nxt[key] = nxt[key] + term
                else:
                    nxt[key] = term
        if not nxt:
            return zero
        states = nxt
    return states.get((1 << n) - 1, zero)


def _is_ring_zero(x) -> bool:
    probe = getattr(x, "is_zero", None)
    if probe is not None:
        return bool(probe())
    return x == 0
