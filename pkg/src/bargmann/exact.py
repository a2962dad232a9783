"""Exact linear algebra over the rationals.

Everything here runs on ``fractions.Fraction`` so downstream polytope results
are exact: reduced row echelon form, nullspaces, primitive integer scaling, a
two-phase simplex solver (Bland's rule, so it terminates), and the double
description method turning a spanning point set into its facet system.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Vector = tuple[Fraction, ...]

__all__ = [
    "rref",
    "rank",
    "nullspace",
    "primitive",
    "lp_maximize",
    "LPResult",
    "polytope_facets",
]


def _rows_to_fractions(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.

    Returns (nonzero rows, pivot column indices); the input is not modified.
    """
    m = _rows_to_fractions(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows) -> list[Vector]:
    """Basis of {x : rows @ x = 0}, one canonical vector per free column.

    Each basis vector has a 1 in its free column and the pivot entries solved
    from the reduced system; vectors are ordered by free column index.
    """
    m, pivots = rref(rows)
    if not rows:
        return []
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(m, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def primitive(vec, orient: bool = False) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers.

    Positive scaling only, unless ``orient`` is set, in which case the sign is
    flipped so the first nonzero entry is positive (for equalities, where both
    orientations mean the same constraint).
    """
    fracs = [Fraction(x) for x in vec]
    scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * scale) for f in fracs]
    g = gcd(*ints) if any(ints) else 1
    if g:
        ints = [x // g for x in ints]
    if orient:
        first = next((x for x in ints if x != 0), 0)
        if first < 0:
            ints = [-x for x in ints]
    return tuple(ints)


# -- simplex ----------------------------------------------------------------


class LPResult:
    """Outcome of :func:`lp_maximize`: status in {'optimal', 'infeasible',
    'unbounded'}, plus value and primal solution when optimal."""

    def __init__(self, status: str, value=None, x=None):
        self.status = status
        self.value = value
        self.x = x

    def __repr__(self):
        return f"LPResult(status={self.status!r}, value={self.value!r})"


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int):
    inv = tableau[row][col]
    tableau[row] = [x / inv for x in tableau[row]]
    for i in range(len(tableau)):
        if i != row and tableau[i][col] != 0:
            factor = tableau[i][col]
            tableau[i] = [a - factor * b for a, b in zip(tableau[i], tableau[row])]
    basis[row] = col


def _simplex_phase(tableau, basis, cost: list[Fraction], nvars: int) -> str:
    """Run simplex on ``tableau`` (rows: constraints then objective) with
    Bland's anti-cycling rule.  ``cost`` is mutated in place as the objective
    row.  Returns 'optimal' or 'unbounded'."""
    m = len(tableau)
    while True:
        col = next((j for j in range(nvars) if cost[j] > 0), None)
        if col is None:
            return "optimal"
        best_row = None
        best_ratio = None
        for i in range(m):
            if tableau[i][col] > 0:
                ratio = tableau[i][-1] / tableau[i][col]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[best_row])
                ):
                    best_ratio = ratio
                    best_row = i
        if best_row is None:
            return "unbounded"
        _pivot(tableau, basis, best_row, col)
        factor = cost[col]
        cost[:] = [a - factor * b for a, b in zip(cost, tableau[best_row])]


def lp_maximize(A, b, c) -> LPResult:
    """Maximize c @ x subject to A @ x = b, x >= 0, exactly.

    All data is converted to Fractions.  Two-phase tableau simplex with
    Bland's rule; returns an :class:`LPResult`.
    """
    A = _rows_to_fractions(A)
    b = [Fraction(x) for x in b]
    c = [Fraction(x) for x in c]
    m, n = len(A), len(c)
    for row in A:
        if len(row) != n:
            raise ValueError("A and c have mismatched widths")
    if len(b) != m:
        raise ValueError("A and b have mismatched heights")
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # phase 1: maximize -(sum of artificials), one artificial per row.
    # cost row convention: cost[j] is the reduced cost of column j and
    # cost[-1] is minus the current objective value.
    tableau = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        cost[n + i] = Fraction(-1)
    for i in range(m):
        cost = [x + y for x, y in zip(cost, tableau[i])]
    _simplex_phase(tableau, basis, cost, n + m)
    if cost[-1] != 0:
        return LPResult("infeasible")
    # drive remaining artificial variables out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tableau[i][j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, i, col)
    rows_keep = [i for i in range(m) if basis[i] < n]
    tableau = [tableau[i][:n] + [tableau[i][-1]] for i in rows_keep]
    basis = [basis[i] for i in rows_keep]
    # phase 2
    cost2 = c + [Fraction(0)]
    for i, bv in enumerate(basis):
        if cost2[bv] != 0:
            factor = cost2[bv]
            cost2 = [a - factor * t for a, t in zip(cost2, tableau[i])]
    status = _simplex_phase(tableau, basis, cost2, n)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = tableau[i][-1]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return LPResult("optimal", value=value, x=tuple(x))


# -- double description -----------------------------------------------------


def _invert(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot_row is None:
            raise ValueError("matrix is singular")
        aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        inv = aug[c][c]
        aug[c] = [x / inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def polytope_facets(points: Sequence) -> list[tuple[tuple[int, ...], int]]:
    """Facets of the convex hull of ``points``, which must span the whole
    space affinely (use an affine-hull projection first if they do not).

    Returns integer-primitive pairs (a, b), one per facet, meaning a @ x <= b,
    sorted lexicographically.  Method: the valid inequalities {(a, b) :
    a @ p_i <= b for all i} form a pointed full-dimensional cone in dimension
    D+1 whose extreme rays are exactly the facet inequalities (the hull is a
    bounded full-dimensional polytope, so the trivial ray 0 <= 1 is a positive
    combination of facets and never extreme).  The extreme rays are found by
    double description with the combinatorial adjacency test.
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        return []
    dim = len(pts[0])
    if dim == 0:
        return []
    n = dim + 1
    # constraint rows applied to y = (a, b): b - a @ p_i >= 0
    rows = [tuple(-x for x in p) + (Fraction(1),) for p in pts]
    k = len(rows)

    # greedy linearly independent subset of size n
    base_idx: list[int] = []
    reduced: list[list[Fraction]] = []
    for i, row in enumerate(rows):
        cand = reduced + [list(row)]
        if rank(cand) > len(reduced):
            reduced, _ = rref(cand)
            base_idx.append(i)
            if len(base_idx) == n:
                break
    if len(base_idx) < n:
        raise ValueError("points do not span the space affinely")

    base = [list(rows[i]) for i in base_idx]
    inv = _invert(base)
    # ray j satisfies base row i with equality for all i != j
    rays: list[tuple[int, ...]] = []
    zero_sets: list[int] = []
    for j in range(n):
        column = [inv[i][j] for i in range(n)]
        rays.append(primitive(column))
        zs = 0
        for pos, i in enumerate(base_idx):
            if pos != j:
                zs |= 1 << i
        zero_sets.append(zs)

    remaining = [i for i in range(k) if i not in set(base_idx)]
    for i in remaining:
        row = rows[i]
        values = [sum(r * m for r, m in zip(ray, row)) for ray in rays]
        if all(v >= 0 for v in values):
            for j, v in enumerate(values):
                if v == 0:
                    zero_sets[j] |= 1 << i
            continue
        plus = [j for j, v in enumerate(values) if v > 0]
        zero = [j for j, v in enumerate(values) if v == 0]
        minus = [j for j, v in enumerate(values) if v < 0]
        new_rays: list[tuple[int, ...]] = []
        new_zero_sets: list[int] = []
        for jp in plus:
            for jm in minus:
                common = zero_sets[jp] & zero_sets[jm]
                adjacent = True
                for jo in range(len(rays)):
                    if jo in (jp, jm):
                        continue
                    if zero_sets[jo] & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vm = values[jp], values[jm]
                combo = tuple(
                    vp * rm - vm * rp for rp, rm in zip(rays[jp], rays[jm])
                )
                new_rays.append(primitive(combo))
                new_zero_sets.append(common | (1 << i))
        kept_rays = [rays[j] for j in plus] + [rays[j] for j in zero] + new_rays
        kept_zero = (
            [zero_sets[j] for j in plus]
            + [zero_sets[j] | (1 << i) for j in zero]
            + new_zero_sets
        )
        rays, zero_sets = kept_rays, kept_zero

    facets = []
    for ray in rays:
        a, b = ray[:dim], ray[dim]
        if not any(a):
            raise AssertionError("trivial ray survived double description")
        facets.append((a, b))
    facets.sort()
    return facets
