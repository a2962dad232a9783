"""Exact geometry of classical (jointly diagonalizable) invariant vectors.

For a scenario over letters L, assignments of a color in {1, ..., |L|} to each
letter produce 0/1 vertex vectors: a word's coordinate is 1 exactly when all
its letters share one color.  Larger color alphabets add no new vertices, so
the enumeration is finite.  The convex hull of these vertices is handled
exactly over the rationals: affine hull, facet system (double description),
membership, and facet certification.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidScenarioError, ResourceLimitError
from .exact import lp_maximize, nullspace, polytope_facets, primitive, rank, rref
from .scenarios import Scenario, scenario_to_dict

DEFAULT_ASSIGNMENT_CAP = 10**7
DEFAULT_FACET_VERTEX_LIMIT = 5000
DEFAULT_FACET_DIMENSION_LIMIT = 24
MEMBERSHIP_TOL = 1e-9

__all__ = [
    "DEFAULT_ASSIGNMENT_CAP",
    "DEFAULT_FACET_VERTEX_LIMIT",
    "DEFAULT_FACET_DIMENSION_LIMIT",
    "MEMBERSHIP_TOL",
    "VertexSet",
    "Equality",
    "FacetInequality",
    "HRepresentation",
    "Violation",
    "MembershipResult",
    "FacetCheck",
    "vertex_enumerate",
    "affine_hull",
    "facet_enumerate",
    "membership",
    "verify_facet",
    "max_violation",
    "polytope_to_dict",
    "save_polytope",
    "inequality_to_dict",
    "inequality_from_dict",
    "load_inequality",
]


@dataclass(frozen=True)
class VertexSet:
    """Distinct 0/1 vertices of a scenario's classical polytope.

    ``witnesses[i]`` is the lexicographically least color assignment (one
    color per scenario letter, in letter order, colors 1-based) producing
    ``vertices[i]``; vertices are ordered by first appearance when assignments
    are scanned lexicographically.
    """

    scenario: Scenario
    vertices: tuple[tuple[int, ...], ...]
    witnesses: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Equality:
    """Affine-hull constraint a @ z = b with coprime integer coefficients."""

    a: tuple[int, ...]
    b: int


@dataclass(frozen=True)
class FacetInequality:
    """Halfspace a @ z <= b; coefficients are exact rationals."""

    a: tuple[Fraction, ...]
    b: Fraction
    provenance: str = "user-supplied"  # or "enumerated"

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def slack(self, z):
        """b - a @ z; negative means violated."""
        if len(z) != len(self.a):
            raise ValueError(f"point has {len(z)} coordinates, inequality {len(self.a)}")
        if all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in z):
            return self.b - sum(ai * zi for ai, zi in zip(self.a, z))
        return float(self.b) - float(np.dot([float(x) for x in self.a], np.asarray(z, dtype=float)))


@dataclass(frozen=True)
class HRepresentation:
    """Equalities pinning the affine hull plus one inequality per facet."""

    equalities: tuple[Equality, ...]
    facets: tuple[FacetInequality, ...]
    dimension: int


@dataclass(frozen=True)
class Violation:
    kind: str  # "equality" | "inequality"
    index: int
    amount: float


@dataclass(frozen=True)
class MembershipResult:
    verdict: str  # "inside" | "boundary" | "outside"
    violations: tuple[Violation, ...] = ()


@dataclass(frozen=True)
class FacetCheck:
    valid: bool
    facet_defining: bool
    saturating_count: int


def vertex_enumerate(scenario: Scenario, cap: int = DEFAULT_ASSIGNMENT_CAP) -> VertexSet:
    """Enumerate all distinct 0/1 vertex vectors of the scenario's polytope.

    Scans the |L|^|L| color assignments (gated by ``cap``) in lexicographic
    order; distinct vertex vectors are bounded by the number of set partitions
    of the letters, so the result stays small even when the scan is long.
    """
    letters = scenario.letters
    n = len(letters)
    total = n**n
    if total > cap:
        raise ResourceLimitError(
            f"{total} assignments exceed the cap {cap}; raise it explicitly "
            "or use membership/verify_facet instead"
        )
    pos = {letter: i for i, letter in enumerate(letters)}
    word_groups = [sorted({pos[l] for l in w}) for w in scenario.words]
    shape = (n,) * n
    best: dict[bytes, int] = {}  # vertex vector -> least assignment id
    chunk = 1 << 15
    for start in range(0, total, chunk):
        ids = np.arange(start, min(start + chunk, total), dtype=np.int64)
        colors = np.stack(np.unravel_index(ids, shape))  # (n, chunk), lex order
        vecs = np.empty((ids.size, len(word_groups)), dtype=np.uint8)
        for j, group in enumerate(word_groups):
            if len(group) == 1:
                vecs[:, j] = 1
                continue
            eq = np.ones(ids.size, dtype=bool)
            base = colors[group[0]]
            for g in group[1:]:
                eq &= colors[g] == base
            vecs[:, j] = eq
        uniq, first = np.unique(vecs, axis=0, return_index=True)
        for row, local in zip(uniq, first):
            key = row.tobytes()
            assignment_id = int(start + local)
            if key not in best:
                best[key] = assignment_id
    ordered = sorted(best.items(), key=lambda kv: kv[1])
    vertices = tuple(tuple(int(x) for x in key) for key, _ in ordered)
    witnesses = tuple(
        tuple(int(c) + 1 for c in np.unravel_index(aid, shape)) for _, aid in ordered
    )
    return VertexSet(scenario=scenario, vertices=vertices, witnesses=witnesses)


def affine_hull(vertex_set: VertexSet) -> tuple[int, tuple[Equality, ...]]:
    """Dimension of the polytope and a canonical equality system in its hull.

    Exact: differences to the first vertex are reduced over the rationals;
    each nullspace basis vector becomes one integer equality (first nonzero
    coefficient positive).
    """
    vertices = vertex_set.vertices
    v0 = vertices[0]
    diffs = [[vi - v0i for vi, v0i in zip(v, v0)] for v in vertices[1:]]
    if not diffs:
        dim = 0
    else:
        dim = rank(diffs)
    space = diffs if diffs else [[0] * len(v0)]
    equalities = []
    for vec in nullspace(space):
        a = primitive(vec, orient=True)
        b = sum(ai * vi for ai, vi in zip(a, v0))
        equalities.append(Equality(a=a, b=int(b)))
    return dim, tuple(equalities)


def _hull_projection(vertex_set: VertexSet):
    """Pivot-coordinate chart of the affine hull.

    Returns (v0, pivot columns, reduced difference rows): a point z of the
    hull maps to t with t_j = z[pivots[j]] - v0[pivots[j]], and lifts back as
    z = v0 + sum_j t_j * row_j.
    """
    vertices = vertex_set.vertices
    v0 = vertices[0]
    diffs = [[vi - v0i for vi, v0i in zip(v, v0)] for v in vertices[1:]]
    if not diffs:
        return v0, [], []
    reduced, pivots = rref(diffs)
    return v0, pivots, reduced


def facet_enumerate(
    vertex_set: VertexSet,
    max_vertices: int = DEFAULT_FACET_VERTEX_LIMIT,
    max_dimension: int = DEFAULT_FACET_DIMENSION_LIMIT,
) -> HRepresentation:
    """Full exact facet system of the polytope.

    Gated by ``max_vertices`` and by the ambient dimension (the scenario's
    word count) via ``max_dimension``.  The polytope is projected onto pivot
    coordinates of its affine hull, converted there by double description,
    and the facets are lifted back; all arithmetic is rational, so the output
    is exact and irredundant.
    """
    ambient = len(vertex_set.scenario.words)
    if len(vertex_set.vertices) > max_vertices:
        raise ResourceLimitError(
            f"{len(vertex_set.vertices)} vertices exceed the facet gate {max_vertices}"
        )
    if ambient > max_dimension:
        raise ResourceLimitError(
            f"ambient dimension {ambient} exceeds the facet gate {max_dimension}"
        )
    dim, equalities = affine_hull(vertex_set)
    if dim == 0:
        return HRepresentation(equalities=equalities, facets=(), dimension=0)
    v0, pivots, _ = _hull_projection(vertex_set)
    projected = [tuple(v[p] - v0[p] for p in pivots) for v in vertex_set.vertices]
    facets = []
    for a_t, b_t in polytope_facets(projected):
        a = [0] * ambient
        for coeff, p in zip(a_t, pivots):
            a[p] = coeff
        b = b_t + sum(coeff * v0[p] for coeff, p in zip(a_t, pivots))
        norm = primitive(tuple(a) + (b,))
        facets.append(
            FacetInequality(a=norm[:-1], b=norm[-1], provenance="enumerated")
        )
    facets.sort(key=lambda f: (f.a, f.b))
    return HRepresentation(equalities=equalities, facets=tuple(facets), dimension=dim)


def _is_exact_point(z) -> bool:
    return all(
        isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in z
    )


def membership(
    z: Sequence,
    hrep: HRepresentation | None = None,
    vertex_set: VertexSet | None = None,
    tol: float = MEMBERSHIP_TOL,
) -> MembershipResult:
    """Classify a point as inside / boundary / outside the polytope.

    With an :class:`HRepresentation`: equality residues beyond ``tol`` or
    facet slacks below ``-tol`` mean outside (violations listed, largest
    first); otherwise a facet slack within ``tol`` of zero means boundary,
    and strictly positive slacks everywhere mean inside (relative interior;
    the affine-hull equalities do not count as boundary contact).

    With only a :class:`VertexSet`: the exact program
    max t s.t. z = sum mu_i v_i, sum mu_i = 1, mu_i >= t
    decides it (infeasible: outside; t = 0: boundary; t > 0: inside).  Points
    given as int/Fraction are handled fully exactly and ``tol`` is ignored;
    float points are converted exactly and the in/out decision is relaxed by
    a ``tol``-box around z.  Note the two paths may differ within a ``tol``
    shell just inside a facet (the vertex path reports inside there).

    Zero-dimensional polytopes report boundary at their single point.
    """
    if hrep is None and vertex_set is None:
        raise ValueError("membership needs an HRepresentation or a VertexSet")
    exact = _is_exact_point(z)
    if hrep is not None:
        return _membership_by_facets(z, hrep, 0.0 if exact else tol)
    return _membership_by_vertices(z, vertex_set, exact, tol)


def _membership_by_facets(z, hrep: HRepresentation, tol: float) -> MembershipResult:
    violations = []
    exact = tol == 0.0 and _is_exact_point(z)
    for i, eq in enumerate(hrep.equalities):
        if exact:
            residue = sum(ai * zi for ai, zi in zip(eq.a, z)) - eq.b
        else:
            residue = float(np.dot(eq.a, np.asarray(z, dtype=float))) - eq.b
        if abs(residue) > tol:
            violations.append(Violation("equality", i, float(abs(residue))))
    tight = False
    for i, facet in enumerate(hrep.facets):
        slack = facet.slack(z)
        if slack < -tol:
            violations.append(Violation("inequality", i, float(-slack)))
        elif abs(slack) <= tol:
            tight = True
    if violations:
        violations.sort(key=lambda v: -v.amount)
        return MembershipResult("outside", tuple(violations))
    if hrep.dimension == 0:
        return MembershipResult("boundary")
    return MembershipResult("boundary" if tight else "inside")


def _relint_lp(z_exact, vertices):
    """LP data for: max t, sum mu_i v_i = z, sum mu_i = 1, mu_i - t - s_i = 0."""
    k = len(vertices)
    ambient = len(vertices[0])
    nvars = k + 1 + k  # mu, t, slacks
    A = []
    b = []
    for coord in range(ambient):
        row = [Fraction(vertices[i][coord]) for i in range(k)] + [Fraction(0)] * (k + 1)
        A.append(row)
        b.append(Fraction(z_exact[coord]))
    A.append([Fraction(1)] * k + [Fraction(0)] * (k + 1))
    b.append(Fraction(1))
    for i in range(k):
        row = [Fraction(0)] * nvars
        row[i] = Fraction(1)
        row[k] = Fraction(-1)
        row[k + 1 + i] = Fraction(-1)
        A.append(row)
        b.append(Fraction(0))
    c = [Fraction(0)] * nvars
    c[k] = Fraction(1)
    return A, b, c


def _membership_by_vertices(z, vertex_set: VertexSet, exact: bool, tol: float) -> MembershipResult:
    vertices = vertex_set.vertices
    z_exact = [x if isinstance(x, (int, Fraction)) else Fraction(float(x)) for x in z]
    if len(z_exact) != len(vertices[0]):
        raise ValueError(
            f"point has {len(z_exact)} coordinates, polytope {len(vertices[0])}"
        )
    if len(vertices) == 1:
        match_exact = all(zi == vi for zi, vi in zip(z_exact, vertices[0]))
        if exact:
            return MembershipResult("boundary" if match_exact else "outside")
        close = all(abs(float(zi) - vi) <= tol for zi, vi in zip(z_exact, vertices[0]))
        return MembershipResult("boundary" if close else "outside")
    A, b, c = _relint_lp(z_exact, vertices)
    result = lp_maximize(A, b, c)
    if result.status == "optimal":
        if result.value > 0:
            return MembershipResult("inside")
        return MembershipResult("boundary")
    if exact:
        return MembershipResult("outside")
    # float point: retry with a tol-box around z before declaring outside
    if _box_feasible(z_exact, vertices, Fraction(float(tol))):
        return MembershipResult("boundary")
    return MembershipResult("outside")


def _box_feasible(z_exact, vertices, tol: Fraction) -> bool:
    """Feasibility of sum mu_i v_i in [z - tol, z + tol], sum mu = 1, mu >= 0."""
    k = len(vertices)
    ambient = len(vertices[0])
    # variables: mu (k), upper slacks (ambient), lower slacks (ambient)
    nvars = k + 2 * ambient
    A = []
    b = []
    for coord in range(ambient):
        row = [Fraction(vertices[i][coord]) for i in range(k)] + [Fraction(0)] * (2 * ambient)
        row[k + coord] = Fraction(1)
        A.append(row)
        b.append(Fraction(z_exact[coord]) + tol)
        row2 = [-x for x in row[:k]] + [Fraction(0)] * (2 * ambient)
        row2[k + ambient + coord] = Fraction(1)
        A.append(row2)
        b.append(tol - Fraction(z_exact[coord]))
    A.append([Fraction(1)] * k + [Fraction(0)] * (2 * ambient))
    b.append(Fraction(1))
    c = [Fraction(0)] * nvars
    return lp_maximize(A, b, c).status == "optimal"


def verify_facet(inequality: FacetInequality, vertex_set: VertexSet) -> FacetCheck:
    """Exact validity and facet-defining certificate for an inequality.

    Valid: every vertex satisfies a @ v <= b.  Facet-defining: additionally
    the saturating vertices span an affine space of dimension exactly
    dim(P) - 1.
    """
    vertices = vertex_set.vertices
    if any(len(v) != len(inequality.a) for v in vertices):
        raise ValueError("inequality width does not match the scenario")
    values = [sum(ai * vi for ai, vi in zip(inequality.a, v)) for v in vertices]
    valid = all(val <= inequality.b for val in values)
    saturating = [v for v, val in zip(vertices, values) if val == inequality.b]
    dim, _ = affine_hull(vertex_set)
    facet_defining = False
    if valid and saturating and dim >= 1:
        s0 = saturating[0]
        diffs = [[vi - v0i for vi, v0i in zip(v, s0)] for v in saturating[1:]]
        sat_dim = rank(diffs) if diffs else 0
        facet_defining = sat_dim == dim - 1
    return FacetCheck(
        valid=valid,
        facet_defining=facet_defining,
        saturating_count=len(saturating),
    )


def max_violation(inequality: FacetInequality, points: Iterable) -> tuple[Sequence, float]:
    """Point maximizing a @ z - b and that value; first maximizer wins ties."""
    best_point = None
    best_value = None
    a = np.array([float(x) for x in inequality.a])
    b = float(inequality.b)
    for point in points:
        value = float(np.dot(a, np.asarray(point, dtype=float))) - b
        if best_value is None or value > best_value:
            best_value = value
            best_point = point
    if best_point is None:
        raise ValueError("max_violation needs at least one point")
    return best_point, best_value


# -- serialization ------------------------------------------------------------


def _coeff_to_json(x):
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _coeff_from_json(x):
    if isinstance(x, bool):
        raise InvalidScenarioError("coefficients must be numbers or 'p/q' strings")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise InvalidScenarioError(f"cannot read coefficient {x!r}")


def inequality_to_dict(inequality: FacetInequality) -> dict:
    return {
        "a": [_coeff_to_json(x) for x in inequality.a],
        "b": _coeff_to_json(inequality.b),
    }


def inequality_from_dict(data) -> FacetInequality:
    if not isinstance(data, dict) or "a" not in data or "b" not in data:
        raise InvalidScenarioError('inequality JSON must carry "a" and "b"')
    return FacetInequality(
        a=tuple(_coeff_from_json(x) for x in data["a"]),
        b=_coeff_from_json(data["b"]),
        provenance="user-supplied",
    )


def load_inequality(path) -> FacetInequality:
    with open(path) as fh:
        return inequality_from_dict(json.load(fh))


def polytope_to_dict(
    vertex_set: VertexSet,
    equalities: Sequence[Equality],
    facets: Sequence[FacetInequality] | None = None,
) -> dict:
    out = {
        "scenario": scenario_to_dict(vertex_set.scenario)["words"],
        "vertices": [list(v) for v in vertex_set.vertices],
        "equalities": [
            {"a": [int(x) for x in eq.a], "b": int(eq.b)} for eq in equalities
        ],
    }
    if facets is not None:
        out["facets"] = [inequality_to_dict(f) for f in facets]
    return out


def save_polytope(data: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
