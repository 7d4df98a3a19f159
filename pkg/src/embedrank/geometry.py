"""Designs from finite affine and projective geometries.

AG_d(n, q): points are the vectors of GF(q)^n, blocks the cosets of all
d-dimensional linear subspaces.  PG_d(n, q): points are the 1-dimensional
subspaces of GF(q)^(n+1) (normalized representatives, first nonzero
coordinate 1), blocks the (d+1)-dimensional subspaces.

Everything is enumerated in a fixed order so repeated runs are identical:
field elements by their integer encoding, vectors lexicographically, and
subspaces by their reduced-row-echelon canonical matrices (pivot columns in
lexicographic order, then free entries odometer-style).
"""

from __future__ import annotations

from itertools import combinations, product

from .designs import IncidenceStructure, Resolution
from .errors import WrongParameters
from .fields import FieldSpec, field_from_order

Vector = tuple[int, ...]


def _vec_add(spec: FieldSpec, a: Vector, b: Vector) -> Vector:
    add = spec.add
    return tuple(add[x][y] for x, y in zip(a, b))


def _vec_scale(spec: FieldSpec, s: int, a: Vector) -> Vector:
    mul = spec.mul
    row = mul[s]
    return tuple(row[x] for x in a)


def _rref_subspaces(spec: FieldSpec, ambient: int, dim: int):
    """Yield bases (tuples of rows) of all dim-subspaces of GF(q)^ambient.

    One basis per subspace, in RREF canonical form.  Deterministic order:
    pivot column sets lexicographically, free entries counted row-major.
    """
    q = spec.order
    for pivots in combinations(range(ambient), dim):
        pivot_set = set(pivots)
        free_pos = [
            (i, j)
            for i in range(dim)
            for j in range(pivots[i] + 1, ambient)
            if j not in pivot_set
        ]
        for values in product(range(q), repeat=len(free_pos)):
            rows = [[0] * ambient for _ in range(dim)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), val in zip(free_pos, values):
                rows[i][j] = val
            yield tuple(tuple(r) for r in rows)


def _span(spec: FieldSpec, basis) -> list[Vector]:
    """All GF(q)-combinations of the basis rows (q^dim vectors)."""
    q = spec.order
    dim = len(basis)
    ambient = len(basis[0])
    zero = tuple([0] * ambient)
    out = []
    for coeffs in product(range(q), repeat=dim):
        vec = zero
        for c, row in zip(coeffs, basis):
            if c:
                vec = _vec_add(spec, vec, _vec_scale(spec, c, row))
        out.append(vec)
    return out


def _point_index(vec: Vector, q: int) -> int:
    idx = 0
    for x in vec:
        idx = idx * q + x
    return idx


def _index_point(idx: int, q: int, n: int) -> Vector:
    digits = []
    for _ in range(n):
        digits.append(idx % q)
        idx //= q
    return tuple(reversed(digits))


def ag_design(n: int, q: int, d: int) -> tuple[IncidenceStructure, Resolution]:
    """The 2-design of d-flats of AG(n, q), plus its classical resolution.

    Points are indexed lexicographically; the cosets of each subspace form one
    parallel class, ordered by least contained point.  For d = n - 1 the
    returned resolution is the unique one.
    """
    if not 1 <= d < n:
        raise WrongParameters("need 1 <= d < n")
    spec = field_from_order(q)
    npoints = q**n
    blocks: list[tuple[int, ...]] = []
    classes: list[tuple[int, ...]] = []
    for basis in _rref_subspaces(spec, n, d):
        members = sorted(_point_index(v, q) for v in _span(spec, basis))
        covered = [False] * npoints
        cls = []
        for start in range(npoints):
            if covered[start]:
                continue
            rep = _index_point(start, q, n)
            coset = sorted(
                _point_index(_vec_add(spec, rep, _index_point(m, q, n)), q)
                for m in members
            )
            for x in coset:
                covered[x] = True
            cls.append(len(blocks))
            blocks.append(tuple(coset))
        classes.append(tuple(cls))
    design = IncidenceStructure(npoints, blocks, name=f"AG_{d}({n},{q})")
    return design, Resolution(classes=tuple(classes))


def pg_design(n: int, q: int, d: int) -> IncidenceStructure:
    """The 2-design of d-subspaces of PG(n, q)."""
    if not 1 <= d < n:
        raise WrongParameters("need 1 <= d < n")
    spec = field_from_order(q)
    ambient = n + 1

    points: list[Vector] = []
    for lead in range(ambient - 1, -1, -1):
        for rest in product(range(q), repeat=ambient - 1 - lead):
            points.append(tuple([0] * lead) + (1,) + rest)
    index = {v: i for i, v in enumerate(points)}

    inv = [0] + [spec.inv(a) for a in range(1, q)]
    blocks = []
    for basis in _rref_subspaces(spec, ambient, d + 1):
        members = set()
        for vec in _span(spec, basis):
            first = next((x for x in vec if x), 0)
            if not first:
                continue
            members.add(index[_vec_scale(spec, inv[first], vec)])
        blocks.append(tuple(sorted(members)))
    return IncidenceStructure(len(points), blocks, name=f"PG_{d}({n},{q})")
