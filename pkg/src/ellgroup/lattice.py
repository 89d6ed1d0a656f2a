"""Exact subgroups of Z^N ("integer lattices") in canonical Hermite form.

Every lattice is stored through its unique row-style Hermite basis: rows
ordered by pivot column, pivots positive, entries above a pivot reduced into
[0, pivot).  Equality of subgroups is therefore equality of dataclasses.
All arithmetic is plain Python int (arbitrary precision, no overflow).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

Vec = tuple[int, ...]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _echelon(rows: Sequence[Sequence[int]], dim: int, transform: bool = False):
    """Integer row echelon via xgcd pivoting.

    Returns (H, U, rank) where H is echelon, U is unimodular with U*rows == H
    (only when transform=True), and rows rank..end of H are zero.
    """
    H = [list(r) for r in rows]
    m = len(H)
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transform else None
    r = 0
    for col in range(dim):
        piv = None
        for i in range(r, m):
            if H[i][col]:
                piv = i
                break
        if piv is None:
            continue
        H[r], H[piv] = H[piv], H[r]
        if transform:
            U[r], U[piv] = U[piv], U[r]
        for i in range(r + 1, m):
            if not H[i][col]:
                continue
            a, b = H[r][col], H[i][col]
            x, y, g = _xgcd(a, b)
            ag, bg = a // g, b // g
            Hr, Hi = H[r], H[i]
            for j in range(col, dim):
                hr, hi = Hr[j], Hi[j]
                Hr[j] = x * hr + y * hi
                Hi[j] = ag * hi - bg * hr
            if transform:
                Ur, Ui = U[r], U[i]
                for j in range(m):
                    ur, ui = Ur[j], Ui[j]
                    Ur[j] = x * ur + y * ui
                    Ui[j] = ag * ui - bg * ur
        r += 1
    return H, U, r


def _pivot(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    raise ValueError("zero row has no pivot")


def _hermite_normalize(rows: list[list[int]], dim: int) -> tuple[Vec, ...]:
    pivots = [_pivot(r) for r in rows]
    for i, row in enumerate(rows):
        if row[pivots[i]] < 0:
            rows[i] = [-x for x in row]
    for i in range(len(rows)):
        p = pivots[i]
        piv = rows[i][p]
        for k in range(i):
            q = rows[k][p] // piv
            if q:
                rows[k] = [a - q * b for a, b in zip(rows[k], rows[i])]
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class IntLattice:
    dim: int
    basis: tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def member(self, v: Sequence[int]) -> bool:
        if len(v) != self.dim:
            raise ValueError(f"vector length {len(v)} != lattice dimension {self.dim}")
        w = list(v)
        for row in self.basis:
            p = _pivot(row)
            if w[p]:
                q, rem = divmod(w[p], row[p])
                if rem:
                    return False
                for j in range(p, self.dim):
                    w[j] -= q * row[j]
        return not any(w)

    def contains_lattice(self, other: "IntLattice") -> bool:
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return all(self.member(row) for row in other.basis)


def canonical_basis(vectors: Iterable[Sequence[int]], dim: int) -> IntLattice:
    """Subgroup of Z^dim generated by `vectors`, in canonical form."""
    vecs = []
    for v in vectors:
        if len(v) != dim:
            raise ValueError(f"vector length {len(v)} != dimension {dim}")
        vecs.append(list(v))
    H, _, r = _echelon(vecs, dim)
    return IntLattice(dim, _hermite_normalize(H[:r], dim))


def zero_lattice(dim: int) -> IntLattice:
    return IntLattice(dim, ())


def full_lattice(dim: int) -> IntLattice:
    return IntLattice(dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))


def lattice_sum(a: IntLattice, b: IntLattice) -> IntLattice:
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    return canonical_basis(a.basis + b.basis, a.dim)


def _left_kernel(rows: Sequence[Sequence[int]], width: int) -> list[list[int]]:
    """Basis of {u in Z^len(rows) : sum_i u_i rows_i == 0}."""
    H, U, r = _echelon(rows, width, transform=True)
    return U[r:]


def _combine(coeffs: Sequence[int], rows: Sequence[Vec], dim: int) -> list[int]:
    v = [0] * dim
    for c, row in zip(coeffs, rows):
        if c:
            for j in range(dim):
                v[j] += c * row[j]
    return v


def lattice_intersect(a: IntLattice, b: IntLattice) -> IntLattice:
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    rows = list(a.basis) + list(b.basis)
    if not a.basis or not b.basis:
        return zero_lattice(a.dim)
    kernel = _left_kernel(rows, a.dim)
    m1 = len(a.basis)
    vecs = [_combine(u[:m1], a.basis, a.dim) for u in kernel]
    return canonical_basis(vecs, a.dim)


def section(lat: IntLattice, zeroed: Iterable[int]) -> IntLattice:
    """Sublattice {v in lat : v[j] == 0 for all j in zeroed}."""
    cols = sorted(set(zeroed))
    for j in cols:
        if not (0 <= j < lat.dim):
            raise ValueError(f"coordinate {j} out of range for dimension {lat.dim}")
    if not cols or not lat.basis:
        return lat
    sub = [[row[j] for j in cols] for row in lat.basis]
    kernel = _left_kernel(sub, len(cols))
    vecs = [_combine(u, lat.basis, lat.dim) for u in kernel]
    return canonical_basis(vecs, lat.dim)


def escapes_sections(lat: IntLattice, sections: Sequence[IntLattice]) -> Optional[Vec]:
    """Element of `lat` lying in none of the given section-sublattices.

    Returns None iff `lat` equals one of the sections.  Each section must be
    contained in `lat` with torsion-free quotient (anything produced by
    `section` qualifies); then a proper section lies inside a rational
    hyperplane of coefficient space, so on the moment curve (1, t, t^2, ...)
    each section excludes at most rank-1 values of t, and a witness exists
    with t <= len(sections)*(rank-1).
    """
    for s in sections:
        if s.dim != lat.dim:
            raise ValueError("dimension mismatch")
        if not lat.contains_lattice(s):
            raise ValueError("section not contained in the lattice")
    for s in sections:
        if s == lat:
            return None
    r = lat.rank
    if r == 0:
        return tuple([0] * lat.dim)
    limit = len(sections) * max(r - 1, 0)
    for t in range(limit + 1):
        coeffs = [t**k for k in range(r)]
        v = tuple(_combine(coeffs, lat.basis, lat.dim))
        if all(not s.member(v) for s in sections):
            return v
    raise RuntimeError("witness search exceeded its proven bound")
