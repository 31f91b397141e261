"""Triangular-lattice geometry: vertices, colors, step vectors and the four
region kinds (plane, triangle, strip/cylinder, torus) with their quotient
canonicalization and boundary predicates.

A vertex is a plain integer triple (i, j, k) with i + j + k equal to the
region's plane index (m for the triangle, 0 otherwise).  Its color is
(j - k) mod 3; the dynamics at a vertex is only defined at times congruent
to its color mod 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .laurent import format_var, parse_var  # re-exported: vertex string form

Vertex = tuple  # tuple[int, int, int]

E12: Vertex = (1, -1, 0)
E23: Vertex = (0, 1, -1)
E31: Vertex = (-1, 0, 1)
AXES = (E12, E23, E31)


class OutOfRegion(Exception):
    """A vertex does not belong to the region (or is outside its domain)."""


def vadd(u: Vertex, v: Vertex) -> Vertex:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def vsub(u: Vertex, v: Vertex) -> Vertex:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def vscale(c: int, v: Vertex) -> Vertex:
    return (c * v[0], c * v[1], c * v[2])


def color(v: Vertex) -> int:
    """Color in {0, 1, 2}; 0 is drawn red, 1 green, 2 blue."""
    return (v[1] - v[2]) % 3


def neighbors(v: Vertex):
    """The six lattice neighbors, in the fixed order
    (+e12, -e12, +e23, -e23, +e31, -e31)."""
    return (
        vadd(v, E12),
        vsub(v, E12),
        vadd(v, E23),
        vsub(v, E23),
        vadd(v, E31),
        vsub(v, E31),
    )


def rotate(m: int, v: Vertex) -> Vertex:
    """Counterclockwise rotation sigma(i,j,k) = (j,k,i) of the triangle."""
    if not (v[0] >= 0 and v[1] >= 0 and v[2] >= 0 and sum(v) == m):
        raise OutOfRegion(f"{v} is not in the triangle of size {m}")
    return (v[1], v[2], v[0])


@dataclass(frozen=True)
class Plane:
    """The full plane i + j + k = 0; no quotient, no boundary."""

    def contains(self, v: Vertex) -> bool:
        return sum(v) == 0

    def is_boundary(self, v: Vertex) -> bool:
        return False

    def canonicalize(self, v: Vertex) -> Vertex:
        if sum(v) != 0:
            raise OutOfRegion(f"{v} not on the plane i+j+k=0")
        return v


@dataclass(frozen=True)
class Triangle:
    """The triangle of side m in the plane i + j + k = m (m >= 3)."""

    m: int

    def __post_init__(self):
        if self.m < 3:
            raise ValueError("triangle needs m >= 3")

    def contains(self, v: Vertex) -> bool:
        return sum(v) == self.m and min(v) >= 0

    def is_boundary(self, v: Vertex) -> bool:
        return min(v) == 0

    def canonicalize(self, v: Vertex) -> Vertex:
        if not self.contains(v):
            raise OutOfRegion(f"{v} not in the triangle of size {self.m}")
        return v

    def vertices(self):
        m = self.m
        return [
            (i, j, m - i - j) for i in range(m + 1) for j in range(m + 1 - i)
        ]


@dataclass(frozen=True)
class Cylinder:
    """The strip 0 <= i <= m quotiented by the shift 3g, g = n*e23.

    Canonical representatives have 0 <= j < 3n, matching the convention the
    grove weight products use.
    """

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 2:
            raise ValueError("cylinder needs n >= 1 and m >= 2")

    @property
    def g(self) -> Vertex:
        return (0, self.n, -self.n)

    @property
    def shift(self) -> Vertex:
        """The quotient shift 3g."""
        return (0, 3 * self.n, -3 * self.n)

    def contains(self, v: Vertex) -> bool:
        return sum(v) == 0 and 0 <= v[0] <= self.m

    def is_boundary(self, v: Vertex) -> bool:
        return v[0] == 0 or v[0] == self.m

    def canonicalize(self, v: Vertex) -> Vertex:
        if not self.contains(v):
            raise OutOfRegion(f"{v} not in the strip 0 <= i <= {self.m}")
        i, j, _ = v
        jc = j % (3 * self.n)
        return (i, jc, -i - jc)

    def vertices(self):
        """One fundamental window of canonical representatives."""
        return [
            (i, j, -i - j) for i in range(self.m + 1) for j in range(3 * self.n)
        ]

    def interior_variables(self):
        return [v for v in self.vertices() if not self.is_boundary(v)]


def _snf_2x2(mat):
    """Smith normal form of a 2x2 integer matrix: returns (U, D) with
    U unimodular, D = (d1, d2) diagonal, and U @ mat @ V = diag(D) for some
    unimodular V (V is not needed for quotient reduction)."""
    a, b, c, d = mat[0][0], mat[0][1], mat[1][0], mat[1][1]
    U = [[1, 0], [0, 1]]
    M = [[a, b], [c, d]]

    def row_op(r1, r2, q):
        # r1 -= q * r2, applied to M and U
        M[r1][0] -= q * M[r2][0]
        M[r1][1] -= q * M[r2][1]
        U[r1][0] -= q * U[r2][0]
        U[r1][1] -= q * U[r2][1]

    def col_op(c1, c2, q):
        M[0][c1] -= q * M[0][c2]
        M[1][c1] -= q * M[1][c2]

    def swap_rows():
        M[0], M[1] = M[1], M[0]
        U[0], U[1] = U[1], U[0]

    def swap_cols():
        M[0][0], M[0][1] = M[0][1], M[0][0]
        M[1][0], M[1][1] = M[1][1], M[1][0]

    if M[0][0] == 0:
        if M[1][0] != 0:
            swap_rows()
        elif M[0][1] != 0:
            swap_cols()
        else:
            swap_rows()
            swap_cols()
    # Euclid on the first row/column until both off-pivot entries vanish.
    while M[1][0] != 0 or M[0][1] != 0:
        if M[1][0] != 0:
            q = M[1][0] // M[0][0]
            row_op(1, 0, q)
            if M[1][0] != 0:
                swap_rows()
            continue
        q = M[0][1] // M[0][0]
        col_op(1, 0, q)
        if M[0][1] != 0:
            swap_cols()
    d1, d2 = abs(M[0][0]), abs(M[1][1])
    if M[0][0] < 0:
        U[0][0], U[0][1] = -U[0][0], -U[0][1]
    if M[1][1] < 0:
        U[1][0], U[1][1] = -U[1][0], -U[1][1]
    return U, (d1, d2)


@dataclass(frozen=True)
class Torus:
    """The plane quotiented by ZA + ZB for independent A, B of color 0.

    Reduction uses the Smith normal form of the matrix of (A, B) written in
    the (e12, e23) basis, computed once at construction.
    """

    A: Vertex
    B: Vertex
    _snf: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for w in (self.A, self.B):
            if sum(w) != 0:
                raise ValueError(f"{w} is not in the plane i+j+k=0")
            if color(w) != 0:
                raise ValueError(f"shift vector {w} must have color 0")
        # basis coordinates: v = a*e12 + b*e23 with a = i, b = -k
        mat = [[self.A[0], self.B[0]], [-self.A[2], -self.B[2]]]
        det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
        if det == 0:
            raise ValueError("torus shift vectors must be linearly independent")
        U, D = _snf_2x2(mat)
        # U inverse, exact since det(U) = +-1
        du = U[0][0] * U[1][1] - U[0][1] * U[1][0]
        Uinv = [
            [U[1][1] // du, -U[0][1] // du],
            [-U[1][0] // du, U[0][0] // du],
        ]
        object.__setattr__(self, "_snf", (U, Uinv, D))

    def contains(self, v: Vertex) -> bool:
        return sum(v) == 0

    def is_boundary(self, v: Vertex) -> bool:
        return False

    def canonicalize(self, v: Vertex) -> Vertex:
        if sum(v) != 0:
            raise OutOfRegion(f"{v} not on the plane i+j+k=0")
        U, Uinv, (d1, d2) = self._snf
        a, b = v[0], -v[2]
        y1 = (U[0][0] * a + U[0][1] * b) % d1
        y2 = (U[1][0] * a + U[1][1] * b) % d2
        ca = Uinv[0][0] * y1 + Uinv[0][1] * y2
        cb = Uinv[1][0] * y1 + Uinv[1][1] * y2
        return (ca, cb - ca, -cb)

    def vertices(self):
        """Canonical representatives of the fundamental domain."""
        _, Uinv, (d1, d2) = self._snf
        out = []
        for y1 in range(d1):
            for y2 in range(d2):
                a = Uinv[0][0] * y1 + Uinv[0][1] * y2
                b = Uinv[1][0] * y1 + Uinv[1][1] * y2
                out.append((a, b - a, -b))
        return sorted(out)

    def num_classes(self) -> int:
        _, _, (d1, d2) = self._snf
        return d1 * d2


Region = Plane | Triangle | Cylinder | Torus
