"""Evolution engine for the cube recurrence in all four geometries.

The update at vertex v and time t (with t congruent to the color of v mod 3,
t >= color + 3) is

    f_v(t) * f_v(t-3) = sum over the three axes e of
                        f_{v+e}(t-1) * f_{v-e}(t-2)

with f_v(color(v)) = x_v on the initial slice, boundary values pinned to 1
(triangle and cylinder), and variables canonicalized through the region's
quotient (cylinder and torus).  Every division is exact in the Laurent ring;
a failed division is a bug, never data.

Values are memoized per state on (canonical vertex, t).  A numeric
specialization replaces the initial variables by constants; everything else
runs through the same symbolic engine, so numeric results are exact
rationals.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Iterator, Mapping

from .laurent import ONE, LaurentPoly
from .lattice import (
    AXES,
    Cylinder,
    OutOfRegion,
    Plane,
    Region,
    Torus,
    Triangle,
    Vertex,
    color,
    vadd,
    vscale,
    vsub,
)


class BadParity(Exception):
    """f_v(t) requested at a time not congruent to the color of v mod 3."""


class RecurrenceState:
    """Memoized cube-recurrence values over one region.

    ``assign`` maps canonical variables to rationals for a numeric
    specialization; unassigned states run fully symbolically.  The cache is
    the only mutable piece; values handed out are immutable polynomials.
    """

    def __init__(self, region: Region, assign: Mapping[Vertex, Fraction] | None = None):
        self.region = region
        self.assign = (
            None
            if assign is None
            else {region.canonicalize(v): Fraction(q) for v, q in assign.items()}
        )
        self._cache: dict = {}

    # -- initial data ------------------------------------------------------

    def initial(self, canon: Vertex) -> LaurentPoly:
        if self.assign is not None and canon in self.assign:
            return LaurentPoly.constant(self.assign[canon])
        return LaurentPoly.variable(canon)

    # -- the recurrence ----------------------------------------------------

    def value(self, v: Vertex, t: int) -> LaurentPoly:
        """f_v(t), computed recursively with memoization."""
        region = self.region
        if not region.contains(v):
            raise OutOfRegion(f"{v} is not in the region")
        if isinstance(region, Cylinder) and region.is_boundary(v):
            return ONE  # cylinder boundary is 1 at every time
        eps = color(v)
        if t % 3 != eps:
            raise BadParity(f"t={t} but color({v})={eps}")
        if t < eps:
            raise ValueError(f"t={t} is before the initial slice at {eps}")
        return self._value(region.canonicalize(v), t)

    def _value(self, canon: Vertex, t: int) -> LaurentPoly:
        cached = self._cache.get((canon, t))
        if cached is not None:
            return cached
        region = self.region
        if isinstance(region, Triangle) and region.is_boundary(canon):
            result = ONE
        elif t == color(canon):
            result = self.initial(canon)
        else:
            num = LaurentPoly.zero()
            for e in AXES:
                num = num + self._neighbor(vadd(canon, e), t - 1) * self._neighbor(
                    vsub(canon, e), t - 2
                )
            result = num.div_exact(self._value(canon, t - 3))
        self._cache[(canon, t)] = result
        return result

    def _neighbor(self, v: Vertex, t: int) -> LaurentPoly:
        region = self.region
        if isinstance(region, (Triangle, Cylinder)) and region.is_boundary(v):
            return ONE
        return self._value(region.canonicalize(v), t)

    # -- batch drivers -----------------------------------------------------

    def evolve_slice(self, t_max: int) -> dict:
        """All defined values f_v(t) with t <= t_max, keyed by (v, t), for
        every canonical vertex of a bounded region (triangle, cylinder
        window, torus fundamental domain)."""
        if t_max < 0:
            raise ValueError("t_max must be nonnegative")
        region = self.region
        if isinstance(region, Plane):
            raise ValueError("evolve_slice needs a bounded region")
        verts = region.vertices()
        depth = max(64, 16 * (t_max + 4))
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, depth))
        try:
            out = {}
            for t in range(t_max + 1):
                for v in verts:
                    if t % 3 == color(v):
                        out[(v, t)] = self.value(v, t)
            return out
        finally:
            sys.setrecursionlimit(old)

    def flatten_cylinder_sequence(
        self, v: Vertex, mode: str = "shifted"
    ) -> Iterator[LaurentPoly]:
        """Stream of cylinder values along a vertex line.

        fixed-vertex mode yields f_v(eps + 3t); shifted mode yields
        f_{v + l*g}(eps + 2*l*n), the sequence whose linear recurrence the
        grove coefficients govern.
        """
        region = self.region
        if not isinstance(region, Cylinder):
            raise ValueError("cylinder sequences need a Cylinder region")
        if not region.contains(v):
            raise OutOfRegion(f"{v} is not in the strip")
        eps = color(v)
        if mode == "fixed-vertex":
            t = eps
            while True:
                yield self.value(v, t)
                t += 3
        elif mode == "shifted":
            ell = 0
            while True:
                yield self.value(
                    vadd(v, vscale(ell, region.g)), eps + 2 * ell * region.n
                )
                ell += 1
        else:
            raise ValueError(f"unknown mode {mode!r}")


def triangle_table(m: int, assign: Mapping[Vertex, Fraction], t_max: int) -> dict:
    """Convenience: evolve a numeric triangle and return {(v, t): Fraction}
    for the interior vertices (the layout of the worked m=5 table)."""
    region = Triangle(m)
    state = RecurrenceState(region, assign=assign)
    values = state.evolve_slice(t_max)
    out = {}
    for (v, t), poly in values.items():
        if not region.is_boundary(v):
            out[(v, t)] = poly.constant_value()
    return out
