"""Toroidal maps as lattice quotients of the three regular tessellations.

A map {4,4}_(b,c), {3,6}_(b,c) or {6,3}_(b,c) is the quotient of the
corresponding tessellation of the plane by the translation lattice
spanned by (b, c) and its rotated image. Flags are enumerated as
(fundamental cell, local flag) with cells reduced to a canonical coset
representative, so labels are deterministic across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .maniplex import (Maniplex, PreconditionError, RootedManiplex, Symmetry,
                       classify_symmetry, colour_components)
from .permcore import Perm

FAMILIES = ("44", "36", "63")


@dataclass(frozen=True)
class TorusParams:
    family: str
    b: int
    c: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("family must be one of %s" % (FAMILIES,))
        if (self.b, self.c) == (0, 0):
            raise ValueError("translation vector (0,0) does not span a lattice")

    def __str__(self) -> str:
        return "{%s,%s}_(%d,%d)" % (self.family[0], self.family[1], self.b, self.c)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with g = gcd(a,b) >= 0 and u*a + v*b = g."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


class Lattice2D:
    """Full-rank sublattice of Z^2 with canonical coset representatives."""

    def __init__(self, g1: tuple[int, int], g2: tuple[int, int]):
        det = g1[0] * g2[1] - g1[1] * g2[0]
        if det == 0:
            raise ValueError("degenerate lattice basis")
        self.g1, self.g2 = g1, g2
        self.det = det
        self.index = abs(det)
        # lower-triangular basis (a, 0), (e, f): reps live in [0,a) x [0,f)
        f, u, v = _egcd(g1[1], g2[1])
        row2 = (u * g1[0] + v * g2[0], f)
        a = abs((g2[1] // f) * g1[0] - (g1[1] // f) * g2[0])
        self.a, self.f = a, f
        self.e = row2[0] % a

    def canon(self, x: int, y: int) -> tuple[int, int]:
        t = y // self.f
        x -= t * self.e
        y -= t * self.f
        return (x % self.a, y)

    def contains(self, v: tuple[int, int]) -> bool:
        alpha = v[0] * self.g2[1] - v[1] * self.g2[0]
        beta = self.g1[0] * v[1] - self.g1[1] * v[0]
        return alpha % self.det == 0 and beta % self.det == 0

    def cells(self) -> list[tuple[int, int]]:
        return [(x, y) for y in range(self.f) for x in range(self.a)]


def lattice_for(p: TorusParams) -> Lattice2D:
    if p.family == "44":
        return Lattice2D((p.b, p.c), (-p.c, p.b))
    # triangular basis for both {3,6} and {6,3}
    return Lattice2D((p.b, p.c), (-p.c, p.b + p.c))


def _build_44(p: TorusParams) -> RootedManiplex:
    lat = lattice_for(p)
    cells = lat.cells()
    cell_index = {c: i for i, c in enumerate(cells)}
    # flag = (cell, corner k in 0..3, which in {vertex-end 0, edge-end 1})
    # corner k sits at offset off[k]; edge k joins corners k and k+1
    off = ((0, 0), (1, 0), (1, 1), (0, 1))
    # edge j of a cell meets edge j' of the neighbouring cell at (dx,dy)
    edge_nbr = ((0, -1, 2), (1, 0, 3), (0, 1, 0), (-1, 0, 1))

    def idx(cell: int, k: int, which: int) -> int:
        return (cell * 4 + k) * 2 + which

    N = len(cells) * 8
    r0 = [0] * N
    r1 = [0] * N
    r2 = [0] * N
    for ci, (x, y) in enumerate(cells):
        for k in range(4):
            for which in range(2):
                v = idx(ci, k, which)
                # r_0 swaps the two vertices of an edge within the face
                if which == 0:
                    r0[v] = idx(ci, (k + 1) % 4, 1)
                else:
                    r0[v] = idx(ci, (k + 3) % 4, 0)
                r1[v] = idx(ci, k, 1 - which)
                j = k if which == 0 else (k - 1) % 4
                dx, dy, j2 = edge_nbr[j]
                pos = (x + off[k][0], y + off[k][1])
                nx, ny = x + dx, y + dy
                k2 = next(kk for kk in range(4)
                          if (nx + off[kk][0], ny + off[kk][1]) == pos)
                which2 = 0 if j2 == k2 else 1
                if which2 == 1:
                    assert j2 == (k2 - 1) % 4
                ci2 = cell_index[lat.canon(nx, ny)]
                r2[v] = idx(ci2, k2, which2)
    man = Maniplex(rank=3, adjacency=(Perm(r0), Perm(r1), Perm(r2)))
    return RootedManiplex(man, base_flag=idx(cell_index[lat.canon(0, 0)], 0, 0))


# up triangle (t=0) has corners (0,0),(1,0),(0,1); down (t=1) has
# (1,0),(1,1),(0,1); edge j joins corners j and j+1
_TRI_OFF = (((0, 0), (1, 0), (0, 1)), ((1, 0), (1, 1), (0, 1)))
# (t, edge j) -> (dx, dy, t', edge j')
_TRI_NBR = {
    (0, 0): (0, -1, 1, 1),
    (0, 1): (0, 0, 1, 2),
    (0, 2): (-1, 0, 1, 0),
    (1, 0): (1, 0, 0, 2),
    (1, 1): (0, 1, 0, 0),
    (1, 2): (0, 0, 0, 1),
}


def _build_36(p: TorusParams) -> RootedManiplex:
    lat = lattice_for(p)
    cells = lat.cells()
    cell_index = {c: i for i, c in enumerate(cells)}

    def idx(cell: int, t: int, k: int, which: int) -> int:
        return ((cell * 2 + t) * 3 + k) * 2 + which

    N = len(cells) * 12
    r0 = [0] * N
    r1 = [0] * N
    r2 = [0] * N
    for ci, (x, y) in enumerate(cells):
        for t in range(2):
            for k in range(3):
                for which in range(2):
                    v = idx(ci, t, k, which)
                    if which == 0:
                        r0[v] = idx(ci, t, (k + 1) % 3, 1)
                    else:
                        r0[v] = idx(ci, t, (k + 2) % 3, 0)
                    r1[v] = idx(ci, t, k, 1 - which)
                    j = k if which == 0 else (k - 1) % 3
                    dx, dy, t2, j2 = _TRI_NBR[(t, j)]
                    pos = (x + _TRI_OFF[t][k][0], y + _TRI_OFF[t][k][1])
                    nx, ny = x + dx, y + dy
                    k2 = next(kk for kk in range(3)
                              if (nx + _TRI_OFF[t2][kk][0], ny + _TRI_OFF[t2][kk][1]) == pos)
                    which2 = 0 if j2 == k2 else 1
                    if which2 == 1:
                        assert j2 == (k2 - 1) % 3
                    ci2 = cell_index[lat.canon(nx, ny)]
                    r2[v] = idx(ci2, t2, k2, which2)
    man = Maniplex(rank=3, adjacency=(Perm(r0), Perm(r1), Perm(r2)))
    return RootedManiplex(man, base_flag=idx(cell_index[lat.canon(0, 0)], 0, 0, 0))


def build_toroidal_map(p: TorusParams) -> RootedManiplex:
    if p.family == "44":
        return _build_44(p)
    rooted = _build_36(p)
    if p.family == "36":
        return rooted
    # {6,3} is the dual of {3,6}: reverse the colour roles
    man = rooted.maniplex
    dual = Maniplex(rank=3, adjacency=tuple(reversed(man.adjacency)))
    return RootedManiplex(dual, base_flag=rooted.base_flag)


def expected_flag_count(p: TorusParams) -> int:
    if p.family == "44":
        return 8 * (p.b * p.b + p.c * p.c)
    return 12 * (p.b * p.b + p.b * p.c + p.c * p.c)


def canonical_params(p: TorusParams) -> TorusParams:
    """Rotate (b, c) by the lattice symmetry into b > 0, c >= 0.

    The quotient lattice is invariant under its point rotation, so this
    does not change the map; exactly one rotate lies in that sector.
    """
    b, c = p.b, p.c
    for _ in range(6):
        if b > 0 and c >= 0:
            return TorusParams(p.family, b, c)
        if p.family == "44":
            b, c = -c, b
        else:
            b, c = -c, b + c
    raise AssertionError("rotation orbit missed the canonical sector")


def is_chiral_params(p: TorusParams) -> bool:
    q = canonical_params(p)
    return q.b * q.c * (q.b - q.c) != 0


@dataclass(frozen=True)
class QuotientResult:
    params: TorusParams
    rooted: RootedManiplex


def _facet_count(p: TorusParams) -> int:
    index = lattice_for(p).index
    if p.family == "44":
        return index
    if p.family == "36":
        return 2 * index
    return index  # hexagonal faces of {6,3}


def regular_quotient(p: TorusParams) -> QuotientResult | None:
    """Largest regular toroidal quotient with at least two facets.

    Candidates are the reflexible parameter forms (d,0) and (d,d); the
    quotient exists when the given lattice is contained in theirs.
    """
    lat = lattice_for(p)
    best: tuple[int, TorusParams] | None = None
    dmax = math.isqrt(lat.index) + 1
    for d in range(1, dmax + 1):
        for form in ((d, 0), (d, d)):
            try:
                cand = TorusParams(p.family, *form)
            except ValueError:
                continue
            clat = lattice_for(cand)
            if not (clat.contains(lat.g1) and clat.contains(lat.g2)):
                continue
            nfacets = _facet_count(cand)
            if nfacets < 2:
                continue
            if best is None or nfacets > best[0]:
                best = (nfacets, cand)
    if best is None:
        return None
    rooted = build_toroidal_map(best[1])
    assert classify_symmetry(rooted) is Symmetry.REGULAR
    assert len(colour_components(rooted.maniplex, range(rooted.rank - 1))) >= 2
    return QuotientResult(params=best[1], rooted=rooted)
