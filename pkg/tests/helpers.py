"""Shared oracles and small hand-built flag graphs for the tests."""

from __future__ import annotations

from itertools import product

from chirex.maniplex import Maniplex, RootedManiplex
from chirex.permcore import Perm


def brute_force_closure(gens, degree: int, cap: int = 10_000):
    """All elements of the generated group by plain multiplication,
    independent of the stabiliser-chain code. None if the cap is hit."""
    ident = Perm.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = p * g
                if q not in seen:
                    if len(seen) >= cap:
                        return None
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def polygon(p: int) -> RootedManiplex:
    """Flag graph of the p-gon: 2p flags around a cycle."""
    n = 2 * p
    r0 = Perm.from_cycles(n, [(2 * i, 2 * i + 1) for i in range(p)])
    r1 = Perm.from_cycles(n, [(2 * i + 1, (2 * i + 2) % n) for i in range(p)])
    return RootedManiplex(Maniplex(2, (r0, r1)), 0)


def polyhedron(face_cycles) -> RootedManiplex:
    """Rank-3 flag graph of a polyhedron given by its face vertex cycles.
    Every edge must lie in exactly two faces."""
    edges = set()
    for cyc in face_cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            edges.add(frozenset((a, b)))
    flags = []
    for fi, cyc in enumerate(face_cycles):
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            flags.append((a, frozenset((a, b)), fi))
            flags.append((b, frozenset((a, b)), fi))
    index = {fl: i for i, fl in enumerate(flags)}

    def r0(fl):
        v, e, f = fl
        return (next(u for u in e if u != v), e, f)

    def r1(fl):
        v, e, f = fl
        e2 = next(e2 for (v2, e2, f2) in flags
                  if v2 == v and f2 == f and e2 != e)
        return (v, e2, f)

    def r2(fl):
        v, e, f = fl
        f2 = next(f2 for (v2, e2, f2) in flags
                  if v2 == v and e2 == e and f2 != f)
        return (v, e, f2)

    adj = tuple(Perm([index[fn(fl)] for fl in flags]) for fn in (r0, r1, r2))
    return RootedManiplex(Maniplex(3, adj), 0)


def triangular_prism() -> RootedManiplex:
    """Not rotary: its faces have two different sizes."""
    return polyhedron([(0, 1, 2), (5, 4, 3), (0, 3, 4, 1),
                       (1, 4, 5, 2), (2, 5, 3, 0)])


def _cube_flags():
    verts = list(product((-1, 1), repeat=3))
    faces = [(a, s) for a in range(3) for s in (-1, 1)]

    def on_face(v, f):
        return v[f[0]] == f[1]

    def edges_at(v):
        out = []
        for a in range(3):
            w = list(v)
            w[a] = -w[a]
            out.append(frozenset((v, tuple(w))))
        return out

    flags = []
    for v in verts:
        for e in edges_at(v):
            for f in faces:
                if all(on_face(u, f) for u in e):
                    flags.append((v, e, f))
    return flags, faces


def cube() -> RootedManiplex:
    """Flag graph of the cube: 48 flags."""
    flags, faces = _cube_flags()
    index = {fl: i for i, fl in enumerate(flags)}

    def other_vertex(v, e):
        return next(u for u in e if u != v)

    def r0(fl):
        v, e, f = fl
        return (other_vertex(v, e), e, f)

    def r1(fl):
        v, e, f = fl
        e2 = next(e2 for (v2, e2, f2) in flags
                  if v2 == v and f2 == f and e2 != e)
        return (v, e2, f)

    def r2(fl):
        v, e, f = fl
        f2 = next(f2 for (v2, e2, f2) in flags
                  if v2 == v and e2 == e and f2 != f)
        return (v, e, f2)

    adj = tuple(Perm([index[fn(fl)] for fl in flags]) for fn in (r0, r1, r2))
    return RootedManiplex(Maniplex(3, adj), 0)


def hemicube() -> RootedManiplex:
    """Antipodal quotient of the cube: 24 flags, non-orientable."""
    flags, _ = _cube_flags()
    index = {fl: i for i, fl in enumerate(flags)}

    def antipode(fl):
        v, e, f = fl
        return (tuple(-x for x in v),
                frozenset(tuple(-x for x in u) for u in e),
                (f[0], -f[1]))

    reps = []
    rep_of = {}
    for fl in flags:
        key = min(index[fl], index[antipode(fl)])
        if key == index[fl]:
            rep_of[index[fl]] = len(reps)
            reps.append(fl)
    big = cube().maniplex

    def project(i: int) -> int:
        fl = flags[i]
        j = min(index[fl], index[antipode(fl)])
        return rep_of[j]

    adj = tuple(Perm([project(r.images[index[fl]]) for fl in reps])
                for r in big.adjacency)
    return RootedManiplex(Maniplex(3, adj), 0)
