"""GPR-graphs: vertex sets with one arrow permutation per label.

Arrow label k plays the role of the rotation generator sigma_k; the
Cayley GPR-graph of a rotary maniplex records the free action of its
even connection group on white flags. The module also houses the
mechanical verifier for the four-condition chiral extension criterion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .maniplex import (PreconditionError, RootedManiplex, RotationSystem,
                       Symmetry, classify_symmetry, rotation_system)
from .permcore import Perm, PermGroup, left_product, orbit_of


class VerificationError(RuntimeError):
    """A construction failed one of its verified conditions."""


@dataclass(frozen=True)
class GprGraph:
    rank: int  # arrow labels 1..rank
    arrows: tuple[Perm, ...]  # arrows[k-1] is the label-k permutation

    def __post_init__(self):
        if len(self.arrows) != self.rank:
            raise ValueError("need one arrow permutation per label")
        degs = {a.degree for a in self.arrows}
        if len(degs) > 1:
            raise ValueError("arrow degrees disagree")

    @property
    def num_vertices(self) -> int:
        return self.arrows[0].degree

    def arrow(self, k: int) -> Perm:
        if not 1 <= k <= self.rank:
            raise IndexError("arrow label %d out of range 1..%d" % (k, self.rank))
        return self.arrows[k - 1]


@dataclass(frozen=True)
class ComponentIndex:
    labels: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]  # each sorted; ordered by least vertex
    block_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.blocks)


def components(G: GprGraph, I) -> ComponentIndex:
    """Connected components under the arrows with labels in I."""
    labels = tuple(sorted(set(I)))
    perms = [G.arrow(k) for k in labels]
    V = G.num_vertices
    block_of = [-1] * V
    blocks = []
    for v in range(V):
        if block_of[v] == -1:
            orb = sorted(orbit_of(v, perms)) if perms else [v]
            for u in orb:
                block_of[u] = len(blocks)
            blocks.append(tuple(orb))
    return ComponentIndex(labels=labels, blocks=tuple(blocks), block_of=tuple(block_of))


def components_union_find(G: GprGraph, I) -> ComponentIndex:
    """Union-find cross-check of :func:`components`."""
    labels = tuple(sorted(set(I)))
    V = G.num_vertices
    parent = list(range(V))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in labels:
        imgs = G.arrow(k).images
        for v in range(V):
            a, b = find(v), find(imgs[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(V):
        groups.setdefault(find(v), []).append(v)
    blocks = tuple(tuple(sorted(g)) for _, g in sorted(groups.items()))
    block_of = [-1] * V
    for i, blk in enumerate(blocks):
        for v in blk:
            block_of[v] = i
    return ComponentIndex(labels=labels, blocks=blocks, block_of=tuple(block_of))


def cayley_gpr(M: RootedManiplex) -> GprGraph:
    """Cayley GPR-graph on white flags; arrow k is the action of s_k."""
    if classify_symmetry(M) is Symmetry.OTHER:
        raise PreconditionError("Cayley GPR-graph needs a rotary maniplex")
    rs = rotation_system(M)
    return GprGraph(rank=M.rank - 1, arrows=rs.sigma)


def cayley_gpr_base(M: RootedManiplex) -> tuple[GprGraph, int]:
    """Cayley GPR-graph together with the base-flag vertex."""
    if classify_symmetry(M) is Symmetry.OTHER:
        raise PreconditionError("Cayley GPR-graph needs a rotary maniplex")
    rs = rotation_system(M)
    return GprGraph(rank=M.rank - 1, arrows=rs.sigma), rs.base


def _restrict(G: GprGraph, verts) -> GprGraph:
    verts = sorted(verts)
    pos = {v: i for i, v in enumerate(verts)}
    arrows = []
    for a in G.arrows:
        try:
            arrows.append(Perm(pos[a.images[v]] for v in verts))
        except KeyError:
            raise ValueError("vertex set is not closed under the arrows")
    return GprGraph(rank=G.rank, arrows=tuple(arrows))


def rooted_digraph_isomorphic(G: GprGraph, H: GprGraph,
                              vertices=None) -> bool:
    """Label- and direction-preserving isomorphism test.

    G (optionally restricted to the given connected vertex set) is
    compared against H by forced extension from every candidate image
    of G's least vertex.
    """
    if G.rank != H.rank:
        return False
    if vertices is not None:
        G = _restrict(G, vertices)
    V = G.num_vertices
    if V != H.num_vertices:
        return False
    fwd = [a.images for a in G.arrows] + [a.inverse().images for a in G.arrows]
    fwd_h = [a.images for a in H.arrows] + [a.inverse().images for a in H.arrows]
    for root_img in range(V):
        mapping = [-1] * V
        mapping[0] = root_img
        used = [False] * V
        used[root_img] = True
        stack = [0]
        ok = True
        while stack and ok:
            a = stack.pop()
            b = mapping[a]
            for ga, gh in zip(fwd, fwd_h):
                a2, b2 = ga[a], gh[b]
                if mapping[a2] == -1:
                    if used[b2]:
                        ok = False
                        break
                    mapping[a2] = b2
                    used[b2] = True
                    stack.append(a2)
                elif mapping[a2] != b2:
                    ok = False
                    break
        if ok and -1 not in mapping:
            return True
    return False


def gpr_group(G: GprGraph) -> PermGroup:
    return PermGroup(G.num_vertices, G.arrows,
                     names=tuple("s%d" % k for k in range(1, G.rank + 1)))


@dataclass
class ExtensionReport:
    verdicts: list[tuple[str, bool, str]] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, condition: str, ok: bool, detail: str = "") -> None:
        self.verdicts.append((condition, ok, detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.verdicts)

    def failing(self) -> list[str]:
        return [name for name, ok, _ in self.verdicts if not ok]


def verify_extension_criterion(G: GprGraph, K: RootedManiplex) -> ExtensionReport:
    """Check the four conditions under which a GPR-graph with labels
    1..n defines a chiral (n+1)-polytope with facets isomorphic to K.
    """
    n = G.rank
    if K.rank != n:
        raise PreconditionError("facet rank %d does not match label count %d" % (K.rank, n))
    report = ExtensionReport()
    cay = cayley_gpr(K)

    facet_labels = range(1, n)
    comp = components(G, facet_labels)
    all_iso = all(
        rooted_digraph_isomorphic(_facet_subgraph(G), cay, vertices=blk)
        for blk in comp.blocks
    )
    report.add("facet-components-isomorphic", all_iso,
               "%d components of size %s" % (len(comp), sorted({len(b) for b in comp.blocks})))

    involutory = True
    detail = ""
    for k in range(1, n):
        prod = left_product([G.arrow(i) for i in range(k, n + 1)])
        if not (prod * prod).is_identity():
            involutory = False
            detail = "(s_%d...s_%d)^2 is not trivial" % (k, n)
            break
    report.add("suffix-products-involutory", involutory, detail)

    sub = PermGroup(G.num_vertices, G.arrows[: n - 1])
    sn = G.arrow(n)
    q = sn.order()
    trivial_meet = True
    detail = ""
    power = Perm.identity(G.num_vertices)
    for j in range(1, q):
        power = power * sn
        if power in sub:
            trivial_meet = False
            detail = "s_%d^%d lies in the facet subgroup" % (n, j)
            break
    report.add("cyclic-meet-trivial", trivial_meet, detail)
    report.data["last_entry"] = q

    cond4 = True
    detail = ""
    gparts = comp
    for k in range(2, n):
        dparts = components(G, range(k, n + 1))
        mparts = components(G, range(k, n))
        found = False
        for blk in mparts.blocks:
            v = blk[0]
            gblock = set(gparts.blocks[gparts.block_of[v]])
            dblock = set(dparts.blocks[dparts.block_of[v]])
            if set(blk) == gblock & dblock:
                found = True
                break
        if not found:
            cond4 = False
            detail = "no suitable {%d..%d}-component" % (k, n - 1)
            break
    report.add("component-intersection", cond4, detail)
    return report


def _facet_subgraph(G: GprGraph) -> GprGraph:
    """G with the last arrow dropped (labels 1..n-1)."""
    return GprGraph(rank=G.rank - 1, arrows=G.arrows[:-1])


def check_tau_relations(G: GprGraph, t: Perm) -> bool:
    """Relations forced on the matching involution t by the rotation
    group of the extended maniplex; relations whose generator index
    would be nonpositive are skipped."""
    n = G.rank
    if t.degree != G.num_vertices:
        raise PreconditionError("degree mismatch")
    if not (t * t).is_identity():
        return False

    def conj(p: Perm) -> Perm:
        # t p t as a left-action product (palindromic, so the reading
        # order does not matter)
        return left_product([t, p, t])

    if n - 2 >= 1:
        s = G.arrow(n - 2)
        if conj(s) != s.inverse():
            return False
    if n - 3 >= 1:
        s3, s2 = G.arrow(n - 3), G.arrow(n - 2)
        if conj(s3) != left_product([s3, s2, s2]):
            return False
    for i in range(1, n - 3):
        s = G.arrow(i)
        if conj(s) != s:
            return False
    return True
