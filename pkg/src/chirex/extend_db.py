"""Chiral extension of a dually-bipartite chiral polytope.

Takes 2s copies of the Cayley GPR-graph of K and joins them by a
perfect matching assembled in four steps; the matching involution t
yields the new generator s_n = s_{n-1}^{-1} t. Every property the
construction promises is re-verified on the result.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .gpr import (ExtensionReport, GprGraph, VerificationError,
                  check_tau_relations, gpr_group, verify_extension_criterion)
from .maniplex import (PreconditionError, RootedManiplex, RotationSystem,
                       Symmetry, classify_symmetry, colour_components,
                       dually_bipartite_colouring, facets, rotation_system)
from .permcore import GroupWord, Perm, orbit_of


@dataclass(frozen=True)
class Matching:
    num_copies: int
    partner: tuple[int, ...]  # vertex -> matched vertex

    @property
    def edges(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset((v, p)) for v, p in enumerate(self.partner))

    def is_perfect(self) -> bool:
        return all(p != v and self.partner[p] == v for v, p in enumerate(self.partner))


@dataclass
class DbExtensionResult:
    graph: GprGraph
    t: Perm
    matching: Matching
    report: ExtensionReport
    last_entry: int
    s: int
    base_vertex: int


def facet_word(RS: RotationSystem, phi_f: int, phi: int) -> GroupWord:
    """A word in s_1..s_{n-2} whose left action takes phi_f to phi.

    Letters are 0-based: letter index i stands for s_{i+1}. The word is
    found by BFS, which is fine because any two words for the same pair
    evaluate to the same group element (the action is free).
    """
    gens = RS.sigma[: RS.rank - 2]
    moves = []
    for i, g in enumerate(gens):
        moves.append((i, 1, g.images))
        moves.append((i, -1, g.inverse().images))
    # parent[v] = (previous vertex, letter); prepending a letter applies
    # the new generator last, i.e. on the left
    parent: dict[int, tuple[int, tuple[int, int]] | None] = {phi_f: None}
    queue = deque([phi_f])
    while queue:
        v = queue.popleft()
        if v == phi:
            break
        for idx, exp, imgs in moves:
            u = imgs[v]
            if u not in parent:
                parent[u] = (v, (idx, exp))
                queue.append(u)
    if phi not in parent:
        raise PreconditionError("flag %d not in the facet orbit of %d" % (phi, phi_f))
    letters = []
    v = phi
    while parent[v] is not None:
        v, letter = parent[v]
        letters.append(letter)
    return GroupWord(tuple(letters))


def rho_bar(w: GroupWord, n: int) -> GroupWord:
    """Image of a word in s_1..s_{n-2} under the involutory facet-group
    automorphism sending s_{n-2} to its inverse and s_{n-3} to
    s_{n-3} s_{n-2}^2, fixing earlier generators."""
    top = n - 3  # 0-based index of s_{n-2}
    out: list[tuple[int, int]] = []
    for idx, exp in w.letters:
        if idx > top:
            raise PreconditionError("word uses generators outside the facet group")
        if idx == top and top >= 0:
            out.append((idx, -exp))
        elif idx == top - 1 and idx >= 0:
            if exp == 1:
                out.extend([(idx, 1), (top, 1), (top, 1)])
            else:
                out.extend([(top, -1), (top, -1), (idx, -1)])
        else:
            out.append((idx, exp))
    return GroupWord(tuple(out))


def _check_preconditions(K: RootedManiplex):
    man = K.maniplex
    if K.rank < 3:
        raise PreconditionError("extension needs rank at least 3")
    if classify_symmetry(K) is not Symmetry.CHIRAL:
        raise PreconditionError("input maniplex is not chiral")
    colouring = dually_bipartite_colouring(man, K.base_flag)
    if colouring is None:
        raise PreconditionError("input maniplex is not dually bipartite")
    # regular facets: the base facet as a standalone maniplex must be
    # regular (all facets are isomorphic by flag transitivity)
    from .maniplex import Maniplex as _M

    facet_flags = colour_components(man, range(man.rank - 1))
    blk = next(b for b in facet_flags if K.base_flag in b)
    pos = {f: i for i, f in enumerate(blk)}
    sub_adj = tuple(Perm(pos[man.adjacency[i].images[f]] for f in blk)
                    for i in range(man.rank - 1))
    sub = _M(man.rank - 1, sub_adj)
    if classify_symmetry(RootedManiplex(sub, pos[K.base_flag])) is not Symmetry.REGULAR:
        raise PreconditionError("facets of the input are not regular")
    return colouring, facet_flags


def build_matching(K: RootedManiplex, colouring, s: int,
                   seed: int | None = None) -> Matching:
    """The four-step matching on 2s copies of the white flags of K.

    ``colouring`` is the facet 2-colouring (values +-1). With no seed
    the Step 3 representative is the least-index eligible flag;
    otherwise it is drawn from a seeded RNG.
    """
    if s < 1:
        raise PreconditionError("s must be positive")
    rs = rotation_system(K)
    n = K.rank
    W = rs.degree
    copies = 2 * s
    rng = random.Random(seed) if seed is not None else None

    facet_list = facets(K.maniplex)
    facet_of_flag = {}
    for j, blk in enumerate(facet_list):
        for f in blk:
            facet_of_flag[f] = j
    cbar = [colouring[facet_of_flag[f]] for f in rs.white_flags]
    w0 = rs.base
    if cbar[w0] != 1:
        cbar = [-c for c in cbar]

    def vid(flag: int, ell: int) -> int:
        return ell * W + flag

    partner = [-1] * (W * copies)

    def match(u: int, v: int) -> None:
        for a, b in ((u, v), (v, u)):
            if partner[a] not in (-1, b):
                raise VerificationError("matching steps conflict at vertex %d" % a)
            partner[a] = b

    # steps 1 and 2: the orbit of the base flag under s_{n-1}
    s_last = rs.sigma[n - 2]
    ord_last = s_last.order()
    for ell in range(copies):
        sign = 1 if ell % 2 == 0 else -1
        for j in range(ord_last):
            a = (s_last ** j).images[w0]
            b = (s_last ** (-j)).images[w0]
            match(vid(a, ell), vid(b, (ell + sign * cbar[a]) % copies))

    # orbits E_k of the base flag under <s_k .. s_{n-1}>
    orbit_k = {}
    for k in range(1, n):
        orbit_k[k] = frozenset(orbit_of(w0, rs.sigma[k - 1:]))

    facet_comps = []  # {1..n-2}-components of the white flags
    comp_of = [-1] * W
    for v in range(W):
        if comp_of[v] == -1:
            orb = sorted(orbit_of(v, rs.sigma[: n - 2])) if n > 2 else [v]
            for u in orb:
                comp_of[u] = len(facet_comps)
            facet_comps.append(tuple(orb))

    base_orbit = orbit_k[n - 1]  # flags s_{n-1}^j w0, handled by steps 1-2
    # step 3: anchor the remaining components, odd copies choose
    for comp in facet_comps:
        if any(f in base_orbit for f in comp):
            continue
        k = max(k for k in range(1, n - 1) if any(f in orbit_k[k] for f in comp))
        eligible = sorted(f for f in comp if f in orbit_k[k])
        for ell in range(1, copies, 2):
            phi_f = rng.choice(eligible) if rng is not None else eligible[0]
            # odd copy: (-1)^ell = -1
            match(vid(phi_f, ell), vid(phi_f, (ell - cbar[phi_f]) % copies))

    # every component of every copy must now hold exactly one anchor
    anchor: dict[tuple[int, int], int] = {}
    for v, p in enumerate(partner):
        if p != -1:
            ell, flag = divmod(v, W)
            key = (ell, comp_of[flag])
            if key in anchor and anchor[key] != v:
                raise VerificationError("component has two matched anchors")
            anchor[key] = v
    for ell in range(copies):
        for ci in range(len(facet_comps)):
            if (ell, ci) not in anchor:
                raise VerificationError("component without a matched anchor")

    # step 4: spread each anchor edge over its component via rho
    facet_gens = rs.sigma[: n - 2]
    for (ell, ci), av in anchor.items():
        phi_f = av % W
        pv = partner[av]
        ell2, psi = divmod(pv, W)
        for flag in facet_comps[ci]:
            if flag == phi_f:
                continue
            word = facet_word(rs, phi_f, flag)
            bar = rho_bar(word, n)
            # left action of the word on psi: rightmost letter first
            target = psi
            for idx, exp in reversed(bar.letters):
                g = facet_gens[idx] if exp == 1 else facet_gens[idx].inverse()
                target = g.images[target]
            match(vid(flag, ell), vid(target, ell2))

    matching = Matching(num_copies=copies, partner=tuple(partner))
    if not matching.is_perfect():
        raise VerificationError("constructed matching is not perfect")
    for v, p in enumerate(matching.partner):
        if (v // W) % 2 == (p // W) % 2:
            raise VerificationError("matched copies share a parity")
    return matching


def extend_dually_bipartite(K: RootedManiplex, s: int,
                            seed: int | None = None) -> DbExtensionResult:
    """Run the matching construction and verify everything it claims."""
    colouring, _ = _check_preconditions(K)
    matching = build_matching(K, colouring, s, seed)
    rs = rotation_system(K)
    n = K.rank
    W = rs.degree
    copies = 2 * s

    def widen(p: Perm) -> Perm:
        imgs = []
        for ell in range(copies):
            base = ell * W
            imgs.extend(base + p.images[f] for f in range(W))
        return Perm(imgs)

    t = Perm(matching.partner)
    arrows = [widen(g) for g in rs.sigma]
    s_last_inv = widen(rs.sigma[n - 2].inverse())
    # s_n = s_{n-1}^{-1} t: apply t first
    arrows.append(t * s_last_inv)
    G = GprGraph(rank=n, arrows=tuple(arrows))

    if not check_tau_relations(G, t):
        raise VerificationError("matching involution violates the forced relations")
    report = verify_extension_criterion(G, K)
    if not report.passed:
        raise VerificationError("extension criterion failed: %s" % ", ".join(report.failing()))

    base_vertex = rs.base  # copy 0
    sn = G.arrow(n)
    orb = orbit_of(base_vertex, [sn])
    if len(orb) != copies:
        raise VerificationError("base orbit under the new generator has length %d, wanted %d"
                                % (len(orb), copies))
    last_entry = sn.order()
    if last_entry % copies != 0:
        raise VerificationError("2s does not divide the last Schlafli entry")
    report.data["last_entry"] = last_entry
    report.data["copies"] = copies
    return DbExtensionResult(graph=G, t=t, matching=matching, report=report,
                             last_entry=last_entry, s=s, base_vertex=base_vertex)
