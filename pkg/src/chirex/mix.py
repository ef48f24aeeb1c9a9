"""Diamond (mix) products of permutation groups and the pipeline that
extends a chiral polytope through a regular quotient.

The diamond of two groups with paired generators acts on the disjoint
union of their point sets; its order against the factor orders decides
covering and homomorphism questions, and a free-tuple action lets the
intersection property be checked directly on the product.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .gpr import (GprGraph, VerificationError, cayley_gpr_base, gpr_group,
                  rooted_digraph_isomorphic)
from .maniplex import (PreconditionError, RootedManiplex, RotationSystem,
                       Symmetry, classify_symmetry, colour_components, covers,
                       rotation_system)
from .permcore import Perm, PermGroup, left_product
from .two_s_m import TwoSM, build_two_s_m


def paired_perm(g: Perm, h: Perm) -> Perm:
    """g and h acting side by side on the disjoint union of their points."""
    d = g.degree
    return Perm(tuple(g.images) + tuple(x + d for x in h.images))


@dataclass(frozen=True)
class DiamondGroup:
    left: PermGroup
    right: PermGroup
    product: PermGroup


def diamond(G: PermGroup, H: PermGroup, pairing=None) -> DiamondGroup:
    """Subgroup of G x H generated by positionally paired generators."""
    if pairing is None:
        pairing = list(range(len(G.generators)))
    if len(pairing) != len(G.generators) or sorted(pairing) != list(range(len(H.generators))):
        raise PreconditionError("pairing must match generators one to one")
    gens = [paired_perm(g, H.generators[j]) for g, j in zip(G.generators, pairing)]
    prod = PermGroup(G.degree + H.degree, gens, names=G.generator_names)
    return DiamondGroup(left=G, right=H, product=prod)


def enantiomorph_generators(sigma) -> list[Perm]:
    """Mirror generators: (s_1^{-1}, s_1^2 s_2, s_3, ..., s_{n-1})."""
    sigma = list(sigma)
    if not sigma:
        raise PreconditionError("need at least one rotation generator")
    out = [sigma[0].inverse()]
    if len(sigma) > 1:
        out.append(left_product([sigma[0], sigma[0], sigma[1]]))
        out.extend(sigma[2:])
    return out


def is_regular_via_mix(RS_or_sigma) -> bool:
    """True iff mapping each rotation generator to its mirror extends
    to a group automorphism, tested by the order of the diamond of the
    group with its mirrored self."""
    sigma = RS_or_sigma.sigma if isinstance(RS_or_sigma, RotationSystem) else tuple(RS_or_sigma)
    G = PermGroup(sigma[0].degree, sigma)
    H = PermGroup(sigma[0].degree, enantiomorph_generators(sigma))
    return diamond(G, H).product.order() == G.order()


def lemma_pre_quotient_check(gamma_gens, lambda_gens,
                             assume_homomorphism: bool = False) -> bool:
    """Hypotheses for pulling the intersection property back along the
    generator mapping gamma_i -> lambda_i: the mapping must extend to a
    homomorphism (diamond order = source order) and be injective on the
    facet subgroup (all generators but the last)."""
    gamma_gens = list(gamma_gens)
    lambda_gens = list(lambda_gens)
    if len(gamma_gens) != len(lambda_gens):
        raise PreconditionError("generator lists must have equal length")
    if not assume_homomorphism:
        G = PermGroup(gamma_gens[0].degree, gamma_gens)
        H = PermGroup(lambda_gens[0].degree, lambda_gens)
        if diamond(G, H).product.order() != G.order():
            return False
    facet_src = PermGroup(gamma_gens[0].degree, gamma_gens[:-1])
    facet_img = PermGroup(lambda_gens[0].degree, lambda_gens[:-1])
    return facet_src.order() == facet_img.order()


def _enumerate_elements(gens, degree: int, cap: int):
    """All elements of the generated group, or None once past the cap."""
    ident = Perm.identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = p * g
            if q not in seen:
                if len(seen) >= cap:
                    return None
                seen.add(q)
                queue.append(q)
    return seen


def intersection_property_group(sigma, cap: int = 1_000_000) -> tuple[bool, tuple | None]:
    """Intersection property for a rotation-generator list.

    For every pair of index sets I, J (neither containing the other,
    the nested pairs being trivially correct) the subgroup generated by
    the tau elements of the smaller side is enumerated and its members
    sifted through the larger side's stabiliser chain; the member count
    must equal the order of the subgroup for the intersected index set.
    Raises if both sides of some pair exceed the enumeration cap.
    """
    sigma = tuple(sigma)
    degree = sigma[0].degree
    n = len(sigma) + 1  # rank of the would-be polytope

    def tau_elt(i: int, j: int) -> Perm:
        if i == j:
            return Perm.identity(degree)
        if i > j:
            return tau_elt(j, i).inverse()
        if i == -1 or j == n:
            return Perm.identity(degree)
        return left_product(sigma[i:j])

    subsets = []
    for size in range(n + 1):
        subsets.extend(combinations(range(n), size))
    groups: dict[tuple, PermGroup] = {}
    orders: dict[tuple, int] = {}

    def group_for(I) -> PermGroup:
        if I not in groups:
            gens = [tau_elt(i, j) for i, j in combinations(I, 2)]
            groups[I] = PermGroup(degree, gens)
        return groups[I]

    def order_for(I) -> int:
        if I not in orders:
            orders[I] = group_for(I).order()
        return orders[I]

    elements: dict[tuple, set | None] = {}

    def elems(I):
        if I not in elements:
            elements[I] = _enumerate_elements(group_for(I).generators, degree, cap)
        return elements[I]

    for a, I in enumerate(subsets):
        for J in subsets[a + 1:]:
            si, sj = set(I), set(J)
            if si <= sj or sj <= si:
                continue  # the intersection is the smaller subgroup itself
            meet = tuple(sorted(si & sj))
            small, big = (I, J) if order_for(I) <= order_for(J) else (J, I)
            members = elems(small)
            if members is None:
                raise VerificationError(
                    "both subgroups of pair %s exceed the enumeration cap" % ((I, J),))
            hits = sum(1 for p in members if p in group_for(big))
            if hits != order_for(meet):
                return False, (I, J)
    return True, None


@dataclass
class MixExtensionResult:
    group: PermGroup
    paired_gens: tuple[Perm, ...]
    schlafli: list[int]
    q: int  # last entry of the seed extension
    s: int
    verdicts: list[tuple[str, bool, str]] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.verdicts)


def regular_quotient_extension(P: GprGraph, K: RootedManiplex,
                               R: RootedManiplex, s: int) -> MixExtensionResult:
    """Mix a chiral extension P of K with 2s^R for a regular quotient R
    of K; verifies every hypothesis and the lcm law for the last entry.

    P is given as its GPR-graph (labels 1..n with arrows sigma_1..sigma_n
    of the extension's rotation group).
    """
    n = K.rank
    if P.rank != n:
        raise PreconditionError("extension graph labels must match the facet rank")
    result = MixExtensionResult(group=None, paired_gens=(), schlafli=[], q=0, s=s)

    def check(name: str, ok: bool, detail: str = "") -> None:
        result.verdicts.append((name, ok, "" if ok else detail))
        if not ok:
            raise VerificationError("%s: %s" % (name, detail or "failed"))

    check("facet-rank", K.rank == R.rank, "quotient rank differs")
    check("quotient-regular", classify_symmetry(R) is Symmetry.REGULAR,
          "quotient is not regular")
    check("quotient-facets", len(colour_components(R.maniplex, range(R.rank - 1))) >= 2,
          "quotient has fewer than two facets")
    check("covers-quotient", covers(K, R) is not None,
          "the input does not cover the quotient")

    cayK, _ = cayley_gpr_base(K)
    comps = colour_components_gpr(P)
    check("facets-of-extension", all(
        rooted_digraph_isomorphic(GprGraph(P.rank - 1, P.arrows[:-1]), cayK, vertices=blk)
        for blk in comps),
        "a facet component of the extension is not the expected Cayley graph")
    check("extension-chiral-facets", classify_symmetry(K) is Symmetry.CHIRAL,
          "facet polytope is not chiral")

    tsm = build_two_s_m(R, s)
    check("twosm-regular", classify_symmetry(tsm.rooted) is Symmetry.REGULAR,
          "2s^R is not regular")
    rs2 = rotation_system(tsm.rooted)  # n generators on white flags

    q = P.arrow(n).order()
    result.q = q
    paired = tuple(paired_perm(P.arrow(k), rs2.sigma[k - 1]) for k in range(1, n + 1))
    result.paired_gens = paired
    result.group = PermGroup(paired[0].degree, paired,
                             names=tuple("s%d" % k for k in range(1, n + 1)))

    check("facet-projection-collapses",
          lemma_pre_quotient_check(paired, P.arrows, assume_homomorphism=True),
          "facet subgroup of the mix does not project isomorphically")
    facet_order = PermGroup(paired[0].degree, paired[:-1]).order()
    white_count = rotation_system(K).degree
    check("facet-subgroup-order", facet_order == white_count,
          "facet subgroup order %d != white flag count %d" % (facet_order, white_count))
    result.data["facet_order"] = facet_order

    ok, witness = intersection_property_group(paired)
    check("intersection-property", ok, "failing pair %s" % (witness,))

    last = paired[-1].order()
    expected = math.lcm(q, 2 * s)
    check("last-entry-lcm", last == expected,
          "last entry %d != lcm(%d, %d) = %d" % (last, q, 2 * s, expected))
    check("lcm-is-lcm-of-orders", last == math.lcm(q, rs2.sigma[n - 1].order()),
          "disjoint-support order law violated")

    chiral_via_mix = not is_regular_via_mix(paired)
    check("result-chiral", chiral_via_mix,
          "mirror map extends to an automorphism; result would be regular")

    result.schlafli = [p.order() for p in paired]
    result.data["group_order"] = result.group.order()
    return result


def colour_components_gpr(G: GprGraph) -> list[tuple[int, ...]]:
    """{1..n-1}-components of a GPR-graph (facet components)."""
    from .gpr import components
    return list(components(G, range(1, G.rank)).blocks)
