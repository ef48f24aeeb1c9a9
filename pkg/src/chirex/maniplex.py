"""Edge-coloured flag graphs and their symmetry machinery.

A maniplex of rank n is stored as n involutions r_0..r_{n-1} on the
flag set. Connection elements act on the left: the word ``r_i r_j``
moves a flag by applying r_j first.
"""

from __future__ import annotations

import enum
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .permcore import Perm, PermGroup, left_product, orbit_of


class PreconditionError(ValueError):
    """An operation was called on input outside its contract."""


class FreenessError(PreconditionError):
    """The rotation group does not act freely on white flags."""


def worker_count() -> int:
    """Worker cap for parallel verification sweeps (CHIREX_THREADS)."""
    raw = os.environ.get("CHIREX_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


@dataclass(frozen=True)
class Maniplex:
    rank: int
    adjacency: tuple[Perm, ...]  # r_0 .. r_{rank-1}

    def __post_init__(self):
        if self.rank != len(self.adjacency):
            raise ValueError("rank %d needs %d adjacency permutations" % (self.rank, self.rank))
        degs = {r.degree for r in self.adjacency}
        if len(degs) > 1:
            raise ValueError("adjacency permutations disagree on flag count")

    @property
    def num_flags(self) -> int:
        return self.adjacency[0].degree

    def r(self, i: int) -> Perm:
        return self.adjacency[i]


@dataclass(frozen=True)
class RootedManiplex:
    maniplex: Maniplex
    base_flag: int = 0

    def __post_init__(self):
        if not 0 <= self.base_flag < self.maniplex.num_flags:
            raise ValueError("base flag %d out of range" % self.base_flag)

    @property
    def rank(self) -> int:
        return self.maniplex.rank


@dataclass(frozen=True)
class Orientation:
    white: frozenset[int]
    black: frozenset[int]


@dataclass
class ValidationReport:
    entries: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, axiom: str, ok: bool, detail: str = "") -> None:
        self.entries.append((axiom, ok, detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.entries)


class Symmetry(enum.Enum):
    REGULAR = "Regular"
    CHIRAL = "Chiral"
    OTHER = "Other"


def validate(M: Maniplex) -> ValidationReport:
    """Check the four flag-graph axioms plus connectivity."""
    report = ValidationReport()
    N = M.num_flags
    ok = True
    for i, r in enumerate(M.adjacency):
        for x, y in enumerate(r.images):
            if y == x or r.images[y] != x:
                ok = False
                report.add("involution", False, "r_%d fails at flag %d" % (i, x))
                break
        if not ok:
            break
    if ok:
        report.add("involution", True, "all r_i fixed-point-free involutions")

    distinct = True
    for i, j in combinations(range(M.rank), 2):
        ri, rj = M.adjacency[i].images, M.adjacency[j].images
        for x in range(N):
            if ri[x] == rj[x]:
                distinct = False
                report.add("distinct-neighbours", False,
                           "r_%d and r_%d agree at flag %d" % (i, j, x))
                break
        if not distinct:
            break
    if distinct:
        report.add("distinct-neighbours", True, "")

    commuting = True
    for i, j in combinations(range(M.rank), 2):
        if j - i < 2:
            continue
        ri, rj = M.adjacency[i], M.adjacency[j]
        if ri * rj != rj * ri:
            commuting = False
            report.add("far-commutation", False, "r_%d and r_%d do not commute" % (i, j))
            break
    if commuting:
        report.add("far-commutation", True, "")

    reached = orbit_of(0, M.adjacency) if N else []
    report.add("transitivity", len(reached) == N,
               "" if len(reached) == N else "%d of %d flags reachable" % (len(reached), N))
    return report


def is_orientable(M: Maniplex, base_flag: int = 0) -> Orientation | None:
    """2-colour the flag graph with the base flag white, if bipartite."""
    N = M.num_flags
    colour = [-1] * N
    colour[base_flag] = 0
    queue = deque([base_flag])
    while queue:
        x = queue.popleft()
        for r in M.adjacency:
            y = r.images[x]
            if colour[y] == -1:
                colour[y] = 1 - colour[x]
                queue.append(y)
            elif colour[y] == colour[x]:
                return None
    white = frozenset(x for x in range(N) if colour[x] == 0)
    return Orientation(white=white, black=frozenset(range(N)) - white)


@dataclass(frozen=True)
class RotationSystem:
    """Restriction of the even connection elements s_i = r_{i-1} r_i to
    white flags; sigma[i-1] is s_i acting on the white-flag list."""

    white_flags: tuple[int, ...]
    sigma: tuple[Perm, ...]
    base: int  # index of the base flag within white_flags

    @property
    def rank(self) -> int:
        return len(self.sigma) + 1

    @property
    def degree(self) -> int:
        return len(self.white_flags)

    def group(self) -> PermGroup:
        return PermGroup(self.degree, self.sigma,
                         names=tuple("s%d" % (i + 1) for i in range(len(self.sigma))))


def rotation_system(M: RootedManiplex) -> RotationSystem:
    man = M.maniplex
    orientation = is_orientable(man, M.base_flag)
    if orientation is None:
        raise PreconditionError("maniplex is not orientable")
    white = tuple(sorted(orientation.white))
    windex = {f: i for i, f in enumerate(white)}
    sigma = []
    for i in range(1, man.rank):
        ra, rb = man.adjacency[i - 1].images, man.adjacency[i].images
        # s_i = r_{i-1} r_i as a left action: apply r_i first
        sigma.append(Perm(windex[ra[rb[f]]] for f in white))
    return RotationSystem(white_flags=white, sigma=tuple(sigma), base=windex[M.base_flag])


def tau(RS: RotationSystem, i: int, j: int) -> Perm:
    """The element tau_{i,j} = sigma_{i+1} ... sigma_j (with the usual
    conventions: identity when i == j or when i < j touches the ends,
    and tau_{i,j} = tau_{j,i}^{-1} when i > j)."""
    n = RS.rank
    if not (-1 <= i <= n and -1 <= j <= n):
        raise IndexError("tau indices out of range")
    if i == j:
        return Perm.identity(RS.degree)
    if i > j:
        return tau(RS, j, i).inverse()
    if i == -1 or j == n:
        return Perm.identity(RS.degree)
    return left_product(RS.sigma[i:j], degree=RS.degree)


def _forced_map(adjacency, src: int, dst: int):
    """The unique colour-preserving map extending src -> dst, or None.

    adjacency is a list of image tuples. Every edge incident to a
    visited flag is checked, so a returned map is consistent on all
    edges; on a connected graph it is onto, hence a bijection when the
    two graphs coincide.
    """
    N = len(adjacency[0])
    mapping = [-1] * N
    mapping[src] = dst
    stack = [src]
    while stack:
        a = stack.pop()
        b = mapping[a]
        for r in adjacency:
            a2, b2 = r[a], r[b]
            m = mapping[a2]
            if m == -1:
                mapping[a2] = b2
                stack.append(a2)
            elif m != b2:
                return None
    return mapping


def find_rooted_automorphism(M: Maniplex, phi: int, psi: int) -> Perm | None:
    """Colour-preserving flag-graph automorphism sending phi to psi."""
    rows = [r.images for r in M.adjacency]
    mapping = _forced_map(rows, phi, psi)
    if mapping is None or -1 in mapping:
        return None
    return Perm(mapping)


def classify_symmetry(M: RootedManiplex) -> Symmetry:
    man = M.maniplex
    base = M.base_flag
    rows = [r.images for r in man.adjacency]
    rotations_exist = True
    for i in range(1, man.rank):
        target = rows[i - 1][rows[i][base]]  # the flag s_i(base)
        if _forced_map(rows, base, target) is None:
            rotations_exist = False
            break
    reflection = _forced_map(rows, base, rows[0][base]) is not None
    if rotations_exist and reflection:
        return Symmetry.REGULAR
    if rotations_exist and not reflection:
        return Symmetry.CHIRAL
    return Symmetry.OTHER


def schlafli(M: RootedManiplex) -> list[int]:
    """Schlafli symbol [p_1..p_{n-1}] with p_i = order of r_{i-1} r_i."""
    if classify_symmetry(M) is Symmetry.OTHER:
        raise PreconditionError("Schlafli symbol undefined: maniplex is not rotary")
    man = M.maniplex
    return [(man.adjacency[i] * man.adjacency[i - 1]).order() for i in range(1, man.rank)]


def colour_components(M: Maniplex, colours) -> list[tuple[int, ...]]:
    """Orbits of flags under the listed colours, ordered by least flag."""
    perms = [M.adjacency[c] for c in colours]
    seen = [False] * M.num_flags
    out = []
    for x in range(M.num_flags):
        if not seen[x]:
            orb = orbit_of(x, perms) if perms else [x]
            for y in orb:
                seen[y] = True
            out.append(tuple(sorted(orb)))
    return out


def facets(M: Maniplex) -> list[tuple[int, ...]]:
    """Facet flag-orbits: drop the last colour, order by least flag."""
    return colour_components(M, range(M.rank - 1))


def covers(M: RootedManiplex, N: RootedManiplex) -> list[int] | None:
    """Rooted colour-preserving covering M -> N as a flag surjection."""
    if M.rank != N.rank:
        raise PreconditionError("rank mismatch %d vs %d" % (M.rank, N.rank))
    rows_m = [r.images for r in M.maniplex.adjacency]
    rows_n = [r.images for r in N.maniplex.adjacency]
    Nn = N.maniplex.num_flags
    mapping = [-1] * M.maniplex.num_flags
    mapping[M.base_flag] = N.base_flag
    stack = [M.base_flag]
    while stack:
        a = stack.pop()
        b = mapping[a]
        for rm, rn in zip(rows_m, rows_n):
            a2, b2 = rm[a], rn[b]
            if mapping[a2] == -1:
                mapping[a2] = b2
                stack.append(a2)
            elif mapping[a2] != b2:
                return None
    if -1 in mapping or len(set(mapping)) != Nn:
        return None
    return mapping


def dually_bipartite_colouring(M: Maniplex, base_flag: int = 0) -> list[int] | None:
    """2-colouring of facets so that facets sharing an (n-2)-face get
    opposite colours; the base facet gets colour 1. None if impossible."""
    facet_list = facets(M)
    facet_of = [0] * M.num_flags
    for idx, orb in enumerate(facet_list):
        for f in orb:
            facet_of[f] = idx
    last = M.adjacency[-1].images
    colour = [0] * len(facet_list)
    start = facet_of[base_flag]
    colour[start] = 1
    queue = deque([start])
    # facet adjacency: f and facet(r_{n-1} flag) share an (n-2)-face
    neighbours: list[set[int]] = [set() for _ in facet_list]
    for f in range(M.num_flags):
        neighbours[facet_of[f]].add(facet_of[last[f]])
    while queue:
        a = queue.popleft()
        for b in neighbours[a]:
            if colour[b] == 0:
                colour[b] = -colour[a]
                queue.append(b)
            elif colour[b] == colour[a]:
                return None
    if 0 in colour:
        # facet graph disconnected would contradict flag transitivity
        return None
    if M.rank >= 2:
        p_last = (M.adjacency[-1] * M.adjacency[-2]).order()
        assert p_last % 2 == 0, "dually bipartite forces an even last entry"
    return colour


def intersection_property_check(RS: RotationSystem):
    """Orbit form of the intersection property over all index pairs.

    The rotation group must act freely on white flags; then subgroup
    elements correspond to orbit points of the base flag and subgroup
    intersections to orbit intersections. Returns (True, None) or
    (False, (I, J)) with the first failing pair.
    """
    n = RS.rank
    G = RS.group()
    if G.order() != RS.degree or len(G.orbit(RS.base)) != RS.degree:
        raise FreenessError("rotation group is not free and transitive on white flags")
    subsets = []
    for size in range(n + 1):
        subsets.extend(combinations(range(n), size))

    def tau_orbit(I) -> frozenset[int]:
        gens = [tau(RS, i, j) for i, j in combinations(I, 2)]
        if not gens:
            return frozenset({RS.base})
        return frozenset(orbit_of(RS.base, gens))

    orbits = {I: tau_orbit(I) for I in subsets}

    def check_pair(pair):
        I, J = pair
        meet = tuple(sorted(set(I) & set(J)))
        return (orbits[I] & orbits[J]) == orbits[meet]

    pairs = [(I, J) for I in subsets for J in subsets]
    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check_pair, pairs))
        for pair, ok in zip(pairs, results):
            if not ok:
                return False, pair
    else:
        for pair in pairs:
            if not check_pair(pair):
                return False, pair
    return True, None
