import pytest

from chirex.maniplex import (PreconditionError, Symmetry, classify_symmetry,
                             colour_components, covers, schlafli, validate)
from chirex.maniplex import Maniplex, RootedManiplex
from chirex.permcore import Perm
from chirex.toroidal import TorusParams, build_toroidal_map
from chirex.two_s_m import (build_two_s_m, every_ridge_in_two_facets,
                            lift_automorphism, translation_chi_automorphisms,
                            two_s_m_type, verify_aut_structure)

from helpers import polygon


def m20():
    return build_toroidal_map(TorusParams("44", 2, 0))


class TestCoordinates:
    def test_round_trips(self):
        tsm = build_two_s_m(polygon(4), 3)
        assert tsm.m == 4
        for u in range(tsm.num_u):
            vec = tsm.u_vector(u)
            assert len(vec) == tsm.m
            assert sum(vec) % tsm.s == 0
            assert tsm.u_index(vec) == u
        for v in (0, 5, tsm.maniplex.num_flags - 1):
            flag, u, delta = tsm.decode(v)
            assert tsm.flag_id(flag, u, delta) == v

    def test_u_index_rejects_bad_sum(self):
        tsm = build_two_s_m(polygon(4), 3)
        with pytest.raises(ValueError):
            tsm.u_index((1, 0, 0, 0))


class TestBuild:
    def test_polygon_source(self):
        tsm = build_two_s_m(polygon(4), 2)
        big = tsm.maniplex
        assert big.rank == 3
        assert big.num_flags == 8 * 2 ** 3 * 2 == 128
        assert validate(big).passed
        assert schlafli(tsm.rooted) == [4, 4]
        assert classify_symmetry(tsm.rooted) is Symmetry.REGULAR

    def test_torus_source_counts_and_type(self):
        M = m20()
        tsm = build_two_s_m(M, 2)
        assert tsm.m == 4
        assert tsm.maniplex.num_flags == 32 * 2 ** 3 * 2 == 512
        symbol, ridge_ok = two_s_m_type(M, 2)
        assert symbol == [4, 4, 4] and ridge_ok
        symbol3, _ = two_s_m_type(M, 3)
        assert symbol3 == [4, 4, 6]

    def test_facets_are_copies_of_the_source(self):
        M = m20()
        tsm = build_two_s_m(M, 2)
        big = tsm.maniplex
        blocks = colour_components(big, range(big.rank - 1))
        assert all(len(b) == M.maniplex.num_flags for b in blocks)
        base_block = next(b for b in blocks if tsm.base_flag in b)
        pos = {f: i for i, f in enumerate(base_block)}
        sub = Maniplex(big.rank - 1, tuple(
            Perm(pos[big.adjacency[i].images[f]] for f in base_block)
            for i in range(big.rank - 1)))
        rooted_sub = RootedManiplex(sub, pos[tsm.base_flag])
        assert covers(rooted_sub, M) is not None
        assert covers(M, rooted_sub) is not None

    def test_last_colour_changes_facet_and_flips_delta(self):
        tsm = build_two_s_m(m20(), 3)
        big = tsm.maniplex
        last = big.adjacency[-1]
        for v in range(0, big.num_flags, 17):
            flag, u, delta = tsm.decode(v)
            flag2, u2, delta2 = tsm.decode(last.images[v])
            assert flag2 == flag and delta2 == 1 - delta

    def test_s_must_be_at_least_two(self):
        with pytest.raises(PreconditionError):
            build_two_s_m(m20(), 1)


class TestRidges:
    def test_torus_and_polygon(self):
        assert every_ridge_in_two_facets(m20().maniplex)
        assert every_ridge_in_two_facets(polygon(4).maniplex)


class TestAutomorphisms:
    def test_translations_and_chi(self):
        tsm = build_two_s_m(m20(), 2)
        gens = translation_chi_automorphisms(tsm)
        assert len(gens) == tsm.m  # m-1 translations plus chi
        chi = gens[-1]
        assert (chi * chi).is_identity()
        for t in gens[:-1]:
            assert t.order() == tsm.s
            # chi conjugates each translation to its inverse
            assert chi * t * chi == t.inverse()
        # translations commute with each other
        for a in gens[:-1]:
            for b in gens[:-1]:
                assert a * b == b * a

    def test_lift_of_identity(self):
        tsm = build_two_s_m(m20(), 2)
        ident = Perm.identity(m20().maniplex.num_flags)
        assert lift_automorphism(tsm, ident).is_identity()

    def test_lift_of_nontrivial_automorphism(self):
        from chirex.maniplex import find_rooted_automorphism
        M = m20()
        man = M.maniplex
        target = man.adjacency[0].images[M.base_flag]
        gamma = find_rooted_automorphism(man, M.base_flag, target)
        assert gamma is not None
        tsm = build_two_s_m(M, 2)
        lifted = lift_automorphism(tsm, gamma)
        for r in tsm.maniplex.adjacency:
            assert lifted * r == r * lifted

    def test_lift_rejects_non_automorphism(self):
        tsm = build_two_s_m(m20(), 2)
        with pytest.raises(PreconditionError):
            lift_automorphism(tsm, Perm.from_cycles(32, [(0, 1)]))

    def test_aut_count_formula_small(self):
        report = verify_aut_structure(polygon(4), 2)
        assert report.passed
        assert report.expected == 8 * 2 * 2 ** 3 == 128

    def test_aut_count_needs_regular(self):
        with pytest.raises(PreconditionError):
            verify_aut_structure(build_toroidal_map(TorusParams("44", 2, 1)), 2)
