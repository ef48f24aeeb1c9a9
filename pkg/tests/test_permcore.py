import pytest
from hypothesis import given, settings, strategies as st

from chirex.permcore import (DegreeMismatch, GroupWord, Perm, PermGroup,
                             compose, evaluate_word, group_order, is_member,
                             left_product, orbit_of, order_of, word_action)

from helpers import brute_force_closure


def perms(degree):
    return st.permutations(range(degree)).map(Perm)


class TestPerm:
    def test_composition_convention(self):
        # (p * q)(x) == q(p(x)): p first, then q
        p = Perm.from_cycles(3, [(0, 1)])
        q = Perm.from_cycles(3, [(1, 2)])
        assert (p * q)(0) == 2
        assert compose(p, q)(0) == 2
        assert (q * p)(0) == 1

    def test_left_product_convention(self):
        a = Perm.from_cycles(3, [(0, 1)])
        b = Perm.from_cycles(3, [(1, 2)])
        # left_product([a, b]) applies b first
        assert left_product([a, b])(2) == a(b(2)) == 0
        assert left_product([], degree=4) == Perm.identity(4)
        with pytest.raises(ValueError):
            left_product([])

    def test_not_a_bijection(self):
        with pytest.raises(ValueError):
            Perm([0, 0, 1])

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            Perm.identity(3) * Perm.identity(4)

    @given(perms(6), perms(6), perms(6))
    def test_associativity(self, p, q, r):
        assert (p * q) * r == p * (q * r)

    @given(perms(7))
    def test_inverse_and_order(self, p):
        assert p * p.inverse() == Perm.identity(7)
        assert p ** p.order() == Perm.identity(7)
        assert order_of(p) == p.order()
        if not p.is_identity():
            assert p ** (p.order() - 1) != Perm.identity(7)

    @given(perms(7), st.integers(-20, 20))
    def test_power_against_repeated_product(self, p, k):
        expected = Perm.identity(7)
        step = p if k >= 0 else p.inverse()
        for _ in range(abs(k)):
            expected = expected * step
        assert p ** k == expected

    @given(perms(8))
    def test_cycles_round_trip(self, p):
        assert Perm.from_cycles(8, [list(c) for c in p.cycles()]) == p

    def test_cycles_include_fixed(self):
        p = Perm.from_cycles(4, [(0, 1)])
        assert p.cycles() == [(0, 1)]
        assert p.cycles(include_fixed=True) == [(0, 1), (2,), (3,)]


class TestGroupWord:
    def test_letter_validation(self):
        with pytest.raises(ValueError):
            GroupWord(((0, 2),))
        with pytest.raises(ValueError):
            GroupWord(((-1, 1),))

    def test_evaluate_and_inverse(self):
        gens = [Perm.from_cycles(4, [(0, 1, 2, 3)]), Perm.from_cycles(4, [(0, 1)])]
        w = GroupWord(((0, 1), (1, 1), (0, -1)))
        p = evaluate_word(gens, w)
        assert p == gens[0] * gens[1] * gens[0].inverse()
        assert evaluate_word(gens, w.inverse()) == p.inverse()
        assert evaluate_word(gens, w + w.inverse()).is_identity()

    def test_word_action_reverses(self):
        gens = [Perm.from_cycles(4, [(0, 1, 2, 3)]), Perm.from_cycles(4, [(0, 1)])]
        w = GroupWord(((0, 1), (1, 1)))
        # read as a left action the leftmost letter applies last
        assert word_action(gens, w) == gens[1] * gens[0]

    def test_empty_word(self):
        assert evaluate_word([], GroupWord(), degree=5).is_identity()
        with pytest.raises(ValueError):
            evaluate_word([], GroupWord())

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            evaluate_word([Perm.identity(3)], GroupWord(((4, 1),)))


class TestPermGroup:
    def test_symmetric_group(self):
        gens = [Perm.from_cycles(4, [(0, 1)]), Perm.from_cycles(4, [(0, 1, 2, 3)])]
        G = PermGroup(4, gens)
        assert G.order() == 24
        assert group_order(G) == 24
        assert Perm.from_cycles(4, [(1, 3)]) in G

    def test_alternating_membership(self):
        gens = [Perm.from_cycles(4, [(0, 1, 2)]), Perm.from_cycles(4, [(1, 2, 3)])]
        G = PermGroup(4, gens)
        assert G.order() == 12
        assert not is_member(G, Perm.from_cycles(4, [(0, 1)]))

    def test_base_is_deterministic(self):
        gens = [Perm.from_cycles(5, [(1, 2)]), Perm.from_cycles(5, [(3, 4)])]
        G = PermGroup(5, gens)
        assert G.base() == PermGroup(5, gens).base()
        assert list(G.base()) == sorted(G.base())

    def test_orbits(self):
        G = PermGroup(5, [Perm.from_cycles(5, [(0, 1)]), Perm.from_cycles(5, [(2, 3)])])
        assert G.orbits() == [[0, 1], [2, 3], [4]]
        assert orbit_of(2, G.generators) == [2, 3]
        with pytest.raises(IndexError):
            G.orbit(9)

    def test_generator_degree_check(self):
        with pytest.raises(DegreeMismatch):
            PermGroup(4, [Perm.identity(3)])
        with pytest.raises(DegreeMismatch):
            Perm.identity(3) in PermGroup(4, [Perm.identity(4)])

    def test_names(self):
        G = PermGroup(3, [Perm.from_cycles(3, [(0, 1)])], names=("a",))
        assert G.generator_names == ("a",)
        with pytest.raises(ValueError):
            PermGroup(3, [Perm.identity(3)], names=("a", "b"))

    @settings(max_examples=40, deadline=None)
    @given(st.lists(perms(6), min_size=1, max_size=3))
    def test_order_and_membership_against_closure(self, gens):
        closure = brute_force_closure(gens, 6)
        assert closure is not None
        G = PermGroup(6, gens)
        assert G.order() == len(closure)
        for p in list(closure)[:50]:
            assert p in G

    @settings(max_examples=40, deadline=None)
    @given(st.lists(perms(6), min_size=1, max_size=2), perms(6))
    def test_membership_negative_against_closure(self, gens, probe):
        closure = brute_force_closure(gens, 6)
        G = PermGroup(6, gens)
        assert (probe in G) == (probe in closure)
