"""Group engine: orbits, order, membership, stabilizers, bases.

Derived expected values are frozen from chain-free oracles (multiplicative
closure and element filtering), which also run here as cross-checks.
"""

from __future__ import annotations

import json
from itertools import combinations, permutations

import pytest

from conftest import mulclose
from kclosure import (
    CapExceededError,
    PermGroup,
    Permutation,
    abelian_hall_subgroup,
    disjoint_cyclic_rep,
    groups_equal,
    parse_cycle_notation,
    pi_part,
)

S3_FIVE = PermGroup.from_cycles(5, ["(1,2,3)", "(1,2)(4,5)"])


class TestOrbits:
    def test_intransitive_degree_five(self):
        assert S3_FIVE.orbits().blocks == ((0, 1, 2), (3, 4))

    def test_trivial_group_singletons(self):
        assert PermGroup(3).orbits().blocks == ((0,), (1,), (2,))

    def test_two_blocks(self):
        g = PermGroup.from_cycles(4, ["(1,2)(3,4)"])
        assert g.orbits().blocks == ((0, 1), (2, 3))

    def test_partition_is_generator_closed(self):
        part = S3_FIVE.orbits()
        for g in S3_FIVE.generators:
            for p in range(S3_FIVE.degree):
                assert part.orbit_id[p] == part.orbit_id[g.images[p]]


class TestOrder:
    def test_s3(self):
        assert PermGroup.from_cycles(3, ["(1,2,3)", "(1,2)"]).order() == 6

    def test_two_commuting_involutions(self):
        g = PermGroup.from_cycles(6, ["(1,2)(3,4)", "(1,2)(5,6)"])
        # oracle: exhaustive multiplicative closure of the two involutions
        assert len(mulclose(6, g.generators)) == 4
        assert g.order() == 4

    def test_trivial(self):
        assert PermGroup(4).order() == 1

    @pytest.mark.parametrize("gens, degree, expected", [
        (["(1,2,3,4)", "(1,3)"], 4, 8),
        (["(1,2,3,4,5)", "(1,2)"], 5, 120),
        (["(1,2,3)(4,5)"], 5, 6),
    ])
    def test_known_orders(self, gens, degree, expected):
        assert PermGroup.from_cycles(degree, gens).order() == expected

    def test_order_matches_oracle_everywhere(self, test_groups):
        for name, g in test_groups:
            assert g.order() == len(mulclose(g.degree, g.generators)), name


class TestMembership:
    def test_power_of_generator(self):
        g = PermGroup.from_cycles(3, ["(1,2,3)"])
        assert g.contains(parse_cycle_notation("(1,3,2)", 3))

    def test_transposition_not_in_c3(self):
        g = PermGroup.from_cycles(3, ["(1,2,3)"])
        assert not g.contains(parse_cycle_notation("(1,2)", 3))

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            PermGroup.from_cycles(3, ["(1,2,3)"]).contains(parse_cycle_notation("(1,2)", 4))

    def test_agrees_with_element_list_over_full_symmetric_group(self, test_groups):
        for name, g in test_groups:
            if g.degree > 6:
                continue
            members = {e.images for e in g.elements()}
            for images in permutations(range(g.degree)):
                assert (images in members) == g.contains(Permutation(images)), name


class TestElements:
    def test_single_transposition(self):
        els = PermGroup.from_cycles(2, ["(1,2)"]).elements()
        assert {e.images for e in els} == {(0, 1), (1, 0)}

    def test_klein_regular(self):
        g = PermGroup.from_cycles(4, ["(1,2)(3,4)", "(1,3)(2,4)"])
        assert len(g.elements()) == 4

    def test_s3_count(self):
        assert len(PermGroup.from_cycles(3, ["(1,2,3)", "(1,2)"]).elements()) == 6

    def test_deterministic_order(self):
        g = PermGroup.from_cycles(4, ["(1,2,3,4)", "(1,3)"])
        assert [e.images for e in g.elements()] == [e.images for e in g.elements()]

    def test_no_duplicates_and_count_equals_order(self, test_groups):
        for name, g in test_groups:
            els = g.elements()
            assert len({e.images for e in els}) == len(els) == g.order(), name

    def test_cap_enforced(self):
        g = PermGroup.from_cycles(7, ["(1,2,3,4,5,6,7)", "(1,2)"])
        with pytest.raises(CapExceededError):
            g.elements(cap=100)


class TestPointStabilizer:
    def test_s3_natural(self):
        g = PermGroup.from_cycles(3, ["(1,2,3)", "(1,2)"])
        stab = g.point_stabilizer(0)
        assert stab.order() == 2
        assert all(e.images[0] == 0 for e in stab.elements())

    def test_regular_action_trivial_stabilizer(self):
        g = PermGroup.from_cycles(4, ["(1,2,3,4)"])
        for p in range(4):
            assert g.point_stabilizer(p).order() == 1

    def test_kernel_of_small_orbit(self):
        # oracle: filter the 6 elements on fixing 1-based point 4
        oracle = [e for e in mulclose(5, S3_FIVE.generators) if e.images[3] == 3]
        assert len(oracle) == 3
        assert S3_FIVE.point_stabilizer(3).order() == 3

    def test_point_out_of_range(self):
        with pytest.raises(ValueError):
            S3_FIVE.point_stabilizer(5)

    def test_orbit_stabilizer_identity(self, test_groups):
        for name, g in test_groups:
            part = g.orbits()
            for block in part.blocks:
                assert len(block) * g.point_stabilizer(block[0]).order() == g.order(), name


class TestSetwiseStabilizer:
    def test_whole_orbit_is_no_constraint(self):
        g = PermGroup.from_cycles(4, ["(1,2)(3,4)", "(1,3)(2,4)"])
        assert g.setwise_stabilizer_of_blocks([{0, 1, 2, 3}]).order() == 4

    def test_fixing_both_small_points(self):
        # oracle: elements fixing {3} and {4} setwise are those fixing both points
        oracle = [e for e in mulclose(5, S3_FIVE.generators)
                  if e.images[3] == 3 and e.images[4] == 4]
        assert len(oracle) == 3
        assert S3_FIVE.setwise_stabilizer_of_blocks([{3}, {4}]).order() == 3

    def test_empty_blocks_return_group(self):
        assert S3_FIVE.setwise_stabilizer_of_blocks([]) is S3_FIVE

    def test_bad_block_rejected(self):
        with pytest.raises(ValueError):
            S3_FIVE.setwise_stabilizer_of_blocks([{0, 9}])


class TestRestriction:
    def test_s3_times_c2_restricted_to_pair(self):
        g = PermGroup.from_cycles(5, ["(1,2,3)", "(1,2)", "(4,5)"])
        assert g.restriction({3, 4}).order() == 2

    def test_fixed_point_set_gives_trivial_group(self):
        g = PermGroup.from_cycles(5, ["(1,2,3)"])
        assert g.restriction({3, 4}).order() == 1

    def test_diagonal_three_cycle(self):
        g = PermGroup.from_cycles(6, ["(1,2,3)(4,5,6)"])
        r = g.restriction({0, 1, 2})
        assert r.degree == 3 and r.order() == 3

    def test_non_invariant_set_rejected(self):
        with pytest.raises(ValueError):
            S3_FIVE.restriction({0, 3})


class TestBases:
    def test_regular_cyclic_base_one(self):
        assert PermGroup.from_cycles(4, ["(1,2,3,4)"]).minimal_base_size() == 1

    def test_two_two_point_orbits_need_two(self):
        assert PermGroup.from_cycles(4, ["(1,2)", "(3,4)"]).minimal_base_size() == 2

    def test_s3_natural_base_two(self):
        g = PermGroup.from_cycles(3, ["(1,2,3)", "(1,2)"])
        # oracle: no single point works, some pair does
        assert all(not g.is_base((p,)) for p in range(3))
        assert any(g.is_base(pair) for pair in combinations(range(3), 2))
        assert g.minimal_base_size() == 2

    def test_trivial_group_base_zero(self):
        assert PermGroup(3).minimal_base_size() == 0

    def test_single_point_base_for_regular(self):
        assert PermGroup.from_cycles(4, ["(1,2,3,4)"]).is_base((2,))

    def test_empty_tuple_not_base_for_nontrivial(self):
        assert not S3_FIVE.is_base(())

    def test_point_with_nontrivial_stabilizer_is_not_base(self):
        assert not S3_FIVE.is_base((3,))

    def test_minimum_is_tight_exhaustively(self, test_groups):
        for name, g in test_groups:
            if g.degree > 6:
                continue
            b = g.minimal_base_size()
            tuples = lambda r: combinations(range(g.degree), r)
            if b > 0:
                assert all(not g.is_base(t) for t in tuples(b - 1)), name
            assert any(g.is_base(t) for t in tuples(b)), name


class TestHallSubgroups:
    def test_sylow_parts_of_cyclic_six(self):
        g = PermGroup.from_cycles(5, ["(1,2,3)(4,5)"])
        p2 = abelian_hall_subgroup(g, {2})
        p3 = abelian_hall_subgroup(g, {3})
        assert p2.order() == 2 and p3.order() == 3

    def test_rejects_nonabelian(self):
        with pytest.raises(ValueError):
            abelian_hall_subgroup(PermGroup.from_cycles(3, ["(1,2,3)", "(1,2)"]), {2})

    def test_setwise_stabilizer_restricts_to_sylow_on_orbit_unions(self):
        # nilpotent-lemma property, abelian instance
        g = disjoint_cyclic_rep([2, 2, 3])
        for p in (2, 3):
            sylow = abelian_hall_subgroup(g, {p})
            blocks = sylow.orbits().blocks
            for r in range(1, len(blocks) + 1):
                for chosen in combinations(blocks, r):
                    union = sorted(q for b in chosen for q in b)
                    left = g.setwise_stabilizer_of_blocks(chosen).restriction(union)
                    right = sylow.restriction(union)
                    assert {e.images for e in left.elements()} == \
                           {e.images for e in right.elements()}

    def test_hall_orbits_and_kernel_on_transitive_abelian(self):
        # transitive nilpotent-lemma property, abelian instances
        for g in (PermGroup.from_cycles(6, ["(1,2,3,4,5,6)"]),
                  PermGroup.from_cycles(12, ["(1,2,3,4,5,6,7,8,9,10,11,12)"])):
            n = g.degree
            primes = [p for p in (2, 3, 5, 7, 11) if g.order() % p == 0]
            for r in range(len(primes) + 1):
                for pi in combinations(primes, r):
                    hall = abelian_hall_subgroup(g, pi)
                    target = pi_part(n, pi)
                    assert all(len(b) == target for b in hall.orbits().blocks)
                    kernel = g.setwise_stabilizer_of_blocks(hall.orbits().blocks)
                    assert {e.images for e in kernel.elements()} == \
                           {e.images for e in hall.elements()}


class TestSerialization:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "group.json"
        path.write_text(json.dumps(S3_FIVE.to_json()))
        loaded = PermGroup.from_file(str(path))
        assert groups_equal(loaded, S3_FIVE)

    def test_bad_degree_rejected(self):
        with pytest.raises(ValueError):
            PermGroup.from_json({"degree": "five", "generators": []})

    def test_bad_generators_rejected(self):
        with pytest.raises(ValueError):
            PermGroup.from_json({"degree": 3, "generators": "(1,2)"})


class TestConcurrencyContract:
    def test_chain_built_once_under_contention(self):
        import threading

        g = PermGroup.from_cycles(6, ["(1,2,3,4,5,6)", "(1,2)"])
        orders = []
        threads = [threading.Thread(target=lambda: orders.append(g.order()))
                   for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert orders == [720] * 8
