"""Abelian structure arithmetic: primary parts, invariant factors, counts."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from kclosure import (
    AbelianSpec,
    InvariantFactors,
    capital_N,
    factorize,
    invariant_factors,
    n_of,
    pi_part,
    primary_decomposition,
)

order_lists = st.lists(st.integers(2, 64), min_size=0, max_size=5)


class TestSpecNormalization:
    def test_ones_dropped(self):
        assert AbelianSpec((1, 6, 1)).orders == (6,)

    def test_empty_is_trivial(self):
        spec = AbelianSpec(())
        assert spec.is_trivial and spec.group_order == 1

    def test_parse(self):
        assert AbelianSpec.parse("2, 4,3").orders == (2, 3, 4)

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            AbelianSpec.parse("2,x")

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            AbelianSpec((0, 2))


class TestPrimaryDecomposition:
    def test_single_composite(self):
        assert primary_decomposition(AbelianSpec((12,))) == {2: (4,), 3: (3,)}

    def test_multiple_orders(self):
        assert primary_decomposition(AbelianSpec((2, 4, 3))) == {2: (2, 4), 3: (3,)}

    def test_trivial(self):
        assert primary_decomposition(AbelianSpec(())) == {}


class TestInvariantFactors:
    def test_crt_merge(self):
        assert tuple(invariant_factors(AbelianSpec((2, 4, 3)))) == (2, 12)

    def test_already_canonical(self):
        assert tuple(invariant_factors(AbelianSpec((6,)))) == (6,)

    def test_elementary_abelian(self):
        assert tuple(invariant_factors(AbelianSpec((2, 2, 2)))) == (2, 2, 2)

    def test_divisibility_enforced_on_type(self):
        with pytest.raises(ValueError):
            InvariantFactors((4, 6))
        with pytest.raises(ValueError):
            InvariantFactors((1, 2))


class TestCounts:
    @pytest.mark.parametrize("orders, expected", [((2, 4, 3), 2), ((12,), 1), ((2, 2), 2)])
    def test_n_of(self, orders, expected):
        assert n_of(AbelianSpec(orders)) == expected

    @pytest.mark.parametrize("orders, expected", [((12,), 2), ((2, 4, 3), 3), ((8,), 1)])
    def test_capital_n(self, orders, expected):
        assert capital_N(AbelianSpec(orders)) == expected

    def test_trivial_counts(self):
        assert n_of(AbelianSpec(())) == 0
        assert capital_N(AbelianSpec(())) == 0


class TestPiPart:
    @pytest.mark.parametrize("m, primes, expected", [
        (12, {2}, 4),
        (12, {2, 3}, 12),
        (12, {5}, 1),
        (1, {2}, 1),
    ])
    def test_values(self, m, primes, expected):
        assert pi_part(m, primes) == expected

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            pi_part(0, {2})


class TestFactorize:
    def test_small(self):
        assert factorize(360) == {2: 3, 3: 2, 5: 1}

    def test_one(self):
        assert factorize(1) == {}

    def test_prime(self):
        assert factorize(97) == {97: 1}


@given(order_lists)
def test_invariant_factors_satisfy_divisibility_chain(orders):
    d = tuple(invariant_factors(AbelianSpec(tuple(orders))))
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    if d:
        assert d[0] > 1


@given(order_lists)
def test_invariant_factors_preserve_group_order(orders):
    spec = AbelianSpec(tuple(orders))
    assert math.prod(invariant_factors(spec)) == spec.group_order


@given(order_lists)
def test_invariant_factors_idempotent(orders):
    first = tuple(invariant_factors(AbelianSpec(tuple(orders))))
    again = tuple(invariant_factors(AbelianSpec(first)))
    assert first == again


@given(order_lists)
def test_n_equals_max_primary_length(orders):
    spec = AbelianSpec(tuple(orders))
    primary = primary_decomposition(spec)
    expected = max((len(v) for v in primary.values()), default=0)
    assert n_of(spec) == expected


@given(st.lists(st.integers(0, 5), min_size=1, max_size=4))
def test_p_group_has_equal_counts(exponents):
    spec = AbelianSpec(tuple(2**e for e in exponents if e > 0))
    assert capital_N(spec) == n_of(spec)


@given(order_lists)
def test_equal_primary_decompositions_give_equal_invariant_factors(orders):
    spec = AbelianSpec(tuple(orders))
    # refine every order into its prime-power parts: same group up to isomorphism
    refined = AbelianSpec(tuple(
        p**e for m in orders for p, e in factorize(m).items()
    ))
    assert primary_decomposition(spec) == primary_decomposition(refined)
    assert tuple(invariant_factors(spec)) == tuple(invariant_factors(refined))
