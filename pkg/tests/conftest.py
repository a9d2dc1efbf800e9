"""Shared helpers: a registry of small test groups and chain-free oracles.

The oracles here deliberately avoid the stabilizer chain and the tuple-orbit
index so they stay independent of the code paths they check: group elements
come from plain multiplicative closure, and closure membership is the literal
definition quantified over all tuples and all group elements.
"""

from __future__ import annotations

from itertools import product

import pytest

from kclosure import PermGroup, Permutation

TEST_GROUPS: list[tuple[str, PermGroup]] = [
    ("trivial on 3", PermGroup(3)),
    ("transposition", PermGroup.from_cycles(2, ["(1,2)"])),
    ("double transposition", PermGroup.from_cycles(4, ["(1,2)(3,4)"])),
    ("klein on three blocks", PermGroup.from_cycles(6, ["(1,2)(3,4)", "(1,2)(5,6)"])),
    ("c3 natural", PermGroup.from_cycles(3, ["(1,2,3)"])),
    ("c4 regular", PermGroup.from_cycles(4, ["(1,2,3,4)"])),
    ("s3 natural", PermGroup.from_cycles(3, ["(1,2,3)", "(1,2)"])),
    ("s3 on five points", PermGroup.from_cycles(5, ["(1,2,3)", "(1,2)(4,5)"])),
    ("c6 on five points", PermGroup.from_cycles(5, ["(1,2,3)(4,5)"])),
    ("c6 regular", PermGroup.from_cycles(6, ["(1,2,3,4,5,6)"])),
    ("c7 regular", PermGroup.from_cycles(7, ["(1,2,3,4,5,6,7)"])),
    ("c12 on seven points", PermGroup.from_cycles(7, ["(1,2,3,4)(5,6,7)"])),
    ("d4 natural", PermGroup.from_cycles(4, ["(1,2,3,4)", "(1,3)"])),
]


@pytest.fixture(scope="session")
def test_groups() -> list[tuple[str, PermGroup]]:
    return TEST_GROUPS


def mulclose(degree: int, gens) -> list[Permutation]:
    """Multiplicative closure of the generators, independent of any chain."""
    identity = Permutation.identity(degree)
    seen = {identity.images: identity}
    frontier = [identity]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = a * g
                if b.images not in seen:
                    seen[b.images] = b
                    new.append(b)
        frontier = new
    return list(seen.values())


def naive_in_k_closure(G: PermGroup, x: Permutation, k: int) -> bool:
    """Literal closure membership: for every ordered k-tuple there is a group
    element acting on it the same way x does."""
    elements = mulclose(G.degree, G.generators)
    for tup in product(range(G.degree), repeat=k):
        image = tuple(x.images[t] for t in tup)
        if not any(tuple(g.images[t] for t in tup) == image for g in elements):
            return False
    return True
