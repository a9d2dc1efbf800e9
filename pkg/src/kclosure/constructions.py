"""Concrete permutation representations of finite abelian groups.

Covers the regular and disjoint-cyclic actions, the cycle-built witness whose
closure strictly exceeds the group, the mixed-prime witness assembled from a
prime-power witness block plus regular blocks, and exhaustive enumeration of
small faithful actions via multisets of subgroups with trivial intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Iterable, Sequence

from .abelian import AbelianSpec, is_prime, factorize, n_of, primary_decomposition
from .group import CapExceededError, PermGroup
from .perm import Permutation, format_cycle_notation

__all__ = [
    "MAX_ENUM_GROUP_ORDER",
    "MAX_ENUM_POINTS",
    "WitnessRep",
    "regular_rep",
    "disjoint_cyclic_rep",
    "pgroup_witness",
    "mixed_witness",
    "enumerate_faithful_actions",
]

MAX_ENUM_GROUP_ORDER = 256
MAX_ENUM_POINTS = 20


def _block_cycle(offset: int, size: int, degree: int) -> Permutation:
    """Single cycle sending each of offset..offset+size-1 to its successor."""
    images = list(range(degree))
    for i in range(size):
        images[offset + i] = offset + (i + 1) % size
    return Permutation(tuple(images))


def _embed(p: Permutation, offset: int, degree: int) -> Permutation:
    images = list(range(degree))
    for i, x in enumerate(p.images):
        images[offset + i] = offset + x
    return Permutation(tuple(images))


def regular_rep(m: int) -> PermGroup:
    """Cyclic group of order m acting regularly; for m = 1 the trivial group
    on one point."""
    if m < 1:
        raise ValueError("order must be at least 1")
    if m == 1:
        return PermGroup(1, ())
    return PermGroup(m, (_block_cycle(0, m, m),))


def disjoint_cyclic_rep(orders: Sequence[int]) -> PermGroup:
    """Direct product of cyclic groups, each factor a single cycle on its own
    block of points."""
    if not orders:
        return PermGroup(1, ())
    if any(not isinstance(m, int) or m < 2 for m in orders):
        raise ValueError("every cyclic order must be an integer >= 2")
    degree = sum(orders)
    gens = []
    offset = 0
    for m in orders:
        gens.append(_block_cycle(offset, m, degree))
        offset += m
    return PermGroup(degree, tuple(gens))


@dataclass(frozen=True)
class WitnessRep:
    """A cycle-built witness action for a prime-power abelian group.

    `group` is the constructed abelian group, `extra_cycle` is the
    distinguished cycle on the first block that lies outside the group but
    inside its closure at arity len(factor_orders), and `orbit_blocks` lists
    the group's orbits (the first block plus one per factor).
    """

    group: PermGroup
    extra_cycle: Permutation
    orbit_blocks: tuple[tuple[int, ...], ...]
    factor_orders: tuple[int, ...]

    def __post_init__(self) -> None:
        d = self.factor_orders
        sizes = [len(b) for b in self.orbit_blocks]
        if sizes != [d[0], *d]:
            raise ValueError("orbit block sizes do not match the factor orders")
        if self.extra_cycle.support() != frozenset(self.orbit_blocks[0]):
            raise ValueError("the distinguished cycle must move exactly the first block")

    def to_json(self) -> dict:
        return {
            "factor_orders": list(self.factor_orders),
            "degree": self.group.degree,
            "generators": [format_cycle_notation(g) for g in self.group.generators],
            "tau0": format_cycle_notation(self.extra_cycle),
            "deltas": [[p + 1 for p in block] for block in self.orbit_blocks],
        }


def pgroup_witness(factors: Sequence[int], p: int) -> WitnessRep:
    """Witness action for the abelian p-group with invariant factors
    d1 | d2 | ... | dn (each a power of p, d1 > 1).

    Lay out independent cycles t0, t1, ..., tn on consecutive blocks of sizes
    d1, d1, d2, ..., dn and generate the group by t0*t1 and t0^-1*ti for
    i >= 2. The result is abelian of order d1*...*dn, has n+1 nontrivial
    orbits, and does not contain t0.
    """
    d = tuple(factors)
    if not d:
        raise ValueError("need at least one invariant factor")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for f in d:
        if f < 2 or any(q != p for q in factorize(f)):
            raise ValueError(f"factor {f} is not a power of {p} greater than 1")
    for a, b in zip(d, d[1:]):
        if b % a != 0:
            raise ValueError(f"factors {d!r} violate the divisibility chain")

    sizes = [d[0], *d]
    degree = sum(sizes)
    taus = []
    blocks = []
    offset = 0
    for size in sizes:
        taus.append(_block_cycle(offset, size, degree))
        blocks.append(tuple(range(offset, offset + size)))
        offset += size

    tau0 = taus[0]
    gens = [tau0 * taus[1]]
    gens.extend(tau0.inverse() * taus[i] for i in range(2, len(taus)))
    group = PermGroup(degree, tuple(gens))

    if group.order() != prod(d):
        raise RuntimeError("witness construction failed: wrong group order")
    if not group.is_abelian():
        raise RuntimeError("witness construction failed: group is not abelian")
    if group.contains(tau0):
        raise RuntimeError("witness construction failed: distinguished cycle inside the group")
    return WitnessRep(group, tau0, tuple(blocks), d)


def _abelian_regular_rep(cyclic_orders: Sequence[int]) -> PermGroup:
    """Regular action of a direct product of cyclic groups on itself, points
    indexed by mixed-radix tuples in lexicographic order."""
    orders = tuple(cyclic_orders)
    size = prod(orders)
    if size == 1:
        return PermGroup(1, ())
    points = {t: i for i, t in enumerate(product(*(range(m) for m in orders)))}
    gens = []
    for j in range(len(orders)):
        images = [0] * size
        for t, i in points.items():
            shifted = list(t)
            shifted[j] = (shifted[j] + 1) % orders[j]
            images[i] = points[tuple(shifted)]
        gens.append(Permutation(tuple(images)))
    return PermGroup(size, tuple(gens))


def mixed_witness(spec: AbelianSpec) -> PermGroup:
    """Faithful action of the given abelian group that fails to be closed at
    arity n (the number of invariant factors).

    Pick a prime q whose primary part realizes n, put the prime-power witness
    on the first block of points, and let every other primary part act
    regularly on its own block.
    """
    if spec.is_trivial:
        raise ValueError("the trivial group has no witness action")
    n = n_of(spec)
    primary = primary_decomposition(spec)
    q = min(p for p, parts in primary.items() if len(parts) == n)
    witness = pgroup_witness(primary[q], q)

    block_groups: list[PermGroup] = [witness.group]
    for p in sorted(primary):
        if p != q:
            block_groups.append(_abelian_regular_rep(primary[p]))

    degree = sum(g.degree for g in block_groups)
    gens = []
    offset = 0
    for g in block_groups:
        gens.extend(_embed(h, offset, degree) for h in g.generators)
        offset += g.degree
    return PermGroup(degree, tuple(gens))


def _subgroup_lattice(elems: list[tuple[int, ...]], mul) -> list[frozenset]:
    """All subgroups of a small abelian group, by join closure of the cyclic
    subgroups (in an abelian group the join of two subgroups is their
    product set)."""
    identity = elems[0]
    cyclic: set[frozenset] = set()
    for g in elems:
        sub = {identity}
        x = g
        while x != identity:
            sub.add(x)
            x = mul(x, g)
        cyclic.add(frozenset(sub))
    subs = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        new = []
        for a in frontier:
            for b in cyclic:
                joined = frozenset(mul(x, y) for x in a for y in b)
                if joined not in subs:
                    subs.add(joined)
                    new.append(joined)
        frontier = new
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def enumerate_faithful_actions(spec: AbelianSpec, max_points: int) -> list[PermGroup]:
    """Every faithful action of the group on at most max_points points, one
    per multiset of subgroups {K1, ..., Kr} with trivial intersection, acting
    on the disjoint union of the right-coset spaces.

    Subgroup multisets are the deduplication key; conjugacy is trivial in an
    abelian group, so equal multisets give identical actions.
    """
    order = spec.group_order
    if order > MAX_ENUM_GROUP_ORDER:
        raise CapExceededError("group too large for subgroup enumeration", required=order)
    if max_points > MAX_ENUM_POINTS:
        raise CapExceededError("point budget too large for exhaustive enumeration",
                               required=max_points)
    orders = spec.orders
    elems = sorted(product(*(range(m) for m in orders)))

    def mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, orders))

    subs = _subgroup_lattice(elems, mul)
    unit_gens = [tuple(1 if i == j else 0 for i in range(len(orders))) for j in range(len(orders))]
    full = frozenset(elems)

    def coset_blocks(sub: frozenset) -> tuple[list[tuple[int, ...]], dict[tuple[int, ...], int]]:
        member: dict[tuple[int, ...], int] = {}
        reps: list[tuple[int, ...]] = []
        for e in elems:
            if e in member:
                continue
            coset = sorted(mul(x, e) for x in sub)
            idx = len(reps)
            reps.append(coset[0])
            for c in coset:
                member[c] = idx
        return reps, member

    out: list[PermGroup] = []

    def emit(chosen: list[int]) -> None:
        blocks = [coset_blocks(subs[idx]) for idx in chosen]
        total = sum(len(reps) for reps, _ in blocks)
        gen_perms = []
        for g in unit_gens:
            images = []
            offset = 0
            for reps, member in blocks:
                images.extend(offset + member[mul(rep, g)] for rep in reps)
                offset += len(reps)
            gen_perms.append(Permutation(tuple(images)))
        out.append(PermGroup(max(total, 1), tuple(gen_perms)))

    def search(start: int, chosen: list[int], inter: frozenset, points_used: int) -> None:
        if chosen and len(inter) == 1:
            emit(chosen)
        for idx in range(start, len(subs)):
            cost = order // len(subs[idx])
            if points_used + cost > max_points:
                continue
            chosen.append(idx)
            search(idx, chosen, inter & subs[idx], points_used + cost)
            chosen.pop()

    search(0, [], full, 0)
    return out
